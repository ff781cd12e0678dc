#include "oaid/enumerate.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "oaid/ident.hpp"
#include "oaid/linalg.hpp"
#include "oaid/spectrum.hpp"

namespace oaid::enumer {

namespace {

// Candidate coefficient values scaled to integers by the lcm of their
// denominators, ascending. The common scale keeps the hot loop in int
// arithmetic: a candidate weight w represents the rational vector w / scale.
std::vector<std::int32_t> scaled_values(int instruments, std::int64_t& scale) {
  auto vals = spectrum::coefficient_set(instruments);
  long l = 1;
  for (const auto& v : vals) l = std::lcm(l, v.den().get_si());
  scale = l;
  std::vector<std::int32_t> out;
  out.reserve(vals.size());
  for (const auto& v : vals) {
    long n = v.num().get_si();
    long d = v.den().get_si();
    out.push_back(static_cast<std::int32_t>(n * (l / d)));
  }
  return out;
}

// Bitmask over instrument values where the type takes treatment t.
std::vector<std::uint8_t> type_zmasks(const std::vector<space::ResponseType>& types,
                                      int t) {
  std::vector<std::uint8_t> m(types.size(), 0);
  for (std::size_t g = 0; g < types.size(); ++g)
    for (std::size_t z = 0; z < types[g].size(); ++z)
      if (types[g][z] == t) m[g] |= static_cast<std::uint8_t>(1u << z);
  return m;
}

struct PairContext {
  int instruments = 0;
  std::int64_t scale = 1;
  std::vector<std::int32_t> vals;
  std::vector<std::uint8_t> zm1;  // per type, instrument mask for t'
  std::vector<std::uint8_t> zm0;  // per type, instrument mask for t
  std::uint64_t total = 0;        // |vals|^(2 * instruments)
};

PairContext make_context(const EnumOptions& opts, int t_prime, int t) {
  PairContext ctx;
  ctx.instruments = opts.instruments;
  ctx.vals = scaled_values(opts.instruments, ctx.scale);
  auto types = space::all_response_types(opts.treatments, opts.instruments, 256);
  ctx.zm1 = type_zmasks(types, t_prime);
  ctx.zm0 = type_zmasks(types, t);
  ctx.total = 1;
  for (int k = 0; k < 2 * opts.instruments; ++k) {
    if (ctx.total > opts.candidate_cap / ctx.vals.size())
      throw std::invalid_argument("algorithm2_part1: candidate grid exceeds cap");
    ctx.total *= ctx.vals.size();
  }
  return ctx;
}

// Evaluates one candidate index: decodes the weight vector (index digits in
// base |vals|, first coordinate most significant) and classifies every
// response type. Returns false when the candidate has no realizable
// compliers and produces no record.
bool eval_candidate(const PairContext& ctx, std::uint64_t idx, MaximalRecord& out) {
  const int z = ctx.instruments;
  const int dim = 2 * z;
  std::array<std::int32_t, 8> w{};
  const auto base = static_cast<std::uint64_t>(ctx.vals.size());
  for (int k = dim - 1; k >= 0; --k) {
    w[static_cast<std::size_t>(k)] = ctx.vals[idx % base];
    idx /= base;
  }
  MaximalRecord rec;
  rec.w = w;
  const auto scale = static_cast<std::int32_t>(ctx.scale);
  for (unsigned g = 0; g < ctx.zm1.size(); ++g) {
    std::int32_t s1 = 0, s0 = 0;
    for (int zz = 0; zz < z; ++zz) {
      if (ctx.zm1[g] & (1u << zz)) s1 += w[static_cast<std::size_t>(zz)];
      if (ctx.zm0[g] & (1u << zz)) s0 += w[static_cast<std::size_t>(z + zz)];
    }
    if (s1 + s0 != 0) continue;  // the two sides disagree on this type
    rec.g_zero.set(g);
    if (s1 == 0) {
      rec.g_max.set(g);
    } else if (s1 == scale) {
      rec.g_max.set(g);
      rec.compliers.set(g);
    }
  }
  if (rec.compliers.none()) return false;
  out = rec;
  return true;
}

int l0_norm(const MaximalRecord& r, int dim) {
  int n = 0;
  for (int i = 0; i < dim; ++i)
    if (r.w[static_cast<std::size_t>(i)] != 0) ++n;
  return n;
}

std::int64_t l2_norm_sq(const MaximalRecord& r, int dim) {
  std::int64_t s = 0;
  for (int i = 0; i < dim; ++i) {
    auto v = static_cast<std::int64_t>(r.w[static_cast<std::size_t>(i)]);
    s += v * v;
  }
  return s;
}

// Preference order among records with the same complier set and maximal
// model: fewest nonzero weights, then smallest squared length, then
// lexicographically least weight vector. All comparisons are exact because
// every candidate shares one scale.
bool tie_better(const MaximalRecord& a, const MaximalRecord& b, int dim) {
  int za = l0_norm(a, dim), zb = l0_norm(b, dim);
  if (za != zb) return za < zb;
  auto la = l2_norm_sq(a, dim), lb = l2_norm_sq(b, dim);
  if (la != lb) return la < lb;
  return a.w < b.w;
}

// Cost order used by the mirrored-record rule below: a is at least as cheap
// as b when it has no more nonzero weights and, on a sparsity tie, no larger
// squared length. Unlike tie_better this is a non-strict comparison and
// ignores the lexicographic fallback; equal-cost mirrors still dominate.
bool cost_leq(const MaximalRecord& a, const MaximalRecord& b, int dim) {
  int za = l0_norm(a, dim), zb = l0_norm(b, dim);
  if (za != zb) return za < zb;
  return l2_norm_sq(a, dim) <= l2_norm_sq(b, dim);
}

// Redundancy prune over the accumulated records, in two stages.
//
// Stage one: complier-set dominance. Among records with identical complier
// sets, one loses when another's maximal model strictly contains its own;
// the larger model delivers the same result under a weaker selection
// restriction. Records tying on compliers and model collapse to the
// preferred weight vector. This stage is transitive, so applying it between
// merge waves and again at the end gives the same survivors as one pass.
//
// Stage two: mirrored-record dominance, final pass only. A record whose two
// halves are equal (w = (v | v), i.e. alpha_{t'} = v and alpha_t = -v) and
// whose agreement set covers the whole type space applies one instrument
// contrast symmetrically to both treatment arms. Such a record subsumes any
// record that shares either weight half with v, has a strictly smaller
// maximal model, and is no cheaper under cost_leq: the narrower result is a
// restriction of the mirrored one rather than a distinct finding. Evidence
// for this stage is indexed from the unreduced input, and the stage runs
// only on the final call; interim reductions are a memory valve that never
// fires for the supported grids (at most |C_3|^6 records per scan).
void prune_records(std::vector<MaximalRecord>& recs, const PairContext& ctx,
                   bool final_stage) {
  const int z = ctx.instruments;
  const int dim = 2 * z;

  using Half = std::array<std::int32_t, 4>;
  std::map<Half, MaximalRecord> mirrored;
  if (final_stage) {
    Mask256 full;
    for (unsigned g = 0; g < ctx.zm1.size(); ++g) full.set(g);
    for (const auto& r : recs)
      if (r.g_zero == full) {
        // Full agreement forces w = (v | v): the record is its own mirror,
        // so the first half is a collision-free key.
        Half h{};
        for (int i = 0; i < z; ++i)
          h[static_cast<std::size_t>(i)] = r.w[static_cast<std::size_t>(i)];
        mirrored.emplace(h, r);
      }
  }

  std::map<Mask256, std::map<Mask256, MaximalRecord>> by_comp;
  for (auto& r : recs) {
    auto& slot = by_comp[r.compliers];
    auto it = slot.find(r.g_max);
    if (it == slot.end())
      slot.emplace(r.g_max, r);
    else if (tie_better(r, it->second, dim))
      it->second = r;
  }
  std::vector<MaximalRecord> kept;
  for (auto& [comp, slot] : by_comp) {
    for (auto& [gmax, rec] : slot) {
      bool dominated = false;
      for (auto& [other, rec2] : slot) {
        if (other != gmax && gmax.subset_of(other)) {
          dominated = true;
          break;
        }
      }
      for (int side = 0; side < 2 && final_stage && !dominated; ++side) {
        Half h{};
        for (int i = 0; i < z; ++i)
          h[static_cast<std::size_t>(i)] =
              rec.w[static_cast<std::size_t>(side * z + i)];
        auto it = mirrored.find(h);
        if (it == mirrored.end()) continue;
        const auto& m = it->second;
        if (gmax.subset_of(m.g_max) && !(m.g_max == gmax) && cost_leq(m, rec, dim))
          dominated = true;
      }
      if (!dominated) kept.push_back(rec);
    }
  }
  std::sort(kept.begin(), kept.end(),
            [](const MaximalRecord& a, const MaximalRecord& b) { return a.w < b.w; });
  recs = std::move(kept);
}

constexpr std::uint64_t kBlock = 1u << 16;

// Runs the candidate scan from `start`, merging block results in index
// order so the record list is identical for any thread count. Calls
// `on_progress` with the candidate count finished so far after each wave;
// the record vector passed along is already pruned.
void scan_range(const PairContext& ctx, const EnumOptions& opts, std::uint64_t start,
                std::vector<MaximalRecord>& records,
                const std::function<void(std::uint64_t, const std::vector<MaximalRecord>&)>&
                    on_progress) {
  const int nthreads = std::max(1, opts.threads);
  std::uint64_t done = start;
  while (done < ctx.total) {
    const auto wave_blocks =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(nthreads),
                                (ctx.total - done + kBlock - 1) / kBlock);
    std::vector<std::vector<MaximalRecord>> wave(wave_blocks);
    auto run_block = [&](std::uint64_t b) {
      const std::uint64_t lo = done + b * kBlock;
      const std::uint64_t hi = std::min(ctx.total, lo + kBlock);
      auto& out = wave[b];
      MaximalRecord rec;
      for (std::uint64_t i = lo; i < hi; ++i)
        if (eval_candidate(ctx, i, rec)) out.push_back(rec);
    };
    if (nthreads == 1 || wave_blocks == 1) {
      for (std::uint64_t b = 0; b < wave_blocks; ++b) run_block(b);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(wave_blocks);
      for (std::uint64_t b = 0; b < wave_blocks; ++b) pool.emplace_back(run_block, b);
      for (auto& th : pool) th.join();
    }
    for (auto& blk : wave)
      records.insert(records.end(), blk.begin(), blk.end());
    done = std::min(ctx.total, done + wave_blocks * kBlock);
    if (done == ctx.total)
      prune_records(records, ctx, opts.mirror_prune);
    else if (records.size() > (1u << 18))
      prune_records(records, ctx, false);
    if (on_progress) on_progress(done, records);
  }
  if (records.size() > 0 && done == start) {
    // resume landed exactly at the end: records were loaded pre-pruned,
    // and the full prune is idempotent on its own survivors
    prune_records(records, ctx, opts.mirror_prune);
  }
}

std::vector<std::pair<int, int>> ordered_pairs(int treatments) {
  std::vector<std::pair<int, int>> out;
  for (int tp = 1; tp < treatments; ++tp)
    for (int t = 0; t < tp; ++t) out.emplace_back(tp, t);
  return out;
}

nlohmann::ordered_json records_to_json(const std::vector<MaximalRecord>& recs, int dim) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : recs) {
    nlohmann::ordered_json w = nlohmann::ordered_json::array();
    for (int k = 0; k < dim; ++k) w.push_back(r.w[static_cast<std::size_t>(k)]);
    arr.push_back(std::move(w));
  }
  return arr;
}

std::vector<MaximalRecord> records_from_json(const nlohmann::json& arr,
                                             const PairContext& ctx) {
  std::vector<MaximalRecord> out;
  const int dim = 2 * ctx.instruments;
  for (const auto& jw : arr) {
    if (!jw.is_array() || static_cast<int>(jw.size()) != dim)
      throw std::runtime_error("checkpoint: malformed weight vector");
    MaximalRecord rec;
    std::array<std::int32_t, 8> w{};
    for (int k = 0; k < dim; ++k) w[static_cast<std::size_t>(k)] = jw[static_cast<std::size_t>(k)].get<std::int32_t>();
    // rebuild the index sets rather than trusting the file
    const int z = ctx.instruments;
    const auto scale = static_cast<std::int32_t>(ctx.scale);
    rec.w = w;
    for (unsigned g = 0; g < ctx.zm1.size(); ++g) {
      std::int32_t s1 = 0, s0 = 0;
      for (int zz = 0; zz < z; ++zz) {
        if (ctx.zm1[g] & (1u << zz)) s1 += w[static_cast<std::size_t>(zz)];
        if (ctx.zm0[g] & (1u << zz)) s0 += w[static_cast<std::size_t>(z + zz)];
      }
      if (s1 + s0 != 0) continue;
      rec.g_zero.set(g);
      if (s1 == 0 || s1 == scale) rec.g_max.set(g);
      if (s1 == scale) rec.compliers.set(g);
    }
    out.push_back(rec);
  }
  return out;
}

void write_checkpoint(const std::string& path, const nlohmann::ordered_json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw std::runtime_error("checkpoint: cannot write " + tmp);
    f << j.dump() << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("checkpoint: cannot move into place " + path);
}

// Columns of a materialized model, as indices into the full type space,
// ordered by the requested convention. Lexicographic order coincides with
// ascending index order; colexicographic order compares assignment vectors
// from the last instrument value down.
std::vector<unsigned> mask_columns(const Mask256& mask,
                                   const std::vector<space::ResponseType>& types,
                                   ColumnOrder order) {
  std::vector<unsigned> idx;
  for (unsigned g = 0; g < types.size(); ++g)
    if (mask.test(g)) idx.push_back(g);
  if (order == ColumnOrder::kColex) {
    std::sort(idx.begin(), idx.end(), [&](unsigned a, unsigned b) {
      const auto& va = types[a];
      const auto& vb = types[b];
      for (std::size_t k = va.size(); k-- > 0;)
        if (va[k] != vb[k]) return va[k] < vb[k];
      return false;
    });
  }
  return idx;
}

space::SelectionModel materialize(const Mask256& mask,
                                  const std::vector<space::ResponseType>& types,
                                  int treatments, int instruments, ColumnOrder order) {
  space::SelectionModel m;
  m.treatments = treatments;
  m.instruments = instruments;
  for (unsigned g : mask_columns(mask, types, order)) m.groups.push_back(types[g]);
  return m;
}

space::SelectionModel permute_instruments(const space::SelectionModel& m,
                                          const std::vector<int>& sigma) {
  space::SelectionModel out = m;
  for (auto& g : out.groups) {
    space::ResponseType v(g.size());
    for (std::size_t z = 0; z < g.size(); ++z)
      v[z] = g[static_cast<std::size_t>(sigma[z])];
    g = std::move(v);
  }
  return out;
}

space::SelectionModel relabel_treatments(const space::SelectionModel& m,
                                         const std::vector<int>& tau) {
  space::SelectionModel out = m;
  for (auto& g : out.groups)
    for (auto& v : g) v = tau[static_cast<std::size_t>(v)];
  return out;
}

std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

space::SelectionModel materialize_cols(const std::vector<unsigned>& cols,
                                       const std::vector<space::ResponseType>& types,
                                       int treatments, int instruments) {
  space::SelectionModel m;
  m.treatments = treatments;
  m.instruments = instruments;
  for (unsigned g : cols) m.groups.push_back(types[g]);
  return m;
}

// Treatment relabeling that realizes the ordered pair (t', t) from the scan
// pair (1, 0): 1 -> t', 0 -> t, and the remaining source values map onto the
// remaining targets in ascending order. (1, 0) yields the identity.
std::vector<int> pair_relabel(int treatments, int t_prime, int t) {
  std::vector<int> tau(static_cast<std::size_t>(treatments), -1);
  std::vector<bool> used(static_cast<std::size_t>(treatments), false);
  tau[1] = t_prime;
  tau[0] = t;
  used[static_cast<std::size_t>(t_prime)] = true;
  used[static_cast<std::size_t>(t)] = true;
  int next = 0;
  for (int v = 2; v < treatments; ++v) {
    while (used[static_cast<std::size_t>(next)]) ++next;
    tau[static_cast<std::size_t>(v)] = next;
    used[static_cast<std::size_t>(next)] = true;
  }
  return tau;
}

// Index map on the full type space induced by a treatment relabeling: the
// type at index g maps to the type whose assignments are relabeled pointwise.
std::vector<unsigned> type_index_map(const std::vector<space::ResponseType>& types,
                                     const std::vector<int>& tau, int treatments) {
  std::vector<unsigned> map(types.size());
  for (unsigned g = 0; g < types.size(); ++g) {
    unsigned idx = 0;
    for (int v : types[g])
      idx = idx * static_cast<unsigned>(treatments) +
            static_cast<unsigned>(tau[static_cast<std::size_t>(v)]);
    map[g] = idx;
  }
  return map;
}

Mask256 map_mask(const Mask256& m, const std::vector<unsigned>& map, unsigned total) {
  Mask256 out{};
  for (unsigned g = 0; g < total; ++g)
    if (m.test(g)) out.set(map[g]);
  return out;
}

// Stream order of the scan records inside part two: weight vectors compare
// coordinate by coordinate with zero first, then magnitudes ascending, the
// negative value of each magnitude before the positive one.
bool stream_less(const MaximalRecord& a, const MaximalRecord& b, int dim) {
  for (int k = 0; k < dim; ++k) {
    const auto va = a.w[static_cast<std::size_t>(k)];
    const auto vb = b.w[static_cast<std::size_t>(k)];
    const auto ka = std::make_pair(std::abs(va), va > 0);
    const auto kb = std::make_pair(std::abs(vb), vb > 0);
    if (ka != kb) return ka < kb;
  }
  return false;
}

bool collection_less(const Collection& a, const Collection& b) {
  if (a.t_prime != b.t_prime) return a.t_prime < b.t_prime;
  if (a.t != b.t) return a.t < b.t;
  if (a.c != b.c) return a.c < b.c;
  if (a.alpha_t_prime != b.alpha_t_prime)
    return std::lexicographical_compare(a.alpha_t_prime.begin(), a.alpha_t_prime.end(),
                                        b.alpha_t_prime.begin(), b.alpha_t_prime.end());
  return std::lexicographical_compare(a.alpha_t.begin(), a.alpha_t.end(),
                                      b.alpha_t.begin(), b.alpha_t.end());
}

const char* mode_name(space::DedupMode mode) {
  switch (mode) {
    case space::DedupMode::kInstruments: return "instruments";
    case space::DedupMode::kTreatments: return "treatments";
    case space::DedupMode::kSequential: return "sequential";
    case space::DedupMode::kJoint: return "joint";
  }
  return "sequential";
}

}  // namespace

PartOneResult algorithm2_part1(const EnumOptions& opts, int t_prime, int t) {
  if (opts.treatments < 2 || opts.treatments > 4 || opts.instruments < 2 ||
      opts.instruments > 4)
    throw std::invalid_argument("algorithm2_part1: supported sizes are 2..4 treatments and 2..4 instrument values");
  if (t_prime <= t || t < 0 || t_prime >= opts.treatments)
    throw std::invalid_argument("algorithm2_part1: need treatments > t >= 0 ordered as t' > t");
  PairContext ctx = make_context(opts, t_prime, t);
  PartOneResult res;
  res.t_prime = t_prime;
  res.t = t;
  res.scale = ctx.scale;
  scan_range(ctx, opts, 0, res.records, nullptr);
  return res;
}

Catalog algorithm2_part2(const EnumOptions& opts,
                         const std::vector<PartOneResult>& parts) {
  const int T = opts.treatments;
  const int Z = opts.instruments;
  if (parts.size() != 1 || parts[0].t_prime != 1 || parts[0].t != 0)
    throw std::invalid_argument(
        "algorithm2_part2: expects exactly the scan result for the pair (1, 0)");
  const auto& part = parts[0];
  auto types = space::all_response_types(T, Z, 256);
  const auto total = static_cast<unsigned>(types.size());

  std::vector<const MaximalRecord*> stream;
  stream.reserve(part.records.size());
  for (const auto& rec : part.records) stream.push_back(&rec);
  std::sort(stream.begin(), stream.end(),
            [&](const MaximalRecord* a, const MaximalRecord* b) {
              return stream_less(*a, *b, 2 * Z);
            });

  const bool order_rigid = opts.dedup == space::DedupMode::kSequential &&
                           opts.seq_flavor == SeqFlavor::kOrderRigid;

  // Relabeling dedup over the scan records themselves, instrument
  // permutations first, then treatment relabelings. A record is dropped when
  // its column sequence equals, in place, a relabeled column sequence of an
  // earlier kept record on a different model; records sharing a model always
  // coexist (they become one catalog entry below).
  if (order_rigid) {
    auto run_pass = [&](const std::vector<const MaximalRecord*>& in, bool instruments) {
      std::map<std::string, Mask256> seen;
      std::vector<const MaximalRecord*> out;
      const auto perms = permutations(instruments ? Z : T);
      for (const auto* rec : in) {
        auto disp = materialize(rec->g_max, types, T, Z, opts.column_order);
        auto ser = space::serialize(disp);
        auto hit = seen.find(ser);
        if (hit != seen.end() && !(hit->second == rec->g_max)) continue;
        out.push_back(rec);
        for (const auto& p : perms) {
          auto image = instruments ? permute_instruments(disp, p)
                                   : relabel_treatments(disp, p);
          seen.emplace(space::serialize(image), rec->g_max);
        }
      }
      return out;
    };
    stream = run_pass(run_pass(stream, true), false);
  }

  // Extend every surviving record to all ordered treatment pairs t' > t.
  // Entries are keyed by the transported model as a set; the displayed
  // column order is the transported image, taken in arrival order, of the
  // source record's sorted columns, fixed by whichever record touches the
  // entry first.
  struct Entry {
    Mask256 model;
    std::vector<unsigned> cols;
    space::SelectionModel disp;
    std::string ser;
    std::vector<Collection> collections;
  };
  std::vector<Entry> entries;
  std::map<Mask256, std::size_t> slot_of;
  const auto pairs = ordered_pairs(T);
  for (const auto* rec : stream) {
    const auto src_cols = mask_columns(rec->g_max, types, opts.column_order);
    for (const auto& [tp, t] : pairs) {
      const auto tau = pair_relabel(T, tp, t);
      const auto tmap = type_index_map(types, tau, T);
      const Mask256 model = map_mask(rec->g_max, tmap, total);
      const Mask256 comp = map_mask(rec->compliers, tmap, total);
      auto [it, fresh] = slot_of.try_emplace(model, entries.size());
      if (fresh) {
        Entry e;
        e.model = model;
        for (unsigned g : src_cols) e.cols.push_back(tmap[g]);
        e.disp = materialize_cols(e.cols, types, T, Z);
        e.ser = space::serialize(e.disp);
        entries.push_back(std::move(e));
      }
      Entry& e = entries[it->second];
      Collection col;
      col.t_prime = tp;
      col.t = t;
      for (int z = 0; z < Z; ++z) {
        col.alpha_t_prime.emplace_back(rec->w[static_cast<std::size_t>(z)], part.scale);
        col.alpha_t.emplace_back(-rec->w[static_cast<std::size_t>(Z + z)], part.scale);
      }
      for (unsigned g : e.cols) col.c.push_back(comp.test(g) ? 1 : 0);
      e.collections.push_back(std::move(col));
    }
  }

  std::vector<const Entry*> kept;
  if (order_rigid) {
    // Drop entries equal to an earlier one under an instrument permutation,
    // comparing the displayed columns in place, then the same with
    // treatment relabelings.
    std::vector<const Entry*> pass1;
    {
      std::set<std::string> seen;
      const auto sigmas = permutations(Z);
      for (const auto& e : entries) {
        if (seen.count(e.ser)) continue;
        pass1.push_back(&e);
        for (const auto& s : sigmas)
          seen.insert(space::serialize(permute_instruments(e.disp, s)));
      }
    }
    {
      std::set<std::string> seen;
      const auto taus = permutations(T);
      for (const auto* e : pass1) {
        if (seen.count(e->ser)) continue;
        kept.push_back(e);
        for (const auto& tau : taus)
          seen.insert(space::serialize(relabel_treatments(e->disp, tau)));
      }
    }
  } else {
    std::set<std::string> seen;
    for (const auto& e : entries) {
      auto key = space::canonical_key(e.disp, opts.dedup);
      if (!seen.insert(key).second) continue;
      kept.push_back(&e);
    }
  }

  Catalog cat;
  cat.treatments = T;
  cat.instruments = Z;
  cat.dedup_mode = mode_name(opts.dedup);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    CatalogEntry e;
    e.sm_id = "SM." + std::to_string(T) + "." + std::to_string(Z) + "." +
              std::to_string(i + 1);
    e.model = kept[i]->disp;
    e.collections = kept[i]->collections;
    std::sort(e.collections.begin(), e.collections.end(), collection_less);
    cat.entries.push_back(std::move(e));
  }
  return cat;
}

Catalog enumerate_catalog(const EnumOptions& opts) {
  // All candidate scanning happens at the pair (1, 0); part two extends the
  // result to every ordered pair by treatment relabeling.
  PairContext ctx = make_context(opts, 1, 0);
  PartOneResult part;
  part.t_prime = 1;
  part.t = 0;
  part.scale = ctx.scale;

  std::uint64_t start = 0;
  if (!opts.resume_path.empty()) {
    std::ifstream f(opts.resume_path);
    if (f) {
      nlohmann::json j = nlohmann::json::parse(f);
      if (j.at("treatments").get<int>() != opts.treatments ||
          j.at("instruments").get<int>() != opts.instruments ||
          j.at("scale").get<std::int64_t>() != ctx.scale ||
          j.at("total").get<std::uint64_t>() != ctx.total)
        throw std::runtime_error("resume: checkpoint does not match this run");
      const auto& jp = j.at("parts").at(0);
      if (jp.at("t_prime").get<int>() != 1 || jp.at("t").get<int>() != 0)
        throw std::runtime_error("resume: scan pair mismatch");
      part.records = records_from_json(jp.at("w"), ctx);
      start = std::min(jp.at("done").get<std::uint64_t>(), ctx.total);
    }
  }

  std::uint64_t last_flush = start;
  scan_range(ctx, opts, start, part.records,
             [&](std::uint64_t done, const std::vector<MaximalRecord>& recs) {
               if (opts.checkpoint_path.empty()) return;
               if (done - last_flush < opts.checkpoint_every && done != ctx.total)
                 return;
               nlohmann::ordered_json j;
               j["treatments"] = opts.treatments;
               j["instruments"] = opts.instruments;
               j["scale"] = ctx.scale;
               j["total"] = ctx.total;
               nlohmann::ordered_json jp;
               jp["t_prime"] = 1;
               jp["t"] = 0;
               jp["done"] = done;
               jp["w"] = records_to_json(recs, 2 * opts.instruments);
               j["parts"] = nlohmann::ordered_json::array({std::move(jp)});
               write_checkpoint(opts.checkpoint_path, j);
               last_flush = done;
             });
  prune_records(part.records, ctx, opts.mirror_prune);

  std::vector<PartOneResult> parts;
  parts.push_back(std::move(part));
  return algorithm2_part2(opts, parts);
}

std::vector<IdentifiedPair> record_pairs(const std::vector<PartOneResult>& parts) {
  std::vector<IdentifiedPair> out;
  for (const auto& part : parts)
    for (const auto& rec : part.records)
      out.push_back({part.t_prime, part.t, rec.g_max, rec.compliers});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<IdentifiedPair> algorithm1_pairs(int treatments, int instruments,
                                             std::uint64_t model_cap) {
  auto types = space::all_response_types(treatments, instruments, 256);
  const auto G = static_cast<unsigned>(types.size());
  if (G >= 63 || (1ull << G) > model_cap)
    throw std::invalid_argument("algorithm1_pairs: response type space too large");
  const int Z = instruments;
  const int dim = 2 * Z;
  auto pairs = ordered_pairs(treatments);

  std::vector<IdentifiedPair> found;
  for (std::uint64_t mask = 1; mask < (1ull << G); ++mask) {
    std::vector<unsigned> cols;
    for (unsigned g = 0; g < G; ++g)
      if (mask & (1ull << g)) cols.push_back(g);
    space::SelectionModel model;
    model.treatments = treatments;
    model.instruments = instruments;
    for (unsigned g : cols) model.groups.push_back(types[g]);
    Mask256 model_mask;
    for (unsigned g : cols) model_mask.set(g);

    for (auto [tp, t] : pairs) {
      auto colls = ident::binary_collections(model, tp, t);
      for (const auto& coll : colls) {
        // Witness space of the pair of weight vectors reproducing c on this
        // model: two constraints per column, unknowns stacked as
        // (alpha_1', -alpha_0')'.
        const auto k = cols.size();
        RatMatrix M(2 * k, static_cast<std::size_t>(dim));
        RatVector rhs(2 * k);
        for (std::size_t j = 0; j < k; ++j) {
          const auto& ty = types[cols[j]];
          for (int z = 0; z < Z; ++z) {
            if (ty[static_cast<std::size_t>(z)] == tp)
              M.at(2 * j, static_cast<std::size_t>(z)) = 1;
            if (ty[static_cast<std::size_t>(z)] == t)
              M.at(2 * j + 1, static_cast<std::size_t>(Z + z)) = 1;
          }
          rhs[2 * j] = coll.c[j];
          rhs[2 * j + 1] = -Rational(coll.c[j]);
        }
        auto w0 = linalg::rowspace_solve(M.transposed(), rhs);
        if (!w0) throw std::logic_error("algorithm1_pairs: identified c has no witness");
        auto basis = linalg::right_nullspace(M);

        // The pair survives when some witness realizes the model exactly:
        // no outside type is forced into the agreement set with a constant
        // 0/1 contrast across the whole witness space.
        bool exact = true;
        for (unsigned g = 0; g < G && exact; ++g) {
          if (mask & (1ull << g)) continue;
          RatVector r1(static_cast<std::size_t>(dim)), r0(static_cast<std::size_t>(dim));
          for (int z = 0; z < Z; ++z) {
            if (types[g][static_cast<std::size_t>(z)] == tp)
              r1[static_cast<std::size_t>(z)] = 1;
            if (types[g][static_cast<std::size_t>(z)] == t)
              r0[static_cast<std::size_t>(Z + z)] = 1;
          }
          RatVector agree(static_cast<std::size_t>(dim));
          for (int i = 0; i < dim; ++i)
            agree[static_cast<std::size_t>(i)] =
                r1[static_cast<std::size_t>(i)] + r0[static_cast<std::size_t>(i)];
          bool agree_always = dot(agree, *w0).is_zero();
          for (const auto& n : basis) {
            if (!agree_always) break;
            agree_always = dot(agree, n).is_zero();
          }
          if (!agree_always) continue;
          bool contrast_const = true;
          for (const auto& n : basis)
            if (!dot(r1, n).is_zero()) {
              contrast_const = false;
              break;
            }
          if (!contrast_const) continue;
          Rational h = dot(r1, *w0);
          if (h.is_zero() || h == Rational(1)) exact = false;
        }
        if (!exact) continue;

        Mask256 comp;
        for (std::size_t j = 0; j < k; ++j)
          if (coll.c[j] == 1) comp.set(cols[j]);
        if (comp.none()) continue;
        found.push_back({tp, t, model_mask, comp});
      }
    }
  }

  // Keep only maximal models per (pair, complier set).
  std::map<std::tuple<int, int, Mask256>, std::vector<Mask256>> by_comp;
  for (const auto& f : found)
    by_comp[{f.t_prime, f.t, f.compliers}].push_back(f.model);
  std::vector<IdentifiedPair> out;
  for (const auto& f : found) {
    const auto& others = by_comp[{f.t_prime, f.t, f.compliers}];
    bool dominated = false;
    for (const auto& o : others)
      if (o != f.model && f.model.subset_of(o)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace oaid::enumer
