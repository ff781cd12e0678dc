#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "oaid/catalog.hpp"
#include "oaid/space.hpp"

namespace oaid::enumer {

// Bitmask over the full response-type space (types indexed in the
// lexicographic order of all_response_types). Sized for |T|^|Z| <= 256.
struct Mask256 {
  std::array<std::uint64_t, 4> bits{};

  void set(unsigned i) { bits[i >> 6] |= 1ull << (i & 63); }
  bool test(unsigned i) const { return (bits[i >> 6] >> (i & 63)) & 1u; }
  bool none() const { return !(bits[0] | bits[1] | bits[2] | bits[3]); }
  unsigned count() const {
    unsigned c = 0;
    for (auto b : bits) c += static_cast<unsigned>(__builtin_popcountll(b));
    return c;
  }
  bool subset_of(const Mask256& o) const {
    for (int i = 0; i < 4; ++i)
      if (bits[i] & ~o.bits[i]) return false;
    return true;
  }
  friend auto operator<=>(const Mask256&, const Mask256&) = default;
};

// How model columns are ordered when a mask is materialized: plain
// lexicographic over assignment vectors, or colexicographic (last
// instrument's assignment most significant), which is the order the
// published catalogs use.
enum class ColumnOrder { kLex, kColex };

// Which organization the "sequential" mode uses in part two.
//   kOrderRigid: two passes that compare relabeled models column for column
//     without re-sorting, so only relabelings that preserve the canonical
//     column order merge. Reproduces the published catalogs.
//   kKeyBased: merge by space::canonical_key(kSequential).
enum class SeqFlavor { kOrderRigid, kKeyBased };

struct EnumOptions {
  int treatments = 2;
  int instruments = 2;
  space::DedupMode dedup = space::DedupMode::kSequential;
  SeqFlavor seq_flavor = SeqFlavor::kOrderRigid;
  ColumnOrder column_order = ColumnOrder::kColex;
  // The final mirrored-record paring (see prune_records stage two) trims
  // results subsumed by a symmetric full-agreement record before the catalog
  // is organized. Identification-level consumers (record_pairs cross
  // validation) turn it off: the trimmed records still carry genuine
  // (maximal model, complier set) pairs.
  bool mirror_prune = true;
  int threads = 1;
  std::uint64_t candidate_cap = 1ull << 28;
  std::string checkpoint_path;
  std::uint64_t checkpoint_every = 1ull << 22;
  std::string resume_path;
};

// Part-one survivor for one ordered treatment pair: the stacked weight
// vector w = (alpha_1', -alpha_0')' in units of 1/scale, with its index
// sets over the full response-type space.
struct MaximalRecord {
  std::array<std::int32_t, 8> w{};  // first |Z| entries alpha_1, next -alpha_0
  Mask256 g_zero;                   // both sides agree
  Mask256 g_max;                    // agree with a 0/1 contrast
  Mask256 compliers;                // agree with contrast exactly 1
};

struct PartOneResult {
  int t_prime = 1;
  int t = 0;
  std::int64_t scale = 1;  // w entries are alpha * scale
  std::vector<MaximalRecord> records;
};

// Grid search over candidate weight vectors for one ordered pair, with the
// dominance prune applied. Deterministic: the result is independent of
// thread count and checkpoint boundaries.
PartOneResult algorithm2_part1(const EnumOptions& opts, int t_prime, int t);

// Organizes the (1, 0) scan result into the catalog. Records are streamed
// in a fixed order (zero first, then magnitudes ascending, negative before
// positive, coordinate by coordinate), deduped under instrument then
// treatment relabelings, extended to every ordered pair t' > t by treatment
// relabeling, grouped by the transported model as a set (the displayed
// column order is the transported image fixed by the first record that
// touches the entry), deduped again at the entry level, and given SM ids.
// Expects exactly one part, for the pair (1, 0).
Catalog algorithm2_part2(const EnumOptions& opts,
                         const std::vector<PartOneResult>& parts);

// Convenience: part one at (1, 0) plus part two.
Catalog enumerate_catalog(const EnumOptions& opts);

// Identified pair produced by the subset-loop reference algorithm.
struct IdentifiedPair {
  int t_prime = 1;
  int t = 0;
  Mask256 model;
  Mask256 compliers;
  friend auto operator<=>(const IdentifiedPair&, const IdentifiedPair&) = default;
};

// Reference enumeration: loops over every nonempty subset of the response
// type space, reads identified contrasts off the stacked null space, and
// keeps the pairs realizable as some weight vector's maximal model. Output
// is sorted. Throws when 2^(|T|^|Z|) exceeds the cap.
std::vector<IdentifiedPair> algorithm1_pairs(int treatments, int instruments,
                                             std::uint64_t model_cap = 1ull << 20);

// The same pair set extracted from part-one results, for cross validation.
std::vector<IdentifiedPair> record_pairs(const std::vector<PartOneResult>& parts);

}  // namespace oaid::enumer
