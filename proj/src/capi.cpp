// C interface over the core library. Every entry point converts exceptions
// into status codes and hands out heap-allocated strings the caller frees
// with oaid_string_free.

#include "oaid.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "oaid/catalog.hpp"
#include "oaid/enumerate.hpp"
#include "oaid/estimand.hpp"
#include "oaid/ident.hpp"
#include "oaid/json_io.hpp"
#include "oaid/space.hpp"
#include "oaid/spectrum.hpp"
#include "oaid/verify.hpp"

struct oaid_model {
  oaid::space::SelectionModel value;
};

struct oaid_catalog {
  oaid::Catalog value;
};

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

int to_status(std::exception_ptr ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const json::exception&) {
    return OAID_EPARSE;
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    if (what.find("cap") != std::string::npos ||
        what.find("too large") != std::string::npos)
      return OAID_ECAP;
    return OAID_EINVAL;
  } catch (const std::domain_error&) {
    return OAID_EINVAL;
  } catch (const std::runtime_error&) {
    return OAID_EIO;
  } catch (...) {
    return OAID_EINTERNAL;
  }
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (...) {
    return to_status(std::current_exception());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int emit_string(const std::string& s, char** out) {
  *out = dup_string(s);
  return *out ? OAID_OK : OAID_EINTERNAL;
}

bool parse_format(const char* format, oaid::estimand::Format* out) {
  const std::string f = format ? format : "text";
  if (f == "text") *out = oaid::estimand::Format::kText;
  else if (f == "latex") *out = oaid::estimand::Format::kLatex;
  else if (f == "json") *out = oaid::estimand::Format::kJson;
  else return false;
  return true;
}

ordered_json rat_vector_json(const oaid::RatVector& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& x : v) arr.push_back(x.str());
  return arr;
}

ordered_json latent_json(const oaid::verify::LatentDistribution& l) {
  ordered_json j;
  j["model"] = oaid::json_io::model_to_json(l.model);
  j["pz"] = rat_vector_json(l.pz);
  j["probs"] = rat_vector_json(l.probs);
  ordered_json means = ordered_json::array();
  for (const auto& row : l.means) means.push_back(rat_vector_json(row));
  j["means"] = means;
  return j;
}

std::vector<int> copy_c(const int* c, size_t c_len) {
  if (!c) throw std::invalid_argument("c: null pointer");
  return std::vector<int>(c, c + c_len);
}

// A single-entry catalog reuses the catalog serializer and renderer for
// per-model queries.
oaid::Catalog wrap_entry(const oaid::space::SelectionModel& model,
                         std::vector<oaid::Collection> collections) {
  oaid::Catalog cat;
  cat.treatments = model.treatments;
  cat.instruments = model.instruments;
  cat.dedup_mode = "none";
  oaid::CatalogEntry entry;
  entry.sm_id = "model";
  entry.model = model;
  entry.collections = std::move(collections);
  cat.entries.push_back(std::move(entry));
  return cat;
}

}  // namespace

extern "C" {

const char* oaid_version(void) { return "1.0.0"; }

const char* oaid_status_message(int status) {
  switch (status) {
    case OAID_OK: return "ok";
    case OAID_VERIFY_FAIL: return "exact verification failed";
    case OAID_EINVAL: return "invalid argument";
    case OAID_EPARSE: return "malformed input";
    case OAID_EIO: return "i/o failure";
    case OAID_ECAP: return "cap exceeded";
    case OAID_EINTERNAL: return "internal error";
    default: return "unknown status";
  }
}

void oaid_string_free(char* s) { std::free(s); }

int oaid_model_from_json(const char* json_text, oaid_model** out) {
  if (!json_text || !out) return OAID_EINVAL;
  *out = nullptr;
  return guarded([&] {
    auto j = json::parse(json_text);
    auto model = oaid::json_io::model_from_json(j);
    *out = new oaid_model{std::move(model)};
    return OAID_OK;
  });
}

int oaid_model_to_json(const oaid_model* model, char** out_json) {
  if (!model || !out_json) return OAID_EINVAL;
  return guarded([&] {
    return emit_string(oaid::json_io::model_to_json(model->value).dump(2),
                       out_json);
  });
}

void oaid_model_free(oaid_model* model) { delete model; }

int oaid_enumerate(const oaid_enumerate_options* options, oaid_catalog** out) {
  if (!options || !out) return OAID_EINVAL;
  *out = nullptr;
  return guarded([&] {
    oaid::enumer::EnumOptions opts;
    opts.treatments = options->treatments;
    opts.instruments = options->instruments;
    const std::string dedup = options->dedup ? options->dedup : "sequential";
    if (dedup == "sequential") {
      opts.dedup = oaid::space::DedupMode::kSequential;
    } else if (dedup == "joint") {
      opts.dedup = oaid::space::DedupMode::kJoint;
    } else {
      return OAID_EINVAL;
    }
    opts.threads = options->threads > 0 ? options->threads : 1;
    if (options->candidate_cap) opts.candidate_cap = options->candidate_cap;
    if (options->checkpoint_path) opts.checkpoint_path = options->checkpoint_path;
    if (options->checkpoint_every) opts.checkpoint_every = options->checkpoint_every;
    if (options->resume_path) opts.resume_path = options->resume_path;
    auto cat = oaid::enumer::enumerate_catalog(opts);
    *out = new oaid_catalog{std::move(cat)};
    return OAID_OK;
  });
}

int oaid_catalog_from_json(const char* json_text, oaid_catalog** out) {
  if (!json_text || !out) return OAID_EINVAL;
  *out = nullptr;
  return guarded([&] {
    auto j = json::parse(json_text);
    auto cat = oaid::json_io::catalog_from_json(j);
    *out = new oaid_catalog{std::move(cat)};
    return OAID_OK;
  });
}

int oaid_catalog_to_json(const oaid_catalog* catalog, char** out_json) {
  if (!catalog || !out_json) return OAID_EINVAL;
  return guarded([&] {
    return emit_string(oaid::json_io::catalog_to_json(catalog->value).dump(2),
                       out_json);
  });
}

void oaid_catalog_free(oaid_catalog* catalog) { delete catalog; }

int oaid_catalog_counts(const oaid_catalog* catalog, uint64_t* out_models,
                        uint64_t* out_collections) {
  if (!catalog || !out_models || !out_collections) return OAID_EINVAL;
  const auto counts = oaid::summary_counts(catalog->value);
  *out_models = counts.models;
  *out_collections = counts.collections;
  return OAID_OK;
}

int oaid_catalog_render(const oaid_catalog* catalog, const char* format,
                        char** out_text) {
  if (!catalog || !out_text) return OAID_EINVAL;
  oaid::estimand::Format f;
  if (!parse_format(format, &f)) return OAID_EINVAL;
  return guarded([&] {
    return emit_string(oaid::estimand::emit_catalog(catalog->value, f),
                       out_text);
  });
}

int oaid_model_collections(const oaid_model* model, int t_prime, int t,
                           char** out_json) {
  if (!model || !out_json) return OAID_EINVAL;
  return guarded([&] {
    auto cols = oaid::ident::binary_collections(model->value, t_prime, t);
    auto cat = wrap_entry(model->value, std::move(cols));
    auto j = oaid::json_io::catalog_to_json(cat);
    return emit_string(j["entries"][0]["collections"].dump(2), out_json);
  });
}

int oaid_check_pair(const oaid_model* model, int t_prime, int t,
                    const char* format, char** out_text) {
  if (!model || !out_text) return OAID_EINVAL;
  oaid::estimand::Format f;
  if (!parse_format(format, &f)) return OAID_EINVAL;
  return guarded([&] {
    auto cols = oaid::ident::binary_collections(model->value, t_prime, t);
    auto cat = wrap_entry(model->value, std::move(cols));
    return emit_string(oaid::estimand::emit_catalog(cat, f), out_text);
  });
}

int oaid_model_catalog(const oaid_model* model, const char* format,
                       char** out_text) {
  if (!model || !out_text) return OAID_EINVAL;
  oaid::estimand::Format f;
  if (!parse_format(format, &f)) return OAID_EINVAL;
  return guarded([&] {
    std::vector<oaid::Collection> all;
    for (int tp = 1; tp < model->value.treatments; ++tp)
      for (int t = 0; t < tp; ++t) {
        auto cols = oaid::ident::binary_collections(model->value, tp, t);
        all.insert(all.end(), cols.begin(), cols.end());
      }
    auto cat = wrap_entry(model->value, std::move(all));
    return emit_string(oaid::estimand::emit_catalog(cat, f), out_text);
  });
}

int oaid_alpha_for_c(const oaid_model* model, int t, const int* c,
                     size_t c_len, char** out_json) {
  if (!model || !out_json) return OAID_EINVAL;
  return guarded([&] {
    auto cv = copy_c(c, c_len);
    auto alpha = oaid::ident::alpha_from_c(model->value, t, cv);
    ordered_json j;
    j["identified"] = alpha.has_value();
    j["alpha"] = alpha ? ordered_json(rat_vector_json(*alpha))
                       : ordered_json(nullptr);
    return emit_string(j.dump(2), out_json);
  });
}

int oaid_verify_catalog(const oaid_catalog* catalog,
                        uint64_t draws_per_collection, uint64_t seed,
                        char** out_report_json) {
  if (!catalog || !out_report_json) return OAID_EINVAL;
  if (draws_per_collection == 0) return OAID_EINVAL;
  return guarded([&] {
    const auto& cat = catalog->value;
    oaid::verify::SplitMix64 seeder(seed);
    ordered_json entries = ordered_json::array();
    ordered_json failures = ordered_json::array();
    uint64_t checks = 0;
    for (size_t ei = 0; ei < cat.entries.size(); ++ei) {
      const auto& entry = cat.entries[ei];
      bool entry_ok = true;
      for (size_t ci = 0; ci < entry.collections.size(); ++ci) {
        const auto& col = entry.collections[ci];
        // Structural invariants hold independently of any population.
        const auto cap =
            oaid::ident::melo_winter_cap(entry.model, col.t_prime, col.t);
        size_t same_pair = 0;
        for (const auto& other : entry.collections)
          if (other.t_prime == col.t_prime && other.t == col.t) ++same_pair;
        const uint64_t min_cap = std::min(cap.cap_t_prime, cap.cap_t);
        if (same_pair > min_cap) {
          entry_ok = false;
          failures.push_back({{"sm_id", entry.sm_id},
                              {"collection", ci},
                              {"kind", "cardinality cap violated"}});
        }
        auto has_always = [&](int value) {
          for (const auto& g : entry.model.groups) {
            bool all = true;
            for (int v : g)
              if (v != value) { all = false; break; }
            if (all) return true;
          }
          return false;
        };
        auto sum_is_zero = [](const oaid::RatVector& a) {
          oaid::Rational s;
          for (const auto& x : a) s = s + x;
          return s.is_zero();
        };
        if (has_always(col.t) && !sum_is_zero(col.alpha_t)) {
          entry_ok = false;
          failures.push_back({{"sm_id", entry.sm_id},
                              {"collection", ci},
                              {"kind", "nonzero weight sum with always-taker"}});
        }
        if (has_always(col.t_prime) && !sum_is_zero(col.alpha_t_prime)) {
          entry_ok = false;
          failures.push_back({{"sm_id", entry.sm_id},
                              {"collection", ci},
                              {"kind", "nonzero weight sum with always-taker"}});
        }
        for (uint64_t d = 0; d < draws_per_collection; ++d) {
          const uint64_t latent_seed = seeder.next();
          auto latent = oaid::verify::random_latent(entry.model, latent_seed);
          auto res = oaid::verify::check_identification(latent, col);
          ++checks;
          if (!res.ok) {
            entry_ok = false;
            failures.push_back({{"sm_id", entry.sm_id},
                                {"collection", ci},
                                {"kind", "oracle mismatch"},
                                {"seed", latent_seed}});
          }
        }
      }
      entries.push_back({{"sm_id", entry.sm_id},
                         {"collections", entry.collections.size()},
                         {"ok", entry_ok}});
    }
    ordered_json report;
    report["models"] = cat.entries.size();
    report["checks"] = checks;
    report["draws_per_collection"] = draws_per_collection;
    report["seed"] = seed;
    report["ok"] = failures.empty();
    report["failures"] = failures;
    report["entries"] = entries;
    const int rc = emit_string(report.dump(2), out_report_json);
    if (rc != OAID_OK) return rc;
    return failures.empty() ? OAID_OK : OAID_VERIFY_FAIL;
  });
}

int oaid_witness(const oaid_model* model, int t, const int* c, size_t c_len,
                 uint64_t seed, char** out_json) {
  if (!model || !out_json) return OAID_EINVAL;
  return guarded([&] {
    auto cv = copy_c(c, c_len);
    auto base = oaid::verify::random_latent(model->value, seed);
    auto witness = oaid::verify::non_identification_witness(base, t, cv);
    ordered_json j;
    if (!witness) {
      j["identified"] = true;
    } else {
      j["identified"] = false;
      j["mu_first"] = witness->mu_first.str();
      j["mu_second"] = witness->mu_second.str();
      j["first"] = latent_json(witness->first);
      j["second"] = latent_json(witness->second);
    }
    return emit_string(j.dump(2), out_json);
  });
}

int oaid_spectrum(int n, char** out_json) {
  if (!out_json) return OAID_EINVAL;
  return guarded([&] {
    auto dets = oaid::spectrum::known_spectrum(n);
    auto coeffs = oaid::spectrum::coefficient_set(n);
    ordered_json j;
    j["n"] = n;
    j["determinants"] = ordered_json::array();
    for (auto d : dets) j["determinants"].push_back(d);
    j["coefficients"] = ordered_json::array();
    for (const auto& x : coeffs) j["coefficients"].push_back(x.str());
    return emit_string(j.dump(2), out_json);
  });
}

}  // extern "C"
