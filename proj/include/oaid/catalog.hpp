#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oaid/matrix.hpp"
#include "oaid/space.hpp"

namespace oaid {

// One identified contrast on a model: a pair of treatment values together
// with the weight vectors that reproduce the same 0/1 complier indicator c
// from either side.
struct Collection {
  int t_prime = 1;
  int t = 0;
  RatVector alpha_t_prime;  // weights for the t' side, length |Z|
  RatVector alpha_t;        // weights for the t side, length |Z|
  std::vector<int> c;       // 0/1 per model column
};

struct CatalogEntry {
  std::string sm_id;
  space::SelectionModel model;
  std::vector<Collection> collections;
};

// Full enumeration output for one (treatments, instruments) configuration.
struct Catalog {
  int treatments = 0;
  int instruments = 0;
  std::string dedup_mode;  // "sequential" or "joint"
  std::vector<CatalogEntry> entries;
};

struct SummaryCounts {
  std::size_t models = 0;
  std::size_t collections = 0;
};

inline SummaryCounts summary_counts(const Catalog& cat) {
  SummaryCounts s;
  s.models = cat.entries.size();
  for (const auto& e : cat.entries) s.collections += e.collections.size();
  return s;
}

}  // namespace oaid
