// Shared fixtures and comparison helpers for the test suites.
#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oaid/catalog.hpp"
#include "oaid/json_io.hpp"
#include "oaid/space.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
  return std::string(OAID_TEST_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline oaid::Catalog load_catalog(const std::string& name) {
  return oaid::json_io::catalog_from_json(
      nlohmann::json::parse(read_file(data_path(name))));
}

// The canonical LATE selection model: never-taker, complier, always-taker.
inline oaid::space::SelectionModel late_model() {
  return oaid::space::model_from_rows(2, 2, {{0, 0, 1}, {0, 1, 1}});
}

// The six-group vector-monotonicity model over two binary instruments
// (instrument values ordered (0,0), (1,0), (0,1), (1,1); groups ordered
// Z1-complier, Z2-complier, eager, reluctant, never-taker, always-taker).
inline oaid::space::SelectionModel vm_model() {
  return oaid::space::model_from_rows(2, 4,
                                      {{0, 0, 0, 0, 0, 1},
                                       {1, 0, 1, 0, 0, 1},
                                       {0, 1, 1, 0, 0, 1},
                                       {1, 1, 1, 1, 0, 1}});
}

// Order-insensitive fingerprint of one collection.
inline std::string collection_key(const oaid::Collection& c) {
  std::string s = std::to_string(c.t_prime) + "," + std::to_string(c.t) + "|";
  for (const auto& a : c.alpha_t_prime) s += a.str() + ",";
  s += "|";
  for (const auto& a : c.alpha_t) s += a.str() + ",";
  s += "|";
  for (int x : c.c) s += static_cast<char>('0' + x);
  return s;
}

inline std::vector<std::string> collection_keys(
    const std::vector<oaid::Collection>& cols) {
  std::vector<std::string> keys;
  for (const auto& c : cols) keys.push_back(collection_key(c));
  std::sort(keys.begin(), keys.end());
  return keys;
}

// Model serialization -> sorted collection fingerprints, for whole-catalog
// comparison that ignores entry order, SM numbering, and within-entry
// collection order.
inline std::map<std::string, std::vector<std::string>> entry_map(
    const oaid::Catalog& cat) {
  std::map<std::string, std::vector<std::string>> m;
  for (const auto& e : cat.entries)
    m[oaid::space::serialize(e.model)] = collection_keys(e.collections);
  return m;
}

// Multiset of (joint canonical key, collection count) over the entries:
// matching currency for catalogs whose representatives may differ by a
// relabeling.
inline std::map<std::pair<std::string, std::size_t>, int> class_census(
    const oaid::Catalog& cat) {
  std::map<std::pair<std::string, std::size_t>, int> census;
  for (const auto& e : cat.entries) {
    const auto key = oaid::space::canonical_key(
        e.model, oaid::space::DedupMode::kJoint);
    ++census[{key, e.collections.size()}];
  }
  return census;
}

}  // namespace testutil
