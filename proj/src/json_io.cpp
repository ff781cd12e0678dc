#include "oaid/json_io.hpp"

#include <stdexcept>

namespace oaid::json_io {

namespace {

nlohmann::ordered_json rows_to_json(const space::SelectionModel& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int z = 0; z < m.instruments; ++z) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (const auto& g : m.groups) row.push_back(g[static_cast<std::size_t>(z)]);
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json alpha_to_json(const RatVector& v) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

RatVector alpha_from_json(const nlohmann::json& j) {
  RatVector v;
  for (const auto& x : j) {
    if (x.is_string())
      v.push_back(Rational::parse(x.get<std::string>()));
    else
      v.push_back(Rational(x.get<long long>()));
  }
  return v;
}

}  // namespace

nlohmann::ordered_json model_to_json(const space::SelectionModel& model) {
  nlohmann::ordered_json j;
  j["instruments"] = model.instruments;
  j["treatments"] = model.treatments;
  j["rows"] = rows_to_json(model);
  return j;
}

space::SelectionModel model_from_json(const nlohmann::json& j) {
  if (!j.contains("instruments") || !j.contains("treatments") || !j.contains("rows"))
    throw std::invalid_argument("model json: need instruments, treatments, rows");
  const int z = j.at("instruments").get<int>();
  const int t = j.at("treatments").get<int>();
  std::vector<std::vector<int>> rows;
  for (const auto& row : j.at("rows")) rows.push_back(row.get<std::vector<int>>());
  return space::model_from_rows(t, z, rows);
}

nlohmann::ordered_json catalog_to_json(const Catalog& cat) {
  nlohmann::ordered_json j;
  j["treatments"] = cat.treatments;
  j["instruments"] = cat.instruments;
  j["dedup_mode"] = cat.dedup_mode;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : cat.entries) {
    nlohmann::ordered_json je;
    je["sm_id"] = e.sm_id;
    je["rows"] = rows_to_json(e.model);
    nlohmann::ordered_json cols = nlohmann::ordered_json::array();
    for (const auto& c : e.collections) {
      nlohmann::ordered_json jc;
      jc["t_prime"] = c.t_prime;
      jc["t"] = c.t;
      jc["alpha_t_prime"] = alpha_to_json(c.alpha_t_prime);
      jc["alpha_t"] = alpha_to_json(c.alpha_t);
      jc["c"] = c.c;
      cols.push_back(std::move(jc));
    }
    je["collections"] = std::move(cols);
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j;
}

Catalog catalog_from_json(const nlohmann::json& j) {
  Catalog cat;
  cat.treatments = j.at("treatments").get<int>();
  cat.instruments = j.at("instruments").get<int>();
  cat.dedup_mode = j.value("dedup_mode", std::string("sequential"));
  for (const auto& je : j.at("entries")) {
    CatalogEntry e;
    e.sm_id = je.at("sm_id").get<std::string>();
    std::vector<std::vector<int>> rows;
    for (const auto& row : je.at("rows")) rows.push_back(row.get<std::vector<int>>());
    e.model = space::model_from_rows(cat.treatments, cat.instruments, rows);
    for (const auto& jc : je.at("collections")) {
      Collection c;
      c.t_prime = jc.at("t_prime").get<int>();
      c.t = jc.at("t").get<int>();
      c.alpha_t_prime = alpha_from_json(jc.at("alpha_t_prime"));
      c.alpha_t = alpha_from_json(jc.at("alpha_t"));
      c.c = jc.at("c").get<std::vector<int>>();
      e.collections.push_back(std::move(c));
    }
    cat.entries.push_back(std::move(e));
  }
  return cat;
}

}  // namespace oaid::json_io
