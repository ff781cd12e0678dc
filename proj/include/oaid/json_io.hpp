#pragma once

#include <json.hpp>

#include "oaid/catalog.hpp"
#include "oaid/space.hpp"

namespace oaid::json_io {

// Model file schema: {"instruments": Z, "treatments": T, "rows": [[...]]}
// with rows[z][g] holding the treatment group g takes at instrument z.
nlohmann::ordered_json model_to_json(const space::SelectionModel& model);
space::SelectionModel model_from_json(const nlohmann::json& j);

// Catalog schema: {"treatments", "instruments", "dedup_mode", "entries":
// [{"sm_id", "rows", "collections": [{"t_prime", "t", "alpha_t_prime",
// "alpha_t", "c"}]}]}. Rationals are strings ("p/q" or integer), c entries
// are 0/1 integers.
nlohmann::ordered_json catalog_to_json(const Catalog& cat);
Catalog catalog_from_json(const nlohmann::json& j);

}  // namespace oaid::json_io
