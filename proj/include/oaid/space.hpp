#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oaid/matrix.hpp"

namespace oaid::space {

// A response type assigns one treatment value to every instrument value:
// entry z holds the treatment taken when the instrument equals z.
using ResponseType = std::vector<int>;

// A selection model is an ordered list of distinct response types (the
// order fixes the column order of the indicator matrices).
struct SelectionModel {
  int treatments = 0;
  int instruments = 0;
  std::vector<ResponseType> groups;
};

// How model equivalence under relabelings is decided when organizing
// enumeration output.
//   kInstruments: permutations of instrument values only.
//   kTreatments:  permutations of treatment values only.
//   kSequential:  instrument permutations first, then treatment relabelings
//                 applied to the instrument-canonical form without
//                 re-sorting columns. This reproduces the published two-pass
//                 organization; it deliberately does not quotient by the
//                 full product group, so models that need a simultaneous
//                 relabeling of both axes stay distinct.
//   kJoint:       the full product group (strictest merging).
enum class DedupMode { kInstruments, kTreatments, kSequential, kJoint };

// All |T|^|Z| response types in lexicographic order of their assignment
// vectors. Throws when the count would exceed `cap`.
std::vector<ResponseType> all_response_types(int treatments, int instruments,
                                             std::uint64_t cap = 1000000);

// Z x |G| matrix with entry (z, g) = 1 when group g takes treatment t at
// instrument value z.
RatMatrix indicator_matrix(const SelectionModel& model, int t);

// Builds a model from the Z x |G| assignment matrix rows[z][g] = treatment
// taken by group g at instrument z. Validates entry range and that no two
// columns coincide.
SelectionModel model_from_rows(int treatments, int instruments,
                               const std::vector<std::vector<int>>& rows);

// Canonical serialized form of a model under the given relabeling mode.
// Keys of two models coincide exactly when the mode's dedup merges them.
// Column order inside the canonical form is lexicographic over the
// relabeled response-type vectors (except for the sequential treatment
// pass, which by design keeps the instrument-canonical column order).
std::string canonical_key(const SelectionModel& model, DedupMode mode);

// Serialized form of the model as given (no relabeling, columns in their
// current order). Used for deterministic ordering.
std::string serialize(const SelectionModel& model);

// Returns a copy with columns sorted lexicographically by response type.
SelectionModel sorted_columns(const SelectionModel& model);

}  // namespace oaid::space
