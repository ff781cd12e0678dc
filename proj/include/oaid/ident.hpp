#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oaid/catalog.hpp"
#include "oaid/matrix.hpp"
#include "oaid/space.hpp"

namespace oaid::ident {

// A single identified mean contrast: weights alpha with alpha' A^[t] = c'.
struct Combination {
  int t = 0;
  RatVector alpha;      // length |Z|
  std::vector<int> c;   // 0/1 per model column, not all zero
};

// All nonzero 0/1 vectors c in the row space of A^[t], each with a witness
// weight vector. The vertex loop visits 2^|G| - 1 candidates; membership is
// a row-space test against the rref of A^[t]. Throws when |G| exceeds the
// cap exponent.
std::vector<Combination> binary_combinations(const space::SelectionModel& model,
                                             int t, unsigned max_groups = 20);

// All nonzero 0/1 vectors identified simultaneously for t' and t, i.e. the
// c-sets realizable as alpha_1' A^[t'] = alpha_0' A^[t] = c'. Built from the
// left null space of the stacked matrix [A^[t']; A^[t]]. Witnesses are the
// deterministic rowspace_solve outputs for each side.
std::vector<Collection> binary_collections(const space::SelectionModel& model,
                                           int t_prime, int t,
                                           unsigned max_groups = 20);

// Weight vector from the pseudoinverse identity alpha = (A^+)' c, after
// dropping linearly dependent rows of A^[t] (dropped rows get weight zero).
// Returns nullopt when c is not in the row space.
std::optional<RatVector> alpha_from_c(const space::SelectionModel& model, int t,
                                      const std::vector<int>& c);

// For two treatment values, a weight vector with coordinates summing to
// zero reproduces the complementary side with its negation. Requires
// sum(alpha) = 0.
RatVector complement_alpha(const RatVector& alpha);

struct MeloWinterCap {
  std::uint64_t cap_t_prime = 0;  // 2^rank(A^[t'])
  std::uint64_t cap_t = 0;        // 2^rank(A^[t])
  std::uint64_t cap_pair = 0;     // 2^dim(rowspace intersection)
};

// Upper bounds on the number of identified 0/1 vectors: a row space of
// dimension k meets the cube in at most 2^k points, and the pair bound uses
// dim(rs(A^[t']) n rs(A^[t])) = rank(A^[t']) + rank(A^[t]) - rank(stacked).
MeloWinterCap melo_winter_cap(const space::SelectionModel& model, int t_prime, int t);

}  // namespace oaid::ident
