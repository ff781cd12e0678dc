#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "oaid/rational.hpp"

namespace oaid::spectrum {

// Set of determinant values attained by n x n matrices with entries in
// {0,1}, computed by brute force over all 2^(n*n) matrices. Feasible for
// n <= 4 in well under a second; n = 5 visits 2^25 matrices per thread
// share and takes a few seconds, so it must be requested explicitly.
// Throws std::invalid_argument for n < 1, n > 5, or n = 5 without the
// allow_slow flag.
std::set<std::int64_t> determinant_spectrum(int n, bool allow_slow = false,
                                            int threads = 1);

// Published determinant spectra for n <= 6, usable where brute force is out
// of reach. n in [1,6].
std::set<std::int64_t> known_spectrum(int n);

// Coefficient set C_n: all ratios a/b with a, b in the n x n determinant
// spectrum and b != 0, together with 0. Sorted ascending. Uses the known
// spectrum, so n in [1,6].
std::vector<Rational> coefficient_set(int n);

}  // namespace oaid::spectrum
