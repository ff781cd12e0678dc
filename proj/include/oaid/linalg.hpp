#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oaid/matrix.hpp"

namespace oaid::linalg {

struct Rref {
  RatMatrix mat;                   // reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column per pivot row
  std::size_t rank = 0;
};

// Exact reduced row echelon form (leading ones, zeros above and below).
// Unique for a given input, independent of pivot tie breaking.
Rref rref(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

// Solves alpha' m = c' for a row vector alpha, i.e. writes c as a linear
// combination of the rows of m. Returns the particular solution with all
// free coordinates set to zero, or nullopt when c is not in the row space.
std::optional<RatVector> rowspace_solve(const RatMatrix& m, const RatVector& c);

// Reduces c against the row space of an already computed rref. Returns true
// and the combination coefficients over the rref's pivot rows when c lies in
// the row space. Cheaper than rowspace_solve in vertex loops.
bool in_rowspace(const Rref& r, const RatVector& c);

// Basis of { v : v' m = 0 } (left null space), one vector per non pivot row
// of m'. Size rows(m) - rank(m).
std::vector<RatVector> left_nullspace(const RatMatrix& m);

// Basis of { x : m x = 0 } (right null space) via the standard free variable
// construction from the rref. Size cols(m) - rank(m).
std::vector<RatVector> right_nullspace(const RatMatrix& m);

// Inverse of a square nonsingular matrix; throws std::domain_error when
// singular.
RatMatrix inverse(const RatMatrix& m);

// Moore-Penrose pseudoinverse m'(m m')^{-1} of a matrix with full row rank;
// throws std::domain_error when the rows are dependent.
RatMatrix pinv_full_row_rank(const RatMatrix& m);

// Exact determinant. Rows are scaled to integers and eliminated with the
// fraction-free Bareiss recurrence so intermediate entries stay integral and
// stay small (they are minors of the scaled matrix).
Rational determinant(const RatMatrix& m);

// Bareiss determinant for small integer matrices; entries and all
// intermediates must fit in int64 (true for 0/1 matrices up to n = 8).
std::int64_t determinant_int(std::vector<std::int64_t> m, std::size_t n);

}  // namespace oaid::linalg
