#include "oaid/linalg.hpp"

#include <stdexcept>

namespace oaid::linalg {

Rref rref(const RatMatrix& m) {
  Rref out;
  out.mat = m;
  RatMatrix& a = out.mat;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    // Find a pivot in column c at or below row `lead`.
    std::size_t p = lead;
    while (p < rows && a.at(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != lead)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(p, j), a.at(lead, j));
    const Rational inv_pivot = Rational(1) / a.at(lead, c);
    for (std::size_t j = c; j < cols; ++j) a.at(lead, j) *= inv_pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || a.at(r, c).is_zero()) continue;
      const Rational f = a.at(r, c);
      for (std::size_t j = c; j < cols; ++j) a.at(r, j) -= f * a.at(lead, j);
    }
    out.pivots.push_back(c);
    ++lead;
  }
  out.rank = out.pivots.size();
  return out;
}

std::size_t rank(const RatMatrix& m) { return rref(m).rank; }

bool in_rowspace(const Rref& r, const RatVector& c) {
  if (c.size() != r.mat.cols()) throw std::invalid_argument("in_rowspace: length mismatch");
  RatVector residual = c;
  for (std::size_t i = 0; i < r.rank; ++i) {
    const std::size_t pc = r.pivots[i];
    if (residual[pc].is_zero()) continue;
    const Rational f = residual[pc];
    for (std::size_t j = pc; j < residual.size(); ++j)
      residual[j] -= f * r.mat.at(i, j);
  }
  for (const auto& x : residual)
    if (!x.is_zero()) return false;
  return true;
}

std::optional<RatVector> rowspace_solve(const RatMatrix& m, const RatVector& c) {
  if (c.size() != m.cols()) throw std::invalid_argument("rowspace_solve: length mismatch");
  // alpha' m = c'  <=>  m' alpha = c. Row reduce the augmented [m' | c].
  const std::size_t n = m.rows();
  RatMatrix aug(m.cols(), n + 1);
  for (std::size_t r = 0; r < m.cols(); ++r) {
    for (std::size_t j = 0; j < n; ++j) aug.at(r, j) = m.at(j, r);
    aug.at(r, n) = c[r];
  }
  const Rref red = rref(aug);
  RatVector alpha(n);
  for (std::size_t i = 0; i < red.rank; ++i) {
    if (red.pivots[i] == n) return std::nullopt;  // pivot in the augmented column
    alpha[red.pivots[i]] = red.mat.at(i, n);
  }
  return alpha;
}

std::vector<RatVector> right_nullspace(const RatMatrix& m) {
  const Rref red = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    RatVector v(cols);
    v[free_col] = 1;
    for (std::size_t i = 0; i < red.rank; ++i)
      v[red.pivots[i]] = -red.mat.at(i, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RatVector> left_nullspace(const RatMatrix& m) {
  return right_nullspace(m.transposed());
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  const Rref red = rref(aug);
  if (red.rank < n || red.pivots[n - 1] != n - 1)
    throw std::domain_error("inverse: singular matrix");
  RatMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out.at(r, c) = red.mat.at(r, n + c);
  return out;
}

RatMatrix pinv_full_row_rank(const RatMatrix& m) {
  const RatMatrix gram = matmul(m, m.transposed());
  RatMatrix gram_inv;
  try {
    gram_inv = inverse(gram);
  } catch (const std::domain_error&) {
    throw std::domain_error("pinv_full_row_rank: rows are linearly dependent");
  }
  return matmul(m.transposed(), gram_inv);
}

std::int64_t determinant_int(std::vector<std::int64_t> m, std::size_t n) {
  // Bareiss fraction-free elimination. Every intermediate entry is a minor
  // of the input, so the divisions below are exact.
  std::int64_t prev = 1;
  std::int64_t sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row * n + k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = k; j < n; ++j)
        std::swap(m[k * n + j], m[swap_row * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i * n + j] =
            (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
      }
      m[i * n + k] = 0;
    }
    prev = m[k * n + k];
  }
  return sign * m[n * n - 1];
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Scale each row to integers, run integer Bareiss, divide the scale back out.
  std::vector<mpz_class> a(n * n);
  mpz_class scale = 1;
  for (std::size_t r = 0; r < n; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < n; ++c) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), m.at(r, c).den().get_mpz_t());
      l = l / g * m.at(r, c).den();
    }
    for (std::size_t c = 0; c < n; ++c)
      a[r * n + c] = m.at(r, c).num() * (l / m.at(r, c).den());
    scale *= l;
  }
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row * n + k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = k; j < n; ++j) std::swap(a[k * n + j], a[swap_row * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(a[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  mpz_class det = a[n * n - 1];
  if (sign < 0) det = -det;
  return Rational(det, scale);
}

}  // namespace oaid::linalg
