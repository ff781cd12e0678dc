#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "helpers.hpp"
#include "oaid/linalg.hpp"
#include "oaid/matrix.hpp"
#include "oaid/space.hpp"
#include "oaid/verify.hpp"

using oaid::RatMatrix;
using oaid::Rational;
using oaid::RatVector;
namespace linalg = oaid::linalg;

namespace {

// Structural definition of reduced row echelon form.
void check_rref_shape(const linalg::Rref& r) {
  REQUIRE(r.pivots.size() == r.rank);
  for (std::size_t i = 0; i < r.rank; ++i) {
    const std::size_t p = r.pivots[i];
    if (i) CHECK(p > r.pivots[i - 1]);
    CHECK(r.mat.at(i, p) == Rational(1));
    for (std::size_t k = 0; k < r.mat.rows(); ++k)
      if (k != i) CHECK(r.mat.at(k, p).is_zero());
    for (std::size_t c = 0; c < p; ++c) CHECK(r.mat.at(i, c).is_zero());
  }
  for (std::size_t i = r.rank; i < r.mat.rows(); ++i)
    for (std::size_t c = 0; c < r.mat.cols(); ++c)
      CHECK(r.mat.at(i, c).is_zero());
}

RatMatrix random_matrix(oaid::verify::SplitMix64& rng, std::size_t rows,
                        std::size_t cols, int span) {
  RatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m.at(r, c) = Rational(static_cast<long long>(rng.next() % (2 * span + 1)) - span);
  return m;
}

}  // namespace

TEST_CASE("rref of the vector-monotonicity indicator matrices") {
  const auto vm = testutil::vm_model();
  const RatMatrix a1 = oaid::space::indicator_matrix(vm, 1);
  const RatMatrix a0 = oaid::space::indicator_matrix(vm, 0);

  const auto r1 = linalg::rref(a1);
  CHECK(r1.rank == 4);
  CHECK(r1.mat == RatMatrix{{1, 0, 0, 1, 0, 0},
                            {0, 1, 0, 1, 0, 0},
                            {0, 0, 1, -1, 0, 0},
                            {0, 0, 0, 0, 0, 1}});

  const auto r0 = linalg::rref(a0);
  CHECK(r0.rank == 4);
  CHECK(r0.mat == RatMatrix{{1, 0, 0, 1, 0, 0},
                            {0, 1, 0, 1, 0, 0},
                            {0, 0, 1, -1, 0, 0},
                            {0, 0, 0, 0, 1, 0}});
}

TEST_CASE("rref shape and idempotence on random matrices") {
  oaid::verify::SplitMix64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const auto m = random_matrix(rng, 2 + rng.next() % 4, 2 + rng.next() % 5, 3);
    const auto r = linalg::rref(m);
    check_rref_shape(r);
    CHECK(linalg::rref(r.mat).mat == r.mat);
    CHECK(linalg::rank(m) == r.rank);
  }
}

TEST_CASE("rank") {
  CHECK(linalg::rank(RatMatrix::identity(4)) == 4);
  CHECK(linalg::rank(RatMatrix(3, 3)) == 0);
  CHECK(linalg::rank(RatMatrix{{1, 2}, {2, 4}}) == 1);
  const auto late = testutil::late_model();
  CHECK(linalg::rank(oaid::space::indicator_matrix(late, 1)) == 2);
  CHECK(linalg::rank(oaid::space::indicator_matrix(late, 0)) == 2);
}

TEST_CASE("rowspace_solve finds witnesses, in_rowspace agrees") {
  const auto vm = testutil::vm_model();
  const RatMatrix a1 = oaid::space::indicator_matrix(vm, 1);
  const auto r1 = linalg::rref(a1);

  // The all-compliers contrast is in the row space; the never-taker
  // indicator is not.
  const RatVector all_comp{1, 1, 1, 1, 0, 0};
  const RatVector never{0, 0, 0, 0, 1, 0};
  auto alpha = linalg::rowspace_solve(a1, all_comp);
  REQUIRE(alpha.has_value());
  CHECK(oaid::vecmat(*alpha, a1) == all_comp);
  CHECK_FALSE(linalg::rowspace_solve(a1, never).has_value());

  // Exhaustive agreement between the two membership tests on 0/1 vectors.
  for (unsigned mask = 0; mask < 64; ++mask) {
    RatVector c(6);
    for (unsigned g = 0; g < 6; ++g) c[g] = (mask >> g) & 1u;
    const bool member = linalg::in_rowspace(r1, c);
    const auto solved = linalg::rowspace_solve(a1, c);
    CHECK(member == solved.has_value());
    if (solved) CHECK(oaid::vecmat(*solved, a1) == c);
  }

  CHECK_THROWS_AS(linalg::rowspace_solve(a1, RatVector{1, 2}),
                  std::invalid_argument);
}

TEST_CASE("null spaces annihilate and have the right dimension") {
  oaid::verify::SplitMix64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = random_matrix(rng, 2 + rng.next() % 4, 2 + rng.next() % 4, 2);
    const auto rk = linalg::rank(m);

    const auto left = linalg::left_nullspace(m);
    CHECK(left.size() == m.rows() - rk);
    for (const auto& v : left) {
      const auto prod = oaid::vecmat(v, m);
      for (const auto& x : prod) CHECK(x.is_zero());
    }

    const auto right = linalg::right_nullspace(m);
    CHECK(right.size() == m.cols() - rk);
    for (const auto& v : right) {
      const auto prod = oaid::matvec(m, v);
      for (const auto& x : prod) CHECK(x.is_zero());
    }
  }
}

TEST_CASE("inverse") {
  CHECK(linalg::inverse(RatMatrix{{1, 1}, {0, 1}}) == RatMatrix{{1, -1}, {0, 1}});
  CHECK_THROWS_AS(linalg::inverse(RatMatrix{{1, 2}, {2, 4}}), std::domain_error);
  CHECK_THROWS_AS(linalg::inverse(RatMatrix(2, 3)), std::invalid_argument);

  oaid::verify::SplitMix64 rng(99);
  int done = 0;
  while (done < 20) {
    const auto m = random_matrix(rng, 3, 3, 4);
    RatMatrix inv;
    try {
      inv = linalg::inverse(m);
    } catch (const std::domain_error&) {
      continue;  // singular draw
    }
    CHECK(oaid::matmul(m, inv) == RatMatrix::identity(3));
    CHECK(oaid::matmul(inv, m) == RatMatrix::identity(3));
    ++done;
  }
}

TEST_CASE("pseudoinverse of the triangular selection matrix") {
  // 4 instrument values, columns indexed by the number of values at which
  // the unit takes the treatment (descending), plus a never-taker column.
  const RatMatrix b{{1, 0, 0, 0, 0},
                    {1, 1, 0, 0, 0},
                    {1, 1, 1, 0, 0},
                    {1, 1, 1, 1, 0}};
  const RatMatrix expected{{1, 0, 0, 0},
                           {-1, 1, 0, 0},
                           {0, -1, 1, 0},
                           {0, 0, -1, 1},
                           {0, 0, 0, 0}};
  const auto pinv = linalg::pinv_full_row_rank(b);
  REQUIRE(pinv.rows() == 5);
  REQUIRE(pinv.cols() == 4);
  CHECK(pinv == expected);
  CHECK(oaid::matmul(b, pinv) == RatMatrix::identity(4));
}

TEST_CASE("pseudoinverse properties and failure modes") {
  // Rational entries, full row rank.
  const RatMatrix m{{Rational(1, 2), Rational(0), Rational(1)},
                    {Rational(0), Rational(2, 3), Rational(1)}};
  const auto pinv = linalg::pinv_full_row_rank(m);
  CHECK(oaid::matmul(m, pinv) == RatMatrix::identity(2));

  CHECK_THROWS_AS(linalg::pinv_full_row_rank(RatMatrix{{1, 2}, {2, 4}}),
                  std::domain_error);
}

TEST_CASE("determinant") {
  CHECK(linalg::determinant(RatMatrix::identity(3)) == Rational(1));
  CHECK(linalg::determinant(RatMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}) ==
        Rational(2));
  CHECK(linalg::determinant(RatMatrix{{0, 1}, {1, 0}}) == Rational(-1));
  CHECK(linalg::determinant(RatMatrix{{Rational(1, 2), Rational(0)},
                                      {Rational(0), Rational(2, 3)}}) ==
        Rational(1, 3));
  CHECK_THROWS_AS(linalg::determinant(RatMatrix(2, 3)), std::invalid_argument);

  // Bareiss on rational entries agrees with the integer fast path.
  oaid::verify::SplitMix64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.next() % 3;
    std::vector<std::int64_t> ints(n * n);
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t v = static_cast<std::int64_t>(rng.next() % 7) - 3;
        ints[i * n + j] = v;
        m.at(i, j) = Rational(v);
      }
    CHECK(linalg::determinant(m) ==
          Rational(static_cast<long long>(linalg::determinant_int(ints, n))));
  }
}
