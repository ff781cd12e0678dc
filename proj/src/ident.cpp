#include "oaid/ident.hpp"

#include <stdexcept>

#include "oaid/linalg.hpp"

namespace oaid::ident {

namespace {

RatVector to_rational(const std::vector<int>& c) {
  RatVector out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i];
  return out;
}

void check_group_cap(std::size_t n_groups, unsigned max_groups) {
  if (n_groups > max_groups)
    throw std::invalid_argument("vertex loop over 2^|G| exceeds configured cap");
}

}  // namespace

std::vector<Combination> binary_combinations(const space::SelectionModel& model,
                                             int t, unsigned max_groups) {
  check_group_cap(model.groups.size(), max_groups);
  const RatMatrix a = space::indicator_matrix(model, t);
  const linalg::Rref red = linalg::rref(a);
  std::vector<Combination> out;
  const std::size_t n = model.groups.size();
  std::vector<int> c(n);
  for (std::uint64_t bits = 1; bits < (1ull << n); ++bits) {
    for (std::size_t g = 0; g < n; ++g) c[g] = (bits >> g) & 1u;
    const RatVector cr = to_rational(c);
    if (!linalg::in_rowspace(red, cr)) continue;
    auto alpha = linalg::rowspace_solve(a, cr);
    if (!alpha) throw std::logic_error("binary_combinations: membership vs solve mismatch");
    out.push_back(Combination{t, std::move(*alpha), c});
  }
  return out;
}

std::vector<Collection> binary_collections(const space::SelectionModel& model,
                                           int t_prime, int t, unsigned max_groups) {
  check_group_cap(model.groups.size(), max_groups);
  const RatMatrix a1 = space::indicator_matrix(model, t_prime);
  const RatMatrix a0 = space::indicator_matrix(model, t);
  const std::size_t z = static_cast<std::size_t>(model.instruments);
  const std::size_t n = model.groups.size();

  // Stack the two indicator matrices; the left null space of the stack
  // parametrizes all weight pairs giving the same contrast from both sides.
  RatMatrix stacked(2 * z, n);
  for (std::size_t r = 0; r < z; ++r)
    for (std::size_t g = 0; g < n; ++g) {
      stacked.at(r, g) = a1.at(r, g);
      stacked.at(z + r, g) = a0.at(r, g);
    }
  const auto null_basis = linalg::left_nullspace(stacked);

  // Candidate contrast subspace: rows are nu_1' A^[t'] over the null basis.
  RatMatrix b(null_basis.size(), n);
  for (std::size_t i = 0; i < null_basis.size(); ++i) {
    RatVector head(null_basis[i].begin(), null_basis[i].begin() + static_cast<long>(z));
    const RatVector row = vecmat(head, a1);
    for (std::size_t g = 0; g < n; ++g) b.at(i, g) = row[g];
  }
  const linalg::Rref bred = linalg::rref(b);

  std::vector<Collection> out;
  std::vector<int> c(n);
  for (std::uint64_t bits = 1; bits < (1ull << n); ++bits) {
    for (std::size_t g = 0; g < n; ++g) c[g] = (bits >> g) & 1u;
    const RatVector cr = to_rational(c);
    if (!linalg::in_rowspace(bred, cr)) continue;
    auto w1 = linalg::rowspace_solve(a1, cr);
    auto w0 = linalg::rowspace_solve(a0, cr);
    if (!w1 || !w0)
      throw std::logic_error("binary_collections: subspace vs side solve mismatch");
    Collection col;
    col.t_prime = t_prime;
    col.t = t;
    col.alpha_t_prime = std::move(*w1);
    col.alpha_t = std::move(*w0);
    col.c = c;
    out.push_back(std::move(col));
  }
  return out;
}

std::optional<RatVector> alpha_from_c(const space::SelectionModel& model, int t,
                                      const std::vector<int>& c) {
  if (c.size() != model.groups.size())
    throw std::invalid_argument("alpha_from_c: c length != group count");
  const RatMatrix a = space::indicator_matrix(model, t);
  const std::size_t z = static_cast<std::size_t>(model.instruments);

  // Keep a maximal independent subset of rows, in order, so the
  // pseudoinverse below exists (weights of dropped rows are zero).
  std::vector<std::size_t> kept;
  RatMatrix sub(0, 0);
  for (std::size_t r = 0; r < z; ++r) {
    RatMatrix cand(kept.size() + 1, a.cols());
    for (std::size_t i = 0; i < kept.size(); ++i)
      for (std::size_t g = 0; g < a.cols(); ++g) cand.at(i, g) = a.at(kept[i], g);
    for (std::size_t g = 0; g < a.cols(); ++g) cand.at(kept.size(), g) = a.at(r, g);
    if (linalg::rank(cand) == kept.size() + 1) {
      kept.push_back(r);
      sub = std::move(cand);
    }
  }

  const RatMatrix pinv = linalg::pinv_full_row_rank(sub);  // |G| x |kept|
  const RatVector cr = to_rational(c);
  RatVector alpha(z);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    Rational s;
    for (std::size_t g = 0; g < a.cols(); ++g) s += pinv.at(g, i) * cr[g];
    alpha[kept[i]] = s;
  }
  // The formula is only valid when c lies in the row space; verify.
  if (vecmat(alpha, a) != cr) return std::nullopt;
  return alpha;
}

RatVector complement_alpha(const RatVector& alpha) {
  Rational s;
  for (const auto& x : alpha) s += x;
  if (!s.is_zero())
    throw std::invalid_argument("complement_alpha: weights must sum to zero");
  RatVector out(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) out[i] = -alpha[i];
  return out;
}

MeloWinterCap melo_winter_cap(const space::SelectionModel& model, int t_prime, int t) {
  const RatMatrix a1 = space::indicator_matrix(model, t_prime);
  const RatMatrix a0 = space::indicator_matrix(model, t);
  const std::size_t z = static_cast<std::size_t>(model.instruments);
  RatMatrix stacked(2 * z, model.groups.size());
  for (std::size_t r = 0; r < z; ++r)
    for (std::size_t g = 0; g < model.groups.size(); ++g) {
      stacked.at(r, g) = a1.at(r, g);
      stacked.at(z + r, g) = a0.at(r, g);
    }
  const std::size_t r1 = linalg::rank(a1);
  const std::size_t r0 = linalg::rank(a0);
  const std::size_t rs = linalg::rank(stacked);
  MeloWinterCap cap;
  cap.cap_t_prime = 1ull << r1;
  cap.cap_t = 1ull << r0;
  cap.cap_pair = 1ull << (r1 + r0 - rs);
  return cap;
}

}  // namespace oaid::ident
