#include "oaid/verify.hpp"

#include <stdexcept>

#include "oaid/linalg.hpp"

namespace oaid::verify {

namespace {

void check_latent(const LatentDistribution& l) {
  const std::size_t n = l.model.groups.size();
  if (l.probs.size() != n) throw std::invalid_argument("latent: probs size mismatch");
  if (l.pz.size() != static_cast<std::size_t>(l.model.instruments))
    throw std::invalid_argument("latent: pz size mismatch");
  if (l.means.size() != static_cast<std::size_t>(l.model.treatments))
    throw std::invalid_argument("latent: means size mismatch");
  Rational s;
  for (const auto& p : l.probs) {
    if (p.sign() <= 0) throw std::invalid_argument("latent: group shares must be positive");
    s += p;
  }
  if (s != Rational(1)) throw std::invalid_argument("latent: group shares must sum to one");
  s = Rational(0);
  for (const auto& p : l.pz) {
    if (p.sign() <= 0) throw std::invalid_argument("latent: instrument shares must be positive");
    s += p;
  }
  if (s != Rational(1)) throw std::invalid_argument("latent: instrument shares must sum to one");
}

}  // namespace

ObservableMoments observable_moments(const LatentDistribution& latent) {
  check_latent(latent);
  const int nt = latent.model.treatments;
  const int nz = latent.model.instruments;
  ObservableMoments m;
  m.yd.assign(static_cast<std::size_t>(nt), RatVector(static_cast<std::size_t>(nz)));
  m.d.assign(static_cast<std::size_t>(nt), RatVector(static_cast<std::size_t>(nz)));
  for (int t = 0; t < nt; ++t) {
    const RatMatrix a = space::indicator_matrix(latent.model, t);
    for (int z = 0; z < nz; ++z) {
      Rational yd, d;
      for (std::size_t g = 0; g < latent.model.groups.size(); ++g) {
        if (a.at(static_cast<std::size_t>(z), g).is_zero()) continue;
        d += latent.probs[g];
        yd += latent.probs[g] * latent.means[static_cast<std::size_t>(t)][g];
      }
      m.d[static_cast<std::size_t>(t)][static_cast<std::size_t>(z)] = d;
      m.yd[static_cast<std::size_t>(t)][static_cast<std::size_t>(z)] = yd;
    }
  }
  return m;
}

Rational complier_mass(const LatentDistribution& latent, const std::vector<int>& c) {
  if (c.size() != latent.model.groups.size())
    throw std::invalid_argument("complier_mass: c size mismatch");
  Rational mass;
  for (std::size_t g = 0; g < c.size(); ++g)
    if (c[g]) mass += latent.probs[g];
  return mass;
}

Rational target_parameter(const LatentDistribution& latent, int t,
                          const std::vector<int>& c) {
  const Rational mass = complier_mass(latent, c);
  if (mass.is_zero()) throw std::domain_error("target_parameter: zero complier mass");
  Rational num;
  for (std::size_t g = 0; g < c.size(); ++g)
    if (c[g]) num += latent.probs[g] * latent.means[static_cast<std::size_t>(t)][g];
  return num / mass;
}

CheckResult check_identification(const LatentDistribution& latent,
                                 const Collection& col) {
  const ObservableMoments m = observable_moments(latent);
  const std::size_t nz = static_cast<std::size_t>(latent.model.instruments);
  if (col.alpha_t_prime.size() != nz || col.alpha_t.size() != nz)
    throw std::invalid_argument("check_identification: weight length mismatch");

  CheckResult r;
  Rational num_p, num_t;
  for (std::size_t z = 0; z < nz; ++z) {
    num_p += col.alpha_t_prime[z] * m.yd[static_cast<std::size_t>(col.t_prime)][z];
    r.denominator_t_prime += col.alpha_t_prime[z] * m.d[static_cast<std::size_t>(col.t_prime)][z];
    num_t += col.alpha_t[z] * m.yd[static_cast<std::size_t>(col.t)][z];
    r.denominator_t += col.alpha_t[z] * m.d[static_cast<std::size_t>(col.t)][z];
  }
  r.mass = complier_mass(latent, col.c);
  if (r.denominator_t_prime.is_zero() || r.denominator_t.is_zero())
    throw std::domain_error("check_identification: zero denominator");
  r.value_t_prime = num_p / r.denominator_t_prime;
  r.value_t = num_t / r.denominator_t;
  r.target_t_prime = target_parameter(latent, col.t_prime, col.c);
  r.target_t = target_parameter(latent, col.t, col.c);
  r.ok = r.value_t_prime == r.target_t_prime && r.value_t == r.target_t &&
         r.denominator_t_prime == r.mass && r.denominator_t == r.mass;
  return r;
}

std::optional<NonIdentWitness> non_identification_witness(
    const LatentDistribution& base, int t, const std::vector<int>& c) {
  check_latent(base);
  if (c.size() != base.model.groups.size())
    throw std::invalid_argument("non_identification_witness: c size mismatch");
  const RatMatrix a = space::indicator_matrix(base.model, t);
  const auto basis = linalg::right_nullspace(a);
  // Want x with A x = 0 and c'x != 0; exists iff c is outside the row space.
  const RatVector cr = [&] {
    RatVector v(c.size());
    for (std::size_t g = 0; g < c.size(); ++g) v[g] = c[g];
    return v;
  }();
  const RatVector* dir = nullptr;
  for (const auto& b : basis) {
    if (!dot(cr, b).is_zero()) {
      dir = &b;
      break;
    }
  }
  if (dir == nullptr) return std::nullopt;

  NonIdentWitness w;
  w.first = base;
  w.second = base;
  for (std::size_t g = 0; g < c.size(); ++g)
    w.second.means[static_cast<std::size_t>(t)][g] += (*dir)[g] / base.probs[g];
  w.mu_first = target_parameter(w.first, t, c);
  w.mu_second = target_parameter(w.second, t, c);
  return w;
}

RatVector nsog_means(const LatentDistribution& latent, const std::vector<int>& z_subset) {
  check_latent(latent);
  const int nt = latent.model.treatments;
  if (z_subset.size() != static_cast<std::size_t>(nt))
    throw std::invalid_argument("nsog_means: need one instrument value per treatment");
  const ObservableMoments m = observable_moments(latent);

  RatMatrix sigma(static_cast<std::size_t>(nt), static_cast<std::size_t>(nt));
  RatVector y(static_cast<std::size_t>(nt));
  for (int i = 0; i < nt; ++i) {
    const int z = z_subset[static_cast<std::size_t>(i)];
    if (z < 0 || z >= latent.model.instruments)
      throw std::invalid_argument("nsog_means: instrument value out of range");
    for (int t = 0; t < nt; ++t)
      sigma.at(static_cast<std::size_t>(i), static_cast<std::size_t>(t)) =
          latent.pz[static_cast<std::size_t>(z)] *
          m.d[static_cast<std::size_t>(t)][static_cast<std::size_t>(z)];
    Rational ey;  // E[Y 1(Z=z)] = P(Z=z) sum_t E[Y 1(T=t) | Z=z]
    for (int t = 0; t < nt; ++t)
      ey += m.yd[static_cast<std::size_t>(t)][static_cast<std::size_t>(z)];
    y[static_cast<std::size_t>(i)] = latent.pz[static_cast<std::size_t>(z)] * ey;
  }
  RatMatrix inv;
  try {
    inv = linalg::inverse(sigma);
  } catch (const std::domain_error&) {
    throw std::domain_error("nsog_means: joint instrument/treatment matrix is singular");
  }
  // y stacks E[Y 1(Z=z_i)] = sum_t Sigma[i][t] E[Y(t)], so the means are
  // Sigma^{-1} y.
  return matvec(inv, y);
}

LatentDistribution random_latent(const space::SelectionModel& model, std::uint64_t seed) {
  SplitMix64 rng(seed);
  LatentDistribution l;
  l.model = model;
  const std::size_t n = model.groups.size();

  // Draw order is fixed: group weights, then means by (t, g), then
  // instrument weights. Each draw maps next() into a small integer range.
  std::vector<std::uint64_t> w(n);
  std::uint64_t total = 0;
  for (std::size_t g = 0; g < n; ++g) {
    w[g] = 1 + rng.next() % 9;
    total += w[g];
  }
  l.probs.resize(n);
  for (std::size_t g = 0; g < n; ++g)
    l.probs[g] = Rational(static_cast<long long>(w[g]), static_cast<long long>(total));

  l.means.assign(static_cast<std::size_t>(model.treatments), RatVector(n));
  for (int t = 0; t < model.treatments; ++t)
    for (std::size_t g = 0; g < n; ++g)
      l.means[static_cast<std::size_t>(t)][g] =
          Rational(static_cast<long long>(rng.next() % 17) - 8);

  std::vector<std::uint64_t> wz(static_cast<std::size_t>(model.instruments));
  std::uint64_t ztotal = 0;
  for (auto& x : wz) {
    x = 1 + rng.next() % 9;
    ztotal += x;
  }
  l.pz.resize(wz.size());
  for (std::size_t z = 0; z < wz.size(); ++z)
    l.pz[z] = Rational(static_cast<long long>(wz[z]), static_cast<long long>(ztotal));
  return l;
}

}  // namespace oaid::verify
