#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oaid/catalog.hpp"
#include "oaid/matrix.hpp"
#include "oaid/space.hpp"

namespace oaid::verify {

// Fully specified discrete population: instrument distribution, group
// shares, and per-group potential outcome means. Everything rational, so
// downstream checks are exact.
struct LatentDistribution {
  space::SelectionModel model;
  RatVector pz;                  // P(Z = z), positive, sums to one
  RatVector probs;               // P(group g), positive, sums to one
  std::vector<RatVector> means;  // means[t][g] = E[Y(t) | g]
};

// Population moments observable without knowing the groups.
struct ObservableMoments {
  std::vector<RatVector> yd;  // yd[t][z] = E[Y 1(T = t) | Z = z]
  std::vector<RatVector> d;   // d[t][z]  = P(T = t | Z = z)
};

ObservableMoments observable_moments(const LatentDistribution& latent);

// E[Y(t) | c(G) = 1] = sum_g c_g P_g means[t][g] / sum_g c_g P_g.
// Throws when the complier mass is zero.
Rational target_parameter(const LatentDistribution& latent, int t,
                          const std::vector<int>& c);

// P(c(G) = 1).
Rational complier_mass(const LatentDistribution& latent, const std::vector<int>& c);

struct CheckResult {
  bool ok = false;                  // all of the below hold exactly
  Rational value_t_prime;           // weighted moment ratio for the t' side
  Rational value_t;                 // weighted moment ratio for the t side
  Rational target_t_prime;          // E[Y(t')|c(G)=1]
  Rational target_t;                // E[Y(t)|c(G)=1]
  Rational denominator_t_prime;     // sum_z alpha'_z P(T=t'|Z=z)
  Rational denominator_t;
  Rational mass;                    // P(c(G)=1)
};

// Exact oracle for one collection: both weighted moment ratios must equal
// the corresponding conditional means, and both denominators must equal the
// complier mass.
CheckResult check_identification(const LatentDistribution& latent,
                                 const Collection& col);

struct NonIdentWitness {
  LatentDistribution first;
  LatentDistribution second;
  Rational mu_first;   // E[Y(t) | c(G)=1] under first
  Rational mu_second;  // under second; differs from mu_first
};

// When c is outside the row space of A^[t], produces two populations with
// identical observable moments but different E[Y(t) | c(G) = 1] by shifting
// the t-means along a right null space direction x with c'x != 0 (the
// second population's means[t] are means[t] + x/probs). Returns nullopt when
// c is identified (in the row space).
std::optional<NonIdentWitness> non_identification_witness(
    const LatentDistribution& base, int t, const std::vector<int>& c);

// Recovers all unconditional means E[Y(t)] from the moments of a chosen
// instrument subset (one value per treatment) by inverting the |T| x |T|
// matrix Sigma[i][t] = P(Z = z_i, T = t) against E[Y 1(Z = z_i)]. Valid
// whenever potential outcomes are mean independent of T given Z, e.g. under
// homogeneous treatment effects. Throws when Sigma is singular.
RatVector nsog_means(const LatentDistribution& latent, const std::vector<int>& z_subset);

// Deterministic population for test suites: group shares and instrument
// shares are normalized integer weights in [1,9], means are integers in
// [-8,8], all derived from a SplitMix64 stream seeded with `seed`. The exact
// draw sequence is part of the contract (documented in the README) so
// independent implementations can reproduce identical suites.
LatentDistribution random_latent(const space::SelectionModel& model, std::uint64_t seed);

// The raw generator behind random_latent.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

}  // namespace oaid::verify
