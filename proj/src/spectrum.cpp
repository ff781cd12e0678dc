#include "oaid/spectrum.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "oaid/linalg.hpp"

namespace oaid::spectrum {

namespace {

std::set<std::int64_t> brute_range(int n, std::uint64_t lo, std::uint64_t hi) {
  std::set<std::int64_t> out;
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  std::vector<std::int64_t> m(nn);
  for (std::uint64_t bits = lo; bits < hi; ++bits) {
    for (std::size_t i = 0; i < nn; ++i) m[i] = (bits >> i) & 1u;
    out.insert(linalg::determinant_int(m, static_cast<std::size_t>(n)));
  }
  return out;
}

}  // namespace

std::set<std::int64_t> determinant_spectrum(int n, bool allow_slow, int threads) {
  if (n < 1 || n > 5)
    throw std::invalid_argument("determinant_spectrum: n must be in [1,5]");
  if (n == 5 && !allow_slow)
    throw std::invalid_argument(
        "determinant_spectrum: n=5 visits 2^25 matrices, pass allow_slow");
  const std::uint64_t total = 1ull << (n * n);
  if (threads < 1) threads = 1;
  if (threads == 1 || total < (1ull << 16)) return brute_range(n, 0, total);

  std::vector<std::set<std::int64_t>> parts(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::uint64_t lo = chunk * static_cast<std::uint64_t>(t);
    const std::uint64_t hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&parts, t, n, lo, hi] { parts[static_cast<std::size_t>(t)] = brute_range(n, lo, hi); });
  }
  for (auto& th : pool) th.join();
  std::set<std::int64_t> out;
  for (auto& p : parts) out.insert(p.begin(), p.end());
  return out;
}

std::set<std::int64_t> known_spectrum(int n) {
  auto range = [](std::int64_t lo, std::int64_t hi) {
    std::set<std::int64_t> s;
    for (std::int64_t v = lo; v <= hi; ++v) s.insert(v);
    return s;
  };
  switch (n) {
    case 1:
    case 2:
      return range(-1, 1);
    case 3:
      return range(-2, 2);
    case 4:
      return range(-3, 3);
    case 5:
      return range(-5, 5);
    case 6:
      return range(-8, 8);
    default:
      throw std::invalid_argument("known_spectrum: n must be in [1,6]");
  }
}

std::vector<Rational> coefficient_set(int n) {
  const auto d = known_spectrum(n);
  std::set<Rational> vals;
  vals.insert(Rational(0));
  for (auto a : d)
    for (auto b : d) {
      if (b == 0) continue;
      vals.insert(Rational(a, b));
    }
  return std::vector<Rational>(vals.begin(), vals.end());
}

}  // namespace oaid::spectrum
