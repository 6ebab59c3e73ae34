#include "gedanken/numeric.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gedanken {

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) {
    std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return std::string(buf.data());
  }
  return std::string(buf.data(), ptr);
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

double normal01(std::mt19937_64& rng) {
  // Box-Muller; one variate per call keeps the stream simple to reason about.
  double u1 = 0.0;
  do {
    u1 = uniform01(rng);
  } while (u1 <= 0.0);
  double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

std::complex<double> complex_normal(std::mt19937_64& rng) {
  double re = normal01(rng);
  double im = normal01(rng);
  return {re * 0.7071067811865476, im * 0.7071067811865476};
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  // splitmix64 over (seed, trial) so neighboring trials are uncorrelated.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  return std::mt19937_64(z);
}

std::vector<double> fd_weights(double x0, std::span<const double> grid, int m) {
  // Fornberg's recursion for finite-difference weights.
  const int n = static_cast<int>(grid.size());
  if (n < m + 1) throw std::invalid_argument("fd_weights: too few nodes");
  std::vector<std::vector<double>> c(
      static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
  double c1 = 1.0;
  double c4 = grid[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    int mn = std::min(i, m);
    double c2 = 1.0;
    double c5 = c4;
    c4 = grid[static_cast<std::size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      double c3 = grid[static_cast<std::size_t>(i)] - grid[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
              c1 * (k * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] -
                    c5 * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)]) /
              c2;
        }
        c[static_cast<std::size_t>(i)][0] =
            -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
            (c4 * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -
             k * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)]) /
            (c4 - grid[static_cast<std::size_t>(j)]);
      }
      c[static_cast<std::size_t>(j)][0] =
          c4 * c[static_cast<std::size_t>(j)][0] / (c4 - grid[static_cast<std::size_t>(j)]);
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
  return w;
}

}  // namespace gedanken
