#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace gedanken {

// Compensated (Kahan) accumulator. Sweep and quadrature results must not
// depend on how partial sums are grouped, so every reduction that feeds a
// reported number goes through this.
class KahanSum {
public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// Shortest round-trip decimal form of a double. All CSV/JSON numeric output
// funnels through this so identical runs are byte-identical.
std::string format_double(double x);

// Uniform in [0,1) from the top 53 bits of the engine output. The standard
// distributions are implementation-defined, so we roll our own to keep
// fixed seeds reproducible.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& rng, double lo, double hi);
double normal01(std::mt19937_64& rng);
std::complex<double> complex_normal(std::mt19937_64& rng);

// Per-trial engine: decorrelates trial index from the base seed so trials
// can run in any order (or in parallel) with identical results.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

// Finite-difference weights for the m-th derivative at x0 on the nodes in
// `grid` (Fornberg recursion).
std::vector<double> fd_weights(double x0, std::span<const double> grid, int m);

}  // namespace gedanken
