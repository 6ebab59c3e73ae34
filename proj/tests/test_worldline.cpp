#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gedanken/errors.hpp"
#include "gedanken/radiation.hpp"
#include "gedanken/worldline.hpp"
#include "oracles.hpp"

using namespace gedanken;

namespace {

Scenario base_scenario(double T_A = 10.0) {
  Scenario s;
  s.field_kind = FieldKind::Electromagnetic;
  s.q_A = 1.0;
  s.d = 1.0;
  s.D = 1000.0;
  s.T_A = T_A;
  s.T_B = 100.0;
  return s;
}

}  // namespace

TEST_CASE("coincident branches give the identically zero history") {
  Scenario s = base_scenario();
  s.d = 0.0;
  const MultipoleHistory h = build_branch_difference(s);
  CHECK(h.plateau == 0.0);
  CHECK(std::all_of(h.moment.begin(), h.moment.end(),
                    [](double v) { return v == 0.0; }));
}

TEST_CASE("plateau equals the effective moment and support is compact") {
  Scenario s = base_scenario();
  s.q_A = 2.5;
  s.d = 0.8;
  const MultipoleHistory h = build_branch_difference(s);
  const double top = *std::max_element(h.moment.begin(), h.moment.end());
  CHECK(top == s.effective_moment());

  for (std::size_t i = 0; i < h.size(); ++i) {
    const double t = h.time(i);
    if (t < h.support_begin - 1e-12 || t > h.support_end + 1e-12) {
      CHECK(h.moment[i] == 0.0);
    }
  }
  CHECK(h.moment.front() == 0.0);
  CHECK(h.moment.back() == 0.0);
}

TEST_CASE("third derivative matches the Richardson oracle away from ramp edges") {
  const Scenario s = base_scenario(10.0);
  WorldlineOptions coarse;
  const MultipoleHistory h = build_branch_difference(s, coarse);
  const std::vector<double> d3 = h.derivative(3);

  WorldlineOptions fine = coarse;
  fine.samples_per_ramp = coarse.samples_per_ramp * 10;
  const MultipoleHistory hf = build_branch_difference(s, fine);

  // Window-piece boundaries where the third derivative of the quintic
  // profile jumps; both differentiators smear them.
  const double split_duration = s.split_slowness * s.T_A;
  const std::vector<double> breakpoints = {
      h.support_begin, h.support_begin + split_duration,
      h.support_end - s.T_A, h.support_end};

  double max_abs = 0.0;
  for (double v : d3) max_abs = std::max(max_abs, std::abs(v));
  REQUIRE(max_abs > 0.0);

  double worst = 0.0;
  for (std::size_t i = 8; i + 8 < h.size(); ++i) {
    const double t = h.time(i);
    bool near_edge = false;
    for (double b : breakpoints) {
      if (std::abs(t - b) < 5.0 * h.dt) near_edge = true;
    }
    if (near_edge) continue;
    const double oracle =
        oracles::third_derivative_richardson(hf.moment, 10 * i, hf.dt);
    worst = std::max(worst, std::abs(d3[i] - oracle));
  }
  CHECK(worst / max_abs < 1e-6);
}

TEST_CASE("derivatives are near-exact for a band-limited history") {
  MultipoleHistory h;
  h.dt = 0.01;
  h.t0 = 0.0;
  h.order = MultipoleOrder::Dipole;
  h.min_ramp_duration = 1.0;
  const double omega = 2.0;
  h.moment.resize(2001);
  for (std::size_t i = 0; i < h.moment.size(); ++i) {
    h.moment[i] = std::sin(omega * h.time(i));
  }
  const auto d1 = h.derivative(1);
  const auto d2 = h.derivative(2);
  const auto d3 = h.derivative(3);
  for (std::size_t i = 500; i < 1500; ++i) {
    const double t = h.time(i);
    CHECK(d1[i] == doctest::Approx(omega * std::cos(omega * t)).epsilon(1e-8));
    CHECK(d2[i] ==
          doctest::Approx(-omega * omega * std::sin(omega * t)).epsilon(1e-8));
    CHECK(d3[i] == doctest::Approx(-omega * omega * omega *
                                   std::cos(omega * t))
                       .epsilon(1e-8));
  }
}

TEST_CASE("grid resolution floor is enforced") {
  WorldlineOptions opt;
  opt.samples_per_ramp = 32;
  CHECK_THROWS_AS(build_branch_difference(base_scenario(), opt),
                  ResolutionError);
}

TEST_CASE("time reversal leaves the radiated quanta invariant") {
  const Scenario s = base_scenario(10.0);
  const MultipoleHistory h = build_branch_difference(s);
  MultipoleHistory mirrored = h;
  std::reverse(mirrored.moment.begin(), mirrored.moment.end());

  const ModeBasis basis = default_basis(h, s.field_kind);
  const double n_fwd = photon_number(spectral_amplitudes(h, basis));
  const double n_rev = photon_number(spectral_amplitudes(mirrored, basis));
  CHECK(n_rev == doctest::Approx(n_fwd).epsilon(1e-12));
}

TEST_CASE("causal support of the recombination news") {
  const Scenario s = base_scenario(10.0);

  // News has not arrived two light-distances out, mid-recombination.
  CHECK_FALSE(causal_support_check(s, {s.T_A / 2.0, 2.0 * s.D}));
  // On the light cone of the ramp end.
  CHECK(causal_support_check(s, {s.T_A + s.D, s.D}));
  // Entire protocol window of Bob is outside the ramp's causal future.
  REQUIRE(s.T_B < s.D);
  for (int k = 0; k <= 64; ++k) {
    const double t = s.T_B * static_cast<double>(k) / 64.0;
    CHECK_FALSE(causal_support_check(s, {t, s.D}));
  }
}

TEST_CASE("history CSV export: two columns, one row per sample") {
  Scenario s = base_scenario();
  WorldlineOptions opt;
  opt.samples_per_ramp = 64;
  const MultipoleHistory h = build_branch_difference(s, opt);
  std::ostringstream os;
  write_history_csv(os, h);
  const std::string text = os.str();
  CHECK(text.rfind("t,moment\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) ==
        h.size() + 1);
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), ',')) ==
        h.size() + 1);
}

TEST_CASE("window shapes are monotone ramps from 0 to 1") {
  for (RampWindow w : {RampWindow::Smoothstep, RampWindow::Gaussian,
                       RampWindow::RaisedCosine}) {
    CHECK(ramp_shape(w, 0.0) == 0.0);
    CHECK(ramp_shape(w, 1.0) == 1.0);
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double v = ramp_shape(w, i / 100.0);
      CHECK(v >= prev);
      prev = v;
    }
  }
}
