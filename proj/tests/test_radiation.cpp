#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gedanken/errors.hpp"
#include "gedanken/radiation.hpp"
#include "gedanken/sweep.hpp"
#include "oracles.hpp"

using namespace gedanken;

namespace {

Scenario em_scenario(double T_A = 10.0) {
  Scenario s;
  s.field_kind = FieldKind::Electromagnetic;
  s.q_A = 1.0;
  s.d = 1.0;
  s.D = 1.0e6;  // far Bob: irrelevant for the radiated spectrum
  s.T_A = T_A;
  s.T_B = 10.0;
  return s;
}

Scenario grav_scenario(double T_A = 10.0) {
  Scenario s = em_scenario(T_A);
  s.field_kind = FieldKind::Gravitational;
  s.m_A = 1.0;
  return s;
}

double photon_number_for(const Scenario& s, int mode_count = 4096) {
  const MultipoleHistory h = build_branch_difference(s);
  BasisOptions opt;
  opt.mode_count = mode_count;
  const ModeBasis basis = default_basis(h, s.field_kind, opt);
  return photon_number(spectral_amplitudes(h, basis));
}

}  // namespace

TEST_CASE("zero history radiates nothing") {
  Scenario s = em_scenario();
  s.d = 0.0;
  const MultipoleHistory h = build_branch_difference(s);
  const ModeBasis basis = default_basis(h, s.field_kind);
  const ModeAmplitudes a = spectral_amplitudes(h, basis);
  for (const auto& z : a.alpha) CHECK(z == std::complex<double>(0.0, 0.0));
  CHECK(photon_number(a) == 0.0);
  CHECK(radiated_energy(a) == 0.0);
}

TEST_CASE("doubling the plateau doubles amplitudes and quadruples the count") {
  Scenario s = em_scenario();
  const MultipoleHistory h1 = build_branch_difference(s);
  s.q_A = 2.0;
  const MultipoleHistory h2 = build_branch_difference(s);
  const ModeBasis basis = default_basis(h1, s.field_kind);
  const ModeAmplitudes a1 = spectral_amplitudes(h1, basis);
  const ModeAmplitudes a2 = spectral_amplitudes(h2, basis);
  for (std::size_t i = 0; i < a1.alpha.size(); ++i) {
    CHECK(std::abs(a2.alpha[i] - 2.0 * a1.alpha[i]) <=
          1e-15 * std::abs(a2.alpha[i]) + 1e-300);
  }
  CHECK(photon_number(a2) ==
        doctest::Approx(4.0 * photon_number(a1)).epsilon(1e-14));
}

TEST_CASE("photon number: trivial mode sums") {
  ModeBasis basis = ModeBasis::log_spaced(FieldKind::Electromagnetic, 1.0,
                                          10.0, 8);
  ModeAmplitudes a = ModeAmplitudes::zero(basis);
  CHECK(photon_number(a) == 0.0);
  a.alpha[3] = {1.0, 0.0};
  CHECK(photon_number(a) == 1.0);
}

TEST_CASE("radiated energy: trivial mode sums") {
  ModeBasis basis;
  basis.kind = FieldKind::Electromagnetic;
  basis.frequencies = {1.0, 3.0, 5.0};
  basis.weights = {1.0, 1.0, 1.0};
  ModeAmplitudes a = ModeAmplitudes::zero(basis);
  CHECK(radiated_energy(a) == 0.0);
  a.alpha[1] = {std::sqrt(2.0), 0.0};
  CHECK(radiated_energy(a) == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("mode-sum count matches the independent spectral quadrature") {
  const Scenario s = em_scenario(10.0);

  WorldlineOptions coarse;
  const MultipoleHistory h = build_branch_difference(s, coarse);
  BasisOptions bopt;
  bopt.mode_count = 16384;
  const ModeBasis basis = default_basis(h, s.field_kind, bopt);
  const double n_modes = photon_number(spectral_amplitudes(h, basis));

  WorldlineOptions fine = coarse;
  fine.samples_per_ramp = coarse.samples_per_ramp * 10;
  const MultipoleHistory hf = build_branch_difference(s, fine);
  const RadiationCoefficients coeffs;
  const double n_oracle = oracles::photon_number_quadrature(
      hf, coeffs.dipole, 3, basis.min_frequency(), basis.max_frequency(),
      1e-12);

  CHECK(n_modes == doctest::Approx(n_oracle).epsilon(1e-6));
  // Frozen from the quadrature oracle (plateau 1, T_A = 10, smoothstep,
  // split_slowness 16, hold_factor 4, default cutoff window).
  CHECK(n_modes == doctest::Approx(0.0266626514322657).epsilon(2e-6));
}

TEST_CASE("count scales as T_A^-2 (dipole) and T_A^-4 (quadrupole)") {
  for (RampWindow w : {RampWindow::Smoothstep, RampWindow::Gaussian}) {
    std::vector<double> ts, n_em, n_grav;
    for (int i = 0; i < 9; ++i) {
      const double t = 5.0 * std::pow(10.0, i / 8.0);
      ts.push_back(t);
      Scenario em = em_scenario(t);
      em.ramp = w;
      Scenario grav = grav_scenario(t);
      grav.ramp = w;
      n_em.push_back(photon_number_for(em, 1024));
      n_grav.push_back(photon_number_for(grav, 1024));
    }
    const PowerLawFit em_fit = fit_powerlaw(ts, n_em);
    CHECK(em_fit.exponent == doctest::Approx(-2.0).epsilon(0.01));
    CHECK(em_fit.r_squared > 0.9999);
    const PowerLawFit grav_fit = fit_powerlaw(ts, n_grav);
    CHECK(grav_fit.exponent == doctest::Approx(-4.0).epsilon(0.005));
  }
}

TEST_CASE("log-spaced basis invariants: sorted positive frequencies, positive weights") {
  const ModeBasis b =
      ModeBasis::log_spaced(FieldKind::Electromagnetic, 1e-4, 6.4, 333);
  REQUIRE(b.size() == 333);
  CHECK(b.min_frequency() == 1e-4);
  CHECK(b.max_frequency() == 6.4);
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(b.weights[i] > 0.0);
    CHECK(b.frequencies[i] > 0.0);
    if (i > 0) CHECK(b.frequencies[i] > b.frequencies[i - 1]);
  }
  CHECK_THROWS_AS(ModeBasis::log_spaced(FieldKind::Electromagnetic, -1.0, 2.0, 64),
                  ValidationError);
  CHECK_THROWS_AS(ModeBasis::log_spaced(FieldKind::Electromagnetic, 1.0, 2.0, 4),
                  ValidationError);
}

TEST_CASE("count is exactly quadratic in the history scale") {
  Scenario s = em_scenario();
  const double n1 = photon_number_for(s, 1024);
  s.q_A = 1.7;
  const double n2 = photon_number_for(s, 1024);
  CHECK(n2 == doctest::Approx(1.7 * 1.7 * n1).epsilon(1e-12));
}

TEST_CASE("basis refinement is converged at the default resolution") {
  const Scenario s = em_scenario();
  const double n1 = photon_number_for(s, 4096);
  const double n2 = photon_number_for(s, 8192);
  CHECK(std::abs(n2 - n1) / n1 < 1e-4);
}

TEST_CASE("adiabatic limit: count decreases monotonically in T_A") {
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const double t = std::exp(std::log(1.0) +
                              (std::log(100.0) - std::log(1.0)) * i / 19.0);
    const double n = photon_number_for(em_scenario(t), 512);
    CHECK(n < prev);
    prev = n;
  }
}

TEST_CASE("mean radiated frequency stays of order the inverse ramp time") {
  for (double t : {1.0, 10.0, 100.0}) {
    const Scenario s = em_scenario(t);
    const MultipoleHistory h = build_branch_difference(s);
    BasisOptions opt;
    opt.mode_count = 2048;
    const ModeBasis basis = default_basis(h, s.field_kind, opt);
    const ModeAmplitudes a = spectral_amplitudes(h, basis);
    const double mean_omega_t = radiated_energy(a) / photon_number(a) * t;
    CHECK(mean_omega_t > 1.0);
    CHECK(mean_omega_t < 20.0);
  }
}

TEST_CASE("aliasing and basis mismatches are rejected") {
  const Scenario s = em_scenario();
  const MultipoleHistory h = build_branch_difference(s);

  // Cutoff beyond the Nyquist margin of the sampled history.
  const ModeBasis hot = ModeBasis::log_spaced(
      FieldKind::Electromagnetic, 1e-3 / s.T_A, 500.0 / s.T_A, 64);
  CHECK_THROWS_AS(spectral_amplitudes(h, hot), ResolutionError);

  // Cutoff below 8/T_ramp: the spectrum is not covered.
  const ModeBasis narrow = ModeBasis::log_spaced(
      FieldKind::Electromagnetic, 1e-3 / s.T_A, 2.0 / s.T_A, 64);
  CHECK_THROWS_AS(spectral_amplitudes(h, narrow), ResolutionError);

  // Quadrupole history against an electromagnetic basis.
  const Scenario g = grav_scenario();
  const MultipoleHistory hg = build_branch_difference(g);
  const ModeBasis em_basis = default_basis(h, FieldKind::Electromagnetic);
  CHECK_THROWS_AS(spectral_amplitudes(hg, em_basis), DimensionError);
}

TEST_CASE("spectrum CSV export carries omega, occupation and energy density") {
  const Scenario s = em_scenario();
  const MultipoleHistory h = build_branch_difference(s);
  BasisOptions opt;
  opt.mode_count = 64;
  opt.omega_max_factor = 16.0;
  const ModeBasis basis = default_basis(h, s.field_kind, opt);
  const ModeAmplitudes a = spectral_amplitudes(h, basis);
  std::ostringstream os;
  write_spectrum_csv(os, a);
  const std::string text = os.str();
  CHECK(text.rfind("omega,alpha_sq,dE_domega\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 65);
}
