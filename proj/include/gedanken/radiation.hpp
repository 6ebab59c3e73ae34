#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "gedanken/worldline.hpp"

namespace gedanken {

// Spectral normalization constants. Defaults give the textbook energy
// spectra in Gaussian-Planck convention,
//   dE/domega = (2/3pi)  omega^4 |d(omega)|^2   (dipole)
//   dE/domega = (2/15pi) omega^6 |Q(omega)|^2   (principal quadrupole),
// so that sum |alpha_i|^2 integrates (dE/domega)/omega. Overridable for
// sensitivity checks; see docs/conventions.md.
struct RadiationCoefficients {
  double dipole = 2.0 / (3.0 * 3.14159265358979323846);
  double quadrupole = 2.0 / (15.0 * 3.14159265358979323846);
};

struct BasisOptions {
  int mode_count = 4096;
  // omega_min = omega_min_factor / T_ramp; the difference moment has compact
  // support, so there is no infrared divergence and the tail below the
  // cutoff is reported, not integrated.
  double omega_min_factor = 1e-3;
  // omega_max = omega_max_factor / T_ramp; must stay >= 8 for resolution.
  double omega_max_factor = 64.0;
};

// Truncated positive-frequency mode set with quadrature weights for the
// frequency integral. Log-spaced with trapezoidal weights by default.
struct ModeBasis {
  std::vector<double> frequencies;  // strictly increasing, positive
  std::vector<double> weights;      // positive quadrature weights
  FieldKind kind = FieldKind::Electromagnetic;

  std::size_t size() const { return frequencies.size(); }
  double min_frequency() const { return frequencies.front(); }
  double max_frequency() const { return frequencies.back(); }

  static ModeBasis log_spaced(FieldKind kind, double omega_min,
                              double omega_max, int count);
};

ModeBasis default_basis(const MultipoleHistory& h, FieldKind kind,
                        const BasisOptions& options = {});

// Coherent-state label of the radiated field on a mode basis.
// sum |alpha_i|^2 is the expected number of radiated quanta.
struct ModeAmplitudes {
  ModeBasis basis;
  std::vector<std::complex<double>> alpha;

  static ModeAmplitudes zero(const ModeBasis& basis);
};

// alpha_i = sqrt(c_kind * w_i * omega_i^p) * F[d2h/dt2](omega_i), with the
// power p and constant c_kind fixed by the energy-spectrum normalization
// above (p = -1 dipole, p = +1 quadrupole, inside the square root).
// Throws ResolutionError when the basis violates the resolution rule for
// the given history (aliasing).
ModeAmplitudes spectral_amplitudes(const MultipoleHistory& h,
                                   const ModeBasis& basis,
                                   const RadiationCoefficients& coeffs = {});

// sum |alpha_i|^2 >= 0.
double photon_number(const ModeAmplitudes& a);

// sum omega_i |alpha_i|^2.
double radiated_energy(const ModeAmplitudes& a);

// Expected quanta in [omega_lo, omega_hi) outside the default window;
// used to report the sensitivity of photon_number to the infrared cutoff.
double band_photon_number(const MultipoleHistory& h, FieldKind kind,
                          double omega_lo, double omega_hi, int count,
                          const RadiationCoefficients& coeffs = {});

// CSV export: omega, |alpha|^2, dE/domega.
void write_spectrum_csv(std::ostream& os, const ModeAmplitudes& a);

}  // namespace gedanken
