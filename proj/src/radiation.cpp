#include "gedanken/radiation.hpp"

#include <cmath>
#include <complex>
#include <ostream>

#include "gedanken/errors.hpp"
#include "gedanken/numeric.hpp"

namespace gedanken {

namespace {

constexpr double kPi = 3.14159265358979323846;

// F[h](omega) = int h(t) e^{i omega t} dt by the trapezoidal rule on the
// native grid. The moment and its first two derivatives vanish at the
// support edges, so the rule is high-order accurate here; sums are
// compensated and the phase factor advances by recurrence with periodic
// resynchronization.
std::complex<double> fourier_transform(const MultipoleHistory& h,
                                       double omega) {
  const std::size_t n = h.size();
  KahanSum re, im;
  std::complex<double> phase(1.0, 0.0);
  std::complex<double> step = std::polar(1.0, omega * h.dt);
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 256 == 0) {
      phase = std::polar(1.0, omega * h.time(i));
    }
    const double f = h.moment[i];
    if (f != 0.0) {
      const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      re.add(w * f * phase.real());
      im.add(w * f * phase.imag());
    }
    phase *= step;
  }
  return {re.value() * h.dt, im.value() * h.dt};
}

void check_resolution(const MultipoleHistory& h, const ModeBasis& basis) {
  if (h.dt <= 0.0 || h.moment.empty()) {
    throw ResolutionError("empty history");
  }
  const double nyquist = kPi / h.dt;
  if (nyquist < 8.0 * basis.max_frequency()) {
    throw ResolutionError(
        "aliasing: history sampling leaves less than an 8x Nyquist margin "
        "above the basis cutoff");
  }
  if (basis.max_frequency() < 8.0 / h.min_ramp_duration) {
    throw ResolutionError(
        "mode basis cutoff below 8/T_ramp: spectrum not covered");
  }
}

}  // namespace

ModeBasis ModeBasis::log_spaced(FieldKind kind, double omega_min,
                                double omega_max, int count) {
  if (!(omega_min > 0.0) || !(omega_max > omega_min)) {
    throw ValidationError("mode basis needs 0 < omega_min < omega_max");
  }
  if (count < 8) throw ValidationError("mode basis needs at least 8 modes");

  ModeBasis b;
  b.kind = kind;
  b.frequencies.resize(static_cast<std::size_t>(count));
  const double la = std::log(omega_min);
  const double lb = std::log(omega_max);
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    b.frequencies[static_cast<std::size_t>(i)] =
        i == 0 ? omega_min
               : (i == count - 1 ? omega_max
                                 : std::exp(la * (1.0 - f) + lb * f));
  }
  b.weights.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double lo = i == 0 ? b.frequencies[0]
                             : b.frequencies[static_cast<std::size_t>(i - 1)];
    const double hi = i == count - 1
                          ? b.frequencies[static_cast<std::size_t>(i)]
                          : b.frequencies[static_cast<std::size_t>(i + 1)];
    b.weights[static_cast<std::size_t>(i)] = 0.5 * (hi - lo);
  }
  return b;
}

ModeBasis default_basis(const MultipoleHistory& h, FieldKind kind,
                        const BasisOptions& options) {
  if (h.min_ramp_duration <= 0.0) {
    throw ResolutionError("history has no ramp duration set");
  }
  return ModeBasis::log_spaced(kind,
                               options.omega_min_factor / h.min_ramp_duration,
                               options.omega_max_factor / h.min_ramp_duration,
                               options.mode_count);
}

ModeAmplitudes ModeAmplitudes::zero(const ModeBasis& basis) {
  ModeAmplitudes a;
  a.basis = basis;
  a.alpha.assign(basis.size(), {0.0, 0.0});
  return a;
}

ModeAmplitudes spectral_amplitudes(const MultipoleHistory& h,
                                   const ModeBasis& basis,
                                   const RadiationCoefficients& coeffs) {
  const bool dipole = h.order == MultipoleOrder::Dipole;
  if (dipole != (basis.kind == FieldKind::Electromagnetic)) {
    throw DimensionError("multipole order does not match the basis kind");
  }
  check_resolution(h, basis);

  ModeAmplitudes out;
  out.basis = basis;
  out.alpha.resize(basis.size());
  const double c = dipole ? coeffs.dipole : coeffs.quadrupole;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double omega = basis.frequencies[i];
    // F[d2h/dt2](omega) = -omega^2 F[h](omega) for compact support.
    const std::complex<double> fddot =
        -omega * omega * fourier_transform(h, omega);
    const double wpow = dipole ? basis.weights[i] / omega
                               : basis.weights[i] * omega;
    out.alpha[i] = std::sqrt(c * wpow) * fddot;
  }
  return out;
}

double photon_number(const ModeAmplitudes& a) {
  KahanSum s;
  for (const auto& z : a.alpha) s.add(std::norm(z));
  return s.value();
}

double radiated_energy(const ModeAmplitudes& a) {
  KahanSum s;
  for (std::size_t i = 0; i < a.alpha.size(); ++i) {
    s.add(a.basis.frequencies[i] * std::norm(a.alpha[i]));
  }
  return s.value();
}

double band_photon_number(const MultipoleHistory& h, FieldKind kind,
                          double omega_lo, double omega_hi, int count,
                          const RadiationCoefficients& coeffs) {
  const bool dipole = h.order == MultipoleOrder::Dipole;
  ModeBasis band = ModeBasis::log_spaced(kind, omega_lo, omega_hi, count);
  KahanSum s;
  const double c = dipole ? coeffs.dipole : coeffs.quadrupole;
  for (std::size_t i = 0; i < band.size(); ++i) {
    const double omega = band.frequencies[i];
    const std::complex<double> fddot =
        -omega * omega * fourier_transform(h, omega);
    const double wpow =
        dipole ? band.weights[i] / omega : band.weights[i] * omega;
    s.add(c * wpow * std::norm(fddot));
  }
  return s.value();
}

void write_spectrum_csv(std::ostream& os, const ModeAmplitudes& a) {
  os << "omega,alpha_sq,dE_domega\n";
  for (std::size_t i = 0; i < a.alpha.size(); ++i) {
    const double omega = a.basis.frequencies[i];
    const double n = std::norm(a.alpha[i]);
    const double w = a.basis.weights[i];
    // |alpha|^2 = w * (dE/domega)/omega  =>  dE/domega = omega |alpha|^2 / w.
    os << format_double(omega) << ',' << format_double(n) << ','
       << format_double(w > 0.0 ? omega * n / w : 0.0) << '\n';
  }
}

}  // namespace gedanken
