#include "gedanken/decoherence.hpp"

#include <cmath>

#include "gedanken/errors.hpp"
#include "gedanken/numeric.hpp"

namespace gedanken {

namespace {

CoherentLabel label_of(const ModeAmplitudes& a) {
  CoherentLabel x;
  x.a.resize(static_cast<Eigen::Index>(a.alpha.size()));
  for (std::size_t i = 0; i < a.alpha.size(); ++i) {
    x.a[static_cast<Eigen::Index>(i)] = a.alpha[i];
  }
  return x;
}

}  // namespace

double alice_decoherence(const ModeAmplitudes& a1, const ModeAmplitudes& a2) {
  if (a1.alpha.size() != a2.alpha.size() ||
      a1.basis.frequencies != a2.basis.frequencies) {
    throw DimensionError("alice_decoherence: amplitude sets on different bases");
  }
  return 1.0 - std::abs(overlap(label_of(a1), label_of(a2)));
}

double bob_decoherence(const CoherentLabel& b1, const CoherentLabel& b2) {
  if (b1.modes() != b2.modes()) {
    throw DimensionError("bob_decoherence: probe sector mismatch");
  }
  return 1.0 - std::abs(overlap(b1, b2));
}

double whichpath_snr(const Scenario& s) { return s.whichpath_snr(); }

std::pair<CoherentLabel, CoherentLabel> probe_displacement_labels(double snr) {
  // |b1 - b2| = snr/2 so that |<b1|b2>| = exp(-snr^2/8), the overlap of two
  // ground-state-width wave packets separated by delta_x = snr * Delta_x.
  CoherentLabel b1, b2;
  b1.a = Eigen::VectorXcd::Constant(1, std::complex<double>(snr / 4.0, 0.0));
  b2.a = Eigen::VectorXcd::Constant(1, std::complex<double>(-snr / 4.0, 0.0));
  return {b1, b2};
}

std::pair<ModeAmplitudes, ModeAmplitudes> subtract_common_mode(
    const ModeAmplitudes& a1, const ModeAmplitudes& a2) {
  if (a1.alpha.size() != a2.alpha.size()) {
    throw DimensionError("subtract_common_mode: size mismatch");
  }
  ModeAmplitudes out1 = a1;
  ModeAmplitudes out2 = a2;
  for (std::size_t i = 0; i < a1.alpha.size(); ++i) {
    const std::complex<double> common = 0.5 * (a1.alpha[i] + a2.alpha[i]);
    out1.alpha[i] -= common;
    out2.alpha[i] -= common;
  }
  return {out1, out2};
}

}  // namespace gedanken
