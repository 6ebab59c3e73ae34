#include "gedanken/worldline.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "gedanken/errors.hpp"
#include "gedanken/numeric.hpp"

namespace gedanken {

double ramp_shape(RampWindow w, double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  switch (w) {
    case RampWindow::Smoothstep:
      // Quintic smoothstep: C^2 at both ends.
      return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
    case RampWindow::Gaussian: {
      // erf profile truncated at +-3 sigma-equivalents and renormalized.
      constexpr double a = 3.0;
      const double e = std::erf(a);
      return (std::erf(a * (2.0 * u - 1.0)) + e) / (2.0 * e);
    }
    case RampWindow::RaisedCosine:
      return 0.5 * (1.0 - std::cos(3.14159265358979323846 * u));
  }
  return 0.0;
}

MultipoleHistory build_branch_difference(const Scenario& s,
                                         const WorldlineOptions& options) {
  s.validate();
  if (options.samples_per_ramp < 64) {
    throw ResolutionError(
        "samples_per_ramp below the 64-sample minimum for the recombination ramp");
  }

  MultipoleHistory h;
  h.order = s.field_kind == FieldKind::Electromagnetic
                ? MultipoleOrder::Dipole
                : MultipoleOrder::Quadrupole;
  h.plateau = s.effective_moment();
  h.dt = s.T_A / static_cast<double>(options.samples_per_ramp);
  h.min_ramp_duration = s.T_A;  // the split ramp is slower by construction
  h.t0 = 0.0;

  const auto spr = static_cast<long>(options.samples_per_ramp);
  const long pad_n = std::max<long>(1, std::lround(options.pad_factor * spr));
  const long split_n = std::lround(s.split_slowness * static_cast<double>(spr));
  const long hold_n = std::lround(s.hold_factor * static_cast<double>(spr));
  const long recomb_n = spr;

  const long n = pad_n + split_n + hold_n + recomb_n + pad_n + 1;
  h.moment.assign(static_cast<std::size_t>(n), 0.0);

  const long split_begin = pad_n;
  const long hold_begin = split_begin + split_n;
  const long recomb_begin = hold_begin + hold_n;
  const long recomb_end = recomb_begin + recomb_n;

  h.support_begin = h.time(static_cast<std::size_t>(split_begin));
  h.support_end = h.time(static_cast<std::size_t>(recomb_end));

  if (h.plateau == 0.0) return h;  // coincident branches: identically zero

  for (long i = split_begin; i <= recomb_end; ++i) {
    double v;
    if (i < hold_begin) {
      const double u = static_cast<double>(i - split_begin) /
                       static_cast<double>(split_n);
      v = ramp_shape(s.ramp, u);
    } else if (i < recomb_begin) {
      v = 1.0;
    } else {
      const double u = static_cast<double>(i - recomb_begin) /
                       static_cast<double>(recomb_n);
      v = 1.0 - ramp_shape(s.ramp, u);
    }
    h.moment[static_cast<std::size_t>(i)] = h.plateau * v;
  }
  return h;
}

std::vector<double> MultipoleHistory::derivative(int k) const {
  if (k < 0 || k > 3) throw ValidationError("derivative order must be 0..3");
  if (k == 0) return moment;
  if (dt <= 0.0 || moment.size() < 9) {
    throw ResolutionError("history too short for derivative evaluation");
  }

  // 9-point centered stencil on the native grid; zero extension beyond the
  // ends is exact because the moment is compactly supported inside.
  constexpr int half = 4;
  std::vector<double> offsets(2 * half + 1);
  for (int j = -half; j <= half; ++j) {
    offsets[static_cast<std::size_t>(j + half)] = static_cast<double>(j);
  }
  const std::vector<double> w = fd_weights(0.0, offsets, k);

  const double scale = std::pow(dt, -k);
  const long n = static_cast<long>(moment.size());
  std::vector<double> out(moment.size(), 0.0);
  for (long i = 0; i < n; ++i) {
    KahanSum acc;
    for (int j = -half; j <= half; ++j) {
      const long idx = i + j;
      if (idx < 0 || idx >= n) continue;  // zero extension
      acc.add(w[static_cast<std::size_t>(j + half)] *
              moment[static_cast<std::size_t>(idx)]);
    }
    out[static_cast<std::size_t>(i)] = acc.value() * scale;
  }
  return out;
}

bool causal_support_check(const Scenario& s, const SpacetimeEvent& event) {
  if (event.r < 0.0) throw ValidationError("event distance r must be >= 0");
  (void)s;
  // Recombination ramp occupies [0, T_A] at Alice's location. Its news
  // reaches distance r starting at t = r; before that only the static
  // branch-difference field from the early split is present.
  return event.t - event.r >= 0.0;
}

void write_history_csv(std::ostream& os, const MultipoleHistory& h) {
  os << "t,moment\n";
  for (std::size_t i = 0; i < h.size(); ++i) {
    os << format_double(h.time(i)) << ',' << format_double(h.moment[i])
       << '\n';
  }
}

}  // namespace gedanken
