#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "gedanken/scenario.hpp"

namespace gedanken {

enum class MultipoleOrder { Dipole, Quadrupole };

// Uniformly sampled multipole moment of the branch difference. The samples
// vanish identically outside [support_begin, support_end]; in between the
// moment rises to the plateau over the split ramp, holds, and returns to
// zero over the recombination ramp of duration T_A.
struct MultipoleHistory {
  double t0 = 0.0;  // time of sample 0
  double dt = 0.0;  // sample spacing
  std::vector<double> moment;
  MultipoleOrder order = MultipoleOrder::Dipole;

  double plateau = 0.0;            // max |moment| by construction
  double min_ramp_duration = 0.0;  // fastest ramp; sets the spectral cutoff
  double support_begin = 0.0;
  double support_end = 0.0;

  std::size_t size() const { return moment.size(); }
  double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
  double duration() const { return dt * static_cast<double>(moment.size() - 1); }

  // k-th time derivative (k = 0..3) sampled on the native grid, evaluated
  // with a 9-point centered difference stencil. Samples are zero-extended
  // beyond the grid, which is exact for compactly supported histories.
  std::vector<double> derivative(int k) const;
};

struct WorldlineOptions {
  // Samples per recombination ramp. 64 is the hard floor; the default also
  // satisfies the Nyquist margin for the default spectral cutoff 64/T_A
  // (pi/dt >= 8 * omega_max requires >= 163 samples per ramp).
  int samples_per_ramp = 200;
  double pad_factor = 0.5;  // zero padding on each side, in units of T_A
};

// Difference of the two branch multipole histories for the given scenario.
// Plateau equals effective_moment(s); order follows the field kind.
MultipoleHistory build_branch_difference(const Scenario& s,
                                         const WorldlineOptions& options = {});

// Scalar window shape sigma: [0,1] -> [0,1] used for the ramps.
double ramp_shape(RampWindow w, double u);

struct SpacetimeEvent {
  double t = 0.0;  // coordinate time; recombination ramp occupies [0, T_A]
  double r = 0.0;  // spatial distance from Alice
};

// True iff the past light cone of the event intersects the recombination
// ramp, i.e. iff recombination-sourced changes of the field can be present
// at the event. The static branch-difference Coulomb/Newtonian field from
// the early split is present everywhere; this predicate isolates the news
// from the recombination.
bool causal_support_check(const Scenario& s, const SpacetimeEvent& event);

// Two-column CSV export: t, moment.
void write_history_csv(std::ostream& os, const MultipoleHistory& h);

}  // namespace gedanken
