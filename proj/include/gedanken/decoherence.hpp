#pragma once

#include <utility>

#include "gedanken/gaussian.hpp"
#include "gedanken/radiation.hpp"
#include "gedanken/scenario.hpp"

namespace gedanken {

// Headline quantities of one run.
struct DecoherenceReport {
  double d_alice = 0.0;       // 1 - |<Psi_1|Psi_2>|
  double d_bob = 0.0;         // 1 - |<B_1|B_2>|
  double n_entangling = 0.0;  // expected radiated quanta sourced by the branch difference
  double snr_whichpath = 0.0; // probe displacement / vacuum noise
  RegimeLabel regime;
  bool audit_pass = false;
};

// 1 - |overlap| of the radiated-field labels of the two branches. With the
// difference-history convention a2 = 0 and ||a1||^2 = photon_number.
double alice_decoherence(const ModeAmplitudes& a1, const ModeAmplitudes& a2);

// 1 - |overlap| of Bob's probe-sector labels.
double bob_decoherence(const CoherentLabel& b1, const CoherentLabel& b2);

// SNR = delta_x / Delta_x of Bob's probe:
//   electromagnetic: delta_x = (q_B/m_B) (D_A/D^3) T_B^2, Delta_x = q_B/m_B
//   gravitational:   delta_x = (Q_A/D^4) T_B^2,           Delta_x = 1
// The probe charge-to-mass ratio cancels, so the returned value is
// moment * T_B^2 / D^(3 or 4).
double whichpath_snr(const Scenario& s);

// Declared model bridge from the which-path SNR to a probe-mode label pair:
// |b1 - b2|^2 = snr^2/4, reproducing the ground-state wave-packet overlap
// exp(-delta_x^2 / (8 Delta_x^2)). Reports carry this choice explicitly.
std::pair<CoherentLabel, CoherentLabel> probe_displacement_labels(double snr);

// Remove the shared (Coulomb/Newtonian dressing) component of two amplitude
// sets. Decoherence functionals depend only on the difference, so this is a
// no-op for every reported number; it exists to make the subtraction
// explicit and testable.
std::pair<ModeAmplitudes, ModeAmplitudes> subtract_common_mode(
    const ModeAmplitudes& a1, const ModeAmplitudes& a2);

}  // namespace gedanken
