#pragma once

#include <string>
#include <vector>

namespace gedanken {

enum class FieldKind { Electromagnetic, Gravitational };

enum class RampWindow { Smoothstep, Gaussian, RaisedCosine };

// "Significant" thresholds for the order-of-magnitude regime classifier.
// The underlying estimates are scaling laws, so the constants are exposed
// rather than hard-coded.
struct Thresholds {
  double bob_snr = 1.0;        // which-path SNR above which Bob can know
  double alice_photons = 1.0;  // photon-number estimate above which Alice decoheres
};

// Full parameter set of one run, in Planck units (G = c = hbar = 1).
// Immutable after validation; safe to share across workers.
struct Scenario {
  FieldKind field_kind = FieldKind::Electromagnetic;
  double q_A = 1.0;  // Alice particle charge (electromagnetic case)
  double m_A = 1.0;  // Alice particle mass
  double d = 1.0;    // branch separation
  double D = 100.0;  // Alice-Bob distance
  double T_A = 10.0; // recombination duration
  double T_B = 10.0; // Bob's measurement duration
  double q_B = 1.0;  // Bob probe charge (electromagnetic case)
  double m_B = 1.0;  // Bob probe mass

  RampWindow ramp = RampWindow::Smoothstep;
  // The superposition is created in the far past by a much slower ramp so
  // that essentially all radiated quanta come from the recombination.
  double split_slowness = 16.0;  // split ramp duration / T_A
  double hold_factor = 4.0;      // hold duration / T_A

  Thresholds thresholds;

  // Throws ValidationError on hard violations; returns soft warnings
  // (e.g. d not small against D).
  std::vector<std::string> validate() const;

  // Protocol flags: each party finishes within light travel time to the other.
  bool alice_causal() const { return T_A < D; }
  bool bob_causal() const { return T_B < D; }

  // q_A*d (dipole) or m_A*d^2 (principal quadrupole component).
  double effective_moment() const;

  // Displacement-to-vacuum-noise ratio of Bob's probe:
  //   electromagnetic: moment * T_B^2 / D^3
  //   gravitational:   moment * T_B^2 / D^4
  double whichpath_snr() const;

  // Order-of-magnitude radiated-quanta estimate: (moment/T_A)^2 for the
  // dipole case, (moment/T_A^2)^2 for the quadrupole case.
  double entangling_number_estimate() const;
};

enum class Narrative {
  BobKnows_AliceDecohered,
  BobBlind_AliceCoherent,
  ProtocolViolated,
};

struct RegimeLabel {
  bool bob_can_know = false;
  bool alice_decoheres = false;
  Narrative narrative = Narrative::ProtocolViolated;
};

double effective_moment(const Scenario& s);
RegimeLabel classify_regime(const Scenario& s);

const char* to_string(FieldKind k);
const char* to_string(RampWindow w);
const char* to_string(Narrative n);

bool parse_field_kind(const std::string& text, FieldKind& out);
bool parse_ramp_window(const std::string& text, RampWindow& out);

}  // namespace gedanken
