#include "gedanken/scenario.hpp"

#include <cmath>

#include "gedanken/errors.hpp"

namespace gedanken {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(name) + " must be strictly positive");
  }
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(name) + " must be >= 0");
  }
}

}  // namespace

std::vector<std::string> Scenario::validate() const {
  std::vector<std::string> warnings;
  require_positive(m_A, "m_A");
  require_positive(m_B, "m_B");
  require_positive(D, "D");
  require_positive(T_A, "T_A");
  require_positive(T_B, "T_B");
  // d = 0 (coincident branches) is the valid degenerate case; the other
  // lengths stay strictly positive.
  require_nonnegative(d, "d");
  require_nonnegative(q_A, "q_A");
  require_nonnegative(q_B, "q_B");
  require_positive(thresholds.bob_snr, "threshold_bob");
  require_positive(thresholds.alice_photons, "threshold_alice");
  if (!(d < D)) {
    throw ValidationError("branch separation d must satisfy d < D");
  }
  if (!(split_slowness >= 1.0)) {
    throw ValidationError("split_slowness must be >= 1");
  }
  if (!(hold_factor >= 0.0)) {
    throw ValidationError("hold_factor must be >= 0");
  }
  if (d > D / 10.0) {
    warnings.push_back("d > D/10: the estimates assume d << D");
  }
  if (split_slowness < 4.0) {
    warnings.push_back(
        "split_slowness < 4: the split ramp radiates non-negligibly");
  }
  return warnings;
}

double Scenario::effective_moment() const {
  return field_kind == FieldKind::Electromagnetic ? q_A * d : m_A * d * d;
}

double Scenario::whichpath_snr() const {
  const double m = effective_moment();
  if (field_kind == FieldKind::Electromagnetic) {
    return m * T_B * T_B / (D * D * D);
  }
  return m * T_B * T_B / (D * D * D * D);
}

double Scenario::entangling_number_estimate() const {
  const double m = effective_moment();
  if (field_kind == FieldKind::Electromagnetic) {
    const double r = m / T_A;
    return r * r;
  }
  const double r = m / (T_A * T_A);
  return r * r;
}

double effective_moment(const Scenario& s) { return s.effective_moment(); }

RegimeLabel classify_regime(const Scenario& s) {
  RegimeLabel label;
  label.bob_can_know = s.whichpath_snr() > s.thresholds.bob_snr;
  label.alice_decoheres =
      s.entangling_number_estimate() > s.thresholds.alice_photons;
  if (!s.alice_causal() || !s.bob_causal()) {
    label.narrative = Narrative::ProtocolViolated;
  } else if (label.bob_can_know) {
    label.narrative = Narrative::BobKnows_AliceDecohered;
  } else {
    label.narrative = Narrative::BobBlind_AliceCoherent;
  }
  return label;
}

const char* to_string(FieldKind k) {
  return k == FieldKind::Electromagnetic ? "electromagnetic" : "gravitational";
}

const char* to_string(RampWindow w) {
  switch (w) {
    case RampWindow::Smoothstep: return "smoothstep";
    case RampWindow::Gaussian: return "gaussian";
    case RampWindow::RaisedCosine: return "raised_cosine";
  }
  return "?";
}

const char* to_string(Narrative n) {
  switch (n) {
    case Narrative::BobKnows_AliceDecohered: return "BobKnows_AliceDecohered";
    case Narrative::BobBlind_AliceCoherent: return "BobBlind_AliceCoherent";
    case Narrative::ProtocolViolated: return "ProtocolViolated";
  }
  return "?";
}

bool parse_field_kind(const std::string& text, FieldKind& out) {
  if (text == "em" || text == "electromagnetic") {
    out = FieldKind::Electromagnetic;
    return true;
  }
  if (text == "grav" || text == "gravitational") {
    out = FieldKind::Gravitational;
    return true;
  }
  return false;
}

bool parse_ramp_window(const std::string& text, RampWindow& out) {
  if (text == "smoothstep") {
    out = RampWindow::Smoothstep;
    return true;
  }
  if (text == "gaussian") {
    out = RampWindow::Gaussian;
    return true;
  }
  if (text == "raised_cosine") {
    out = RampWindow::RaisedCosine;
    return true;
  }
  return false;
}

}  // namespace gedanken
