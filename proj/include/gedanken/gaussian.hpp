#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <utility>
#include <vector>

namespace gedanken {

// Multimode coherent-state label: one complex displacement amplitude per
// mode, plus a global (Weyl) phase. Every pure state appearing in the
// protocol is a displaced vacuum, so first moments are a complete and
// exact description.
struct CoherentLabel {
  Eigen::VectorXcd a;
  double phase = 0.0;  // global phase, radians; 0 for directly built labels

  static CoherentLabel vacuum(Eigen::Index n) {
    return CoherentLabel{Eigen::VectorXcd::Zero(n), 0.0};
  }
  Eigen::Index modes() const { return a.size(); }
};

// <a|b> = exp(-1/2 sum |a_i-b_i|^2 + i Im sum conj(a_i) b_i) times the
// relative global phase. Magnitude = exp(-1/2 ||a-b||^2) <= 1.
std::complex<double> overlap(const CoherentLabel& a, const CoherentLabel& b);

// Phase-space map r -> S r + disp with S real symplectic (2n x 2n, qq-pp
// block ordering, Omega = [[0, I], [-I, 0]]). Construction validates
// S Omega S^T = Omega to 1e-12 in max norm, applying one Newton
// re-symplectification step when the defect is below 1e-8.
class GaussianUnitary {
public:
  GaussianUnitary(Eigen::MatrixXd S, Eigen::VectorXd disp);

  static GaussianUnitary identity(Eigen::Index n);
  // Passive (photon-number conserving) transformation from an n x n complex
  // unitary V, optionally followed by the displacement delta. Coherent
  // labels transform exactly under this subgroup.
  static GaussianUnitary passive(const Eigen::MatrixXcd& V);
  static GaussianUnitary passive(const Eigen::MatrixXcd& V,
                                 const Eigen::VectorXcd& delta);
  static GaussianUnitary displacement(const Eigen::VectorXcd& delta);
  // Mode-mixing rotation by theta between modes i and j:
  // a_i' = cos(theta) a_i - sin(theta) a_j, a_j' = sin(theta) a_i + cos(theta) a_j.
  static GaussianUnitary beam_splitter(Eigen::Index n, Eigen::Index i,
                                       Eigen::Index j, double theta);
  static GaussianUnitary swap(Eigen::Index n, Eigen::Index i, Eigen::Index j);
  // Single-mode squeezers, r_k in log scale; symplectic but not passive.
  static GaussianUnitary squeezer(const Eigen::VectorXd& r);
  // Place a k-mode unitary on modes [offset, offset+k) of an n-mode registry.
  static GaussianUnitary embed(const GaussianUnitary& u, Eigen::Index n,
                               Eigen::Index offset);
  // Place a k-mode unitary on an arbitrary mode subset of an n-mode registry.
  static GaussianUnitary embed_on(const GaussianUnitary& u, Eigen::Index n,
                                  const std::vector<Eigen::Index>& modes);

  Eigen::Index modes() const { return S_.rows() / 2; }
  const Eigen::MatrixXd& symplectic() const { return S_; }
  const Eigen::VectorXd& displacement_vector() const { return disp_; }

  GaussianUnitary inverse() const;
  bool is_passive(double tol = 1e-10) const;
  // Modes on which the map differs from the identity.
  std::vector<Eigen::Index> support(double tol = 1e-12) const;

private:
  Eigen::MatrixXd S_;
  Eigen::VectorXd disp_;
};

// outer after inner: x -> outer(inner(x)).
GaussianUnitary compose(const GaussianUnitary& outer,
                        const GaussianUnitary& inner);

// Affine label transport. Exact quantum-state map (including the global
// phase) on the passive + displacement subgroup; for squeezing symplectics
// the label continues to track the first moments.
CoherentLabel apply_unitary(const GaussianUnitary& u, const CoherentLabel& x);

// Sector overlaps over a two-set partition of the modes. The product of the
// two factors equals overlap(a, b) exactly; the pair's relative global phase
// is carried by the second factor.
std::pair<std::complex<double>, std::complex<double>> factor_overlap(
    const CoherentLabel& a, const CoherentLabel& b,
    const std::vector<Eigen::Index>& first_sector,
    const std::vector<Eigen::Index>& second_sector);

// Haar-distributed n x n complex unitary (Ginibre + QR with phase fix).
Eigen::MatrixXcd random_unitary(Eigen::Index n, std::mt19937_64& rng);

// Passive + displacement sample; the family on which coherent-label
// arithmetic is exact.
GaussianUnitary random_passive_unitary(Eigen::Index n, std::mt19937_64& rng,
                                       double displacement_scale = 1.0);

// General symplectic sample O1 * Z(r) * O2 with |r| <= squeeze_bound,
// for the symplectic-algebra and ordering tests.
GaussianUnitary random_symplectic(Eigen::Index n, std::mt19937_64& rng,
                                  double squeeze_bound,
                                  double displacement_scale = 0.0);

CoherentLabel random_label(Eigen::Index n, std::mt19937_64& rng,
                           double scale = 1.0);

}  // namespace gedanken
