#include "gedanken/gaussian.hpp"

#include <cmath>

#include "gedanken/errors.hpp"
#include "gedanken/numeric.hpp"

namespace gedanken {

namespace {

Eigen::MatrixXd symplectic_form(Eigen::Index n) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return omega;
}

double symplectic_defect(const Eigen::MatrixXd& S) {
  const Eigen::Index n = S.rows() / 2;
  const Eigen::MatrixXd omega = symplectic_form(n);
  return (S * omega * S.transpose() - omega).cwiseAbs().maxCoeff();
}

// (q; p) block vector of a complex label, alpha = (q + i p) / sqrt(2).
Eigen::VectorXd realify(const Eigen::VectorXcd& a) {
  const Eigen::Index n = a.size();
  Eigen::VectorXd r(2 * n);
  r.head(n) = std::sqrt(2.0) * a.real();
  r.tail(n) = std::sqrt(2.0) * a.imag();
  return r;
}

Eigen::VectorXcd complexify(const Eigen::VectorXd& r) {
  const Eigen::Index n = r.size() / 2;
  Eigen::VectorXcd a(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    a[k] = std::complex<double>(r[k], r[n + k]) / std::sqrt(2.0);
  }
  return a;
}

// Exponent of the coherent overlap restricted to a mode subset.
std::complex<double> sector_exponent(const CoherentLabel& a,
                                     const CoherentLabel& b,
                                     const std::vector<Eigen::Index>& modes) {
  KahanSum mag, phase;
  for (Eigen::Index k : modes) {
    const std::complex<double> da = a.a[k] - b.a[k];
    mag.add(std::norm(da));
    phase.add(a.a[k].real() * b.a[k].imag() - a.a[k].imag() * b.a[k].real());
  }
  return {-0.5 * mag.value(), phase.value()};
}

}  // namespace

std::complex<double> overlap(const CoherentLabel& a, const CoherentLabel& b) {
  if (a.modes() != b.modes()) {
    throw DimensionError("overlap: mode count mismatch");
  }
  std::vector<Eigen::Index> all(static_cast<std::size_t>(a.modes()));
  for (Eigen::Index k = 0; k < a.modes(); ++k) all[static_cast<std::size_t>(k)] = k;
  std::complex<double> e = sector_exponent(a, b, all);
  return std::exp(std::complex<double>(e.real(), e.imag() + b.phase - a.phase));
}

GaussianUnitary::GaussianUnitary(Eigen::MatrixXd S, Eigen::VectorXd disp)
    : S_(std::move(S)), disp_(std::move(disp)) {
  if (S_.rows() != S_.cols() || S_.rows() % 2 != 0 ||
      disp_.size() != S_.rows()) {
    throw DimensionError("GaussianUnitary: S must be 2n x 2n with 2n disp");
  }
  double defect = symplectic_defect(S_);
  if (defect > 1e-8) {
    throw ValidationError("matrix is not symplectic (defect " +
                          format_double(defect) + ")");
  }
  if (defect > 1e-12) {
    // One Newton step toward S Omega S^T = Omega.
    const Eigen::Index n = S_.rows() / 2;
    const Eigen::MatrixXd omega = symplectic_form(n);
    const Eigen::MatrixXd omega_inv = -omega;
    const Eigen::MatrixXd target = omega - S_ * omega * S_.transpose();
    const Eigen::MatrixXd sinv_t = omega * S_ * omega_inv;
    S_ += 0.5 * target * sinv_t * omega_inv;
    defect = symplectic_defect(S_);
    if (defect > 1e-12) {
      throw ValidationError("re-symplectification failed (defect " +
                            format_double(defect) + ")");
    }
  }
}

GaussianUnitary GaussianUnitary::identity(Eigen::Index n) {
  return GaussianUnitary(Eigen::MatrixXd::Identity(2 * n, 2 * n),
                         Eigen::VectorXd::Zero(2 * n));
}

GaussianUnitary GaussianUnitary::passive(const Eigen::MatrixXcd& V) {
  return passive(V, Eigen::VectorXcd::Zero(V.rows()));
}

GaussianUnitary GaussianUnitary::passive(const Eigen::MatrixXcd& V,
                                         const Eigen::VectorXcd& delta) {
  if (V.rows() != V.cols() || delta.size() != V.rows()) {
    throw DimensionError("passive: V must be square, delta matching");
  }
  const Eigen::Index n = V.rows();
  Eigen::MatrixXd S(2 * n, 2 * n);
  S.topLeftCorner(n, n) = V.real();
  S.topRightCorner(n, n) = -V.imag();
  S.bottomLeftCorner(n, n) = V.imag();
  S.bottomRightCorner(n, n) = V.real();
  return GaussianUnitary(S, realify(delta));
}

GaussianUnitary GaussianUnitary::displacement(const Eigen::VectorXcd& delta) {
  return passive(Eigen::MatrixXcd::Identity(delta.size(), delta.size()),
                 delta);
}

GaussianUnitary GaussianUnitary::beam_splitter(Eigen::Index n, Eigen::Index i,
                                               Eigen::Index j, double theta) {
  Eigen::MatrixXcd V = Eigen::MatrixXcd::Identity(n, n);
  const double c = std::cos(theta), s = std::sin(theta);
  V(i, i) = c;
  V(i, j) = -s;
  V(j, i) = s;
  V(j, j) = c;
  return passive(V);
}

GaussianUnitary GaussianUnitary::swap(Eigen::Index n, Eigen::Index i,
                                      Eigen::Index j) {
  Eigen::MatrixXcd V = Eigen::MatrixXcd::Identity(n, n);
  V(i, i) = 0.0;
  V(j, j) = 0.0;
  V(i, j) = 1.0;
  V(j, i) = 1.0;
  return passive(V);
}

GaussianUnitary GaussianUnitary::squeezer(const Eigen::VectorXd& r) {
  const Eigen::Index n = r.size();
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    S(k, k) = std::exp(r[k]);
    S(n + k, n + k) = std::exp(-r[k]);
  }
  return GaussianUnitary(S, Eigen::VectorXd::Zero(2 * n));
}

GaussianUnitary GaussianUnitary::embed(const GaussianUnitary& u,
                                       Eigen::Index n, Eigen::Index offset) {
  std::vector<Eigen::Index> modes(static_cast<std::size_t>(u.modes()));
  for (Eigen::Index k = 0; k < u.modes(); ++k) {
    modes[static_cast<std::size_t>(k)] = offset + k;
  }
  return embed_on(u, n, modes);
}

GaussianUnitary GaussianUnitary::embed_on(
    const GaussianUnitary& u, Eigen::Index n,
    const std::vector<Eigen::Index>& modes) {
  const Eigen::Index k = u.modes();
  if (static_cast<Eigen::Index>(modes.size()) != k) {
    throw DimensionError("embed_on: mode list size mismatch");
  }
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Eigen::Index m : modes) {
    if (m < 0 || m >= n || used[static_cast<std::size_t>(m)]) {
      throw DimensionError("embed_on: modes must be distinct and in range");
    }
    used[static_cast<std::size_t>(m)] = true;
  }
  Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  Eigen::VectorXd disp = Eigen::VectorXd::Zero(2 * n);
  const auto& Su = u.symplectic();
  const auto& du = u.displacement_vector();
  auto row = [&](Eigen::Index a, bool p) {
    return p ? n + modes[static_cast<std::size_t>(a)]
             : modes[static_cast<std::size_t>(a)];
  };
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      S(row(a, false), row(b, false)) = Su(a, b);
      S(row(a, false), row(b, true)) = Su(a, k + b);
      S(row(a, true), row(b, false)) = Su(k + a, b);
      S(row(a, true), row(b, true)) = Su(k + a, k + b);
    }
    disp(row(a, false)) = du(a);
    disp(row(a, true)) = du(k + a);
  }
  return GaussianUnitary(std::move(S), std::move(disp));
}

GaussianUnitary GaussianUnitary::inverse() const {
  const Eigen::Index n = modes();
  const Eigen::MatrixXd omega = symplectic_form(n);
  const Eigen::MatrixXd sinv = -omega * S_.transpose() * omega;
  return GaussianUnitary(sinv, -(sinv * disp_));
}

bool GaussianUnitary::is_passive(double tol) const {
  const Eigen::Index m = S_.rows();
  return (S_.transpose() * S_ - Eigen::MatrixXd::Identity(m, m))
             .cwiseAbs()
             .maxCoeff() < tol;
}

std::vector<Eigen::Index> GaussianUnitary::support(double tol) const {
  const Eigen::Index n = modes();
  std::vector<Eigen::Index> out;
  for (Eigen::Index k = 0; k < n; ++k) {
    bool touched = std::abs(disp_[k]) > tol || std::abs(disp_[n + k]) > tol;
    for (Eigen::Index j = 0; j < 2 * n && !touched; ++j) {
      const double id_kj = (j == k) ? 1.0 : 0.0;
      const double id_pj = (j == n + k) ? 1.0 : 0.0;
      touched = std::abs(S_(k, j) - id_kj) > tol ||
                std::abs(S_(n + k, j) - id_pj) > tol ||
                std::abs(S_(j, k) - id_kj) > tol ||
                std::abs(S_(j, n + k) - id_pj) > tol;
    }
    if (touched) out.push_back(k);
  }
  return out;
}

GaussianUnitary compose(const GaussianUnitary& outer,
                        const GaussianUnitary& inner) {
  if (outer.modes() != inner.modes()) {
    throw DimensionError("compose: mode count mismatch");
  }
  return GaussianUnitary(
      outer.symplectic() * inner.symplectic(),
      outer.symplectic() * inner.displacement_vector() +
          outer.displacement_vector());
}

CoherentLabel apply_unitary(const GaussianUnitary& u, const CoherentLabel& x) {
  if (u.modes() != x.modes()) {
    throw DimensionError("apply_unitary: mode count mismatch");
  }
  const Eigen::VectorXd lin = u.symplectic() * realify(x.a);
  const Eigen::VectorXd out = lin + u.displacement_vector();
  CoherentLabel y;
  y.a = complexify(out);
  // Weyl convention: D(delta)|beta> = exp(-i Im(conj(delta) beta)) |beta+delta>.
  const Eigen::VectorXcd lin_c = complexify(lin);
  const Eigen::VectorXcd delta_c = complexify(u.displacement_vector());
  KahanSum w;
  for (Eigen::Index k = 0; k < lin_c.size(); ++k) {
    w.add(std::imag(std::conj(delta_c[k]) * lin_c[k]));
  }
  y.phase = x.phase - w.value();
  return y;
}

std::pair<std::complex<double>, std::complex<double>> factor_overlap(
    const CoherentLabel& a, const CoherentLabel& b,
    const std::vector<Eigen::Index>& first_sector,
    const std::vector<Eigen::Index>& second_sector) {
  if (a.modes() != b.modes()) {
    throw DimensionError("factor_overlap: mode count mismatch");
  }
  std::vector<bool> seen(static_cast<std::size_t>(a.modes()), false);
  for (const auto& sector : {first_sector, second_sector}) {
    for (Eigen::Index k : sector) {
      if (k < 0 || k >= a.modes() || seen[static_cast<std::size_t>(k)]) {
        throw DimensionError("factor_overlap: partition must cover all modes disjointly");
      }
      seen[static_cast<std::size_t>(k)] = true;
    }
  }
  for (bool s : seen) {
    if (!s) throw DimensionError("factor_overlap: partition must cover all modes disjointly");
  }
  const std::complex<double> e1 = sector_exponent(a, b, first_sector);
  std::complex<double> e2 = sector_exponent(a, b, second_sector);
  e2 += std::complex<double>(0.0, b.phase - a.phase);
  return {std::exp(e1), std::exp(e2)};
}

Eigen::MatrixXcd random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = complex_normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double m = std::abs(d);
    q.col(j) *= (m > 0.0 ? d / m : std::complex<double>(1.0, 0.0));
  }
  return q;
}

GaussianUnitary random_passive_unitary(Eigen::Index n, std::mt19937_64& rng,
                                       double displacement_scale) {
  const Eigen::MatrixXcd v = random_unitary(n, rng);
  Eigen::VectorXcd delta = Eigen::VectorXcd::Zero(n);
  if (displacement_scale > 0.0) {
    for (Eigen::Index k = 0; k < n; ++k) {
      delta[k] = displacement_scale * complex_normal(rng);
    }
  }
  return GaussianUnitary::passive(v, delta);
}

GaussianUnitary random_symplectic(Eigen::Index n, std::mt19937_64& rng,
                                  double squeeze_bound,
                                  double displacement_scale) {
  const GaussianUnitary o1 = random_passive_unitary(n, rng, 0.0);
  const GaussianUnitary o2 = random_passive_unitary(n, rng, 0.0);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    r[k] = uniform_in(rng, -squeeze_bound, squeeze_bound);
  }
  Eigen::VectorXd disp = Eigen::VectorXd::Zero(2 * n);
  if (displacement_scale > 0.0) {
    for (Eigen::Index k = 0; k < 2 * n; ++k) {
      disp[k] = displacement_scale * normal01(rng);
    }
  }
  const Eigen::MatrixXd S = o1.symplectic() *
                            GaussianUnitary::squeezer(r).symplectic() *
                            o2.symplectic();
  return GaussianUnitary(S, disp);
}

CoherentLabel random_label(Eigen::Index n, std::mt19937_64& rng,
                           double scale) {
  CoherentLabel x;
  x.a.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) x.a[k] = scale * complex_normal(rng);
  return x;
}

}  // namespace gedanken
