#include "gedanken/audit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "gedanken/errors.hpp"
#include "gedanken/numeric.hpp"

namespace gedanken {

namespace {

CoherentLabel joint_label(const CoherentLabel& field,
                          const CoherentLabel& probe) {
  CoherentLabel x;
  x.a.resize(field.modes() + probe.modes());
  x.a.head(field.modes()) = field.a;
  x.a.tail(probe.modes()) = probe.a;
  x.phase = field.phase + probe.phase;
  return x;
}

std::vector<Eigen::Index> index_range(Eigen::Index begin, Eigen::Index end) {
  std::vector<Eigen::Index> v(static_cast<std::size_t>(end - begin));
  std::iota(v.begin(), v.end(), begin);
  return v;
}

}  // namespace

AuditResult run_audit(const CoherentLabel& a1, const CoherentLabel& a2,
                      const GaussianUnitary& U_bob,
                      const CoherentLabel& probe_init) {
  if (a1.modes() != a2.modes()) {
    throw DimensionError("run_audit: field labels of different size");
  }
  const Eigen::Index nf = a1.modes();
  const Eigen::Index np = probe_init.modes();
  if (U_bob.modes() != nf + np) {
    throw DimensionError("run_audit: U_bob must act on field + probe registry");
  }

  const CoherentLabel x1 = joint_label(a1, probe_init);
  const CoherentLabel x2 = joint_label(a2, probe_init);

  AuditResult res;
  res.overlap_sigma1 = overlap(x1, x2);

  const CoherentLabel y1 = apply_unitary(U_bob, x1);
  const CoherentLabel y2 = apply_unitary(U_bob, x2);
  const auto [field_after, bob] = factor_overlap(
      y1, y2, index_range(0, nf), index_range(nf, nf + np));
  res.overlap_field_after = field_after;
  res.overlap_bob = bob;
  res.identity_residual =
      std::abs(field_after * bob - res.overlap_sigma1);
  res.inequality_margin = std::abs(bob) - std::abs(res.overlap_sigma1);
  res.order_independence_residual = 0.0;
  return res;
}

AuditResult run_audit(const ModeAmplitudes& a1, const ModeAmplitudes& a2,
                      const GaussianUnitary& U_bob,
                      const CoherentLabel& probe_init) {
  auto to_label = [](const ModeAmplitudes& a) {
    CoherentLabel x;
    x.a.resize(static_cast<Eigen::Index>(a.alpha.size()));
    for (std::size_t i = 0; i < a.alpha.size(); ++i) {
      x.a[static_cast<Eigen::Index>(i)] = a.alpha[i];
    }
    return x;
  };
  return run_audit(to_label(a1), to_label(a2), U_bob, probe_init);
}

double order_independence(const CoherentLabel& a1, const CoherentLabel& a2,
                          const GaussianUnitary& U_bob,
                          const CoherentLabel& probe_init,
                          const GaussianUnitary& recombination_tail) {
  const Eigen::Index nf = a1.modes();
  const Eigen::Index np = probe_init.modes();
  if (recombination_tail.modes() != nf) {
    throw DimensionError("order_independence: tail must act on the field sector");
  }
  if (U_bob.modes() != nf + np) {
    throw DimensionError("order_independence: U_bob must act on field + probe");
  }
  const GaussianUnitary tail =
      GaussianUnitary::embed(recombination_tail, nf + np, 0);

  // Spacelike separation at the label level: the two maps must commute.
  const auto sup_tail = tail.support();
  const auto sup_bob = U_bob.support();
  bool disjoint = true;
  for (Eigen::Index m : sup_tail) {
    if (std::find(sup_bob.begin(), sup_bob.end(), m) != sup_bob.end()) {
      disjoint = false;
      break;
    }
  }
  const GaussianUnitary ab = compose(U_bob, tail);
  const GaussianUnitary ba = compose(tail, U_bob);
  if (!disjoint) {
    const double s_comm =
        (ab.symplectic() - ba.symplectic()).cwiseAbs().maxCoeff();
    const double d_comm = (ab.displacement_vector() - ba.displacement_vector())
                              .cwiseAbs()
                              .maxCoeff();
    if (s_comm > 1e-12 || d_comm > 1e-12) {
      throw ValidationError(
          "order_independence: overlapping non-commuting supports");
    }
  }

  const CoherentLabel x1 = joint_label(a1, probe_init);
  const CoherentLabel x2 = joint_label(a2, probe_init);
  auto final_overlap = [&](const GaussianUnitary& first,
                           const GaussianUnitary& second) {
    const CoherentLabel z1 = apply_unitary(second, apply_unitary(first, x1));
    const CoherentLabel z2 = apply_unitary(second, apply_unitary(first, x2));
    return overlap(z1, z2);
  };
  return std::abs(final_overlap(tail, U_bob) - final_overlap(U_bob, tail));
}

CoherentLabel strongest_modes(const ModeAmplitudes& a, int k) {
  const std::size_t n = a.alpha.size();
  const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 1)), n);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return std::norm(a.alpha[i]) > std::norm(a.alpha[j]);
  });
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());
  CoherentLabel x;
  x.a.resize(static_cast<Eigen::Index>(keep));
  for (std::size_t i = 0; i < keep; ++i) {
    x.a[static_cast<Eigen::Index>(i)] = a.alpha[idx[i]];
  }
  return x;
}

namespace {

struct TrialOutcome {
  double identity = 0.0;
  double margin = 0.0;
  double order = 0.0;
};

TrialOutcome one_trial(const AuditOptions& opt, std::uint64_t trial,
                       const CoherentLabel* fixed1,
                       const CoherentLabel* fixed2) {
  std::mt19937_64 rng = trial_rng(opt.seed, trial);

  CoherentLabel a1, a2;
  if (fixed1 != nullptr) {
    a1 = *fixed1;
    a2 = fixed2 != nullptr ? *fixed2 : CoherentLabel::vacuum(fixed1->modes());
  } else {
    // Log-uniform label scale: exercises both near-orthogonal and
    // near-identical branch pairs.
    const Eigen::Index nf =
        1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(
                                          std::max(opt.max_field_modes, 1)));
    const double scale = std::exp(uniform_in(rng, -1.5, 1.0));
    a1 = random_label(nf, rng, scale);
    a2 = random_label(nf, rng, scale);
  }
  const Eigen::Index nf = a1.modes();
  const Eigen::Index np =
      1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(
                                        std::max(opt.max_probe_modes, 1)));

  // Measurement trial: passive + displacement, the family on which
  // coherent labels transport exactly.
  const GaussianUnitary u =
      random_passive_unitary(nf + np, rng, opt.displacement_scale);
  const CoherentLabel probe = CoherentLabel::vacuum(np);
  const AuditResult res = run_audit(a1, a2, u, probe);

  TrialOutcome out;
  out.identity = res.identity_residual;
  out.margin = res.inequality_margin;

  // Slice-ordering check on a random disjoint split: a tail acting on a
  // subset of field modes vs. a measurement on the remaining modes.
  if (trial % 8 == 0 && nf >= 2) {
    const Eigen::Index cut = 1 + static_cast<Eigen::Index>(
                                     rng() % static_cast<std::uint64_t>(nf - 1));
    GaussianUnitary small_tail =
        opt.squeeze_bound > 0.0
            ? random_symplectic(cut, rng, opt.squeeze_bound, 0.0)
            : random_passive_unitary(cut, rng, opt.displacement_scale);
    const GaussianUnitary tail =
        GaussianUnitary::embed(small_tail, nf, 0);
    GaussianUnitary bob_part = random_passive_unitary(
        nf - cut + np, rng, opt.displacement_scale);
    std::vector<Eigen::Index> bob_modes;
    for (Eigen::Index m = cut; m < nf + np; ++m) bob_modes.push_back(m);
    const GaussianUnitary u_oi =
        GaussianUnitary::embed_on(bob_part, nf + np, bob_modes);
    out.order = order_independence(a1, a2, u_oi, probe, tail);
  }
  return out;
}

}  // namespace

AuditSummary run_audit_trials(const AuditOptions& options,
                              const CoherentLabel* a1,
                              const CoherentLabel* a2) {
  if (options.trials <= 0) {
    throw ValidationError("audit requires at least one trial");
  }
  const long trials = options.trials;
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));

  const int workers = std::max(1, options.workers);
  if (workers == 1) {
    for (long t = 0; t < trials; ++t) {
      outcomes[static_cast<std::size_t>(t)] =
          one_trial(options, static_cast<std::uint64_t>(t), a1, a2);
    }
  } else {
    std::atomic<long> next{0};
    auto worker = [&]() {
      for (;;) {
        const long t = next.fetch_add(1);
        if (t >= trials) break;
        outcomes[static_cast<std::size_t>(t)] =
            one_trial(options, static_cast<std::uint64_t>(t), a1, a2);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  AuditSummary s;
  s.trials = trials;
  s.seed = options.seed;
  s.worst_inequality_margin = std::numeric_limits<double>::infinity();
  for (const TrialOutcome& o : outcomes) {
    s.worst_identity_residual = std::max(s.worst_identity_residual, o.identity);
    s.worst_inequality_margin = std::min(s.worst_inequality_margin, o.margin);
    s.worst_order_residual = std::max(s.worst_order_residual, o.order);
  }
  s.pass = s.worst_identity_residual < options.tolerance &&
           s.worst_inequality_margin >= -options.tolerance &&
           s.worst_order_residual < options.tolerance;
  return s;
}

}  // namespace gedanken
