#include "wctlab/oracles.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace wct {

namespace {

constexpr double kScaleFloor = 1e-150;

double wnorm(const Fn& v, const Eigen::VectorXd& mu) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::norm(v[i]) * mu[i];
  return std::sqrt(acc);
}

/// Literal class-inequality evaluator with the needed operator powers
/// precomputed. All norms are mu-weighted; samples are normalized before
/// evaluation so the homogeneous inequalities are compared at unit vectors.
///
/// The violation measure is relative to max(lhs, rhs) with a floor at the
/// rounding-noise level of the evaluation, ~eps times the operator-norm
/// bound of the sides. Without the floor, equality-case operators (where
/// lhs = rhs exactly for every x) let the ascent chase noise near the
/// kernel and report phantom counterexamples.
class Inequality {
public:
  Inequality(const OpMatrix& mx, const ClassSpec& spec, double tol = 1e-10)
      : spec_(spec), mu_(mx.space().mu()) {
    const Eigen::MatrixXcd& t = mx.entries();
    auto norm_of = [&](const Eigen::MatrixXcd& m) { return weighted_opnorm(m, mu_); };
    switch (spec.cls) {
      case OpClass::Paranormal:
      case OpClass::MParanormal:
      case OpClass::MParanormalAMeasurable: {
        t_ = t;
        t2_ = t * t;
        const double m = spec.cls == OpClass::Paranormal ? 1.0 : spec.m;
        noise_scale_ = std::max(std::pow(norm_of(t_), 4.0), m * m * std::pow(norm_of(t2_), 2.0));
        break;
      }
      case OpClass::StarParanormal:
        t_ = t;
        t2_ = t * t;
        tstar_ = weighted_adjoint(t, mu_);
        noise_scale_ = std::max(std::pow(norm_of(tstar_), 4.0), std::pow(norm_of(t2_), 2.0));
        break;
      case OpClass::QuasiStarParanormal:
        t_ = t;
        t2_ = t * t;
        t3_ = t2_ * t;
        tstar_t_ = weighted_adjoint(t, mu_) * t;
        noise_scale_ =
            std::max(std::pow(norm_of(tstar_t_), 2.0), norm_of(t3_) * norm_of(t_));
        break;
      case OpClass::AbsoluteK: {
        t_ = t;
        const Eigen::MatrixXcd tstar_t = weighted_adjoint(t, mu_) * t;
        absk_t_ = weighted_psd_power(tstar_t, mu_, spec.k_real / 2.0) * t;  // |T|^k T
        noise_scale_ = std::max(std::pow(norm_of(t_), spec.k_real + 1.0), norm_of(absk_t_));
        break;
      }
      case OpClass::NStar:
      case OpClass::NkQuasiStar:
      case OpClass::KQuasiStar: {
        const int n = spec.cls == OpClass::KQuasiStar ? 1 : spec.n;
        const int k = spec.cls == OpClass::NkQuasiStar ? spec.k
                      : spec.cls == OpClass::KQuasiStar ? spec.k
                                                        : 0;
        n_ = n;
        tk_ = Eigen::MatrixXcd::Identity(t.rows(), t.cols());
        for (int p = 0; p < k; ++p) tk_ = (tk_ * t).eval();
        tnk1_ = tk_;
        for (int p = 0; p < 1 + n; ++p) tnk1_ = (tnk1_ * t).eval();
        tstar_tk_ = weighted_adjoint(t, mu_) * tk_;
        noise_scale_ = std::max(std::pow(norm_of(tstar_tk_), n + 1),
                                norm_of(tnk1_) * std::pow(norm_of(tk_), n));
        break;
      }
    }
    // Sides below this magnitude are indistinguishable from evaluation noise
    // at the requested tolerance.
    denom_floor_ = 1e-12 * noise_scale_ / std::max(tol, 1e-300);
  }

  /// Powered comparison: violated when lhs_p > rhs_p. Both sides share the
  /// same homogeneity degree, so the relative gap is scale-free.
  void powered_sides(const Fn& x, double& lhs, double& rhs) const {
    switch (spec_.cls) {
      case OpClass::Paranormal:
      case OpClass::MParanormal:
      case OpClass::MParanormalAMeasurable: {
        const double q1 = wnorm(t_ * x, mu_), q2 = wnorm(t2_ * x, mu_);
        const double m = spec_.cls == OpClass::Paranormal ? 1.0 : spec_.m;
        lhs = q1 * q1 * q1 * q1;
        rhs = m * m * q2 * q2;
        break;
      }
      case OpClass::StarParanormal: {
        const double p1 = wnorm(tstar_ * x, mu_), q2 = wnorm(t2_ * x, mu_);
        lhs = p1 * p1 * p1 * p1;
        rhs = q2 * q2;
        break;
      }
      case OpClass::QuasiStarParanormal: {
        const double r = wnorm(tstar_t_ * x, mu_);
        lhs = r * r;
        rhs = wnorm(t3_ * x, mu_) * wnorm(t_ * x, mu_);
        break;
      }
      case OpClass::AbsoluteK: {
        const double q1 = wnorm(t_ * x, mu_);
        lhs = std::pow(q1, spec_.k_real + 1.0);
        rhs = wnorm(absk_t_ * x, mu_);
        break;
      }
      case OpClass::NStar:
      case OpClass::NkQuasiStar:
      case OpClass::KQuasiStar: {
        const double star = wnorm(tstar_tk_ * x, mu_);
        lhs = std::pow(star, n_ + 1);
        rhs = wnorm(tnk1_ * x, mu_) * std::pow(wnorm(tk_ * x, mu_), n_);
        break;
      }
    }
  }

  /// Literal sides as written in the definitions (lhs <= rhs form).
  InequalitySides literal_sides(const Fn& x) const {
    InequalitySides s;
    switch (spec_.cls) {
      case OpClass::Paranormal:
      case OpClass::MParanormal:
      case OpClass::MParanormalAMeasurable: {
        const double m = spec_.cls == OpClass::Paranormal ? 1.0 : spec_.m;
        const double q1 = wnorm(t_ * x, mu_);
        s.lhs = q1 * q1;
        s.rhs = m * wnorm(t2_ * x, mu_) * wnorm(x, mu_);
        break;
      }
      case OpClass::StarParanormal: {
        const double p1 = wnorm(tstar_ * x, mu_);
        s.lhs = p1 * p1;
        s.rhs = wnorm(t2_ * x, mu_) * wnorm(x, mu_);
        break;
      }
      case OpClass::QuasiStarParanormal: {
        const double r = wnorm(tstar_t_ * x, mu_);
        s.lhs = r * r;
        s.rhs = wnorm(t3_ * x, mu_) * wnorm(t_ * x, mu_);
        break;
      }
      case OpClass::AbsoluteK: {
        s.lhs = std::pow(wnorm(t_ * x, mu_), spec_.k_real + 1.0);
        s.rhs = wnorm(absk_t_ * x, mu_) * std::pow(wnorm(x, mu_), spec_.k_real);
        break;
      }
      case OpClass::NStar:
      case OpClass::NkQuasiStar:
      case OpClass::KQuasiStar: {
        s.lhs = wnorm(tstar_tk_ * x, mu_);
        s.rhs = std::pow(wnorm(tnk1_ * x, mu_), 1.0 / (1 + n_)) *
                std::pow(wnorm(tk_ * x, mu_), double(n_) / (n_ + 1));
        break;
      }
    }
    return s;
  }

  double relative_violation(const Fn& x) const {
    const double nx = wnorm(x, mu_);
    if (!(nx > 0.0)) return -1.0;
    double lhs = 0.0, rhs = 0.0;
    powered_sides(Fn(x / nx), lhs, rhs);
    return (lhs - rhs) / std::max({lhs, rhs, denom_floor_, kScaleFloor});
  }

  const Eigen::VectorXd& mu() const { return mu_; }

private:
  ClassSpec spec_;
  Eigen::VectorXd mu_;
  int n_ = 1;
  double noise_scale_ = 1.0;
  double denom_floor_ = 0.0;
  Eigen::MatrixXcd t_, t2_, t3_, tstar_, tstar_t_, absk_t_, tk_, tnk1_, tstar_tk_;
};

/// Gradient-free coordinate ascent on the violation functional. When
/// `mask` is non-null only the flagged coordinates move, keeping
/// block-supported candidates block-supported. Stops once the violation is
/// unambiguous; the polish only matters near the decision boundary.
void refine(const Inequality& ineq, Fn& x, double& best, int steps, const AtomSet* mask) {
  constexpr double kClearViolation = 1e-2;
  double step = 0.5;
  const Complex dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int it = 0; it < steps && step > 1e-9 && best < kClearViolation; ++it) {
    bool improved = false;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (mask && !(*mask)[static_cast<size_t>(i)]) continue;
      for (const Complex& d : dirs) {
        Fn cand = x;
        cand[i] += step * d;
        const double v = ineq.relative_violation(cand);
        if (v > best) {
          best = v;
          x = cand;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
}

Verdict run_oracle(const OpMatrix& mx, const ClassSpec& spec, const OracleConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("oracle: samples must be >= 1");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("oracle: tol must be positive");

  const Inequality ineq(mx, spec, cfg.tol);
  const Eigen::Index n = mx.dim();
  std::mt19937_64 eng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  double best = -std::numeric_limits<double>::infinity();
  Fn best_x = Fn::Zero(n);
  int used = 0;

  auto consider = [&](const Fn& x) {
    const double v = ineq.relative_violation(x);
    ++used;
    if (v > best) {
      best = v;
      best_x = x;
    }
  };

  for (Eigen::Index i = 0; i < n && used < cfg.samples; ++i) {
    Fn e = Fn::Zero(n);
    e[i] = 1.0;
    consider(e);
  }
  for (const auto& block : cfg.focus) {
    if (used >= cfg.samples) break;
    Fn ind = Fn::Zero(n);
    for (Eigen::Index i : block) ind[i] = 1.0;
    consider(ind);
    for (int r = 0; r < 8 && used < cfg.samples; ++r) {
      Fn x = Fn::Zero(n);
      for (Eigen::Index i : block) x[i] = Complex(gauss(eng), gauss(eng));
      consider(x);
    }
  }
  while (used < cfg.samples) {
    Fn x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = Complex(gauss(eng), gauss(eng));
    consider(x);
  }

  if (std::isfinite(best)) refine(ineq, best_x, best, cfg.ascent_steps, nullptr);

  Verdict v;
  v.margin = -best;
  if (best > cfg.tol) {
    v.status = Status::Fails;
    const double nx = wnorm(best_x, ineq.mu());
    Fn unit = best_x / nx;
    v.witness_vector = unit;
    const InequalitySides sides = ineq.literal_sides(unit);
    std::ostringstream os;
    os << "counterexample: lhs=" << sides.lhs << " > rhs=" << sides.rhs;
    v.note = os.str();
  } else {
    v.status = Status::Holds;
    std::ostringstream os;
    os << "no counterexample in " << cfg.samples << " samples";
    v.note = os.str();
  }
  return v;
}

}  // namespace

InequalitySides inequality_sides(const OpMatrix& mx, const ClassSpec& spec, const Fn& x) {
  return Inequality(mx, spec).literal_sides(x);
}

Verdict oracle_paranormal(const OpMatrix& mx, const OracleConfig& cfg) {
  return run_oracle(mx, ClassSpec{OpClass::Paranormal}, cfg);
}

Verdict oracle_m_paranormal(const OpMatrix& mx, double m, const OracleConfig& cfg) {
  if (!(m > 0.0)) throw std::invalid_argument("oracle: M must be positive");
  ClassSpec spec;
  spec.cls = OpClass::MParanormal;
  spec.m = m;
  return run_oracle(mx, spec, cfg);
}

Verdict oracle_star_paranormal(const OpMatrix& mx, const OracleConfig& cfg) {
  return run_oracle(mx, ClassSpec{OpClass::StarParanormal}, cfg);
}

Verdict oracle_quasi_star_paranormal(const OpMatrix& mx, const OracleConfig& cfg) {
  return run_oracle(mx, ClassSpec{OpClass::QuasiStarParanormal}, cfg);
}

Verdict oracle_absolute_k(const OpMatrix& mx, double k, const OracleConfig& cfg) {
  if (!(k > 0.0)) throw std::invalid_argument("oracle: k must be positive");
  ClassSpec spec;
  spec.cls = OpClass::AbsoluteK;
  spec.k_real = k;
  return run_oracle(mx, spec, cfg);
}

Verdict oracle_nk_quasi_star(const OpMatrix& mx, int n, int k, const OracleConfig& cfg) {
  if (n < 1 || k < 1) throw std::invalid_argument("oracle: n and k must be >= 1");
  ClassSpec spec;
  spec.cls = OpClass::NkQuasiStar;
  spec.n = n;
  spec.k = k;
  return run_oracle(mx, spec, cfg);
}

Verdict oracle_for(const OpMatrix& mx, const ClassSpec& spec, const OracleConfig& cfg) {
  switch (spec.cls) {
    case OpClass::MParanormal:
    case OpClass::MParanormalAMeasurable:
      if (!(spec.m > 0.0)) throw std::invalid_argument("oracle: M must be positive");
      break;
    case OpClass::AbsoluteK:
      if (!(spec.k_real > 0.0)) throw std::invalid_argument("oracle: k must be positive");
      break;
    case OpClass::NkQuasiStar:
      if (spec.n < 1 || spec.k < 1) throw std::invalid_argument("oracle: n, k must be >= 1");
      break;
    case OpClass::NStar:
      if (spec.n < 1) throw std::invalid_argument("oracle: n must be >= 1");
      break;
    case OpClass::KQuasiStar:
      if (spec.k < 1) throw std::invalid_argument("oracle: k must be >= 1");
      break;
    default: break;
  }
  return run_oracle(mx, spec, cfg);
}

WitnessSearch block_witness(const WctOp& t, Eigen::Index atom, const ClassSpec& cls, double tol) {
  const Eigen::Index n = t.space.size();
  if (atom < 0 || atom >= n) throw std::invalid_argument("block_witness: atom out of range");

  // Precondition: the reduced criterion must actually fail at this atom.
  {
    bool fails_here = false;
    if (cls.cls == OpClass::QuasiStarParanormal) {
      const double lhs = t.cond.eu2[atom] * t.cond.ew2[atom];
      const double rhs = std::norm(t.cond.euw[atom]);
      fails_here = t.cond.g[static_cast<size_t>(atom)] &&
                   rhs - lhs < -kBoundaryRelTol * std::max({lhs, rhs, kScaleFloor});
    } else if (cls.cls == OpClass::StarParanormal) {
      throw std::invalid_argument("block_witness: no criterion for *-paranormal");
    } else {
      const auto curves = criterion_curves(t, cls);
      const auto& cv = curves[static_cast<size_t>(atom)];
      fails_here = cv.min_over_positive() < -kBoundaryRelTol * cv.scale();
    }
    if (!fails_here)
      throw std::invalid_argument("block_witness: criterion does not fail at this atom");
  }

  // T maps block-supported functions to block-supported functions, so the
  // search runs on the restriction of T to the block. That keeps the
  // violation measured at the block's own scale; a block whose weights are
  // orders of magnitude below the rest of the space would otherwise drown
  // in the global noise floor.
  const auto& block = t.part.blocks()[static_cast<size_t>(t.part.block_of(atom))];
  const Eigen::Index m = static_cast<Eigen::Index>(block.size());
  std::vector<std::string> sub_atoms;
  Eigen::VectorXd sub_mu(m);
  Fn sub_u(m), sub_w(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Eigen::Index i = block[static_cast<size_t>(j)];
    sub_atoms.push_back(t.space.atoms()[static_cast<size_t>(i)]);
    sub_mu[j] = t.space.mu()[i];
    sub_u[j] = t.u[i];
    sub_w[j] = t.w[i];
  }
  const WctOp sub =
      make_wct(MeasureSpace(std::move(sub_atoms), std::move(sub_mu)), Partition::trivial(m),
               std::move(sub_u), std::move(sub_w));
  const Inequality ineq(to_matrix(sub), cls, tol);

  std::vector<Fn> candidates;
  candidates.push_back(Fn(sub.u.conjugate()));
  candidates.push_back(sub.w);
  candidates.push_back(sub.u);
  candidates.push_back(Fn(sub.w.conjugate()));
  candidates.push_back(Fn(Fn::Constant(m, 1.0)));
  for (Eigen::Index j = 0; j < m; ++j) {
    Fn e = Fn::Zero(m);
    e[j] = 1.0;
    candidates.push_back(std::move(e));
  }
  std::mt19937_64 eng(0x77c7b1u ^ (static_cast<std::uint64_t>(atom) << 17));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int r = 0; r < 200; ++r) {
    Fn x(m);
    for (Eigen::Index j = 0; j < m; ++j) x[j] = Complex(gauss(eng), gauss(eng));
    candidates.push_back(std::move(x));
  }

  double best = -std::numeric_limits<double>::infinity();
  Fn best_x = Fn::Zero(m);
  for (const auto& x : candidates) {
    const double v = ineq.relative_violation(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  refine(ineq, best_x, best, 100, nullptr);

  WitnessSearch out;
  out.violation = best;
  if (best > tol) {
    const Fn unit = best_x / wnorm(best_x, sub.space.mu());
    Fn embedded = Fn::Zero(n);
    for (Eigen::Index j = 0; j < m; ++j) embedded[block[static_cast<size_t>(j)]] = unit[j];
    out.vector = std::move(embedded);
    out.sides = ineq.literal_sides(unit);
    out.note = "block-supported violation";
  } else {
    std::ostringstream os;
    os << "no block-supported violation above tol; best relative violation " << best;
    out.note = os.str();
  }
  return out;
}

}  // namespace wct
