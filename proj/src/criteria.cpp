#include "wctlab/criteria.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace wct {

const char* to_string(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    default: return "unknown";
  }
}

double CriterionCurve::eval(double t) const {
  return a - (1.0 + expo) * std::pow(t, expo) * b + expo * std::pow(t, expo + 1.0) * c;
}

double CriterionCurve::min_over_positive() const {
  if (b <= 0.0) return a;
  if (c <= 0.0) return -std::numeric_limits<double>::infinity();
  return a - std::pow(b, expo + 1.0) / std::pow(c, expo);
}

double CriterionCurve::scale() const {
  double s = std::abs(a);
  if (b > 0.0 && c > 0.0) s = std::max(s, std::pow(b, expo + 1.0) / std::pow(c, expo));
  return std::max(s, std::numeric_limits<double>::min());
}

std::string class_name(const ClassSpec& spec) {
  std::ostringstream os;
  switch (spec.cls) {
    case OpClass::Paranormal: return "paranormal";
    case OpClass::MParanormal: os << "M-paranormal (M=" << spec.m << ")"; break;
    case OpClass::StarParanormal: return "*-paranormal";
    case OpClass::QuasiStarParanormal: return "quasi-*-paranormal";
    case OpClass::AbsoluteK: os << "absolute-" << spec.k_real << "-paranormal"; break;
    case OpClass::NkQuasiStar:
      os << "(" << spec.n << "," << spec.k << ")-quasi-*-paranormal";
      break;
    case OpClass::NStar: os << spec.n << "-*-paranormal"; break;
    case OpClass::KQuasiStar: os << spec.k << "-quasi-*-paranormal"; break;
    case OpClass::MParanormalAMeasurable:
      os << "M-paranormal, A-measurable u (M=" << spec.m << ")";
      break;
  }
  return os.str();
}

std::string class_token(const ClassSpec& spec) {
  std::ostringstream os;
  switch (spec.cls) {
    case OpClass::Paranormal: return "para";
    case OpClass::MParanormal: os << "m-para=" << spec.m; break;
    case OpClass::StarParanormal: return "*para";
    case OpClass::QuasiStarParanormal: return "q*p";
    case OpClass::AbsoluteK: os << "abs-k=" << spec.k_real; break;
    case OpClass::NkQuasiStar: os << "(n,k)=" << spec.n << "," << spec.k; break;
    case OpClass::NStar: os << "n*=" << spec.n; break;
    case OpClass::KQuasiStar: os << "kq*=" << spec.k; break;
    case OpClass::MParanormalAMeasurable: os << "m-para-ameas=" << spec.m; break;
  }
  return os.str();
}

namespace {

double parse_number(const std::string& s, const std::string& token) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("class token '" + token + "': bad parameter '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& token) {
  const double v = parse_number(s, token);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw std::invalid_argument("class token '" + token + "': integer expected, got '" + s + "'");
  return i;
}

}  // namespace

ClassSpec parse_class_token(const std::string& token) {
  ClassSpec spec;
  const auto eq = token.find('=');
  const std::string head = eq == std::string::npos ? token : token.substr(0, eq);
  const std::string arg = eq == std::string::npos ? "" : token.substr(eq + 1);

  auto require_arg = [&]() {
    if (arg.empty()) throw std::invalid_argument("class token '" + token + "': parameter required");
  };

  if (head == "q*p" || head == "quasi-star-paranormal") {
    spec.cls = OpClass::QuasiStarParanormal;
  } else if (head == "para" || head == "paranormal") {
    spec.cls = OpClass::Paranormal;
  } else if (head == "*para" || head == "star-paranormal") {
    spec.cls = OpClass::StarParanormal;
  } else if (head == "m-para") {
    require_arg();
    spec.cls = OpClass::MParanormal;
    spec.m = parse_number(arg, token);
  } else if (head == "m-para-ameas") {
    require_arg();
    spec.cls = OpClass::MParanormalAMeasurable;
    spec.m = parse_number(arg, token);
  } else if (head == "abs-k") {
    require_arg();
    spec.cls = OpClass::AbsoluteK;
    spec.k_real = parse_number(arg, token);
  } else if (head == "(n,k)") {
    require_arg();
    const auto comma = arg.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("class token '" + token + "': expected (n,k)=N,K");
    spec.cls = OpClass::NkQuasiStar;
    spec.n = parse_int(arg.substr(0, comma), token);
    spec.k = parse_int(arg.substr(comma + 1), token);
  } else if (head == "n*") {
    require_arg();
    spec.cls = OpClass::NStar;
    spec.n = parse_int(arg, token);
  } else if (head == "kq*") {
    require_arg();
    spec.cls = OpClass::KQuasiStar;
    spec.k = parse_int(arg, token);
  } else {
    throw std::invalid_argument("unknown class token '" + token + "'");
  }
  return spec;
}

std::vector<std::string> split_class_list(const std::string& csv) {
  // Commas inside parentheses and the parameter comma of "(n,k)=N,K" do not
  // separate tokens.
  std::vector<std::string> tokens;
  std::string cur;
  int depth = 0;
  for (char ch : csv) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      const bool nk_pending =
          cur.rfind("(n,k)=", 0) == 0 && cur.find(',', 6) == std::string::npos;
      if (!nk_pending) {
        tokens.push_back(cur);
        cur.clear();
        continue;
      }
    }
    cur.push_back(ch);
  }
  tokens.push_back(cur);
  return tokens;
}

std::vector<ClassSpec> parse_class_list(const std::string& csv) {
  std::vector<ClassSpec> specs;
  for (const auto& tok : split_class_list(csv)) specs.push_back(parse_class_token(tok));
  if (specs.empty()) throw std::invalid_argument("empty class list");
  return specs;
}

bool u_is_a_measurable(const WctOp& t, double tol) {
  for (const auto& block : t.part.blocks()) {
    const Complex ref = t.u[block.front()];
    for (Eigen::Index i : block)
      if (std::abs(t.u[i] - ref) > tol * std::max(1.0, std::abs(ref))) return false;
  }
  return true;
}

std::vector<CriterionCurve> criterion_curves(const WctOp& t, const ClassSpec& spec) {
  const Eigen::Index n_atoms = t.space.size();
  const CondData& cd = t.cond;
  std::vector<CriterionCurve> curves(static_cast<size_t>(n_atoms));

  switch (spec.cls) {
    case OpClass::Paranormal:
    case OpClass::MParanormal: {
      const double m2 = (spec.cls == OpClass::Paranormal) ? 1.0 : spec.m * spec.m;
      const Fn eu = cond_exp(t.u, t.part, t.space);
      for (Eigen::Index i = 0; i < n_atoms; ++i) {
        const double eu_sq = std::norm(eu[i]);
        curves[i] = {m2 * std::norm(cd.euw[i]) * cd.ew2[i] * eu_sq, cd.ew2[i] * eu_sq, 1.0, 1.0};
      }
      break;
    }
    case OpClass::MParanormalAMeasurable: {
      const double m2 = spec.m * spec.m;
      const Fn ew = cond_exp(t.w, t.part, t.space);
      for (Eigen::Index i = 0; i < n_atoms; ++i) {
        const double u_sq = std::norm(t.u[i]);
        curves[i] = {m2 * u_sq * std::norm(ew[i]) * cd.ew2[i] * u_sq, cd.ew2[i] * u_sq, 1.0, 1.0};
      }
      break;
    }
    case OpClass::AbsoluteK: {
      const double k = spec.k_real;
      const Fn eu = cond_exp(t.u, t.part, t.space);
      for (Eigen::Index i = 0; i < n_atoms; ++i) {
        const double eu_sq = std::norm(eu[i]);
        const double a = cd.s[static_cast<size_t>(i)]
                             ? std::norm(cd.euw[i]) * std::pow(cd.eu2[i], k - 1.0) *
                                   std::pow(cd.ew2[i], k) * eu_sq
                             : 0.0;
        curves[i] = {a, cd.ew2[i] * eu_sq, 1.0, k};
      }
      break;
    }
    case OpClass::QuasiStarParanormal:
    case OpClass::NkQuasiStar:
    case OpClass::KQuasiStar: {
      const int n = spec.cls == OpClass::NkQuasiStar ? spec.n : 1;
      const int k = spec.cls == OpClass::QuasiStarParanormal ? 1 : spec.k;
      for (Eigen::Index i = 0; i < n_atoms; ++i) {
        const double euw_sq = std::norm(cd.euw[i]);
        // |E(uw)|^{2(k-1)}: the exact power from the T^{*k} ... T^k operator
        // identities. For k = 1 the factor is identically one.
        const double pref = k == 1 ? 1.0 : std::pow(euw_sq, k - 1);
        curves[i] = {std::pow(euw_sq, n + k) * cd.ew2[i], pref * cd.ew2[i] * cd.ew2[i] * cd.eu2[i],
                     pref * cd.ew2[i], static_cast<double>(n)};
      }
      break;
    }
    case OpClass::NStar: {
      for (Eigen::Index i = 0; i < n_atoms; ++i) {
        const double euw_sq = std::norm(cd.euw[i]);
        const double pref = cd.s0[static_cast<size_t>(i)] ? 1.0 / euw_sq : 0.0;
        curves[i] = {std::pow(euw_sq, spec.n) * cd.ew2[i],
                     pref * cd.ew2[i] * cd.ew2[i] * cd.eu2[i], pref * cd.ew2[i],
                     static_cast<double>(spec.n)};
      }
      break;
    }
    case OpClass::StarParanormal:
      throw std::invalid_argument("no reduced curve for *-paranormal");
  }
  return curves;
}

namespace {

struct Fold {
  double margin = 0.0;  // raw slack at the worst atom
  double rel = std::numeric_limits<double>::infinity();
  std::optional<Eigen::Index> witness;
  bool boundary = false;
  bool failed = false;
};

Fold fold_margins(const std::vector<double>& margins, const std::vector<double>& scales,
                  const AtomSet* mask, double tol) {
  Fold f;
  bool any = false;
  for (size_t i = 0; i < margins.size(); ++i) {
    if (mask && !(*mask)[i]) continue;
    any = true;
    const double rel = margins[i] / std::max(scales[i], std::numeric_limits<double>::min());
    if (std::abs(rel) <= tol) f.boundary = true;
    if (rel < f.rel) {
      f.rel = rel;
      f.margin = margins[i];
      f.witness = static_cast<Eigen::Index>(i);
    }
  }
  if (!any) f.rel = 0.0;
  f.failed = f.rel < -tol;
  if (!f.failed) f.witness.reset();
  return f;
}

Fold fold_curves(const std::vector<CriterionCurve>& curves, const AtomSet* mask, double tol) {
  std::vector<double> margins(curves.size()), scales(curves.size());
  for (size_t i = 0; i < curves.size(); ++i) {
    margins[i] = curves[i].min_over_positive();
    scales[i] = curves[i].scale();
  }
  return fold_margins(margins, scales, mask, tol);
}

Verdict exact_verdict(const Fold& f, std::string note_holds = "") {
  Verdict v;
  v.status = f.failed ? Status::Fails : Status::Holds;
  v.margin = f.margin;
  v.witness_atom = f.witness;
  v.boundary = f.boundary;
  if (!f.failed) v.note = std::move(note_holds);
  return v;
}

bool g_empty(const WctOp& t) { return set_count(t.cond.g) == 0; }

}  // namespace

Verdict crit_quasi_star_paranormal(const WctOp& t, double tol) {
  const Eigen::Index n = t.space.size();
  std::vector<double> margins(static_cast<size_t>(n)), scales(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lhs = t.cond.eu2[i] * t.cond.ew2[i];
    const double rhs = std::norm(t.cond.euw[i]);
    margins[static_cast<size_t>(i)] = rhs - lhs;
    scales[static_cast<size_t>(i)] = std::max(lhs, rhs);
  }
  Fold f = fold_margins(margins, scales, &t.cond.g, tol);
  return exact_verdict(f, g_empty(t) ? "G is empty; condition vacuous" : "");
}

Verdict crit_m_paranormal(const WctOp& t, double m, double tol) {
  if (!(m > 0.0)) throw std::invalid_argument("M-paranormal: M must be positive");
  ClassSpec spec;
  spec.cls = OpClass::MParanormal;
  spec.m = m;
  Fold f = fold_curves(criterion_curves(t, spec), nullptr, tol);
  Verdict v;
  v.margin = f.margin;
  v.boundary = f.boundary;
  if (f.failed) {
    v.status = Status::Fails;
    v.witness_atom = f.witness;
    v.note = "necessary moment condition fails";
  } else if (g_empty(t)) {
    v.status = Status::Holds;
    v.note = "sufficient condition holds: E(|w|^2) = 0";
  } else {
    v.status = Status::Unknown;
    v.note = "necessary condition passes, sufficient condition does not apply";
  }
  return v;
}

Verdict crit_paranormal(const WctOp& t, double tol) { return crit_m_paranormal(t, 1.0, tol); }

Verdict crit_m_paranormal_ameasurable(const WctOp& t, double m, double tol) {
  if (!(m > 0.0)) throw std::invalid_argument("M-paranormal: M must be positive");
  if (!u_is_a_measurable(t))
    throw std::invalid_argument("exact M-paranormal criterion requires u constant on each block");
  ClassSpec spec;
  spec.cls = OpClass::MParanormalAMeasurable;
  spec.m = m;
  Fold f = fold_curves(criterion_curves(t, spec), nullptr, tol);
  return exact_verdict(f);
}

Verdict crit_absolute_k(const WctOp& t, double k, double tol) {
  if (!(k > 0.0)) throw std::invalid_argument("absolute-k: k must be positive");
  ClassSpec spec;
  spec.cls = OpClass::AbsoluteK;
  spec.k_real = k;
  Fold f = fold_curves(criterion_curves(t, spec), nullptr, tol);
  Verdict v;
  v.margin = f.margin;
  v.boundary = f.boundary;
  if (f.failed) {
    v.status = Status::Fails;
    v.witness_atom = f.witness;
    return v;
  }
  if (u_is_a_measurable(t)) {
    v.status = Status::Holds;
    v.note = "exact: u is A-measurable";
  } else if (g_empty(t)) {
    v.status = Status::Holds;
    v.note = "sufficient condition holds: E(|w|^2) = 0";
  } else {
    v.status = Status::Unknown;
    v.note = "necessary condition passes, sufficient condition does not apply";
  }
  return v;
}

Verdict crit_nk_quasi_star(const WctOp& t, int n, int k, double tol) {
  if (n < 1 || k < 1) throw std::invalid_argument("(n,k)-quasi-*: n and k must be >= 1");
  ClassSpec spec;
  spec.cls = OpClass::NkQuasiStar;
  spec.n = n;
  spec.k = k;
  return exact_verdict(fold_curves(criterion_curves(t, spec), nullptr, tol));
}

Verdict crit_n_star(const WctOp& t, int n, double tol) {
  if (n < 1) throw std::invalid_argument("n-*-paranormal: n must be >= 1");
  ClassSpec spec;
  spec.cls = OpClass::NStar;
  spec.n = n;
  Verdict v = exact_verdict(fold_curves(criterion_curves(t, spec), nullptr, tol));
  if (v.status == Status::Holds) {
    // The pencil coefficients all vanish where E(uw) = 0, so those atoms are
    // unconstrained by the reduction; a Holds there would overclaim (the
    // definitional inequality can still fail, e.g. T*Tx != 0 with T^2 = 0).
    for (Eigen::Index i = 0; i < t.space.size(); ++i)
      if (!t.cond.s0[static_cast<size_t>(i)] && t.cond.eu2[i] * t.cond.ew2[i] > 0.0) {
        v.status = Status::Unknown;
        v.note = "atoms off S(E(uw)) are unconstrained by this pencil; "
                 "consult the oracle there";
        break;
      }
  }
  return v;
}

Verdict crit_k_quasi_star(const WctOp& t, int k, double tol) {
  if (k < 1) throw std::invalid_argument("k-quasi-*-paranormal: k must be >= 1");
  return crit_nk_quasi_star(t, 1, k, tol);
}

Verdict criterion_for(const WctOp& t, const ClassSpec& spec, double tol) {
  switch (spec.cls) {
    case OpClass::Paranormal: return crit_paranormal(t, tol);
    case OpClass::MParanormal: return crit_m_paranormal(t, spec.m, tol);
    case OpClass::QuasiStarParanormal: return crit_quasi_star_paranormal(t, tol);
    case OpClass::AbsoluteK: return crit_absolute_k(t, spec.k_real, tol);
    case OpClass::NkQuasiStar: return crit_nk_quasi_star(t, spec.n, spec.k, tol);
    case OpClass::NStar: return crit_n_star(t, spec.n, tol);
    case OpClass::KQuasiStar: return crit_k_quasi_star(t, spec.k, tol);
    case OpClass::MParanormalAMeasurable: return crit_m_paranormal_ameasurable(t, spec.m, tol);
    case OpClass::StarParanormal: {
      Verdict v;
      v.status = Status::Unknown;
      v.note = "no closed-form moment criterion for *-paranormal; consult the oracle";
      return v;
    }
  }
  throw std::logic_error("unreachable class");
}

EquivalenceReport crit_equivalences(const WctOp& t, double tol) {
  EquivalenceReport rep;
  rep.criterion = crit_quasi_star_paranormal(t, tol);
  rep.g_is_x = set_all(t.cond.g);
  const Fn eu = cond_exp(t.u, t.part, t.space);
  const RealFn abs_eu = eu.cwiseAbs();
  rep.s_eu_is_x = set_all(support(abs_eu, default_support_tol(abs_eu)));
  rep.quasi_star_a_class_equivalent = rep.g_is_x;
  rep.a_class_equivalent = rep.g_is_x && rep.s_eu_is_x;
  return rep;
}

}  // namespace wct
