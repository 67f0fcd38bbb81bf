#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wctlab/operator.hpp"

namespace wct {

enum class Status { Holds, Fails, Unknown };
const char* to_string(Status s);

/// Outcome of a class-membership criterion or a definitional falsifier.
/// A criterion that is only necessary-plus-sufficient (not an iff) reports
/// Unknown when the two sides disagree.
struct Verdict {
  Status status = Status::Unknown;
  double margin = 0.0;                       // signed worst-case slack
  std::optional<Eigen::Index> witness_atom;  // present whenever status is Fails
  std::optional<Fn> witness_vector;          // violating vector, when one was built
  bool boundary = false;                     // slack within rounding of zero
  std::string note;
};

/// Relative slack below which an atom counts as an equality case rather than
/// a violation. Cauchy-Schwarz equality scenarios sit exactly there and must
/// not flap between Holds and Fails.
inline constexpr double kBoundaryRelTol = 1e-10;

enum class OpClass {
  Paranormal,
  MParanormal,
  StarParanormal,
  QuasiStarParanormal,
  AbsoluteK,
  NkQuasiStar,
  NStar,
  KQuasiStar,
  MParanormalAMeasurable,
};

/// An operator class together with its parameters. Only the fields the class
/// uses are meaningful: m for the M-paranormal bound, k_real for absolute-k,
/// n and k for the pencil orders of the quasi-* family.
struct ClassSpec {
  OpClass cls = OpClass::QuasiStarParanormal;
  double m = 1.0;
  double k_real = 1.0;
  int n = 1;
  int k = 1;
};

std::string class_name(const ClassSpec& spec);
std::string class_token(const ClassSpec& spec);
ClassSpec parse_class_token(const std::string& token);
std::vector<std::string> split_class_list(const std::string& csv);
std::vector<ClassSpec> parse_class_list(const std::string& csv);

/// Per-atom coefficients of the reduced scalar pencil
///   h(t) = a - (1+expo) t^expo b + expo t^(expo+1) c,   t > 0,
/// whose positivity for all t > 0 is the class condition at that atom.
/// The quadratic criteria are the expo = 1 case with c = 1.
struct CriterionCurve {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double expo = 1.0;

  double eval(double t) const;

  /// Analytic infimum over t > 0: a - b^{expo+1}/c^expo when b, c > 0
  /// (stationary point t* = b/c), a when b <= 0, -inf when c = 0 < b.
  double min_over_positive() const;

  /// Magnitude of the competing terms, for boundary classification.
  double scale() const;
};

/// Reduced per-atom curves for a class with a pencil parameter. For
/// QuasiStarParanormal the (n,k) = (1,1) curves are returned (the two
/// criteria are the same condition).
std::vector<CriterionCurve> criterion_curves(const WctOp& t, const ClassSpec& spec);

bool u_is_a_measurable(const WctOp& t, double tol = 1e-12);

/// Exact pointwise criterion: E(|u|^2) E(|w|^2) <= |E(uw)|^2 on G.
Verdict crit_quasi_star_paranormal(const WctOp& t, double tol = kBoundaryRelTol);

/// Two-sided moment test: Fails when the necessary condition fails, Holds
/// when the sufficient condition holds, Unknown otherwise.
Verdict crit_m_paranormal(const WctOp& t, double m, double tol = kBoundaryRelTol);

/// The M = 1 case of the M-paranormal test.
Verdict crit_paranormal(const WctOp& t, double tol = kBoundaryRelTol);

/// Exact criterion for block-constant u; errors otherwise.
Verdict crit_m_paranormal_ameasurable(const WctOp& t, double m,
                                      double tol = kBoundaryRelTol);

/// Two-sided test for the absolute-k class, upgraded to an exact
/// criterion when u is A-measurable.
Verdict crit_absolute_k(const WctOp& t, double k, double tol = kBoundaryRelTol);

/// Exact pencil criterion: alpha_mu >= 0 for all mu > 0, reduced per atom
/// to a c^n >= b^(n+1).
Verdict crit_nk_quasi_star(const WctOp& t, int n, int k, double tol = kBoundaryRelTol);

/// Exact n-*-paranormal pencil criterion, with the |E(uw)|^{-2} factor read as
/// chi_{S0}/|E(uw)|^2 and zero off S0.
Verdict crit_n_star(const WctOp& t, int n, double tol = kBoundaryRelTol);

/// The n = 1 specialization of the (n,k) pencil; agrees with
/// crit_nk_quasi_star(t, 1, k) by construction.
Verdict crit_k_quasi_star(const WctOp& t, int k, double tol = kBoundaryRelTol);

/// Dispatch on a ClassSpec. StarParanormal has no closed-form moment
/// criterion and yields Unknown; the definitional oracle decides it.
Verdict criterion_for(const WctOp& t, const ClassSpec& spec,
                      double tol = kBoundaryRelTol);

/// Which of (a) quasi-*-paranormal, (b) quasi-*-A-class, (d) A-class are
/// certified equivalent to the pointwise inequality (c), given the support
/// side conditions.
struct EquivalenceReport {
  Verdict criterion;      // the pointwise inequality on G; decides (a)
  bool g_is_x = false;    // G = X: (a) <=> (b) <=> (c)
  bool s_eu_is_x = false; // S(E(u)) = X, extra condition for (d)
  bool quasi_star_a_class_equivalent = false;
  bool a_class_equivalent = false;
};

EquivalenceReport crit_equivalences(const WctOp& t, double tol = kBoundaryRelTol);

}  // namespace wct
