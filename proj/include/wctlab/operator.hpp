#pragma once

#include <Eigen/Dense>

#include "wctlab/measure.hpp"

namespace wct {

/// The weighted conditional type operator T = M_w E M_u on a finite space,
/// with its conditional moments cached at construction.
struct WctOp {
  MeasureSpace space;
  Partition part;
  Fn u, w;
  CondData cond;
  double bound;  // sup over atoms of sqrt(E(|u|^2) E(|w|^2)); equals ||T||
};

WctOp make_wct(MeasureSpace space, Partition part, Fn u, Fn w);

/// Dense matrix acting on coordinate vectors of Fn. Carries the measure so
/// that adjoints, norms and factorizations are taken with respect to the
/// mu-weighted inner product, never the plain Euclidean one.
class OpMatrix {
public:
  OpMatrix(Eigen::MatrixXcd entries, MeasureSpace space);

  const Eigen::MatrixXcd& entries() const { return m_; }
  const MeasureSpace& space() const { return space_; }
  Eigen::Index dim() const { return m_.rows(); }

  /// mu-weighted adjoint: D^{-1} M^H D with D = diag(mu).
  OpMatrix adjoint() const;

  Fn apply(const Fn& f) const;

private:
  Eigen::MatrixXcd m_;
  MeasureSpace space_;
};

// -- weighted-geometry helpers ----------------------------------------------
// The similarity S = D^{1/2} M D^{-1/2} carries the mu-weighted geometry to
// the standard one, so standard-inner-product solvers apply to S.

Eigen::MatrixXcd weighted_adjoint(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu);
Eigen::MatrixXcd symmetrized(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu);

/// Largest / smallest singular value with respect to the weighted norm.
double weighted_opnorm(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu);
double weighted_smin(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu);

/// Smallest eigenvalue of a weighted-Hermitian matrix.
double weighted_min_eig(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu);

/// Spectral power of a weighted-PSD matrix; eigenvalues are clamped at zero
/// before raising to p, so p in (0,1) is safe on slightly negative rounding.
Eigen::MatrixXcd weighted_psd_power(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu, double p);

/// mu-orthonormal basis of the kernel (columns); empty when nonsingular.
/// The rank cut is at `tol` relative to the largest singular value.
Eigen::MatrixXcd weighted_kernel_basis(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu,
                                       double tol = 1e-10);

/// mu-orthonormal basis of the range (columns).
Eigen::MatrixXcd weighted_range_basis(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu,
                                      double tol = 1e-10);

/// Largest principal cosine between two mu-orthonormal column spans;
/// 1 means the subspaces intersect.
double principal_cosine(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                        const Eigen::VectorXd& mu);

// -- operator algebra --------------------------------------------------------

/// (Tf) = w . E(u f).
Fn apply(const WctOp& t, const Fn& f);

/// Column j is T e_j.
OpMatrix to_matrix(const WctOp& t);

/// T* = M_{conj(u)} E M_{conj(w)}: the same structure with swapped weights.
WctOp adjoint(const WctOp& t);

/// Closed-form norm: max over atoms of sqrt(E(|u|^2) E(|w|^2)).
double op_norm(const WctOp& t);

/// T^n f = (E(uw))^{n-1} w E(u f), n >= 1.
Fn power_apply(const WctOp& t, int n, const Fn& f);

struct PolarParts {
  OpMatrix partial_isometry;  // U
  OpMatrix abs;               // |T|
};

/// Closed-form polar decomposition T = U |T|:
///   |T| f = (E|w|^2 / E|u|^2)^{1/2} chi_S conj(u) E(u f)
///   U f   = (chi_{S&G} / (E|w|^2 E|u|^2))^{1/2} w E(u f)
/// with the 0/0 := 0 convention off the supports.
PolarParts polar(const WctOp& t);

/// Aluthge transform |T|^{1/2} U |T|^{1/2}. |T|^{1/2} is computed numerically
/// as (T*T)^{1/4} so the closed-form |T| has an independent cross-check.
OpMatrix aluthge(const WctOp& t);

}  // namespace wct
