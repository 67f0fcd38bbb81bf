#include "wctlab/operator.hpp"

#include <cmath>

namespace wct {

WctOp make_wct(MeasureSpace space, Partition part, Fn u, Fn w) {
  if (u.size() != space.size() || w.size() != space.size())
    throw std::invalid_argument("wct operator: weight length does not match atom count");
  CondData cond = cond_data(u, w, part, space);
  double bound = 0.0;
  for (Eigen::Index i = 0; i < space.size(); ++i)
    bound = std::max(bound, std::sqrt(cond.eu2[i] * cond.ew2[i]));
  return WctOp{std::move(space), std::move(part), std::move(u), std::move(w), std::move(cond),
               bound};
}

OpMatrix::OpMatrix(Eigen::MatrixXcd entries, MeasureSpace space)
    : m_(std::move(entries)), space_(std::move(space)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("operator matrix must be square");
  if (m_.rows() != space_.size())
    throw std::invalid_argument("operator matrix does not match atom count");
}

OpMatrix OpMatrix::adjoint() const {
  return OpMatrix(weighted_adjoint(m_, space_.mu()), space_);
}

Fn OpMatrix::apply(const Fn& f) const {
  if (f.size() != m_.cols()) throw std::invalid_argument("apply: dimension mismatch");
  return m_ * f;
}

Eigen::MatrixXcd weighted_adjoint(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu) {
  return mu.cwiseInverse().asDiagonal() * m.adjoint() * mu.asDiagonal();
}

Eigen::MatrixXcd symmetrized(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu) {
  const Eigen::VectorXd root = mu.cwiseSqrt();
  return root.asDiagonal() * m * root.cwiseInverse().asDiagonal();
}

double weighted_opnorm(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(symmetrized(m, mu));
  return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

double weighted_smin(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(symmetrized(m, mu));
  const auto& sv = svd.singularValues();
  return sv.size() ? sv[sv.size() - 1] : 0.0;
}

double weighted_min_eig(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu) {
  Eigen::MatrixXcd s = symmetrized(m, mu);
  s = 0.5 * (s + s.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

Eigen::MatrixXcd weighted_psd_power(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu,
                                    double p) {
  Eigen::MatrixXcd s = symmetrized(m, mu);
  s = 0.5 * (s + s.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  Eigen::VectorXd powed(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) powed[i] = std::pow(lam[i], p);
  const Eigen::MatrixXcd sp = es.eigenvectors() * powed.asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::VectorXd root = mu.cwiseSqrt();
  return root.cwiseInverse().asDiagonal() * sp * root.asDiagonal();
}

Eigen::MatrixXcd weighted_kernel_basis(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu,
                                       double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(symmetrized(m, mu), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = (sv.size() ? sv[0] : 0.0) * tol;
  Eigen::Index null_dim = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] <= cut) ++null_dim;
  Eigen::MatrixXcd basis(m.rows(), null_dim);
  const Eigen::VectorXd inv_root = mu.cwiseSqrt().cwiseInverse();
  for (Eigen::Index k = 0; k < null_dim; ++k)
    basis.col(k) = inv_root.asDiagonal() * svd.matrixV().col(sv.size() - null_dim + k);
  return basis;  // columns are mu-orthonormal
}

Eigen::MatrixXcd weighted_range_basis(const Eigen::MatrixXcd& m, const Eigen::VectorXd& mu,
                                      double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(symmetrized(m, mu), Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = (sv.size() ? sv[0] : 0.0) * tol;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++rank;
  const Eigen::VectorXd inv_root = mu.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXcd basis(m.rows(), rank);
  for (Eigen::Index k = 0; k < rank; ++k)
    basis.col(k) = inv_root.asDiagonal() * svd.matrixU().col(k);
  return basis;
}

double principal_cosine(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                        const Eigen::VectorXd& mu) {
  if (a.cols() == 0 || b.cols() == 0) return 0.0;
  const Eigen::MatrixXcd gram = a.adjoint() * mu.asDiagonal() * b;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gram);
  return svd.singularValues()[0];
}

Fn apply(const WctOp& t, const Fn& f) {
  if (f.size() != t.space.size()) throw std::invalid_argument("apply: dimension mismatch");
  return t.w.cwiseProduct(cond_exp(Fn(t.u.cwiseProduct(f)), t.part, t.space));
}

OpMatrix to_matrix(const WctOp& t) {
  const Eigen::Index n = t.space.size();
  Eigen::MatrixXcd m(n, n);
  Fn e = Fn::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    m.col(j) = wct::apply(t, e);  // qualified: keeps std::apply out of ADL
    e[j] = 0.0;
  }
  return OpMatrix(std::move(m), t.space);
}

WctOp adjoint(const WctOp& t) {
  return make_wct(t.space, t.part, Fn(t.w.conjugate()), Fn(t.u.conjugate()));
}

double op_norm(const WctOp& t) { return t.bound; }

Fn power_apply(const WctOp& t, int n, const Fn& f) {
  if (n < 1) throw std::invalid_argument("power_apply: exponent must be >= 1");
  Fn out = apply(t, f);
  for (int p = 1; p < n; ++p) out = out.cwiseProduct(t.cond.euw).eval();
  return out;
}

namespace {

OpMatrix matrix_of_scaled_map(const WctOp& t, const RealFn& factor, const Fn& outer) {
  // Materializes f -> factor . outer . E(u f) column by column.
  const Eigen::Index n = t.space.size();
  Eigen::MatrixXcd m(n, n);
  Fn e = Fn::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Fn euf = cond_exp(Fn(t.u.cwiseProduct(e)), t.part, t.space);
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = factor[i] * outer[i] * euf[i];
    e[j] = 0.0;
  }
  return OpMatrix(std::move(m), t.space);
}

}  // namespace

PolarParts polar(const WctOp& t) {
  const Eigen::Index n = t.space.size();
  RealFn abs_factor(n), iso_factor(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const size_t si = static_cast<size_t>(i);
    abs_factor[i] = t.cond.s[si] ? std::sqrt(t.cond.ew2[i] / t.cond.eu2[i]) : 0.0;
    iso_factor[i] = (t.cond.s[si] && t.cond.g[si])
                        ? 1.0 / std::sqrt(t.cond.ew2[i] * t.cond.eu2[i])
                        : 0.0;
  }
  OpMatrix abs = matrix_of_scaled_map(t, abs_factor, Fn(t.u.conjugate()));
  OpMatrix iso = matrix_of_scaled_map(t, iso_factor, t.w);
  return PolarParts{std::move(iso), std::move(abs)};
}

OpMatrix aluthge(const WctOp& t) {
  const OpMatrix tm = to_matrix(t);
  const Eigen::MatrixXcd tstar = weighted_adjoint(tm.entries(), t.space.mu());
  const Eigen::MatrixXcd half =
      weighted_psd_power(tstar * tm.entries(), t.space.mu(), 0.25);  // |T|^{1/2}
  const OpMatrix u = polar(t).partial_isometry;
  return OpMatrix(half * u.entries() * half, t.space);
}

}  // namespace wct
