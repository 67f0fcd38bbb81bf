#include "wctlab/recognizer.hpp"

#include <cmath>
#include <numeric>

namespace wct {

OpMatrix cond_exp_matrix(const MeasureSpace& x, const Partition& a, const Fn& w) {
  if (w.size() != x.size()) throw std::invalid_argument("weight length does not match atom count");
  const Eigen::Index n = x.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& block : a.blocks()) {
    double mass = 0.0;
    for (Eigen::Index i : block) mass += x.mu()[i];
    for (Eigen::Index i : block)
      for (Eigen::Index j : block) m(i, j) = w[j] * x.mu()[j] / mass;
  }
  return OpMatrix(std::move(m), x);
}

std::vector<ConditionVerdict> recognition_conditions(const OpMatrix& mx, double tol) {
  const Eigen::MatrixXcd& m = mx.entries();
  const Eigen::Index n = mx.dim();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  std::vector<ConditionVerdict> out;

  {
    // f >= 0 implies Tf >= 0, checked on the coordinate basis; by linearity
    // that is entrywise nonnegativity.
    double defect = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        defect = std::max(defect, std::max(-m(i, j).real(), std::abs(m(i, j).imag())));
    out.push_back({"positivity", defect <= tol * scale, defect, "entrywise lattice positivity"});
  }
  out.push_back({"order-continuity", true, 0.0, "automatic in finite dimension"});
  {
    const double defect = weighted_opnorm(m * m - m, mx.space().mu());
    out.push_back({"T2=T", defect <= tol * std::max(1.0, scale * scale), defect, ""});
  }
  {
    const Fn ones = Fn::Constant(n, 1.0);
    const double defect = (m * ones - ones).cwiseAbs().maxCoeff();
    out.push_back({"T1=1", defect <= tol * scale, defect, ""});
  }
  {
    // Range sublattice: the numeric range must be closed under pointwise
    // modulus, checked on a spanning set of range vectors.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cut = (sv.size() ? sv[0] : 0.0) * 1e-12;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > cut) ++rank;
    const Eigen::MatrixXcd q = svd.matrixU().leftCols(rank);

    std::vector<Fn> span;
    for (Eigen::Index j = 0; j < rank; ++j) span.push_back(q.col(j));
    for (Eigen::Index a = 0; a < rank; ++a)
      for (Eigen::Index b = a + 1; b < rank; ++b) {
        span.push_back(Fn(q.col(a) + q.col(b)));
        span.push_back(Fn(q.col(a) - q.col(b)));
        span.push_back(Fn(q.col(a) + Complex(0, 1) * q.col(b)));
      }
    double defect = 0.0;
    for (const Fn& v : span) {
      Fn mod(n);
      for (Eigen::Index i = 0; i < n; ++i) mod[i] = std::abs(v[i]);
      const Fn residual = mod - q * (q.adjoint() * mod);
      defect = std::max(defect, residual.norm() / std::max(mod.norm(), 1e-30));
    }
    out.push_back({"range-sublattice", defect <= tol, defect,
                   "range closed under pointwise modulus"});
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<Eigen::Index> parent;
  explicit UnionFind(Eigen::Index n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  Eigen::Index find(Eigen::Index i) {
    while (parent[static_cast<size_t>(i)] != i) {
      parent[static_cast<size_t>(i)] = parent[static_cast<size_t>(parent[static_cast<size_t>(i)])];
      i = parent[static_cast<size_t>(i)];
    }
    return i;
  }
  void unite(Eigen::Index a, Eigen::Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  }
};

bool rows_proportional(const Eigen::RowVectorXcd& a, const Eigen::RowVectorXcd& b, double tol) {
  const double na = a.norm(), nb = b.norm();
  if (na <= tol || nb <= tol) return na <= tol && nb <= tol;
  // Cauchy-Schwarz equality test: |<a,b>| = |a||b| iff proportional.
  const double ip = std::abs((a * b.adjoint())(0, 0));
  return na * nb - ip <= tol * na * nb;
}

}  // namespace

RecognitionResult recover_structure(const OpMatrix& mx, double tol) {
  RecognitionResult result;
  result.conditions = recognition_conditions(mx, tol);
  for (const auto& cond : result.conditions)
    if (!cond.pass) {
      result.failed_condition = cond.name;
      return result;
    }

  const Eigen::MatrixXcd& m = mx.entries();
  const Eigen::Index n = mx.dim();
  const Eigen::VectorXd& mu = mx.space().mu();

  // Atoms whose rows cannot be separated by the range functions share a
  // block; blocks are connected components of the proportionality relation.
  UnionFind uf(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (rows_proportional(m.row(i), m.row(j), 1e-10)) uf.unite(i, j);

  std::vector<std::vector<Eigen::Index>> groups(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) groups[static_cast<size_t>(uf.find(i))].push_back(i);
  std::vector<std::vector<Eigen::Index>> blocks;
  for (auto& g : groups)
    if (!g.empty()) blocks.push_back(std::move(g));
  Partition part(std::move(blocks), n);

  // w_j from row extraction: (T e_j) restricted to j's block is w_j mu_j / mu(B).
  Fn weight(n);
  for (const auto& block : part.blocks()) {
    double mass = 0.0;
    for (Eigen::Index i : block) mass += mu[i];
    const Eigen::Index rep = block.front();
    for (Eigen::Index j : block) weight[j] = m(rep, j) * mass / mu[j];
    // Normalize so E(w) = 1 on the block (already so when T1 = 1 held exactly).
    Complex ew = 0.0;
    for (Eigen::Index j : block) ew += weight[j] * mu[j];
    ew /= mass;
    if (std::abs(ew) < 0.5) {
      result.failed_condition = "rebuild";
      result.conditions.push_back(
          {"rebuild", false, 1.0, "degenerate block weight; no E(w) = 1 normalization"});
      return result;
    }
    for (Eigen::Index j : block) weight[j] /= ew;
  }

  const OpMatrix rebuilt = cond_exp_matrix(mx.space(), part, weight);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  result.rebuild_defect = (rebuilt.entries() - m).cwiseAbs().maxCoeff() / scale;

  if (result.rebuild_defect > tol) {
    // Conditions passed but the matrix is not of conditional-expectation
    // form at this tolerance: reported, never silently accepted.
    result.failed_condition = "rebuild";
    result.conditions.push_back({"rebuild", false, result.rebuild_defect, ""});
    return result;
  }

  result.is_wct_form = true;
  result.partition = std::move(part);
  result.weight = std::move(weight);
  result.conditions.push_back({"rebuild", true, result.rebuild_defect, ""});
  return result;
}

}  // namespace wct
