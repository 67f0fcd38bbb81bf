#include "wctlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace wct {

Eigen::Index set_count(const AtomSet& s) {
  return static_cast<Eigen::Index>(std::count(s.begin(), s.end(), true));
}

bool set_all(const AtomSet& s) {
  return std::all_of(s.begin(), s.end(), [](bool b) { return b; });
}

bool set_subset(const AtomSet& a, const AtomSet& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

AtomSet set_intersect(const AtomSet& a, const AtomSet& b) {
  AtomSet out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b.at(i);
  return out;
}

MeasureSpace::MeasureSpace(std::vector<std::string> atoms, Eigen::VectorXd mu)
    : atoms_(std::move(atoms)), mu_(std::move(mu)) {
  if (static_cast<Eigen::Index>(atoms_.size()) != mu_.size())
    throw std::invalid_argument("measure space: atom and weight counts differ");
  if (mu_.size() == 0) throw std::invalid_argument("measure space: no atoms");
  for (Eigen::Index i = 0; i < mu_.size(); ++i)
    if (!(mu_[i] > 0.0) || !std::isfinite(mu_[i]))
      throw std::invalid_argument("measure space: weights must be strictly positive");
  std::unordered_set<std::string> seen;
  for (const auto& a : atoms_)
    if (!seen.insert(a).second)
      throw std::invalid_argument("measure space: duplicate atom id '" + a + "'");
}

Eigen::Index MeasureSpace::index_of(const std::string& atom) const {
  for (size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i] == atom) return static_cast<Eigen::Index>(i);
  return -1;
}

bool MeasureSpace::operator==(const MeasureSpace& other) const {
  return atoms_ == other.atoms_ && mu_ == other.mu_;
}

Partition::Partition(std::vector<std::vector<Eigen::Index>> blocks, Eigen::Index atom_count)
    : blocks_(std::move(blocks)), block_of_(static_cast<size_t>(atom_count), -1) {
  if (atom_count <= 0) throw std::invalid_argument("partition: empty atom set");
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("partition: empty block");
    std::sort(b.begin(), b.end());
    for (Eigen::Index i : b) {
      if (i < 0 || i >= atom_count) throw std::invalid_argument("partition: atom index out of range");
      if (block_of_[static_cast<size_t>(i)] != -1)
        throw std::invalid_argument("partition: blocks overlap");
      block_of_[static_cast<size_t>(i)] = 0;  // provisional; rewritten below
    }
  }
  for (Eigen::Index i = 0; i < atom_count; ++i)
    if (block_of_[static_cast<size_t>(i)] == -1)
      throw std::invalid_argument("partition: blocks do not cover every atom");
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (size_t bi = 0; bi < blocks_.size(); ++bi)
    for (Eigen::Index i : blocks_[bi]) block_of_[static_cast<size_t>(i)] = static_cast<Eigen::Index>(bi);
}

Partition Partition::trivial(Eigen::Index atom_count) {
  std::vector<Eigen::Index> all(static_cast<size_t>(atom_count));
  for (Eigen::Index i = 0; i < atom_count; ++i) all[static_cast<size_t>(i)] = i;
  return Partition({all}, atom_count);
}

Partition Partition::singletons(Eigen::Index atom_count) {
  std::vector<std::vector<Eigen::Index>> blocks;
  blocks.reserve(static_cast<size_t>(atom_count));
  for (Eigen::Index i = 0; i < atom_count; ++i) blocks.push_back({i});
  return Partition(std::move(blocks), atom_count);
}

bool Partition::operator==(const Partition& other) const {
  return blocks_ == other.blocks_;  // canonical form makes this exact
}

namespace {

void check_dims(Eigen::Index fn_size, const Partition& a, const MeasureSpace& x) {
  if (fn_size != x.size())
    throw std::invalid_argument("function length does not match atom count");
  if (a.atom_count() != x.size())
    throw std::invalid_argument("partition does not match atom count");
}

}  // namespace

namespace {

// Block-constant inputs must be exact fixed points (idempotence holds
// exactly), so constants short-circuit the average.
template <typename Vec>
Vec blockwise_average(const Vec& f, const Partition& a, const MeasureSpace& x) {
  Vec out(f.size());
  for (const auto& block : a.blocks()) {
    const auto first = f[block.front()];
    bool constant = true;
    for (Eigen::Index i : block)
      if (f[i] != first) {
        constant = false;
        break;
      }
    if (constant) {
      for (Eigen::Index i : block) out[i] = first;
      continue;
    }
    typename Vec::Scalar num = 0.0;
    double mass = 0.0;
    for (Eigen::Index i : block) {
      num += f[i] * x.mu()[i];
      mass += x.mu()[i];
    }
    const auto avg = num / mass;
    for (Eigen::Index i : block) out[i] = avg;
  }
  return out;
}

}  // namespace

Fn cond_exp(const Fn& f, const Partition& a, const MeasureSpace& x) {
  check_dims(f.size(), a, x);
  return blockwise_average(f, a, x);
}

RealFn cond_exp(const RealFn& f, const Partition& a, const MeasureSpace& x) {
  check_dims(f.size(), a, x);
  return blockwise_average(f, a, x);
}

Complex inner(const Fn& f, const Fn& g, const MeasureSpace& x) {
  if (f.size() != x.size() || g.size() != x.size())
    throw std::invalid_argument("inner: function length does not match atom count");
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) acc += f[i] * std::conj(g[i]) * x.mu()[i];
  return acc;
}

double weighted_norm(const Fn& f, const MeasureSpace& x) {
  if (f.size() != x.size())
    throw std::invalid_argument("norm: function length does not match atom count");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) acc += std::norm(f[i]) * x.mu()[i];
  return std::sqrt(acc);
}

AtomSet support(const Fn& f, double tol) {
  if (tol < 0.0) throw std::invalid_argument("support: negative tolerance");
  AtomSet out(static_cast<size_t>(f.size()));
  for (Eigen::Index i = 0; i < f.size(); ++i) out[static_cast<size_t>(i)] = std::abs(f[i]) > tol;
  return out;
}

AtomSet support(const RealFn& f, double tol) {
  if (tol < 0.0) throw std::invalid_argument("support: negative tolerance");
  AtomSet out(static_cast<size_t>(f.size()));
  for (Eigen::Index i = 0; i < f.size(); ++i) out[static_cast<size_t>(i)] = std::abs(f[i]) > tol;
  return out;
}

double default_support_tol(const RealFn& f) {
  const double m = f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
  return kSupportRelTol * m;
}

CondData cond_data(const Fn& u, const Fn& w, const Partition& a, const MeasureSpace& x,
                   double tol) {
  check_dims(u.size(), a, x);
  if (w.size() != x.size())
    throw std::invalid_argument("function length does not match atom count");

  CondData cd;
  cd.eu2 = cond_exp(RealFn(u.cwiseAbs2().real()), a, x);
  cd.ew2 = cond_exp(RealFn(w.cwiseAbs2().real()), a, x);
  cd.euw = cond_exp(Fn(u.cwiseProduct(w)), a, x);

  const RealFn abs_euw = cd.euw.cwiseAbs();
  cd.s = support(cd.eu2, tol >= 0.0 ? tol : default_support_tol(cd.eu2));
  cd.g = support(cd.ew2, tol >= 0.0 ? tol : default_support_tol(cd.ew2));
  cd.s0 = support(abs_euw, tol >= 0.0 ? tol : default_support_tol(abs_euw));
  // S0 is contained in S and G up to rounding of the thresholds; enforce it.
  cd.s0 = set_intersect(cd.s0, set_intersect(cd.s, cd.g));

  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double lhs = std::norm(cd.euw[i]);
    const double rhs = cd.eu2[i] * cd.ew2[i];
    if (lhs > rhs + 1e-10 * std::max(1.0, rhs))
      throw std::logic_error("conditional Cauchy-Schwarz violated; inconsistent moments");
  }
  return cd;
}

}  // namespace wct
