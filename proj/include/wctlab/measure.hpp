#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace wct {

using Complex = std::complex<double>;

/// A measurable function on a finite atomic space: one complex value per atom.
using Fn = Eigen::VectorXcd;

/// A real-valued function (conditional moments E(|u|^2), E(|w|^2) are real).
using RealFn = Eigen::VectorXd;

/// A set of atoms, one membership flag per atom index.
using AtomSet = std::vector<bool>;

Eigen::Index set_count(const AtomSet& s);
bool set_all(const AtomSet& s);
bool set_subset(const AtomSet& a, const AtomSet& b);
AtomSet set_intersect(const AtomSet& a, const AtomSet& b);

/// Relative tolerance used when a support is computed without an explicit one.
inline constexpr double kSupportRelTol = 1e-12;

/// Finite atomic measure space: named atoms with strictly positive weights.
class MeasureSpace {
public:
  MeasureSpace(std::vector<std::string> atoms, Eigen::VectorXd mu);

  Eigen::Index size() const { return mu_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const Eigen::VectorXd& mu() const { return mu_; }
  double total_mass() const { return mu_.sum(); }

  /// Index of an atom id, or -1 when unknown.
  Eigen::Index index_of(const std::string& atom) const;

  bool operator==(const MeasureSpace& other) const;

private:
  std::vector<std::string> atoms_;
  Eigen::VectorXd mu_;
};

/// A sub-sigma-algebra of a finite atomic space, represented as the partition
/// of the atoms into blocks. Blocks are kept in canonical order: each block
/// sorted ascending, blocks ordered by their first atom.
class Partition {
public:
  Partition(std::vector<std::vector<Eigen::Index>> blocks, Eigen::Index atom_count);

  static Partition trivial(Eigen::Index atom_count);     // one block
  static Partition singletons(Eigen::Index atom_count);  // A = Sigma

  const std::vector<std::vector<Eigen::Index>>& blocks() const { return blocks_; }
  Eigen::Index block_count() const { return static_cast<Eigen::Index>(blocks_.size()); }
  Eigen::Index atom_count() const { return static_cast<Eigen::Index>(block_of_.size()); }
  Eigen::Index block_of(Eigen::Index atom) const { return block_of_.at(static_cast<size_t>(atom)); }

  bool operator==(const Partition& other) const;

private:
  std::vector<std::vector<Eigen::Index>> blocks_;
  std::vector<Eigen::Index> block_of_;
};

/// Cached conditional moments of a weight pair (u, w) and their supports.
struct CondData {
  RealFn eu2;  // E(|u|^2), block-constant, >= 0
  RealFn ew2;  // E(|w|^2)
  Fn euw;      // E(u w)
  AtomSet s;   // S(E(|u|^2))
  AtomSet g;   // S(E(|w|^2))
  AtomSet s0;  // S(E(uw)), contained in s & g
};

/// Conditional expectation: blockwise mu-weighted average of f.
Fn cond_exp(const Fn& f, const Partition& a, const MeasureSpace& x);
RealFn cond_exp(const RealFn& f, const Partition& a, const MeasureSpace& x);

/// mu-weighted L2 inner product, linear in f and conjugate-linear in g.
Complex inner(const Fn& f, const Fn& g, const MeasureSpace& x);

/// mu-weighted L2 norm.
double weighted_norm(const Fn& f, const MeasureSpace& x);

/// Atoms where |f| exceeds an absolute tolerance.
AtomSet support(const Fn& f, double tol);
AtomSet support(const RealFn& f, double tol);

/// Default absolute support tolerance for a function: kSupportRelTol * max|f|.
double default_support_tol(const RealFn& f);

/// All conditional moments of (u, w). A negative tol requests the default
/// relative tolerance per moment. Verifies the conditional Cauchy-Schwarz
/// bound |E(uw)|^2 <= E(|u|^2) E(|w|^2) and S0 within S & G.
CondData cond_data(const Fn& u, const Fn& w, const Partition& a, const MeasureSpace& x,
                   double tol = -1.0);

}  // namespace wct
