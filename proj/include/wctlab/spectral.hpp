#pragma once

#include "wctlab/criteria.hpp"

namespace wct {

/// Relative tolerance for spectral clustering and membership decisions.
inline constexpr double kSpectralRelTol = 1e-8;

/// Spectrum via the essential-range characterization, cross-checked against
/// the dense eigensolver. On a finite atomic space the essential range of
/// E(uw) is its set of block values.
struct SpectrumReport {
  std::vector<Complex> analytic;      // block values of E(uw), plus 0 when T is singular
  std::vector<Complex> numeric;       // eigenvalues of to_matrix(T), clustered
  std::vector<Complex> point;         // sigma_p
  std::vector<Complex> joint_point;   // sigma_jp
  std::vector<Complex> approx;        // sigma_a
  std::vector<Complex> joint_approx;  // sigma_ja
  bool s_cap_g_is_x = false;
  bool singular = false;
  bool zero_block_value = false;       // E(uw) vanishes on some block
  bool agreement = false;              // analytic matches numeric as a set
  double set_distance = 0.0;           // Hausdorff distance analytic <-> numeric
  bool zero_membership_mismatch = false;  // S&G = X yet 0-membership differs between
                                          // the block values and the matrix; a logged
                                          // finding, not an assertion failure
};

SpectrumReport spectrum(const WctOp& t);

std::vector<Complex> point_spectrum(const WctOp& t);
std::vector<Complex> joint_point_spectrum(const WctOp& t);

struct ApproxSpectra {
  std::vector<Complex> approx;        // sigma_a
  std::vector<Complex> joint_approx;  // sigma_ja
};
ApproxSpectra approx_spectra(const WctOp& t);

/// Riesz idempotent at an isolated spectral point mu, by trapezoidal
/// quadrature of the resolvent over the circle of the given radius.
struct RieszData {
  Complex mu;
  OpMatrix projector;
  int contour_points = 0;
  double idempotency_defect = 0.0;   // ||E^2 - E|| (weighted)
  double self_adjoint_defect = 0.0;  // ||E - E*|| (weighted)
};

RieszData riesz_idempotent(const WctOp& t, Complex mu, double radius, int points);

/// Half the distance from mu to the nearest other spectral point. Points
/// within `same_tol` of mu count as mu itself, not as neighbors.
double isolation_radius(const std::vector<Complex>& spectrum, Complex mu,
                        double same_tol = 0.0);

/// Simple-pole test at a nonzero isolated spectral point: no Jordan block,
/// i.e. ker(T - mu) = ker(T - mu)^2 by rank comparison.
Verdict simple_pole_check(const WctOp& t, Complex mu);

/// Matrix-level version of the same rank comparison, usable on non-WCT
/// control matrices.
bool kernel_stabilizes_at(const OpMatrix& m, Complex mu, double tol = 1e-10);

/// Self-adjointness of the Riesz idempotent computed two ways that must
/// agree: the quadrature defect and the kernel inclusion N(T - mu) within
/// N(T* - conj(mu)).
struct RieszSelfAdjointness {
  RieszData data;  // aggregate-initialized; OpMatrix has no default state
  bool self_adjoint = false;
  bool kernel_included = false;
  double inclusion_residual = 0.0;
  Verdict equivalence;  // Holds when the two sides agree
};

RieszSelfAdjointness riesz_self_adjointness(const WctOp& t, Complex mu, int points = 64);

/// Kernel-structure consequences of the pencil hypothesis, evaluated
/// regardless of the hypothesis with its status attached.
struct KernelChecks {
  struct NkHypothesis {
    int n = 1, k = 1;
    bool holds = false;
  };
  std::vector<NkHypothesis> hypothesis;  // (n,k) in {1,2}^2
  bool hypothesis_all = false;

  struct EigenvalueEntry {
    Complex lambda;
    Eigen::Index eigenspace_dim = 0;
    bool inclusion_ok = false;      // (a) ker(T-l) within ker(T*-conj(l))
    double inclusion_residual = 0.0;
    bool stabilization_ok = false;  // (d) ker(T-l) = ker(T-l)^2
  };
  std::vector<EigenvalueEntry> eigenvalues;  // nonzero eigenvalues

  double orthogonality_max = 0.0;  // (c) max |<x,y>_mu| across distinct eigenspaces
  bool orthogonality_ok = false;

  struct PowerKernel {
    int k = 1;
    double intersection_cosine = 0.0;  // range(T^{k+1}) against ker T
    bool ok = false;                   // ker T^{k+1} = ker T^{k+2}
  };
  std::vector<PowerKernel> power_kernels;  // k = 1, 2

  bool sigma_ja_matches_sigma_a = false;  // nonzero parts coincide
  bool all_pass = false;
};

KernelChecks kernel_consequences(const WctOp& t);

}  // namespace wct
