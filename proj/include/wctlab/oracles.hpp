#pragma once

#include <cstdint>

#include "wctlab/criteria.hpp"

namespace wct {

/// Controls the random unit-vector falsifiers. `focus` lists atom groups
/// (typically partition blocks) that receive targeted samples; violations of
/// the conditional-expectation classes concentrate on single blocks.
struct OracleConfig {
  int samples = 2000;
  std::uint64_t seed = 0;
  double tol = 1e-10;     // relative violation threshold
  int ascent_steps = 50;  // coordinate-ascent refinement of the worst sample
  std::vector<std::vector<Eigen::Index>> focus;
};

/// The two sides of the literal class inequality at a sample; the inequality
/// reads lhs <= rhs, so positive lhs - rhs is a violation.
struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

InequalitySides inequality_sides(const OpMatrix& mx, const ClassSpec& spec, const Fn& x);

/// Definition-level falsifiers. A Fails verdict carries a violating unit
/// vector; Holds means no counterexample was found in cfg.samples draws,
/// which is evidence rather than proof.
Verdict oracle_paranormal(const OpMatrix& mx, const OracleConfig& cfg);
Verdict oracle_m_paranormal(const OpMatrix& mx, double m, const OracleConfig& cfg);
Verdict oracle_star_paranormal(const OpMatrix& mx, const OracleConfig& cfg);
Verdict oracle_quasi_star_paranormal(const OpMatrix& mx, const OracleConfig& cfg);
Verdict oracle_absolute_k(const OpMatrix& mx, double k, const OracleConfig& cfg);
Verdict oracle_nk_quasi_star(const OpMatrix& mx, int n, int k, const OracleConfig& cfg);
Verdict oracle_for(const OpMatrix& mx, const ClassSpec& spec, const OracleConfig& cfg);

/// Constructive counterpart of a criterion failure: searches for a violating
/// vector supported on the block of the failing atom, where T restricts to a
/// rank-one map. `vector` is empty when the search did not clear `tol`; the
/// note then explains, so unresolved cases are visible, never dropped.
struct WitnessSearch {
  std::optional<Fn> vector;
  double violation = 0.0;  // relative (lhs - rhs) / max(lhs, rhs)
  InequalitySides sides;
  std::string note;
};

WitnessSearch block_witness(const WctOp& t, Eigen::Index atom, const ClassSpec& cls,
                            double tol = 1e-10);

}  // namespace wct
