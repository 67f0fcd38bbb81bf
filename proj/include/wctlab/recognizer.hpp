#pragma once

#include <optional>

#include "wctlab/operator.hpp"

namespace wct {

/// One recognizer condition with its measured defect. Positivity here is
/// lattice positivity (entrywise nonnegativity in atom coordinates), not
/// positive semidefiniteness. Order continuity is automatic in finite
/// dimension and recorded as such rather than tested.
struct ConditionVerdict {
  std::string name;
  bool pass = false;
  double defect = 0.0;
  std::string note;
};

std::vector<ConditionVerdict> recognition_conditions(const OpMatrix& mx, double tol = 1e-10);

struct RecognitionResult {
  bool is_wct_form = false;
  std::optional<Partition> partition;
  std::optional<Fn> weight;
  std::string failed_condition;  // empty when recognized
  double rebuild_defect = 0.0;
  std::vector<ConditionVerdict> conditions;
};

/// Decide whether mx is f -> E(wf) for some partition and weight with
/// blockwise E(w) = 1, and recover both. A matrix that passes every
/// recognition condition but does not rebuild within tol is reported as
/// not-of-WCT-form with failed_condition "rebuild".
RecognitionResult recover_structure(const OpMatrix& mx, double tol = 1e-10);

/// The matrix of f -> E(wf) on (x, a); the rebuild target.
OpMatrix cond_exp_matrix(const MeasureSpace& x, const Partition& a, const Fn& w);

}  // namespace wct
