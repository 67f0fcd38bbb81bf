#pragma once

#include <string>

#include "wctlab/operator.hpp"

namespace wct {

/// A complete problem instance: space, sub-sigma-algebra and the weight pair.
struct Scenario {
  MeasureSpace space;
  Partition part;
  Fn u, w;
  std::string label;
};

/// Scenario file format:
///   {"atoms": ["x1", ...], "mu": [0.5, ...], "partition": [["x1","x2"], ...],
///    "u": [[re, im], ...], "w": [[re, im], ...], "label": "..."}
/// Rejects non-positive mu, ragged arrays, unknown atom ids and partitions
/// that fail to cover the atoms exactly. `label` is optional.
Scenario parse_scenario(const std::string& json_text);
std::string serialize_scenario(const Scenario& s);

WctOp make_op(const Scenario& s);

/// Matrix file format: {"atoms": [...], "mu": [...], "matrix": [[[re,im], ...], ...]}
/// with row-major entries.
OpMatrix parse_matrix(const std::string& json_text);
std::string serialize_matrix(const OpMatrix& m);

// Canonical fixtures used across tests and docs.
Scenario scenario_a();  // mu = (1/2,1/2), trivial partition, u = (1,2), w = (2,1)
Scenario scenario_b();  // u = w = 1 on the same space: T = E
Scenario scenario_c(Eigen::Index n_atoms = 3);  // singleton partition: T = M_{uw}

}  // namespace wct
