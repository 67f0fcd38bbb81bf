#pragma once

#include <json.hpp>

#include "wctlab/oracles.hpp"
#include "wctlab/recognizer.hpp"
#include "wctlab/scenario.hpp"
#include "wctlab/spectral.hpp"

namespace wct {

/// A JSON report plus whether it contains a violation or disagreement
/// (drives the CLI exit code).
struct Report {
  nlohmann::ordered_json json;
  bool finding = false;
};

nlohmann::ordered_json complex_json(Complex z);
nlohmann::ordered_json fn_json(const Fn& f);
nlohmann::ordered_json matrix_json(const Eigen::MatrixXcd& m);
nlohmann::ordered_json complex_set_json(const std::vector<Complex>& values);
nlohmann::ordered_json params_json(const ClassSpec& spec);
nlohmann::ordered_json verdict_json(const Verdict& v, const MeasureSpace* names);
nlohmann::ordered_json scenario_json(const Scenario& s);

/// `wctlab check`: criterion verdicts for the requested classes.
Report check_report(const Scenario& s, const std::vector<ClassSpec>& classes, double tol);

/// `wctlab spectrum`: spectra, Riesz idempotents at nonzero isolated points
/// and the kernel-structure checks.
Report spectrum_report(const Scenario& s);

/// `wctlab polar`: norm, polar decomposition and Aluthge transform with
/// their internal cross-check defects.
Report polar_report(const Scenario& s);

/// `wctlab oracle`: one falsifier run.
Report oracle_report(const Scenario& s, const ClassSpec& spec, const OracleConfig& cfg);

/// `wctlab recognize`.
Report recognize_report(const OpMatrix& mx);

}  // namespace wct
