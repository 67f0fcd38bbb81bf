#pragma once

#include "wctlab/report.hpp"

namespace wct {

/// Random scenario campaign: generators, class list and oracle budget.
/// Generation is deterministic under (seed, index).
struct CampaignConfig {
  int count = 100;
  std::uint64_t seed = 0;
  int max_atoms = 8;
  int max_blocks = 4;
  std::vector<std::string> generators = {"generic", "cauchy_schwarz_equality", "a_measurable_u",
                                         "zero_w_block", "nilpotent_like"};
  std::vector<ClassSpec> classes;  // empty means spectral-only
  OracleConfig oracle;
  bool spectral = true;
};

/// Deterministic scenario draw; the generator tag is recorded in the label.
Scenario generate(const CampaignConfig& cfg, int index);

struct CampaignReport {
  nlohmann::ordered_json json;
  int conflicts = 0;   // criterion Holds contradicted by a verified witness,
                       // or a spectral cross-check failure
  int unresolved = 0;  // criterion Fails without a verified witness
};

CampaignReport run_campaign(const CampaignConfig& cfg);

/// Config JSON: {"count": N, "seed": S, "max_atoms": 8, "max_blocks": 4,
///   "generators": [...], "classes": ["q*p", "(n,k)=1,2", ...],
///   "samples": 2000, "tol": 1e-10, "spectral": true}
CampaignConfig campaign_config_from_json(const std::string& text);

std::vector<ClassSpec> default_campaign_classes();

}  // namespace wct
