#include "wctlab/campaign.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

namespace wct {

using nlohmann::ordered_json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

Complex draw_entry(std::mt19937_64& eng, double zero_prob = 0.1) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(eng) < zero_prob) return Complex(0.0, 0.0);
  const double modulus = 2.0 * unit(eng);
  const double phase = 2.0 * std::numbers::pi * unit(eng);
  return std::polar(modulus, phase);
}

struct Draw {
  MeasureSpace space;
  Partition part;
};

Draw draw_space(std::mt19937_64& eng, int max_atoms, int max_blocks, bool force_coarse) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int lo = force_coarse ? std::min(2, max_atoms) : 1;
  std::uniform_int_distribution<int> atom_count(lo, std::max(lo, max_atoms));
  const int n = atom_count(eng);

  int block_hi = std::min(max_blocks, n);
  if (force_coarse && n >= 2) block_hi = std::min(block_hi, n - 1);
  std::uniform_int_distribution<int> block_count(1, std::max(1, block_hi));
  const int nb = block_count(eng);

  std::vector<std::string> atoms;
  Eigen::VectorXd mu(n);
  for (int i = 0; i < n; ++i) {
    atoms.push_back("x" + std::to_string(i + 1));
    mu[i] = 0.1 + 1.9 * unit(eng);  // non-uniform, strictly positive
  }

  // Surjective block assignment: one anchor atom per block, rest uniform.
  std::vector<std::vector<Eigen::Index>> blocks(static_cast<size_t>(nb));
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(order[i], order[pick(eng)]);
  }
  for (int b = 0; b < nb; ++b) blocks[static_cast<size_t>(b)].push_back(order[b]);
  std::uniform_int_distribution<int> any_block(0, nb - 1);
  for (int i = nb; i < n; ++i) blocks[static_cast<size_t>(any_block(eng))].push_back(order[i]);

  MeasureSpace space(std::move(atoms), std::move(mu));
  Partition part(std::move(blocks), n);
  return Draw{std::move(space), std::move(part)};
}

}  // namespace

std::vector<ClassSpec> default_campaign_classes() {
  return parse_class_list("q*p,para,(n,k)=1,1,(n,k)=1,2,(n,k)=2,1,(n,k)=2,2,abs-k=1,abs-k=2");
}

Scenario generate(const CampaignConfig& cfg, int index) {
  if (index < 0 || index >= cfg.count) throw std::invalid_argument("generate: index out of range");
  if (cfg.generators.empty()) throw std::invalid_argument("generate: no generators configured");
  if (cfg.max_atoms < cfg.max_blocks || cfg.max_blocks < 1)
    throw std::invalid_argument("generate: need max_atoms >= max_blocks >= 1");

  const std::string& tag = cfg.generators[static_cast<size_t>(index) % cfg.generators.size()];
  std::mt19937_64 eng(mix(cfg.seed, static_cast<std::uint64_t>(index)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Generic draws keep at least one block with two or more atoms; on
  // all-singleton partitions every conditional inequality degenerates to an
  // equality and nothing is exercised.
  const bool coarse = tag == "generic" || tag == "zero_w_block" || tag == "nilpotent_like";
  Draw d = draw_space(eng, cfg.max_atoms, cfg.max_blocks, coarse);
  const Eigen::Index n = d.space.size();
  Fn u(n), w(n);

  if (tag == "generic") {
    for (Eigen::Index i = 0; i < n; ++i) u[i] = draw_entry(eng);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = draw_entry(eng);
  } else if (tag == "cauchy_schwarz_equality") {
    // u = c_B conj(w) per block: the Cauchy-Schwarz equality case, hence
    // quasi-*-paranormal by construction.
    for (Eigen::Index i = 0; i < n; ++i) w[i] = draw_entry(eng, 0.05);
    for (const auto& block : d.part.blocks()) {
      const Complex c = std::polar(0.25 + 1.75 * unit(eng), 2.0 * std::numbers::pi * unit(eng));
      for (Eigen::Index i : block) u[i] = c * std::conj(w[i]);
    }
  } else if (tag == "a_measurable_u") {
    for (const auto& block : d.part.blocks()) {
      const Complex c = draw_entry(eng);
      for (Eigen::Index i : block) u[i] = c;
    }
    for (Eigen::Index i = 0; i < n; ++i) w[i] = draw_entry(eng);
  } else if (tag == "zero_w_block") {
    for (Eigen::Index i = 0; i < n; ++i) u[i] = draw_entry(eng);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = draw_entry(eng, 0.05);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(d.part.block_count()) - 1);
    for (Eigen::Index i : d.part.blocks()[static_cast<size_t>(pick(eng))]) w[i] = 0.0;
  } else if (tag == "nilpotent_like") {
    // Within each block the supports of u and w are disjoint, so E(uw) = 0
    // while E(|u|^2) E(|w|^2) > 0 on blocks of size >= 2.
    for (const auto& block : d.part.blocks()) {
      if (block.size() == 1) {
        u[block[0]] = 0.0;
        w[block[0]] = draw_entry(eng, 0.0);
        continue;
      }
      const size_t half = block.size() / 2;
      for (size_t i = 0; i < block.size(); ++i) {
        if (i < half) {
          u[block[i]] = draw_entry(eng, 0.0);
          w[block[i]] = 0.0;
        } else {
          u[block[i]] = 0.0;
          w[block[i]] = draw_entry(eng, 0.0);
        }
      }
    }
  } else {
    throw std::invalid_argument("generate: unknown generator '" + tag + "'");
  }

  return Scenario{std::move(d.space), std::move(d.part), std::move(u), std::move(w),
                  tag + "#" + std::to_string(index)};
}

namespace {

struct ClassOutcome {
  ordered_json json;
  bool conflict = false;
  bool unresolved = false;
};

ClassOutcome evaluate_class(const WctOp& t, const OpMatrix& tm, const ClassSpec& spec,
                            const OracleConfig& oracle_cfg, const MeasureSpace& space) {
  ClassOutcome out;
  out.json["class"] = class_name(spec);
  out.json["token"] = class_token(spec);
  out.json["params"] = params_json(spec);

  Verdict crit;
  if (spec.cls == OpClass::MParanormalAMeasurable && !u_is_a_measurable(t)) {
    crit.status = Status::Unknown;
    crit.note = "u is not A-measurable; the block-constant-u criterion is inapplicable";
  } else {
    crit = criterion_for(t, spec);
  }
  out.json["criterion"] = verdict_json(crit, &space);

  const Verdict oracle = oracle_for(tm, spec, oracle_cfg);
  out.json["oracle"] = verdict_json(oracle, &space);

  std::string agreement;
  if (crit.status == Status::Holds) {
    if (oracle.status == Status::Fails) {
      agreement = "conflict";
      out.conflict = true;
    } else {
      agreement = "consistent";
    }
  } else if (crit.status == Status::Fails) {
    WitnessSearch ws = block_witness(t, *crit.witness_atom, spec, oracle_cfg.tol);
    if (ws.vector) {
      agreement = "confirmed";
      ordered_json wj;
      wj["vector"] = fn_json(*ws.vector);
      wj["violation"] = ws.violation;
      wj["lhs"] = ws.sides.lhs;
      wj["rhs"] = ws.sides.rhs;
      out.json["witness"] = std::move(wj);
    } else if (oracle.status == Status::Fails) {
      agreement = "confirmed-by-oracle";
    } else {
      agreement = "unresolved";
      out.json["witness_note"] = ws.note;
      out.unresolved = true;
    }
  } else {
    agreement = "resolved-by-oracle";
    out.json["resolution"] = to_string(oracle.status);
  }
  out.json["agreement"] = agreement;
  return out;
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& cfg) {
  if (cfg.count < 1) throw std::invalid_argument("campaign: count must be >= 1");

  CampaignReport report;
  ordered_json cfg_json;
  cfg_json["count"] = cfg.count;
  cfg_json["seed"] = cfg.seed;
  cfg_json["max_atoms"] = cfg.max_atoms;
  cfg_json["max_blocks"] = cfg.max_blocks;
  cfg_json["generators"] = cfg.generators;
  ordered_json class_tokens = ordered_json::array();
  for (const auto& spec : cfg.classes) class_tokens.push_back(class_token(spec));
  cfg_json["classes"] = std::move(class_tokens);
  cfg_json["samples"] = cfg.oracle.samples;
  cfg_json["tol"] = cfg.oracle.tol;
  report.json["config"] = std::move(cfg_json);

  ordered_json scenarios = ordered_json::array();
  std::map<std::string, int> agreement_counts;

  for (int index = 0; index < cfg.count; ++index) {
    const Scenario s = generate(cfg, index);
    const WctOp t = make_op(s);
    const OpMatrix tm = to_matrix(t);

    ordered_json entry;
    entry["index"] = index;
    entry["label"] = s.label;
    entry["scenario"] = scenario_json(s);

    ordered_json class_results = ordered_json::array();
    for (size_t ci = 0; ci < cfg.classes.size(); ++ci) {
      OracleConfig oc = cfg.oracle;
      oc.seed = mix(cfg.seed, 0x10001ull * static_cast<std::uint64_t>(index) + ci);
      oc.focus = t.part.blocks();
      ClassOutcome outcome = evaluate_class(t, tm, cfg.classes[ci], oc, s.space);
      agreement_counts[outcome.json["agreement"].get<std::string>()]++;
      if (outcome.conflict) ++report.conflicts;
      if (outcome.unresolved) ++report.unresolved;
      class_results.push_back(std::move(outcome.json));
    }
    entry["classes"] = std::move(class_results);

    if (cfg.spectral) {
      const SpectrumReport sr = spectrum(t);
      ordered_json sj;
      sj["analytic"] = complex_set_json(sr.analytic);
      sj["numeric"] = complex_set_json(sr.numeric);
      sj["agreement"] = sr.agreement;
      sj["set_distance"] = sr.set_distance;
      sj["zero_membership_mismatch"] = sr.zero_membership_mismatch;
      if (!sr.agreement) ++report.conflicts;
      entry["spectrum"] = std::move(sj);
    }

    scenarios.push_back(std::move(entry));
  }
  report.json["scenarios"] = std::move(scenarios);

  ordered_json summary;
  summary["count"] = cfg.count;
  summary["conflicts"] = report.conflicts;
  summary["unresolved"] = report.unresolved;
  ordered_json by_agreement = ordered_json::object();
  for (const auto& [key, value] : agreement_counts) by_agreement[key] = value;
  summary["by_agreement"] = std::move(by_agreement);
  report.json["summary"] = std::move(summary);

  const auto now = std::chrono::system_clock::now().time_since_epoch();
  report.json["generated_at_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  return report;
}

CampaignConfig campaign_config_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("campaign config: malformed JSON");
  CampaignConfig cfg;
  cfg.classes = default_campaign_classes();
  try {
    if (j.contains("count")) cfg.count = j["count"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("max_atoms")) cfg.max_atoms = j["max_atoms"].get<int>();
    if (j.contains("max_blocks")) cfg.max_blocks = j["max_blocks"].get<int>();
    if (j.contains("generators")) cfg.generators = j["generators"].get<std::vector<std::string>>();
    if (j.contains("classes")) {
      cfg.classes.clear();
      for (const auto& tok : j["classes"])
        cfg.classes.push_back(parse_class_token(tok.get<std::string>()));
    }
    if (j.contains("samples")) cfg.oracle.samples = j["samples"].get<int>();
    if (j.contains("tol")) cfg.oracle.tol = j["tol"].get<double>();
    if (j.contains("spectral")) cfg.spectral = j["spectral"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("campaign config: ") + e.what());
  }
  return cfg;
}

}  // namespace wct
