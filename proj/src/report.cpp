#include "wctlab/report.hpp"

#include <cmath>

namespace wct {

using nlohmann::ordered_json;

ordered_json complex_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json fn_json(const Fn& f) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < f.size(); ++i) arr.push_back(complex_json(f[i]));
  return arr;
}

ordered_json matrix_json(const Eigen::MatrixXcd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json complex_set_json(const std::vector<Complex>& values) {
  ordered_json arr = ordered_json::array();
  for (Complex v : values) arr.push_back(complex_json(v));
  return arr;
}

ordered_json params_json(const ClassSpec& spec) {
  ordered_json p = ordered_json::object();
  switch (spec.cls) {
    case OpClass::MParanormal:
    case OpClass::MParanormalAMeasurable: p["m"] = spec.m; break;
    case OpClass::AbsoluteK: p["k"] = spec.k_real; break;
    case OpClass::NkQuasiStar:
      p["n"] = spec.n;
      p["k"] = spec.k;
      break;
    case OpClass::NStar: p["n"] = spec.n; break;
    case OpClass::KQuasiStar: p["k"] = spec.k; break;
    default: break;
  }
  return p;
}

ordered_json verdict_json(const Verdict& v, const MeasureSpace* names) {
  ordered_json j;
  j["status"] = to_string(v.status);
  j["margin"] = v.margin;
  j["boundary"] = v.boundary;
  if (v.witness_atom) {
    if (names)
      j["witness_atom"] = names->atoms()[static_cast<size_t>(*v.witness_atom)];
    else
      j["witness_atom"] = static_cast<long>(*v.witness_atom);
  }
  if (v.witness_vector) j["witness_vector"] = fn_json(*v.witness_vector);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

ordered_json scenario_json(const Scenario& s) {
  return ordered_json::parse(serialize_scenario(s));
}

Report check_report(const Scenario& s, const std::vector<ClassSpec>& classes, double tol) {
  const WctOp t = make_op(s);
  Report rep;
  rep.json["scenario"] = scenario_json(s);
  rep.json["tol"] = tol;
  ordered_json results = ordered_json::array();
  int violations = 0;
  for (const ClassSpec& spec : classes) {
    ordered_json entry;
    entry["class"] = class_name(spec);
    entry["params"] = params_json(spec);
    Verdict v;
    if (spec.cls == OpClass::MParanormalAMeasurable && !u_is_a_measurable(t)) {
      v.status = Status::Unknown;
      v.note = "u is not A-measurable; the block-constant-u criterion is inapplicable";
    } else {
      v = criterion_for(t, spec, tol);
    }
    if (v.status == Status::Fails) ++violations;
    entry.update(verdict_json(v, &s.space));
    results.push_back(std::move(entry));
  }
  rep.json["results"] = std::move(results);
  rep.json["violations"] = violations;

  const EquivalenceReport eq = crit_equivalences(t, tol);
  ordered_json eqj;
  eqj["criterion"] = verdict_json(eq.criterion, &s.space);
  eqj["g_is_x"] = eq.g_is_x;
  eqj["s_eu_is_x"] = eq.s_eu_is_x;
  eqj["quasi_star_a_class_equivalent"] = eq.quasi_star_a_class_equivalent;
  eqj["a_class_equivalent"] = eq.a_class_equivalent;
  rep.json["equivalences"] = std::move(eqj);

  rep.finding = violations > 0;
  return rep;
}

Report spectrum_report(const Scenario& s) {
  const WctOp t = make_op(s);
  const SpectrumReport sr = spectrum(t);

  Report rep;
  rep.json["scenario"] = scenario_json(s);
  ordered_json spec;
  spec["analytic"] = complex_set_json(sr.analytic);
  spec["numeric"] = complex_set_json(sr.numeric);
  rep.json["spectrum"] = std::move(spec);
  rep.json["sigma_p"] = complex_set_json(sr.point);
  rep.json["sigma_jp"] = complex_set_json(sr.joint_point);
  rep.json["sigma_a"] = complex_set_json(sr.approx);
  rep.json["sigma_ja"] = complex_set_json(sr.joint_approx);
  rep.json["s_cap_g_is_x"] = sr.s_cap_g_is_x;
  rep.json["singular"] = sr.singular;
  rep.json["agreement"] = sr.agreement;
  rep.json["set_distance"] = sr.set_distance;
  rep.json["zero_membership_mismatch"] = sr.zero_membership_mismatch;

  const double scale = std::max(1.0, t.bound);
  ordered_json riesz = ordered_json::array();
  for (Complex mu : sr.numeric) {
    if (std::abs(mu) <= kSpectralRelTol * scale) continue;
    const double radius = isolation_radius(sr.numeric, mu, kSpectralRelTol * scale);
    if (radius <= kSpectralRelTol * scale) continue;  // clustered; skip
    const RieszSelfAdjointness rs = riesz_self_adjointness(t, mu);
    ordered_json entry;
    entry["mu"] = complex_json(mu);
    entry["idempotency_defect"] = rs.data.idempotency_defect;
    entry["self_adjoint"] = rs.self_adjoint;
    entry["kernel_inclusion"] = rs.kernel_included;
    entry["equivalence"] = to_string(rs.equivalence.status);
    entry["simple_pole"] = to_string(simple_pole_check(t, mu).status);
    riesz.push_back(std::move(entry));
  }
  rep.json["riesz"] = std::move(riesz);

  const KernelChecks kc = kernel_consequences(t);
  ordered_json kj;
  ordered_json hyp = ordered_json::array();
  for (const auto& h : kc.hypothesis) {
    ordered_json e;
    e["n"] = h.n;
    e["k"] = h.k;
    e["holds"] = h.holds;
    hyp.push_back(std::move(e));
  }
  kj["hypothesis"] = std::move(hyp);
  kj["hypothesis_all"] = kc.hypothesis_all;
  ordered_json eigs = ordered_json::array();
  for (const auto& e : kc.eigenvalues) {
    ordered_json ej;
    ej["lambda"] = complex_json(e.lambda);
    ej["eigenspace_dim"] = static_cast<long>(e.eigenspace_dim);
    ej["kernel_inclusion"] = e.inclusion_ok;
    ej["inclusion_residual"] = e.inclusion_residual;
    ej["stabilization"] = e.stabilization_ok;
    eigs.push_back(std::move(ej));
  }
  kj["eigenvalues"] = std::move(eigs);
  kj["orthogonality_max"] = kc.orthogonality_max;
  kj["orthogonality_ok"] = kc.orthogonality_ok;
  ordered_json pk = ordered_json::array();
  for (const auto& p : kc.power_kernels) {
    ordered_json pj;
    pj["k"] = p.k;
    pj["intersection_cosine"] = p.intersection_cosine;
    pj["ok"] = p.ok;
    pk.push_back(std::move(pj));
  }
  kj["power_kernels"] = std::move(pk);
  kj["sigma_ja_matches_sigma_a"] = kc.sigma_ja_matches_sigma_a;
  kj["all_pass"] = kc.all_pass;
  kj["hypothesis_consistent"] = !kc.hypothesis_all || kc.all_pass;
  rep.json["kernel_checks"] = std::move(kj);

  // The spectrum formula disagreeing with the eigensolver, or the kernel
  // consequences failing under their hypothesis, is a reportable finding.
  rep.finding = !sr.agreement || (kc.hypothesis_all && !kc.all_pass);
  return rep;
}

Report polar_report(const Scenario& s) {
  const WctOp t = make_op(s);
  const OpMatrix tm = to_matrix(t);
  const PolarParts parts = polar(t);
  const Eigen::VectorXd& mu = t.space.mu();

  const double norm_closed = op_norm(t);
  const double norm_numeric = weighted_opnorm(tm.entries(), mu);

  const Eigen::MatrixXcd recon = parts.partial_isometry.entries() * parts.abs.entries();
  const double recon_defect = weighted_opnorm(recon - tm.entries(), mu);
  const double psd_min = weighted_min_eig(parts.abs.entries(), mu);
  const Eigen::MatrixXcd ustar = weighted_adjoint(parts.partial_isometry.entries(), mu);
  const double iso_defect = weighted_opnorm(
      parts.partial_isometry.entries() * ustar * parts.partial_isometry.entries() -
          parts.partial_isometry.entries(),
      mu);
  const Eigen::Index ker_u = weighted_kernel_basis(parts.partial_isometry.entries(), mu).cols();
  const Eigen::Index ker_abs = weighted_kernel_basis(parts.abs.entries(), mu).cols();

  const OpMatrix al = aluthge(t);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es_t(tm.entries(), false);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es_a(al.entries(), false);
  std::vector<Complex> spec_t, spec_a;
  const double scale = std::max(1.0, t.bound);
  for (Eigen::Index i = 0; i < tm.dim(); ++i) {
    if (std::abs(es_t.eigenvalues()[i]) > kSpectralRelTol * scale)
      spec_t.push_back(es_t.eigenvalues()[i]);
    if (std::abs(es_a.eigenvalues()[i]) > kSpectralRelTol * scale)
      spec_a.push_back(es_a.eigenvalues()[i]);
  }
  double aluthge_dist = 0.0;
  for (Complex z : spec_t) {
    double best = std::abs(z);
    for (Complex y : spec_a) best = std::min(best, std::abs(z - y));
    aluthge_dist = std::max(aluthge_dist, best);
  }
  for (Complex y : spec_a) {
    double best = std::abs(y);
    for (Complex z : spec_t) best = std::min(best, std::abs(z - y));
    aluthge_dist = std::max(aluthge_dist, best);
  }

  Report rep;
  rep.json["scenario"] = scenario_json(s);
  ordered_json norm;
  norm["closed_form"] = norm_closed;
  norm["numeric"] = norm_numeric;
  rep.json["norm"] = std::move(norm);
  rep.json["t"] = matrix_json(tm.entries());
  rep.json["u"] = matrix_json(parts.partial_isometry.entries());
  rep.json["abs_t"] = matrix_json(parts.abs.entries());
  rep.json["aluthge"] = matrix_json(al.entries());
  ordered_json defects;
  defects["reconstruction"] = recon_defect;
  defects["psd_min_eigenvalue"] = psd_min;
  defects["partial_isometry"] = iso_defect;
  defects["kernel_rank_match"] = ker_u == ker_abs;
  defects["norm_gap"] = std::abs(norm_closed - norm_numeric);
  defects["aluthge_spectrum_distance"] = aluthge_dist;
  rep.json["defects"] = std::move(defects);

  rep.finding = recon_defect > 1e-10 * scale || psd_min < -1e-10 * scale ||
                iso_defect > 1e-10 || ker_u != ker_abs ||
                std::abs(norm_closed - norm_numeric) > 1e-9 * scale ||
                aluthge_dist > 1e-8 * scale;
  return rep;
}

Report oracle_report(const Scenario& s, const ClassSpec& spec, const OracleConfig& cfg) {
  const WctOp t = make_op(s);
  OracleConfig local = cfg;
  local.focus = t.part.blocks();
  const OpMatrix tm = to_matrix(t);
  const Verdict v = oracle_for(tm, spec, local);

  Report rep;
  rep.json["scenario"] = scenario_json(s);
  rep.json["class"] = class_name(spec);
  rep.json["params"] = params_json(spec);
  rep.json["samples"] = local.samples;
  rep.json["seed"] = local.seed;
  rep.json.update(verdict_json(v, &s.space));
  if (v.witness_vector) {
    const InequalitySides sides = inequality_sides(tm, spec, *v.witness_vector);
    rep.json["lhs"] = sides.lhs;
    rep.json["rhs"] = sides.rhs;
  }
  rep.finding = v.status == Status::Fails;
  return rep;
}

Report recognize_report(const OpMatrix& mx) {
  const RecognitionResult r = recover_structure(mx);
  Report rep;
  rep.json["is_wct_form"] = r.is_wct_form;
  if (r.partition) {
    ordered_json part = ordered_json::array();
    for (const auto& block : r.partition->blocks()) {
      ordered_json b = ordered_json::array();
      for (Eigen::Index i : block) b.push_back(mx.space().atoms()[static_cast<size_t>(i)]);
      part.push_back(std::move(b));
    }
    rep.json["partition"] = std::move(part);
  } else {
    rep.json["partition"] = nullptr;
  }
  rep.json["weight"] = r.weight ? fn_json(*r.weight) : ordered_json(nullptr);
  rep.json["failed_condition"] =
      r.failed_condition.empty() ? ordered_json(nullptr) : ordered_json(r.failed_condition);
  rep.json["rebuild_defect"] = r.rebuild_defect;
  ordered_json conds = ordered_json::array();
  for (const auto& c : r.conditions) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["defect"] = c.defect;
    if (!c.note.empty()) cj["note"] = c.note;
    conds.push_back(std::move(cj));
  }
  rep.json["conditions"] = std::move(conds);

  // Passing every recognition condition yet failing to rebuild contradicts
  // the characterization at this tolerance; that is the reportable finding.
  rep.finding = r.failed_condition == "rebuild";
  return rep;
}

}  // namespace wct
