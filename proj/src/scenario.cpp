#include "wctlab/scenario.hpp"

#include <json.hpp>

namespace wct {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void bad_input(const std::string& what) { throw std::invalid_argument(what); }

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) bad_input("malformed JSON");
  return j;
}

Complex complex_from(const json& j, const char* field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    bad_input(std::string(field) + ": complex entries must be [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Fn fn_from(const json& j, const char* field, Eigen::Index expected) {
  if (!j.is_array()) bad_input(std::string(field) + ": array expected");
  if (static_cast<Eigen::Index>(j.size()) != expected)
    bad_input(std::string(field) + ": length does not match atom count");
  Fn out(expected);
  for (Eigen::Index i = 0; i < expected; ++i) out[i] = complex_from(j[static_cast<size_t>(i)], field);
  return out;
}

ordered_json fn_to(const Fn& f) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < f.size(); ++i)
    arr.push_back(ordered_json::array({f[i].real(), f[i].imag()}));
  return arr;
}

MeasureSpace space_from(const json& j) {
  if (!j.contains("atoms") || !j["atoms"].is_array()) bad_input("missing or malformed 'atoms'");
  if (!j.contains("mu") || !j["mu"].is_array()) bad_input("missing or malformed 'mu'");
  std::vector<std::string> atoms;
  for (const auto& a : j["atoms"]) {
    if (!a.is_string()) bad_input("'atoms' entries must be strings");
    atoms.push_back(a.get<std::string>());
  }
  if (j["mu"].size() != atoms.size()) bad_input("'mu' length does not match atom count");
  Eigen::VectorXd mu(static_cast<Eigen::Index>(atoms.size()));
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (!j["mu"][i].is_number()) bad_input("'mu' entries must be numbers");
    mu[static_cast<Eigen::Index>(i)] = j["mu"][i].get<double>();
  }
  return MeasureSpace(std::move(atoms), std::move(mu));  // rejects mu <= 0
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  const json j = parse_text(json_text);
  MeasureSpace space = space_from(j);
  const Eigen::Index n = space.size();

  if (!j.contains("partition") || !j["partition"].is_array())
    bad_input("missing or malformed 'partition'");
  std::vector<std::vector<Eigen::Index>> blocks;
  for (const auto& blk : j["partition"]) {
    if (!blk.is_array()) bad_input("'partition' blocks must be arrays of atom ids");
    std::vector<Eigen::Index> block;
    for (const auto& a : blk) {
      if (!a.is_string()) bad_input("'partition' entries must be atom ids");
      const Eigen::Index idx = space.index_of(a.get<std::string>());
      if (idx < 0) bad_input("'partition' references unknown atom '" + a.get<std::string>() + "'");
      block.push_back(idx);
    }
    blocks.push_back(std::move(block));
  }
  Partition part(std::move(blocks), n);  // rejects overlap / non-cover / empty blocks

  if (!j.contains("u") || !j.contains("w")) bad_input("missing 'u' or 'w'");
  Fn u = fn_from(j["u"], "u", n);
  Fn w = fn_from(j["w"], "w", n);

  std::string label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) bad_input("'label' must be a string");
    label = j["label"].get<std::string>();
  }
  return Scenario{std::move(space), std::move(part), std::move(u), std::move(w), std::move(label)};
}

std::string serialize_scenario(const Scenario& s) {
  ordered_json j;
  j["atoms"] = s.space.atoms();
  ordered_json mu = ordered_json::array();
  for (Eigen::Index i = 0; i < s.space.size(); ++i) mu.push_back(s.space.mu()[i]);
  j["mu"] = std::move(mu);
  ordered_json part = ordered_json::array();
  for (const auto& block : s.part.blocks()) {
    ordered_json b = ordered_json::array();
    for (Eigen::Index i : block) b.push_back(s.space.atoms()[static_cast<size_t>(i)]);
    part.push_back(std::move(b));
  }
  j["partition"] = std::move(part);
  j["u"] = fn_to(s.u);
  j["w"] = fn_to(s.w);
  j["label"] = s.label;
  return j.dump();
}

WctOp make_op(const Scenario& s) { return make_wct(s.space, s.part, s.u, s.w); }

OpMatrix parse_matrix(const std::string& json_text) {
  const json j = parse_text(json_text);
  MeasureSpace space = space_from(j);
  const Eigen::Index n = space.size();
  if (!j.contains("matrix") || !j["matrix"].is_array() ||
      static_cast<Eigen::Index>(j["matrix"].size()) != n)
    bad_input("missing or malformed 'matrix' (one row per atom expected)");
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = j["matrix"][static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      bad_input("'matrix' rows must have one [re, im] entry per atom");
    for (Eigen::Index c = 0; c < n; ++c)
      m(i, c) = complex_from(row[static_cast<size_t>(c)], "matrix");
  }
  return OpMatrix(std::move(m), std::move(space));
}

std::string serialize_matrix(const OpMatrix& mx) {
  ordered_json j;
  j["atoms"] = mx.space().atoms();
  ordered_json mu = ordered_json::array();
  for (Eigen::Index i = 0; i < mx.space().size(); ++i) mu.push_back(mx.space().mu()[i]);
  j["mu"] = std::move(mu);
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < mx.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < mx.dim(); ++c)
      row.push_back(ordered_json::array({mx.entries()(i, c).real(), mx.entries()(i, c).imag()}));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j.dump();
}

Scenario scenario_a() {
  MeasureSpace space({"x1", "x2"}, Eigen::Vector2d(0.5, 0.5));
  Partition part = Partition::trivial(2);
  Fn u(2), w(2);
  u << Complex(1, 0), Complex(2, 0);
  w << Complex(2, 0), Complex(1, 0);
  return Scenario{std::move(space), std::move(part), std::move(u), std::move(w), "scenario-a"};
}

Scenario scenario_b() {
  MeasureSpace space({"x1", "x2"}, Eigen::Vector2d(0.5, 0.5));
  Partition part = Partition::trivial(2);
  Fn ones = Fn::Constant(2, Complex(1, 0));
  return Scenario{std::move(space), std::move(part), ones, ones, "scenario-b"};
}

Scenario scenario_c(Eigen::Index n_atoms) {
  std::vector<std::string> atoms;
  Eigen::VectorXd mu(n_atoms);
  Fn u(n_atoms), w(n_atoms);
  for (Eigen::Index i = 0; i < n_atoms; ++i) {
    atoms.push_back("x" + std::to_string(i + 1));
    mu[i] = 0.5 + 0.25 * static_cast<double>(i);
    u[i] = Complex(1.0 + 0.5 * static_cast<double>(i), 0.0);
    w[i] = Complex(2.0 - 0.25 * static_cast<double>(i), 0.0);
  }
  return Scenario{MeasureSpace(std::move(atoms), std::move(mu)), Partition::singletons(n_atoms),
                  std::move(u), std::move(w), "scenario-c"};
}

}  // namespace wct
