// wctlab command-line interface. Built entirely on the C API so the shared
// library surface stays exercised end to end.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wctlab.h"

namespace {

int fail_input(const std::string& context) {
  std::cerr << "error: " << context;
  const char* detail = wct_last_error();
  if (detail && *detail) std::cerr << ": " << detail;
  std::cerr << "\n";
  return WCT_INVALID_INPUT;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int write_output(char* json, const std::string& out_path) {
  if (!json) return 0;
  if (out_path.empty()) {
    std::cout << json << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) {
      wct_string_free(json);
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return WCT_INVALID_INPUT;
    }
    out << json << "\n";
  }
  wct_string_free(json);
  return -1;  // no error
}

struct ScenarioHandle {
  wct_scenario* ptr = nullptr;
  ~ScenarioHandle() { wct_scenario_free(ptr); }
};

int load_scenario(const std::string& path, ScenarioHandle& handle) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return WCT_INVALID_INPUT;
  }
  if (wct_scenario_parse(text.c_str(), &handle.ptr) != WCT_OK)
    return fail_input("invalid scenario '" + path + "'");
  return -1;
}

int finish(wct_status status, char* json, const std::string& out_path) {
  if (status == WCT_INVALID_INPUT) return fail_input("invalid input");
  if (status == WCT_INTERNAL_ERROR) return fail_input("internal error");
  const int io = write_output(json, out_path);
  if (io >= 0) return io;
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laboratory for weighted conditional expectation type operators T = M_w E M_u"};
  app.require_subcommand(1);

  std::string scenario_path, matrix_path, out_path, classes, class_token, generators;
  double tol = 1e-10;
  std::uint64_t samples = 2000, seed = 0;
  int count = 100, max_atoms = 8, max_blocks = 4;

  auto* check = app.add_subcommand("check", "Evaluate class criteria on a scenario");
  check->add_option("scenario", scenario_path, "scenario JSON file")->required();
  check->add_option("--classes", classes, "class tokens, e.g. q*p,(n,k)=1,2,abs-k=1.5");
  check->add_option("--tol", tol, "boundary tolerance");
  check->add_option("--json", out_path, "write the report to a file");

  auto* spectrum = app.add_subcommand("spectrum", "Spectra, Riesz idempotents, kernel checks");
  spectrum->add_option("scenario", scenario_path, "scenario JSON file")->required();
  spectrum->add_option("--json", out_path, "write the report to a file");

  auto* polar = app.add_subcommand("polar", "Norm, polar decomposition, Aluthge transform");
  polar->add_option("scenario", scenario_path, "scenario JSON file")->required();
  polar->add_option("--json", out_path, "write the report to a file");

  auto* oracle = app.add_subcommand("oracle", "Random unit-vector falsifier for one class");
  oracle->add_option("scenario", scenario_path, "scenario JSON file")->required();
  oracle->add_option("--class", class_token, "class token")->required();
  oracle->add_option("--samples", samples, "sample count");
  oracle->add_option("--seed", seed, "RNG seed");
  oracle->add_option("--json", out_path, "write the report to a file");

  auto* campaign = app.add_subcommand("campaign", "Criterion-vs-oracle cross-check campaign");
  campaign->add_option("--count", count, "number of scenarios");
  campaign->add_option("--seed", seed, "RNG seed");
  campaign->add_option("--generators", generators, "comma-separated generator tags");
  campaign->add_option("--classes", classes, "class tokens");
  campaign->add_option("--samples", samples, "oracle samples per class");
  campaign->add_option("--max-atoms", max_atoms, "atoms per scenario");
  campaign->add_option("--max-blocks", max_blocks, "partition blocks per scenario");
  campaign->add_option("--json", out_path, "write the report to a file");

  auto* recognize = app.add_subcommand("recognize",
                                       "Recognize f -> E(wf) structure in a matrix file");
  recognize->add_option("matrix", matrix_path, "matrix JSON file")->required();
  recognize->add_option("--json", out_path, "write the report to a file");

  CLI11_PARSE(app, argc, argv);

  char* json = nullptr;
  if (check->parsed()) {
    ScenarioHandle s;
    if (int rc = load_scenario(scenario_path, s); rc >= 0) return rc;
    const wct_status st = wct_check(s.ptr, classes.empty() ? nullptr : classes.c_str(), tol, &json);
    return finish(st, json, out_path);
  }
  if (spectrum->parsed()) {
    ScenarioHandle s;
    if (int rc = load_scenario(scenario_path, s); rc >= 0) return rc;
    const wct_status st = wct_spectrum(s.ptr, &json);
    return finish(st, json, out_path);
  }
  if (polar->parsed()) {
    ScenarioHandle s;
    if (int rc = load_scenario(scenario_path, s); rc >= 0) return rc;
    const wct_status st = wct_polar(s.ptr, &json);
    return finish(st, json, out_path);
  }
  if (oracle->parsed()) {
    ScenarioHandle s;
    if (int rc = load_scenario(scenario_path, s); rc >= 0) return rc;
    const wct_status st = wct_oracle(s.ptr, class_token.c_str(), samples, seed, &json);
    return finish(st, json, out_path);
  }
  if (campaign->parsed()) {
    std::ostringstream cfg;
    cfg << "{\"count\":" << count << ",\"seed\":" << seed << ",\"max_atoms\":" << max_atoms
        << ",\"max_blocks\":" << max_blocks << ",\"samples\":" << samples;
    auto quote_list = [](const std::string& csv) {
      std::string out = "[";
      std::string cur;
      bool first = true;
      for (char ch : csv + ",") {
        if (ch == ',') {
          if (!cur.empty()) {
            out += (first ? "\"" : ",\"") + cur + "\"";
            first = false;
            cur.clear();
          }
        } else {
          cur.push_back(ch);
        }
      }
      return out + "]";
    };
    if (!generators.empty()) cfg << ",\"generators\":" << quote_list(generators);
    cfg << "}";
    std::string cfg_text = cfg.str();
    if (!classes.empty()) {
      // Tokenize the class list: commas inside parentheses and the parameter
      // comma of "(n,k)=N,K" do not separate tokens.
      std::string arr = "[";
      std::string cur;
      int depth = 0;
      bool first = true;
      auto flush = [&] {
        if (cur.empty()) return;
        arr += (first ? "\"" : ",\"") + cur + "\"";
        first = false;
        cur.clear();
      };
      for (char ch : classes) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0 &&
            !(cur.rfind("(n,k)=", 0) == 0 && cur.find(',', 6) == std::string::npos)) {
          flush();
          continue;
        }
        cur.push_back(ch);
      }
      flush();
      arr += "]";
      cfg_text.pop_back();  // drop trailing '}'
      cfg_text += ",\"classes\":" + arr + "}";
    }
    const wct_status st = wct_campaign(cfg_text.c_str(), &json);
    return finish(st, json, out_path);
  }
  if (recognize->parsed()) {
    std::string text;
    if (!read_file(matrix_path, text)) {
      std::cerr << "error: cannot read '" << matrix_path << "'\n";
      return WCT_INVALID_INPUT;
    }
    const wct_status st = wct_recognize(text.c_str(), &json);
    return finish(st, json, out_path);
  }
  return WCT_INVALID_INPUT;
}
