#include "wctlab.h"

#include <cstring>
#include <new>
#include <string>

#include "wctlab/campaign.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

wct_status emit(const wct::Report& rep, char** out_json) {
  if (out_json) *out_json = dup_string(rep.json.dump(2));
  return rep.finding ? WCT_FINDING : WCT_OK;
}

template <typename Fun>
wct_status guarded(Fun&& fun) {
  try {
    return fun();
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return WCT_INVALID_INPUT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WCT_INTERNAL_ERROR;
  }
}

const wct::Scenario* unwrap(const wct_scenario* s) {
  return reinterpret_cast<const wct::Scenario*>(s);
}

}  // namespace

extern "C" {

const char* wct_version(void) { return "0.1.0"; }

const char* wct_last_error(void) { return g_last_error.c_str(); }

void wct_string_free(char* s) { delete[] s; }

wct_status wct_scenario_parse(const char* json_text, wct_scenario** out) {
  if (!json_text || !out) {
    g_last_error = "null argument";
    return WCT_INVALID_INPUT;
  }
  return guarded([&] {
    auto* scenario = new wct::Scenario(wct::parse_scenario(json_text));
    *out = reinterpret_cast<wct_scenario*>(scenario);
    return WCT_OK;
  });
}

wct_status wct_scenario_serialize(const wct_scenario* s, char** out_json) {
  if (!s || !out_json) {
    g_last_error = "null argument";
    return WCT_INVALID_INPUT;
  }
  return guarded([&] {
    *out_json = dup_string(wct::serialize_scenario(*unwrap(s)));
    return WCT_OK;
  });
}

void wct_scenario_free(wct_scenario* s) { delete reinterpret_cast<wct::Scenario*>(s); }

wct_status wct_check(const wct_scenario* s, const char* classes, double tol, char** out_json) {
  if (!s) {
    g_last_error = "null scenario";
    return WCT_INVALID_INPUT;
  }
  return guarded([&] {
    const std::vector<wct::ClassSpec> specs = (classes && *classes)
                                                  ? wct::parse_class_list(classes)
                                                  : wct::default_campaign_classes();
    const double use_tol = tol > 0.0 ? tol : 1e-10;
    return emit(wct::check_report(*unwrap(s), specs, use_tol), out_json);
  });
}

wct_status wct_spectrum(const wct_scenario* s, char** out_json) {
  if (!s) {
    g_last_error = "null scenario";
    return WCT_INVALID_INPUT;
  }
  return guarded([&] { return emit(wct::spectrum_report(*unwrap(s)), out_json); });
}

wct_status wct_polar(const wct_scenario* s, char** out_json) {
  if (!s) {
    g_last_error = "null scenario";
    return WCT_INVALID_INPUT;
  }
  return guarded([&] { return emit(wct::polar_report(*unwrap(s)), out_json); });
}

wct_status wct_oracle(const wct_scenario* s, const char* class_token, uint64_t samples,
                      uint64_t seed, char** out_json) {
  if (!s || !class_token) {
    g_last_error = "null argument";
    return WCT_INVALID_INPUT;
  }
  return guarded([&] {
    const wct::ClassSpec spec = wct::parse_class_token(class_token);
    wct::OracleConfig cfg;
    if (samples) cfg.samples = static_cast<int>(samples);
    cfg.seed = seed;
    return emit(wct::oracle_report(*unwrap(s), spec, cfg), out_json);
  });
}

wct_status wct_recognize(const char* matrix_json, char** out_json) {
  if (!matrix_json) {
    g_last_error = "null argument";
    return WCT_INVALID_INPUT;
  }
  return guarded([&] {
    const wct::OpMatrix mx = wct::parse_matrix(matrix_json);
    return emit(wct::recognize_report(mx), out_json);
  });
}

wct_status wct_campaign(const char* config_json, char** out_json) {
  if (!config_json) {
    g_last_error = "null argument";
    return WCT_INVALID_INPUT;
  }
  return guarded([&] {
    const wct::CampaignConfig cfg = wct::campaign_config_from_json(config_json);
    const wct::CampaignReport rep = wct::run_campaign(cfg);
    if (out_json) *out_json = dup_string(rep.json.dump(2));
    return rep.conflicts > 0 ? WCT_FINDING : WCT_OK;
  });
}

}  // extern "C"
