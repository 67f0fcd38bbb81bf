/* C API for the wctlab core: opaque handles, status codes, JSON in/out.
 * Every report-producing call fills *out_json with a NUL-terminated string
 * owned by the library; release it with wct_string_free. On WCT_INVALID_INPUT
 * or WCT_INTERNAL_ERROR no output is produced and wct_last_error() describes
 * the failure (thread-local). Status values double as CLI exit codes:
 * 0 clean, 1 violation or disagreement found, 2 invalid input.
 */
#ifndef WCTLAB_H
#define WCTLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wct_status {
  WCT_OK = 0,
  WCT_FINDING = 1,
  WCT_INVALID_INPUT = 2,
  WCT_INTERNAL_ERROR = 3
} wct_status;

typedef struct wct_scenario wct_scenario;

const char* wct_version(void);
const char* wct_last_error(void);
void wct_string_free(char* s);

wct_status wct_scenario_parse(const char* json_text, wct_scenario** out);
wct_status wct_scenario_serialize(const wct_scenario* s, char** out_json);
void wct_scenario_free(wct_scenario* s);

/* classes: comma-separated class tokens, e.g. "q*p,(n,k)=1,2,abs-k=1.5".
 * NULL or "" selects the default class set. tol <= 0 selects the default. */
wct_status wct_check(const wct_scenario* s, const char* classes, double tol, char** out_json);

wct_status wct_spectrum(const wct_scenario* s, char** out_json);

wct_status wct_polar(const wct_scenario* s, char** out_json);

wct_status wct_oracle(const wct_scenario* s, const char* class_token, uint64_t samples,
                      uint64_t seed, char** out_json);

/* matrix_json: {"atoms": [...], "mu": [...], "matrix": [[[re,im],...],...]} */
wct_status wct_recognize(const char* matrix_json, char** out_json);

/* config_json: {"count":..,"seed":..,"max_atoms":..,"max_blocks":..,
 *   "generators":[..],"classes":[..],"samples":..,"tol":..} */
wct_status wct_campaign(const char* config_json, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* WCTLAB_H */
