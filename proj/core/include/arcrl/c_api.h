/* Plain C surface over TaskEnvironment for foreign-function bindings.
 *
 * Handles are integers; a closed or unknown handle makes every call fail
 * with ARCRL_E_BAD_HANDLE instead of touching freed memory. Calls on one
 * handle must be serialized by the caller; distinct handles are independent.
 *
 * Observation buffers: planes = 10 * 30 * 30 floats (color, row, col),
 * mask = 30 * 30 bytes, info = ARCRL_INFO_LEN int32 values laid out as
 * {rows, cols, steps_remaining, submissions_remaining, outcome}.
 */
#ifndef ARCRL_C_API_H_
#define ARCRL_C_API_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int64_t arcrl_handle;

enum {
  ARCRL_OK = 0,
  ARCRL_E_UNKNOWN_TASK = 1,
  ARCRL_E_IO = 2,
  ARCRL_E_BAD_HANDLE = 3,
  ARCRL_E_INVALID_ACTION = 4,
  ARCRL_E_EPISODE_OVER = 5,
  ARCRL_E_NOT_RESET = 6,
  ARCRL_E_INTERNAL = 7,
};

enum {
  ARCRL_PLANES_LEN = 9000,
  ARCRL_MASK_LEN = 900,
  ARCRL_INFO_LEN = 5,
  ARCRL_NUM_ACTIONS = 5,
};

const char* arcrl_version(void);
/* Registration name for environment registries. */
const char* arcrl_env_name(void);
/* Message of the last failure on the calling thread, or "". */
const char* arcrl_last_error(void);

/* task: built-in name or ARC task JSON path. Generated tasks use 1000 demos
 * and 100 evals drawn from `seed`, which also seeds the pair stream. */
int arcrl_make_env(const char* task, uint64_t seed, arcrl_handle* out);
int arcrl_reset(arcrl_handle h, float* planes, uint8_t* mask, int32_t* info);
/* terminated = Success or FailSubmissions; truncated = FailTimeout. */
int arcrl_step(arcrl_handle h, int action, float* planes, uint8_t* mask, int32_t* info,
               double* reward, int* terminated, int* truncated);
int arcrl_close(arcrl_handle h);

#ifdef __cplusplus
}
#endif

#endif /* ARCRL_C_API_H_ */
