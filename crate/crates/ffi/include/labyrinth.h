#ifndef LABYRINTH_H
#define LABYRINTH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LabDifficulty {
  LAB_DIFFICULTY_SUPER_EASY = 0,
  LAB_DIFFICULTY_EASY = 1,
  LAB_DIFFICULTY_MEDIUM = 2,
  LAB_DIFFICULTY_DIFFICULT = 3,
} LabDifficulty;

typedef enum LabDirection {
  LAB_DIRECTION_NORTH = 0,
  LAB_DIRECTION_EAST = 1,
  LAB_DIRECTION_SOUTH = 2,
  LAB_DIRECTION_WEST = 3,
} LabDirection;

typedef enum LabPhase {
  LAB_PHASE_SPLASH = 0,
  LAB_PHASE_INSTRUCTIONS = 1,
  LAB_PHASE_PLAYING = 2,
  LAB_PHASE_LEVEL_FINISHED = 3,
  LAB_PHASE_GAME_OVER = 4,
  LAB_PHASE_GAME_FINISHED = 5,
} LabPhase;

typedef enum LabStatus {
  LAB_STATUS_OK = 0,
  LAB_STATUS_NULL_ARGUMENT = 1,
  LAB_STATUS_INVALID_ARGUMENT = 2,
  LAB_STATUS_CONFIG = 3,
  LAB_STATUS_REPLAY = 4,
  LAB_STATUS_INTERNAL = 5,
} LabStatus;

/*
 Game configuration handle.
 */
typedef struct LabConfig LabConfig;

/*
 Game session handle.
 */
typedef struct LabSession LabSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or NULL after a
 success. Valid until the next call into the library on this thread.
 */
const char *lab_last_error(void);

/*
 # Safety
 `s` must be NULL or a string returned by this library, not yet freed.
 */
void lab_string_free(char *s);

/*
 # Safety
 `out` must be valid for writes.
 */
enum LabStatus lab_config_default(struct LabConfig **out);

/*
 Builds a configuration from properties text. Unknown keys are ignored.

 # Safety
 `text` must be a NUL-terminated UTF-8 string; `out` must be valid for writes.
 */
enum LabStatus lab_config_from_properties(const char *text, struct LabConfig **out);

/*
 # Safety
 `cfg` must be NULL or a handle from this library, not yet freed.
 */
void lab_config_free(struct LabConfig *cfg);

/*
 Starts a session on the splash screen. The configuration is copied.

 # Safety
 `cfg` must be a live config handle; `out` must be valid for writes.
 */
enum LabStatus lab_session_new(const struct LabConfig *cfg, uint64_t seed, struct LabSession **out);

/*
 # Safety
 `s` must be NULL or a handle from this library, not yet freed.
 */
void lab_session_free(struct LabSession *s);

/*
 Queues a move for the next step. `dir` is a `LabDirection`. `accepted`
 may be NULL; otherwise it receives whether the current phase took the input.

 # Safety
 `s` must be a live session handle; `accepted` NULL or valid for writes.
 */
enum LabStatus lab_session_key(struct LabSession *s, uint32_t dir, bool *accepted);

/*
 # Safety
 As for [`lab_session_key`].
 */
enum LabStatus lab_session_advance(struct LabSession *s, bool *accepted);

/*
 `difficulty` is a `LabDifficulty`.

 # Safety
 As for [`lab_session_key`].
 */
enum LabStatus lab_session_select(struct LabSession *s, uint32_t difficulty, bool *accepted);

/*
 # Safety
 As for [`lab_session_key`].
 */
enum LabStatus lab_session_restart(struct LabSession *s, bool *accepted);

/*
 Advances one tick. `events` (may be NULL) receives how many events the
 tick produced; they are delivered with the next snapshot.

 # Safety
 `s` must be a live session handle; `events` NULL or valid for writes.
 */
enum LabStatus lab_session_step(struct LabSession *s, uint32_t *events);

/*
 # Safety
 `s` must be a live session handle; `out` valid for writes.
 */
enum LabStatus lab_session_phase(const struct LabSession *s, enum LabPhase *out);

/*
 # Safety
 `s` must be a live session handle; `out` valid for writes.
 */
enum LabStatus lab_session_tick(const struct LabSession *s, uint64_t *out);

/*
 Fog-filtered state as the JSON `state` message the server sends. Drains
 pending events. Free the result with [`lab_string_free`].

 # Safety
 `s` must be a live session handle; `out` valid for writes.
 */
enum LabStatus lab_session_snapshot_json(struct LabSession *s, char **out);

/*
 SHA-256 of the canonical state as 64 hex digits. Free the result with
 [`lab_string_free`].

 # Safety
 `s` must be a live session handle; `out` valid for writes.
 */
enum LabStatus lab_session_digest_hex(const struct LabSession *s, char **out);

/*
 Generates a maze and draws it with box glyphs, hero and monster at their
 starts. Free the result with [`lab_string_free`].

 # Safety
 `out` must be valid for writes.
 */
enum LabStatus lab_maze_render(uint16_t width, uint16_t height, uint64_t seed, char **out);

/*
 Replays a recorded session file over `cfg` (its header overrides the
 difficulty and level count) and writes the final state digest to `out`.
 A file whose `#digest` disagrees with the replay fails with
 `LAB_STATUS_REPLAY`. Free the result with [`lab_string_free`].

 # Safety
 `cfg` must be a live config handle, `text` a NUL-terminated UTF-8
 string, `out` valid for writes.
 */
enum LabStatus lab_replay_run(const struct LabConfig *cfg, const char *text, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LABYRINTH_H */
