// Copyright 2026 The LGG Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the local grammar graph engine.
 *
 * Objects are opaque handles created by lgg_*_create/load/compile calls and
 * released with the matching lgg_*_free. Every fallible call returns an
 * lgg_status; on failure lgg_last_error() describes the problem (the message
 * is thread-local and valid until the next call on the same thread).
 * Strings returned through `char**` are heap allocated UTF-8 and must be
 * released with lgg_string_free. Structured results are JSON text.
 *
 * Handles are immutable after creation and may be shared between threads,
 * except lgg_enumerator and lgg_server which belong to one thread.
 */
#ifndef LGG_LGG_H_
#define LGG_LGG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(LGG_BUILDING_LIBRARY)
#define LGG_API __attribute__((visibility("default")))
#else
#define LGG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lgg_status {
  LGG_OK = 0,
  LGG_DONE = 1, /* enumeration exhausted, not an error */
  LGG_E_INVALID_ARGUMENT = 10,
  LGG_E_PARSE = 11,
  LGG_E_UNRESOLVED = 12,
  LGG_E_RECURSION = 13,
  LGG_E_VALIDATION = 14,
  LGG_E_CYCLE = 15,
  LGG_E_EMPTY_LANGUAGE = 16,
  LGG_E_OUT_OF_RANGE = 17,
  LGG_E_QUOTA = 18,
  LGG_E_CONFIG = 19,
  LGG_E_IO = 20,
  LGG_E_INTERNAL = 99
} lgg_status;

typedef struct lgg_resources lgg_resources;
typedef struct lgg_fst lgg_fst;
typedef struct lgg_enumerator lgg_enumerator;
typedef struct lgg_config lgg_config;
typedef struct lgg_dataset lgg_dataset;
typedef struct lgg_classifier lgg_classifier;
typedef struct lgg_server lgg_server;

LGG_API const char* lgg_version(void);
LGG_API const char* lgg_status_name(lgg_status status);
LGG_API const char* lgg_last_error(void);
LGG_API void lgg_string_free(char* s);

/* Resources: *.lgg grammars and *.lex lexicons. */
LGG_API lgg_status lgg_resources_load(const char* grammar_dir, const char* lexicon_dir,
                                      lgg_resources** out);
LGG_API void lgg_resources_free(lgg_resources* rs);
LGG_API lgg_status lgg_resources_hash(const lgg_resources* rs, char** out);
/* JSON array of grammar names. */
LGG_API lgg_status lgg_resources_grammars(const lgg_resources* rs, char** out_json);
/* *ok is 1 when there are no errors; the report lists every diagnostic. */
LGG_API lgg_status lgg_validate(const lgg_resources* rs, int* ok, char** report_json);

/* Compilation. With strict_empty, all-epsilon paths are an error instead of
 * being dropped. */
LGG_API lgg_status lgg_compile(const lgg_resources* rs, const char* root, int strict_empty,
                               lgg_fst** out);
LGG_API void lgg_fst_free(lgg_fst* fst);
/* {"name","states","transitions","paths","dropped_empty_paths"} */
LGG_API lgg_status lgg_fst_info(const lgg_fst* fst, char** out_json);
/* Exact decimal path count. */
LGG_API lgg_status lgg_fst_count(const lgg_fst* fst, char** out_decimal);
/* One line per transition: "src dst input [/ outputs]". */
LGG_API lgg_status lgg_fst_print(const lgg_fst* fst, char** out_text);

/* Path generation. Utterances are JSON objects
 * {"index":"<decimal>","text":...,"outputs":[...]}. */
LGG_API lgg_status lgg_unrank(const lgg_fst* fst, const char* index_decimal, char** out_json);
/* NULL bounds mean 0 and the total. The enumerator borrows `fst`, which
 * must outlive it. */
LGG_API lgg_status lgg_enumerate_open(const lgg_fst* fst, const char* begin_decimal,
                                      const char* end_decimal, lgg_enumerator** out);
/* LGG_DONE once the range is exhausted. *out_json is NULL unless LGG_OK. */
LGG_API lgg_status lgg_enumerate_next(lgg_enumerator* e, char** out_json);
LGG_API void lgg_enumerate_free(lgg_enumerator* e);
/* Newline-terminated JSON lines, one per draw. */
LGG_API lgg_status lgg_sample(const lgg_fst* fst, uint64_t n, uint64_t seed, int distinct,
                              char** out_jsonl);

/* Parsing mode. */
LGG_API lgg_status lgg_tokenize(const char* text, char** out_json);
/* Leftmost-longest matches: [{"begin","end","text","outputs"}...] */
LGG_API lgg_status lgg_annotate(const lgg_fst* fst, const char* text, char** out_json);

/* Composition config (JSON). */
LGG_API lgg_status lgg_config_load(const char* path, lgg_config** out);
LGG_API lgg_status lgg_config_parse(const char* json, lgg_config** out);
LGG_API lgg_status lgg_config_set_seed(lgg_config* cfg, uint64_t seed);
LGG_API void lgg_config_free(lgg_config* cfg);
/* JSON array of intent labels in config order. */
LGG_API lgg_status lgg_config_labels(const lgg_config* cfg, char** out_json);
LGG_API lgg_status lgg_compose_intent(const lgg_resources* rs, const lgg_config* cfg,
                                      const char* label, lgg_fst** out);

/* Datasets. `stamp` may be NULL; when set it is copied into the manifest. */
LGG_API lgg_status lgg_generate(const lgg_resources* rs, const lgg_config* cfg, unsigned jobs,
                                const char* stamp, lgg_dataset** out);
LGG_API lgg_status lgg_dataset_write(const lgg_dataset* ds, const char* dir, int overwrite);
/* A dataset directory or a single .jsonl file. */
LGG_API lgg_status lgg_dataset_read(const char* path, lgg_dataset** out);
LGG_API size_t lgg_dataset_size(const lgg_dataset* ds);
/* Empty object for datasets read from disk. */
LGG_API lgg_status lgg_dataset_manifest(const lgg_dataset* ds, char** out_json);
/* format: "jsonl" or "nlu_yaml". */
LGG_API lgg_status lgg_export(const lgg_dataset* ds, const char* format, int include_provenance,
                              const char* path, int overwrite);
LGG_API lgg_status lgg_stats(const lgg_dataset* ds, char** out_json);
LGG_API void lgg_dataset_free(lgg_dataset* ds);

/* Rule-based intent classification over composed intent transducers. */
LGG_API lgg_status lgg_classifier_create(const lgg_resources* rs, const lgg_config* cfg,
                                         lgg_classifier** out);
LGG_API void lgg_classifier_free(lgg_classifier* c);
LGG_API size_t lgg_classifier_size(const lgg_classifier* c);
/* threshold < 0 selects the config threshold. The non-verbose result is
 * {"label","score"[,"answer_url"]}, byte-identical to the HTTP endpoint. */
LGG_API lgg_status lgg_classify(const lgg_classifier* c, const char* text, double threshold,
                                int verbose, char** out_json);
LGG_API lgg_status lgg_coverage(const lgg_classifier* c, const char* corpus_path, size_t top_k,
                                char** out_json);

/* HTTP service: POST /classify, GET /health. */
LGG_API lgg_status lgg_server_create(lgg_server** out);
LGG_API lgg_status lgg_server_load(lgg_server* s, const lgg_classifier* c);
/* Serves on a background thread; port 0 picks a free port. */
LGG_API lgg_status lgg_server_start(lgg_server* s, const char* host, int port, int* bound_port);
/* Serves on the calling thread until lgg_server_stop. */
LGG_API lgg_status lgg_server_run(lgg_server* s, const char* host, int port);
LGG_API lgg_status lgg_server_stop(lgg_server* s);
LGG_API void lgg_server_free(lgg_server* s);

#ifdef __cplusplus
}
#endif

#endif /* LGG_LGG_H_ */
