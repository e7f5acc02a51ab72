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

#include "lgg/lgg.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "json.hpp"
#include "lgg/annotator.hpp"
#include "lgg/assembler.hpp"
#include "lgg/error.hpp"
#include "lgg/exporter.hpp"
#include "lgg/fst.hpp"
#include "lgg/grammar.hpp"
#include "lgg/pathgen.hpp"
#include "lgg/service.hpp"

struct lgg_resources {
  lgg::ResourceSet rs;
};

struct lgg_fst {
  lgg::Fst fst;
  lgg::PathCountTable counts;
};

// Borrows the lgg_fst it was opened on.
struct lgg_enumerator {
  lgg::Enumerator e;
};

struct lgg_config {
  lgg::CompositionConfig cfg;
};

struct lgg_dataset {
  std::vector<lgg::DatasetRecord> records;
  std::optional<lgg::Dataset> generated;
};

struct lgg_classifier {
  std::shared_ptr<const lgg::ServiceResources> res;
};

struct lgg_server {
  std::shared_ptr<lgg::ClassifyService> service = std::make_shared<lgg::ClassifyService>();
  std::unique_ptr<lgg::HttpServer> http;
};

namespace {

using ordered_json = nlohmann::ordered_json;

thread_local std::string g_last_error;

lgg_status ToStatus(lgg::ErrorCode code) {
  using lgg::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return LGG_E_INVALID_ARGUMENT;
    case ErrorCode::kParse: return LGG_E_PARSE;
    case ErrorCode::kUnresolved: return LGG_E_UNRESOLVED;
    case ErrorCode::kRecursion: return LGG_E_RECURSION;
    case ErrorCode::kValidation: return LGG_E_VALIDATION;
    case ErrorCode::kCycle: return LGG_E_CYCLE;
    case ErrorCode::kEmptyLanguage: return LGG_E_EMPTY_LANGUAGE;
    case ErrorCode::kOutOfRange: return LGG_E_OUT_OF_RANGE;
    case ErrorCode::kQuota: return LGG_E_QUOTA;
    case ErrorCode::kConfig: return LGG_E_CONFIG;
    case ErrorCode::kIo: return LGG_E_IO;
    case ErrorCode::kInternal: return LGG_E_INTERNAL;
  }
  return LGG_E_INTERNAL;
}

template <typename F>
lgg_status Guard(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const lgg::Error& e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LGG_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LGG_E_INTERNAL;
  }
}

lgg_status Invalid(const char* what) {
  g_last_error = std::string("invalid argument: ") + what;
  return LGG_E_INVALID_ARGUMENT;
}

char* Dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size() + 1);
  return p;
}

ordered_json UtteranceJson(const lgg::RenderedUtterance& u) {
  ordered_json j;
  j["index"] = u.index.str();
  j["text"] = u.text;
  ordered_json outs = ordered_json::array();
  for (const auto& o : u.outputs)
    if (!lgg::IsPartMarker(o)) outs.push_back(o);
  j["outputs"] = std::move(outs);
  return j;
}

ordered_json MatchJson(const lgg::Match& m, bool with_name) {
  ordered_json j;
  if (with_name) j["intent"] = m.name;
  j["begin"] = m.begin;
  j["end"] = m.end;
  j["text"] = m.text;
  j["outputs"] = m.outputs;
  return j;
}

lgg_fst* NewFst(lgg::Fst fst) {
  lgg::PathCountTable counts = lgg::CountPaths(fst);
  return new lgg_fst{std::move(fst), std::move(counts)};
}

}  // namespace

extern "C" {

const char* lgg_version(void) { return "0.1.0"; }

const char* lgg_status_name(lgg_status status) {
  switch (status) {
    case LGG_OK: return "ok";
    case LGG_DONE: return "done";
    case LGG_E_INVALID_ARGUMENT: return "invalid-argument";
    case LGG_E_PARSE: return "parse";
    case LGG_E_UNRESOLVED: return "unresolved";
    case LGG_E_RECURSION: return "recursion";
    case LGG_E_VALIDATION: return "validation";
    case LGG_E_CYCLE: return "cycle";
    case LGG_E_EMPTY_LANGUAGE: return "empty-language";
    case LGG_E_OUT_OF_RANGE: return "out-of-range";
    case LGG_E_QUOTA: return "quota";
    case LGG_E_CONFIG: return "config";
    case LGG_E_IO: return "io";
    case LGG_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* lgg_last_error(void) { return g_last_error.c_str(); }

void lgg_string_free(char* s) { std::free(s); }

lgg_status lgg_resources_load(const char* grammar_dir, const char* lexicon_dir,
                              lgg_resources** out) {
  if (!grammar_dir || !lexicon_dir || !out) return Invalid("null pointer");
  return Guard([&] {
    *out = new lgg_resources{lgg::LoadResourceSet(grammar_dir, lexicon_dir)};
    return LGG_OK;
  });
}

void lgg_resources_free(lgg_resources* rs) { delete rs; }

lgg_status lgg_resources_hash(const lgg_resources* rs, char** out) {
  if (!rs || !out) return Invalid("null pointer");
  return Guard([&] {
    *out = Dup(rs->rs.content_hash());
    return LGG_OK;
  });
}

lgg_status lgg_resources_grammars(const lgg_resources* rs, char** out_json) {
  if (!rs || !out_json) return Invalid("null pointer");
  return Guard([&] {
    ordered_json j = ordered_json::array();
    for (const auto& [name, g] : rs->rs.grammars()) j.push_back(name);
    *out_json = Dup(j.dump());
    return LGG_OK;
  });
}

lgg_status lgg_validate(const lgg_resources* rs, int* ok, char** report_json) {
  if (!rs || !ok || !report_json) return Invalid("null pointer");
  return Guard([&] {
    lgg::ValidationReport report = lgg::Validate(rs->rs);
    ordered_json j;
    j["ok"] = report.ok;
    ordered_json diags = ordered_json::array();
    for (const auto& d : report.diagnostics) {
      ordered_json dj;
      dj["severity"] = d.severity == lgg::Severity::kError ? "error" : "warning";
      dj["grammar"] = d.grammar;
      dj["node"] = d.node ? ordered_json(*d.node) : ordered_json(nullptr);
      dj["message"] = d.message;
      diags.push_back(std::move(dj));
    }
    j["diagnostics"] = std::move(diags);
    *ok = report.ok ? 1 : 0;
    *report_json = Dup(j.dump());
    return LGG_OK;
  });
}

lgg_status lgg_compile(const lgg_resources* rs, const char* root, int strict_empty,
                       lgg_fst** out) {
  if (!rs || !root || !out) return Invalid("null pointer");
  return Guard([&] {
    lgg::CompileOptions opts;
    opts.empty_paths = strict_empty ? lgg::EmptyPathPolicy::kError
                                    : lgg::EmptyPathPolicy::kDropWithWarning;
    *out = NewFst(lgg::Compile(rs->rs, root, opts));
    return LGG_OK;
  });
}

void lgg_fst_free(lgg_fst* fst) { delete fst; }

lgg_status lgg_fst_info(const lgg_fst* fst, char** out_json) {
  if (!fst || !out_json) return Invalid("null pointer");
  return Guard([&] {
    ordered_json j;
    j["name"] = fst->fst.name();
    j["states"] = fst->fst.NumStates();
    j["transitions"] = fst->fst.NumTransitions();
    j["paths"] = fst->counts.total().str();
    j["dropped_empty_paths"] = fst->fst.dropped_empty_paths().str();
    *out_json = Dup(j.dump());
    return LGG_OK;
  });
}

lgg_status lgg_fst_count(const lgg_fst* fst, char** out_decimal) {
  if (!fst || !out_decimal) return Invalid("null pointer");
  return Guard([&] {
    *out_decimal = Dup(fst->counts.total().str());
    return LGG_OK;
  });
}

lgg_status lgg_fst_print(const lgg_fst* fst, char** out_text) {
  if (!fst || !out_text) return Invalid("null pointer");
  return Guard([&] {
    std::ostringstream os;
    for (uint32_t s = 0; s < fst->fst.NumStates(); ++s) {
      for (const auto& t : fst->fst.Transitions(s)) {
        os << s << '\t' << t.dst << '\t' << lgg::FormatTokenString(t.input);
        bool first = true;
        for (const auto& o : t.outputs) {
          if (lgg::IsPartMarker(o)) continue;
          os << (first ? "\t/ " : " ") << o;
          first = false;
        }
        os << '\n';
      }
    }
    os << lgg::Fst::kFinal << '\n';
    *out_text = Dup(os.str());
    return LGG_OK;
  });
}

lgg_status lgg_unrank(const lgg_fst* fst, const char* index_decimal, char** out_json) {
  if (!fst || !index_decimal || !out_json) return Invalid("null pointer");
  return Guard([&] {
    auto u = lgg::Unrank(fst->fst, fst->counts, lgg::ParsePathIndex(index_decimal));
    *out_json = Dup(UtteranceJson(u).dump());
    return LGG_OK;
  });
}

lgg_status lgg_enumerate_open(const lgg_fst* fst, const char* begin_decimal,
                              const char* end_decimal, lgg_enumerator** out) {
  if (!fst || !out) return Invalid("null pointer");
  return Guard([&] {
    lgg::BigInt begin = begin_decimal ? lgg::ParsePathIndex(begin_decimal).value : lgg::BigInt(0);
    lgg::BigInt end = end_decimal ? lgg::ParsePathIndex(end_decimal).value : fst->counts.total();
    *out = new lgg_enumerator{lgg::Enumerator(fst->fst, fst->counts, begin, end)};
    return LGG_OK;
  });
}

lgg_status lgg_enumerate_next(lgg_enumerator* e, char** out_json) {
  if (!e || !out_json) return Invalid("null pointer");
  *out_json = nullptr;
  return Guard([&] {
    auto u = e->e.Next();
    if (!u) return LGG_DONE;
    *out_json = Dup(UtteranceJson(*u).dump());
    return LGG_OK;
  });
}

void lgg_enumerate_free(lgg_enumerator* e) { delete e; }

lgg_status lgg_sample(const lgg_fst* fst, uint64_t n, uint64_t seed, int distinct,
                      char** out_jsonl) {
  if (!fst || !out_jsonl) return Invalid("null pointer");
  return Guard([&] {
    std::string out;
    for (const auto& u : lgg::Sample(fst->fst, fst->counts, n, seed, distinct != 0)) {
      out += UtteranceJson(u).dump();
      out += '\n';
    }
    *out_jsonl = Dup(out);
    return LGG_OK;
  });
}

lgg_status lgg_tokenize(const char* text, char** out_json) {
  if (!text || !out_json) return Invalid("null pointer");
  return Guard([&] {
    ordered_json j = ordered_json::array();
    for (const auto& t : lgg::Tokenize(text).tokens) {
      j.push_back({{"surface", t.surface}, {"norm", t.norm}, {"begin", t.begin}, {"end", t.end}});
    }
    *out_json = Dup(j.dump());
    return LGG_OK;
  });
}

lgg_status lgg_annotate(const lgg_fst* fst, const char* text, char** out_json) {
  if (!fst || !text || !out_json) return Invalid("null pointer");
  return Guard([&] {
    ordered_json j = ordered_json::array();
    for (const auto& m : lgg::MatchLongest(fst->fst, lgg::Tokenize(text))) {
      j.push_back(MatchJson(m, false));
    }
    *out_json = Dup(j.dump());
    return LGG_OK;
  });
}

lgg_status lgg_config_load(const char* path, lgg_config** out) {
  if (!path || !out) return Invalid("null pointer");
  return Guard([&] {
    *out = new lgg_config{lgg::ParseCompositionConfig(lgg::ReadFile(path))};
    return LGG_OK;
  });
}

lgg_status lgg_config_parse(const char* json, lgg_config** out) {
  if (!json || !out) return Invalid("null pointer");
  return Guard([&] {
    *out = new lgg_config{lgg::ParseCompositionConfig(json)};
    return LGG_OK;
  });
}

lgg_status lgg_config_set_seed(lgg_config* cfg, uint64_t seed) {
  if (!cfg) return Invalid("null pointer");
  cfg->cfg.seed = seed;
  return LGG_OK;
}

void lgg_config_free(lgg_config* cfg) { delete cfg; }

lgg_status lgg_config_labels(const lgg_config* cfg, char** out_json) {
  if (!cfg || !out_json) return Invalid("null pointer");
  return Guard([&] {
    ordered_json j = ordered_json::array();
    for (const auto& i : cfg->cfg.intents) j.push_back(i.label);
    *out_json = Dup(j.dump());
    return LGG_OK;
  });
}

lgg_status lgg_compose_intent(const lgg_resources* rs, const lgg_config* cfg, const char* label,
                              lgg_fst** out) {
  if (!rs || !cfg || !label || !out) return Invalid("null pointer");
  return Guard([&] {
    const lgg::IntentSpec* spec = cfg->cfg.Find(label);
    if (!spec) {
      throw lgg::Error(lgg::ErrorCode::kInvalidArgument,
                       std::string("unknown intent '") + label + "'");
    }
    *out = NewFst(lgg::ComposeIntent(rs->rs, *spec));
    return LGG_OK;
  });
}

lgg_status lgg_generate(const lgg_resources* rs, const lgg_config* cfg, unsigned jobs,
                        const char* stamp, lgg_dataset** out) {
  if (!rs || !cfg || !out) return Invalid("null pointer");
  return Guard([&] {
    lgg::Dataset ds = lgg::GenerateDataset(rs->rs, cfg->cfg, jobs == 0 ? 1 : jobs);
    if (stamp) ds.manifest.stamp = std::string(stamp);
    auto* d = new lgg_dataset;
    d->records = ds.All();
    d->generated = std::move(ds);
    *out = d;
    return LGG_OK;
  });
}

lgg_status lgg_dataset_write(const lgg_dataset* ds, const char* dir, int overwrite) {
  if (!ds || !dir) return Invalid("null pointer");
  if (!ds->generated) return Invalid("dataset was not generated in this process");
  return Guard([&] {
    lgg::WriteDataset(*ds->generated, dir, overwrite != 0);
    return LGG_OK;
  });
}

lgg_status lgg_dataset_read(const char* path, lgg_dataset** out) {
  if (!path || !out) return Invalid("null pointer");
  return Guard([&] {
    auto* d = new lgg_dataset;
    d->records = lgg::ReadDataset(path);
    *out = d;
    return LGG_OK;
  });
}

size_t lgg_dataset_size(const lgg_dataset* ds) { return ds ? ds->records.size() : 0; }

lgg_status lgg_dataset_manifest(const lgg_dataset* ds, char** out_json) {
  if (!ds || !out_json) return Invalid("null pointer");
  return Guard([&] {
    *out_json = Dup(ds->generated ? lgg::ManifestToJson(ds->generated->manifest) : "{}");
    return LGG_OK;
  });
}

lgg_status lgg_export(const lgg_dataset* ds, const char* format, int include_provenance,
                      const char* path, int overwrite) {
  if (!ds || !format || !path) return Invalid("null pointer");
  return Guard([&] {
    lgg::ExportOptions opts;
    opts.format = lgg::ParseExportFormat(format);
    opts.include_provenance = include_provenance != 0;
    opts.output = path;
    opts.overwrite = overwrite != 0;
    lgg::Export(ds->records, opts);
    return LGG_OK;
  });
}

lgg_status lgg_stats(const lgg_dataset* ds, char** out_json) {
  if (!ds || !out_json) return Invalid("null pointer");
  return Guard([&] {
    *out_json = Dup(lgg::StatsToJson(lgg::ComputeStats(ds->records)));
    return LGG_OK;
  });
}

void lgg_dataset_free(lgg_dataset* ds) { delete ds; }

lgg_status lgg_classifier_create(const lgg_resources* rs, const lgg_config* cfg,
                                 lgg_classifier** out) {
  if (!rs || !cfg || !out) return Invalid("null pointer");
  return Guard([&] {
    *out = new lgg_classifier{lgg::BuildServiceResources(rs->rs, cfg->cfg)};
    return LGG_OK;
  });
}

void lgg_classifier_free(lgg_classifier* c) { delete c; }

size_t lgg_classifier_size(const lgg_classifier* c) { return c ? c->res->classifier.size() : 0; }

lgg_status lgg_classify(const lgg_classifier* c, const char* text, double threshold, int verbose,
                        char** out_json) {
  if (!c || !text || !out_json) return Invalid("null pointer");
  return Guard([&] {
    double th = threshold < 0 ? c->res->threshold : threshold;
    lgg::ClassificationResult r = c->res->classifier.Classify(text, th);
    std::string base = lgg::ClassifyResponseJson(*c->res, r);
    if (!verbose) {
      *out_json = Dup(base);
      return LGG_OK;
    }
    ordered_json j = ordered_json::parse(base);
    j["tied"] = r.tied;
    ordered_json ev = ordered_json::array();
    for (const auto& e : r.evidence) {
      if (e.matches.empty()) continue;
      ordered_json ms = ordered_json::array();
      for (const auto& m : e.matches) ms.push_back(MatchJson(m, false));
      ev.push_back({{"intent", e.label}, {"longest", e.longest}, {"matches", std::move(ms)}});
    }
    j["evidence"] = std::move(ev);
    *out_json = Dup(j.dump());
    return LGG_OK;
  });
}

lgg_status lgg_coverage(const lgg_classifier* c, const char* corpus_path, size_t top_k,
                        char** out_json) {
  if (!c || !corpus_path || !out_json) return Invalid("null pointer");
  return Guard([&] {
    std::ifstream in(corpus_path, std::ios::binary);
    if (!in) throw lgg::Error(lgg::ErrorCode::kIo, std::string("cannot read ") + corpus_path);
    lgg::CoverageReport rep = lgg::Coverage(c->res->classifier, in, top_k);
    ordered_json j;
    ordered_json lines = ordered_json::array();
    for (const auto& l : rep.lines) {
      ordered_json ms = ordered_json::array();
      for (const auto& m : l.matches) ms.push_back(MatchJson(m, true));
      lines.push_back({{"line", l.line}, {"text", l.text}, {"matches", std::move(ms)}});
    }
    j["lines"] = std::move(lines);
    ordered_json summary;
    summary["total_lines"] = rep.lines.size();
    summary["unmatched_lines"] = rep.unmatched_lines;
    ordered_json per = ordered_json::object();
    for (const auto& [label, n] : rep.matched_lines) {
      per[label] = {{"matched_lines", n}, {"percent", rep.PercentMatched(label)}};
    }
    summary["intents"] = std::move(per);
    ordered_json bigrams = ordered_json::array();
    for (const auto& [bg, n] : rep.top_unmatched_bigrams) {
      bigrams.push_back({{"bigram", bg}, {"count", n}});
    }
    summary["top_unmatched_bigrams"] = std::move(bigrams);
    j["summary"] = std::move(summary);
    *out_json = Dup(j.dump());
    return LGG_OK;
  });
}

lgg_status lgg_server_create(lgg_server** out) {
  if (!out) return Invalid("null pointer");
  return Guard([&] {
    *out = new lgg_server;
    return LGG_OK;
  });
}

lgg_status lgg_server_load(lgg_server* s, const lgg_classifier* c) {
  if (!s || !c) return Invalid("null pointer");
  s->service->Load(c->res);
  return LGG_OK;
}

lgg_status lgg_server_start(lgg_server* s, const char* host, int port, int* bound_port) {
  if (!s || !host) return Invalid("null pointer");
  if (s->http) return Invalid("server already started");
  return Guard([&] {
    s->http = std::make_unique<lgg::HttpServer>(s->service);
    int p = s->http->Start(host, port);
    if (bound_port) *bound_port = p;
    return LGG_OK;
  });
}

lgg_status lgg_server_run(lgg_server* s, const char* host, int port) {
  if (!s || !host) return Invalid("null pointer");
  if (s->http) return Invalid("server already started");
  return Guard([&] {
    s->http = std::make_unique<lgg::HttpServer>(s->service);
    s->http->Run(host, port);
    return LGG_OK;
  });
}

lgg_status lgg_server_stop(lgg_server* s) {
  if (!s) return Invalid("null pointer");
  return Guard([&] {
    if (s->http) s->http->Stop();
    return LGG_OK;
  });
}

void lgg_server_free(lgg_server* s) {
  if (!s) return;
  if (s->http) s->http->Stop();
  delete s;
}

}  // extern "C"
