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

// lgg: author-compile-generate-annotate workflow over local grammar graphs.
//
// Exit codes: 0 success, 1 user error, 2 internal error.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lgg/lgg.h"

namespace {

using json = nlohmann::ordered_json;

// Thrown on a failed library call; carries the status for the exit code.
struct Failure {
  lgg_status status;
  std::string message;
};

struct UsageError {
  std::string message;
};

void Check(lgg_status st) {
  if (st != LGG_OK && st != LGG_DONE) throw Failure{st, lgg_last_error()};
}

// Owned C string returned by the library.
std::string Take(char* s) {
  std::string out = s ? s : "";
  lgg_string_free(s);
  return out;
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Resources = std::unique_ptr<lgg_resources, Deleter<lgg_resources, lgg_resources_free>>;
using FstHandle = std::unique_ptr<lgg_fst, Deleter<lgg_fst, lgg_fst_free>>;
using Config = std::unique_ptr<lgg_config, Deleter<lgg_config, lgg_config_free>>;
using DatasetHandle = std::unique_ptr<lgg_dataset, Deleter<lgg_dataset, lgg_dataset_free>>;
using ClassifierHandle =
    std::unique_ptr<lgg_classifier, Deleter<lgg_classifier, lgg_classifier_free>>;
using Enum = std::unique_ptr<lgg_enumerator, Deleter<lgg_enumerator, lgg_enumerate_free>>;
using Server = std::unique_ptr<lgg_server, Deleter<lgg_server, lgg_server_free>>;

struct Globals {
  std::string grammars;
  std::string lexicons;
  std::optional<uint64_t> seed;
  std::string config;
  std::string out;
  std::string format = "text";
  bool force = false;
  unsigned jobs = 1;
};

bool JsonLines(const Globals& g) { return g.format == "json-lines"; }

Resources LoadResources(const Globals& g) {
  if (g.grammars.empty() || g.lexicons.empty()) {
    throw UsageError{"--grammars DIR and --lexicons DIR are required"};
  }
  lgg_resources* rs = nullptr;
  Check(lgg_resources_load(g.grammars.c_str(), g.lexicons.c_str(), &rs));
  return Resources(rs);
}

Config LoadConfig(const Globals& g) {
  if (g.config.empty()) throw UsageError{"--config FILE is required"};
  lgg_config* cfg = nullptr;
  Check(lgg_config_load(g.config.c_str(), &cfg));
  if (g.seed) Check(lgg_config_set_seed(cfg, *g.seed));
  return Config(cfg);
}

// Target automaton: a grammar (--root) or a composed intent (--intent).
struct Target {
  std::string root;
  std::string intent;
  bool strict_empty = false;
};

void AddTarget(CLI::App* cmd, Target& t) {
  cmd->add_option("--root", t.root, "Root grammar name");
  cmd->add_option("--intent", t.intent, "Composed intent label (needs --config)");
}

FstHandle BuildTarget(const Globals& g, const Target& t, const lgg_resources* rs) {
  if (t.root.empty() == t.intent.empty()) {
    throw UsageError{"exactly one of --root or --intent is required"};
  }
  lgg_fst* fst = nullptr;
  if (!t.root.empty()) {
    Check(lgg_compile(rs, t.root.c_str(), t.strict_empty ? 1 : 0, &fst));
  } else {
    Config cfg = LoadConfig(g);
    Check(lgg_compose_intent(rs, cfg.get(), t.intent.c_str(), &fst));
  }
  FstHandle handle(fst);
  char* info = nullptr;
  Check(lgg_fst_info(fst, &info));
  json j = json::parse(Take(info));
  if (j["dropped_empty_paths"].get<std::string>() != "0") {
    std::cerr << "warning: dropped " << j["dropped_empty_paths"].get<std::string>()
              << " all-epsilon path(s) from " << j["name"].get<std::string>() << "\n";
  }
  return handle;
}

std::vector<std::string> ReadInputLines(const std::string& text, const std::string& in) {
  std::vector<std::string> lines;
  if (!text.empty()) {
    lines.push_back(text);
    return lines;
  }
  std::ifstream file;
  std::istream* is = &std::cin;
  if (!in.empty() && in != "-") {
    file.open(in, std::ios::binary);
    if (!file) throw Failure{LGG_E_IO, "cannot read " + in};
    is = &file;
  }
  std::string line;
  while (std::getline(*is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

int RunValidate(const Globals& g) {
  Resources rs = LoadResources(g);
  int ok = 0;
  char* report = nullptr;
  Check(lgg_validate(rs.get(), &ok, &report));
  json j = json::parse(Take(report));
  if (JsonLines(g)) {
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& d : j["diagnostics"]) {
      std::cout << d["severity"].get<std::string>() << ": ";
      if (!d["grammar"].get<std::string>().empty()) std::cout << d["grammar"].get<std::string>() << ": ";
      std::cout << d["message"].get<std::string>() << "\n";
    }
    char* names = nullptr;
    Check(lgg_resources_grammars(rs.get(), &names));
    std::cout << (ok ? "ok" : "invalid") << " (" << json::parse(Take(names)).size()
              << " grammars)\n";
  }
  return ok ? 0 : 1;
}

int RunCompile(const Globals& g, const Target& t, bool dump) {
  Resources rs = LoadResources(g);
  FstHandle fst = BuildTarget(g, t, rs.get());
  if (dump) {
    char* text = nullptr;
    Check(lgg_fst_print(fst.get(), &text));
    std::cout << Take(text);
    return 0;
  }
  char* info = nullptr;
  Check(lgg_fst_info(fst.get(), &info));
  json j = json::parse(Take(info));
  if (JsonLines(g)) {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << j["name"].get<std::string>() << ": " << j["states"] << " states, "
              << j["transitions"] << " transitions, " << j["paths"].get<std::string>()
              << " paths\n";
  }
  return 0;
}

void PrintCount(const Globals& g, const std::string& kind, const std::string& name,
                const std::string& count, bool labelled) {
  if (JsonLines(g)) {
    json j;
    j[kind] = name;
    j["paths"] = count;
    std::cout << j.dump() << "\n";
  } else if (labelled) {
    std::cout << kind << "\t" << name << "\t" << count << "\n";
  } else {
    std::cout << count << "\n";
  }
}

int RunCount(const Globals& g, const Target& t, bool all) {
  Resources rs = LoadResources(g);
  if (!all) {
    FstHandle fst = BuildTarget(g, t, rs.get());
    char* count = nullptr;
    Check(lgg_fst_count(fst.get(), &count));
    PrintCount(g, t.root.empty() ? "intent" : "graph", t.root.empty() ? t.intent : t.root,
               Take(count), false);
    return 0;
  }
  // Per-module counts, then composed counts per intent.
  char* names = nullptr;
  Check(lgg_resources_grammars(rs.get(), &names));
  for (const auto& name : json::parse(Take(names))) {
    lgg_fst* fst = nullptr;
    std::string n = name.get<std::string>();
    lgg_status st = lgg_compile(rs.get(), n.c_str(), 0, &fst);
    if (st != LGG_OK) {
      std::cerr << "warning: " << n << ": " << lgg_last_error() << "\n";
      continue;
    }
    FstHandle handle(fst);
    char* count = nullptr;
    Check(lgg_fst_count(fst, &count));
    PrintCount(g, "graph", n, Take(count), true);
  }
  if (!g.config.empty()) {
    Config cfg = LoadConfig(g);
    char* labels = nullptr;
    Check(lgg_config_labels(cfg.get(), &labels));
    for (const auto& label : json::parse(Take(labels))) {
      lgg_fst* fst = nullptr;
      Check(lgg_compose_intent(rs.get(), cfg.get(), label.get<std::string>().c_str(), &fst));
      FstHandle handle(fst);
      char* count = nullptr;
      Check(lgg_fst_count(fst, &count));
      PrintCount(g, "intent", label.get<std::string>(), Take(count), true);
    }
  }
  return 0;
}

void PrintUtterance(const Globals& g, const std::string& line) {
  if (JsonLines(g)) {
    std::cout << line << "\n";
  } else {
    std::cout << json::parse(line)["text"].get<std::string>() << "\n";
  }
}

int RunEnum(const Globals& g, const Target& t, const std::string& from, const std::string& to) {
  Resources rs = LoadResources(g);
  FstHandle fst = BuildTarget(g, t, rs.get());
  lgg_enumerator* e = nullptr;
  Check(lgg_enumerate_open(fst.get(), from.empty() ? nullptr : from.c_str(),
                           to.empty() ? nullptr : to.c_str(), &e));
  Enum handle(e);
  while (true) {
    char* item = nullptr;
    lgg_status st = lgg_enumerate_next(e, &item);
    Check(st);
    if (st == LGG_DONE) break;
    PrintUtterance(g, Take(item));
  }
  return 0;
}

std::vector<std::string> SplitLines(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start < s.size()) {
    size_t nl = s.find('\n', start);
    if (nl == std::string::npos) nl = s.size();
    out.push_back(s.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

int RunSample(const Globals& g, const Target& t, uint64_t n, bool distinct) {
  if (!g.seed) throw UsageError{"--seed N is required for sample"};
  Resources rs = LoadResources(g);
  FstHandle fst = BuildTarget(g, t, rs.get());
  char* out = nullptr;
  Check(lgg_sample(fst.get(), n, *g.seed, distinct ? 1 : 0, &out));
  for (const auto& line : SplitLines(Take(out))) PrintUtterance(g, line);
  return 0;
}

int RunGenerate(const Globals& g, const std::string& stamp) {
  if (!g.seed) throw UsageError{"--seed N is required for generate"};
  if (g.out.empty()) throw UsageError{"--out DIR is required for generate"};
  Resources rs = LoadResources(g);
  Config cfg = LoadConfig(g);
  lgg_dataset* ds = nullptr;
  Check(lgg_generate(rs.get(), cfg.get(), g.jobs, stamp.empty() ? nullptr : stamp.c_str(), &ds));
  DatasetHandle handle(ds);
  Check(lgg_dataset_write(ds, g.out.c_str(), g.force ? 1 : 0));
  char* manifest = nullptr;
  Check(lgg_dataset_manifest(ds, &manifest));
  json m = json::parse(Take(manifest));
  if (JsonLines(g)) {
    std::cout << m.dump() << "\n";
  } else {
    for (const auto& im : m["intents"]) {
      std::cout << im["label"].get<std::string>() << ": generated " << im["generated"]
                << ", emitted " << im["emitted"] << " (" << im["train"] << "/"
                << im["validation"] << "/" << im["test"] << ")\n";
    }
    std::cout << "collisions: " << m["collisions"]["count"] << "\n";
    std::cout << "wrote " << lgg_dataset_size(ds) << " records to " << g.out << "\n";
  }
  return 0;
}

int RunExport(const Globals& g, const std::string& in, const std::string& to, bool provenance) {
  if (in.empty()) throw UsageError{"--in PATH is required for export"};
  if (g.out.empty()) throw UsageError{"--out FILE is required for export"};
  lgg_dataset* ds = nullptr;
  Check(lgg_dataset_read(in.c_str(), &ds));
  DatasetHandle handle(ds);
  Check(lgg_export(ds, to.c_str(), provenance ? 1 : 0, g.out.c_str(), g.force ? 1 : 0));
  if (!JsonLines(g)) std::cout << "exported " << lgg_dataset_size(ds) << " records to " << g.out << "\n";
  return 0;
}

int RunAnnotate(const Globals& g, const Target& t, const std::string& text, const std::string& in) {
  Resources rs = LoadResources(g);
  FstHandle fst = BuildTarget(g, t, rs.get());
  size_t lineno = 0;
  for (const auto& line : ReadInputLines(text, in)) {
    ++lineno;
    char* out = nullptr;
    Check(lgg_annotate(fst.get(), line.c_str(), &out));
    json matches = json::parse(Take(out));
    if (JsonLines(g)) {
      json j;
      j["line"] = lineno;
      j["matches"] = matches;
      std::cout << j.dump() << "\n";
    } else {
      for (const auto& m : matches) {
        std::cout << lineno << "\t" << m["begin"] << "\t" << m["end"] << "\t"
                  << m["text"].get<std::string>() << "\n";
      }
    }
  }
  return 0;
}

ClassifierHandle BuildClassifier(const Globals& g) {
  Resources rs = LoadResources(g);
  Config cfg = LoadConfig(g);
  lgg_classifier* c = nullptr;
  Check(lgg_classifier_create(rs.get(), cfg.get(), &c));
  return ClassifierHandle(c);
}

int RunClassify(const Globals& g, const std::string& text, const std::string& in,
                double threshold, bool verbose) {
  ClassifierHandle c = BuildClassifier(g);
  for (const auto& line : ReadInputLines(text, in)) {
    char* out = nullptr;
    Check(lgg_classify(c.get(), line.c_str(), threshold, verbose ? 1 : 0, &out));
    std::string result = Take(out);
    if (JsonLines(g)) {
      std::cout << result << "\n";
      continue;
    }
    json j = json::parse(result);
    std::cout << j["label"].get<std::string>() << "\t" << j["score"].dump();
    if (j.contains("answer_url")) std::cout << "\t" << j["answer_url"].get<std::string>();
    std::cout << "\n";
    if (verbose && j.contains("tied") && !j["tied"].empty()) {
      std::cerr << "tie between:";
      for (const auto& l : j["tied"]) std::cerr << " " << l.get<std::string>();
      std::cerr << "\n";
    }
  }
  return 0;
}

int RunCoverage(const Globals& g, const std::string& in, size_t top_k) {
  if (in.empty()) throw UsageError{"--in CORPUS is required for coverage"};
  ClassifierHandle c = BuildClassifier(g);
  char* out = nullptr;
  Check(lgg_coverage(c.get(), in.c_str(), top_k, &out));
  json rep = json::parse(Take(out));
  if (JsonLines(g)) {
    for (const auto& l : rep["lines"]) std::cout << l.dump() << "\n";
    json s;
    s["summary"] = rep["summary"];
    std::cout << s.dump() << "\n";
    return 0;
  }
  for (const auto& l : rep["lines"]) {
    std::cout << l["line"] << "\t";
    if (l["matches"].empty()) {
      std::cout << "-";
    } else {
      bool first = true;
      for (const auto& m : l["matches"]) {
        std::cout << (first ? "" : " ") << m["intent"].get<std::string>() << "[" << m["begin"]
                  << "," << m["end"] << ")";
        first = false;
      }
    }
    std::cout << "\t" << l["text"].get<std::string>() << "\n";
  }
  const json& s = rep["summary"];
  std::cout << "\nlines: " << s["total_lines"] << ", unmatched: " << s["unmatched_lines"] << "\n";
  for (const auto& [label, v] : s["intents"].items()) {
    std::cout << "  " << label << "\t" << v["matched_lines"] << "\t" << v["percent"].get<double>()
              << "%\n";
  }
  if (!s["top_unmatched_bigrams"].empty()) {
    std::cout << "top unmatched bigrams:\n";
    for (const auto& b : s["top_unmatched_bigrams"]) {
      std::cout << "  " << b["count"] << "\t" << b["bigram"].get<std::string>() << "\n";
    }
  }
  return 0;
}

int RunStats(const Globals& g, const std::string& in) {
  if (in.empty()) throw UsageError{"--in PATH is required for stats"};
  lgg_dataset* ds = nullptr;
  Check(lgg_dataset_read(in.c_str(), &ds));
  DatasetHandle handle(ds);
  char* out = nullptr;
  Check(lgg_stats(ds, &out));
  json s = json::parse(Take(out));
  if (JsonLines(g)) {
    std::cout << s.dump() << "\n";
    return 0;
  }
  std::cout << "records: " << s["total"] << "\n";
  std::cout << "tokens: min " << s["tokens"]["min"] << ", mean " << s["tokens"]["mean"]
            << ", max " << s["tokens"]["max"] << "\n";
  for (const auto& [label, v] : s["intents"].items()) {
    std::cout << "  " << label << "\t" << v["records"] << " records\t" << v["vocabulary"]
              << " types\n";
  }
  return 0;
}

int RunServe(const Globals& g, const std::string& host, int port) {
  lgg_server* raw = nullptr;
  Check(lgg_server_create(&raw));
  Server server(raw);
  // Block the signals before any thread exists so sigwait sees them.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  int bound = 0;
  Check(lgg_server_start(raw, host.c_str(), port, &bound));
  std::cerr << "listening on " << host << ":" << bound << "\n";
  // /health answers 503 until this completes.
  ClassifierHandle c = BuildClassifier(g);
  Check(lgg_server_load(raw, c.get()));
  std::cerr << "loaded " << lgg_classifier_size(c.get()) << " intents\n";
  int sig = 0;
  sigwait(&set, &sig);
  Check(lgg_server_stop(raw));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local grammar graph toolkit: compile, generate and annotate"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--grammars", g.grammars, "Directory of .lgg grammars");
  app.add_option("--lexicons", g.lexicons, "Directory of .lex lexicons");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--config", g.config, "Composition config (JSON)");
  app.add_option("--out", g.out, "Output path");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json-lines"}));
  app.add_flag("--force", g.force, "Overwrite existing outputs");
  app.add_option("--jobs", g.jobs, "Parallel generation jobs")->check(CLI::PositiveNumber);

  std::function<int()> action;

  auto* validate = app.add_subcommand("validate", "Check grammars and lexicons");
  validate->callback([&] { action = [&] { return RunValidate(g); }; });

  Target compile_target;
  bool dump = false;
  auto* compile = app.add_subcommand("compile", "Compile a grammar and report its size");
  AddTarget(compile, compile_target);
  compile->add_flag("--dump", dump, "Print every transition");
  compile->add_flag("--strict-empty", compile_target.strict_empty,
                    "Fail on all-epsilon paths instead of dropping them");
  compile->callback([&] { action = [&] { return RunCompile(g, compile_target, dump); }; });

  Target count_target;
  bool count_all = false;
  auto* count = app.add_subcommand("count", "Exact number of paths");
  AddTarget(count, count_target);
  count->add_flag("--all", count_all, "Every grammar, then every configured intent");
  count->callback([&] { action = [&] { return RunCount(g, count_target, count_all); }; });

  Target enum_target;
  std::string from, to;
  auto* enumerate = app.add_subcommand("enum", "Enumerate paths in canonical order");
  AddTarget(enumerate, enum_target);
  enumerate->add_option("--from", from, "First index (inclusive)");
  enumerate->add_option("--to", to, "Last index (exclusive)");
  enumerate->callback([&] { action = [&] { return RunEnum(g, enum_target, from, to); }; });

  Target sample_target;
  uint64_t sample_n = 1;
  bool distinct = false;
  auto* sample = app.add_subcommand("sample", "Uniform random paths");
  AddTarget(sample, sample_target);
  sample->add_option("-n", sample_n, "Number of draws")->required()->check(CLI::PositiveNumber);
  sample->add_flag("--distinct", distinct, "Draw without replacement");
  sample->callback([&] { action = [&] { return RunSample(g, sample_target, sample_n, distinct); }; });

  std::string stamp;
  auto* generate = app.add_subcommand("generate", "Generate a labelled dataset");
  generate->add_option("--stamp", stamp, "Free-form stamp recorded in the manifest");
  generate->callback([&] { action = [&] { return RunGenerate(g, stamp); }; });

  std::string export_in, export_to = "jsonl";
  bool provenance = false;
  auto* exp = app.add_subcommand("export", "Convert a dataset to a training file format");
  exp->add_option("--in", export_in, "Dataset directory or .jsonl file");
  exp->add_option("--to", export_to, "jsonl or nlu_yaml")
      ->check(CLI::IsMember({"jsonl", "nlu_yaml"}));
  exp->add_flag("--provenance", provenance, "Keep provenance (jsonl only)");
  exp->callback([&] { action = [&] { return RunExport(g, export_in, export_to, provenance); }; });

  Target annotate_target;
  std::string annotate_text, annotate_in;
  auto* annotate = app.add_subcommand("annotate", "Leftmost-longest matches per input line");
  AddTarget(annotate, annotate_target);
  annotate->add_option("--text", annotate_text, "Single input text");
  annotate->add_option("--in", annotate_in, "Input file (default stdin)");
  annotate->callback(
      [&] { action = [&] { return RunAnnotate(g, annotate_target, annotate_text, annotate_in); }; });

  std::string classify_text, classify_in;
  double threshold = -1.0;
  bool verbose = false;
  auto* classify = app.add_subcommand("classify", "Rule-based intent classification");
  classify->add_option("--text", classify_text, "Single input text");
  classify->add_option("--in", classify_in, "Input file, one query per line (default stdin)");
  classify->add_option("--threshold", threshold, "Minimum coverage score")
      ->check(CLI::Range(0.0, 1.0));
  classify->add_flag("--verbose", verbose, "Include matches and ties");
  classify->callback([&] {
    action = [&] { return RunClassify(g, classify_text, classify_in, threshold, verbose); };
  });

  std::string corpus;
  size_t top_k = 50;
  auto* coverage = app.add_subcommand("coverage", "Corpus coverage report");
  coverage->add_option("--in", corpus, "Corpus, one query per line");
  coverage->add_option("--top-k", top_k, "Unmatched bigrams to list");
  coverage->callback([&] { action = [&] { return RunCoverage(g, corpus, top_k); }; });

  std::string stats_in;
  auto* stats = app.add_subcommand("stats", "Dataset statistics");
  stats->add_option("--in", stats_in, "Dataset directory or .jsonl file");
  stats->callback([&] { action = [&] { return RunStats(g, stats_in); }; });

  std::string host = "127.0.0.1";
  int port = 8080;
  if (const char* env = std::getenv("LGG_PORT")) port = std::atoi(env);
  auto* serve = app.add_subcommand("serve", "HTTP classification endpoint");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (env LGG_PORT)");
  serve->callback([&] { action = [&] { return RunServe(g, host, port); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return 1;
  } catch (const Failure& f) {
    std::cerr << "error (" << lgg_status_name(f.status) << "): " << f.message << "\n";
    return f.status == LGG_E_INTERNAL ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
