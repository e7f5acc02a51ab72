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

#include "lgg/exporter.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lgg/annotator.hpp"
#include "lgg/error.hpp"

namespace lgg {

using ordered_json = nlohmann::ordered_json;

ExportFormat ParseExportFormat(std::string_view name) {
  if (name == "jsonl") return ExportFormat::kJsonl;
  if (name == "nlu_yaml" || name == "yaml") return ExportFormat::kNluYaml;
  throw Error(ErrorCode::kInvalidArgument, "unknown export format '" + std::string(name) +
                                               "' (expected jsonl or nlu_yaml)");
}

std::string RecordToJsonLine(const DatasetRecord& r, bool include_provenance) {
  ordered_json j;
  j["text"] = r.text;
  j["intent"] = r.intent;
  if (include_provenance) {
    const Provenance& p = r.provenance;
    ordered_json pj;
    pj["background"] = p.background ? ordered_json(*p.background) : ordered_json(nullptr);
    pj["core"] = p.core;
    pj["request"] = p.request ? ordered_json(*p.request) : ordered_json(nullptr);
    pj["path_index"] = p.path_index.str();
    j["provenance"] = std::move(pj);
  }
  return j.dump();
}

DatasetRecord RecordFromJsonLine(std::string_view line) {
  DatasetRecord r;
  try {
    auto j = nlohmann::json::parse(line);
    r.text = j.at("text").get<std::string>();
    r.intent = j.at("intent").get<std::string>();
    if (j.contains("provenance")) {
      const auto& p = j["provenance"];
      if (p.contains("background") && !p["background"].is_null()) {
        r.provenance.background = p["background"].get<std::string>();
      }
      r.provenance.core = p.value("core", "");
      if (p.contains("request") && !p["request"].is_null()) {
        r.provenance.request = p["request"].get<std::string>();
      }
      if (p.contains("path_index")) {
        r.provenance.path_index = ParsePathIndex(p["path_index"].get<std::string>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad dataset record: ") + e.what());
  }
  return r;
}

std::string FormatJsonl(const std::vector<DatasetRecord>& records, bool include_provenance) {
  std::string out;
  for (const auto& r : records) {
    out += RecordToJsonLine(r, include_provenance);
    out += '\n';
  }
  return out;
}

namespace {

bool ValidYamlLabel(std::string_view label) {
  if (label.empty()) return false;
  for (unsigned char c : label) {
    if (!(std::isalnum(c) || c == '_' || c == '-' || c == '.')) return false;
  }
  return true;
}

}  // namespace

std::string FormatNluYaml(const std::vector<DatasetRecord>& records) {
  std::map<std::string, std::vector<const DatasetRecord*>> by_intent;
  for (const auto& r : records) {
    if (!ValidYamlLabel(r.intent)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "intent label '" + r.intent + "' is not valid for nlu_yaml ([A-Za-z0-9_.-]+)");
    }
    // NEL, LINE SEPARATOR and PARAGRAPH SEPARATOR also end a line in YAML.
    if (r.text.empty() || r.text.find_first_of("\r\n") != std::string::npos ||
        r.text.find("\xC2\x85") != std::string::npos ||
        r.text.find("\xE2\x80\xA8") != std::string::npos ||
        r.text.find("\xE2\x80\xA9") != std::string::npos || r.text.front() == ' ' ||
        r.text.back() == ' ') {
      throw Error(ErrorCode::kInvalidArgument,
                  "text cannot be stored in a literal block: \"" + r.text + "\"");
    }
    by_intent[r.intent].push_back(&r);
  }
  std::string out = "version: \"3.1\"\nnlu:\n";
  for (const auto& [intent, recs] : by_intent) {
    out += "- intent: " + intent + "\n";
    out += "  examples: |\n";
    for (const DatasetRecord* r : recs) out += "    - " + r->text + "\n";
  }
  return out;
}

void WriteFileAtomically(const std::filesystem::path& path, std::string_view content,
                         bool overwrite) {
  std::error_code ec;
  if (!overwrite && std::filesystem::exists(path, ec)) {
    throw Error(ErrorCode::kIo, path.string() + " exists (use --force to overwrite)");
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
}

void Export(const std::vector<DatasetRecord>& records, const ExportOptions& opts) {
  if (records.empty()) throw Error(ErrorCode::kInvalidArgument, "nothing to export: 0 records");
  std::string content = opts.format == ExportFormat::kJsonl
                            ? FormatJsonl(records, opts.include_provenance)
                            : FormatNluYaml(records);
  WriteFileAtomically(opts.output, content, opts.overwrite);
}

std::vector<DatasetRecord> ReadJsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::vector<DatasetRecord> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(RecordFromJsonLine(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<DatasetRecord> ReadDataset(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_directory(path, ec)) return ReadJsonl(path);
  std::vector<DatasetRecord> out;
  bool any = false;
  for (const char* name : {"train.jsonl", "validation.jsonl", "test.jsonl"}) {
    auto p = path / name;
    if (!std::filesystem::exists(p, ec)) continue;
    any = true;
    auto part = ReadJsonl(p);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  if (!any) throw Error(ErrorCode::kIo, "no dataset files in " + path.string());
  return out;
}

void WriteDataset(const Dataset& ds, const std::filesystem::path& dir, bool overwrite) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  const std::pair<const char*, const std::vector<DatasetRecord>*> parts[] = {
      {"train.jsonl", &ds.train}, {"validation.jsonl", &ds.validation}, {"test.jsonl", &ds.test}};
  if (!overwrite) {
    for (const char* name : {"train.jsonl", "validation.jsonl", "test.jsonl", "manifest.json"}) {
      if (std::filesystem::exists(dir / name, ec)) {
        throw Error(ErrorCode::kIo,
                    (dir / name).string() + " exists (use --force to overwrite)");
      }
    }
  }
  for (const auto& [name, recs] : parts) {
    WriteFileAtomically(dir / name, FormatJsonl(*recs, true), overwrite);
  }
  WriteFileAtomically(dir / "manifest.json", ManifestToJson(ds.manifest), overwrite);
}

DatasetStats ComputeStats(const std::vector<DatasetRecord>& records) {
  DatasetStats s;
  std::map<std::string, std::set<std::string>> vocab;
  size_t token_sum = 0;
  for (const auto& r : records) {
    ++s.records_per_intent[r.intent];
    TokenizedText tt = Tokenize(r.text);
    size_t n = tt.tokens.size();
    if (s.total == 0) {
      s.min_tokens = s.max_tokens = n;
    } else {
      s.min_tokens = std::min(s.min_tokens, n);
      s.max_tokens = std::max(s.max_tokens, n);
    }
    ++s.total;
    token_sum += n;
    auto& v = vocab[r.intent];
    for (auto& t : tt.tokens) v.insert(std::move(t.norm));
  }
  if (s.total) s.mean_tokens = static_cast<double>(token_sum) / static_cast<double>(s.total);
  for (const auto& [intent, words] : vocab) s.vocabulary_per_intent[intent] = words.size();
  return s;
}

std::string StatsToJson(const DatasetStats& s) {
  ordered_json j;
  j["total"] = s.total;
  ordered_json per = ordered_json::object();
  for (const auto& [intent, n] : s.records_per_intent) {
    per[intent] = {{"records", n}, {"vocabulary", s.vocabulary_per_intent.at(intent)}};
  }
  j["intents"] = std::move(per);
  j["tokens"] = {{"min", s.min_tokens}, {"mean", s.mean_tokens}, {"max", s.max_tokens}};
  return j.dump();
}

}  // namespace lgg
