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

#ifndef LGG_EXPORTER_HPP_
#define LGG_EXPORTER_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lgg/assembler.hpp"

namespace lgg {

enum class ExportFormat { kJsonl, kNluYaml };

ExportFormat ParseExportFormat(std::string_view name);

struct ExportOptions {
  ExportFormat format = ExportFormat::kJsonl;
  bool include_provenance = false;
  std::filesystem::path output;
  bool overwrite = false;
};

// {"text":...,"intent":...[,"provenance":{...}]}, keys in this order.
std::string RecordToJsonLine(const DatasetRecord& r, bool include_provenance);
DatasetRecord RecordFromJsonLine(std::string_view line);

std::string FormatJsonl(const std::vector<DatasetRecord>& records, bool include_provenance);
std::string FormatNluYaml(const std::vector<DatasetRecord>& records);

// Writes the file in one piece; nothing is written on error.
void Export(const std::vector<DatasetRecord>& records, const ExportOptions& opts);

std::vector<DatasetRecord> ReadJsonl(const std::filesystem::path& path);

// Reads train/validation/test.jsonl from a dataset directory, or a single
// .jsonl file.
std::vector<DatasetRecord> ReadDataset(const std::filesystem::path& path);

// train.jsonl, validation.jsonl, test.jsonl (with provenance) and
// manifest.json.
void WriteDataset(const Dataset& ds, const std::filesystem::path& dir, bool overwrite);

struct DatasetStats {
  std::map<std::string, size_t> records_per_intent;
  size_t total = 0;
  size_t min_tokens = 0;
  double mean_tokens = 0.0;
  size_t max_tokens = 0;
  std::map<std::string, size_t> vocabulary_per_intent;
};

DatasetStats ComputeStats(const std::vector<DatasetRecord>& records);
std::string StatsToJson(const DatasetStats& s);

void WriteFileAtomically(const std::filesystem::path& path, std::string_view content,
                         bool overwrite);

}  // namespace lgg

#endif  // LGG_EXPORTER_HPP_
