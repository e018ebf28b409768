// io/manifest.cc

// Copyright 2026  emgse contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "io/manifest.h"

#include <filesystem>
#include <sstream>

#include "base/emgse-common.h"
#include "io/binary-io.h"

namespace emgse {

const char *SplitName(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "?";
}

Split ParseSplit(const std::string &name) {
  if (name == "train") return Split::kTrain;
  if (name == "val") return Split::kVal;
  if (name == "test") return Split::kTest;
  throw FormatError("unknown split '" + name + "'");
}

void WriteManifest(const std::string &path, const std::vector<ManifestRow> &rows) {
  std::ostringstream os;
  os << "id\tsplit\taudio\temg\n";
  for (const ManifestRow &r : rows)
    os << r.id << '\t' << SplitName(r.split) << '\t' << r.audio_path << '\t'
       << r.emg_path << '\n';
  WriteFileText(path, os.str());
}

std::vector<ManifestRow> ReadManifest(const std::string &path) {
  namespace fs = std::filesystem;
  const fs::path base = fs::absolute(fs::path(path)).parent_path();
  std::istringstream in(ReadFileText(path));
  std::string line;
  if (!std::getline(in, line) || line != "id\tsplit\taudio\temg")
    throw FormatError(path + ": missing manifest header 'id\\tsplit\\taudio\\temg'");
  std::vector<ManifestRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cols;
    size_t from = 0;
    for (size_t tab; (tab = line.find('\t', from)) != std::string::npos; from = tab + 1)
      cols.push_back(line.substr(from, tab - from));
    cols.push_back(line.substr(from));
    if (cols.size() != 4)
      throw FormatError(path + ":" + std::to_string(lineno) + ": expected 4 columns");
    auto resolve = [&](const std::string &p) {
      if (p.empty()) return std::string();
      fs::path q(p);
      return (q.is_absolute() ? q : base / q).lexically_normal().string();
    };
    rows.push_back({cols[0], ParseSplit(cols[1]), resolve(cols[2]), resolve(cols[3])});
  }
  return rows;
}

std::string SpeakerOf(const std::string &utterance_id) {
  return utterance_id.substr(0, utterance_id.find('_'));
}

}  // namespace emgse
