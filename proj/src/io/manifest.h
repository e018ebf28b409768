// io/manifest.h

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

#ifndef EMGSE_IO_MANIFEST_H_
#define EMGSE_IO_MANIFEST_H_

#include <string>
#include <vector>

namespace emgse {

enum class Split { kTrain, kVal, kTest };

const char *SplitName(Split s);
Split ParseSplit(const std::string &name);

/// One utterance of a corpus.
struct ManifestRow {
  std::string id;
  Split split = Split::kTrain;
  std::string audio_path;
  std::string emg_path;
};

// Tab-separated text with the header line "id<TAB>split<TAB>audio<TAB>emg".
// Relative paths are resolved against the manifest's directory on read.
void WriteManifest(const std::string &path, const std::vector<ManifestRow> &rows);
std::vector<ManifestRow> ReadManifest(const std::string &path);

// Speaker of an utterance id "<speaker>_<rest>" (the whole id if no '_').
std::string SpeakerOf(const std::string &utterance_id);

}  // namespace emgse

#endif  // EMGSE_IO_MANIFEST_H_
