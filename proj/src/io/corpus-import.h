// io/corpus-import.h

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

#ifndef EMGSE_IO_CORPUS_IMPORT_H_
#define EMGSE_IO_CORPUS_IMPORT_H_

#include <string>
#include <vector>

#include "feat/emg-features.h"
#include "io/manifest.h"
#include "io/pipeline-config.h"

namespace emgse {

// Raw corpus layout:
//
//   <src>/<speaker>/<utt>.wav   16-bit PCM mono, 16 kHz
//   <src>/<speaker>/<utt>.emg   int16 little-endian, raw_channels interleaved
//
// Imported layout (same as the synthetic generator):
//
//   <out>/audio/<speaker>_<utt>.wav
//   <out>/emg/<speaker>_<utt>.emgc
//   <out>/manifest.tsv
//
// Samples keep their ADC counts.  Channels in the exclusion list are dropped;
// the survivors are labeled cheek_NN or chin_NN by array, numbered from 01.

/// Decodes one raw EMG file, dropping excluded channels.  Throws FormatError
/// on a size that is not a whole number of frames, and InvalidParameter when
/// the surviving channel count is not config.expected_channels.
EmgRecording DecodeRawEmg(const std::vector<uint8_t> &bytes, const ImportConfig &config,
                          const std::string &what = "raw EMG");

/// Labels of the channels that survive exclusion, in raw order.
std::vector<std::string> ImportedChannelLabels(const ImportConfig &config);

/// Imports every utterance with both audio and EMG.  An utterance without an
/// EMG file is skipped with a warning.  Splits are assigned per speaker over
/// sorted utterance names: the first split_train are train, the next
/// split_val validation, the next split_test test; the rest are left out.
/// Rerunning over the same input rewrites identical bytes.
std::vector<ManifestRow> ImportCorpus(const std::string &src_dir, const std::string &out_dir,
                                      const ImportConfig &config);

}  // namespace emgse

#endif  // EMGSE_IO_CORPUS_IMPORT_H_
