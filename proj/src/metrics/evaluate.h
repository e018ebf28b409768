// metrics/evaluate.h

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

#ifndef EMGSE_METRICS_EVALUATE_H_
#define EMGSE_METRICS_EVALUATE_H_

#include <string>
#include <vector>

#include "data/mixture-features.h"
#include "model/checkpoint.h"

namespace emgse {

/// Scores of one system on one test mixture.  For the "Noisy" system the
/// enhanced columns equal the noisy ones.
struct EvalRecord {
  std::string system;
  std::string mixture_id;
  std::string utterance_id;
  std::string noise_type;
  double snr_db = 0.0;
  bool ok = true;
  std::string error;
  double stoi_noisy = 0.0;
  double stoi_enhanced = 0.0;
  double si_sdr_noisy = 0.0;
  double si_sdr_enhanced = 0.0;
};

struct EvalSystem {
  std::string name;
  const Checkpoint *checkpoint = nullptr;  // null: the unprocessed input
};

/// Mean scores of one (system, key) cell.
struct EvalCell {
  std::string system;
  std::string key;  // SNR label or noise type
  double snr_db = 0.0;
  size_t count = 0;
  size_t failures = 0;
  double stoi = 0.0;
  double si_sdr = 0.0;
};

struct EvalReport {
  std::vector<EvalRecord> records;  // mixture-major, then system order
  std::vector<EvalCell> by_snr;     // sorted by system, then SNR
  std::vector<EvalCell> by_noise;   // sorted by system, then noise type
  std::vector<EvalCell> overall;    // one per system

  /// Mean STOI of a system at one SNR; throws if the cell does not exist.
  double MeanStoi(const std::string &system, double snr_db) const;
};

/// Plain arithmetic means over the successful records of each cell; failed
/// records are counted, not averaged.
void Aggregate(EvalReport *report);

/// Scores every mixture with every system.  A system that throws on a
/// mixture produces a failed record.  Mixtures run on `jobs` threads;
/// the report does not depend on `jobs`.  `enhanced_dir`, when not empty,
/// receives <system>/<mixture>.wav for every enhanced output.
EvalReport Evaluate(const std::vector<EvalSystem> &systems,
                    const std::vector<const MixSpec *> &mixtures,
                    const MixtureFeaturizer &featurizer, int jobs,
                    const std::string &enhanced_dir = "");

/// One JSON object per line: the records, then the by-SNR, by-noise and
/// overall cells, each tagged with "kind".
std::string ReportJsonl(const EvalReport &report);

/// Aligned text tables of mean STOI and SI-SDR by SNR and by noise type.
std::string ReportTable(const EvalReport &report);

}  // namespace emgse

#endif  // EMGSE_METRICS_EVALUATE_H_
