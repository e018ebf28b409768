// metrics/evaluate.cc

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

#include "metrics/evaluate.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "base/parallel.h"
#include "data/dataset-index.h"
#include "io/wav-io.h"
#include "metrics/stoi.h"
#include "model/inference.h"

namespace emgse {

using nlohmann::json;

double EvalReport::MeanStoi(const std::string &system, double snr_db) const {
  for (const EvalCell &c : by_snr)
    if (c.system == system && c.snr_db == snr_db && c.count > c.failures) return c.stoi;
  throw InvalidParameter("report has no scores for " + system + " at " + FormatSnr(snr_db));
}

void Aggregate(EvalReport *report) {
  // Keys sorted before reduction; sums run in record order within a cell.
  struct Sum {
    double snr = 0, stoi = 0, si_sdr = 0;
    size_t count = 0, failures = 0;
  };
  std::map<std::pair<std::string, double>, Sum> snr;
  std::map<std::pair<std::string, std::string>, Sum> noise;
  std::map<std::string, Sum> overall;
  std::vector<std::string> system_order;
  for (const EvalRecord &r : report->records) {
    if (!overall.count(r.system)) system_order.push_back(r.system);
    for (Sum *s : {&snr[{r.system, r.snr_db}], &noise[{r.system, r.noise_type}],
                   &overall[r.system]}) {
      s->snr = r.snr_db;
      ++s->count;
      if (!r.ok) {
        ++s->failures;
        continue;
      }
      s->stoi += r.stoi_enhanced;
      s->si_sdr += r.si_sdr_enhanced;
    }
  }
  auto cell = [](const std::string &system, const std::string &key, const Sum &s) {
    EvalCell c;
    c.system = system;
    c.key = key;
    c.snr_db = s.snr;
    c.count = s.count;
    c.failures = s.failures;
    const size_t n = s.count - s.failures;
    c.stoi = n ? s.stoi / static_cast<double>(n) : 0.0;
    c.si_sdr = n ? s.si_sdr / static_cast<double>(n) : 0.0;
    return c;
  };
  report->by_snr.clear();
  report->by_noise.clear();
  report->overall.clear();
  for (const auto &[k, s] : snr) report->by_snr.push_back(cell(k.first, FormatSnr(k.second), s));
  for (const auto &[k, s] : noise) report->by_noise.push_back(cell(k.first, k.second, s));
  for (const std::string &name : system_order)
    report->overall.push_back(cell(name, "all", overall[name]));
}

EvalReport Evaluate(const std::vector<EvalSystem> &systems,
                    const std::vector<const MixSpec *> &mixtures,
                    const MixtureFeaturizer &featurizer, int jobs,
                    const std::string &enhanced_dir) {
  namespace fs = std::filesystem;
  if (systems.empty()) throw InvalidParameter("no systems to evaluate");
  for (const EvalSystem &s : systems)
    if (!enhanced_dir.empty() && s.checkpoint) fs::create_directories(fs::path(enhanced_dir) / s.name);
  EvalReport report;
  report.records.resize(mixtures.size() * systems.size());
  ParallelFor(mixtures.size(), jobs, [&](size_t i) {
    const MixSpec &spec = *mixtures[i];
    EvalRecord base;
    base.mixture_id = spec.id;
    base.utterance_id = spec.clean_id;
    base.noise_type = spec.noise_id;
    base.snr_db = spec.snr_db;
    Waveform clean, noisy;
    try {
      clean = featurizer.Clean(spec);
      noisy = featurizer.Noisy(spec);
      base.stoi_noisy = Stoi(clean, noisy);
      base.si_sdr_noisy = SiSdr(clean, noisy);
    } catch (const std::exception &e) {
      base.ok = false;
      base.error = e.what();
    }
    for (size_t s = 0; s < systems.size(); ++s) {
      EvalRecord r = base;
      r.system = systems[s].name;
      if (r.ok) {
        try {
          if (systems[s].checkpoint == nullptr) {
            r.stoi_enhanced = r.stoi_noisy;
            r.si_sdr_enhanced = r.si_sdr_noisy;
          } else {
            const Checkpoint &ck = *systems[s].checkpoint;
            const EmgRecording *emg =
                ck.net.variant == Variant::kEmgse ? &featurizer.Emg(spec) : nullptr;
            const Waveform out = Enhance(ck, noisy, emg);
            r.stoi_enhanced = Stoi(clean, out);
            r.si_sdr_enhanced = SiSdr(clean, out);
            if (!enhanced_dir.empty())
              WavWrite((fs::path(enhanced_dir) / r.system / (spec.id + ".wav")).string(), out);
          }
        } catch (const std::exception &e) {
          r.ok = false;
          r.error = e.what();
        }
      }
      report.records[i * systems.size() + s] = std::move(r);
    }
  });
  Aggregate(&report);
  return report;
}

namespace {

json CellJson(const char *kind, const EvalCell &c) {
  json j = {{"kind", kind},        {"system", c.system},     {"key", c.key},
            {"count", c.count},    {"failures", c.failures}, {"stoi", c.stoi},
            {"si_sdr", c.si_sdr}};
  if (std::string(kind) == "by_snr") j["snr_db"] = c.snr_db;
  return j;
}

}  // namespace

std::string ReportJsonl(const EvalReport &report) {
  std::ostringstream os;
  for (const EvalRecord &r : report.records) {
    json j = {{"kind", "record"},
              {"system", r.system},
              {"mixture", r.mixture_id},
              {"utterance", r.utterance_id},
              {"noise", r.noise_type},
              {"snr_db", r.snr_db},
              {"ok", r.ok}};
    if (r.ok) {
      j["stoi_noisy"] = r.stoi_noisy;
      j["stoi_enhanced"] = r.stoi_enhanced;
      j["si_sdr_noisy"] = r.si_sdr_noisy;
      j["si_sdr_enhanced"] = r.si_sdr_enhanced;
    } else {
      j["error"] = r.error;
    }
    os << j.dump() << '\n';
  }
  for (const EvalCell &c : report.by_snr) os << CellJson("by_snr", c).dump() << '\n';
  for (const EvalCell &c : report.by_noise) os << CellJson("by_noise", c).dump() << '\n';
  for (const EvalCell &c : report.overall) os << CellJson("overall", c).dump() << '\n';
  return os.str();
}

std::string ReportTable(const EvalReport &report) {
  std::vector<std::string> systems;
  for (const EvalCell &c : report.overall) systems.push_back(c.system);
  std::ostringstream os;
  auto table = [&](const std::string &title, const std::vector<EvalCell> &cells, bool stoi) {
    std::vector<std::string> keys;
    std::map<std::pair<std::string, std::string>, const EvalCell *> at;
    for (const EvalCell &c : cells) {
      if (std::find(keys.begin(), keys.end(), c.key) == keys.end()) keys.push_back(c.key);
      at[{c.system, c.key}] = &c;
    }
    os << title << '\n' << fmt::format("{:<12}", "");
    for (const std::string &s : systems) os << fmt::format("{:>13}", s);
    os << '\n';
    for (const std::string &k : keys) {
      os << fmt::format("{:<12}", k);
      for (const std::string &s : systems) {
        auto it = at.find({s, k});
        if (it == at.end() || it->second->count == it->second->failures)
          os << fmt::format("{:>13}", "-");
        else
          os << (stoi ? fmt::format("{:>13.4f}", it->second->stoi)
                      : fmt::format("{:>13.2f}", it->second->si_sdr));
      }
      os << '\n';
    }
    os << '\n';
  };
  table("STOI by SNR", report.by_snr, true);
  table("SI-SDR (dB) by SNR", report.by_snr, false);
  table("STOI by noise type", report.by_noise, true);
  table("SI-SDR (dB) by noise type", report.by_noise, false);
  table("Overall STOI", report.overall, true);
  size_t failures = 0;
  for (const EvalRecord &r : report.records) failures += r.ok ? 0 : 1;
  if (failures) os << failures << " failed record(s); see the JSONL report\n";
  return os.str();
}

}  // namespace emgse
