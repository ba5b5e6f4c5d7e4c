/* Copyright 2026 The FreqCa Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <cstdio>
#include <sstream>

#include "freqca/reports.hpp"

namespace freqca {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::ordered_json run_report_json(const RunReport& report, const RunConfig& cfg) {
  nlohmann::ordered_json out;
  out["report"] = "run";
  out["version"] = kReportVersion;
  out["method"] = report.method;
  out["seed"] = report.seed;
  out["config"] = config_to_json(cfg);
  auto steps = nlohmann::ordered_json::array();
  for (const StepMetrics& m : report.per_step) {
    nlohmann::ordered_json s;
    s["step"] = m.step;
    s["kind"] = step_kind_name(m.kind);
    s["mse_vs_truth"] = m.mse_vs_truth;
    s["cosine_vs_truth"] = m.cosine_vs_truth;
    s["state_mse_vs_truth"] = m.state_mse_vs_truth;
    s["effective_low_order"] = m.effective_low_order;
    s["effective_high_order"] = m.effective_high_order;
    s["flops"] = m.flops;
    s["cache_units"] = m.cache_units;
    s["cache_capacity"] = m.cache_capacity;
    steps.push_back(std::move(s));
  }
  out["per_step"] = std::move(steps);
  const RunSummary& sm = report.summary;
  out["summary"] = {{"mean_mse", sm.mean_mse},
                    {"final_state_mse", sm.final_state_mse},
                    {"speedup", sm.speedup},
                    {"total_flops", sm.total_flops},
                    {"peak_cache_units", sm.peak_cache_units},
                    {"full_steps", sm.full_steps},
                    {"predicted_steps", sm.predicted_steps},
                    {"full_cost", sm.full_cost},
                    {"pred_cost", sm.pred_cost}};
  return out;
}

std::string run_report_csv(const RunReport& report) {
  std::ostringstream os;
  os << "step,kind,mse_vs_truth,cosine_vs_truth,state_mse_vs_truth,effective_low_order,"
        "effective_high_order,flops,cache_units,cache_capacity\n";
  for (const StepMetrics& m : report.per_step) {
    os << m.step << ',' << step_kind_name(m.kind) << ',' << format_double(m.mse_vs_truth) << ','
       << format_double(m.cosine_vs_truth) << ',' << format_double(m.state_mse_vs_truth) << ','
       << m.effective_low_order << ',' << m.effective_high_order << ',' << m.flops << ','
       << m.cache_units << ',' << m.cache_capacity << '\n';
  }
  return os.str();
}

}  // namespace freqca
