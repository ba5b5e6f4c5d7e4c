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

#include "freqca/analysis.hpp"

#include <algorithm>
#include <sstream>

#include "freqca/reports.hpp"

namespace freqca {
namespace {

double band_similarity(const Tensor& a, const Tensor& b) {
  try {
    return cosine_similarity(a, b);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kZeroVector) throw;
    return 1.0;  // two zero bands are identical
  }
}

std::vector<Point2> band_pca(const std::vector<Tensor>& band, bool& degenerate) {
  try {
    degenerate = false;
    return pca_project(band);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateCovariance) throw;
    degenerate = true;
    return std::vector<Point2>(band.size(), Point2(2, 0.0));
  }
}

int parse_positive(const std::string& token) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(token, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::kConfigError, "intervals: '" + token + "' is not an integer");
  }
  if (used != token.size() || v < 1) {
    fail(ErrorCode::kConfigError, "intervals: '" + token + "' is not a positive integer");
  }
  return v;
}

nlohmann::ordered_json similarity_matrix(const std::vector<std::vector<std::optional<double>>>& m) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& row : m) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& v : row) r.push_back(v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json());
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<int> parse_intervals(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) fail(ErrorCode::kConfigError, "intervals: empty entry in '" + text + "'");
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_positive(part));
      continue;
    }
    const int lo = parse_positive(part.substr(0, dots));
    const int hi = parse_positive(part.substr(dots + 2));
    if (hi < lo) fail(ErrorCode::kConfigError, "intervals: empty range '" + part + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) fail(ErrorCode::kConfigError, "intervals: none given");
  return out;
}

FrequencyDynamicsReport analyze_frequency_dynamics(std::span<const Tensor> features,
                                                   const std::vector<int>& intervals, double cutoff,
                                                   TransformKind transform) {
  if (features.empty()) fail(ErrorCode::kInvalidArgument, "analyze: empty trajectory");
  if (intervals.empty()) fail(ErrorCode::kInvalidArgument, "analyze: no intervals");
  for (int d : intervals) {
    if (d < 1) fail(ErrorCode::kInvalidArgument, "analyze: intervals must be >= 1");
  }

  FrequencyDynamicsReport report;
  report.steps = features.size();
  report.cutoff = cutoff;
  report.transform = transform;
  report.intervals = intervals;

  std::vector<Tensor> low;
  std::vector<Tensor> high;
  low.reserve(features.size());
  high.reserve(features.size());
  for (const Tensor& z : features) {
    BandSplit split = split_bands(z, cutoff, transform);
    low.push_back(std::move(split.low));
    high.push_back(std::move(split.high));
  }

  const std::size_t n = features.size();
  report.low_similarity.assign(n, std::vector<std::optional<double>>(intervals.size()));
  report.high_similarity.assign(n, std::vector<std::optional<double>>(intervals.size()));
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t j = 0; j < intervals.size(); ++j) {
      const std::size_t later = t + static_cast<std::size_t>(intervals[j]);
      if (later >= n) continue;
      report.low_similarity[t][j] = band_similarity(low[t], low[later]);
      report.high_similarity[t][j] = band_similarity(high[t], high[later]);
    }
  }

  if (n >= 3) {
    report.pca_low = band_pca(low, report.pca_low_degenerate);
    report.pca_high = band_pca(high, report.pca_high_degenerate);
  } else {
    report.pca_low_degenerate = report.pca_high_degenerate = true;
    report.pca_low.assign(n, Point2(2, 0.0));
    report.pca_high.assign(n, Point2(2, 0.0));
  }
  return report;
}

nlohmann::ordered_json dynamics_report_json(const FrequencyDynamicsReport& report) {
  nlohmann::ordered_json out;
  out["report"] = "analyze";
  out["version"] = kReportVersion;
  out["steps"] = report.steps;
  out["cutoff"] = report.cutoff;
  out["transform"] = transform_name(report.transform);
  out["intervals"] = report.intervals;
  out["low_similarity"] = similarity_matrix(report.low_similarity);
  out["high_similarity"] = similarity_matrix(report.high_similarity);
  out["pca_low"] = report.pca_low;
  out["pca_high"] = report.pca_high;
  out["pca_low_degenerate"] = report.pca_low_degenerate;
  out["pca_high_degenerate"] = report.pca_high_degenerate;
  return out;
}

std::string dynamics_similarity_csv(const FrequencyDynamicsReport& report) {
  std::ostringstream os;
  os << "step,interval,low_similarity,high_similarity\n";
  for (std::size_t t = 0; t < report.low_similarity.size(); ++t) {
    for (std::size_t j = 0; j < report.intervals.size(); ++j) {
      if (!report.low_similarity[t][j]) continue;
      os << t << ',' << report.intervals[j] << ',' << format_double(*report.low_similarity[t][j]) << ','
         << format_double(*report.high_similarity[t][j]) << '\n';
    }
  }
  return os.str();
}

std::string dynamics_pca_csv(const FrequencyDynamicsReport& report) {
  std::ostringstream os;
  os << "step,low_pc1,low_pc2,high_pc1,high_pc2\n";
  for (std::size_t t = 0; t < report.pca_low.size(); ++t) {
    os << t << ',' << format_double(report.pca_low[t][0]) << ',' << format_double(report.pca_low[t][1])
       << ',' << format_double(report.pca_high[t][0]) << ',' << format_double(report.pca_high[t][1])
       << '\n';
  }
  return os.str();
}

}  // namespace freqca
