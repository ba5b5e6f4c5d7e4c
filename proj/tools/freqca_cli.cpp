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

// freqca: command-line front end over the libfreqca C API.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "freqca/freqca.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

// Owns a string handed out by the library.
class LibString {
 public:
  LibString() = default;
  LibString(const LibString&) = delete;
  LibString& operator=(const LibString&) = delete;
  ~LibString() { freqca_string_free(ptr_); }

  char** out() { return &ptr_; }
  std::string str() const { return ptr_ ? ptr_ : ""; }

 private:
  char* ptr_ = nullptr;
};

int exit_code_for(freqca_status s) {
  switch (s) {
    case FREQCA_OK:
      return kExitOk;
    case FREQCA_ERR_CONFIG:
    case FREQCA_ERR_INVALID_CONFIG:
    case FREQCA_ERR_INVALID_CUTOFF:
    case FREQCA_ERR_INVALID_INTERVAL:
    case FREQCA_ERR_ORDER_TOO_HIGH:
      return kExitConfig;
    case FREQCA_ERR_IO:
    case FREQCA_ERR_FORMAT:
      return kExitIo;
    default:
      return kExitRuntime;
  }
}

int report_failure(freqca_status s, const std::string& context) {
  std::cerr << "freqca: " << context << ": " << freqca_status_name(s) << ": " << freqca_last_error() << '\n';
  return exit_code_for(s);
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

bool write_file(const fs::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) return false;
  f << contents;
  return static_cast<bool>(f);
}

bool prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  return !ec && fs::is_directory(dir);
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& baselines, const std::string& out_dir) {
  const auto config = read_file(config_path);
  if (!config) {
    std::cerr << "freqca: cannot read config '" << config_path << "'\n";
    return kExitIo;
  }
  if (!prepare_dir(out_dir)) {
    std::cerr << "freqca: cannot create output directory '" << out_dir << "'\n";
    return kExitIo;
  }
  std::vector<std::string> methods{"freqca"};
  methods.insert(methods.end(), baselines.begin(), baselines.end());
  for (const std::string& method : methods) {
    LibString json;
    LibString csv;
    const freqca_status s = freqca_run_json(config->c_str(), method.c_str(), json.out(), csv.out());
    if (s != FREQCA_OK) return report_failure(s, "run (" + method + ")");
    if (!write_file(fs::path(out_dir) / (method + ".json"), json.str()) ||
        !write_file(fs::path(out_dir) / (method + ".csv"), csv.str())) {
      std::cerr << "freqca: failed writing reports to '" << out_dir << "'\n";
      return kExitIo;
    }
    std::cout << "wrote " << (fs::path(out_dir) / (method + ".json")).string() << '\n';
  }
  return kExitOk;
}

int cmd_analyze(const std::string& traj, const std::string& intervals, double cutoff,
                const std::string& transform, const std::string& out_dir) {
  if (!prepare_dir(out_dir)) {
    std::cerr << "freqca: cannot create output directory '" << out_dir << "'\n";
    return kExitIo;
  }
  LibString json;
  LibString sim;
  LibString pca;
  const freqca_status s = freqca_analyze_file(traj.c_str(), intervals.c_str(), cutoff, transform.c_str(),
                                              json.out(), sim.out(), pca.out());
  if (s != FREQCA_OK) return report_failure(s, "analyze");
  const fs::path dir(out_dir);
  if (!write_file(dir / "dynamics.json", json.str()) || !write_file(dir / "similarity.csv", sim.str()) ||
      !write_file(dir / "pca.csv", pca.str())) {
    std::cerr << "freqca: failed writing analysis to '" << out_dir << "'\n";
    return kExitIo;
  }
  std::cout << "wrote " << (dir / "dynamics.json").string() << '\n';
  return kExitOk;
}

int cmd_sweep(const std::string& grid_path, int threads, const std::string& out_dir) {
  const auto grid = read_file(grid_path);
  if (!grid) {
    std::cerr << "freqca: cannot read grid '" << grid_path << "'\n";
    return kExitIo;
  }
  if (!prepare_dir(out_dir)) {
    std::cerr << "freqca: cannot create output directory '" << out_dir << "'\n";
    return kExitIo;
  }
  LibString json;
  LibString csv;
  const freqca_status s = freqca_sweep_json(grid->c_str(), threads, json.out(), csv.out());
  if (s != FREQCA_OK) return report_failure(s, "sweep");
  const fs::path dir(out_dir);
  if (!write_file(dir / "sweep.json", json.str()) || !write_file(dir / "sweep.csv", csv.str())) {
    std::cerr << "freqca: failed writing sweep report to '" << out_dir << "'\n";
    return kExitIo;
  }
  std::cout << "wrote " << (dir / "sweep.csv").string() << '\n';
  return kExitOk;
}

int cmd_dump(const std::string& config_path, const std::string& out_path) {
  const auto config = read_file(config_path);
  if (!config) {
    std::cerr << "freqca: cannot read config '" << config_path << "'\n";
    return kExitIo;
  }
  const freqca_status s = freqca_dump_trajectory(config->c_str(), out_path.c_str());
  if (s != FREQCA_OK) return report_failure(s, "dump");
  std::cout << "wrote " << out_path << '\n';
  return kExitOk;
}

int cmd_validate(const std::string& report_path, const std::string& schema) {
  const auto report = read_file(report_path);
  if (!report) {
    std::cerr << "freqca: cannot read report '" << report_path << "'\n";
    return kExitIo;
  }
  const freqca_status s = freqca_validate_report(report->c_str(), schema.c_str());
  if (s != FREQCA_OK) return report_failure(s, "validate");
  std::cout << report_path << ": valid " << schema << " report\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-aware CRF feature caching on a toy diffusion transformer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(freqca_version()));

  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> baselines;
  auto* run = app.add_subcommand("run", "Run the caching policy and optional baselines");
  run->add_option("--config", config_path, "Run configuration (JSON)")->required();
  run->add_option("--baseline", baselines, "Extra method to run")
      ->check(CLI::IsMember({"fora", "taylor", "layerwise"}));
  run->add_option("--out", out_dir, "Output directory");

  std::string traj_path;
  std::string intervals = "1..10";
  double cutoff = 0.25;
  std::string transform = "dct";
  auto* analyze = app.add_subcommand("analyze", "Per-band similarity and PCA of a trajectory");
  analyze->add_option("--traj", traj_path, "Trajectory file (.fqca)")->required();
  analyze->add_option("--intervals", intervals, "Step gaps, e.g. 1..10 or 1,3,5");
  analyze->add_option("--cutoff", cutoff, "Low-band cutoff fraction");
  analyze->add_option("--transform", transform, "dct, fft or none");
  analyze->add_option("--out", out_dir, "Output directory");

  std::string grid_path;
  int threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Run an ablation grid");
  sweep->add_option("--grid", grid_path, "Grid configuration (JSON)")->required();
  sweep->add_option("--threads", threads, "Worker threads (default FREQCA_THREADS or core count)");
  sweep->add_option("--out", out_dir, "Output directory");

  std::string dump_out;
  auto* dump = app.add_subcommand("dump", "Export the ground-truth feature trajectory");
  dump->add_option("--config", config_path, "Run configuration (JSON)")->required();
  dump->add_option("--out", dump_out, "Trajectory file to write")->required();

  std::string report_path;
  std::string schema = "run";
  auto* validate = app.add_subcommand("validate", "Check a report against its JSON schema");
  validate->add_option("--report", report_path, "Report JSON")->required();
  validate->add_option("--schema", schema, "run, sweep or analyze")
      ->check(CLI::IsMember({"run", "sweep", "analyze"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (*run) return cmd_run(config_path, baselines, out_dir);
  if (*analyze) return cmd_analyze(traj_path, intervals, cutoff, transform, out_dir);
  if (*sweep) return cmd_sweep(grid_path, threads, out_dir);
  if (*dump) return cmd_dump(config_path, dump_out);
  if (*validate) return cmd_validate(report_path, schema);
  return kExitConfig;
}
