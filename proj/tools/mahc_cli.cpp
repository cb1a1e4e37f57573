// SPDX-License-Identifier: Apache-2.0
//
// mahc: generate synthetic segment data, cluster it with full AHC or the
// multi-stage variants, and score assignments.
//
//   mahc gen  --classes 20 --members-min 25 --members-max 250 --output data.jsonl
//   mahc run  --mode mahc-m --p0 4 --beta 500 --input data.jsonl --out-dir out/
//   mahc run  --manifest out/manifest.json --out-dir rerun/
//   mahc eval --input data.jsonl --assignment out/assignment.csv

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mahc/mahc.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct DatasetHandle {
  mahc_dataset* p = nullptr;
  ~DatasetHandle() { mahc_dataset_free(p); }
};

struct ResultHandle {
  mahc_result* p = nullptr;
  ~ResultHandle() { mahc_result_free(p); }
};

int report(mahc_status status, const std::string& context) {
  std::cerr << "mahc: " << context << ": " << mahc_last_error() << '\n';
  return static_cast<int>(status);
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const std::map<std::string, mahc_mode> kModes{
    {"ahc-baseline", MAHC_MODE_AHC_BASELINE}, {"mahc", MAHC_MODE_MAHC}, {"mahc-m", MAHC_MODE_MAHC_M}};

struct RunOptions {
  std::string mode = "mahc-m";
  std::string input;
  std::string out_dir = ".";
  std::string manifest;
  mahc_config config{};
  bool ward_on_squared = true;
  bool l_refine = false;
  bool dtw_normalize = false;
  bool dtw_squared_cost = false;
  bool split_by_cluster = false;
};

json manifest_json(const RunOptions& o, const std::string& start, const std::string& end) {
  const mahc_config& c = o.config;
  json config = {{"p0", c.p0},
                 {"beta", c.beta},
                 {"max_iters", c.max_iters},
                 {"conv_window", c.conv_window},
                 {"seed", c.seed},
                 {"workers", c.workers},
                 {"final_k", c.final_k == 0 ? json(nullptr) : json(c.final_k)},
                 {"ward_on_squared", c.ward_on_squared != 0},
                 {"l_refine", c.l_refine != 0},
                 {"dtw_normalize", c.dtw_normalize != 0},
                 {"dtw_squared_cost", c.dtw_squared_cost != 0},
                 {"split_by_cluster", c.split_by_cluster != 0}};
  return {{"tool", "mahc"},     {"version", mahc_version()}, {"mode", o.mode},
          {"input", o.input},   {"out_dir", o.out_dir},      {"config", config},
          {"seed", c.seed},     {"start_time", start},       {"end_time", end}};
}

// Replaces the run options with those recorded in a manifest. An explicit
// --out-dir on the command line still wins.
void apply_manifest(RunOptions& o, bool out_dir_given) {
  std::ifstream in(o.manifest);
  if (!in) throw std::runtime_error("cannot open manifest " + o.manifest);
  const json m = json::parse(in);
  const json& c = m.at("config");
  o.mode = m.at("mode").get<std::string>();
  o.input = m.at("input").get<std::string>();
  if (!out_dir_given) o.out_dir = m.at("out_dir").get<std::string>();
  mahc_config_init(&o.config);
  o.config.p0 = c.at("p0").get<size_t>();
  o.config.beta = c.at("beta").get<size_t>();
  o.config.max_iters = c.at("max_iters").get<size_t>();
  o.config.conv_window = c.at("conv_window").get<size_t>();
  o.config.seed = c.at("seed").get<uint64_t>();
  o.config.workers = c.at("workers").get<size_t>();
  o.config.final_k = c.at("final_k").is_null() ? 0 : c.at("final_k").get<size_t>();
  o.ward_on_squared = c.at("ward_on_squared").get<bool>();
  o.l_refine = c.at("l_refine").get<bool>();
  o.dtw_normalize = c.at("dtw_normalize").get<bool>();
  o.dtw_squared_cost = c.value("dtw_squared_cost", false);
  o.split_by_cluster = c.value("split_by_cluster", false);
}

int cmd_run(RunOptions o, bool out_dir_given) {
  if (!o.manifest.empty()) {
    try {
      apply_manifest(o, out_dir_given);
    } catch (const std::exception& e) {
      std::cerr << "mahc: bad manifest: " << e.what() << '\n';
      return kExitUsage;
    }
  }
  if (o.input.empty()) {
    std::cerr << "mahc: run needs --input or --manifest\n";
    return kExitUsage;
  }
  const auto mode = kModes.find(o.mode);
  if (mode == kModes.end()) {
    std::cerr << "mahc: unknown mode " << o.mode << '\n';
    return kExitUsage;
  }
  o.config.mode = mode->second;
  o.config.ward_on_squared = o.ward_on_squared ? 1 : 0;
  o.config.l_refine = o.l_refine ? 1 : 0;
  o.config.dtw_normalize = o.dtw_normalize ? 1 : 0;
  o.config.dtw_squared_cost = o.dtw_squared_cost ? 1 : 0;
  o.config.split_by_cluster = o.split_by_cluster ? 1 : 0;
  if (o.config.mode == MAHC_MODE_MAHC_M && o.config.beta == 0) {
    std::cerr << "mahc: --mode mahc-m needs --beta\n";
    return kExitUsage;
  }

  const std::string start = utc_now();
  const auto started = std::chrono::steady_clock::now();

  DatasetHandle ds;
  if (auto st = mahc_dataset_load(o.input.c_str(), &ds.p); st != MAHC_OK)
    return report(st, "loading " + o.input);
  const size_t n = mahc_dataset_size(ds.p);
  if (o.config.mode == MAHC_MODE_MAHC && o.config.beta == 0) o.config.beta = n;

  ResultHandle result;
  if (auto st = mahc_run(ds.p, &o.config, &result.p); st != MAHC_OK) return report(st, "run");

  std::vector<uint32_t> labels(n);
  if (auto st = mahc_result_assignment(result.p, labels.data(), n); st != MAHC_OK)
    return report(st, "assignment");

  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec) {
    std::cerr << "mahc: cannot create " << o.out_dir << ": " << ec.message() << '\n';
    return kExitData;
  }
  const fs::path out(o.out_dir);

  {
    std::ofstream f(out / "assignment.csv");
    f << "segment_id,cluster_id\n";
    for (size_t i = 0; i < n; ++i) f << mahc_dataset_segment_id(ds.p, i) << ',' << labels[i] << '\n';
    if (!f) return kExitData;
  }

  std::optional<double> final_f;
  const size_t iterations = mahc_result_iteration_count(result.p);
  {
    std::ofstream f(out / "stats.csv");
    f << "iter,P,max_occ,min_occ,S,K_est,fmeasure,seconds\n";
    for (size_t i = 0; i < iterations; ++i) {
      mahc_iteration_stats s{};
      if (auto st = mahc_result_iteration(result.p, i, &s); st != MAHC_OK) return report(st, "stats");
      f << s.iteration << ',' << s.subsets << ',' << s.max_occupancy << ',' << s.min_occupancy << ','
        << s.medoids << ',' << s.k_estimate << ',';
      if (s.has_f_measure) {
        f << std::setprecision(17) << s.f_measure;
        final_f = s.f_measure;
      } else {
        final_f.reset();
      }
      f << ',' << std::fixed << std::setprecision(6) << s.seconds << std::defaultfloat << '\n';
    }
    if (!f) return kExitData;
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  {
    std::ofstream f(out / "manifest.json");
    f << manifest_json(o, start, utc_now()).dump(2) << '\n';
    if (!f) return kExitData;
  }

  for (size_t w = 0; w < mahc_result_warning_count(result.p); ++w)
    std::cerr << "mahc: warning: " << mahc_result_warning(result.p, w) << '\n';

  std::cout << "mode " << o.mode << '\n'
            << "segments " << n << '\n'
            << "iterations " << iterations << '\n'
            << "final_k " << mahc_result_final_k(result.p) << '\n';
  if (final_f) std::cout << "fmeasure " << std::setprecision(6) << *final_f << '\n';
  std::cout << "peak_subset " << mahc_result_peak_occupancy(result.p) << '\n'
            << "seconds " << std::fixed << std::setprecision(3) << seconds << '\n';
  return 0;
}

int cmd_gen(const mahc_synthetic_spec& spec, const std::string& output) {
  DatasetHandle ds;
  if (auto st = mahc_dataset_generate(&spec, &ds.p); st != MAHC_OK) return report(st, "gen");
  if (auto st = mahc_dataset_save(ds.p, output.c_str()); st != MAHC_OK)
    return report(st, "writing " + output);
  std::cout << "segments " << mahc_dataset_size(ds.p) << '\n'
            << "classes " << mahc_dataset_class_count(ds.p) << '\n';
  return 0;
}

int cmd_eval(const std::string& input, const std::string& assignment) {
  DatasetHandle ds;
  if (auto st = mahc_dataset_load(input.c_str(), &ds.p); st != MAHC_OK)
    return report(st, "loading " + input);

  std::ifstream in(assignment);
  if (!in) {
    std::cerr << "mahc: cannot open " << assignment << '\n';
    return kExitData;
  }
  std::vector<int64_t> segments, clusters;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("segment_id", 0) == 0) continue;
    if (line.empty()) continue;
    std::istringstream row(line);
    int64_t seg = 0, cl = 0;
    char comma = 0;
    if (!(row >> seg >> comma >> cl) || comma != ',') {
      std::cerr << "mahc: " << assignment << ": line " << line_no << ": malformed row\n";
      return kExitData;
    }
    segments.push_back(seg);
    clusters.push_back(cl);
  }
  double f = 0.0;
  if (auto st = mahc_evaluate(ds.p, segments.data(), clusters.data(), segments.size(), &f);
      st != MAHC_OK)
    return report(st, "eval");
  std::cout << "fmeasure " << std::setprecision(17) << f << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-stage agglomerative hierarchical clustering with cluster size management"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mahc_version()));

  RunOptions run;
  mahc_config_init(&run.config);
  auto* run_cmd = app.add_subcommand("run", "Cluster a segment file");
  run_cmd->add_option("--mode", run.mode, "ahc-baseline, mahc or mahc-m")
      ->check(CLI::IsMember({"ahc-baseline", "mahc", "mahc-m"}));
  run_cmd->add_option("--input", run.input, "Line-delimited JSON segment file");
  auto* out_dir_opt = run_cmd->add_option("--out-dir", run.out_dir, "Output directory");
  run_cmd->add_option("--manifest", run.manifest, "Re-run from a manifest.json");
  run_cmd->add_option("--p0", run.config.p0, "Initial number of subsets")->check(CLI::PositiveNumber);
  run_cmd->add_option("--beta", run.config.beta, "Largest allowed subset (mahc-m)");
  run_cmd->add_option("--max-iters", run.config.max_iters, "Iteration budget")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--conv-window", run.config.conv_window,
                      "Iterations with unchanged P needed to stop early")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run.config.seed, "Partitioning seed");
  run_cmd->add_option("--workers", run.config.workers, "Worker threads")->check(CLI::PositiveNumber);
  run_cmd->add_option("--final-k", run.config.final_k, "Final cluster count (default: automatic)");
  run_cmd->add_flag("--ward-on-squared,!--no-ward-on-squared", run.ward_on_squared,
                    "Treat DTW values as squared distances in Ward (default on); "
                    "off squares them first");
  run_cmd->add_flag("--l-refine", run.l_refine, "Iterative L-method refinement");
  run_cmd->add_flag("--dtw-normalize", run.dtw_normalize, "Divide DTW cost by n_a + n_b");
  run_cmd->add_flag("--dtw-squared-cost", run.dtw_squared_cost, "Squared Euclidean frame cost");
  run_cmd->add_flag("--split-by-cluster", run.split_by_cluster,
                    "Keep stage-one clusters together when splitting (mahc-m)");

  mahc_synthetic_spec spec{};
  mahc_synthetic_spec_init(&spec);
  std::string gen_output;
  size_t members = 0;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a labelled synthetic segment file");
  gen_cmd->add_option("--classes", spec.classes, "Number of classes");
  gen_cmd->add_option("--members", members, "Members per class (flat profile)");
  gen_cmd->add_option("--members-min", spec.members_min, "Smallest class size");
  gen_cmd->add_option("--members-max", spec.members_max, "Largest class size");
  gen_cmd->add_option("--dim", spec.dim, "Feature dimension");
  gen_cmd->add_option("--len-min", spec.length_min, "Shortest template length");
  gen_cmd->add_option("--len-max", spec.length_max, "Longest template length");
  gen_cmd->add_option("--jitter", spec.jitter, "Per-frame Gaussian noise std");
  gen_cmd->add_option("--warp", spec.warp, "Per-frame duplication/deletion probability");
  gen_cmd->add_option("--seed", spec.seed, "Generator seed");
  gen_cmd->add_option("--output", gen_output, "Output file")->required();

  std::string eval_input, eval_assignment;
  auto* eval_cmd = app.add_subcommand("eval", "F-measure of an assignment against labels");
  eval_cmd->add_option("--input", eval_input, "Labelled segment file")->required();
  eval_cmd->add_option("--assignment", eval_assignment, "segment_id,cluster_id CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*run_cmd) return cmd_run(run, out_dir_opt->count() > 0);
  if (*gen_cmd) {
    if (members != 0) spec.members_min = spec.members_max = members;
    return cmd_gen(spec, gen_output);
  }
  if (*eval_cmd) return cmd_eval(eval_input, eval_assignment);
  return kExitUsage;
}
