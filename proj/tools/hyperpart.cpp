#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperpart/bench.hpp"
#include "hyperpart/io.hpp"
#include "hyperpart/multilevel.hpp"

namespace {

using namespace hyperpart;

int run_part(const std::string& input, MultilevelConfig cfg, const std::string& scheme,
             const std::string& order, const std::string& metric, const std::string& json_path,
             const std::string& parts_path) {
  cfg.scheme = scheme == "stable" ? AggregationScheme::kStableMatching
                                  : AggregationScheme::kInnerProduct;
  cfg.ipm_order = order == "fv" ? IpmOrder::kFutureVolume : IpmOrder::kRandom;
  cfg.ipm_metric = metric == "conn" ? IpmMetric::kConnectivity : IpmMetric::kInnerProduct;

  const Hypergraph hg = load_auto(input);
  const PartitionResult res = kway(hg, cfg);

  nlohmann::json j;
  j["input"] = std::filesystem::path(input).stem().string();
  j["n_vertices"] = hg.n_vertices();
  j["n_edges"] = hg.n_edges();
  j["k"] = cfg.k;
  j["tolerance"] = cfg.tolerance;
  j["scheme"] = scheme_name(cfg.scheme);
  j["ipm_order"] = order_name(cfg.ipm_order);
  j["ipm_metric"] = metric_name(cfg.ipm_metric);
  j["q"] = cfg.q_threshold;
  j["coarsest_size"] = effective_coarsest_size(cfg);
  j["min_reduction"] = cfg.min_reduction;
  j["max_passes"] = cfg.max_passes;
  j["omega"] = cfg.algdist.omega;
  j["test_vectors"] = cfg.algdist.test_vectors;
  j["iterations"] = cfg.algdist.iterations;
  j["seed"] = cfg.rng_seed;
  j["cut"] = res.report.cut_weight;
  j["imbalance"] = res.report.imbalance;
  j["feasible"] = res.feasible;
  j["part_weights"] = res.report.part_weights;
  j["level_sizes"] = res.level_sizes;
  j["wall_ms"] = res.wall_ms;

  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw std::runtime_error("cannot write " + json_path);
    out << j.dump(2) << '\n';
  }
  if (!parts_path.empty()) {
    std::ofstream out(parts_path);
    if (!out) throw std::runtime_error("cannot write " + parts_path);
    for (PartId p : res.partition.part) out << p << '\n';
  }
  std::cout << j.dump(2) << '\n';
  return res.feasible ? 0 : 2;
}

int run_bench(const std::string& spec_path, const std::string& out_dir, std::int32_t threads) {
  const ExperimentSpec spec = parse_spec(spec_path);
  std::filesystem::create_directories(out_dir);
  const BenchResults results = run_experiments(spec, threads);

  const auto in_dir = [&](const char* name) {
    return (std::filesystem::path(out_dir) / name).string();
  };
  write_records_csv(in_dir("records.csv"), results.records);
  write_cells_csv(in_dir("cells.csv"), results.cells);

  SchemeComparison cmp = compare_schemes(results.cells);
  write_zeta_csv(in_dir("zeta_scheme.csv"), cmp.records);
  std::map<std::string, std::array<std::int64_t, kZetaBins>> hist{
      {"stable_vs_ipm", cmp.histogram}};
  write_histogram_csv(in_dir("hist_scheme.csv"), hist);

  std::vector<std::string> warnings = cmp.warnings;
  std::vector<ZetaRecord> baseline_records;
  std::map<std::string, std::array<std::int64_t, kZetaBins>> baseline_hist;
  for (const std::string& b : spec.baselines) {
    BaselineTable table = import_external_cuts(b);
    warnings.insert(warnings.end(), table.warnings.begin(), table.warnings.end());
    BaselineComparison bc = zeta_against_baselines(results.cells, table);
    warnings.insert(warnings.end(), bc.warnings.begin(), bc.warnings.end());
    baseline_records.insert(baseline_records.end(), bc.records.begin(), bc.records.end());
    for (const auto& [tool, h] : bc.histogram_by_tool) {
      auto& acc = baseline_hist[tool];
      for (std::int32_t i = 0; i < kZetaBins; ++i) acc[i] += h[i];
    }
  }
  if (!spec.baselines.empty()) {
    write_zeta_csv(in_dir("zeta_baseline.csv"), baseline_records);
    write_histogram_csv(in_dir("hist_baseline.csv"), baseline_hist);
  }
  write_manifest(in_dir("manifest.json"), spec, results, warnings);

  std::printf("%zu records (%zu input errors), %lld scheme cells compared, middle bin %.1f%%\n",
              results.records.size(), results.errors.size(),
              static_cast<long long>(cmp.n_cells), 100.0 * cmp.middle_fraction);
  for (const std::string& e : results.errors) std::fprintf(stderr, "error: %s\n", e.c_str());
  for (const std::string& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  return 0;
}

int run_zeta(const std::string& ours_path, const std::string& baseline_path,
             const std::string& out_path, const std::string& hist_path) {
  const std::vector<CellSummary> cells = read_cells_csv(ours_path);
  const BaselineTable table = import_external_cuts(baseline_path);
  const BaselineComparison bc = zeta_against_baselines(cells, table);
  write_zeta_csv(out_path, bc.records);
  write_histogram_csv(hist_path, bc.histogram_by_tool);
  for (const std::string& w : table.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  for (const std::string& w : bc.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  std::printf("%zu comparisons across %zu tools\n", bc.records.size(),
              bc.histogram_by_tool.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilevel hypergraph partitioner with algebraic-distance coarsening"};
  app.require_subcommand(1);

  // part
  std::string input, scheme = "ipm", order = "random", metric = "ip";
  std::string json_path, parts_path;
  MultilevelConfig cfg;
  CLI::App* part = app.add_subcommand("part", "Partition one hypergraph");
  part->add_option("input", input, "Matrix Market or native hypergraph file")->required();
  part->add_option("--k", cfg.k, "number of parts")->check(CLI::PositiveNumber);
  part->add_option("--tol", cfg.tolerance, "imbalance bound (must exceed 1)");
  part->add_option("--scheme", scheme, "aggregation scheme")
      ->check(CLI::IsMember({"ipm", "stable"}));
  part->add_option("--ipm-order", order, "ipm visit order")
      ->check(CLI::IsMember({"random", "fv"}));
  part->add_option("--ipm-metric", metric, "ipm affinity metric")
      ->check(CLI::IsMember({"ip", "conn"}));
  part->add_option("--Q", cfg.q_threshold, "strong-connection threshold");
  part->add_option("--seed", cfg.rng_seed, "RNG seed");
  part->add_option("--coarsest-size", cfg.coarsest_size, "coarsening floor (0 = default)");
  part->add_option("--max-passes", cfg.max_passes, "FM passes per refinement");
  part->add_option("--omega", cfg.algdist.omega, "relaxation factor in (0,1]");
  part->add_option("--vectors", cfg.algdist.test_vectors, "relaxation test vectors");
  part->add_option("--iterations", cfg.algdist.iterations, "relaxation sweeps");
  part->add_option("--json", json_path, "write the result record here");
  part->add_option("--write-parts", parts_path, "write one part id per vertex line");

  // bench
  std::string spec_path, out_dir = "bench_out";
  std::int32_t threads = 1;
  CLI::App* bench = app.add_subcommand("bench", "Run an experiment spec");
  bench->add_option("spec", spec_path, "key=value experiment file")->required();
  bench->add_option("--out-dir", out_dir, "directory for CSV/JSON outputs");
  bench->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  // zeta
  std::string ours_path, baseline_path, zeta_out = "zeta.csv", hist_out = "zeta_hist.csv";
  CLI::App* zeta_cmd = app.add_subcommand("zeta", "Compare a cells.csv against external cuts");
  zeta_cmd->add_option("--ours", ours_path, "cells.csv from a bench run")->required();
  zeta_cmd->add_option("--baseline", baseline_path, "CSV instance,k,tolerance,tool,cut")
      ->required();
  zeta_cmd->add_option("--out", zeta_out, "per-comparison output CSV");
  zeta_cmd->add_option("--hist", hist_out, "histogram output CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (part->parsed()) return run_part(input, cfg, scheme, order, metric, json_path, parts_path);
    if (bench->parsed()) return run_bench(spec_path, out_dir, threads);
    return run_zeta(ours_path, baseline_path, zeta_out, hist_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
