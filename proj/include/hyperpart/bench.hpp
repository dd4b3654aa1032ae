#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hyperpart/multilevel.hpp"

namespace hyperpart {

// Key=value experiment description (one key per line, '#' comments, comma
// separated lists). Required keys: inputs, k, tolerance. Optional: repetitions,
// scheme, seed, coarsest_size, q, ipm_order, ipm_metric, baseline. Relative
// input paths resolve against the directory containing the spec file.
struct ExperimentSpec {
  std::vector<std::string> inputs;  // hypergraph files, resolved paths
  std::vector<PartId> ks;
  std::vector<double> tolerances;
  std::int32_t repetitions = 20;
  std::vector<AggregationScheme> schemes;  // defaults to both
  IpmOrder ipm_order = IpmOrder::kRandom;
  IpmMetric ipm_metric = IpmMetric::kInnerProduct;
  double q_threshold = 0.5;
  std::int32_t coarsest_size = 0;  // 0 = solver default
  std::uint64_t seed = 1;
  std::vector<std::string> baselines;  // external cut CSVs, resolved paths
};

ExperimentSpec parse_spec(const std::string& path);

// One partitioner invocation. `instance` is the input file stem. The seed is
// derived from (spec seed, instance, k, tolerance, scheme, rep), so a record
// is reproducible in isolation and independent of scheduling order. Wall time
// is deliberately not part of the record: result files must be byte-stable
// across reruns.
struct RunRecord {
  std::string instance;
  PartId k = 0;
  double tolerance = 0.0;
  std::string scheme;
  std::int32_t rep = 0;
  std::uint64_t seed = 0;
  double cut = 0.0;
  double imbalance = 0.0;
  bool feasible = false;
  std::int32_t levels = 0;   // hierarchy depth of the top-level bisection
  std::string error;         // nonempty means the run failed and cut fields are meaningless
};

// Per (instance, k, tolerance, scheme) aggregate over repetitions.
struct CellSummary {
  std::string instance;
  PartId k = 0;
  double tolerance = 0.0;
  std::string scheme;
  std::int32_t n_ok = 0;          // successful repetitions
  double best_cut = 0.0;          // min over successes, 0 if none
  double median_cut = 0.0;        // mean of the two middles for even counts
  double worst_imbalance = 0.0;   // max over successes
  bool all_feasible = false;
};

struct BenchResults {
  std::vector<RunRecord> records;  // input-major, repetition-minor order
  std::vector<CellSummary> cells;  // same order minus the repetition axis
  std::vector<std::string> errors; // input-level failures (file unreadable etc.)
  double wall_ms = 0.0;
};

// Runs the full cross product, distributing runs over `threads` workers.
// Inputs that fail to load produce error records for all their cells and the
// run continues. Results are deterministic and independent of thread count.
BenchResults run_experiments(const ExperimentSpec& spec, std::int32_t threads = 1);

std::uint64_t derive_run_seed(std::uint64_t base, const std::string& instance, PartId k,
                              double tolerance, const std::string& scheme, std::int32_t rep);

void write_records_csv(const std::string& path, const std::vector<RunRecord>& records);
void write_cells_csv(const std::string& path, const std::vector<CellSummary>& cells);

// Reads a file produced by write_cells_csv (used to compare a finished bench
// run against external baselines without re-running it). ParseError on
// header or row mismatches.
std::vector<CellSummary> read_cells_csv(const std::string& path);

// JSON manifest next to the CSVs: spec echo, histogram bin edges, errors,
// warnings, total wall time, and the (volatile) generation timestamp.
void write_manifest(const std::string& path, const ExperimentSpec& spec,
                    const BenchResults& results, const std::vector<std::string>& warnings = {});

// Quality ratio of a reference cut against ours: zeta > 1 means our cut is
// smaller. Values land in seven half-open bins with boundary values assigned
// away from the centre; the middle bin (0.95, 1.05) is exclusive on both ends.
inline constexpr std::int32_t kZetaBins = 7;

struct ZetaRecord {
  std::string instance;
  std::string numerator;    // label of the reference cut source
  std::string denominator;  // label of our cut source
  double zeta = 0.0;        // ratio; see `infinite`
  bool infinite = false;    // ours cut 0, reference positive
  std::int32_t bin = -1;    // 0..6, 3 is the +-5% middle bin
};

// Bin index for a finite ratio z > 0. Throws std::invalid_argument otherwise.
std::int32_t zeta_bin(double z);

// Human-readable interval labels, index-aligned with the bins.
std::array<std::string, kZetaBins> zeta_bin_edges();

// Builds the record for one comparison. Both cuts must be >= 0; a 0/0 tie is
// zeta = 1 (middle bin), positive/0 is the rightmost bin with the infinite
// marker set, and 0/positive lands in the leftmost bin.
ZetaRecord zeta(double cut_other, double cut_ours);

struct SchemeComparison {
  std::vector<ZetaRecord> records;  // one per cell present under both schemes
  std::array<std::int64_t, kZetaBins> histogram{};
  std::int64_t n_cells = 0;
  std::int64_t n_skipped = 0;       // cells missing a side or with no successes
  double middle_fraction = 0.0;     // histogram[3] / n_cells
  std::vector<std::string> warnings;
};

// Per (instance, k, tolerance) cell: zeta of the stable-matching best cut
// against the inner-product best cut, over the summaries of one bench run.
SchemeComparison compare_schemes(const std::vector<CellSummary>& cells);

// External reference cuts keyed by (instance, k, tolerance-in-milli, tool).
struct BaselineTable {
  std::map<std::tuple<std::string, PartId, std::int64_t, std::string>, double> cuts;
  std::vector<std::string> warnings;
};

// CSV with columns instance,k,tolerance,tool,cut (header row optional).
// Malformed rows abort with a ParseError carrying the line number; duplicate
// keys keep the minimum cut and add a warning.
BaselineTable import_external_cuts(const std::string& path);

struct BaselineComparison {
  std::vector<ZetaRecord> records;
  std::map<std::string, std::array<std::int64_t, kZetaBins>> histogram_by_tool;
  std::vector<std::string> warnings;  // baseline rows with no matching cell
};

// Joins baseline cuts against our per-cell best (minimum over schemes).
BaselineComparison zeta_against_baselines(const std::vector<CellSummary>& cells,
                                          const BaselineTable& baseline);

void write_zeta_csv(const std::string& path, const std::vector<ZetaRecord>& records);
void write_histogram_csv(const std::string& path,
                         const std::map<std::string, std::array<std::int64_t, kZetaBins>>& rows);

}  // namespace hyperpart
