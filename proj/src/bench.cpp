#include "hyperpart/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "hyperpart/io.hpp"
#include "hyperpart/rng.hpp"

namespace hyperpart {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    if (comma == std::string::npos) comma = value.size();
    std::string token = trim(value.substr(start, comma - start));
    if (!token.empty()) out.push_back(std::move(token));
    start = comma + 1;
  }
  return out;
}

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

std::int64_t parse_int(const std::string& path, int line, const std::string& token) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(path, line, "expected an integer, got '" + token + "'");
  }
}

double parse_num(const std::string& path, int line, const std::string& token) {
  try {
    std::size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(path, line, "expected a number, got '" + token + "'");
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

// Splits one CSV line, honouring double-quoted fields with doubled quotes.
// Embedded newlines are not supported (none of our writers emit them).
std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::int64_t milli_tol(double tolerance) {
  return std::llround(tolerance * 1000.0);
}

using CellKey = std::tuple<std::string, PartId, std::int64_t>;

std::string cell_label(const CellKey& key) {
  return std::get<0>(key) + ":k" + std::to_string(std::get<1>(key)) + ":t" +
         std::to_string(std::get<2>(key));
}

}  // namespace

ExperimentSpec parse_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open spec file");
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    if (fp.is_relative()) fp = dir / fp;
    return fp.string();
  };

  ExperimentSpec spec;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (std::size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(path, lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ParseError(path, lineno, "empty value for '" + key + "'");

    if (key == "inputs" || key == "input") {
      for (const std::string& t : split_list(value)) spec.inputs.push_back(resolve(t));
    } else if (key == "k") {
      for (const std::string& t : split_list(value)) {
        std::int64_t k = parse_int(path, lineno, t);
        if (k < 1) throw ParseError(path, lineno, "k must be >= 1");
        spec.ks.push_back(static_cast<PartId>(k));
      }
    } else if (key == "tolerance") {
      for (const std::string& t : split_list(value)) {
        double tol = parse_num(path, lineno, t);
        if (!(tol > 1.0)) throw ParseError(path, lineno, "tolerance must exceed 1");
        spec.tolerances.push_back(tol);
      }
    } else if (key == "repetitions") {
      std::int64_t reps = parse_int(path, lineno, value);
      if (reps < 1) throw ParseError(path, lineno, "repetitions must be >= 1");
      spec.repetitions = static_cast<std::int32_t>(reps);
    } else if (key == "scheme") {
      for (const std::string& t : split_list(value)) {
        if (t == "ipm")
          spec.schemes.push_back(AggregationScheme::kInnerProduct);
        else if (t == "stable")
          spec.schemes.push_back(AggregationScheme::kStableMatching);
        else
          throw ParseError(path, lineno, "unknown scheme '" + t + "' (want ipm or stable)");
      }
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(parse_int(path, lineno, value));
    } else if (key == "coarsest_size") {
      std::int64_t cs = parse_int(path, lineno, value);
      if (cs < 0) throw ParseError(path, lineno, "coarsest_size must be >= 0");
      spec.coarsest_size = static_cast<std::int32_t>(cs);
    } else if (key == "q") {
      double q = parse_num(path, lineno, value);
      if (!(q > 0.0 && q < 1.0)) throw ParseError(path, lineno, "q must lie in (0, 1)");
      spec.q_threshold = q;
    } else if (key == "ipm_order") {
      if (value == "random")
        spec.ipm_order = IpmOrder::kRandom;
      else if (value == "fv")
        spec.ipm_order = IpmOrder::kFutureVolume;
      else
        throw ParseError(path, lineno, "unknown ipm_order '" + value + "' (want random or fv)");
    } else if (key == "ipm_metric") {
      if (value == "ip")
        spec.ipm_metric = IpmMetric::kInnerProduct;
      else if (value == "conn")
        spec.ipm_metric = IpmMetric::kConnectivity;
      else
        throw ParseError(path, lineno, "unknown ipm_metric '" + value + "' (want ip or conn)");
    } else if (key == "baseline") {
      for (const std::string& t : split_list(value)) spec.baselines.push_back(resolve(t));
    } else {
      throw ParseError(path, lineno, "unknown key '" + key + "'");
    }
  }
  if (spec.inputs.empty()) throw ParseError(path, lineno, "spec lists no inputs");
  if (spec.ks.empty()) throw ParseError(path, lineno, "spec lists no k values");
  if (spec.tolerances.empty()) throw ParseError(path, lineno, "spec lists no tolerances");
  if (spec.schemes.empty())
    spec.schemes = {AggregationScheme::kInnerProduct, AggregationScheme::kStableMatching};
  return spec;
}

std::uint64_t derive_run_seed(std::uint64_t base, const std::string& instance, PartId k,
                              double tolerance, const std::string& scheme, std::int32_t rep) {
  std::uint64_t s = mix_seed(base, fnv1a(instance));
  s = mix_seed(s, static_cast<std::uint64_t>(k));
  s = mix_seed(s, static_cast<std::uint64_t>(milli_tol(tolerance)));
  s = mix_seed(s, fnv1a(scheme));
  return mix_seed(s, static_cast<std::uint64_t>(rep));
}

BenchResults run_experiments(const ExperimentSpec& spec, std::int32_t threads) {
  const auto t0 = std::chrono::steady_clock::now();
  BenchResults out;

  struct Loaded {
    std::string instance;
    Hypergraph hg;
    bool ok = false;
    std::string error;
  };
  std::vector<Loaded> loaded(spec.inputs.size());
  for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
    loaded[i].instance = stem_of(spec.inputs[i]);
    try {
      loaded[i].hg = load_auto(spec.inputs[i]);
      loaded[i].ok = true;
    } catch (const std::exception& e) {
      loaded[i].error = e.what();
      out.errors.push_back(e.what());
    }
  }

  // Lay records out in a fixed nested order (repetition innermost) so every
  // cell owns a contiguous slice and reruns produce identical files.
  struct Task {
    std::size_t record;
    std::size_t input;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < spec.inputs.size(); ++i)
    for (PartId k : spec.ks)
      for (double tol : spec.tolerances)
        for (AggregationScheme scheme : spec.schemes)
          for (std::int32_t rep = 0; rep < spec.repetitions; ++rep) {
            RunRecord r;
            r.instance = loaded[i].instance;
            r.k = k;
            r.tolerance = tol;
            r.scheme = scheme_name(scheme);
            r.rep = rep;
            r.seed = derive_run_seed(spec.seed, r.instance, k, tol, r.scheme, rep);
            if (!loaded[i].ok)
              r.error = loaded[i].error;
            else
              tasks.push_back({out.records.size(), i});
            out.records.push_back(std::move(r));
          }

  auto work = [&](RunRecord& r, const Hypergraph& hg) {
    MultilevelConfig cfg;
    cfg.k = r.k;
    cfg.tolerance = r.tolerance;
    cfg.scheme = r.scheme == "ipm" ? AggregationScheme::kInnerProduct
                                   : AggregationScheme::kStableMatching;
    cfg.ipm_order = spec.ipm_order;
    cfg.ipm_metric = spec.ipm_metric;
    cfg.q_threshold = spec.q_threshold;
    cfg.coarsest_size = spec.coarsest_size;
    cfg.rng_seed = r.seed;
    try {
      PartitionResult res = kway(hg, cfg);
      r.cut = res.report.cut_weight;
      r.imbalance = res.report.imbalance;
      r.feasible = res.feasible;
      r.levels = static_cast<std::int32_t>(res.level_sizes.size());
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  };

  const std::int32_t n_workers = std::max<std::int32_t>(1, threads);
  if (n_workers == 1 || tasks.size() < 2) {
    for (const Task& t : tasks) work(out.records[t.record], loaded[t.input].hg);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t width = std::min<std::size_t>(n_workers, tasks.size());
    for (std::size_t w = 0; w < width; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
          work(out.records[tasks[i].record], loaded[tasks[i].input].hg);
      });
    for (std::thread& th : pool) th.join();
  }

  const std::size_t reps = static_cast<std::size_t>(spec.repetitions);
  for (std::size_t base = 0; base < out.records.size(); base += reps) {
    const RunRecord& head = out.records[base];
    CellSummary c;
    c.instance = head.instance;
    c.k = head.k;
    c.tolerance = head.tolerance;
    c.scheme = head.scheme;
    std::vector<double> cuts;
    bool feasible = true;
    double worst = 0.0;
    for (std::size_t i = base; i < base + reps; ++i) {
      const RunRecord& r = out.records[i];
      if (!r.error.empty()) continue;
      cuts.push_back(r.cut);
      worst = std::max(worst, r.imbalance);
      feasible = feasible && r.feasible;
    }
    c.n_ok = static_cast<std::int32_t>(cuts.size());
    if (!cuts.empty()) {
      std::sort(cuts.begin(), cuts.end());
      c.best_cut = cuts.front();
      const std::size_t mid = cuts.size() / 2;
      c.median_cut = cuts.size() % 2 == 1 ? cuts[mid] : 0.5 * (cuts[mid - 1] + cuts[mid]);
      c.worst_imbalance = worst;
      c.all_feasible = feasible;
    }
    out.cells.push_back(std::move(c));
  }

  out.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

void write_records_csv(const std::string& path, const std::vector<RunRecord>& records) {
  std::ofstream out = open_out(path);
  out << "instance,k,tolerance,scheme,rep,seed,cut,imbalance,feasible,levels,error\n";
  for (const RunRecord& r : records) {
    out << csv_escape(r.instance) << ',' << r.k << ',' << fmt(r.tolerance) << ',' << r.scheme
        << ',' << r.rep << ',' << r.seed << ',' << fmt(r.cut) << ',' << fmt(r.imbalance) << ','
        << (r.feasible ? 1 : 0) << ',' << r.levels << ',' << csv_escape(r.error) << '\n';
  }
}

void write_cells_csv(const std::string& path, const std::vector<CellSummary>& cells) {
  std::ofstream out = open_out(path);
  out << "instance,k,tolerance,scheme,n_ok,best_cut,median_cut,worst_imbalance,all_feasible\n";
  for (const CellSummary& c : cells) {
    out << csv_escape(c.instance) << ',' << c.k << ',' << fmt(c.tolerance) << ',' << c.scheme
        << ',' << c.n_ok << ',' << fmt(c.best_cut) << ',' << fmt(c.median_cut) << ','
        << fmt(c.worst_imbalance) << ',' << (c.all_feasible ? 1 : 0) << '\n';
  }
}

std::vector<CellSummary> read_cells_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open cells file");
  const std::string expected =
      "instance,k,tolerance,scheme,n_ok,best_cut,median_cut,worst_imbalance,all_feasible";
  std::string raw;
  int lineno = 0;
  if (!std::getline(in, raw)) throw ParseError(path, 1, "missing header row");
  ++lineno;
  if (trim(raw) != expected) throw ParseError(path, 1, "unexpected header, want '" + expected + "'");
  std::vector<CellSummary> cells;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty()) continue;
    std::vector<std::string> cols = csv_split(line);
    if (cols.size() != 9) throw ParseError(path, lineno, "expected 9 columns");
    CellSummary c;
    c.instance = cols[0];
    c.k = static_cast<PartId>(parse_int(path, lineno, cols[1]));
    c.tolerance = parse_num(path, lineno, cols[2]);
    c.scheme = cols[3];
    c.n_ok = static_cast<std::int32_t>(parse_int(path, lineno, cols[4]));
    c.best_cut = parse_num(path, lineno, cols[5]);
    c.median_cut = parse_num(path, lineno, cols[6]);
    c.worst_imbalance = parse_num(path, lineno, cols[7]);
    c.all_feasible = parse_int(path, lineno, cols[8]) != 0;
    cells.push_back(std::move(c));
  }
  return cells;
}

void write_manifest(const std::string& path, const ExperimentSpec& spec,
                    const BenchResults& results, const std::vector<std::string>& warnings) {
  nlohmann::json j;
  char stamp[64];
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  j["generated_at"] = stamp;

  std::vector<std::string> schemes;
  for (AggregationScheme s : spec.schemes) schemes.push_back(scheme_name(s));
  j["spec"] = {{"inputs", spec.inputs},
               {"k", spec.ks},
               {"tolerance", spec.tolerances},
               {"repetitions", spec.repetitions},
               {"scheme", schemes},
               {"ipm_order", order_name(spec.ipm_order)},
               {"ipm_metric", metric_name(spec.ipm_metric)},
               {"q", spec.q_threshold},
               {"coarsest_size", spec.coarsest_size},
               {"seed", spec.seed},
               {"baseline", spec.baselines}};
  j["zeta_bin_edges"] = zeta_bin_edges();
  j["n_records"] = results.records.size();
  j["errors"] = results.errors;
  j["warnings"] = warnings;
  j["wall_ms"] = results.wall_ms;

  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

std::int32_t zeta_bin(double z) {
  if (!(z > 0.0) || !std::isfinite(z))
    throw std::invalid_argument("zeta_bin: ratio must be positive and finite");
  if (z <= 0.80) return 0;
  if (z <= 0.90) return 1;
  if (z <= 0.95) return 2;
  if (z < 1.05) return 3;
  if (z < 1.10) return 4;
  if (z < 1.20) return 5;
  return 6;
}

std::array<std::string, kZetaBins> zeta_bin_edges() {
  return {"(0,0.80]", "(0.80,0.90]", "(0.90,0.95]", "(0.95,1.05)",
          "[1.05,1.10)", "[1.10,1.20)", "[1.20,inf)"};
}

ZetaRecord zeta(double cut_other, double cut_ours) {
  if (cut_other < 0.0 || cut_ours < 0.0)
    throw std::invalid_argument("zeta: cuts must be nonnegative");
  ZetaRecord r;
  if (cut_ours == 0.0 && cut_other == 0.0) {
    r.zeta = 1.0;
    r.bin = 3;
    return r;
  }
  if (cut_ours == 0.0) {
    r.zeta = std::numeric_limits<double>::infinity();
    r.infinite = true;
    r.bin = kZetaBins - 1;
    return r;
  }
  if (cut_other == 0.0) {
    // Reference found a zero cut and we did not: off the left end of the
    // finite bins, so it lands in the outermost "reference better" bin.
    r.zeta = 0.0;
    r.bin = 0;
    return r;
  }
  r.zeta = cut_other / cut_ours;
  r.bin = zeta_bin(r.zeta);
  return r;
}

SchemeComparison compare_schemes(const std::vector<CellSummary>& cells) {
  SchemeComparison out;
  std::map<CellKey, std::array<const CellSummary*, 2>> by_cell;  // [0] ipm, [1] stable
  for (const CellSummary& c : cells) {
    int side = c.scheme == "ipm" ? 0 : c.scheme == "stable" ? 1 : -1;
    if (side < 0) continue;
    by_cell[{c.instance, c.k, milli_tol(c.tolerance)}][side] = &c;
  }
  for (const auto& [key, pair] : by_cell) {
    const CellSummary* ipm = pair[0];
    const CellSummary* stb = pair[1];
    if (!ipm || !stb || ipm->n_ok == 0 || stb->n_ok == 0) {
      ++out.n_skipped;
      out.warnings.push_back("cell " + cell_label(key) +
                             " skipped: missing a scheme or no successful runs");
      continue;
    }
    ZetaRecord r = zeta(stb->best_cut, ipm->best_cut);
    r.instance = cell_label(key);
    r.numerator = "stable";
    r.denominator = "ipm";
    ++out.histogram[r.bin];
    ++out.n_cells;
    out.records.push_back(std::move(r));
  }
  if (out.n_cells > 0)
    out.middle_fraction =
        static_cast<double>(out.histogram[3]) / static_cast<double>(out.n_cells);
  return out;
}

BaselineTable import_external_cuts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open baseline file");
  BaselineTable table;
  std::string raw;
  int lineno = 0;
  bool seen_data = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols = split_list(line);
    if (!seen_data && !cols.empty() && cols[0] == "instance") continue;  // header row
    seen_data = true;
    if (cols.size() != 5)
      throw ParseError(path, lineno, "expected 5 columns instance,k,tolerance,tool,cut");
    const std::string& instance = cols[0];
    std::int64_t k = parse_int(path, lineno, cols[1]);
    double tol = parse_num(path, lineno, cols[2]);
    const std::string& tool = cols[3];
    double cut = parse_num(path, lineno, cols[4]);
    if (k < 1) throw ParseError(path, lineno, "k must be >= 1");
    if (!(tol > 1.0)) throw ParseError(path, lineno, "tolerance must exceed 1");
    if (cut < 0.0) throw ParseError(path, lineno, "cut must be nonnegative");
    auto key = std::make_tuple(instance, static_cast<PartId>(k), milli_tol(tol), tool);
    auto [it, inserted] = table.cuts.emplace(key, cut);
    if (!inserted) {
      table.warnings.push_back(path + ":" + std::to_string(lineno) + ": duplicate row for " +
                               instance + " k=" + cols[1] + " tol=" + cols[2] + " tool=" + tool +
                               ", keeping the minimum cut");
      it->second = std::min(it->second, cut);
    }
  }
  return table;
}

BaselineComparison zeta_against_baselines(const std::vector<CellSummary>& cells,
                                          const BaselineTable& baseline) {
  std::map<CellKey, double> ours;
  for (const CellSummary& c : cells) {
    if (c.n_ok == 0) continue;
    CellKey key{c.instance, c.k, milli_tol(c.tolerance)};
    auto [it, inserted] = ours.emplace(key, c.best_cut);
    if (!inserted) it->second = std::min(it->second, c.best_cut);
  }
  BaselineComparison out;
  for (const auto& [key, cut] : baseline.cuts) {
    CellKey cell{std::get<0>(key), std::get<1>(key), std::get<2>(key)};
    auto it = ours.find(cell);
    if (it == ours.end()) {
      out.warnings.push_back("baseline row " + cell_label(cell) + " tool=" + std::get<3>(key) +
                             " has no matching result cell");
      continue;
    }
    ZetaRecord r = zeta(cut, it->second);
    r.instance = cell_label(cell);
    r.numerator = std::get<3>(key);
    r.denominator = "ours";
    ++out.histogram_by_tool[r.numerator][r.bin];
    out.records.push_back(std::move(r));
  }
  return out;
}

void write_zeta_csv(const std::string& path, const std::vector<ZetaRecord>& records) {
  std::ofstream out = open_out(path);
  out << "instance,numerator,denominator,zeta,bin\n";
  for (const ZetaRecord& r : records) {
    out << csv_escape(r.instance) << ',' << csv_escape(r.numerator) << ','
        << csv_escape(r.denominator) << ',' << (r.infinite ? "inf" : fmt(r.zeta)) << ',' << r.bin
        << '\n';
  }
}

void write_histogram_csv(
    const std::string& path,
    const std::map<std::string, std::array<std::int64_t, kZetaBins>>& rows) {
  std::ofstream out = open_out(path);
  out << "source";
  for (std::int32_t b = 0; b < kZetaBins; ++b) out << ",bin" << b;
  out << '\n';
  for (const auto& [source, histogram] : rows) {
    out << csv_escape(source);
    for (std::int64_t count : histogram) out << ',' << count;
    out << '\n';
  }
}

}  // namespace hyperpart
