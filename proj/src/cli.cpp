// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#include "prqc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "prqc/circuit.hpp"
#include "prqc/ensembles.hpp"
#include "prqc/errors.hpp"
#include "prqc/markov.hpp"
#include "prqc/mbqc.hpp"
#include "prqc/metrics.hpp"
#include "prqc/parallel.hpp"
#include "prqc/rng.hpp"
#include "prqc/version.hpp"

namespace prqc::cli {

namespace {

std::string g12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Topology topology_from_name(const std::string& name, int n) {
  if (name == "open") return open_chain(n);
  if (name == "closed") return closed_chain(n);
  throw std::invalid_argument("unknown topology '" + name + "'");
}

/// Writes results to --out; "-" means the stream handed to run().
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      os_ = &fallback;
      return;
    }
    file_.open(path);
    if (!file_) {
      throw std::invalid_argument("cannot open output file '" + path + "'");
    }
    os_ = &file_;
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

void write_manifest(std::ostream& os, const std::string& subcommand,
                    const std::vector<std::pair<std::string, std::string>>&
                        flags) {
  os << "# prqc " << subcommand << "\n";
  os << "# version " << version_string << "\n";
  os << "# invocation";
  for (const auto& [key, value] : flags) {
    os << " --" << key;
    if (!value.empty()) os << " " << value;
  }
  os << "\n";
}

GateEnsemble resolve_ensemble(const std::string& name, double c,
                              bool c_given) {
  if (name == "mixture" && !c_given) {
    throw std::invalid_argument("ensemble 'mixture' requires --c");
  }
  if (name != "mixture" && c_given) {
    throw std::invalid_argument("--c is only meaningful with --ensemble mixture");
  }
  return ensemble_from_name(name, c);
}

// ---------------------------------------------------------------- decay --

struct DecayConfig {
  int n = 1;
  std::string mode = "circuit";
  std::string ensemble = "haar";
  bool ensemble_given = false;
  double c = 0.0;
  bool c_given = false;
  std::string angle_source;  // cluster only; "" = mode default
  int iters = -1;
  int columns = -1;
  std::string topology = "open";
  int ensemble_size = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> metrics;
  int bins = 100;
  double y_max = 10.0;
  int fit_burn_in = -1;
  std::string outcomes = "sampled";
  std::string timing = "arrival";
  std::string out = "-";
};

struct MetricSelection {
  bool pt = false;
  bool q = false;
};

MetricSelection select_metrics(const std::vector<std::string>& requested) {
  MetricSelection sel;
  if (requested.empty()) {
    sel.q = true;
    return sel;
  }
  for (const std::string& m : requested) {
    if (m == "pt") {
      sel.pt = true;
    } else if (m == "q") {
      sel.q = true;
    } else if (m == "tv") {
      throw std::invalid_argument(
          "metric 'tv' belongs to the tv subcommand, not decay");
    } else {
      throw std::invalid_argument("unknown metric '" + m + "'");
    }
  }
  return sel;
}

int resolve_iterations(const DecayConfig& cfg) {
  const bool have_iters = cfg.iters >= 0;
  const bool have_columns = cfg.columns >= 1;
  if (cfg.mode == "circuit") {
    if (!have_iters || have_columns) {
      throw std::invalid_argument("circuit mode takes --iters, not --columns");
    }
    return cfg.iters;
  }
  if (have_iters == have_columns) {
    throw std::invalid_argument(
        "cluster modes take exactly one of --iters / --columns");
  }
  if (have_iters) return cfg.iters;
  if (cfg.mode == "cluster-standard") {
    if ((cfg.columns - 1) % 3 != 0) {
      throw std::invalid_argument(
          "cluster-standard column count must be 3 * iterations + 1");
    }
    return (cfg.columns - 1) / 3;
  }
  return cfg.columns - 1;
}

int cmd_decay(const DecayConfig& cfg, std::ostream& out_stream,
              std::ostream& err) {
  if (cfg.n < 1) throw std::invalid_argument("--n must be >= 1");
  if (cfg.ensemble_size < 1) {
    throw std::invalid_argument("--ensemble-size must be >= 1");
  }
  const bool circuit = cfg.mode == "circuit";
  const bool standard = cfg.mode == "cluster-standard";
  const bool enhanced = cfg.mode == "cluster-enhanced";
  if (!circuit && !standard && !enhanced) {
    throw std::invalid_argument("unknown mode '" + cfg.mode + "'");
  }
  if (!circuit && cfg.ensemble_given) {
    throw std::invalid_argument(
        "--ensemble applies to circuit mode; cluster angles come from "
        "--angle-source");
  }
  if (circuit && !cfg.angle_source.empty()) {
    throw std::invalid_argument("--angle-source applies to cluster modes");
  }
  const int iterations = resolve_iterations(cfg);
  const Topology topology = topology_from_name(cfg.topology, cfg.n);
  const MetricSelection metrics = select_metrics(cfg.metrics);
  const HistogramSpec hist_spec{0.0, cfg.y_max, cfg.bins};
  hist_spec.validate();
  const GateEnsemble ensemble =
      circuit ? resolve_ensemble(cfg.ensemble, cfg.c, cfg.c_given)
              : GateEnsemble::haar();
  AngleSource angle_source =
      standard ? AngleSource::haar_wire : AngleSource::uniform_site;
  if (!cfg.angle_source.empty()) {
    if (cfg.angle_source == "haar") {
      angle_source = AngleSource::haar_wire;
    } else if (cfg.angle_source == "uniform") {
      angle_source = AngleSource::uniform_site;
    } else {
      throw std::invalid_argument("unknown angle source '" +
                                  cfg.angle_source + "'");
    }
  }
  OutcomePolicy policy;
  if (cfg.outcomes == "sampled") {
    policy = OutcomePolicy::sampled;
  } else if (cfg.outcomes == "forced-zero") {
    policy = OutcomePolicy::forced_zero;
  } else {
    throw std::invalid_argument("unknown outcome policy '" + cfg.outcomes +
                                "'");
  }
  VerticalTiming timing;
  if (cfg.timing == "arrival") {
    timing = VerticalTiming::on_arrival;
  } else if (cfg.timing == "before-measure") {
    timing = VerticalTiming::before_measurement;
  } else {
    throw std::invalid_argument("unknown timing '" + cfg.timing + "'");
  }

  const int points = iterations + 1;
  const std::size_t realizations = static_cast<std::size_t>(cfg.ensemble_size);
  std::vector<std::vector<double>> q_slots(
      metrics.q ? realizations : 0, std::vector<double>(points, 0.0));
  std::vector<std::vector<std::uint32_t>> pt_slots(
      metrics.pt ? realizations : 0,
      std::vector<std::uint32_t>(static_cast<std::size_t>(points) *
                                     cfg.bins,
                                 0));

  err << "prqc decay: " << realizations << " realization(s), " << iterations
      << " iteration(s), n = " << cfg.n << ", mode = " << cfg.mode
      << ", workers = " << worker_count() << "\n";

  parallel_for(realizations, [&](std::size_t r) {
    auto observe = [&](int point, const StateVector& psi) {
      if (metrics.q) q_slots[r][point] = meyer_wallach_q(psi);
      if (metrics.pt) {
        const double dim = static_cast<double>(psi.dim());
        for (const cplx& a : psi.amps) {
          const int b = histogram_bin(hist_spec, dim * std::norm(a));
          ++pt_slots[r][static_cast<std::size_t>(point) * cfg.bins + b];
        }
      }
    };
    Rng rng = derive_rng(cfg.seed, r);
    if (circuit) {
      CircuitConfig config;
      config.n = cfg.n;
      config.iterations = iterations;
      config.ensemble = ensemble;
      config.topology = topology;
      run_pr_circuit(config, rng, observe);
    } else {
      const PatternMode mode =
          standard ? PatternMode::standard : PatternMode::enhanced;
      ClusterPattern pattern =
          build_pattern(cfg.n, iterations, mode, angle_source, rng, topology);
      pattern.timing = timing;
      execute_pattern(pattern, policy, rng,
                      [&](int columns_used, const StateVector& psi) {
                        if (standard) {
                          if ((columns_used - 1) % 3 != 0) return;
                          observe((columns_used - 1) / 3, psi);
                        } else {
                          observe(columns_used - 1, psi);
                        }
                      });
    }
  });

  OutputTarget target(cfg.out, out_stream);
  std::ostream& os = target.stream();
  std::vector<std::pair<std::string, std::string>> manifest{
      {"n", std::to_string(cfg.n)},
      {"mode", cfg.mode},
  };
  if (circuit) {
    manifest.emplace_back("ensemble", ensemble.name());
    if (ensemble.kind == GateEnsemble::Kind::mixture) {
      manifest.emplace_back("c", g12(ensemble.c));
    }
  } else {
    manifest.emplace_back(
        "angle-source",
        angle_source == AngleSource::haar_wire ? "haar" : "uniform");
    manifest.emplace_back("outcomes", cfg.outcomes);
    manifest.emplace_back("timing", cfg.timing);
  }
  manifest.emplace_back("iters", std::to_string(iterations));
  manifest.emplace_back("topology", cfg.topology);
  manifest.emplace_back("ensemble-size", std::to_string(cfg.ensemble_size));
  manifest.emplace_back("seed", std::to_string(cfg.seed));
  if (metrics.pt) manifest.emplace_back("metric", "pt");
  if (metrics.q) manifest.emplace_back("metric", "q");
  if (metrics.pt) {
    manifest.emplace_back("bins", std::to_string(cfg.bins));
    manifest.emplace_back("ymax", g12(cfg.y_max));
  }
  write_manifest(os, "decay", manifest);

  os << "iteration";
  if (!circuit) os << ",columns_used";
  if (metrics.pt) os << ",pt_distance";
  if (metrics.q) os << ",q_mean,q_se";
  os << "\n";

  std::vector<double> pt_series(metrics.pt ? points : 0, 0.0);
  std::vector<double> q_mean(metrics.q ? points : 0, 0.0);
  std::vector<double> q_se(metrics.q ? points : 0, 0.0);
  for (int p = 0; p < points; ++p) {
    if (metrics.pt) {
      ComponentHistogram hist{hist_spec, std::vector<double>(cfg.bins, 0.0),
                              0};
      std::uint64_t total = 0;
      for (std::size_t r = 0; r < realizations; ++r) {
        for (int b = 0; b < cfg.bins; ++b) {
          total += pt_slots[r][static_cast<std::size_t>(p) * cfg.bins + b];
        }
      }
      for (std::size_t r = 0; r < realizations; ++r) {
        for (int b = 0; b < cfg.bins; ++b) {
          hist.masses[b] +=
              static_cast<double>(
                  pt_slots[r][static_cast<std::size_t>(p) * cfg.bins + b]) /
              static_cast<double>(total);
        }
      }
      hist.samples = total;
      pt_series[p] = porter_thomas_distance(hist);
    }
    if (metrics.q) {
      double mean = 0.0;
      for (std::size_t r = 0; r < realizations; ++r) mean += q_slots[r][p];
      mean /= static_cast<double>(realizations);
      double var = 0.0;
      for (std::size_t r = 0; r < realizations; ++r) {
        const double d = q_slots[r][p] - mean;
        var += d * d;
      }
      q_mean[p] = mean;
      q_se[p] = realizations > 1
                    ? std::sqrt(var / (static_cast<double>(realizations) - 1.0) /
                                static_cast<double>(realizations))
                    : 0.0;
    }
    os << p;
    if (!circuit) os << "," << (standard ? 3 * p + 1 : p + 1);
    if (metrics.pt) os << "," << g12(pt_series[p]);
    if (metrics.q) os << "," << g12(q_mean[p]) << "," << g12(q_se[p]);
    os << "\n";
  }

  if (cfg.fit_burn_in >= 0) {
    auto emit_fit = [&](const std::string& name,
                        const std::vector<std::pair<double, double>>& series) {
      try {
        const DecayFit fit = fit_exponential_decay(series, cfg.fit_burn_in);
        os << "# fit metric=" << name << " burn_in=" << cfg.fit_burn_in
           << " rate=" << g12(fit.rate) << " intercept=" << g12(fit.intercept)
           << " residual=" << g12(fit.residual)
           << " points=" << fit.points_used << "\n";
      } catch (const std::invalid_argument& e) {
        os << "# fit metric=" << name << " error=\"" << e.what() << "\"\n";
      }
    };
    if (metrics.pt) {
      std::vector<std::pair<double, double>> series;
      for (int p = 0; p < points; ++p) series.emplace_back(p, pt_series[p]);
      emit_fit("pt", series);
    }
    if (metrics.q) {
      const double q_rand = q_random_expectation(cfg.n);
      std::vector<std::pair<double, double>> series;
      for (int p = 0; p < points; ++p) {
        series.emplace_back(p, std::abs(q_mean[p] - q_rand));
      }
      emit_fit("q", series);
    }
  }
  return exit_ok;
}

// ------------------------------------------------------------------ gap --

struct GapConfig {
  int n = 1;
  double c = 0.0;
  bool c_given = false;
  std::string c_grid;
  std::string topology = "open";
  std::string method = "dense";
  std::string out = "-";
};

std::vector<double> parse_grid(const std::string& text) {
  std::istringstream ss(text);
  std::string part;
  std::vector<double> parts;
  while (std::getline(ss, part, ':')) parts.push_back(std::stod(part));
  if (parts.size() != 3) {
    throw std::invalid_argument("--c-grid expects start:stop:step");
  }
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(step > 0.0) || stop < start) {
    throw std::invalid_argument("--c-grid needs stop >= start and step > 0");
  }
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double c = start + k * step;
    if (c > stop + step * 1e-9) break;
    grid.push_back(std::min(c, stop));
  }
  return grid;
}

int cmd_gap(const GapConfig& cfg, std::ostream& out_stream,
            std::ostream& err) {
  if (cfg.c_given == !cfg.c_grid.empty()) {
    throw std::invalid_argument("gap takes exactly one of --c / --c-grid");
  }
  std::vector<double> grid =
      cfg.c_given ? std::vector<double>{cfg.c} : parse_grid(cfg.c_grid);
  for (double c : grid) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw std::invalid_argument("mixture parameter must lie in [0, 1]");
    }
  }
  const Topology topology = topology_from_name(cfg.topology, cfg.n);
  SpectralOptions options;
  if (cfg.method == "dense") {
    options.method = GapMethod::dense;
  } else if (cfg.method == "iterative") {
    options.method = GapMethod::iterative;
  } else {
    throw std::invalid_argument("unknown method '" + cfg.method + "'");
  }
  err << "prqc gap: n = " << cfg.n << ", " << grid.size()
      << " grid point(s), method = " << cfg.method
      << ", workers = " << worker_count() << "\n";
  const GapScan scan = gap_scan(cfg.n, grid, topology, options);

  OutputTarget target(cfg.out, out_stream);
  std::ostream& os = target.stream();
  std::vector<std::pair<std::string, std::string>> manifest{
      {"n", std::to_string(cfg.n)}};
  if (cfg.c_given) {
    manifest.emplace_back("c", g12(grid[0]));
  } else {
    manifest.emplace_back("c-grid", cfg.c_grid);
  }
  manifest.emplace_back("topology", cfg.topology);
  manifest.emplace_back("method", cfg.method);
  write_manifest(os, "gap", manifest);
  os << "n,c,gap,rate\n";
  for (const GapScanRow& row : scan.rows) {
    os << row.n << "," << g12(row.c) << "," << g12(row.gap) << ","
       << g12(row.rate) << "\n";
  }
  os << "# summary argmax_c=" << g12(scan.argmax_c)
     << " max_gap=" << g12(scan.max_gap) << "\n";
  if (scan.gamma_ratio) {
    os << "# summary gamma_ratio=" << g12(*scan.gamma_ratio)
       << " at_c=" << g12(*scan.gamma_ratio_c) << "\n";
  }
  return exit_ok;
}

// ------------------------------------------------------------------- tv --

struct TvConfig {
  int n = 1;
  std::string ensemble;
  double c = 0.0;
  bool c_given = false;
  int iters = -1;
  std::string topology = "open";
  std::string space = "reduced";
  double cutoff_threshold = -1.0;
  int fit_burn_in = -1;
  std::string out = "-";
};

AveragedRotation resolve_rotation(const std::string& ensemble_name,
                                  double c, bool c_given, ChainSpace space) {
  if (!ensemble_name.empty()) {
    const GateEnsemble e = resolve_ensemble(ensemble_name, c, c_given);
    if (space == ChainSpace::full) return averaged_rotation(e);
    return reduced_rotation(e.stay_probability());
  }
  if (!c_given) {
    throw std::invalid_argument("need --ensemble or --c to fix the chain");
  }
  if (space == ChainSpace::full) {
    return averaged_rotation(GateEnsemble::mixture(c));
  }
  return reduced_rotation(c);
}

int cmd_tv(const TvConfig& cfg, std::ostream& out_stream, std::ostream& err) {
  if (cfg.iters < 0) throw std::invalid_argument("--iters must be >= 0");
  ChainSpace space;
  if (cfg.space == "reduced") {
    space = ChainSpace::reduced;
  } else if (cfg.space == "full") {
    space = ChainSpace::full;
  } else {
    throw std::invalid_argument("unknown space '" + cfg.space + "'");
  }
  const Topology topology = topology_from_name(cfg.topology, cfg.n);
  const AveragedRotation rotation =
      resolve_rotation(cfg.ensemble, cfg.c, cfg.c_given, space);
  err << "prqc tv: n = " << cfg.n << ", space = " << cfg.space << ", "
      << cfg.iters << " step(s)\n";
  const ChainDistribution d0 = initial_distribution(cfg.n, space, false);
  const ChainDistribution pi = stationary_distribution(cfg.n, space, false);
  const std::uint64_t dim =
      space == ChainSpace::full
          ? (std::uint64_t{1} << (2 * cfg.n))
          : [&] {
              std::uint64_t v = 1;
              for (int i = 0; i < cfg.n; ++i) v *= 3;
              return v;
            }();
  std::vector<ChainDistribution> trajectory;
  if (dim <= max_dense_chain_dim) {
    const TransitionMatrix m = build_chain(cfg.n, rotation, topology, false);
    trajectory = evolve_distribution(m, d0, cfg.iters);
  } else {
    const ChainOperator m(cfg.n, rotation, topology, false);
    trajectory = evolve_distribution(m, d0, cfg.iters);
  }

  OutputTarget target(cfg.out, out_stream);
  std::ostream& os = target.stream();
  std::vector<std::pair<std::string, std::string>> manifest{
      {"n", std::to_string(cfg.n)}};
  if (!cfg.ensemble.empty()) {
    manifest.emplace_back("ensemble", cfg.ensemble);
  }
  if (cfg.c_given) manifest.emplace_back("c", g12(cfg.c));
  manifest.emplace_back("iters", std::to_string(cfg.iters));
  manifest.emplace_back("topology", cfg.topology);
  manifest.emplace_back("space", cfg.space);
  write_manifest(os, "tv", manifest);
  os << "step,tv\n";
  std::vector<std::pair<double, double>> series;
  for (int s = 0; s <= cfg.iters; ++s) {
    const double tv = tv_distance(trajectory[s].p, pi.p);
    series.emplace_back(s, tv);
    os << s << "," << g12(tv) << "\n";
  }
  if (cfg.cutoff_threshold >= 0.0) {
    const CutoffReport cut = detect_cutoff(series, cfg.cutoff_threshold);
    os << "# cutoff tau=" << g12(cut.tau)
       << " plateau=" << g12(cut.plateau_value)
       << " threshold=" << g12(cut.threshold)
       << " plateau_points=" << cut.plateau_points;
    if (cut.post_plateau) {
      os << " post_rate=" << g12(cut.post_plateau->rate);
    }
    os << "\n";
  }
  if (cfg.fit_burn_in >= 0) {
    try {
      const DecayFit fit = fit_exponential_decay(series, cfg.fit_burn_in);
      os << "# fit burn_in=" << cfg.fit_burn_in << " rate=" << g12(fit.rate)
         << " intercept=" << g12(fit.intercept)
         << " residual=" << g12(fit.residual) << " points=" << fit.points_used
         << "\n";
    } catch (const std::invalid_argument& e) {
      os << "# fit error=\"" << e.what() << "\"\n";
    }
  }
  return exit_ok;
}

// --------------------------------------------------------- chain-export --

struct ExportConfig {
  int n = 1;
  std::string ensemble;
  double c = 0.0;
  bool c_given = false;
  std::string space = "reduced";
  std::string topology = "open";
  std::string identity = "kept";
  std::string out = "-";
};

int cmd_chain_export(const ExportConfig& cfg, std::ostream& out_stream,
                     std::ostream& err) {
  ChainSpace space;
  if (cfg.space == "reduced") {
    space = ChainSpace::reduced;
  } else if (cfg.space == "full") {
    space = ChainSpace::full;
  } else {
    throw std::invalid_argument("unknown space '" + cfg.space + "'");
  }
  bool remove_identity;
  if (cfg.identity == "kept") {
    remove_identity = false;
  } else if (cfg.identity == "removed") {
    remove_identity = true;
  } else {
    throw std::invalid_argument("--identity takes kept or removed");
  }
  const Topology topology = topology_from_name(cfg.topology, cfg.n);
  const AveragedRotation rotation =
      resolve_rotation(cfg.ensemble, cfg.c, cfg.c_given, space);
  const TransitionMatrix m =
      build_chain(cfg.n, rotation, topology, remove_identity);
  err << "prqc chain-export: " << m.dim << " states, " << m.nnz()
      << " nonzeros\n";
  OutputTarget target(cfg.out, out_stream);
  std::ostream& os = target.stream();
  std::vector<std::pair<std::string, std::string>> manifest{
      {"n", std::to_string(cfg.n)}};
  if (!cfg.ensemble.empty()) manifest.emplace_back("ensemble", cfg.ensemble);
  if (cfg.c_given) manifest.emplace_back("c", g12(cfg.c));
  manifest.emplace_back("space", cfg.space);
  manifest.emplace_back("topology", cfg.topology);
  manifest.emplace_back("identity", cfg.identity);
  write_manifest(os, "chain-export", manifest);
  os << export_chain(m);
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"pseudo-random quantum state generation and analysis"};
  app.require_subcommand(1);

  DecayConfig decay_cfg;
  auto* decay = app.add_subcommand(
      "decay", "metric-vs-depth curves for circuit or cluster runs");
  decay->add_option("--n", decay_cfg.n, "qubits (circuit) / rows (cluster)")
      ->required();
  decay->add_option("--mode", decay_cfg.mode,
                    "circuit | cluster-standard | cluster-enhanced");
  auto* ens_opt = decay->add_option("--ensemble", decay_cfg.ensemble,
                                    "haar | hz | zrot | mixture");
  auto* c_opt = decay->add_option("--c", decay_cfg.c,
                                  "mixture weight in [0, 1]");
  decay->add_option("--angle-source", decay_cfg.angle_source,
                    "haar | uniform (cluster modes)");
  decay->add_option("--iters", decay_cfg.iters, "iteration count");
  decay->add_option("--columns", decay_cfg.columns,
                    "cluster column count (alternative to --iters)");
  decay->add_option("--topology", decay_cfg.topology, "open | closed");
  decay->add_option("--ensemble-size", decay_cfg.ensemble_size,
                    "number of realizations");
  decay->add_option("--seed", decay_cfg.seed, "master seed");
  decay->add_option("--metric", decay_cfg.metrics,
                    "pt | q (repeatable; default q)");
  decay->add_option("--bins", decay_cfg.bins, "histogram bins for pt");
  decay->add_option("--ymax", decay_cfg.y_max, "histogram range for pt");
  decay->add_option("--fit-burn-in", decay_cfg.fit_burn_in,
                    "append decay fits, skipping this many points");
  decay->add_option("--outcomes", decay_cfg.outcomes,
                    "sampled | forced-zero (cluster modes)");
  decay->add_option("--timing", decay_cfg.timing,
                    "arrival | before-measure (cluster modes)");
  decay->add_option("--out", decay_cfg.out, "output file ('-' = stdout)");

  GapConfig gap_cfg;
  auto* gap = app.add_subcommand("gap",
                                 "spectral gaps of the Pauli-mass chain");
  gap->add_option("--n", gap_cfg.n, "qubits")->required();
  auto* gap_c = gap->add_option("--c", gap_cfg.c, "single mixture parameter");
  gap->add_option("--c-grid", gap_cfg.c_grid, "start:stop:step grid");
  gap->add_option("--topology", gap_cfg.topology, "open | closed");
  gap->add_option("--method", gap_cfg.method, "dense | iterative");
  gap->add_option("--out", gap_cfg.out, "output file ('-' = stdout)");

  TvConfig tv_cfg;
  auto* tv = app.add_subcommand(
      "tv", "total-variation trajectory toward stationarity");
  tv->add_option("--n", tv_cfg.n, "qubits")->required();
  tv->add_option("--ensemble", tv_cfg.ensemble, "haar | hz | zrot | mixture");
  auto* tv_c = tv->add_option("--c", tv_cfg.c, "mixture weight in [0, 1]");
  tv->add_option("--iters", tv_cfg.iters, "steps")->required();
  tv->add_option("--topology", tv_cfg.topology, "open | closed");
  tv->add_option("--space", tv_cfg.space, "reduced | full");
  tv->add_option("--cutoff-threshold", tv_cfg.cutoff_threshold,
                 "detect an initial plateau with this threshold");
  tv->add_option("--fit-burn-in", tv_cfg.fit_burn_in,
                 "append a decay fit, skipping this many points");
  tv->add_option("--out", tv_cfg.out, "output file ('-' = stdout)");

  ExportConfig export_cfg;
  auto* chain_export = app.add_subcommand(
      "chain-export", "explicit transition-matrix export");
  chain_export->add_option("--n", export_cfg.n, "qubits")->required();
  chain_export->add_option("--ensemble", export_cfg.ensemble,
                           "haar | hz | zrot | mixture");
  auto* export_c = chain_export->add_option("--c", export_cfg.c,
                                            "mixture weight in [0, 1]");
  chain_export->add_option("--space", export_cfg.space, "reduced | full");
  chain_export->add_option("--topology", export_cfg.topology,
                           "open | closed");
  chain_export->add_option("--identity", export_cfg.identity,
                           "kept | removed");
  chain_export->add_option("--out", export_cfg.out,
                           "output file ('-' = stdout)");

  int rc = exit_ok;
  decay->callback([&] {
    decay_cfg.ensemble_given = ens_opt->count() > 0;
    decay_cfg.c_given = c_opt->count() > 0;
    rc = cmd_decay(decay_cfg, out, err);
  });
  gap->callback([&] {
    gap_cfg.c_given = gap_c->count() > 0;
    rc = cmd_gap(gap_cfg, out, err);
  });
  tv->callback([&] {
    tv_cfg.c_given = tv_c->count() > 0;
    rc = cmd_tv(tv_cfg, out, err);
  });
  chain_export->callback([&] {
    export_cfg.c_given = export_c->count() > 0;
    rc = cmd_chain_export(export_cfg, out, err);
  });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("prqc");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return exit_capacity;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what()
        << " (last estimate " << e.last_estimate() << ")\n";
    return exit_convergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return rc;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace prqc::cli
