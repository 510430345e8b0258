#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "occupancy/cli.hpp"
#include "occupancy/moments.hpp"
#include "occupancy/oracle.hpp"

namespace occupancy::cli {
namespace {

using ojson = nlohmann::ordered_json;

struct CommonOptions {
  std::string chain_path;
  std::size_t n = 0;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("chain", opts.chain_path, "chain file (JSON)")->required();
  cmd->add_option("--n", opts.n, "horizon n")->required();
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

ojson base_meta(std::string_view command) {
  ojson meta = ojson::object();
  meta["command"] = std::string(command);
  meta["version"] = std::string(kToolVersion);
  return meta;
}

void write_meta_comments(std::ostream& out, const ojson& meta) {
  for (const auto& [key, value] : meta.items()) {
    out << "# " << key << '='
        << (value.is_string() ? value.get<std::string>()
            : value.is_number_float() ? format_double(value.get<double>())
                                      : value.dump())
        << '\n';
  }
}

int cmd_dist(const CommonOptions& opts, const std::string& route_arg, bool all_layers,
             std::ostream& out, std::ostream& err) {
  const Route route = parse_route(route_arg);
  const ChainFile chain = load_chain_file(opts.chain_path);

  if (all_layers) {
    if (route != Route::Dp) {
      err << "--all-layers is only available for route dp\n";
      return kRouteMismatch;
    }
    const auto layers = occupancy_trajectory(chain.p, chain.u, opts.n);
    ojson meta = base_meta("dist");
    meta["route"] = "dp";
    meta["tolerance"] = route_tolerance(Route::Dp);
    if (opts.format == "json") {
      ojson j;
      j["route"] = "dp";
      j["n"] = opts.n;
      ojson arr = ojson::array();
      for (const auto& layer : layers) {
        ResultTable t{"dp", layer.horizon(), layer.labels(), layer.values(), ojson::object()};
        ojson lj = to_json(t);
        lj.erase("meta");
        lj.erase("route");
        arr.push_back(std::move(lj));
      }
      j["layers"] = std::move(arr);
      j["meta"] = meta;
      out << j.dump(2) << '\n';
      return kOk;
    }
    write_meta_comments(out, meta);
    out << "n,state";
    for (std::size_t k = 0; k <= opts.n; ++k) out << ",k=" << k;
    out << '\n';
    for (const auto& layer : layers) {
      for (std::size_t i = 0; i < layer.states(); ++i) {
        out << layer.horizon() << ',' << layer.labels()[i];
        for (std::size_t k = 0; k <= opts.n; ++k) {
          out << ',';
          if (k <= layer.horizon()) out << format_double(layer(i, k));
        }
        out << '\n';
      }
    }
    return kOk;
  }

  ResultTable table = compute_route(chain, route, opts.n);
  if (table.meta.value("cancellation_warning", false)) {
    err << "warning: |r| > 0.9 with n > 40; the closed-form alternating sum may lose "
           "precision\n";
  }
  if (opts.format == "json") {
    out << to_json(table).dump(2) << '\n';
  } else {
    write_csv(out, table);
  }
  return kOk;
}

int cmd_mean(const CommonOptions& opts, std::ostream& out) {
  const ChainFile chain = load_chain_file(opts.chain_path);
  const LiftedPair pair = lift(chain.p, chain.u);
  const Vector mean = expected_occupancy(chain.p, pair, opts.n);
  const OccupancyMoments moments =
      table_moments(occupancy_distribution(chain.p, chain.u, opts.n));
  const auto& labels = chain.p.labels();

  ojson meta = base_meta("mean");
  meta["n"] = opts.n;
  if (opts.format == "json") {
    ojson j;
    j["n"] = opts.n;
    ojson means = ojson::object();
    ojson vars = ojson::object();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      means[labels[i]] = mean(static_cast<Eigen::Index>(i));
      vars[labels[i]] = moments.variance(static_cast<Eigen::Index>(i));
    }
    j["mean"] = std::move(means);
    j["variance"] = std::move(vars);
    j["meta"] = meta;
    out << j.dump(2) << '\n';
    return kOk;
  }
  write_meta_comments(out, meta);
  out << "state,mean,variance\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << labels[i] << ',' << format_double(mean(static_cast<Eigen::Index>(i))) << ','
        << format_double(moments.variance(static_cast<Eigen::Index>(i))) << '\n';
  }
  return kOk;
}

struct PairDiscrepancy {
  std::string first;
  std::string second;
  double max_abs = 0.0;
  std::size_t state = 0;
  std::size_t k = 0;
};

int cmd_compare(const CommonOptions& opts, const std::vector<std::string>& route_args,
                double tol, std::ostream& out, std::ostream& err) {
  if (route_args.size() < 2) {
    err << "compare needs at least two routes\n";
    return kInvalidInput;
  }
  if (!(tol >= 0.0)) {
    err << "--tol must be non-negative\n";
    return kInvalidInput;
  }
  std::vector<Route> routes;
  for (const auto& r : route_args) routes.push_back(parse_route(r));
  const ChainFile chain = load_chain_file(opts.chain_path);

  std::vector<ResultTable> tables;
  for (Route r : routes) tables.push_back(compute_route(chain, r, opts.n));

  const auto rows = tables.front().values.rows();
  const auto cols = tables.front().values.cols();
  Matrix spread = Matrix::Zero(rows, cols);
  std::vector<PairDiscrepancy> pairs;
  for (std::size_t a = 0; a < tables.size(); ++a) {
    for (std::size_t b = a + 1; b < tables.size(); ++b) {
      const Matrix diff = (tables[a].values - tables[b].values).cwiseAbs();
      spread = spread.cwiseMax(diff);
      PairDiscrepancy d{tables[a].route, tables[b].route};
      Eigen::Index ri = 0;
      Eigen::Index ci = 0;
      d.max_abs = diff.maxCoeff(&ri, &ci);
      d.state = static_cast<std::size_t>(ri);
      d.k = static_cast<std::size_t>(ci);
      pairs.push_back(d);
    }
  }
  const bool pass = std::all_of(pairs.begin(), pairs.end(),
                                [&](const auto& d) { return d.max_abs <= tol; });
  const auto& labels = chain.p.labels();

  ojson meta = base_meta("compare");
  meta["n"] = opts.n;
  meta["tolerance"] = tol;
  meta["status"] = pass ? "pass" : "fail";
  if (opts.format == "json") {
    ojson j;
    j["routes"] = route_args;
    j["n"] = opts.n;
    ojson pj = ojson::array();
    for (const auto& d : pairs) {
      pj.push_back({{"routes", {d.first, d.second}},
                    {"max_abs_diff", d.max_abs},
                    {"state", labels[d.state]},
                    {"k", d.k}});
    }
    j["pairs"] = std::move(pj);
    ojson cells = ojson::object();
    for (Eigen::Index i = 0; i < rows; ++i) {
      std::vector<double> row;
      for (Eigen::Index k = 0; k < cols; ++k) row.push_back(spread(i, k));
      cells[labels[static_cast<std::size_t>(i)]] = row;
    }
    j["max_abs_diff"] = std::move(cells);
    j["meta"] = meta;
    out << j.dump(2) << '\n';
  } else {
    write_meta_comments(out, meta);
    out << "route_a,route_b,max_abs_diff,state,k\n";
    for (const auto& d : pairs) {
      out << d.first << ',' << d.second << ',' << format_double(d.max_abs) << ','
          << labels[d.state] << ',' << d.k << '\n';
    }
    out << '\n' << "state";
    for (Eigen::Index k = 0; k < cols; ++k) out << ",k=" << k;
    out << '\n';
    for (Eigen::Index i = 0; i < rows; ++i) {
      out << labels[static_cast<std::size_t>(i)];
      for (Eigen::Index k = 0; k < cols; ++k) out << ',' << format_double(spread(i, k));
      out << '\n';
    }
  }
  if (!pass) err << "routes disagree by more than " << format_double(tol) << '\n';
  return pass ? kOk : kToleranceBreach;
}

struct SimOptions {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::string start = "0";
  std::size_t workers = 1;
};

int cmd_simulate(const CommonOptions& opts, const SimOptions& sim, std::ostream& out) {
  const ChainFile chain = load_chain_file(opts.chain_path);
  SimConfig cfg;
  cfg.samples = sim.samples;
  cfg.seed = sim.seed;
  cfg.start_state = resolve_state(chain.p, sim.start);
  cfg.workers = sim.workers;

  const EmpiricalDistribution emp = simulate(chain.p, chain.u, opts.n, cfg);
  const OccupancyTable dp = occupancy_distribution(chain.p, chain.u, opts.n);
  const double total = static_cast<double>(emp.samples);

  std::vector<double> z(opts.n + 1);
  for (std::size_t k = 0; k <= opts.n; ++k) {
    const double ref = dp(cfg.start_state, k);
    const double sd = std::sqrt(ref * (1.0 - ref) / total);
    const double delta = emp.frequency(k) - ref;
    z[k] = sd > 0.0 ? delta / sd
           : delta == 0.0 ? 0.0
                          : std::copysign(std::numeric_limits<double>::infinity(), delta);
  }

  ojson meta = base_meta("simulate");
  meta["n"] = opts.n;
  meta["samples"] = emp.samples;
  meta["seed"] = cfg.seed;
  meta["start"] = chain.p.labels()[cfg.start_state];
  meta["generator"] = std::string(kGeneratorName);
  meta["shard_size"] = kSimShardSize;

  if (opts.format == "json") {
    ojson bins = ojson::array();
    for (std::size_t k = 0; k <= opts.n; ++k) {
      ojson b{{"k", k},
              {"count", emp.counts[k]},
              {"empirical", emp.frequency(k)},
              {"dp", dp(cfg.start_state, k)}};
      b["z"] = std::isfinite(z[k]) ? ojson(z[k]) : ojson(nullptr);
      bins.push_back(std::move(b));
    }
    ojson j;
    j["route"] = "mc";
    j["n"] = opts.n;
    j["bins"] = std::move(bins);
    j["meta"] = meta;
    out << j.dump(2) << '\n';
    return kOk;
  }
  write_meta_comments(out, meta);
  out << "k,count,empirical,dp,z\n";
  for (std::size_t k = 0; k <= opts.n; ++k) {
    out << k << ',' << emp.counts[k] << ',' << format_double(emp.frequency(k)) << ','
        << format_double(dp(cfg.start_state, k)) << ',' << format_double(z[k]) << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact occupancy-time distributions for finite Markov chains", "occupancy"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CommonOptions dist_opts;
  std::string route = "dp";
  bool all_layers = false;
  auto* dist = app.add_subcommand("dist", "distribution table g_i(n,k)");
  add_common(dist, dist_opts);
  dist->add_option("--route", route, "dp, gf, closed or enum");
  dist->add_flag("--all-layers", all_layers, "emit every horizon 0..n (dp only)");

  CommonOptions mean_opts;
  auto* mean = app.add_subcommand("mean", "expected occupancy e(n)");
  add_common(mean, mean_opts);

  CommonOptions cmp_opts;
  std::vector<std::string> routes;
  double tol = 1e-9;
  auto* compare = app.add_subcommand("compare", "cross-check routes");
  add_common(compare, cmp_opts);
  compare->add_option("--routes", routes, "comma-separated routes")
      ->required()
      ->delimiter(',');
  compare->add_option("--tol", tol, "maximum allowed absolute discrepancy");

  CommonOptions sim_opts;
  SimOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo check against dp");
  add_common(simulate_cmd, sim_opts);
  simulate_cmd->add_option("--samples", sim.samples, "number of trajectories")
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", sim.seed, "generator seed");
  simulate_cmd->add_option("--start", sim.start, "start state (label or index)");
  simulate_cmd->add_option("--workers", sim.workers, "worker threads")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (dist->parsed()) return cmd_dist(dist_opts, route, all_layers, out, err);
    if (mean->parsed()) return cmd_mean(mean_opts, out);
    if (compare->parsed()) return cmd_compare(cmp_opts, routes, tol, out, err);
    if (simulate_cmd->parsed()) return cmd_simulate(sim_opts, sim, out);
  } catch (const RouteMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kRouteMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace occupancy::cli
