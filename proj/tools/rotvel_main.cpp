// Command-line front end: synthetic sweeps, per-window solving of tracked
// event trails, trajectory chaining, evaluation against ground truth, and
// SVG charts of sweep results.
//
// Exit codes: 0 success, 1 usage error, 2 input error, 3 numerical failure.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "rotvel/io.hpp"
#include "rotvel/pipeline.hpp"
#include "rotvel/robust.hpp"
#include "rotvel/sim.hpp"
#include "rotvel/solver.hpp"
#include "rotvel/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(const rotvel::Error& error) {
  switch (error.code) {
    case rotvel::ErrorCode::ParseError:
    case rotvel::ErrorCode::EmptyInput:
    case rotvel::ErrorCode::MissingScale:
    case rotvel::ErrorCode::CoverageGap:
      return kExitInput;
    default:
      return kExitNumerical;
  }
}

int fail(const rotvel::Error& error) {
  std::cerr << "error [" << rotvel::to_string(error.code) << "]: " << error.message << "\n";
  return exit_code_for(error);
}

struct SimulateArgs {
  std::string factor;
  std::string orders = "s3c2,s5c4,s7c6";
  std::string out;
  std::vector<double> values;
  int trials = 1000;
  uint64_t seed = 0;
  int threads = 1;
};

int run_simulate(const SimulateArgs& args) {
  auto factor = rotvel::parse_factor(args.factor);
  if (!factor) return fail(factor.error());

  std::vector<rotvel::ExpansionOrder> orders;
  std::stringstream ss(args.orders);
  std::string token;
  while (std::getline(ss, token, ',')) {
    auto order = rotvel::parse_order(token);
    if (!order) return fail(order.error());
    orders.push_back(order.value());
  }
  if (orders.empty()) {
    return fail(rotvel::make_error(rotvel::ErrorCode::ParseError, "no orders given"));
  }

  rotvel::SceneConfig base;
  base.trials = args.trials;
  base.seed = args.seed;
  const std::vector<double> values =
      args.values.empty() ? rotvel::default_factor_values(factor.value()) : args.values;

  const auto sweep = rotvel::run_sweep(factor.value(), values, base, orders, args.threads);
  if (auto w = rotvel::write_sweep_csv(args.out, sweep); !w) return fail(w.error());
  if (auto w = rotvel::write_sweep_meta_toml(args.out + ".meta.toml", sweep, base); !w) {
    return fail(w.error());
  }
  return kExitOk;
}

struct SolveArgs {
  std::string tracks;
  std::string intrinsics;
  std::string order = "s7c6";
  std::string out;
  double window_length = 0.2;
  double window_stride = 0.1;
};

int run_solve(const SolveArgs& args) {
  auto order = rotvel::parse_order(args.order);
  if (!order) return fail(order.error());
  auto parsed = rotvel::parse_tracks(args.tracks);
  if (!parsed) return fail(parsed.error());
  auto cam = rotvel::read_intrinsics_toml(args.intrinsics);
  if (!cam) return fail(cam.error());

  const rotvel::TrackIngest& ingest = parsed.value();
  rotvel::WindowConfig window_cfg;
  window_cfg.length = args.window_length;
  window_cfg.stride = args.window_stride;
  const rotvel::WindowRun run =
      rotvel::estimate_windows(ingest.tracks, cam.value(), window_cfg, order.value());

  if (auto w = rotvel::write_omega_csv(args.out, run.estimates); !w) return fail(w.error());
  if (auto w = rotvel::write_solve_report_toml(args.out + ".report.toml", ingest, run); !w) {
    return fail(w.error());
  }
  std::cerr << "tracks: " << ingest.input_tracks << " in, " << ingest.tracks.size() << " used, "
            << ingest.dropped.size() << " dropped; windows: " << run.estimates.size()
            << " estimated, " << run.gaps.size() << " gaps\n";
  return kExitOk;
}

int run_trajectory(const std::string& omega_path, const std::string& scale_path,
                   const std::string& out_path) {
  auto estimates = rotvel::read_omega_csv(omega_path);
  if (!estimates) return fail(estimates.error());
  auto scales = rotvel::read_scale_csv(scale_path);
  if (!scales) return fail(scales.error());
  auto poses = rotvel::integrate_trajectory(estimates.value(), scales.value());
  if (!poses) return fail(poses.error());
  if (auto w = rotvel::write_poses_csv(out_path, poses.value()); !w) return fail(w.error());
  return kExitOk;
}

int run_evaluate(const std::string& omega_path, const std::string& gt_path,
                 const std::string& out_path) {
  auto estimates = rotvel::read_omega_csv(omega_path);
  if (!estimates) return fail(estimates.error());
  auto gt = rotvel::read_poses_csv(gt_path);
  if (!gt) return fail(gt.error());
  auto stats = rotvel::evaluate(estimates.value(), gt.value());
  if (!stats) return fail(stats.error());
  if (auto w = rotvel::write_stats_csv(out_path, stats.value()); !w) return fail(w.error());
  return kExitOk;
}

// Best-effort factor name from the sweep's metadata sidecar.
std::string sidecar_factor(const std::string& sweep_path) {
  std::ifstream in(sweep_path + ".meta.toml");
  std::string line;
  while (in.is_open() && std::getline(in, line)) {
    const auto pos = line.find("factor = \"");
    if (pos != std::string::npos) {
      const auto start = pos + 10;
      const auto end = line.find('"', start);
      if (end != std::string::npos) return line.substr(start, end - start);
    }
  }
  return "factor value";
}

int run_plot(const std::string& in_path, const std::string& out_path) {
  auto rows = rotvel::read_sweep_csv(in_path);
  if (!rows) return fail(rows.error());

  std::map<std::string, rotvel::SvgSeries> by_order;
  for (const auto& row : rows.value()) {
    auto& series = by_order[row.order];
    series.name = row.order;
    series.points.emplace_back(row.factor_value, row.mean_eps);
  }
  rotvel::SvgLineChart chart;
  chart.title = "mean turning-rate error vs " + sidecar_factor(in_path);
  chart.x_label = sidecar_factor(in_path);
  chart.y_label = "mean abs error (rad/s)";
  for (auto& [name, series] : by_order) {
    std::sort(series.points.begin(), series.points.end());
    chart.series.push_back(std::move(series));
  }
  if (auto w = rotvel::write_svg_chart(out_path, chart); !w) return fail(w.error());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotational-velocity estimation from event-camera feature trails"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run a Monte-Carlo factor sweep");
  simulate->add_option("--factor", sim_args.factor,
                       "Swept factor: tau|noise|interval|landmarks|focal|depth")
      ->required();
  simulate->add_option("--orders", sim_args.orders, "Comma-separated expansion orders");
  simulate->add_option("--out", sim_args.out, "Output sweep CSV path")->required();
  simulate->add_option("--values", sim_args.values, "Override factor values")->delimiter(',');
  simulate->add_option("--trials", sim_args.trials, "Trials per factor value");
  simulate->add_option("--seed", sim_args.seed, "RNG seed");
  simulate->add_option("--threads", sim_args.threads, "Worker threads (result-invariant)");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Estimate per-window turning rates from tracks");
  solve->add_option("--tracks", solve_args.tracks, "Input tracks CSV")->required();
  solve->add_option("--intrinsics", solve_args.intrinsics, "Camera intrinsics TOML")->required();
  solve->add_option("--order", solve_args.order, "Expansion order (default s7c6)");
  solve->add_option("--out", solve_args.out, "Output omega CSV path")->required();
  solve->add_option("--window-length", solve_args.window_length, "Window length, s");
  solve->add_option("--window-stride", solve_args.window_stride, "Window stride, s");

  std::string omega_path, scale_path, gt_path, in_path, out_path;
  auto* trajectory = app.add_subcommand("trajectory", "Chain window estimates into poses");
  trajectory->add_option("--omega", omega_path, "Input omega CSV")->required();
  trajectory->add_option("--scale", scale_path, "Per-window scale CSV")->required();
  trajectory->add_option("--out", out_path, "Output trajectory CSV")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Compare window estimates to ground truth");
  evaluate->add_option("--omega", omega_path, "Input omega CSV")->required();
  evaluate->add_option("--gt", gt_path, "Ground-truth poses CSV")->required();
  evaluate->add_option("--out", out_path, "Output stats CSV")->required();

  auto* plot = app.add_subcommand("plot", "Render a sweep CSV as an SVG line chart");
  plot->add_option("--in", in_path, "Input sweep CSV")->required();
  plot->add_option("--out", out_path, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the complaint and usage
    return kExitUsage;
  }

  if (simulate->parsed()) return run_simulate(sim_args);
  if (solve->parsed()) return run_solve(solve_args);
  if (trajectory->parsed()) return run_trajectory(omega_path, scale_path, out_path);
  if (evaluate->parsed()) return run_evaluate(omega_path, gt_path, out_path);
  if (plot->parsed()) return run_plot(in_path, out_path);
  return kExitUsage;
}
