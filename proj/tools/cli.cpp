#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "lowdim/approx/builder.hpp"
#include "lowdim/common/csv.hpp"
#include "lowdim/common/error.hpp"
#include "lowdim/dimest/estimators.hpp"
#include "lowdim/geometry/dimension.hpp"
#include "lowdim/geometry/support.hpp"
#include "lowdim/net/serialize.hpp"
#include "lowdim/regression/experiment.hpp"
#include "lowdim/regression/targets.hpp"

namespace lowdim::cli {
namespace {

struct Globals {
  std::size_t threads = 1;
  bool quiet = false;
};

PointCloud read_points(const std::string& path) {
  if (path.ends_with(".idx") || path.ends_with("-ubyte")) return dimest::load_idx(path);
  return read_point_cloud_csv(std::filesystem::path(path));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

approx::HolderTarget make_target(const std::string& name, std::size_t dim, std::optional<double> beta,
                                 std::optional<double> bound) {
  approx::HolderTarget t = regression::builtin_target(name, dim);
  if (beta) t.beta = *beta;
  if (bound) {
    if (!(*bound > 0.0)) throw DomainError("--M must be positive");
    t.bound = *bound;
  }
  return t;
}

std::string report_header() { return "epsilon,W,L,B,empirical_sup_error,cubes\n"; }

std::string report_row(const approx::ApproximatorSpec& s) {
  return format_double(s.epsilon) + "," + std::to_string(s.built.param_count) + "," + std::to_string(s.built.depth) +
         "," + format_double(s.built.max_weight) + "," + format_double(s.empirical_sup_error) + "," +
         std::to_string(s.cube_count) + "\n";
}

// Innermost subcommand seen on the command line, for help text.
CLI::App* deepest(CLI::App& app) {
  CLI::App* cur = &app;
  while (!cur->get_subcommands().empty()) cur = cur->get_subcommands().front();
  return cur;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constructive ReLU approximation on low-dimensional supports", "lowdim"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", g.quiet, "Suppress progress output");
  std::function<void()> action;

  // approx build
  auto* approx_cmd = app.add_subcommand("approx", "Build approximating networks")->require_subcommand(1);
  struct {
    std::string target = "sincos", support, out, report;
    std::optional<double> beta, bound, d_bound;
    double epsilon = 0.1;
  } ab;
  auto* build = approx_cmd->add_subcommand("build", "Build one approximator and verify it on the support");
  build->add_option("--target", ab.target, "sincos, sine, bump, product, zero, sim61, sim62")->capture_default_str();
  build->add_option("--beta", ab.beta, "Override the smoothness of the target");
  build->add_option("--M", ab.bound, "Override the Holder-norm bound of the target");
  build->add_option("--epsilon", ab.epsilon, "Target sup accuracy in (0, 1)")->capture_default_str();
  build->add_option("--support", ab.support, "Point cloud CSV sampling the support")->required();
  build->add_option("--d-bound", ab.d_bound, "Intrinsic dimension bound d (recorded; default D)");
  build->add_option("--out", ab.out, "Network JSON output")->required();
  build->add_option("--report", ab.report, "CSV report (epsilon,W,L,B,empirical_sup_error,cubes)");
  build->callback([&] {
    action = [&] {
      const PointCloud pts = read_points(ab.support);
      const auto target = make_target(ab.target, pts.dim(), ab.beta, ab.bound);
      const auto a = approx::build_approximator(target, pts, ab.d_bound.value_or(static_cast<double>(pts.dim())),
                                                ab.epsilon);
      net::save_network(ab.out, a.network);
      if (!ab.report.empty()) write_text(ab.report, report_header() + report_row(a.spec));
      out << "built " << ab.out << ": W=" << a.spec.built.param_count << " L=" << a.spec.built.depth
          << " B=" << format_double(a.spec.built.max_weight) << " cubes=" << a.spec.cube_count
          << " sup_error=" << format_double(a.spec.empirical_sup_error) << "\n";
    };
  });

  // approx rate-sweep
  struct {
    std::string target = "sincos", support, kind = "sphere", report;
    std::vector<double> epsilons{0.4, 0.2, 0.1, 0.05};
    std::size_t n = 10000, d = 1, D = 2;
    std::uint64_t seed = 1;
  } rs;
  auto* sweep = approx_cmd->add_subcommand("rate-sweep", "Build across epsilons and fit log W against log(1/epsilon)");
  sweep->add_option("--target", rs.target, "Target name")->capture_default_str();
  sweep->add_option("--epsilons", rs.epsilons, "Comma-separated accuracies")->delimiter(',')->capture_default_str();
  sweep->add_option("--support", rs.support, "Point cloud CSV (otherwise generated)");
  sweep->add_option("--kind", rs.kind, "Generated support kind")->capture_default_str();
  sweep->add_option("--n", rs.n, "Generated support size")->capture_default_str();
  sweep->add_option("--d", rs.d, "Intrinsic dimension of the generated support")->capture_default_str();
  sweep->add_option("--D", rs.D, "Ambient dimension of the generated support")->capture_default_str();
  sweep->add_option("--seed", rs.seed, "Seed of the generated support")->capture_default_str();
  sweep->add_option("--report", rs.report, "CSV report");
  sweep->callback([&] {
    action = [&] {
      PointCloud pts;
      geometry::SupportSpec spec;
      if (!rs.support.empty()) {
        pts = read_points(rs.support);
      } else {
        spec.kind = geometry::parse_support_kind(rs.kind);
        spec.intrinsic_dim = rs.d;
        spec.ambient_dim = rs.D;
        pts = geometry::generate_support(spec, rs.n, rs.seed);
      }
      const auto target = regression::builtin_target(rs.target, pts.dim());
      std::string report = report_header();
      std::vector<double> lx, ly;
      std::optional<std::size_t> depth;
      bool depth_constant = true;
      for (double eps : rs.epsilons) {
        const auto a = approx::build_approximator(target, pts, static_cast<double>(rs.d), eps);
        report += report_row(a.spec);
        lx.push_back(std::log(1.0 / eps));
        ly.push_back(std::log(static_cast<double>(a.spec.built.param_count)));
        if (depth && *depth != a.spec.built.depth) depth_constant = false;
        depth = a.spec.built.depth;
        if (!g.quiet)
          err << "epsilon=" << eps << " W=" << a.spec.built.param_count << " L=" << a.spec.built.depth
              << " sup_error=" << a.spec.empirical_sup_error << "\n";
      }
      if (!rs.report.empty()) write_text(rs.report, report);
      out << "slope log W vs log(1/epsilon) = ";
      if (lx.size() >= 2)
        out << format_double(ols_fit(lx, ly).slope);
      else
        out << "n/a";
      out << ", depth " << (depth_constant ? "constant" : "varies") << "\n";
    };
  });

  // dim estimate
  struct {
    std::string method = "ml", input;
    std::size_t k = 10;
    double threshold = 0.95;
    std::vector<double> scales;
  } de;
  auto* dim_cmd = app.add_subcommand("dim", "Intrinsic dimension estimation")->require_subcommand(1);
  auto* estimate = dim_cmd->add_subcommand("estimate", "Estimate the dimension of a point cloud");
  estimate->add_option("--method", de.method, "lpca, ml or boxcount")
      ->check(CLI::IsMember({"lpca", "ml", "boxcount"}))
      ->capture_default_str();
  estimate->add_option("--k", de.k, "Neighbours (lpca, ml)")->capture_default_str();
  estimate->add_option("--threshold", de.threshold, "Explained variance threshold (lpca)")->capture_default_str();
  estimate->add_option("--scales", de.scales, "Comma-separated cube sides (boxcount)")->delimiter(',');
  estimate->add_option("--input", de.input, "Point cloud CSV or IDX file")->required();
  estimate->callback([&] {
    action = [&] {
      const PointCloud pts = read_points(de.input);
      if (de.method == "lpca") {
        out << "lpca dimension: " << dimest::lpca_dim(pts, {de.k, de.threshold}) << "\n";
      } else if (de.method == "ml") {
        const auto e = dimest::ml_dim(pts, de.k);
        out << "ml dimension: " << format_double(e.value) << "\n";
        if (e.excluded_pairs > 0 || e.skipped_points > 0)
          err << "warning: " << e.excluded_pairs << " zero-distance neighbour pairs excluded, " << e.skipped_points
              << " points skipped\n";
      } else {
        if (de.scales.empty())
          for (int k = 1; k <= 6; ++k) de.scales.push_back(std::pow(3.0, -k));
        const auto e = geometry::minkowski_dim(pts, de.scales);
        out << "boxcount dimension: " << format_double(e.value) << "\n";
        if (!g.quiet)
          for (const auto& [gamma, count] : e.scales) err << "  gamma=" << gamma << " cells=" << count << "\n";
        if (e.low_confidence) err << "warning: every scale saw a single cell; estimate is low confidence\n";
      }
    };
  });

  // support generate
  struct {
    std::string kind = "sphere", out;
    std::size_t n = 1000, d = 1, D = 2, level = 7;
    std::uint64_t seed = 0;
  } sg;
  auto* support_cmd = app.add_subcommand("support", "Support generators")->require_subcommand(1);
  auto* generate = support_cmd->add_subcommand("generate", "Sample a low-dimensional support");
  generate->add_option("--kind", sg.kind, "sphere, koch or lp_ball_union")->capture_default_str();
  generate->add_option("--n", sg.n, "Number of points")->capture_default_str();
  generate->add_option("--d", sg.d, "Intrinsic dimension")->capture_default_str();
  generate->add_option("--D", sg.D, "Ambient dimension")->capture_default_str();
  generate->add_option("--level", sg.level, "Koch recursion level")->capture_default_str();
  generate->add_option("--seed", sg.seed, "Seed")->capture_default_str();
  generate->add_option("--out", sg.out, "Output CSV")->required();
  generate->callback([&] {
    action = [&] {
      geometry::SupportSpec spec;
      spec.kind = geometry::parse_support_kind(sg.kind);
      spec.intrinsic_dim = sg.d;
      spec.ambient_dim = sg.kind == "koch" ? 2 : sg.D;
      spec.koch_level = sg.level;
      const PointCloud pts = geometry::generate_support(spec, sg.n, sg.seed);
      write_point_cloud_csv(std::filesystem::path(sg.out), pts);
      out << "wrote " << pts.size() << " points of dimension " << pts.dim() << " to " << sg.out << "\n";
    };
  });

  // exp run / exp fit-rate
  struct {
    std::string config, output, input, out;
  } ex;
  auto* exp_cmd = app.add_subcommand("exp", "Regression experiments")->require_subcommand(1);
  auto* exp_run = exp_cmd->add_subcommand("run", "Run an experiment config (JSON)");
  exp_run->add_option("--config", ex.config, "Experiment config file")->required();
  exp_run->add_option("--output", ex.output, "Override the results CSV path");
  exp_run->callback([&] {
    action = [&] {
      auto cfg = regression::load_experiment_config(ex.config);
      if (!ex.output.empty()) cfg.output = ex.output;
      std::function<void(std::size_t, std::size_t)> progress;
      if (!g.quiet)
        progress = [&](std::size_t done, std::size_t total) { err << "\r" << done << "/" << total << std::flush; };
      const auto result = regression::run_experiment(cfg, g.threads, progress);
      if (!g.quiet) err << "\n";
      const auto files = regression::write_experiment_outputs(cfg, result);
      std::size_t failed = 0;
      for (const auto& c : result.cells) failed += c.replications == 0;
      out << "wrote " << files.front().string() << " (" << result.cells.size() << " cells, " << failed
          << " failed)\n";
    };
  });
  auto* fit = exp_cmd->add_subcommand("fit-rate", "Fit convergence rates from a results CSV");
  fit->add_option("--input", ex.input, "Results CSV")->required();
  fit->add_option("--out", ex.out, "Write the rate table as CSV");
  fit->callback([&] {
    action = [&] {
      const auto rows = regression::rate_table(regression::read_results_csv(ex.input));
      std::string csv = "method,D,d,rate,r_squared\n";
      out << std::left << std::setw(8) << "method" << std::setw(6) << "D" << std::setw(6) << "d"
          << "Convergence Rate\n";
      for (const auto& r : rows) {
        out << std::setw(8) << r.method << std::setw(6) << r.ambient_dim << std::setw(6) << r.d << std::fixed
            << std::setprecision(2) << r.fit.slope << std::defaultfloat << "\n";
        csv += r.method + "," + std::to_string(r.ambient_dim) + "," + std::to_string(r.d) + "," +
               format_double(r.fit.slope) + "," + format_double(r.fit.r_squared) + "\n";
      }
      if (!ex.out.empty()) write_text(ex.out, csv);
    };
  });

  // net eval / net inspect
  struct {
    std::string net, input, out;
  } ne;
  auto* net_cmd = app.add_subcommand("net", "Network files")->require_subcommand(1);
  auto* eval = net_cmd->add_subcommand("eval", "Evaluate a network on a point cloud");
  eval->add_option("--net", ne.net, "Network JSON")->required();
  eval->add_option("--input", ne.input, "Point cloud CSV")->required();
  eval->add_option("--out", ne.out, "Output CSV (default stdout)");
  eval->callback([&] {
    action = [&] {
      const auto network = net::load_network(ne.net);
      const PointCloud pts = read_point_cloud_csv(std::filesystem::path(ne.input));
      if (pts.dim() != network.input_dim())
        throw DimensionMismatch(0, "input has " + std::to_string(pts.dim()) + " columns, network expects " +
                                       std::to_string(network.input_dim()));
      const PointCloud res(network.output_dim(), network.evaluate_batch(pts));
      if (ne.out.empty()) {
        write_point_cloud_csv(out, res);
      } else {
        write_point_cloud_csv(std::filesystem::path(ne.out), res);
        out << "wrote " << res.size() << " rows to " << ne.out << "\n";
      }
    };
  });
  auto* inspect = net_cmd->add_subcommand("inspect", "Print shape and (W, L, B) of a network");
  inspect->add_option("--net", ne.net, "Network JSON")->required();
  inspect->callback([&] {
    action = [&] {
      const auto network = net::load_network(ne.net);
      const auto c = net::complexity(network);
      out << "input " << network.input_dim() << ", output " << network.output_dim() << ", W=" << c.param_count
          << " L=" << c.depth << " B=" << format_double(c.max_weight) << "\n";
      for (std::size_t l = 0; l < network.depth(); ++l)
        out << "  layer " << l << ": " << network.layers()[l].weight.rows() << " x "
            << network.layers()[l].weight.cols() << "\n";
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << deepest(app)->help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << deepest(app)->help();
    return 2;
  }
  try {
    if (action) action();
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lowdim::cli
