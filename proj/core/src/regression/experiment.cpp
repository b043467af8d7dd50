#include "lowdim/regression/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <thread>

#include "lowdim/common/csv.hpp"
#include "lowdim/common/error.hpp"
#include "lowdim/common/random.hpp"
#include "lowdim/regression/baselines.hpp"
#include "lowdim/regression/dataset.hpp"
#include "lowdim/regression/metrics.hpp"
#include "lowdim/regression/targets.hpp"

namespace lowdim::regression {
namespace {

using json = nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t method_key(const std::string& m) {
  if (m == "dnn") return 0;
  if (m == "knn") return 1;
  if (m == "nw") return 2;
  throw DomainError("unknown method '" + m + "' (expected dnn, knn or nw)");
}

template <typename T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("experiment config: bad or missing '") + key + "': " + e.what());
  }
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ParseError("experiment config: " + where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.contains(k)) throw ParseError("experiment config: unknown key '" + k + "' in " + where);
}

// One fully evaluated replication: every method on one dataset.
struct Task {
  std::size_t d = 0, n = 0, rep = 0;
  std::vector<ReplicationResult> out;
};

void run_task(const ExperimentConfig& cfg, const approx::HolderTarget& target, Task& task) {
  const std::uint64_t data_seed = derive_seed(cfg.master_seed, {task.d, task.n, task.rep});
  geometry::SupportSpec spec;
  spec.kind = cfg.support;
  spec.ambient_dim = cfg.ambient_dim;
  spec.intrinsic_dim = task.d;
  for (const auto& m : cfg.methods) {
    ReplicationResult r{m, task.d, task.n, task.rep, kNaN, 0.0, {}};
    task.out.push_back(r);
  }
  try {
    const RegressionDataset data = generate_dataset(target, spec, task.n, cfg.sigma2, data_seed);
    const PointCloud val = geometry::generate_support(spec, cfg.validation_size, derive_seed(data_seed, {100}));
    for (auto& r : task.out) {
      const std::uint64_t seed = derive_seed(data_seed, {200 + method_key(r.method)});
      try {
        if (r.method == "dnn") {
          TrainConfig tc = cfg.dnn;
          tc.seed = seed;
          r.error = l2_error(train_erm(data, target, tc).predict_batch(val), target, val);
        } else if (r.method == "knn") {
          const auto cv = cross_validate(data, Smoother::kKnn, cfg.knn_grid, cfg.cv_folds, seed);
          r.hyperparameter = cv.best;
          r.error = l2_error(knn_regress(data.x, data.y, static_cast<std::size_t>(cv.best), val), target, val);
        } else {
          const auto cv = cross_validate(data, Smoother::kNw, cfg.nw_grid, cfg.cv_folds, seed);
          r.hyperparameter = cv.best;
          r.error = l2_error(nw_regress(data.x, data.y, cv.best, val).values, target, val);
        }
      } catch (const std::exception& e) {
        r.error = kNaN;
        r.failure = e.what();
      }
    }
  } catch (const std::exception& e) {
    for (auto& r : task.out) r.failure = e.what();
  }
}

std::string svg_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("experiment config is not valid JSON: ") + e.what());
  }
  check_keys(j,
             {"target", "D", "d_list", "n_list", "replications", "methods", "support", "sigma2", "validation_size",
              "master_seed", "discard_outliers", "dnn", "knn", "nw", "cv_folds", "output"},
             "the top level");
  ExperimentConfig c;
  if (j.contains("target")) c.target = get<std::string>(j, "target");
  c.ambient_dim = get<std::size_t>(j, "D");
  c.d_list = get<std::vector<std::size_t>>(j, "d_list");
  c.n_list = get<std::vector<std::size_t>>(j, "n_list");
  if (j.contains("replications")) c.replications = get<std::size_t>(j, "replications");
  if (j.contains("methods")) c.methods = get<std::vector<std::string>>(j, "methods");
  if (j.contains("support")) c.support = geometry::parse_support_kind(get<std::string>(j, "support"));
  if (j.contains("sigma2")) c.sigma2 = get<double>(j, "sigma2");
  if (j.contains("validation_size")) c.validation_size = get<std::size_t>(j, "validation_size");
  if (j.contains("master_seed")) c.master_seed = get<std::uint64_t>(j, "master_seed");
  if (j.contains("discard_outliers")) c.discard_outliers = get<bool>(j, "discard_outliers");
  if (j.contains("cv_folds")) c.cv_folds = get<std::size_t>(j, "cv_folds");
  if (j.contains("output")) c.output = get<std::string>(j, "output");
  if (j.contains("dnn")) {
    const json& d = j["dnn"];
    check_keys(d, {"hidden", "learning_rate", "beta1", "beta2", "epochs", "batch_size", "init_scale", "clip_bound"},
               "dnn");
    if (d.contains("hidden")) c.dnn.hidden = get<std::vector<std::size_t>>(d, "hidden");
    if (d.contains("learning_rate")) c.dnn.learning_rate = get<double>(d, "learning_rate");
    if (d.contains("beta1")) c.dnn.beta1 = get<double>(d, "beta1");
    if (d.contains("beta2")) c.dnn.beta2 = get<double>(d, "beta2");
    if (d.contains("epochs")) c.dnn.epochs = get<std::size_t>(d, "epochs");
    if (d.contains("batch_size")) c.dnn.batch_size = get<std::size_t>(d, "batch_size");
    if (d.contains("init_scale")) c.dnn.init_scale = get<double>(d, "init_scale");
    if (d.contains("clip_bound")) c.dnn.clip_bound = get<double>(d, "clip_bound");
  }
  if (j.contains("knn")) {
    check_keys(j["knn"], {"grid"}, "knn");
    c.knn_grid = get<std::vector<double>>(j["knn"], "grid");
  }
  if (j.contains("nw")) {
    check_keys(j["nw"], {"grid"}, "nw");
    c.nw_grid = get<std::vector<double>>(j["nw"], "grid");
  }
  if (c.knn_grid.empty()) c.knn_grid = default_knn_grid();
  if (c.nw_grid.empty()) c.nw_grid = default_nw_grid();

  if (c.d_list.empty() || c.n_list.empty()) throw ParseError("experiment config: d_list and n_list must be nonempty");
  if (c.replications == 0) throw ParseError("experiment config: replications must be positive");
  if (c.methods.empty()) throw ParseError("experiment config: no methods");
  for (const auto& m : c.methods) method_key(m);
  if (c.validation_size == 0) throw ParseError("experiment config: validation_size must be positive");
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open experiment config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str());
}

std::vector<double> default_knn_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 50; ++k) g.push_back(k);
  return g;
}

std::vector<double> default_nw_grid() {
  std::vector<double> g;
  for (int h = 10; h <= 100; ++h) g.push_back(h / 100.0);
  return g;
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t threads,
                                const std::function<void(std::size_t, std::size_t)>& progress) {
  const approx::HolderTarget target = builtin_target(config.target, config.ambient_dim);
  std::vector<Task> tasks;
  for (std::size_t d : config.d_list)
    for (std::size_t n : config.n_list)
      for (std::size_t rep = 0; rep < config.replications; ++rep) tasks.push_back(Task{d, n, rep, {}});

  std::atomic<std::size_t> next{0}, done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      run_task(config, target, tasks[i]);
      const std::size_t finished = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, tasks.size());
      }
    }
  };
  const std::size_t nthreads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, tasks.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
  }

  ExperimentResult result;
  for (std::size_t mi = 0; mi < config.methods.size(); ++mi)
    for (std::size_t d : config.d_list)
      for (std::size_t n : config.n_list) {
        std::vector<double> errors;
        bool failed = false;
        for (const auto& t : tasks) {
          if (t.d != d || t.n != n) continue;
          const auto& r = t.out[mi];
          result.replications.push_back(r);
          if (std::isnan(r.error)) failed = true;
          errors.push_back(r.error);
        }
        CellResult cell{config.methods[mi], config.ambient_dim, d, n, kNaN, kNaN, 0};
        if (!failed) {
          if (config.discard_outliers && errors.size() > 2) {
            std::sort(errors.begin(), errors.end());
            errors.resize(errors.size() - 2);
          }
          cell.mean_error = mean(errors);
          cell.std_error = sample_stddev(errors);
          cell.replications = errors.size();
        }
        result.cells.push_back(cell);
      }
  return result;
}

std::string results_csv(const ExperimentResult& result) {
  std::string out = "method,D,d,n,mean_error,std_error,replications\n";
  for (const auto& c : result.cells)
    out += c.method + "," + std::to_string(c.ambient_dim) + "," + std::to_string(c.d) + "," + std::to_string(c.n) +
           "," + format_double(c.mean_error) + "," + format_double(c.std_error) + "," +
           std::to_string(c.replications) + "\n";
  return out;
}

std::string replications_csv(const ExperimentResult& result, std::size_t ambient_dim) {
  std::string out = "method,D,d,n,replication,error,hyperparameter\n";
  for (const auto& r : result.replications)
    out += r.method + "," + std::to_string(ambient_dim) + "," + std::to_string(r.d) + "," + std::to_string(r.n) + "," +
           std::to_string(r.replication) + "," + format_double(r.error) + "," + format_double(r.hyperparameter) + "\n";
  return out;
}

std::vector<CellResult> read_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open results file " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "method,D,d,n,mean_error,std_error,replications")
    throw ParseError(path.string() + ": expected the header method,D,d,n,mean_error,std_error,replications");
  std::vector<CellResult> cells;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string tok; std::getline(ss, tok, ',');) f.push_back(tok);
    if (f.size() != 7) throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected 7 fields");
    try {
      cells.push_back(CellResult{f[0], std::stoul(f[1]), std::stoul(f[2]), std::stoul(f[3]), std::stod(f[4]),
                                 std::stod(f[5]), std::stoul(f[6])});
    } catch (const std::exception&) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  return cells;
}

std::vector<RateRow> rate_table(const std::vector<CellResult>& cells) {
  std::map<std::tuple<std::string, std::size_t, std::size_t>, std::vector<std::pair<double, double>>> groups;
  std::vector<std::tuple<std::string, std::size_t, std::size_t>> order;
  for (const auto& c : cells) {
    const auto key = std::make_tuple(c.method, c.ambient_dim, c.d);
    if (!groups.contains(key)) order.push_back(key);
    if (c.replications > 0) groups[key].emplace_back(static_cast<double>(c.n), c.mean_error);
    else groups[key];
  }
  std::vector<RateRow> rows;
  for (const auto& key : order) {
    const auto& pts = groups[key];
    RateRow row{std::get<0>(key), std::get<1>(key), std::get<2>(key), {}};
    try {
      row.fit = fit_rate(pts);
    } catch (const DomainError&) {
      row.fit.slope = row.fit.intercept = row.fit.r_squared = kNaN;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string rate_svg(const std::vector<CellResult>& cells, const std::string& method) {
  std::map<std::size_t, std::vector<std::pair<double, double>>> lines;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& c : cells) {
    if (c.method != method || c.replications == 0 || !(c.mean_error > 0.0) || c.n == 0) continue;
    const double x = std::log10(static_cast<double>(c.n)), y = std::log10(c.mean_error);
    lines[c.d].emplace_back(x, y);
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  const double W = 640, H = 420, left = 70, right = 130, top = 30, bottom = 50;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << left << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << svg_escape(method)
    << ": log10 mean error against log10 n</text>\n";
  if (lines.empty()) {
    s << "<text x=\"" << left << "\" y=\"" << H / 2 << "\" font-family=\"sans-serif\">no data</text>\n</svg>\n";
    return s.str();
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
  const double pw = W - left - right, ph = H - top - bottom;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };
  s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  s.precision(4);
  for (int i = 0; i <= 4; ++i) {
    const double x = xmin + (xmax - xmin) * i / 4.0, y = ymin + (ymax - ymin) * i / 4.0;
    s << "<text x=\"" << px(x) << "\" y=\"" << H - bottom + 18 << "\" font-family=\"sans-serif\" font-size=\"11\" "
      << "text-anchor=\"middle\">" << x << "</text>\n";
    s << "<text x=\"" << left - 6 << "\" y=\"" << py(y) + 4 << "\" font-family=\"sans-serif\" font-size=\"11\" "
      << "text-anchor=\"end\">" << y << "</text>\n";
  }
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::size_t li = 0;
  for (const auto& [d, pts] : lines) {
    const char* col = colours[li % 6];
    s << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts) s << px(x) << "," << py(y) << " ";
    s << "\"/>\n";
    for (const auto& [x, y] : pts) s << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << col << "\"/>\n";
    s << "<text x=\"" << W - right + 12 << "\" y=\"" << top + 16 + 18 * li << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\" fill=\"" << col << "\">d = " << d << "</text>\n";
    ++li;
  }
  s << "</svg>\n";
  return s.str();
}

std::vector<std::filesystem::path> write_experiment_outputs(const ExperimentConfig& config,
                                                            const ExperimentResult& result) {
  auto write = [](const std::filesystem::path& p, const std::string& text) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << text;
  };
  std::vector<std::filesystem::path> written;
  written.push_back(config.output);
  write(config.output, results_csv(result));
  const auto stem = config.output.parent_path() / config.output.stem();
  written.push_back(stem.string() + "_replications.csv");
  write(written.back(), replications_csv(result, config.ambient_dim));
  for (const auto& m : config.methods) {
    written.push_back(stem.string() + "_" + m + ".svg");
    write(written.back(), rate_svg(result.cells, m));
  }
  return written;
}

}  // namespace lowdim::regression
