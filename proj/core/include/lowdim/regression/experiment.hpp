#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "lowdim/common/stats.hpp"
#include "lowdim/geometry/support.hpp"
#include "lowdim/regression/mlp.hpp"

namespace lowdim::regression {

std::vector<double> default_knn_grid();  // 1, 2, ..., 50
std::vector<double> default_nw_grid();   // 0.10, 0.11, ..., 1.00

// Full factorial sweep over d_list x n_list x replications for each method.
struct ExperimentConfig {
  std::string target = "sim61";
  std::size_t ambient_dim = 16;
  std::vector<std::size_t> d_list;
  std::vector<std::size_t> n_list;
  std::size_t replications = 1;
  std::vector<std::string> methods{"dnn"};  // dnn, knn, nw
  geometry::SupportKind support = geometry::SupportKind::kSphere;
  double sigma2 = 0.1;
  std::size_t validation_size = 10000;
  std::uint64_t master_seed = 0;
  bool discard_outliers = false;  // drop the two largest errors of a cell
  TrainConfig dnn;
  std::vector<double> knn_grid = default_knn_grid();
  std::vector<double> nw_grid = default_nw_grid();
  std::size_t cv_folds = 5;
  std::filesystem::path output = "results.csv";
};

// JSON object; unknown keys are rejected so typos do not pass silently.
ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct ReplicationResult {
  std::string method;
  std::size_t d = 0, n = 0, replication = 0;
  double error = 0.0;       // NaN on failure
  double hyperparameter = 0.0;  // selected k or bandwidth; 0 for dnn
  std::string failure;
};

struct CellResult {
  std::string method;
  std::size_t ambient_dim = 0, d = 0, n = 0;
  double mean_error = 0.0;
  double std_error = 0.0;
  std::size_t replications = 0;  // 0 marks a failed cell (errors NaN)
};

struct ExperimentResult {
  std::vector<CellResult> cells;                // method, d, n in config order
  std::vector<ReplicationResult> replications;  // method, d, n, replication
};

// Seeds: data = derive_seed(master, {d, n, rep}); the validation draw and
// every method get their own child of it, so a cell never depends on which
// other cells are run or on the thread count.
ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t threads = 1,
                                const std::function<void(std::size_t, std::size_t)>& progress = {});

// method,D,d,n,mean_error,std_error,replications
std::string results_csv(const ExperimentResult& result);
// method,D,d,n,replication,error,hyperparameter
std::string replications_csv(const ExperimentResult& result, std::size_t ambient_dim);
std::vector<CellResult> read_results_csv(const std::filesystem::path& path);

struct RateRow {
  std::string method;
  std::size_t ambient_dim = 0, d = 0;
  RateFit fit;
};

// Slope of log mean_error on log n for every (method, D, d), failed cells skipped.
std::vector<RateRow> rate_table(const std::vector<CellResult>& cells);

// Log-log chart of mean error against n, one line per d.
std::string rate_svg(const std::vector<CellResult>& cells, const std::string& method);

// Writes config.output, <stem>_replications.csv and <stem>_<method>.svg;
// returns every path written.
std::vector<std::filesystem::path> write_experiment_outputs(const ExperimentConfig& config,
                                                            const ExperimentResult& result);

}  // namespace lowdim::regression
