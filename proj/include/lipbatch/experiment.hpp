#ifndef LIPBATCH_EXPERIMENT_HPP
#define LIPBATCH_EXPERIMENT_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lipbatch/batch.hpp"

namespace lipbatch {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One replicated experiment: benchmark, strategy and budgets.
struct ExperimentConfig {
    std::string benchmark = "gsobol";
    int dimension = 2;
    std::string strategy = "lp";          // sequential | lp | lp_local | rand | pred
    std::string acquisition = "ei";       // ei | ucb
    double kappa = 2.0;
    int batch_size = 5;
    int iterations = 10;
    int replicates = 1;
    int init_size = 0;  // 0 = default 2*d + 1
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    std::string output = "results.csv";

    BatchStrategy to_strategy() const;
    Benchmark to_benchmark() const;
    int effective_init_size() const { return init_size > 0 ? init_size : 2 * dimension + 1; }
};

/// Flat `key = value` config text; `#` starts a comment.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

struct ExperimentSummary {
    int replicates = 0;
    int failed = 0;
    double mean_final_best = 0.0;  // minimized-objective convention
    double std_final_best = 0.0;
};

/// Runs `replicates` independent runs (seed + r), streams rows to
/// config.output as CSV, writes a summary next to it.
ExperimentSummary run_experiment(const ExperimentConfig& config);

/// Parsed rows file.
struct RecordTable {
    std::vector<std::string> header;
    std::vector<StepRecord> rows;
    int dim = 0;
};

void write_csv_header(std::ostream& out, int dim);
void write_csv_row(std::ostream& out, const StepRecord& row, int dim);
RecordTable read_record_csv(const std::string& path);

/// Per-source best-so-far vs iteration and wall clock, mean +- std across
/// replicates, emitted as CSV.
void summarize(const std::vector<std::string>& record_paths, std::ostream& out);

}  // namespace lipbatch

#endif  // LIPBATCH_EXPERIMENT_HPP
