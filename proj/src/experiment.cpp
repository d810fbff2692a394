#include "lipbatch/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace lipbatch {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw SchemaError("bad numeric field: " + s);
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

}  // namespace

BatchStrategy ExperimentConfig::to_strategy() const {
    BatchStrategy s;
    if (strategy == "sequential") s.kind = StrategyKind::Sequential;
    else if (strategy == "lp") s.kind = StrategyKind::LP;
    else if (strategy == "lp_local") s.kind = StrategyKind::LPLocal;
    else if (strategy == "rand") s.kind = StrategyKind::Rand;
    else if (strategy == "pred") s.kind = StrategyKind::Pred;
    else throw ConfigError("unknown strategy: " + strategy);

    if (acquisition == "ei") s.acquisition = AcquisitionSpec::make_ei();
    else if (acquisition == "ucb") s.acquisition = AcquisitionSpec::make_ucb(kappa);
    else throw ConfigError("unknown acquisition: " + acquisition);

    if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    s.batch_size = batch_size;
    return s;
}

Benchmark ExperimentConfig::to_benchmark() const { return make_benchmark(benchmark, dimension); }

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "benchmark") cfg.benchmark = value;
            else if (key == "dimension") cfg.dimension = std::stoi(value);
            else if (key == "strategy") cfg.strategy = value;
            else if (key == "acquisition") cfg.acquisition = value;
            else if (key == "kappa") cfg.kappa = std::stod(value);
            else if (key == "batch_size") cfg.batch_size = std::stoi(value);
            else if (key == "iterations") cfg.iterations = std::stoi(value);
            else if (key == "replicates") cfg.replicates = std::stoi(value);
            else if (key == "init_size") cfg.init_size = std::stoi(value);
            else if (key == "noise_sigma") cfg.noise_sigma = std::stod(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "output") cfg.output = value;
            else throw ConfigError("unknown config key: " + key);
        } catch (const std::invalid_argument&) {
            throw ConfigError("config line " + std::to_string(lineno) + ": bad value for " + key);
        }
    }
    if (cfg.replicates < 1) throw ConfigError("replicates must be >= 1");
    if (cfg.iterations < 1) throw ConfigError("iterations must be >= 1");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    return parse_config(in);
}

void write_csv_header(std::ostream& out, int dim) {
    out << "replicate,iteration,batch_index";
    for (int j = 0; j < dim; ++j) out << ",x" << j;
    out << ",y,best_so_far,design_time_s,eval_time_s,wall_clock_s\n";
}

void write_csv_row(std::ostream& out, const StepRecord& row, int dim) {
    out << row.replicate << ',' << row.iteration << ',' << row.batch_index;
    for (int j = 0; j < dim; ++j) out << ',' << format_double(row.x[j]);
    out << ',' << format_double(row.y) << ',' << format_double(row.best_so_far) << ','
        << format_double(row.design_time_s) << ',' << format_double(row.eval_time_s) << ','
        << format_double(row.wall_clock_s) << '\n';
}

RecordTable read_record_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open records: " + path);
    RecordTable table;
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("empty records file: " + path);
    table.header = split_csv(trim(line));
    if (table.header.size() < 9 || table.header[0] != "replicate" ||
        table.header.back() != "wall_clock_s")
        throw SchemaError("unexpected header in " + path);
    table.dim = static_cast<int>(table.header.size()) - 8;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != table.header.size())
            throw SchemaError("column count mismatch in " + path);
        StepRecord row;
        row.replicate = std::stoi(fields[0]);
        row.iteration = std::stoi(fields[1]);
        row.batch_index = std::stoi(fields[2]);
        row.x.resize(table.dim);
        for (int j = 0; j < table.dim; ++j) row.x[j] = parse_double(fields[3 + j]);
        row.y = parse_double(fields[3 + table.dim]);
        row.best_so_far = parse_double(fields[4 + table.dim]);
        row.design_time_s = parse_double(fields[5 + table.dim]);
        row.eval_time_s = parse_double(fields[6 + table.dim]);
        row.wall_clock_s = parse_double(fields[7 + table.dim]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

ExperimentSummary run_experiment(const ExperimentConfig& config) {
    Benchmark bench = config.to_benchmark();
    BatchStrategy strategy = config.to_strategy();
    const int dim = bench.domain.dim();

    std::ofstream out(config.output);
    if (!out) throw IoError("cannot open output: " + config.output);
    write_csv_header(out, dim);

    ExperimentSummary summary;
    summary.replicates = config.replicates;
    std::vector<double> finals;

    for (int r = 0; r < config.replicates; ++r) {
        // Always minimize; negate maximization benchmarks at the boundary.
        const bool flip = bench.maximize;
        NoisyObjective noisy(bench.evaluate, config.noise_sigma, config.seed + 1000003ULL * r + 17);
        Objective objective = [&noisy, flip](const Vector& x) {
            const double v = noisy(x);
            return flip ? -v : v;
        };
        RunOutcome outcome = run_bbo(objective, bench.domain, strategy, config.iterations,
                                     config.effective_init_size(), config.seed + r);
        for (auto& row : outcome.record.rows) {
            row.replicate = r;
            write_csv_row(out, row, dim);
        }
        out.flush();
        if (!outcome.ok) {
            ++summary.failed;
            std::cerr << "replicate " << r << " failed: " << outcome.error << "\n";
            continue;
        }
        finals.push_back(outcome.record.final_best);
    }
    if (!out) throw IoError("write failure: " + config.output);

    if (!finals.empty()) {
        double mean = 0.0;
        for (double v : finals) mean += v;
        mean /= finals.size();
        double var = 0.0;
        for (double v : finals) var += (v - mean) * (v - mean);
        var /= finals.size();
        summary.mean_final_best = mean;
        summary.std_final_best = std::sqrt(var);
    }

    std::ofstream sum(config.output + ".summary.csv");
    if (!sum) throw IoError("cannot open summary output");
    sum << "benchmark,strategy,acquisition,batch_size,replicates,failed,mean_final_best,"
           "std_final_best\n";
    sum << config.benchmark << ',' << config.strategy << ',' << config.acquisition << ','
        << config.batch_size << ',' << summary.replicates << ',' << summary.failed << ','
        << format_double(summary.mean_final_best) << ',' << format_double(summary.std_final_best)
        << '\n';
    return summary;
}

void summarize(const std::vector<std::string>& record_paths, std::ostream& out) {
    out << "source,iteration,mean_best,std_best,mean_wall_clock_s\n";
    for (const auto& path : record_paths) {
        RecordTable table = read_record_csv(path);
        // Best-so-far at the end of each iteration, per replicate.
        std::map<int, std::map<int, std::pair<double, double>>> per_iter;  // iter -> rep -> (best, wall)
        for (const auto& row : table.rows) {
            per_iter[row.iteration][row.replicate] = {row.best_so_far, row.wall_clock_s};
        }
        for (const auto& [iter, reps] : per_iter) {
            double mean = 0.0, wall = 0.0;
            for (const auto& [rep, v] : reps) {
                mean += v.first;
                wall += v.second;
            }
            mean /= reps.size();
            wall /= reps.size();
            double var = 0.0;
            for (const auto& [rep, v] : reps) var += (v.first - mean) * (v.first - mean);
            var /= reps.size();
            out << path << ',' << iter << ',' << format_double(mean) << ','
                << format_double(std::sqrt(var)) << ',' << format_double(wall) << '\n';
        }
    }
}

}  // namespace lipbatch
