#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "lipbatch/experiment.hpp"
#include "lipbatch/sampling.hpp"

namespace {

using namespace lipbatch;

std::uint64_t seed_override(std::uint64_t fallback) {
    if (const char* env = std::getenv("LIPBATCH_SEED")) {
        return std::stoull(env);
    }
    return fallback;
}

int cmd_run(const std::string& config_path) {
    ExperimentConfig cfg = load_config(config_path);
    cfg.seed = seed_override(cfg.seed);
    ExperimentSummary s = run_experiment(cfg);
    std::cout << "replicates=" << s.replicates << " failed=" << s.failed
              << " mean_final_best=" << s.mean_final_best << " std_final_best=" << s.std_final_best
              << "\n"
              << "rows written to " << cfg.output << "\n";
    return s.failed == s.replicates ? 3 : 0;
}

int cmd_summarize(const std::vector<std::string>& records, const std::string& output) {
    std::ofstream out(output);
    if (!out) throw IoError("cannot open output: " + output);
    summarize(records, out);
    std::cout << "summary written to " << output << "\n";
    return 0;
}

// Convergence study of the Lipschitz estimate on a benchmark across sample
// sizes and noise levels.
int cmd_lipschitz_study(const std::string& config_path) {
    ExperimentConfig cfg = load_config(config_path);
    cfg.seed = seed_override(cfg.seed);
    Benchmark bench = cfg.to_benchmark();

    const std::vector<int> sample_sizes = {10, 20, 30, 40, 50};
    const std::vector<double> sigmas = {0.0, 0.1, 0.25};
    const int replicates = cfg.replicates;

    std::ofstream out(cfg.output);
    if (!out) throw IoError("cannot open output: " + cfg.output);
    out << "sigma,n,mean_L,std_L\n";
    for (double sigma : sigmas) {
        for (int n : sample_sizes) {
            std::vector<double> ls;
            for (int r = 0; r < replicates; ++r) {
                Rng rng(cfg.seed + 7919ULL * r + n + static_cast<std::uint64_t>(sigma * 1000));
                Matrix X(n, bench.domain.dim());
                for (int i = 0; i < n; ++i) X.row(i) = bench.domain.sample_uniform(rng).transpose();
                NoisyObjective noisy(bench.evaluate, sigma, rng());
                Vector y(n);
                for (int i = 0; i < n; ++i) y[i] = noisy(X.row(i).transpose());
                Dataset data(X, y, bench.domain);
                GPPosterior gp = fit_gp(data, 10, rng);
                ls.push_back(estimate_L_global(gp, rng).value);
            }
            double mean = 0.0;
            for (double v : ls) mean += v;
            mean /= ls.size();
            double var = 0.0;
            for (double v : ls) var += (v - mean) * (v - mean);
            var /= ls.size();
            out << sigma << ',' << n << ',' << mean << ',' << std::sqrt(var) << '\n';
            std::cout << "sigma=" << sigma << " n=" << n << " mean_L=" << mean << "\n";
        }
    }
    std::cout << "study written to " << cfg.output << "\n";
    return 0;
}

bool report(const char* name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    return ok;
}

// Quick oracle suite: closed forms against Monte Carlo, gradients against
// finite differences, posterior against a dense solve.
int cmd_selftest() {
    bool all = true;
    Rng rng(12345);

    {  // penalizer vs Monte Carlo
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::normal_distribution<double> gauss(0.0, 1.0);
        bool ok = true;
        for (int trial = 0; trial < 10; ++trial) {
            const double L = 0.5 + 4.0 * u(rng);
            const double M = 2.0 * u(rng);
            const double mu_c = -1.0 + 2.0 * u(rng);
            const double sigma_c = 0.2 + 2.0 * u(rng);
            const double dist = 0.05 + 2.0 * u(rng);
            PenalizerParams p(Vector::Zero(1), mu_c, sigma_c, L, M);
            Vector x(1);
            x << dist;
            const double closed = penalizer_value(p, x);
            long hits = 0;
            const long n = 1000000;
            for (long i = 0; i < n; ++i) {
                const double f_j = mu_c + sigma_c * gauss(rng);
                if ((M - f_j) / L <= dist) ++hits;
            }
            if (std::abs(closed - static_cast<double>(hits) / n) > 3e-3) ok = false;
        }
        all &= report("penalizer-monte-carlo-oracle", ok);
    }

    {  // gradient finite differences
        BoxDomain dom = BoxDomain::cube(2, 0.0, 1.0);
        Matrix X = latin_hypercube(dom, 12, rng);
        Vector y(12);
        for (int i = 0; i < 12; ++i) y[i] = std::sin(3.0 * X(i, 0)) + X(i, 1);
        Dataset data(X, y, dom);
        GPPosterior gp(data, {1.0, 2.0, 0.01});
        AcquisitionSpec spec = AcquisitionSpec::make_ucb(2.0);
        bool ok = true;
        for (int t = 0; t < 20; ++t) {
            Vector x = dom.sample_uniform(rng) * 0.9;
            x.array() += 0.05;
            Vector g = acquisition_grad(gp, spec, x);
            const double h = 1e-6;
            for (int j = 0; j < 2; ++j) {
                Vector xp = x, xm = x;
                xp[j] += h;
                xm[j] -= h;
                const double fd = (acquisition_value(gp, spec, xp) - acquisition_value(gp, spec, xm)) / (2 * h);
                if (std::abs(fd - g[j]) > 1e-5 * std::max(1.0, std::abs(fd))) ok = false;
            }
        }
        all &= report("acquisition-gradient-finite-differences", ok);
    }

    {  // posterior vs dense solve
        BoxDomain dom = BoxDomain::cube(3, -1.0, 1.0);
        Matrix X = latin_hypercube(dom, 15, rng);
        Vector y(15);
        for (int i = 0; i < 15; ++i) y[i] = X.row(i).squaredNorm();
        Dataset data(X, y, dom);
        Hyperparams hp{1.5, 0.8, 0.05};
        GPPosterior gp(data, hp);
        Matrix K(15, 15);
        for (int i = 0; i < 15; ++i)
            for (int j = 0; j < 15; ++j)
                K(i, j) = eq_kernel(X.row(i).transpose(), X.row(j).transpose(), hp);
        K.diagonal().array() += hp.noise_var + gp.jitter();
        Matrix Kinv = K.inverse();
        bool ok = true;
        for (int t = 0; t < 20; ++t) {
            Vector x = dom.sample_uniform(rng);
            Vector k(15);
            for (int i = 0; i < 15; ++i) k[i] = eq_kernel(X.row(i).transpose(), x, hp);
            const double mu_oracle = k.dot(Kinv * y);
            const double var_oracle = hp.theta - k.dot(Kinv * k);
            auto [mu, var] = gp.mean_var(x);
            if (std::abs(mu - mu_oracle) > 1e-8 * std::max(1.0, std::abs(mu_oracle))) ok = false;
            if (std::abs(var - var_oracle) > 1e-8 * std::max(1.0, std::abs(var_oracle))) ok = false;
        }
        all &= report("gp-posterior-dense-solve-oracle", ok);
    }

    return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Batch Bayesian optimization with local penalization"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> record_paths;
    std::string summarize_output = "summary.csv";

    auto* run = app.add_subcommand("run", "Run a replicated experiment from a config file");
    run->add_option("config", config_path, "config file")->required();

    auto* sum = app.add_subcommand("summarize", "Merge record CSVs into a comparison table");
    sum->add_option("records", record_paths, "record CSV files")->required();
    sum->add_option("-o,--output", summarize_output, "output CSV");

    auto* lip = app.add_subcommand("lipschitz-study",
                                   "Lipschitz-estimate convergence study from a config file");
    lip->add_option("config", config_path, "config file")->required();

    app.add_subcommand("selftest", "Run the built-in oracle suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("run")) return cmd_run(config_path);
        if (app.got_subcommand("summarize")) return cmd_summarize(record_paths, summarize_output);
        if (app.got_subcommand("lipschitz-study")) return cmd_lipschitz_study(config_path);
        if (app.got_subcommand("selftest")) return cmd_selftest();
    } catch (const lipbatch::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
