#include "lipbatch/batch.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "lipbatch/optim.hpp"
#include "lipbatch/sampling.hpp"

namespace lipbatch {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int effective_batch_size(const BatchStrategy& s) {
    return s.kind == StrategyKind::Sequential ? 1 : s.batch_size;
}

/// Nudge a proposal away from existing inputs so the kernel matrix stays
/// well conditioned.
Vector dedupe_point(Vector x, const Matrix& X, const BoxDomain& domain, Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int attempt = 0; attempt < 16; ++attempt) {
        bool clash = false;
        for (int i = 0; i < X.rows(); ++i) {
            if ((x - X.row(i).transpose()).norm() < 1e-8) {
                clash = true;
                break;
            }
        }
        if (!clash) return x;
        Vector nudged = x;
        for (int j = 0; j < x.size(); ++j) nudged[j] += 1e-6 * domain.width()[j] * u(rng);
        x = domain.clamp(nudged);
    }
    return x;
}

Matrix append_row(const Matrix& X, const Vector& x) {
    Matrix out(X.rows() + 1, X.cols());
    out.topRows(X.rows()) = X;
    out.row(X.rows()) = x.transpose();
    return out;
}

Vector append_value(const Vector& y, double v) {
    Vector out(y.size() + 1);
    out.head(y.size()) = y;
    out[y.size()] = v;
    return out;
}

/// Best observed inputs, used to warm-start the acquisition ascent: the
/// refinement peak next to the incumbent is easy to miss with space-filling
/// seeds alone when the good basin is a small fraction of the domain.
std::vector<Vector> incumbent_warm_starts(const Dataset& data, int k = 3) {
    std::vector<int> order(data.n());
    for (int i = 0; i < data.n(); ++i) order[i] = i;
    std::partial_sort(order.begin(), order.begin() + std::min<int>(k, data.n()), order.end(),
                      [&](int a, int b) { return data.y[a] > data.y[b]; });
    std::vector<Vector> starts;
    for (int i = 0; i < std::min<int>(k, data.n()); ++i)
        starts.push_back(data.X.row(order[i]).transpose());
    return starts;
}

}  // namespace

BatchPlan design_batch_lp(const RunState& state, const BatchStrategy& strategy, bool local_L,
                          Rng& rng) {
    const BoxDomain& domain = state.data.domain;
    const int n_b = effective_batch_size(strategy);

    const double M_hat = estimate_M(state.gp, strategy.incumbent_mode);
    double L_global = 0.0;
    if (!local_L) {
        L_global = strategy.forced_L ? *strategy.forced_L : estimate_L_global(state.gp, rng).value;
    }

    PenalizedAcquisition pa(state.gp, strategy.acquisition);
    BatchPlan plan;
    MaximizeOptions opts;
    opts.warm_starts = incumbent_warm_starts(state.data);
    for (int j = 0; j < n_b; ++j) {
        Vector x = maximize_penalized(pa, domain, strategy.opt_seeds, rng, opts);
        plan.points.push_back(x);
        if (j + 1 < n_b) {
            double L = local_L ? (strategy.forced_L ? *strategy.forced_L
                                                    : estimate_L_local(state.gp, x))
                               : L_global;
            pa.add_penalizer(PenalizerParams::at(state.gp, x, L, M_hat));
        }
    }
    return plan;
}

BatchPlan design_batch_rand(const RunState& state, const BatchStrategy& strategy, Rng& rng) {
    const BoxDomain& domain = state.data.domain;
    PenalizedAcquisition pa(state.gp, strategy.acquisition);
    BatchPlan plan;
    MaximizeOptions opts;
    opts.warm_starts = incumbent_warm_starts(state.data);
    plan.points.push_back(maximize_penalized(pa, domain, strategy.opt_seeds, rng, opts));
    for (int j = 1; j < effective_batch_size(strategy); ++j) {
        plan.points.push_back(domain.sample_uniform(rng));
    }
    return plan;
}

BatchPlan design_batch_pred(const RunState& state, const BatchStrategy& strategy, Rng& rng) {
    const BoxDomain& domain = state.data.domain;
    const int n_b = effective_batch_size(strategy);

    BatchPlan plan;
    Matrix X = state.data.X;
    Vector y_std = (state.data.y.array() - state.gp.y_mean()) / state.gp.y_scale();
    // Scoped posterior with frozen hyperparameters; the run's GP is untouched.
    for (int j = 0; j < n_b; ++j) {
        Vector y_raw = state.gp.y_mean() + (state.gp.y_scale() * y_std.array());
        Dataset fake_data(X, y_raw, domain);
        GPPosterior fake_gp(fake_data, state.gp.hyper(), state.gp.y_mean(), state.gp.y_scale());
        PenalizedAcquisition pa(fake_gp, strategy.acquisition);
        MaximizeOptions opts;
        opts.warm_starts = incumbent_warm_starts(fake_data);
        Vector x = maximize_penalized(pa, domain, strategy.opt_seeds, rng, opts);
        plan.points.push_back(x);
        if (j + 1 < n_b) {
            Vector x_cond = dedupe_point(x, X, domain, rng);
            const double fake_y = fake_gp.mean(x_cond);
            X = append_row(X, x_cond);
            y_std = append_value(y_std, (fake_y - state.gp.y_mean()) / state.gp.y_scale());
        }
    }
    return plan;
}

BatchPlan design_batch(const RunState& state, const BatchStrategy& strategy, Rng& rng) {
    switch (strategy.kind) {
        case StrategyKind::Sequential:
        case StrategyKind::LP:
            return design_batch_lp(state, strategy, false, rng);
        case StrategyKind::LPLocal:
            return design_batch_lp(state, strategy, true, rng);
        case StrategyKind::Rand:
            return design_batch_rand(state, strategy, rng);
        case StrategyKind::Pred:
            return design_batch_pred(state, strategy, rng);
    }
    throw ConfigError("design_batch: unknown strategy");
}

RunOutcome run_bbo(const Objective& objective, const BoxDomain& domain,
                   const BatchStrategy& strategy, int budget_iters, int init_size,
                   std::uint64_t seed) {
    if (budget_iters < 1) throw ConfigError("run_bbo: budget_iters must be >= 1");
    if (init_size < 2) throw ConfigError("run_bbo: init_size must be >= 2");

    RunOutcome out;
    Rng rng(seed);
    const auto t0 = Clock::now();
    double best = std::numeric_limits<double>::infinity();

    Matrix X(0, domain.dim());
    Vector y_int(0);  // negated observations: the GP maximizes -objective

    auto record_eval = [&](int iteration, int batch_index, const Vector& x, double y,
                           double design_s, double eval_s) {
        best = std::min(best, y);
        StepRecord row;
        row.iteration = iteration;
        row.batch_index = batch_index;
        row.x = x;
        row.y = y;
        row.best_so_far = best;
        row.design_time_s = design_s;
        row.eval_time_s = eval_s;
        row.wall_clock_s = seconds_since(t0);
        out.record.rows.push_back(row);
    };

    try {
        Matrix init = latin_hypercube(domain, init_size, rng);
        double init_eval_max = 0.0;
        std::vector<double> init_y(init_size);
        for (int i = 0; i < init_size; ++i) {
            const auto te = Clock::now();
            init_y[i] = objective(init.row(i).transpose());
            init_eval_max = std::max(init_eval_max, seconds_since(te));
        }
        for (int i = 0; i < init_size; ++i) {
            X = append_row(X, init.row(i).transpose());
            y_int = append_value(y_int, -init_y[i]);
            record_eval(0, i, init.row(i).transpose(), init_y[i], 0.0, init_eval_max);
        }

        for (int t = 1; t <= budget_iters; ++t) {
            const auto td = Clock::now();
            Dataset data(X, y_int, domain);
            RunState state(data, fit_gp(data, strategy.fit_restarts, rng));
            state.iteration = t;
            BatchPlan plan = design_batch(state, strategy, rng);
            for (auto& x : plan.points) x = dedupe_point(domain.clamp(x), X, domain, rng);
            const double design_s = seconds_since(td);

            double eval_max = 0.0;
            std::vector<double> ys(plan.points.size());
            for (size_t j = 0; j < plan.points.size(); ++j) {
                const auto te = Clock::now();
                ys[j] = objective(plan.points[j]);
                eval_max = std::max(eval_max, seconds_since(te));
            }
            for (size_t j = 0; j < plan.points.size(); ++j) {
                X = append_row(X, plan.points[j]);
                y_int = append_value(y_int, -ys[j]);
                record_eval(t, static_cast<int>(j), plan.points[j], ys[j], design_s, eval_max);
            }
        }

        // Closing refit; the answer is the maximizer of the internal posterior mean.
        Dataset data(X, y_int, domain);
        GPPosterior gp = fit_gp(data, strategy.fit_restarts, rng);
        double best_mu = -std::numeric_limits<double>::infinity();
        Vector best_x = X.row(0).transpose();
        auto f = [&](const Vector& x) { return gp.mean(x); };
        auto grad = [&](const Vector& x) { return gp.mean_gradient(x); };
        AscentOptions opts;
        opts.initial_step = 0.1;
        for (int i = 0; i < data.n(); ++i) {
            AscentResult res = projected_gradient_ascent(f, grad, domain, X.row(i).transpose(), opts);
            if (res.value > best_mu) {
                best_mu = res.value;
                best_x = res.x;
            }
        }
        out.record.final_x = best_x;
        out.record.final_best = best;
    } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
        out.record.final_best = best;
    }
    return out;
}

}  // namespace lipbatch
