#include "lipbatch/lipschitz.hpp"

#include <algorithm>
#include <cmath>

#include "lipbatch/optim.hpp"
#include "lipbatch/sampling.hpp"

namespace lipbatch {

double estimate_M(const GPPosterior& gp, IncumbentMode mode) {
    if (mode == IncumbentMode::MaxY) return gp.data().y.maxCoeff();

    // MaxMu: multi-start ascent on the posterior mean seeded at all training points.
    const BoxDomain& domain = gp.data().domain;
    auto f = [&](const Vector& x) { return gp.mean(x); };
    auto grad = [&](const Vector& x) { return gp.mean_gradient(x); };
    AscentOptions opts;
    opts.initial_step = 0.1;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < gp.data().n(); ++i) {
        AscentResult res =
            projected_gradient_ascent(f, grad, domain, gp.data().X.row(i).transpose(), opts);
        best = std::max(best, res.value);
    }
    return best;
}

LipschitzEstimate estimate_L_global(const GPPosterior& gp, Rng& rng) {
    const BoxDomain& domain = gp.data().domain;
    const int d = domain.dim();
    const int n_samples = 500 * d;

    Matrix cand = latin_hypercube(domain, n_samples, rng);
    std::vector<std::pair<double, int>> scored(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        scored[i] = {gp.mean_gradient(cand.row(i).transpose()).squaredNorm(), i};
    }
    const int n_top = std::min(5, n_samples);
    std::partial_sort(scored.begin(), scored.begin() + n_top, scored.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });

    auto f = [&](const Vector& x) { return gp.mean_gradient(x).squaredNorm(); };
    auto grad = [&](const Vector& x) -> Vector {
        return 2.0 * (gp.mean_hessian(x) * gp.mean_gradient(x));
    };
    AscentOptions opts;
    opts.initial_step = 0.05;

    LipschitzEstimate est;
    est.mode = LipschitzEstimate::Mode::Global;
    est.argmax_point = cand.row(scored[0].second).transpose();
    double best_sq = scored[0].first;
    for (int t = 0; t < n_top; ++t) {
        AscentResult res =
            projected_gradient_ascent(f, grad, domain, cand.row(scored[t].second).transpose(), opts);
        if (res.value > best_sq) {
            best_sq = res.value;
            est.argmax_point = res.x;
        }
    }
    est.value = std::max(std::sqrt(best_sq), kLipschitzFloor);
    return est;
}

double estimate_L_local(const GPPosterior& gp, const Vector& x_j) {
    return std::max(gp.mean_gradient(x_j).norm(), kLipschitzFloor);
}

LipschitzReport verify_lipschitz_bound(const std::function<double(const Vector&)>& f,
                                       const BoxDomain& domain, double L, long sample_pairs,
                                       Rng& rng) {
    LipschitzReport report;
    report.pairs = sample_pairs;
    for (long i = 0; i < sample_pairs; ++i) {
        Vector x1 = domain.sample_uniform(rng);
        Vector x2 = domain.sample_uniform(rng);
        const double dist = (x1 - x2).norm();
        if (dist == 0.0) continue;
        const double slope = std::abs(f(x1) - f(x2)) / dist;
        report.max_slope = std::max(report.max_slope, slope);
        if (slope > L) ++report.violations;
    }
    report.violation_fraction =
        sample_pairs > 0 ? static_cast<double>(report.violations) / sample_pairs : 0.0;
    return report;
}

}  // namespace lipbatch
