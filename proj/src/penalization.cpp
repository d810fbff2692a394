#include "lipbatch/penalization.hpp"

#include <cmath>
#include <limits>

#include "lipbatch/optim.hpp"
#include "lipbatch/sampling.hpp"

namespace lipbatch {

namespace {

const double kSqrtPi = std::sqrt(M_PI);

double penalizer_z(const PenalizerParams& p, double dist) {
    return (p.lipschitz * dist - p.incumbent + p.mu_c) / (std::sqrt(2.0) * p.sigma_c);
}

/// ln(1/2 erfc(-z)), switching to the asymptotic expansion where erfc underflows.
double log_penalizer_from_z(double z) {
    const double phi = 0.5 * std::erfc(-z);
    if (phi > 1e-280) return std::log(phi);
    const double t = -z;  // large positive
    return -t * t - std::log(2.0 * t * kSqrtPi);
}

/// d ln(phi) / dz.
double dlog_penalizer_dz(double z) {
    const double phi = 0.5 * std::erfc(-z);
    if (phi > 1e-280) return std::exp(-z * z) / (kSqrtPi * phi);
    return -2.0 * z - 1.0 / z;  // exact derivative of the expansion above
}

}  // namespace

PenalizerParams PenalizerParams::at(const GPPosterior& gp, Vector center, double L, double M) {
    auto [mu, var] = gp.mean_var(center);
    return PenalizerParams(std::move(center), mu, std::sqrt(var), L, M);
}

double penalizer_value(const PenalizerParams& p, const Vector& x) {
    const double z = penalizer_z(p, (x - p.center).norm());
    return 0.5 * std::erfc(-z);
}

Vector penalizer_grad(const PenalizerParams& p, const Vector& x) {
    Vector diff = x - p.center;
    const double dist = diff.norm();
    if (dist == 0.0) return Vector::Zero(x.size());
    const double z = penalizer_z(p, dist);
    const double dphi_dz = std::exp(-z * z) / kSqrtPi;
    const double dz_ddist = p.lipschitz / (std::sqrt(2.0) * p.sigma_c);
    return (dphi_dz * dz_ddist / dist) * diff;
}

double PenalizedAcquisition::value(const Vector& x) const {
    double v = transform(spec_.transform, acquisition_value(*gp_, spec_, x));
    for (const auto& p : penalizers_) v *= penalizer_value(p, x);
    return v;
}

double PenalizedAcquisition::log_value(const Vector& x) const {
    const double alpha = acquisition_value(*gp_, spec_, x);
    double lv;
    if (spec_.transform == TransformKind::Exp) {
        lv = alpha;
    } else {
        const double g = transform(spec_.transform, alpha);
        lv = g > 0.0 ? std::log(g) : -std::numeric_limits<double>::infinity();
        // softplus underflows to 0 only for very negative alpha; there ln(g) ~ alpha
        if (spec_.transform == TransformKind::Softplus && g == 0.0) lv = alpha;
    }
    for (const auto& p : penalizers_) lv += log_penalizer_from_z(penalizer_z(p, (x - p.center).norm()));
    return lv;
}

Vector PenalizedAcquisition::log_grad(const Vector& x) const {
    const double alpha = acquisition_value(*gp_, spec_, x);
    Vector dalpha = acquisition_grad(*gp_, spec_, x);
    double coeff;
    switch (spec_.transform) {
        case TransformKind::Identity:
            if (alpha <= 0.0) throw NonPositiveValue("log_grad: identity transform with alpha <= 0");
            coeff = 1.0 / alpha;
            break;
        case TransformKind::Softplus: {
            const double g = transform(TransformKind::Softplus, alpha);
            coeff = g > 0.0 ? transform_deriv(TransformKind::Softplus, alpha) / g : 1.0;
            break;
        }
        case TransformKind::Exp:
            coeff = 1.0;
            break;
        default:
            coeff = 1.0;
    }
    Vector g = coeff * dalpha;
    for (const auto& p : penalizers_) {
        Vector diff = x - p.center;
        const double dist = diff.norm();
        if (dist == 0.0) continue;
        const double z = penalizer_z(p, dist);
        const double dz_ddist = p.lipschitz / (std::sqrt(2.0) * p.sigma_c);
        g += (dlog_penalizer_dz(z) * dz_ddist / dist) * diff;
    }
    return g;
}

Vector maximize_penalized(const PenalizedAcquisition& pa, const BoxDomain& domain, int seeds,
                          Rng& rng, const MaximizeOptions& opts) {
    if (seeds < 1) throw ConfigError("maximize_penalized: seeds must be >= 1");

    std::vector<Vector> starts;
    Matrix lhs = latin_hypercube(domain, seeds, rng);
    for (int i = 0; i < lhs.rows(); ++i) starts.push_back(lhs.row(i).transpose());
    // Warm starts near the already-chosen centers.
    std::normal_distribution<double> perturb(0.0, 1.0);
    for (const auto& p : pa.penalizers()) {
        Vector x = p.center;
        for (int j = 0; j < x.size(); ++j) x[j] += 1e-2 * domain.width()[j] * perturb(rng);
        starts.push_back(domain.clamp(x));
    }
    for (const auto& w : opts.warm_starts) starts.push_back(domain.clamp(w));

    auto f = [&](const Vector& x) { return pa.log_value(x); };
    auto grad = [&](const Vector& x) -> Vector {
        try {
            return pa.log_grad(x);
        } catch (const NonPositiveValue&) {
            return Vector::Zero(x.size());
        }
    };

    AscentOptions ascent;
    ascent.max_iters = opts.max_iters;
    ascent.grad_tol = opts.grad_tol;
    ascent.initial_step = 0.1;

    Vector best = starts.front();
    double best_val = -std::numeric_limits<double>::infinity();
    for (const auto& x0 : starts) {
        AscentResult res = projected_gradient_ascent(f, grad, domain, x0, ascent);
        if (res.value > best_val) {
            best_val = res.value;
            best = res.x;
        }
    }
    return best;
}

}  // namespace lipbatch
