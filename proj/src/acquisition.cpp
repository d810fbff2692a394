#include "lipbatch/acquisition.hpp"

#include <cmath>

namespace lipbatch {

namespace {

double norm_pdf(double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * M_PI); }
double norm_cdf(double u) { return 0.5 * std::erfc(-u / std::sqrt(2.0)); }

constexpr double kSigmaFloor = 1e-12;

}  // namespace

double ei(double mu, double sigma, double y_best) {
    if (sigma <= 0.0) return std::max(mu - y_best, 0.0);
    const double u = (mu - y_best) / sigma;
    return sigma * (u * norm_cdf(u) + norm_pdf(u));
}

double ucb(double mu, double sigma, double kappa) { return mu + kappa * sigma; }

double best_observed(const GPPosterior& gp) { return gp.data().y.maxCoeff(); }

double acquisition_value(const GPPosterior& gp, const AcquisitionSpec& spec, const Vector& x) {
    auto [mu, var] = gp.mean_var(x);
    const double sigma = std::sqrt(var);
    switch (spec.kind) {
        case AcquisitionKind::EI:
            return ei(mu, sigma, best_observed(gp));
        case AcquisitionKind::UCB:
            return ucb(mu, sigma, spec.kappa);
    }
    return 0.0;
}

Vector acquisition_grad(const GPPosterior& gp, const AcquisitionSpec& spec, const Vector& x) {
    auto [mu, var] = gp.mean_var(x);
    const double sigma = std::max(std::sqrt(var), kSigmaFloor);
    Vector dmu = gp.mean_gradient(x);
    Vector dsigma = gp.var_gradient(x) / (2.0 * sigma);
    switch (spec.kind) {
        case AcquisitionKind::EI: {
            const double u = (mu - best_observed(gp)) / sigma;
            return norm_cdf(u) * dmu + norm_pdf(u) * dsigma;
        }
        case AcquisitionKind::UCB:
            return dmu + spec.kappa * dsigma;
    }
    return Vector::Zero(x.size());
}

double transform(TransformKind kind, double z) {
    switch (kind) {
        case TransformKind::Identity:
            return z;
        case TransformKind::Softplus:
            return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
        case TransformKind::Exp:
            return std::exp(z);
    }
    return z;
}

double transform_deriv(TransformKind kind, double z) {
    switch (kind) {
        case TransformKind::Identity:
            return 1.0;
        case TransformKind::Softplus:
            return z > 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
        case TransformKind::Exp:
            return std::exp(z);
    }
    return 1.0;
}

}  // namespace lipbatch
