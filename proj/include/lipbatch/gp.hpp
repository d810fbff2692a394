#ifndef LIPBATCH_GP_HPP
#define LIPBATCH_GP_HPP

#include <utility>

#include "lipbatch/domain.hpp"

namespace lipbatch {

/// Exponentiated-quadratic kernel parameters: k(x,x') = theta * exp(-gamma * ||x-x'||^2).
struct Hyperparams {
    double theta = 1.0;      // kernel variance, > 0
    double gamma = 1.0;      // inverse squared lengthscale, > 0
    double noise_var = 0.0;  // observation noise variance, >= 0
};

double eq_kernel(const Vector& x1, const Vector& x2, const Hyperparams& hyper);

/// Posterior of the objective's gradient at a single point.
struct GradPosterior {
    Vector mean_grad;  // mu_grad(x*)
    Matrix cov_grad;   // Sigma^2_grad(x*), symmetric PSD
};

struct PosteriorEval {
    double mu = 0.0;
    double var = 0.0;            // clamped to >= 0
    double var_unclamped = 0.0;  // raw value before the clamp
};

/// Fitted GP with cached Cholesky factorization. Immutable after construction;
/// safe to share across concurrent readers.
class GPPosterior {
public:
    /// Condition on the data with the given hyperparameters, no output rescaling.
    GPPosterior(Dataset data, Hyperparams hyper);

    /// Condition in standardized output units: internal y = (y - y_mean) / y_scale.
    /// All queries report in the original units.
    GPPosterior(Dataset data, Hyperparams hyper, double y_mean, double y_scale);

    PosteriorEval evaluate(const Vector& x_star) const;
    std::pair<double, double> mean_var(const Vector& x_star) const;
    double mean(const Vector& x_star) const;
    Vector mean_gradient(const Vector& x_star) const;
    Vector var_gradient(const Vector& x_star) const;
    GradPosterior gradient(const Vector& x_star) const;

    /// Hessian of the posterior mean at x_star (exact for the EQ kernel).
    Matrix mean_hessian(const Vector& x_star) const;

    const Dataset& data() const { return data_; }
    const Hyperparams& hyper() const { return hyper_; }
    double y_mean() const { return y_mean_; }
    double y_scale() const { return y_scale_; }
    double jitter() const { return jitter_; }
    const Matrix& chol_factor() const { return chol_L_; }
    const Vector& alpha() const { return alpha_; }
    bool degenerate() const { return degenerate_; }

private:
    Vector cross_covariance(const Vector& x_star) const;  // k_n(x*), standardized units

    Dataset data_;
    Hyperparams hyper_;  // standardized units
    double y_mean_ = 0.0;
    double y_scale_ = 1.0;
    double jitter_ = 0.0;
    bool degenerate_ = false;
    Matrix chol_L_;  // lower factor of K_n + noise_var*I + jitter*I
    Vector alpha_;   // (K_n + noise_var*I + jitter*I)^{-1} y_std
};

/// log p(y | X, hyper) for the EQ kernel (jitter included in the factorization).
double log_marginal_likelihood(const Dataset& data, const Hyperparams& hyper);

struct FitOptions {
    int restarts = 10;
    double log_param_low = -4.0;   // restart sampling range for log theta/gamma/noise
    double log_param_high = 4.0;
    double noise_floor = 1e-8;     // standardized units
    int max_iters = 100;
};

/// Maximum-marginal-likelihood fit: best of `restarts` gradient-based local
/// optimizations on log-parameters, y standardized internally.
GPPosterior fit_gp(const Dataset& data, int restarts, Rng& rng);
GPPosterior fit_gp(const Dataset& data, const FitOptions& opts, Rng& rng);

}  // namespace lipbatch

#endif  // LIPBATCH_GP_HPP
