#include "lipbatch/gp.hpp"

#include <cmath>
#include <limits>

#include "lipbatch/optim.hpp"

namespace lipbatch {

namespace {

constexpr double kJitterBase = 1e-10;  // relative to theta
constexpr double kJitterMax = 1e-4;

Matrix squared_distances(const Matrix& X) {
    const Eigen::Index n = X.rows();
    Vector sq = X.rowwise().squaredNorm();
    Matrix D = sq.replicate(1, n) + sq.transpose().replicate(n, 1) - 2.0 * X * X.transpose();
    return D.cwiseMax(0.0);
}

Matrix kernel_matrix(const Matrix& sqdist, double theta, double gamma) {
    return theta * (-gamma * sqdist).array().exp().matrix();
}

/// Cholesky of K + noise*I + jitter*I with jitter escalation. Returns the
/// jitter actually used.
double factorize(const Matrix& K, double noise_var, double theta, Eigen::LLT<Matrix>& llt) {
    double jitter = kJitterBase * theta;
    while (jitter <= kJitterMax * theta * (1.0 + 1e-12)) {
        Matrix A = K;
        A.diagonal().array() += noise_var + jitter;
        llt.compute(A);
        if (llt.info() == Eigen::Success) return jitter;
        jitter *= 10.0;
    }
    throw SingularKernel("kernel matrix not factorizable after jitter escalation");
}

double lml_from_factorization(const Eigen::LLT<Matrix>& llt, const Vector& y, const Vector& alpha) {
    const double n = static_cast<double>(y.size());
    const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return -0.5 * y.dot(alpha) - 0.5 * logdet - 0.5 * n * std::log(2.0 * M_PI);
}

/// LML and its gradient with respect to (log theta, log gamma, log noise_var).
double lml_and_grad(const Matrix& sqdist, const Vector& y, double theta, double gamma,
                    double noise_var, Vector* grad) {
    const Eigen::Index n = y.size();
    Matrix K = kernel_matrix(sqdist, theta, gamma);
    Eigen::LLT<Matrix> llt;
    factorize(K, noise_var, theta, llt);
    Vector alpha = llt.solve(y);
    const double lml = lml_from_factorization(llt, y, alpha);
    if (grad) {
        Matrix Kinv = llt.solve(Matrix::Identity(n, n));
        Matrix W = alpha * alpha.transpose() - Kinv;  // d lml = 1/2 tr(W dK)
        grad->resize(3);
        (*grad)[0] = 0.5 * W.cwiseProduct(K).sum();
        (*grad)[1] = -0.5 * gamma * W.cwiseProduct(sqdist.cwiseProduct(K)).sum();
        (*grad)[2] = 0.5 * noise_var * W.trace();
    }
    return lml;
}

}  // namespace

double eq_kernel(const Vector& x1, const Vector& x2, const Hyperparams& hyper) {
    return hyper.theta * std::exp(-hyper.gamma * (x1 - x2).squaredNorm());
}

GPPosterior::GPPosterior(Dataset data, Hyperparams hyper)
    : GPPosterior(std::move(data), hyper, 0.0, 1.0) {}

GPPosterior::GPPosterior(Dataset data, Hyperparams hyper, double y_mean, double y_scale)
    : data_(std::move(data)), hyper_(hyper), y_mean_(y_mean), y_scale_(y_scale) {
    if (!(hyper_.theta > 0.0) || !(hyper_.gamma > 0.0) || hyper_.noise_var < 0.0)
        throw ConfigError("GPPosterior: invalid hyperparameters");
    if (!(y_scale_ > 0.0)) throw ConfigError("GPPosterior: y_scale must be positive");

    Vector y_std = (data_.y.array() - y_mean_) / y_scale_;
    const double sd = std::sqrt((y_std.array() - y_std.mean()).square().sum() /
                                std::max<Eigen::Index>(1, y_std.size()));
    degenerate_ = data_.n() >= 2 && sd < 1e-12;

    Matrix K = kernel_matrix(squared_distances(data_.X), hyper_.theta, hyper_.gamma);
    Eigen::LLT<Matrix> llt;
    jitter_ = factorize(K, hyper_.noise_var, hyper_.theta, llt);
    chol_L_ = llt.matrixL();
    alpha_ = llt.solve(y_std);
}

Vector GPPosterior::cross_covariance(const Vector& x_star) const {
    const int n = data_.n();
    Vector k(n);
    for (int i = 0; i < n; ++i)
        k[i] = hyper_.theta * std::exp(-hyper_.gamma * (x_star - data_.X.row(i).transpose()).squaredNorm());
    return k;
}

PosteriorEval GPPosterior::evaluate(const Vector& x_star) const {
    Vector k = cross_covariance(x_star);
    Vector v = chol_L_.triangularView<Eigen::Lower>().solve(k);
    PosteriorEval out;
    out.mu = y_mean_ + y_scale_ * k.dot(alpha_);
    out.var_unclamped = y_scale_ * y_scale_ * (hyper_.theta - v.squaredNorm());
    out.var = std::max(out.var_unclamped, 0.0);
    return out;
}

std::pair<double, double> GPPosterior::mean_var(const Vector& x_star) const {
    PosteriorEval e = evaluate(x_star);
    return {e.mu, e.var};
}

double GPPosterior::mean(const Vector& x_star) const { return evaluate(x_star).mu; }

Vector GPPosterior::mean_gradient(const Vector& x_star) const {
    const int n = data_.n();
    const int d = data_.dim();
    Vector g = Vector::Zero(d);
    for (int i = 0; i < n; ++i) {
        Vector diff = x_star - data_.X.row(i).transpose();
        const double k = hyper_.theta * std::exp(-hyper_.gamma * diff.squaredNorm());
        g -= 2.0 * hyper_.gamma * alpha_[i] * k * diff;
    }
    return y_scale_ * g;
}

Vector GPPosterior::var_gradient(const Vector& x_star) const {
    const int n = data_.n();
    const int d = data_.dim();
    Vector k(n);
    Matrix J(d, n);
    for (int l = 0; l < n; ++l) {
        Vector diff = x_star - data_.X.row(l).transpose();
        k[l] = hyper_.theta * std::exp(-hyper_.gamma * diff.squaredNorm());
        J.col(l) = -2.0 * hyper_.gamma * k[l] * diff;
    }
    Vector z = chol_L_.triangularView<Eigen::Lower>().solve(k);
    Vector w = chol_L_.transpose().triangularView<Eigen::Upper>().solve(z);
    return y_scale_ * y_scale_ * (-2.0 * (J * w));
}

GradPosterior GPPosterior::gradient(const Vector& x_star) const {
    const int n = data_.n();
    const int d = data_.dim();
    // J(i,l) = d k(x*, x_l) / d x*_i
    Matrix J(d, n);
    for (int l = 0; l < n; ++l) {
        Vector diff = x_star - data_.X.row(l).transpose();
        const double k = hyper_.theta * std::exp(-hyper_.gamma * diff.squaredNorm());
        J.col(l) = -2.0 * hyper_.gamma * k * diff;
    }
    GradPosterior out;
    out.mean_grad = y_scale_ * (J * alpha_);
    // Prior gradient covariance of the EQ kernel at coincident points is 2*gamma*theta*I.
    Matrix V = chol_L_.triangularView<Eigen::Lower>().solve(J.transpose());  // n x d
    Matrix cov = 2.0 * hyper_.gamma * hyper_.theta * Matrix::Identity(d, d) - V.transpose() * V;
    out.cov_grad = y_scale_ * y_scale_ * 0.5 * (cov + cov.transpose());
    return out;
}

Matrix GPPosterior::mean_hessian(const Vector& x_star) const {
    const int n = data_.n();
    const int d = data_.dim();
    Matrix H = Matrix::Zero(d, d);
    const Matrix I = Matrix::Identity(d, d);
    for (int l = 0; l < n; ++l) {
        Vector diff = x_star - data_.X.row(l).transpose();
        const double k = hyper_.theta * std::exp(-hyper_.gamma * diff.squaredNorm());
        H -= 2.0 * hyper_.gamma * alpha_[l] * k * (I - 2.0 * hyper_.gamma * diff * diff.transpose());
    }
    return y_scale_ * H;
}

double log_marginal_likelihood(const Dataset& data, const Hyperparams& hyper) {
    Matrix K = kernel_matrix(squared_distances(data.X), hyper.theta, hyper.gamma);
    Eigen::LLT<Matrix> llt;
    factorize(K, hyper.noise_var, hyper.theta, llt);
    Vector alpha = llt.solve(data.y);
    return lml_from_factorization(llt, data.y, alpha);
}

GPPosterior fit_gp(const Dataset& data, int restarts, Rng& rng) {
    FitOptions opts;
    opts.restarts = restarts;
    return fit_gp(data, opts, rng);
}

GPPosterior fit_gp(const Dataset& data, const FitOptions& opts, Rng& rng) {
    if (data.n() < 2) throw ConfigError("fit_gp: need at least 2 observations");
    if (opts.restarts < 1) throw ConfigError("fit_gp: restarts must be >= 1");

    const double y_mean = data.y.mean();
    double sd = std::sqrt((data.y.array() - y_mean).square().sum() / data.n());
    const bool degenerate = sd < 1e-12;
    const double y_scale = degenerate ? 1.0 : sd;
    Vector y_std = (data.y.array() - y_mean) / y_scale;

    Matrix sqdist = squared_distances(data.X);
    const double log_noise_floor = std::log(opts.noise_floor);

    // Optimization box in (log theta, log gamma, log noise_var).
    Vector lo(3), hi(3);
    lo << -8.0, -8.0, log_noise_floor;
    hi << 8.0, 8.0, 8.0;
    BoxDomain log_box(lo, hi);

    auto objective = [&](const Vector& p) -> double {
        try {
            return lml_and_grad(sqdist, y_std, std::exp(p[0]), std::exp(p[1]), std::exp(p[2]),
                                nullptr);
        } catch (const SingularKernel&) {
            return -std::numeric_limits<double>::infinity();
        }
    };
    auto gradient = [&](const Vector& p) -> Vector {
        Vector g(3);
        try {
            lml_and_grad(sqdist, y_std, std::exp(p[0]), std::exp(p[1]), std::exp(p[2]), &g);
        } catch (const SingularKernel&) {
            g.setZero();
        }
        return g;
    };

    std::uniform_real_distribution<double> u(opts.log_param_low, opts.log_param_high);
    double best_lml = -std::numeric_limits<double>::infinity();
    Vector best_p = Vector::Zero(3);
    best_p[2] = log_noise_floor;

    AscentOptions ascent;
    ascent.max_iters = opts.max_iters;
    ascent.grad_tol = 1e-5;
    ascent.initial_step = 0.05;

    for (int r = 0; r < opts.restarts; ++r) {
        Vector p0(3);
        p0 << u(rng), u(rng), std::max(u(rng), log_noise_floor);
        AscentResult res = projected_gradient_ascent(objective, gradient, log_box, p0, ascent);
        if (res.value > best_lml) {
            best_lml = res.value;
            best_p = res.x;
        }
    }
    if (!std::isfinite(best_lml)) throw SingularKernel("fit_gp: no restart produced a finite fit");

    Hyperparams hyper;
    hyper.theta = std::exp(best_p[0]);
    hyper.gamma = std::exp(best_p[1]);
    hyper.noise_var = std::max(std::exp(best_p[2]), degenerate ? opts.noise_floor : 0.0);
    return GPPosterior(data, hyper, y_mean, y_scale);
}

}  // namespace lipbatch
