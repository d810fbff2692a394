#ifndef LIPBATCH_PENALIZATION_HPP
#define LIPBATCH_PENALIZATION_HPP

#include <vector>

#include "lipbatch/acquisition.hpp"

namespace lipbatch {

inline constexpr double kSigmaCenterFloor = 1e-6;
inline constexpr double kLipschitzFloor = 1e-7;

/// One local penalizer: center, posterior stats at the center, Lipschitz
/// constant and incumbent estimate M.
struct PenalizerParams {
    Vector center;
    double mu_c = 0.0;
    double sigma_c = kSigmaCenterFloor;
    double lipschitz = kLipschitzFloor;
    double incumbent = 0.0;  // M

    PenalizerParams() = default;
    PenalizerParams(Vector center_, double mu, double sigma, double L, double M)
        : center(std::move(center_)),
          mu_c(mu),
          sigma_c(std::max(sigma, kSigmaCenterFloor)),
          lipschitz(std::max(L, kLipschitzFloor)),
          incumbent(M) {}

    /// Build from posterior stats at the center.
    static PenalizerParams at(const GPPosterior& gp, Vector center, double L, double M);
};

/// phi(x; x_j) = 1/2 erfc(-z), z = (L ||x - x_j|| - M + mu_c) / sqrt(2 sigma_c^2).
double penalizer_value(const PenalizerParams& p, const Vector& x);

/// Analytic derivative of penalizer_value; zero vector at x = x_j.
Vector penalizer_grad(const PenalizerParams& p, const Vector& x);

/// g(alpha(x)) * prod_j phi_j(x), with evaluation and gradient in log space.
class PenalizedAcquisition {
public:
    PenalizedAcquisition(const GPPosterior& gp, AcquisitionSpec spec) : gp_(&gp), spec_(spec) {}

    void add_penalizer(PenalizerParams p) { penalizers_.push_back(std::move(p)); }
    const std::vector<PenalizerParams>& penalizers() const { return penalizers_; }
    const GPPosterior& gp() const { return *gp_; }
    const AcquisitionSpec& spec() const { return spec_; }

    double value(const Vector& x) const;
    /// ln(value), computed underflow-safely (never -inf unless value is 0).
    double log_value(const Vector& x) const;
    /// Gradient of ln(value). Throws NonPositiveValue for the identity
    /// transform when alpha(x) <= 0.
    Vector log_grad(const Vector& x) const;

private:
    const GPPosterior* gp_;
    AcquisitionSpec spec_;
    std::vector<PenalizerParams> penalizers_;
};

struct MaximizeOptions {
    int seeds = 10;
    int max_iters = 200;
    double grad_tol = 1e-6;
    std::vector<Vector> warm_starts;  // extra ascent starts (e.g. incumbent points)
};

/// Multi-start projected gradient ascent on ln(penalized value): Latin-hypercube
/// seeds plus the penalizer centers perturbed. Deterministic given the rng state.
Vector maximize_penalized(const PenalizedAcquisition& pa, const BoxDomain& domain, int seeds,
                          Rng& rng, const MaximizeOptions& opts = {});

}  // namespace lipbatch

#endif  // LIPBATCH_PENALIZATION_HPP
