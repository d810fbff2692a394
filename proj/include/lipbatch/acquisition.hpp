#ifndef LIPBATCH_ACQUISITION_HPP
#define LIPBATCH_ACQUISITION_HPP

#include "lipbatch/gp.hpp"

namespace lipbatch {

enum class AcquisitionKind { EI, UCB };
enum class TransformKind { Identity, Softplus, Exp };

/// The library always maximizes its internal objective; minimization problems
/// negate f at the boundary.
struct AcquisitionSpec {
    AcquisitionKind kind = AcquisitionKind::EI;
    double kappa = 2.0;  // UCB only
    TransformKind transform = TransformKind::Identity;

    static AcquisitionSpec make_ei() { return {AcquisitionKind::EI, 0.0, TransformKind::Identity}; }
    static AcquisitionSpec make_ucb(double kappa) {
        return {AcquisitionKind::UCB, kappa, TransformKind::Softplus};
    }
};

/// Expected improvement over y_best; sigma = 0 degenerates to max(mu - y_best, 0).
double ei(double mu, double sigma, double y_best);

double ucb(double mu, double sigma, double kappa);

/// Best observed value under the maximization convention.
double best_observed(const GPPosterior& gp);

double acquisition_value(const GPPosterior& gp, const AcquisitionSpec& spec, const Vector& x);
Vector acquisition_grad(const GPPosterior& gp, const AcquisitionSpec& spec, const Vector& x);

/// Positivity transforms g and their derivatives; softplus is overflow-safe.
double transform(TransformKind kind, double z);
double transform_deriv(TransformKind kind, double z);

}  // namespace lipbatch

#endif  // LIPBATCH_ACQUISITION_HPP
