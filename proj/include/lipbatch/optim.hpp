#ifndef LIPBATCH_OPTIM_HPP
#define LIPBATCH_OPTIM_HPP

#include <functional>

#include "lipbatch/domain.hpp"

namespace lipbatch {

using ObjectiveFn = std::function<double(const Vector&)>;
using GradientFn = std::function<Vector(const Vector&)>;

struct AscentOptions {
    int max_iters = 200;
    double grad_tol = 1e-6;
    double initial_step = 1.0;   // relative to the mean box width
    double min_step = 1e-14;
};

struct AscentResult {
    Vector x;
    double value = 0.0;
    int iters = 0;
};

/// Projected gradient ascent with backtracking line search inside a box.
/// Maximizes f; iterates stay clamped to the domain.
AscentResult projected_gradient_ascent(const ObjectiveFn& f, const GradientFn& grad,
                                       const BoxDomain& domain, const Vector& x0,
                                       const AscentOptions& opts = {});

}  // namespace lipbatch

#endif  // LIPBATCH_OPTIM_HPP
