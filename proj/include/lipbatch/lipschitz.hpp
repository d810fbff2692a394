#ifndef LIPBATCH_LIPSCHITZ_HPP
#define LIPBATCH_LIPSCHITZ_HPP

#include <functional>

#include "lipbatch/gp.hpp"
#include "lipbatch/penalization.hpp"

namespace lipbatch {

enum class IncumbentMode { MaxY, MaxMu };

struct LipschitzEstimate {
    double value = kLipschitzFloor;
    Vector argmax_point;
    enum class Mode { Global, Local } mode = Mode::Global;
};

/// Incumbent estimate M: max observed y, or the maximized posterior mean.
double estimate_M(const GPPosterior& gp, IncumbentMode mode);

/// GP-based Lipschitz estimate: max over the domain of ||mean_gradient||,
/// located by a space-filling sample of 500*d points plus top-5 refinement.
LipschitzEstimate estimate_L_global(const GPPosterior& gp, Rng& rng);

/// Per-center variant: ||mean_gradient(x_j)||, floored.
double estimate_L_local(const GPPosterior& gp, const Vector& x_j);

struct LipschitzReport {
    long violations = 0;
    long pairs = 0;
    double violation_fraction = 0.0;
    double max_slope = 0.0;  // max |f(x1)-f(x2)| / ||x1-x2|| seen
};

/// Empirical check of |f(x1)-f(x2)| <= L ||x1-x2|| on random pairs.
LipschitzReport verify_lipschitz_bound(const std::function<double(const Vector&)>& f,
                                       const BoxDomain& domain, double L, long sample_pairs,
                                       Rng& rng);

}  // namespace lipbatch

#endif  // LIPBATCH_LIPSCHITZ_HPP
