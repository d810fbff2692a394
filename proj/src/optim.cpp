#include "lipbatch/optim.hpp"

#include <cmath>
#include <limits>

namespace lipbatch {

AscentResult projected_gradient_ascent(const ObjectiveFn& f, const GradientFn& grad,
                                       const BoxDomain& domain, const Vector& x0,
                                       const AscentOptions& opts) {
    AscentResult res;
    res.x = domain.clamp(x0);
    res.value = f(res.x);
    if (!std::isfinite(res.value)) return res;

    const double scale = domain.width().mean();
    double step = opts.initial_step * scale;

    for (int it = 0; it < opts.max_iters; ++it) {
        res.iters = it + 1;
        Vector g = grad(res.x);
        if (!g.allFinite()) break;
        const double gnorm = g.norm();
        if (gnorm <= opts.grad_tol) break;

        // Backtrack until the projected step improves the objective.
        bool accepted = false;
        double s = step;
        while (s > opts.min_step * scale) {
            Vector cand = domain.clamp(res.x + (s / gnorm) * g);
            if ((cand - res.x).norm() < opts.min_step * scale) break;
            const double v = f(cand);
            if (std::isfinite(v) && v > res.value + 1e-12 * std::abs(res.value)) {
                res.x = std::move(cand);
                res.value = v;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted) break;
        step = std::min(2.0 * s, 10.0 * scale);
    }
    return res;
}

}  // namespace lipbatch
