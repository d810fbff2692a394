#include "lipbatch/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace lipbatch {

Matrix latin_hypercube(const BoxDomain& domain, int n, Rng& rng) {
    const int d = domain.dim();
    Matrix pts(n, d);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<int> perm(n);
    for (int j = 0; j < d; ++j) {
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const double lo = domain.lower()[j];
        const double w = domain.width()[j];
        for (int i = 0; i < n; ++i) {
            pts(i, j) = lo + w * ((perm[i] + u(rng)) / n);
        }
    }
    return pts;
}

}  // namespace lipbatch
