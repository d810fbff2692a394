#ifndef LIPBATCH_SAMPLING_HPP
#define LIPBATCH_SAMPLING_HPP

#include "lipbatch/domain.hpp"

namespace lipbatch {

/// Latin hypercube sample of n points in the box; one stratum per point per axis.
Matrix latin_hypercube(const BoxDomain& domain, int n, Rng& rng);

}  // namespace lipbatch

#endif  // LIPBATCH_SAMPLING_HPP
