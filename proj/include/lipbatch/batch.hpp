#ifndef LIPBATCH_BATCH_HPP
#define LIPBATCH_BATCH_HPP

#include <optional>

#include "lipbatch/benchmarks.hpp"
#include "lipbatch/lipschitz.hpp"
#include "lipbatch/penalization.hpp"
#include "lipbatch/record.hpp"

namespace lipbatch {

enum class StrategyKind { Sequential, LP, LPLocal, Rand, Pred };

struct BatchStrategy {
    StrategyKind kind = StrategyKind::LP;
    int batch_size = 5;  // sequential strategies behave as batch_size 1
    AcquisitionSpec acquisition = AcquisitionSpec::make_ei();
    int opt_seeds = 10;       // multi-start budget for acquisition maximization
    int fit_restarts = 10;    // hyperparameter restarts per refit
    IncumbentMode incumbent_mode = IncumbentMode::MaxY;
    std::optional<double> forced_L;  // overrides the GP-LCA estimate when set
};

struct BatchPlan {
    std::vector<Vector> points;
};

/// Loop state of one optimization run. The GP models the maximized internal
/// objective (the negated minimization target).
struct RunState {
    Dataset data;
    GPPosterior gp;
    int iteration = 0;

    RunState(Dataset d, GPPosterior g) : data(std::move(d)), gp(std::move(g)) {}
};

/// Algorithm: estimate L and M once per batch, then alternate maximization of
/// the penalized acquisition and penalization at the chosen point. With
/// local_L, each penalizer uses the gradient norm at its own center.
BatchPlan design_batch_lp(const RunState& state, const BatchStrategy& strategy, bool local_L,
                          Rng& rng);

/// First point maximizes the acquisition; the rest are uniform in the domain.
BatchPlan design_batch_rand(const RunState& state, const BatchStrategy& strategy, Rng& rng);

/// Greedy fake-observation strategy: after each proposal, condition a scoped
/// copy of the posterior on (x, mu(x)) with hyperparameters frozen.
BatchPlan design_batch_pred(const RunState& state, const BatchStrategy& strategy, Rng& rng);

BatchPlan design_batch(const RunState& state, const BatchStrategy& strategy, Rng& rng);

struct RunOutcome {
    ExperimentRecord record;
    bool ok = true;
    std::string error;
};

/// Full optimization loop: Latin-hypercube initial design, refit + batch design
/// + parallel-semantics evaluation per round, final answer from the posterior
/// mean of a closing refit. Minimizes `objective`. Deterministic given seed.
RunOutcome run_bbo(const Objective& objective, const BoxDomain& domain,
                   const BatchStrategy& strategy, int budget_iters, int init_size,
                   std::uint64_t seed);

}  // namespace lipbatch

#endif  // LIPBATCH_BATCH_HPP
