#ifndef LIPBATCH_RECORD_HPP
#define LIPBATCH_RECORD_HPP

#include <string>
#include <vector>

#include "lipbatch/domain.hpp"

namespace lipbatch {

/// One objective evaluation within a run.
struct StepRecord {
    int replicate = 0;
    int iteration = 0;    // 0 = initial design
    int batch_index = 0;  // position inside the batch / initial design
    Vector x;
    double y = 0.0;            // observed value of the minimized objective
    double best_so_far = 0.0;  // running minimum
    double design_time_s = 0.0;
    double eval_time_s = 0.0;   // max over the batch (parallel semantics)
    double wall_clock_s = 0.0;  // cumulative since run start
};

/// Per-replicate trace plus the posterior-mean answer of the final refit.
struct ExperimentRecord {
    std::vector<StepRecord> rows;
    Vector final_x;
    double final_best = 0.0;  // best_so_far at the end of the trace

    double best_at_end() const { return rows.empty() ? 0.0 : rows.back().best_so_far; }
};

}  // namespace lipbatch

#endif  // LIPBATCH_RECORD_HPP
