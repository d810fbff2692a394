#ifndef LIPBATCH_BENCHMARKS_HPP
#define LIPBATCH_BENCHMARKS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "lipbatch/domain.hpp"

namespace lipbatch {

using Objective = std::function<double(const Vector&)>;

struct KnownOptimum {
    Vector location;
    double value = 0.0;
};

/// A synthetic objective with its box and optimization direction.
struct Benchmark {
    std::string name;
    BoxDomain domain;
    Objective evaluate;     // noiseless
    bool maximize = false;  // direction of the original problem
    std::optional<KnownOptimum> known_opt;
};

/// prod_i (|4 x_i - 2| + a_i) / (1 + a_i), on [-5, 5]^d.
double gsobol(const Vector& x, const Vector& a);

/// 1 - sum_i [(1.6 x_i - 0.5)^2 - 0.3 cos(3 pi (1.6 x_i - 0.5))], 2-d, on [0, 5]^2.
double cosines(const Vector& x);

/// (6x - 2)^2 sin(12x - 4) on [0, 1].
double forrester(double x);

/// Lookup by name: "gsobol" (any d, a_i = 1), "cosines" (d = 2), "forrester" (d = 1).
Benchmark make_benchmark(const std::string& name, int dim);

/// Adds i.i.d. N(0, sigma^2) noise per evaluation; owns its rng stream.
class NoisyObjective {
public:
    NoisyObjective(Objective f, double sigma, std::uint64_t seed)
        : f_(std::move(f)), sigma_(sigma), rng_(seed) {
        if (sigma < 0.0) throw ConfigError("NoisyObjective: sigma must be >= 0");
    }

    double operator()(const Vector& x) {
        const double v = f_(x);
        if (sigma_ == 0.0) return v;
        std::normal_distribution<double> n(0.0, sigma_);
        return v + n(rng_);
    }

private:
    Objective f_;
    double sigma_;
    Rng rng_;
};

}  // namespace lipbatch

#endif  // LIPBATCH_BENCHMARKS_HPP
