#include "lipbatch/benchmarks.hpp"

#include <cmath>

namespace lipbatch {

double gsobol(const Vector& x, const Vector& a) {
    if (x.size() != a.size() || x.size() < 1) throw ConfigError("gsobol: dimension mismatch");
    double prod = 1.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        prod *= (std::abs(4.0 * x[i] - 2.0) + a[i]) / (1.0 + a[i]);
    }
    return prod;
}

double cosines(const Vector& x) {
    if (x.size() != 2) throw ConfigError("cosines: requires a 2-vector");
    double s = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double u = 1.6 * x[i] - 0.5;
        s += u * u - 0.3 * std::cos(3.0 * M_PI * u);
    }
    return 1.0 - s;
}

double forrester(double x) {
    const double a = 6.0 * x - 2.0;
    return a * a * std::sin(12.0 * x - 4.0);
}

Benchmark make_benchmark(const std::string& name, int dim) {
    if (name == "gsobol") {
        if (dim < 1) throw ConfigError("gsobol: dimension must be >= 1");
        Vector a = Vector::Ones(dim);
        Benchmark b{name, BoxDomain::cube(dim, -5.0, 5.0),
                    [a](const Vector& x) { return gsobol(x, a); }, false, std::nullopt};
        b.known_opt = KnownOptimum{Vector::Constant(dim, 0.5), std::pow(2.0, -dim)};
        return b;
    }
    if (name == "cosines") {
        if (dim != 2) throw ConfigError("cosines: dimension must be 2");
        Benchmark b{name, BoxDomain::cube(2, 0.0, 5.0), [](const Vector& x) { return cosines(x); },
                    true, std::nullopt};
        b.known_opt = KnownOptimum{Vector::Constant(2, 0.3125), 1.6};
        return b;
    }
    if (name == "cosines_unit") {
        // Same surface restricted to the unit box, used by the Lipschitz
        // convergence study.
        if (dim != 2) throw ConfigError("cosines_unit: dimension must be 2");
        Benchmark b{name, BoxDomain::cube(2, 0.0, 1.0),
                    [](const Vector& x) { return cosines(x); }, true, std::nullopt};
        b.known_opt = KnownOptimum{Vector::Constant(2, 0.3125), 1.6};
        return b;
    }
    if (name == "forrester") {
        if (dim != 1) throw ConfigError("forrester: dimension must be 1");
        Benchmark b{name, BoxDomain::cube(1, 0.0, 1.0),
                    [](const Vector& x) { return forrester(x[0]); }, false, std::nullopt};
        Vector loc(1);
        loc << 0.757248757841856;
        b.known_opt = KnownOptimum{loc, -6.020740055767083};
        return b;
    }
    throw ConfigError("unknown benchmark: " + name);
}

}  // namespace lipbatch
