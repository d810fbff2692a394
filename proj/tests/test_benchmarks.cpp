#include <doctest.h>

#include <cmath>

#include "lipbatch/benchmarks.hpp"
#include "test_util.hpp"

using namespace lipbatch;
using namespace lipbatch::test;

TEST_CASE("gsobol closed forms") {
    Vector a = Vector::Ones(1);
    Vector x(1);
    x << 0.5;
    CHECK(gsobol(x, a) == doctest::Approx(0.5));  // |0|+1 over 2
    x << 0.0;
    CHECK(gsobol(x, a) == doctest::Approx(1.5));
    x << 1.0;
    CHECK(gsobol(x, a) == doctest::Approx(1.5));

    Vector a2 = Vector::Ones(2);
    Vector x2 = Vector::Constant(2, 0.5);
    CHECK(gsobol(x2, a2) == doctest::Approx(0.25));
}

TEST_CASE("gsobol benchmark minimum on a grid") {
    Benchmark bench = make_benchmark("gsobol", 2);
    CHECK_FALSE(bench.maximize);
    REQUIRE(bench.known_opt.has_value());
    const double f_opt = bench.evaluate(bench.known_opt->location);
    CHECK(f_opt == doctest::Approx(bench.known_opt->value));
    CHECK(f_opt == doctest::Approx(0.25));

    double grid_min = 1e300;
    for (int i = 0; i <= 200; ++i)
        for (int j = 0; j <= 200; ++j) {
            Vector x(2);
            x << -5.0 + 10.0 * i / 200.0, -5.0 + 10.0 * j / 200.0;
            grid_min = std::min(grid_min, bench.evaluate(x));
        }
    CHECK(f_opt <= grid_min + 1e-12);
}

TEST_CASE("cosines closed forms and maximum") {
    Vector origin = Vector::Zero(2);
    // u = -0.5 per axis: 0.25 - 0.3 cos(-3 pi / 2) = 0.25, so f = 1 - 0.5.
    CHECK(cosines(origin) == doctest::Approx(0.5));

    Benchmark bench = make_benchmark("cosines", 2);
    CHECK(bench.maximize);
    REQUIRE(bench.known_opt.has_value());
    CHECK(bench.evaluate(bench.known_opt->location) == doctest::Approx(1.6).epsilon(1e-6));

    double grid_max = -1e300;
    for (int i = 0; i <= 400; ++i)
        for (int j = 0; j <= 400; ++j) {
            Vector x(2);
            x << 5.0 * i / 400.0, 5.0 * j / 400.0;
            grid_max = std::max(grid_max, bench.evaluate(x));
        }
    CHECK(grid_max == doctest::Approx(1.6).epsilon(1e-4));
    CHECK(bench.known_opt->value >= grid_max - 1e-6);
}

TEST_CASE("cosines_unit shares the surface and the optimum") {
    Benchmark unit = make_benchmark("cosines_unit", 2);
    CHECK(unit.domain.lower()[0] == doctest::Approx(0.0));
    CHECK(unit.domain.upper()[0] == doctest::Approx(1.0));
    Vector x = Vector::Constant(2, 0.3125);
    CHECK(unit.evaluate(x) == doctest::Approx(cosines(x)));
    CHECK(unit.domain.contains(unit.known_opt->location));
}

TEST_CASE("forrester closed forms and minimum") {
    CHECK(forrester(1.0 / 3.0) == doctest::Approx(0.0));
    CHECK(forrester(0.0) == doctest::Approx(4.0 * std::sin(-4.0)));

    Benchmark bench = make_benchmark("forrester", 1);
    double grid_min = 1e300, grid_arg = 0.0;
    for (int i = 0; i <= 1000000; ++i) {
        const double x = i / 1000000.0;
        const double v = forrester(x);
        if (v < grid_min) {
            grid_min = v;
            grid_arg = x;
        }
    }
    CHECK(grid_min == doctest::Approx(bench.known_opt->value).epsilon(1e-9));
    CHECK(std::abs(grid_arg - bench.known_opt->location[0]) < 1e-5);
}

TEST_CASE("unknown benchmark and bad dimensions are rejected") {
    CHECK_THROWS_AS(make_benchmark("nope", 2), ConfigError);
    CHECK_THROWS_AS(make_benchmark("cosines", 3), ConfigError);
    CHECK_THROWS_AS(make_benchmark("forrester", 2), ConfigError);
    CHECK_THROWS_AS(make_benchmark("gsobol", 0), ConfigError);
}

TEST_CASE("noisy objective wrapper") {
    auto f = [](const Vector& x) { return x.sum(); };
    Vector x = Vector::Constant(2, 0.25);

    NoisyObjective clean(f, 0.0, 7);
    CHECK(clean(x) == doctest::Approx(0.5));

    // Sample standard deviation of the injected noise.
    NoisyObjective noisy(f, 0.25, 7);
    const long n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < n; ++i) {
        const double e = noisy(x) - 0.5;
        sum += e;
        sumsq += e * e;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sumsq / n - mean * mean);
    CHECK(sd == doctest::Approx(0.25).epsilon(0.04));
    CHECK(std::abs(mean) < 0.01);

    // Same seed, same stream.
    NoisyObjective a(f, 0.1, 42), b(f, 0.1, 42);
    for (int i = 0; i < 20; ++i) CHECK(a(x) == b(x));
}
