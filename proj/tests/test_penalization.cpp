#include <doctest.h>

#include <cmath>

#include "lipbatch/penalization.hpp"
#include "test_util.hpp"

using namespace lipbatch;
using namespace lipbatch::test;

namespace {

PenalizerParams sample_params(Rng& rng, int d = 2) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vector center(d);
    for (int j = 0; j < d; ++j) center[j] = -1.0 + 2.0 * u(rng);
    const double mu_c = -1.0 + 2.0 * u(rng);
    const double sigma_c = 0.2 + 1.5 * u(rng);
    const double L = 0.5 + 4.0 * u(rng);
    const double M = mu_c + 2.0 * u(rng);
    return PenalizerParams(center, mu_c, sigma_c, L, M);
}

}  // namespace

TEST_CASE("penalizer closed forms") {
    PenalizerParams p(Vector::Zero(2), 1.0, 1.0, 2.0, 1.0);  // mu_c = M
    CHECK(penalizer_value(p, Vector::Zero(2)) == doctest::Approx(0.5));

    PenalizerParams q(Vector::Zero(1), 0.0, 1.0, 2.0, 1.0);
    Vector x(1);
    x << 1.0;  // z = 1/sqrt(2)
    CHECK(penalizer_value(q, x) == doctest::Approx(0.8413447).epsilon(1e-6));

    Vector far(1);
    far << 1e6;
    CHECK(penalizer_value(q, far) >= 1.0 - 1e-12);
}

TEST_CASE("penalizer matches the exclusion-probability Monte-Carlo oracle") {
    Rng rng(211);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        PenalizerParams p = sample_params(rng, 1);
        const double dist = 0.05 + 2.0 * u(rng);
        Vector x = p.center;
        x[0] += dist;
        const double closed = penalizer_value(p, x);

        // P(r_j <= dist), r_j = (M - f_j)/L, f_j ~ N(mu_c, sigma_c^2)
        long hits = 0;
        const long n = 1000000;
        for (long i = 0; i < n; ++i) {
            const double f_j = p.mu_c + p.sigma_c * gauss(rng);
            if ((p.incumbent - f_j) / p.lipschitz <= dist) ++hits;
        }
        CHECK(std::abs(closed - static_cast<double>(hits) / n) <= 3e-3);
    }
}

TEST_CASE("penalizer satisfies the local-penalizer definition on rays") {
    Rng rng(223);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        PenalizerParams p = sample_params(rng);
        Vector dir(2);
        dir << std::cos(2 * M_PI * u(rng)), std::sin(2 * M_PI * u(rng));
        double prev = penalizer_value(p, p.center);
        for (double r = 0.0; r <= 5.0; r += 0.05) {
            const double v = penalizer_value(p, p.center + r * dir);
            CHECK(v > 0.0);
            CHECK(v <= 1.0);  // rounds to exactly 1.0 in double far from the center
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("penalizer gradient matches finite differences") {
    Rng rng(227);
    for (int trial = 0; trial < 25; ++trial) {
        PenalizerParams p = sample_params(rng);
        Vector x = p.center;
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        for (int j = 0; j < 2; ++j) x[j] += u(rng);
        if ((x - p.center).norm() < 1e-3) continue;
        auto f = [&](const Vector& xx) { return penalizer_value(p, xx); };
        Vector g = penalizer_grad(p, x);
        CHECK(rel_err(g, fd_gradient(f, x, 1e-7)) < 1e-5);
        // Points away from the center.
        CHECK(g.dot(x - p.center) > 0.0);
    }
}

TEST_CASE("penalizer gradient is zero at the center") {
    Rng rng(229);
    PenalizerParams p = sample_params(rng);
    CHECK(penalizer_grad(p, p.center).norm() == 0.0);
}

TEST_CASE("larger L or mu_c closer to M weakens the penalty") {
    PenalizerParams base(Vector::Zero(1), 0.0, 1.0, 1.0, 2.0);
    PenalizerParams big_l(Vector::Zero(1), 0.0, 1.0, 3.0, 2.0);
    PenalizerParams close_mu(Vector::Zero(1), 1.5, 1.0, 1.0, 2.0);
    for (double r = 0.1; r <= 4.0; r += 0.1) {
        Vector x(1);
        x << r;
        CHECK(penalizer_value(big_l, x) > penalizer_value(base, x));
        CHECK(penalizer_value(close_mu, x) > penalizer_value(base, x));
    }
}

TEST_CASE("penalized value composition") {
    Rng rng(233);
    Dataset data = random_dataset(10, 2, rng, 0.05);
    GPPosterior gp(data, {1.0, 1.0, 0.02});
    AcquisitionSpec spec = AcquisitionSpec::make_ucb(2.0);

    PenalizedAcquisition empty(gp, spec);
    PenalizedAcquisition one(gp, spec);
    Vector c = Vector::Zero(2);
    one.add_penalizer(PenalizerParams(c, 1.0, 1.0, 2.0, 1.0));  // mu_c = M, phi(c) = 1/2

    for (int t = 0; t < 50; ++t) {
        Vector x = data.domain.sample_uniform(rng);
        const double g = transform(spec.transform, acquisition_value(gp, spec, x));
        CHECK(empty.value(x) == doctest::Approx(g));
        CHECK(one.value(x) <= g + 1e-12);
    }
    CHECK(one.value(c) == doctest::Approx(0.5 * transform(spec.transform,
                                                          acquisition_value(gp, spec, c))));
}

TEST_CASE("empty-penalizer argmax agrees across transforms on a grid") {
    Rng rng(239);
    Dataset data = random_dataset(8, 1, rng, 0.02);
    GPPosterior gp(data, {1.0, 2.0, 0.02});
    for (auto kind : {TransformKind::Identity, TransformKind::Softplus, TransformKind::Exp}) {
        AcquisitionSpec spec = AcquisitionSpec::make_ei();
        spec.transform = kind;
        PenalizedAcquisition pa(gp, spec);
        double best_alpha = -1e300, best_pen = -1e300;
        int arg_alpha = -1, arg_pen = -1;
        for (int i = 0; i <= 500; ++i) {
            Vector x(1);
            x << -1.0 + 2.0 * i / 500.0;
            const double a = acquisition_value(gp, spec, x);
            const double v = pa.value(x);
            if (a > best_alpha) {
                best_alpha = a;
                arg_alpha = i;
            }
            if (v > best_pen) {
                best_pen = v;
                arg_pen = i;
            }
        }
        CHECK(arg_alpha == arg_pen);
    }
}

TEST_CASE("log gradient of the penalized acquisition") {
    Rng rng(241);
    Dataset data = random_dataset(12, 2, rng, 0.05);
    GPPosterior gp(data, {1.0, 1.2, 0.02});

    SUBCASE("exp transform with no penalizers reduces to the acquisition gradient") {
        AcquisitionSpec spec = AcquisitionSpec::make_ucb(2.0);
        spec.transform = TransformKind::Exp;
        PenalizedAcquisition pa(gp, spec);
        for (int t = 0; t < 10; ++t) {
            Vector x = data.domain.sample_uniform(rng);
            CHECK((pa.log_grad(x) - acquisition_grad(gp, spec, x)).norm() == 0.0);
        }
    }

    SUBCASE("softplus transform matches finite differences of the log value") {
        AcquisitionSpec spec = AcquisitionSpec::make_ucb(2.0);
        PenalizedAcquisition pa(gp, spec);
        pa.add_penalizer(PenalizerParams(Vector::Constant(2, 0.3), 0.2, 0.8, 2.0, 1.0));
        pa.add_penalizer(PenalizerParams(Vector::Constant(2, -0.5), -0.1, 0.5, 1.5, 1.0));
        auto f = [&](const Vector& x) { return pa.log_value(x); };
        int checked = 0;
        for (int t = 0; t < 40 && checked < 20; ++t) {
            Vector x = data.domain.sample_uniform(rng);
            bool near = false;
            for (const auto& p : pa.penalizers())
                if ((x - p.center).norm() < 1e-2) near = true;
            if (near) continue;
            ++checked;
            CHECK(rel_err(pa.log_grad(x), fd_gradient(f, x, 1e-6)) < 1e-5);
        }
        CHECK(checked >= 10);
    }

    SUBCASE("a far-away penalizer leaves the gradient unchanged") {
        AcquisitionSpec spec = AcquisitionSpec::make_ucb(2.0);
        PenalizedAcquisition bare(gp, spec);
        PenalizedAcquisition far(gp, spec);
        far.add_penalizer(PenalizerParams(Vector::Constant(2, 1e5), 0.0, 1.0, 2.0, 1.0));
        for (int t = 0; t < 10; ++t) {
            Vector x = data.domain.sample_uniform(rng);
            CHECK((bare.log_grad(x) - far.log_grad(x)).norm() <= 1e-8);
        }
    }

    SUBCASE("identity transform rejects nonpositive acquisitions") {
        AcquisitionSpec spec = AcquisitionSpec::make_ucb(0.0);
        spec.transform = TransformKind::Identity;
        // Shift the data so the posterior mean is negative somewhere.
        Vector y_neg = data.y.array() - 50.0;
        Dataset neg(data.X, y_neg, data.domain);
        GPPosterior gp_neg(neg, {1.0, 1.2, 0.02});
        PenalizedAcquisition pa(gp_neg, spec);
        CHECK_THROWS_AS(pa.log_grad(Vector::Zero(2)), NonPositiveValue);
    }
}

TEST_CASE("maximize_penalized finds the peak of a single-observation posterior") {
    Matrix X(1, 1);
    X << 0.3;
    Vector y(1);
    y << 2.0;
    BoxDomain dom = BoxDomain::cube(1, 0.0, 1.0);
    Dataset data(X, y, dom);
    GPPosterior gp(data, {1.0, 30.0, 0.0});
    AcquisitionSpec spec = AcquisitionSpec::make_ucb(50.0);  // mean term dominates near x_1
    PenalizedAcquisition pa(gp, spec);

    // Dense-grid oracle for the peak.
    double best_v = -1e300;
    double best_x = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        Vector x(1);
        x << i / 10000.0;
        const double v = pa.log_value(x);
        if (v > best_v) {
            best_v = v;
            best_x = x[0];
        }
    }

    Rng rng(251);
    Vector got = maximize_penalized(pa, dom, 10, rng);
    CHECK(std::abs(got[0] - best_x) < 1e-3);

    Rng rng_a(77), rng_b(77);
    Vector a = maximize_penalized(pa, dom, 10, rng_a);
    Vector b = maximize_penalized(pa, dom, 10, rng_b);
    CHECK((a - b).norm() == 0.0);
}
