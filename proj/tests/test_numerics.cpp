#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mobcone/numerics.hpp"

using namespace mobcone;

TEST_CASE("fd gradient of a linear function is exact") {
    Vec p{1.5, -2.0, 0.25};
    ScalarFn f = [&](const Vec& x) { return dot(p, x) + 3.0; };
    Vec x{0.3, -0.7, 1.1};
    Vec g = fd_gradient(f, x, 1e-5);
    for (int i = 0; i < 3; ++i) CHECK(std::fabs(g[i] - p[i]) < 1e-10);
}

TEST_CASE("fd hessian of a quadratic recovers Q") {
    Matrix Q(3);
    Q.at(0, 0) = 2.0;
    Q.at(1, 1) = -1.0;
    Q.at(2, 2) = 0.5;
    Q.at(0, 1) = Q.at(1, 0) = 0.7;
    Q.at(1, 2) = Q.at(2, 1) = -0.3;
    ScalarFn f = [&](const Vec& x) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s += 0.5 * Q.at(i, j) * x[i] * x[j];
        return s;
    };
    Vec x{0.2, 0.4, -0.6};
    Matrix H = fd_hessian(f, x, 1e-4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::fabs(H.at(i, j) - Q.at(i, j)) < 1e-7);
}

TEST_CASE("fd rejects non-finite stencils") {
    ScalarFn f = [](const Vec& x) { return std::log(x[0]); };
    CHECK_THROWS(fd_gradient(f, Vec{1e-9}, 1e-5));
}

TEST_CASE("sym_eigs on a diagonal matrix returns the sorted diagonal") {
    Matrix A(4);
    A.at(0, 0) = -1.0;
    A.at(1, 1) = 3.0;
    A.at(2, 2) = 0.5;
    A.at(3, 3) = 3.0;
    EigResult e = sym_eigs(A);
    CHECK(e.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(e.eigenvalues[1] == doctest::Approx(3.0));
    CHECK(e.eigenvalues[2] == doctest::Approx(0.5));
    CHECK(e.eigenvalues[3] == doctest::Approx(-1.0));
}

TEST_CASE("sym_eigs on cI + e e^T has the known spectrum") {
    const int n = 5;
    const double c = 0.7;
    Matrix A(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A.at(i, j) = (i == j ? c : 0.0) + 1.0;
    EigResult e = sym_eigs(A);
    CHECK(std::fabs(e.eigenvalues[0] - (c + n)) < 1e-12);
    for (int i = 1; i < n; ++i) CHECK(std::fabs(e.eigenvalues[i] - c) < 1e-12);
}

TEST_CASE("sym_eigs recovers a rotated diagonal and satisfies the residual contract") {
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(rng.uniform(0.0, 7.0));
        // random symmetric matrix
        Matrix A(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) A.at(i, j) = A.at(j, i) = rng.uniform(-2.0, 2.0);
        EigResult e = sym_eigs(A);
        double anorm = std::max(A.frobenius(), 1e-30);
        for (int k = 0; k < n; ++k) {
            Vec v(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) v[i] = e.vectors.at(i, k);
            Vec Av = A.mul(v);
            double resid = 0.0;
            for (int i = 0; i < n; ++i) resid += (Av[i] - e.eigenvalues[k] * v[i]) * (Av[i] - e.eigenvalues[k] * v[i]);
            CHECK(std::sqrt(resid) <= 1e-9 * anorm);
        }
        for (int k = 1; k < n; ++k) CHECK(e.eigenvalues[k - 1] >= e.eigenvalues[k]);
    }
}

TEST_CASE("sym_eigs rejects an asymmetric matrix") {
    Matrix A(2);
    A.at(0, 1) = 1.0;
    A.at(1, 0) = 0.5;
    CHECK_THROWS(sym_eigs(A));
}

TEST_CASE("bracketed_root finds sqrt(2)") {
    double r = bracketed_root([](double x) { return x * x - 2.0; }, 1.0, 2.0);
    CHECK(std::fabs(r - std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("bracketed_root requires a sign change") {
    CHECK_THROWS(bracketed_root([](double x) { return x * x + 1.0; }, 0.0, 1.0));
}

TEST_CASE("rk45 conserves the circle invariant of the delta=0 phase system") {
    // phi' = phi w, w' = -phi^2 keeps phi^2 + w^2 constant
    OdeRhs f = [](double, const Vec& y) { return Vec{y[0] * y[1], -y[0] * y[0]}; };
    OdeResult r = rk45(f, Vec{1.0, 0.0}, 0.0, 50.0, 1e-10, 1e-12);
    REQUIRE(r.status == OdeStatus::Completed);
    double drift = 0.0;
    for (const auto& p : r.samples) {
        double I = p.y[0] * p.y[0] + p.y[1] * p.y[1];
        drift = std::max(drift, std::fabs(I - 1.0));
    }
    CHECK(drift <= 1e-6);
}

TEST_CASE("rk45 event localization: exponential crossing of 1e8") {
    OdeRhs f = [](double, const Vec& y) { return Vec{y[0]}; };
    OdeEvent ev = [](double, const Vec& y) { return y[0] >= 1e8; };
    OdeResult r = rk45(f, Vec{1.0}, 0.0, 30.0, 1e-10, 1e-12, ev);
    REQUIRE(r.status == OdeStatus::EventHit);
    CHECK(std::fabs(r.event_time - std::log(1e8)) < 1e-6);
}

TEST_CASE("rk45 dense output hits requested times exactly") {
    OdeRhs f = [](double, const Vec& y) { return Vec{y[0]}; };
    std::vector<double> times{0.25, 0.5, 1.0, 1.75};
    OdeResult r = rk45(f, Vec{1.0}, 0.0, 2.0, 1e-10, 1e-12, nullptr, times);
    REQUIRE(r.status == OdeStatus::Completed);
    for (double t : times) {
        bool found = false;
        for (const auto& p : r.samples)
            if (p.t == t) {
                found = true;
                CHECK(std::fabs(p.y[0] - std::exp(t)) < 1e-9 * std::exp(t));
            }
        CHECK(found);
    }
}

TEST_CASE("rng streams are deterministic under a fixed seed") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
    SphereSampler sa(4, 9), sb(4, 9);
    for (int i = 0; i < 50; ++i) {
        Vec pa = sa.next(), pb = sb.next();
        for (int d = 0; d < 4; ++d) CHECK(pa[d] == pb[d]);
        CHECK(std::fabs(norm2(pa) - 1.0) < 1e-12);
    }
}

TEST_CASE("inverse normal cdf matches erf-based probabilities") {
    // Phi(x) = (1 + erf(x/sqrt(2)))/2; check the round trip
    for (double x : {-2.5, -1.0, -0.1, 0.0, 0.3, 1.7, 3.0}) {
        double p = 0.5 * (1.0 + std::erf(x / std::sqrt(2.0)));
        if (p <= 0.0 || p >= 1.0) continue;
        CHECK(std::fabs(inverse_normal_cdf(p) - x) < 2e-8);
    }
}

TEST_CASE("tolerance profile validation") {
    ToleranceProfile t;
    CHECK_NOTHROW(t.validate());
    t.ode_rtol = -1.0;
    CHECK_THROWS(t.validate());
}
