#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mobcone/symfun.hpp"

using namespace mobcone;

namespace {
EigenTuple tup(std::initializer_list<double> v) { return EigenTuple(Vec(v)); }

// brute-force sigma_k by explicit subset enumeration: the independent
// oracle for the recursion-based evaluator
double sigma_brute(const Vec& lam, int k) {
    const int n = static_cast<int>(lam.size());
    double total = 0.0;
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
        double prod = 1.0;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) prod *= lam[static_cast<std::size_t>(i)];
        total += prod;
    }
    return total;
}
}  // namespace

TEST_CASE("sigma_k evaluator against subset enumeration") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng.uniform(0.0, 5.0));
        Vec lam = rng.normal_vec(n);
        EigenTuple t(lam);
        for (int k = 1; k <= n; ++k) {
            double brute = sigma_brute(t.values(), k);
            double fast = SymFun::sigma_k(n, k)(t);
            CHECK(std::fabs(fast - brute) <= 1e-12 * (1.0 + std::fabs(brute)));
        }
    }
    // sigma_2 at e with n = 3 counts the pairs
    CHECK(SymFun::sigma_k(3, 2)(tup({1, 1, 1})) == doctest::Approx(3.0));
}

TEST_CASE("analytic gradients match finite differences") {
    Rng rng(5);
    ToleranceProfile tol;
    std::vector<SymFun> funs = {SymFun::sigma_k(4, 2), SymFun::sigma_k(4, 3),
                                SymFun::weitzenbock(4, 2), SymFun::lambda_range_sum(4, 2, 1),
                                SymFun::circular(4, 0.4), SymFun::ordered_linear({2, 1.5, 1, 0.5})};
    for (const auto& f : funs) {
        for (int s = 0; s < 20; ++s) {
            // spaced entries keep the sort stable under the FD stencil
            Vec lam(4);
            for (int i = 0; i < 4; ++i) lam[static_cast<std::size_t>(i)] = 3.0 - i + rng.uniform(-0.3, 0.3);
            EigenTuple t(lam);
            Vec g = f.gradient(t);
            ScalarFn fn = [&f](const Vec& v) { return f(EigenTuple(v)); };
            Vec fd = fd_gradient(fn, t.values(), 1e-6 * (1.0 + t.norm()));
            for (int i = 0; i < 4; ++i) CHECK(std::fabs(g[static_cast<std::size_t>(i)] - fd[static_cast<std::size_t>(i)]) < 1e-5);
        }
    }
}

TEST_CASE("homogeneity degrees across the built-in families") {
    Rng rng(9);
    std::vector<SymFun> funs = {SymFun::sigma_k(3, 2),        SymFun::sigma_k_root(3, 2),
                                SymFun::weitzenbock(3, 1),    SymFun::lambda_range_sum(3, 1, 1),
                                SymFun::circular(3, -0.3),    SymFun::ordered_linear({1, 1, 0.5})};
    ConeSpec gamma2 = ConeSpec::gamma_k(3, 2);
    for (const auto& f : funs) {
        for (int s = 0; s < 30; ++s) {
            EigenTuple x = sample_interior(gamma2, rng);
            double base = f(x);
            for (double t : {0.5, 2.0, 10.0}) {
                double lhs = f(x.scaled(t));
                double rhs = std::pow(t, f.degree()) * base;
                CHECK(std::fabs(lhs - rhs) <= 1e-10 * (1.0 + std::fabs(rhs)));
            }
        }
    }
}

TEST_CASE("weitzenbock weights and the pinned constant") {
    // G_p(t e) = t * 2 p (n - p); the normalizing ratio makes the value 1
    for (int n : {3, 4, 5}) {
        for (int p = 1; p <= n - 1; ++p) {
            SymFun g = SymFun::weitzenbock(n, p);
            double t = 1.0 / (2.0 * p * (n - p));
            CHECK(g(EigenTuple::ones(n).scaled(t)) == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("circular family: pinned zero at lambda-star and origin gradient error") {
    int n = 4;
    double c = (n - 2) / std::sqrt(static_cast<double>(n));
    SymFun f = SymFun::circular(n, c);
    CHECK(std::fabs(f(EigenTuple::lambda_star(n))) < 1e-12);
    CHECK_THROWS(SymFun::circular(3, 1.2));
    CHECK_THROWS(f.gradient(EigenTuple(Vec(4, 0.0))));
}

TEST_CASE("sigma_k_root raises outside its cone") {
    SymFun f = SymFun::sigma_k_root(3, 2);
    CHECK_THROWS_AS(f(tup({1.0, -1.0, -1.0})), std::domain_error);
    CHECK(f(tup({2.0, 2.0, 2.0})) == doctest::Approx(std::sqrt(12.0)));
}

TEST_CASE("gauge of a homogeneous level set reproduces the function") {
    // V = { sigma_1 > 1 }
    LevelSetSpec V;
    V.n = 3;
    V.f0 = SymFun::sigma_k(3, 1);
    SymFun f = gauge_from_levelset(V);
    Rng rng(21);
    ConeSpec gamma1 = ConeSpec::gamma_k(3, 1);
    for (int s = 0; s < 1000; ++s) {
        EigenTuple x = sample_interior(gamma1, rng);
        double expect = x.sum();
        CHECK(std::fabs(f(x) - expect) <= 1e-8 * (1.0 + std::fabs(expect)));
    }
    // homogeneity of the gauge itself
    for (int s = 0; s < 1000; ++s) {
        EigenTuple x = sample_interior(gamma1, rng);
        double base = f(x);
        for (double t : {0.5, 2.0})
            CHECK(std::fabs(f(x.scaled(t)) - t * base) <= 1e-10 * (1.0 + std::fabs(base)));
    }
}

TEST_CASE("gauge of the circular level set reproduces the circular function") {
    double c = 0.4;
    LevelSetSpec V;
    V.n = 3;
    V.f0 = SymFun::circular(3, c);
    SymFun f = gauge_from_levelset(V);
    SymFun expect = SymFun::circular(3, c);
    Rng rng(23);
    ConeSpec circ = ConeSpec::circular(3, c);
    for (int s = 0; s < 1000; ++s) {
        EigenTuple x = sample_interior(circ, rng);
        CHECK(std::fabs(f(x) - expect(x)) <= 1e-8 * (1.0 + std::fabs(expect(x))));
    }
}

TEST_CASE("gauge equals one on sampled boundary points of V") {
    ConeSpec circ = ConeSpec::circular(3, 0.25);
    LevelSetSpec V = levelset_from_cone(circ);
    SymFun f = gauge_from_levelset(V);
    Rng rng(27);
    int checked = 0;
    for (int s = 0; s < 100; ++s) {
        EigenTuple x = sample_interior(circ, rng);
        auto c = ray_scaling(V, x);
        REQUIRE(c.has_value());
        EigenTuple b = x.scaled(*c);
        CHECK(std::fabs(f(b) - 1.0) <= 1e-8);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("ray scaling rejects level sets crossed more than once along a ray") {
    // sigma_1 + 5 sin(sigma_1) crosses any moderate level three times
    LevelSetSpec V;
    V.n = 3;
    V.f0 = SymFun(3, 0.0,
                  [](const EigenTuple& t) { return (t.sum() + 5.0 * std::sin(t.sum())) / 4.0; },
                  nullptr, false, "wiggly");
    CHECK_THROWS_AS(ray_scaling(V, EigenTuple::ones(3)), std::runtime_error);
}

TEST_CASE("normal identity rejects points violating the inward-normal condition") {
    LevelSetSpec V;
    V.n = 3;
    // decreasing defining function: the "inward" normal points against lambda
    V.f0 = SymFun(3, 0.0, [](const EigenTuple& t) { return 2.0 - t.sum(); }, nullptr, false,
                  "anti");
    SymFun f = SymFun::sigma_k(3, 1);
    CHECK_THROWS(normal_identity_residual(f, V, EigenTuple(Vec{1.0 / 3, 1.0 / 3, 1.0 / 3})));
}

TEST_CASE("gauge vanishes for directions outside the generated cone") {
    LevelSetSpec V;
    V.n = 3;
    V.f0 = SymFun::sigma_k(3, 1);
    SymFun f = gauge_from_levelset(V);
    CHECK(f(tup({1.0, -1.0, -1.0})) == 0.0);  // sigma_1 < 0 along the whole ray
    CHECK_FALSE(generated_cone_contains(V, tup({1.0, -1.0, -1.0})));
    CHECK(generated_cone_contains(V, tup({1.0, 1.0, 1.0})));
}

TEST_CASE("normal identity at boundary points") {
    // linear case: both sides computable by hand
    {
        LevelSetSpec V;
        V.n = 3;
        V.f0 = SymFun::sigma_k(3, 1);
        SymFun f = gauge_from_levelset(V);
        Rng rng(31);
        ConeSpec gamma1 = ConeSpec::gamma_k(3, 1);
        for (int s = 0; s < 20; ++s) {
            EigenTuple x = sample_interior(gamma1, rng);
            EigenTuple b = x.scaled(1.0 / x.sum());  // sigma_1(b) = 1
            CHECK(normal_identity_residual(f, V, b) <= 1e-5);
        }
    }
    // circular-cone level set, finite-difference oracle
    {
        double c = 0.35;
        LevelSetSpec V;
        V.n = 3;
        V.f0 = SymFun::circular(3, c);
        SymFun f = gauge_from_levelset(V);
        Rng rng(37);
        ConeSpec circ = ConeSpec::circular(3, c);
        for (int s = 0; s < 100; ++s) {
            EigenTuple x = sample_interior(circ, rng);
            auto cc = ray_scaling(V, x);
            REQUIRE(cc.has_value());
            CHECK(normal_identity_residual(f, V, x.scaled(*cc)) <= 1e-5);
        }
    }
}

TEST_CASE("reflection of a level set") {
    LevelSetSpec V;
    V.n = 3;
    V.f0 = SymFun::sigma_k(3, 1);
    ReflectedLevelSet r = reflect_levelset(V);
    CHECK_FALSE(r.convexity_warning);

    // involution of the reflection map, exact
    Rng rng(41);
    for (int s = 0; s < 1000; ++s) {
        Vec x = rng.normal_vec(3);
        Vec y = reflect_point(r, reflect_point(r, x));
        for (int i = 0; i < 3; ++i) CHECK(std::fabs(y[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]) <= 1e-12);
    }

    // generated cone of the reflection agrees with the negation dual
    ConeSpec dual = negation_dual(ConeSpec::gamma_k(3, 1));
    int agreements = 0, tested = 0;
    for (int s = 0; s < 1000; ++s) {
        EigenTuple x(rng.normal_vec(3));
        ConePosition pos = dual.contains(x, 1e-6);
        if (pos.region == Region::Boundary) continue;
        ++tested;
        bool in_reflected = generated_cone_contains(r.reflected, x);
        if (in_reflected == (pos.region == Region::Interior)) ++agreements;
    }
    CHECK(agreements == tested);

    // normal transport: the inward normal is carried along the reflection
    ConeSpec gamma1 = ConeSpec::gamma_k(3, 1);
    for (int s = 0; s < 50; ++s) {
        EigenTuple x = sample_interior(gamma1, rng);
        EigenTuple b = x.scaled(1.0 / x.sum());
        Vec nu = V.inward_normal(b);
        EigenTuple rb = EigenTuple(reflect_point(r, b.values()));
        Vec nu_tilde = r.reflected.inward_normal(rb);
        for (int i = 0; i < 3; ++i) CHECK(std::fabs(nu[static_cast<std::size_t>(i)] - nu_tilde[static_cast<std::size_t>(i)]) < 1e-5);
    }
}

TEST_CASE("reflection warns on a non-convex level set") {
    // the max-form superlevel set is a union of half-spaces over the
    // coordinate chambers, hence not convex
    LevelSetSpec V;
    V.n = 3;
    V.f0 = maxform(3, 0.5);
    ReflectedLevelSet r = reflect_levelset(V, 400);
    CHECK(r.convexity_warning);
}

TEST_CASE("convex extension: half-space case has the closed form") {
    // Gamma_1 complement is a half space with unique inward normal e/sqrt(n)
    const int n = 3;
    SymFun f = SymFun::sigma_k(n, 1);
    ConeSpec cone = ConeSpec::gamma_k(n, 1);
    double delta = 1.0;
    ConvexExtension ext(f, cone, delta, 2000);
    CHECK(ext.normal_count() == 1);
    Rng rng(43);
    for (int s = 0; s < 1000; ++s) {
        EigenTuple x(rng.normal_vec(n));
        double inside = x.sum();
        if (inside >= 0.0)
            CHECK(ext(x) == doctest::Approx(inside));
        else
            CHECK(std::fabs(ext(x) - delta * inside / std::sqrt(static_cast<double>(n))) <= 1e-10);
    }
}

TEST_CASE("convex extension: midpoint convexity across the boundary") {
    const int n = 3;
    SymFun f = SymFun::sigma_k(n, 1);
    ConeSpec cone = ConeSpec::gamma_k(n, 1);
    ConvexExtension ext(f, cone, 1.0, 2000);
    Rng rng(47);
    int crossings = 0;
    for (int s = 0; s < 10000; ++s) {
        EigenTuple a(rng.normal_vec(n));
        EigenTuple b(rng.normal_vec(n));
        if ((a.sum() > 0) == (b.sum() > 0)) continue;  // want segments that cross
        ++crossings;
        Vec mid(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) mid[static_cast<std::size_t>(i)] = 0.5 * (a[i] + b[i]);
        double lhs = ext(EigenTuple(mid));
        double rhs = 0.5 * (ext(a) + ext(b));
        CHECK(lhs <= rhs + 1e-10);
    }
    CHECK(crossings > 1000);
}

TEST_CASE("convex extension rejects a cone with non-convex complement") {
    SymFun f = SymFun::sigma_k(3, 2);
    ConeSpec cone = ConeSpec::gamma_k(3, 2);
    CHECK_THROWS(ConvexExtension(f, cone, 1.0, 500));
}

TEST_CASE("structural verification of the benchmark pairs") {
    ToleranceProfile tol;
    {
        ConditionReport rep = verify_structural(SymFun::sigma_k_root(3, 2), ConeSpec::gamma_k(3, 2), 300);
        CHECK(rep.all_pass());
    }
    {
        // linear ordered function with descending weights: convex, equality
        // in the gradient-sum comparison
        Vec w{2.0, 1.0, 0.5};
        ConditionReport rep =
            verify_structural(SymFun::ordered_linear(w), ConeSpec::ordered_linear(w), 300);
        CHECK(rep.all_pass());
        const ConditionCheck* c = rep.find("gradient-sum-vs-f(e)");
        REQUIRE(c != nullptr);
        CHECK(c->applicable);
        CHECK(std::fabs(c->worst) < 1e-9);  // sum of partials equals f(e) exactly
    }
    {
        // gauge on a circular cone: the per-partial floor with c = 1/(1+mu+)
        ConeSpec circ = ConeSpec::circular(3, 0.3);
        SymFun g = gauge_from_cone(circ);
        ConditionReport rep = verify_structural(g, circ, 120);
        const ConditionCheck* c = rep.find("partial-floor");
        REQUIRE(c != nullptr);
        CHECK(c->applicable);
        CHECK(c->pass);
    }
}

TEST_CASE("max-form values: pinned points") {
    for (int n : {2, 3, 4}) {
        for (double s : {0.25, 0.5, 1.0}) {
            CHECK(maxform_value(n, s, EigenTuple::ones(n)) == doctest::Approx(1.0 + s));
            Vec v(static_cast<std::size_t>(n), -1.0);
            v[0] = s;
            CHECK(std::fabs(maxform_value(n, s, EigenTuple(v))) < 1e-14);
        }
    }
}

TEST_CASE("max-form cone has mu- = s") {
    for (double s : {0.3, 0.7, 1.0}) {
        SymFun f = maxform(3, s);
        REQUIRE(f.domain().has_value());
        CHECK(std::fabs(mu_minus(*f.domain()) - s) < 1e-8);
    }
}

TEST_CASE("mollified max-form equals the sharp one away from the branch switch") {
    for (int n : {2, 3, 4}) {
        double s = 0.5;
        double eps = 0.9 * 0.5 / std::sqrt(static_cast<double>(n));
        MollifiedMaxForm mol(n, s, eps);
        Rng rng(53);
        for (int trial = 0; trial < 50; ++trial) {
            // points of the form (1 + s t, -t, ..., -t) stay a fixed distance
            // from the branch-switch set
            double t = rng.uniform(0.0, 3.0);
            Vec v(static_cast<std::size_t>(n), -t);
            v[0] = 1.0 + s * t;
            EigenTuple x(v);
            CHECK(std::fabs(mol(x) - maxform_value(n, s, x)) <= 1e-6);
        }
    }
    CHECK_THROWS(MollifiedMaxForm(5, 0.5, 0.1));   // unsupported dimension
    CHECK_THROWS(MollifiedMaxForm(3, 0.5, 0.5));   // eps too large
}

TEST_CASE("mollified max-form smooths the kink at symmetric points") {
    // at e all branches tie, so the sharp max has a corner; averaging a
    // convex function there produces a strictly positive Jensen gap
    MollifiedMaxForm mol(3, 0.5, 0.25);
    EigenTuple e = EigenTuple::ones(3);
    double gap = mol(e) - maxform_value(3, 0.5, e);
    CHECK(gap > 1e-6);
    CHECK(gap < 0.1);
}

TEST_CASE("ordered-linear with descending weights is midpoint convex") {
    Vec w{3.0, 2.0, 1.0};
    SymFun f = SymFun::ordered_linear(w);
    Rng rng(59);
    for (int s = 0; s < 10000; ++s) {
        EigenTuple a(rng.normal_vec(3));
        EigenTuple b(rng.normal_vec(3));
        Vec mid(3);
        for (int i = 0; i < 3; ++i) mid[static_cast<std::size_t>(i)] = 0.5 * (a[i] + b[i]);
        CHECK(f(EigenTuple(mid)) <= 0.5 * (f(a) + f(b)) + 1e-12);
    }
}

TEST_CASE("permutation invariance via shuffled constructor input") {
    SymFun f = SymFun::weitzenbock(4, 2);
    CHECK(f(tup({4.0, -1.0, 2.0, 0.5})) == f(tup({0.5, 2.0, 4.0, -1.0})));
}
