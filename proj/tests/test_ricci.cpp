#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mobcone/ricci.hpp"

using namespace mobcone;

TEST_CASE("the dictionary rejects n = 2 and round-trips everywhere else") {
    CHECK_THROWS(LinearDictionary(2));
    Rng rng(5);
    for (int n : {3, 4, 5, 8}) {
        LinearDictionary T(n);
        for (int s = 0; s < 250; ++s) {
            Vec lam = rng.normal_vec(n);
            Vec fb = T.inverse_raw(T.forward_raw(lam));
            Vec bf = T.forward_raw(T.inverse_raw(lam));
            for (int i = 0; i < n; ++i) {
                CHECK(std::fabs(fb[static_cast<std::size_t>(i)] - lam[static_cast<std::size_t>(i)]) <= 1e-12);
                CHECK(std::fabs(bf[static_cast<std::size_t>(i)] - lam[static_cast<std::size_t>(i)]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("pinned images: e and the distinguished direction") {
    for (int n : {3, 4, 6}) {
        LinearDictionary T(n);
        // T e = 2(n-1) e
        EigenTuple te = T.schouten_to_ricci(EigenTuple::ones(n));
        for (int i = 0; i < n; ++i) CHECK(te[i] == doctest::Approx(2.0 * (n - 1)));
        // T maps (1,-1,...,-1) to 2(n-2) * (0,-1,...,-1)
        EigenTuple ts = T.schouten_to_ricci(EigenTuple::lambda_star(n));
        CHECK(ts[0] == doctest::Approx(0.0));
        for (int i = 1; i < n; ++i) CHECK(ts[i] == doctest::Approx(-2.0 * (n - 2)));
    }
}

TEST_CASE("the map preserves descending order away from ties") {
    Rng rng(7);
    LinearDictionary T(4);
    for (int s = 0; s < 200; ++s) {
        Vec lam = rng.normal_vec(4);
        EigenTuple t(lam);
        Vec image = T.forward_raw(t.values());
        for (int i = 1; i < 4; ++i) CHECK(image[static_cast<std::size_t>(i - 1)] >= image[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("converted pairs evaluate through the dictionary") {
    const int n = 4;
    // Ricci-side ordered sum pulled back to the Schouten side
    SymFun f_hat = SymFun::lambda_range_sum(n, 2, 1);
    ConeSpec gamma_hat = ConeSpec::ordered_linear(SymFun::lambda_range_weights(n, 2, 1));
    ConvertedPair pair = convert_pair(f_hat, gamma_hat);

    LinearDictionary T(n);
    Rng rng(11);
    for (int s = 0; s < 300; ++s) {
        EigenTuple lam(rng.normal_vec(n));
        double direct = pair.f(lam);
        double via = f_hat(T.schouten_to_ricci(lam));
        CHECK(std::fabs(direct - via) <= 1e-12 * (1.0 + std::fabs(via)));
        ConePosition a = pair.cone.contains(lam, 1e-9);
        ConePosition b = gamma_hat.contains(T.schouten_to_ricci(lam), 1e-9);
        if (a.region != Region::Boundary && b.region != Region::Boundary)
            CHECK(a.region == b.region);
    }

    // scaling the Ricci-side function scales the conversion pointwise
    SymFun f_hat3(n, 1.0, [f_hat](const EigenTuple& t) { return 3.0 * f_hat(t); }, nullptr, false,
                  "3x");
    ConvertedPair pair3 = convert_pair(f_hat3, gamma_hat);
    for (int s = 0; s < 50; ++s) {
        EigenTuple lam(rng.normal_vec(n));
        CHECK(pair3.f(lam) == doctest::Approx(3.0 * pair.f(lam)));
    }
}

TEST_CASE("converted pair on sampled fields: one equation, two readings") {
    const int n = 4;
    SymFun f_hat = SymFun::lambda_range_sum(n, 2, 1);
    ConeSpec gamma_hat = ConeSpec::ordered_linear(SymFun::lambda_range_weights(n, 2, 1));
    ConvertedPair pair = convert_pair(f_hat, gamma_hat);
    LinearDictionary T(n);
    Rng rng(13);
    ScalarField v = ScalarField::bubble(n, 1.1, 0.9, Vec{0.1, -0.2, 0.0, 0.3});
    for (int s = 0; s < 30; ++s) {
        Vec x = rng.normal_vec(n);
        EigenTuple schouten = mobius_hessian(v, x).eigenvalues;
        double lhs = pair.f(schouten);
        double rhs = f_hat(T.schouten_to_ricci(schouten));
        CHECK(std::fabs(lhs - rhs) <= 1e-8 * (1.0 + std::fabs(rhs)));
    }
}

TEST_CASE("gamma-k image cones agree through the dictionary") {
    const int n = 4;
    LinearDictionary T(n);
    ConeSpec gk = ConeSpec::gamma_k(n, 2);
    // Ricci-side image cone: membership by pulling back through T^{-1}
    ConeSpec image = ConeSpec::gauge(
        n, [gk, T](const EigenTuple& lam) { return gk.margin(T.ricci_to_schouten(lam)); },
        std::nullopt, "image");
    ConvertedPair pair = convert_pair(SymFun::sigma_k(n, 1), image);
    Rng rng(17);
    for (int s = 0; s < 1000; ++s) {
        EigenTuple lam(rng.normal_vec(n));
        ConePosition a = pair.cone.contains(lam, 1e-9);
        ConePosition b = gk.contains(lam, 1e-9);
        if (a.region != Region::Boundary && b.region != Region::Boundary)
            CHECK(a.region == b.region);
    }
}

TEST_CASE("bubble identity through the dictionary: eigenvalue map on bubbles") {
    Rng rng(19);
    for (int n : {3, 4, 5}) {
        double a = rng.uniform(0.8, 1.3), b = rng.uniform(0.8, 1.3);
        ScalarField v = ScalarField::bubble(n, a, b, Vec(static_cast<std::size_t>(n), 0.1));
        Vec x = rng.normal_vec(n);
        LinearDictionary T(n);
        EigenTuple ric = T.schouten_to_ricci(mobius_hessian(v, x).eigenvalues);
        double expect = 4.0 * (n - 1) * b * b / (a * a);
        for (int i = 0; i < n; ++i) CHECK(std::fabs(ric[i] - expect) <= 1e-9 * (1.0 + expect));
    }
}

TEST_CASE("bubble constants: on-constraint values reproduce one") {
    {
        // single Ricci eigenvalue, i = 2, n = 3: ratio 1/8
        double M = bubble_constraint_constant(BubbleExample::RicciEigenvalue, 3, 2, 2, 1);
        CHECK(M == doctest::Approx(8.0));
        double ratio = std::sqrt(1.0 / M);
        BubbleConstantReport rep = bubble_constants(BubbleExample::RicciEigenvalue, 3, 1.0, ratio, 2);
        CHECK(rep.constraint_satisfied);
        CHECK(std::fabs(rep.value - 1.0) <= 1e-9);
        CHECK(rep.pass);
    }
    {
        double M = bubble_constraint_constant(BubbleExample::RicciEigenvalueSum, 4, 1, 3, 1);
        CHECK(M == doctest::Approx(36.0));  // 4 (n-1) (j-i+1) = 4*3*3
        double ratio = std::sqrt(1.0 / M);
        BubbleConstantReport rep =
            bubble_constants(BubbleExample::RicciEigenvalueSum, 4, 1.0, ratio, 1, 3);
        CHECK(rep.pass);
    }
    {
        // the curvature combination G_p at the bubble: G_p(2 b^2/a^2 e) = 1
        // forces 4 p (n-p) b^2 = a^2
        double M = bubble_constraint_constant(BubbleExample::WeitzenbockCurvature, 4, 2, 2, 2);
        CHECK(M == doctest::Approx(16.0));
        double ratio = std::sqrt(1.0 / M);
        BubbleConstantReport rep =
            bubble_constants(BubbleExample::WeitzenbockCurvature, 4, 1.0, ratio, 2, 2, 2);
        CHECK(rep.constraint_satisfied);
        CHECK(std::fabs(rep.value - 1.0) <= 1e-9);
        CHECK(rep.pass);
    }
}

TEST_CASE("bubble constants report the actual value off the constraint") {
    double M = bubble_constraint_constant(BubbleExample::RicciEigenvalue, 3, 2, 2, 1);
    double ratio = std::sqrt(1.0 / M);
    // doubling b/a quadruples the degree-1 curvature quantity
    BubbleConstantReport rep =
        bubble_constants(BubbleExample::RicciEigenvalue, 3, 1.0, 2.0 * ratio, 2);
    CHECK_FALSE(rep.constraint_satisfied);
    CHECK_FALSE(rep.pass);
    CHECK(rep.value == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("bubble constants validate their arguments") {
    CHECK_THROWS(bubble_constants(BubbleExample::RicciEigenvalue, 2, 1.0, 1.0));
    CHECK_THROWS(bubble_constants(BubbleExample::RicciEigenvalue, 3, -1.0, 1.0));
    CHECK_THROWS(bubble_constants(BubbleExample::WeitzenbockCurvature, 3, 1.0, 1.0, 2, 2, 5));
    CHECK_THROWS(bubble_constraint_constant(BubbleExample::RicciEigenvalueSum, 4, 3, 2, 1));
}
