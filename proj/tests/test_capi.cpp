#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "mobcone/mobcone.h"

// the direct C++ routes, used as oracles against the C surface
#include "mobcone/cone.hpp"
#include "mobcone/counterex.hpp"
#include "mobcone/radial.hpp"

TEST_CASE("version and error strings are available") {
    CHECK(std::string(mobcone_version()).find("mobcone") != std::string::npos);
    CHECK(mobcone_last_error() != nullptr);
}

TEST_CASE("cone lifecycle and membership through the C surface") {
    mobcone_cone* cone = nullptr;
    REQUIRE(mobcone_cone_create("gamma-k", 4, 2, 0.0, nullptr, 0, &cone) == MOBCONE_OK);
    REQUIRE(cone != nullptr);

    char buf[128];
    CHECK(mobcone_cone_describe(cone, buf, sizeof buf) == MOBCONE_OK);
    CHECK(std::string(buf).find("gamma-2") != std::string::npos);

    double lambda[4] = {1.0, 1.0, 1.0, 1.0};
    int region = -9;
    double margin = 0.0;
    CHECK(mobcone_cone_contains(cone, lambda, 4, 0.0, &region, &margin) == MOBCONE_OK);
    CHECK(region == 1);

    double mp = 0.0, mm = 0.0;
    CHECK(mobcone_cone_mu(cone, &mp, &mm) == MOBCONE_OK);
    CHECK(mp == doctest::Approx(1.0));
    CHECK(std::isinf(mm));

    double bp = 0.0, bm = 0.0;
    CHECK(mobcone_cone_mu_bisection(cone, &bp, &bm) == MOBCONE_OK);
    CHECK(std::fabs(bp - 1.0) <= 1e-8);
    CHECK(std::isinf(bm));

    int sr = 9, nr = 9;
    double smar = 0, nmar = 0;
    CHECK(mobcone_cone_lambda_star(cone, &sr, &smar, &nr, &nmar) == MOBCONE_OK);
    CHECK(sr == -1);  // exterior
    CHECK(nr == 0);   // boundary: k = n/2

    mobcone_cone* dual = nullptr;
    CHECK(mobcone_cone_negation_dual(cone, &dual) == MOBCONE_OK);
    double dp = 0.0, dm = 0.0;
    CHECK(mobcone_cone_mu(dual, &dp, &dm) == MOBCONE_OK);
    CHECK(dm == doctest::Approx(1.0));  // duality swaps the pair

    mobcone_cone_destroy(dual);
    mobcone_cone_destroy(cone);
    mobcone_cone_destroy(nullptr);  // accepted
}

TEST_CASE("error paths surface as status codes with messages") {
    mobcone_cone* cone = nullptr;
    CHECK(mobcone_cone_create("no-such-family", 3, 1, 0.0, nullptr, 0, &cone) ==
          MOBCONE_ERR_INVALID);
    CHECK(cone == nullptr);
    CHECK(std::string(mobcone_last_error()).find("no-such-family") != std::string::npos);

    CHECK(mobcone_cone_create("gamma-k", 3, 7, 0.0, nullptr, 0, &cone) == MOBCONE_ERR_INVALID);
    CHECK(mobcone_cone_create(nullptr, 3, 1, 0.0, nullptr, 0, &cone) == MOBCONE_ERR_NULL);

    REQUIRE(mobcone_cone_create("circular", 3, 0, 0.4, nullptr, 0, &cone) == MOBCONE_OK);
    double lambda[2] = {1.0, 1.0};
    int region;
    double margin;
    CHECK(mobcone_cone_contains(cone, lambda, 2, 0.0, &region, &margin) == MOBCONE_ERR_INVALID);
    mobcone_cone_destroy(cone);
}

TEST_CASE("tolerance profile parsing") {
    CHECK(mobcone_set_tolerances("boundary_tol=1e-9,ode_rtol=1e-10") == MOBCONE_OK);
    CHECK(mobcone_set_tolerances("bogus_key=1") == MOBCONE_ERR_INVALID);
    CHECK(mobcone_set_tolerances("ode_rtol=-3") == MOBCONE_ERR_INVALID);
    CHECK(mobcone_set_tolerances("boundary_tol=1e-8") == MOBCONE_OK);
}

TEST_CASE("ordered-linear cones take a weights array") {
    double w[3] = {2.0, 1.0, 1.0};
    mobcone_cone* cone = nullptr;
    REQUIRE(mobcone_cone_create("ordered-linear", 3, 0, 0.0, w, 3, &cone) == MOBCONE_OK);
    double mp, mm;
    CHECK(mobcone_cone_mu(cone, &mp, &mm) == MOBCONE_OK);
    CHECK(mm == doctest::Approx(1.0));
    CHECK(mp == doctest::Approx(3.0));
    mobcone_cone_destroy(cone);
}

TEST_CASE("radial classification and the annulus solve over C") {
    mobcone_cone* cone = nullptr;
    REQUIRE(mobcone_cone_create("gamma-k", 2, 1, 0.0, nullptr, 0, &cone) == MOBCONE_OK);
    char cases[8];
    CHECK(mobcone_radial_classify(cone, cases, sizeof cases) == MOBCONE_OK);
    CHECK(std::string(cases) == "ace");

    int solvable = 0, regularity = -1;
    char clause[160];
    mobcone_profile* profile = nullptr;
    REQUIRE(mobcone_radial_dirichlet(cone, 1.0, std::exp(1.0), 0.0, -1.0, &solvable, &regularity,
                                     clause, sizeof clause, &profile) == MOBCONE_OK);
    CHECK(solvable == 1);
    CHECK(regularity == 0);
    REQUIRE(profile != nullptr);

    // identical to the direct library call
    mobcone::SolveReport direct = mobcone::solve_dirichlet(
        mobcone::ConeSpec::gamma_k(2, 1), {1.0, std::exp(1.0), 0.0, -1.0});
    for (double r : {1.0, 1.5, 2.0, 2.7}) {
        double v = 0, dv = 0;
        CHECK(mobcone_profile_eval(profile, r, &v, &dv) == MOBCONE_OK);
        CHECK(v == direct.profile->v(r));
        CHECK(dv == direct.profile->dv(r));
        double lam[2];
        CHECK(mobcone_profile_eigen(profile, r, 2, lam) == MOBCONE_OK);
        mobcone::EigenTuple expect = mobcone::radial_eigenvalues(*direct.profile, r, 2);
        CHECK(lam[0] == expect[0]);
        CHECK(lam[1] == expect[1]);
    }
    double rlo, rhi, kink;
    CHECK(mobcone_profile_domain(profile, &rlo, &rhi, &kink) == MOBCONE_OK);
    CHECK(rlo == 0.0);
    CHECK(std::isnan(kink));
    mobcone_profile_destroy(profile);
    mobcone_cone_destroy(cone);
}

TEST_CASE("phase-plane runs over C") {
    int global = -1;
    CHECK(mobcone_ode_predict(0.5, 0.0, 0.0, &global) == MOBCONE_OK);
    CHECK(global == 1);
    CHECK(mobcone_ode_predict(-3.0, 0.0, 1.0, &global) == MOBCONE_OK);
    CHECK(global == 0);

    mobcone_trajectory* traj = nullptr;
    REQUIRE(mobcone_ode_run(1.0, 0.0, 0.0, 50.0, 1e8, &traj) == MOBCONE_OK);
    int size = 0;
    CHECK(mobcone_trajectory_size(traj, &size) == MOBCONE_OK);
    CHECK(size > 10);
    double drift = 1.0;
    int blowup = 1;
    double tstar = 0;
    CHECK(mobcone_trajectory_summary(traj, &drift, &blowup, &tstar) == MOBCONE_OK);
    CHECK(blowup == 0);
    CHECK(drift <= 1e-6);
    double t, phi, w, integral;
    CHECK(mobcone_trajectory_get(traj, 0, &t, &phi, &w, &integral) == MOBCONE_OK);
    CHECK(mobcone_trajectory_get(traj, size, &t, &phi, &w, &integral) == MOBCONE_ERR_INVALID);
    mobcone_trajectory_destroy(traj);

    CHECK(mobcone_ode_run(1.0, 0.0, 0.0, -5.0, 1e8, &traj) == MOBCONE_ERR_INVALID);
}

TEST_CASE("blow-up verification over C") {
    mobcone_blowup_report rep{};
    REQUIRE(mobcone_blowup_verify("neg-sigma-half", 4, 10, 100, &rep) == MOBCONE_OK);
    CHECK(rep.c_n == doctest::Approx(24.0));
    CHECK(rep.max_identity_residual <= 1e-8);
    CHECK(rep.min_grad >= 10.0);
    CHECK(rep.in_cone == 1);
    CHECK(mobcone_blowup_verify("neg-sigma-half", 3, 10, 100, &rep) == MOBCONE_ERR_INVALID);
    CHECK(mobcone_blowup_verify("nope", 4, 10, 100, &rep) == MOBCONE_ERR_INVALID);
}

TEST_CASE("structural report over C") {
    mobcone_report* rep = nullptr;
    REQUIRE(mobcone_symfun_check("sigma-k-root", 3, 2, 0.0, nullptr, 0, 200, 23, &rep) ==
            MOBCONE_OK);
    int size = 0;
    CHECK(mobcone_report_size(rep, &size) == MOBCONE_OK);
    CHECK(size >= 5);
    bool saw_positivity = false;
    for (int i = 0; i < size; ++i) {
        char name[64], note[160];
        int pass = -2;
        double worst = 0;
        CHECK(mobcone_report_item(rep, i, name, sizeof name, &pass, &worst, note, sizeof note) ==
              MOBCONE_OK);
        if (std::string(name) == "positivity") {
            saw_positivity = true;
            CHECK(pass == 1);
        }
    }
    CHECK(saw_positivity);
    mobcone_report_destroy(rep);

    REQUIRE(mobcone_symfun_check("gauge:circular", 3, 0, 0.3, nullptr, 0, 120, 23, &rep) ==
            MOBCONE_OK);
    mobcone_report_destroy(rep);
}

TEST_CASE("bubble verification and the eigenvalue dictionary over C") {
    double dev_an = 1.0, dev_fd = 1.0;
    REQUIRE(mobcone_verify_bubble(3, 1.0, 1.0, 20, 7, &dev_an, &dev_fd) == MOBCONE_OK);
    CHECK(dev_an <= 1e-9);
    CHECK(dev_fd <= 1e-5);

    double value = 0, ratio = 0;
    int ok = 0, pass = 0;
    REQUIRE(mobcone_ricci_constants("weitzenbock", 4, 2, 2, 2, 1.0, 0.25, &value, &ratio, &ok,
                                    &pass) == MOBCONE_OK);
    CHECK(ok == 1);  // (b/a)^2 = 1/16 meets the constraint
    CHECK(pass == 1);
    CHECK(value == doctest::Approx(1.0));

    double err = 1.0;
    REQUIRE(mobcone_ricci_roundtrip(4, 300, 3, &err) == MOBCONE_OK);
    CHECK(err <= 1e-12);
}
