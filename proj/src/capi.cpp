#include "mobcone/mobcone.h"

#include <cstring>
#include <mutex>
#include <sstream>
#include <string>

#include "mobcone/cone.hpp"
#include "mobcone/counterex.hpp"
#include "mobcone/radial.hpp"
#include "mobcone/ricci.hpp"
#include "mobcone/symfun.hpp"

using namespace mobcone;

namespace {

thread_local std::string g_last_error;

ToleranceProfile g_tol;  // set once at startup via mobcone_set_tolerances

void set_error(const std::string& msg) { g_last_error = msg; }

void copy_out(const std::string& s, char* buf, int bufsize) {
    if (!buf || bufsize <= 0) return;
    std::size_t m = std::min(s.size(), static_cast<std::size_t>(bufsize - 1));
    std::memcpy(buf, s.data(), m);
    buf[m] = '\0';
}

template <typename F>
mobcone_status guarded(F&& body) {
    try {
        return body();
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return MOBCONE_ERR_INVALID;
    } catch (const std::domain_error& e) {
        set_error(e.what());
        return MOBCONE_ERR_INVALID;
    } catch (const std::exception& e) {
        set_error(e.what());
        return MOBCONE_ERR_NUMERICAL;
    }
}

ConeSpec cone_from_args(const std::string& family, int n, int k, double param,
                        const double* weights, int nweights) {
    if (family == "gamma-k") return ConeSpec::gamma_k(n, k);
    if (family == "neg-dual-gamma-k") return ConeSpec::neg_dual_gamma_k(n, k);
    if (family == "circular") return ConeSpec::circular(n, param);
    if (family == "extremal-largest") return ConeSpec::extremal_largest(n, param);
    if (family == "extremal-smallest") return ConeSpec::extremal_smallest(n, param);
    if (family == "ordered-linear") {
        if (!weights || nweights < 2)
            throw std::invalid_argument("ordered-linear cone needs a weights array");
        return ConeSpec::ordered_linear(Vec(weights, weights + nweights));
    }
    throw std::invalid_argument("unknown cone family: " + family);
}

int region_code(Region r) {
    switch (r) {
        case Region::Interior: return 1;
        case Region::Boundary: return 0;
        case Region::Exterior: return -1;
    }
    return -2;
}

}  // namespace

struct mobcone_cone {
    ConeSpec spec;
};

struct mobcone_profile {
    RadialProfile profile;
    int n;
};

struct mobcone_trajectory {
    OdeTrajectory traj;
};

struct mobcone_report {
    ConditionReport report;
};

extern "C" {

const char* mobcone_version(void) { return "mobcone 1.0.0"; }

const char* mobcone_last_error(void) { return g_last_error.c_str(); }

mobcone_status mobcone_set_tolerances(const char* spec) {
    if (!spec) {
        set_error("null tolerance spec");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        ToleranceProfile t = g_tol;
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("tolerance entry without '=': " + item);
            std::string key = item.substr(0, eq);
            double val = std::stod(item.substr(eq + 1));
            if (key == "fd_gradient_scale") t.fd_gradient_scale = val;
            else if (key == "fd_hessian_scale") t.fd_hessian_scale = val;
            else if (key == "eig_offdiag_rel") t.eig_offdiag_rel = val;
            else if (key == "root_rel_tol") t.root_rel_tol = val;
            else if (key == "ode_rtol") t.ode_rtol = val;
            else if (key == "ode_atol") t.ode_atol = val;
            else if (key == "ode_event_time_tol") t.ode_event_time_tol = val;
            else if (key == "boundary_tol") t.boundary_tol = val;
            else if (key == "mu_bisect_cap") t.mu_bisect_cap = val;
            else throw std::invalid_argument("unknown tolerance key: " + key);
        }
        t.validate();
        g_tol = t;
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_cone_create(const char* family, int n, int k, double param,
                                   const double* weights, int nweights, mobcone_cone** out) {
    if (!family || !out) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    *out = nullptr;
    return guarded([&]() {
        auto handle = new mobcone_cone{cone_from_args(family, n, k, param, weights, nweights)};
        *out = handle;
        return MOBCONE_OK;
    });
}

void mobcone_cone_destroy(mobcone_cone* cone) { delete cone; }

mobcone_status mobcone_cone_describe(const mobcone_cone* cone, char* buf, int bufsize) {
    if (!cone || !buf) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        copy_out(cone->spec.describe(), buf, bufsize);
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_cone_contains(const mobcone_cone* cone, const double* lambda, int n,
                                     double tol, int* region, double* margin) {
    if (!cone || !lambda || !region || !margin) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        EigenTuple t(Vec(lambda, lambda + n));
        ConePosition pos = cone->spec.contains(t, tol > 0.0 ? tol : g_tol.boundary_tol);
        *region = region_code(pos.region);
        *margin = pos.margin;
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_cone_mu(const mobcone_cone* cone, double* mu_plus_out,
                               double* mu_minus_out) {
    if (!cone || !mu_plus_out || !mu_minus_out) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        *mu_plus_out = mu_plus(cone->spec, g_tol);
        *mu_minus_out = mu_minus(cone->spec, g_tol);
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_cone_mu_bisection(const mobcone_cone* cone, double* mu_plus_out,
                                         double* mu_minus_out) {
    if (!cone || !mu_plus_out || !mu_minus_out) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        *mu_plus_out = mu_plus_bisection(cone->spec, g_tol);
        *mu_minus_out = mu_minus_bisection(cone->spec, g_tol);
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_cone_lambda_star(const mobcone_cone* cone, int* star_region,
                                        double* star_margin, int* neg_star_region,
                                        double* neg_star_margin) {
    if (!cone || !star_region || !star_margin || !neg_star_region || !neg_star_margin) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        LambdaStarClass c = lambda_star_class(cone->spec, g_tol);
        *star_region = region_code(c.star.region);
        *star_margin = c.star.margin;
        *neg_star_region = region_code(c.neg_star.region);
        *neg_star_margin = c.neg_star.margin;
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_cone_negation_dual(const mobcone_cone* cone, mobcone_cone** out) {
    if (!cone || !out) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    *out = nullptr;
    return guarded([&]() {
        *out = new mobcone_cone{negation_dual(cone->spec)};
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_radial_classify(const mobcone_cone* cone, char* cases, int bufsize) {
    if (!cone || !cases) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        std::string letters;
        for (const auto& opt : enumerate_families(cone->spec, g_tol)) letters += to_string(opt.which);
        copy_out(letters, cases, bufsize);
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_radial_dirichlet(const mobcone_cone* cone, double a, double b, double alpha,
                                        double beta, int* solvable, int* regularity, char* clause,
                                        int clause_size, mobcone_profile** profile) {
    if (!cone || !solvable || !regularity || !profile) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    *profile = nullptr;
    return guarded([&]() {
        SolveReport rep = solve_dirichlet(cone->spec, {a, b, alpha, beta}, g_tol);
        *solvable = rep.solvable ? 1 : 0;
        *regularity = rep.regularity == Regularity::Smooth
                          ? 0
                          : (rep.regularity == Regularity::LipschitzKink ? 1 : 2);
        if (clause) copy_out(rep.clause, clause, clause_size);
        if (rep.profile) *profile = new mobcone_profile{*rep.profile, cone->spec.dim()};
        return MOBCONE_OK;
    });
}

void mobcone_profile_destroy(mobcone_profile* profile) { delete profile; }

mobcone_status mobcone_profile_describe(const mobcone_profile* profile, char* buf, int bufsize) {
    if (!profile || !buf) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        copy_out(profile->profile.describe(), buf, bufsize);
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_profile_domain(const mobcone_profile* profile, double* r_lo, double* r_hi,
                                      double* kink_r) {
    if (!profile || !r_lo || !r_hi || !kink_r) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    *r_lo = profile->profile.r_lo();
    *r_hi = profile->profile.r_hi();
    *kink_r = profile->profile.kink_radius();
    return MOBCONE_OK;
}

mobcone_status mobcone_profile_eval(const mobcone_profile* profile, double r, double* v,
                                    double* dv) {
    if (!profile || !v || !dv) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        *v = profile->profile.v(r);
        *dv = profile->profile.dv(r);
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_profile_eigen(const mobcone_profile* profile, double r, int n,
                                     double* lambda_out) {
    if (!profile || !lambda_out) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        EigenTuple lam = radial_eigenvalues(profile->profile, r, n);
        for (int i = 0; i < n; ++i) lambda_out[i] = lam[i];
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_ode_predict(double gamma, double v0, double w0, int* global) {
    if (!global) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        *global = existence_predicate({gamma, v0, w0}) == Existence::Global ? 1 : 0;
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_ode_run(double gamma, double v0, double w0, double window, double threshold,
                               mobcone_trajectory** out) {
    if (!out) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    *out = nullptr;
    return guarded([&]() {
        *out = new mobcone_trajectory{integrate_ode({gamma, v0, w0}, window, threshold, g_tol)};
        return MOBCONE_OK;
    });
}

void mobcone_trajectory_destroy(mobcone_trajectory* traj) { delete traj; }

mobcone_status mobcone_trajectory_size(const mobcone_trajectory* traj, int* size) {
    if (!traj || !size) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    *size = static_cast<int>(traj->traj.t.size());
    return MOBCONE_OK;
}

mobcone_status mobcone_trajectory_get(const mobcone_trajectory* traj, int i, double* t,
                                      double* phi, double* w, double* integral) {
    if (!traj || !t || !phi || !w || !integral) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    if (i < 0 || i >= static_cast<int>(traj->traj.t.size())) {
        set_error("trajectory index out of range");
        return MOBCONE_ERR_INVALID;
    }
    auto idx = static_cast<std::size_t>(i);
    *t = traj->traj.t[idx];
    *phi = traj->traj.phi[idx];
    *w = traj->traj.w[idx];
    *integral = traj->traj.integral[idx];
    return MOBCONE_OK;
}

mobcone_status mobcone_trajectory_summary(const mobcone_trajectory* traj, double* drift,
                                          int* blowup, double* blowup_time) {
    if (!traj || !drift || !blowup || !blowup_time) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    *drift = traj->traj.drift();
    *blowup = traj->traj.blowup ? 1 : 0;
    *blowup_time = traj->traj.blowup_time;
    return MOBCONE_OK;
}

mobcone_status mobcone_blowup_verify(const char* kind, int n, int j, int samples,
                                     mobcone_blowup_report* report) {
    if (!kind || !report) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        BlowupKind k;
        std::string s(kind);
        if (s == "neg-sigma-half") k = BlowupKind::NegSigmaHalf;
        else if (s == "neg-general") k = BlowupKind::NegGeneral;
        else if (s == "pos-general") k = BlowupKind::PosGeneral;
        else throw std::invalid_argument("unknown blow-up kind: " + s);
        BlowupReport rep = gradient_blowup(k, n, j, samples > 0 ? samples : 100, g_tol);
        report->c_j = rep.c_j;
        report->c_n = rep.c_n;
        report->omega_j = rep.omega_j;
        report->bound = rep.bound;
        report->max_identity_residual = rep.max_identity_residual;
        report->sup_deviation = rep.sup_deviation;
        report->min_grad = rep.min_grad;
        report->max_field_value = rep.max_field_value;
        report->in_cone = rep.in_cone ? 1 : 0;
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_symfun_check(const char* family, int n, int k, double param,
                                    const double* weights, int nweights, int samples,
                                    unsigned long long seed, mobcone_report** out) {
    if (!family || !out) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    *out = nullptr;
    return guarded([&]() {
        std::string fam(family);
        SymFun f;
        ConeSpec cone = ConeSpec::gamma_k(std::max(n, 2), 1);
        if (fam == "sigma-k") {
            f = SymFun::sigma_k(n, k);
            cone = ConeSpec::gamma_k(n, k);
        } else if (fam == "sigma-k-root") {
            f = SymFun::sigma_k_root(n, k);
            cone = ConeSpec::gamma_k(n, k);
        } else if (fam == "weitzenbock") {
            f = SymFun::weitzenbock(n, k);
            cone = ConeSpec::ordered_linear(SymFun::weitzenbock_weights(n, k));
        } else if (fam == "lambda-sum") {
            int q = static_cast<int>(param);
            f = SymFun::lambda_range_sum(n, k, q);
            cone = ConeSpec::ordered_linear(SymFun::lambda_range_weights(n, k, q));
        } else if (fam == "circular") {
            f = SymFun::circular(n, param);
            cone = ConeSpec::circular(n, param);
        } else if (fam == "ordered-linear") {
            if (!weights || nweights < 2)
                throw std::invalid_argument("ordered-linear needs a weights array");
            Vec w(weights, weights + nweights);
            f = SymFun::ordered_linear(w);
            cone = ConeSpec::ordered_linear(w);
        } else if (fam.rfind("gauge:", 0) == 0) {
            cone = cone_from_args(fam.substr(6), n, k, param, weights, nweights);
            f = gauge_from_cone(cone, g_tol);
        } else {
            throw std::invalid_argument("unknown symmetric-function family: " + fam);
        }
        *out = new mobcone_report{verify_structural(f, cone, samples, seed, g_tol)};
        return MOBCONE_OK;
    });
}

void mobcone_report_destroy(mobcone_report* report) { delete report; }

mobcone_status mobcone_report_size(const mobcone_report* report, int* size) {
    if (!report || !size) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    *size = static_cast<int>(report->report.checks.size());
    return MOBCONE_OK;
}

mobcone_status mobcone_report_item(const mobcone_report* report, int i, char* name, int name_size,
                                   int* pass, double* worst, char* note, int note_size) {
    if (!report || !pass || !worst) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    if (i < 0 || i >= static_cast<int>(report->report.checks.size())) {
        set_error("report index out of range");
        return MOBCONE_ERR_INVALID;
    }
    const ConditionCheck& c = report->report.checks[static_cast<std::size_t>(i)];
    if (name) copy_out(c.name, name, name_size);
    if (note) copy_out(c.note, note, note_size);
    *pass = c.applicable ? (c.pass ? 1 : 0) : -1;
    *worst = c.worst;
    return MOBCONE_OK;
}

mobcone_status mobcone_verify_bubble(int n, double a, double b, int trials,
                                     unsigned long long seed, double* max_dev_analytic,
                                     double* max_dev_fd) {
    if (!max_dev_analytic || !max_dev_fd) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        if (n < 2) throw std::invalid_argument("verify_bubble: n must be >= 2");
        if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("verify_bubble: a, b must be > 0");
        if (trials < 1) throw std::invalid_argument("verify_bubble: trials must be >= 1");
        Rng rng(seed);
        double target = 2.0 * b * b / (a * a);
        double dev_an = 0.0, dev_fd = 0.0;
        for (int t = 0; t < trials; ++t) {
            Vec xbar(static_cast<std::size_t>(n));
            Vec x(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                xbar[static_cast<std::size_t>(i)] = rng.uniform(-0.5, 0.5);
                x[static_cast<std::size_t>(i)] = xbar[static_cast<std::size_t>(i)] + rng.uniform(-1.0, 1.0);
            }
            ScalarField v = ScalarField::bubble(n, a, b, xbar);
            ScalarField v_fd = ScalarField::from_value(
                n, [v](const Vec& y) { return v(y); }, "bubble-fd");
            Matrix A = mobius_hessian(v, x, g_tol).A;
            Matrix Afd = mobius_hessian(v_fd, x, g_tol).A;
            A.add_scaled(Matrix::identity(n), -target);
            Afd.add_scaled(Matrix::identity(n), -target);
            dev_an = std::max(dev_an, A.frobenius());
            dev_fd = std::max(dev_fd, Afd.frobenius());
        }
        *max_dev_analytic = dev_an;
        *max_dev_fd = dev_fd;
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_ricci_constants(const char* example, int n, int i, int j, int p, double a,
                                       double b, double* value, double* required_ratio_sq,
                                       int* constraint_ok, int* pass) {
    if (!example || !value || !required_ratio_sq || !constraint_ok || !pass) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        std::string s(example);
        BubbleExample ex;
        if (s == "ricci-eigenvalue") ex = BubbleExample::RicciEigenvalue;
        else if (s == "ricci-eigenvalue-sum") ex = BubbleExample::RicciEigenvalueSum;
        else if (s == "weitzenbock") ex = BubbleExample::WeitzenbockCurvature;
        else throw std::invalid_argument("unknown example: " + s);
        BubbleConstantReport rep = bubble_constants(ex, n, a, b, i, j, p, 3, g_tol);
        *value = rep.value;
        *required_ratio_sq = rep.required_ratio_sq;
        *constraint_ok = rep.constraint_satisfied ? 1 : 0;
        *pass = rep.pass ? 1 : 0;
        return MOBCONE_OK;
    });
}

mobcone_status mobcone_ricci_roundtrip(int n, int samples, unsigned long long seed,
                                       double* max_err) {
    if (!max_err) {
        set_error("null argument");
        return MOBCONE_ERR_NULL;
    }
    return guarded([&]() {
        LinearDictionary T(n);
        Rng rng(seed);
        double worst = 0.0;
        for (int s = 0; s < samples; ++s) {
            Vec lam = rng.normal_vec(n);
            Vec fwd_back = T.inverse_raw(T.forward_raw(lam));
            Vec back_fwd = T.forward_raw(T.inverse_raw(lam));
            for (int i = 0; i < n; ++i) {
                worst = std::max(worst, std::fabs(fwd_back[static_cast<std::size_t>(i)] - lam[static_cast<std::size_t>(i)]));
                worst = std::max(worst, std::fabs(back_fwd[static_cast<std::size_t>(i)] - lam[static_cast<std::size_t>(i)]));
            }
        }
        *max_err = worst;
        return MOBCONE_OK;
    });
}

}  // extern "C"
