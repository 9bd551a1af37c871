#include "mobcone/symfun.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

namespace mobcone {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::function<Vec(const EigenTuple&)> make_fd_gradient(std::function<double(const EigenTuple&)> eval,
                                                       double scale) {
    return [eval, scale](const EigenTuple& lambda) {
        ScalarFn f = [&eval](const Vec& v) { return eval(EigenTuple(v)); };
        double h = scale * (1.0 + lambda.norm());
        return fd_gradient(f, lambda.values(), h);
    };
}

}  // namespace

SymFun::SymFun(int n, double degree, std::function<double(const EigenTuple&)> eval,
               std::function<Vec(const EigenTuple&)> grad, bool analytic_gradient, std::string name,
               std::optional<ConeSpec> domain)
    : n_(n),
      degree_(degree),
      eval_(std::move(eval)),
      grad_(std::move(grad)),
      analytic_(analytic_gradient),
      name_(std::move(name)),
      domain_(std::move(domain)) {
    if (!grad_) {
        grad_ = make_fd_gradient(eval_, 1e-5);
        analytic_ = false;
    }
}

double SymFun::operator()(const EigenTuple& lambda) const {
    if (lambda.dim() != n_) throw std::invalid_argument("SymFun: dimension mismatch");
    return eval_(lambda);
}

Vec SymFun::gradient(const EigenTuple& lambda) const {
    if (lambda.dim() != n_) throw std::invalid_argument("SymFun: dimension mismatch");
    return grad_(lambda);
}

SymFun SymFun::sigma_k(int n, int k) {
    if (k < 1 || k > n) throw std::invalid_argument("sigma_k: k out of range");
    auto eval = [k](const EigenTuple& t) { return elementary_symmetric(t.values(), k); };
    auto grad = [k](const EigenTuple& t) { return elementary_symmetric_gradient(t.values(), k); };
    std::ostringstream nm;
    nm << "sigma-" << k;
    return SymFun(n, static_cast<double>(k), eval, grad, true, nm.str());
}

SymFun SymFun::sigma_k_root(int n, int k) {
    if (k < 1 || k > n) throw std::invalid_argument("sigma_k_root: k out of range");
    ConeSpec dom = ConeSpec::gamma_k(n, k);
    auto eval = [k, dom](const EigenTuple& t) {
        double m = dom.margin(t);
        if (m < -1e-10 * (1.0 + t.norm()))
            throw std::domain_error("sigma_k_root: point outside the domain cone");
        double s = std::max(elementary_symmetric(t.values(), k), 0.0);
        return std::pow(s, 1.0 / k);
    };
    auto grad = [k](const EigenTuple& t) {
        double s = elementary_symmetric(t.values(), k);
        if (s <= 0.0) throw std::domain_error("sigma_k_root gradient: sigma_k not positive");
        Vec g = elementary_symmetric_gradient(t.values(), k);
        double factor = std::pow(s, 1.0 / k - 1.0) / k;
        for (double& x : g) x *= factor;
        return g;
    };
    std::ostringstream nm;
    nm << "sigma-" << k << "-root";
    return SymFun(n, 1.0, eval, grad, true, nm.str(), dom);
}

Vec SymFun::weitzenbock_weights(int n, int p) {
    if (p < 1 || p > n - 1) throw std::invalid_argument("weitzenbock: p must be in [1, n-1]");
    Vec w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = (i < n - p) ? p : (n - p);
    return w;
}

Vec SymFun::lambda_range_weights(int n, int p, int q) {
    if (p < 1 || p > n || q < 0 || p + q > n)
        throw std::invalid_argument("lambda_range_sum: need 1 <= p, 0 <= q, p + q <= n");
    Vec w(static_cast<std::size_t>(n), 0.0);
    for (int i = p; i <= p + q; ++i) w[static_cast<std::size_t>(i - 1)] = 1.0;
    return w;
}

SymFun SymFun::ordered_linear(Vec mu) {
    const int n = static_cast<int>(mu.size());
    ConeSpec dom = ConeSpec::ordered_linear(mu);
    Vec w = mu;
    auto eval = [w](const EigenTuple& t) {
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * t[static_cast<int>(i)];
        return s;
    };
    auto grad = [w](const EigenTuple&) { return w; };
    std::ostringstream nm;
    nm << "ordered-linear";
    return SymFun(n, 1.0, eval, grad, true, nm.str(), dom);
}

SymFun SymFun::weitzenbock(int n, int p) {
    SymFun f = ordered_linear(weitzenbock_weights(n, p));
    std::ostringstream nm;
    nm << "weitzenbock-" << p;
    return SymFun(n, 1.0, [f](const EigenTuple& t) { return f(t); },
                  [f](const EigenTuple& t) { return f.gradient(t); }, true, nm.str(), f.domain());
}

SymFun SymFun::lambda_range_sum(int n, int p, int q) {
    SymFun f = ordered_linear(lambda_range_weights(n, p, q));
    std::ostringstream nm;
    nm << "lambda-sum-" << p << "-" << (p + q);
    return SymFun(n, 1.0, [f](const EigenTuple& t) { return f(t); },
                  [f](const EigenTuple& t) { return f.gradient(t); }, true, nm.str(), f.domain());
}

SymFun SymFun::circular(int n, double c) {
    if (!(c >= -1.0 && c <= 1.0)) throw std::invalid_argument("circular: c must be in [-1, 1]");
    ConeSpec dom = ConeSpec::circular(n, c);
    auto full_eval = [c](const EigenTuple& t) { return t.sum() + c * t.norm(); };
    auto grad = [c, n](const EigenTuple& t) {
        double r = t.norm();
        if (r <= 0.0) throw std::domain_error("circular gradient: undefined at the origin");
        Vec g(static_cast<std::size_t>(n), 1.0);
        for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] += c * t[i] / r;
        return g;
    };
    std::ostringstream nm;
    nm << "circular:" << c;
    return SymFun(n, 1.0, full_eval, grad, true, nm.str(), dom);
}

Vec LevelSetSpec::inward_normal(const EigenTuple& lambda) const {
    Vec g = f0.gradient(lambda);
    double r = norm2(g);
    if (r <= 0.0) throw std::runtime_error("inward_normal: vanishing gradient");
    for (double& x : g) x /= r;
    return g;
}

std::optional<double> ray_scaling(const LevelSetSpec& V, const EigenTuple& lambda,
                                  const ToleranceProfile& tol) {
    auto h = [&](double c) { return V.f0(lambda.scaled(c)) - 1.0; };
    const double c_lo = 1e-8, c_hi = 1e8;
    const int grid = 161;
    double prev_c = c_lo;
    double prev_h = h(prev_c);
    if (prev_h > 0.0)
        throw std::runtime_error("ray_scaling: level set reaches arbitrarily small scalings");
    int crossings = 0;
    double root_lo = 0.0, root_hi = 0.0;
    for (int i = 1; i < grid; ++i) {
        double c = c_lo * std::pow(c_hi / c_lo, static_cast<double>(i) / (grid - 1));
        double cur = h(c);
        if (prev_h <= 0.0 && cur > 0.0) {
            if (++crossings == 1) {
                root_lo = prev_c;
                root_hi = c;
            }
        } else if (prev_h > 0.0 && cur <= 0.0) {
            ++crossings;
        }
        prev_c = c;
        prev_h = cur;
    }
    if (crossings == 0) return std::nullopt;
    if (crossings > 1)
        throw std::runtime_error("ray_scaling: boundary crossed more than once along the ray");
    return bracketed_root(h, root_lo, root_hi, tol.root_rel_tol);
}

SymFun gauge_from_levelset(const LevelSetSpec& V, const ToleranceProfile& tol) {
    LevelSetSpec copy = V;
    auto eval = [copy, tol](const EigenTuple& lambda) {
        auto c = ray_scaling(copy, lambda, tol);
        return c ? 1.0 / *c : 0.0;
    };
    SymFun f(V.n, 1.0, eval, nullptr, false, "gauge(" + V.f0.name() + ")");
    ConeSpec dom = ConeSpec::gauge(V.n, [f](const EigenTuple& l) { return f(l); }, std::nullopt,
                                   "cone(" + f.name() + ")");
    return SymFun(V.n, 1.0, [f](const EigenTuple& l) { return f(l); }, nullptr, false, f.name(), dom);
}

LevelSetSpec levelset_from_cone(const ConeSpec& cone) {
    ConeSpec c = cone;
    auto eval = [c](const EigenTuple& t) { return c.margin(t); };
    LevelSetSpec V;
    V.n = cone.dim();
    V.f0 = SymFun(cone.dim(), 0.0, eval, nullptr, false, "margin(" + cone.describe() + ")");
    return V;
}

SymFun gauge_from_cone(const ConeSpec& cone, const ToleranceProfile& tol) {
    return gauge_from_levelset(levelset_from_cone(cone), tol);
}

double normal_identity_residual(const SymFun& f, const LevelSetSpec& V, const EigenTuple& lambda,
                                const ToleranceProfile& tol) {
    Vec nu = V.inward_normal(lambda);
    double ln = dot(lambda.values(), nu);
    if (ln <= 0.0) throw std::runtime_error("normal identity: lambda . nu <= 0");
    double e_dot = 0.0;
    for (double x : nu) e_dot += x;
    double rhs = e_dot / ln;

    ScalarFn fn = [&f](const Vec& v) { return f(EigenTuple(v)); };
    double h = tol.fd_gradient_scale * (1.0 + lambda.norm());
    Vec g = fd_gradient(fn, lambda.values(), h);
    double lhs = 0.0;
    for (double x : g) lhs += x;
    return std::fabs(lhs - rhs);
}

ReflectedLevelSet reflect_levelset(const LevelSetSpec& V, int probe_samples, std::uint64_t seed,
                                   const ToleranceProfile& tol) {
    const int n = V.n;
    auto phi_e = ray_scaling(V, EigenTuple::ones(n), tol);
    if (!phi_e) throw std::runtime_error("reflect_levelset: e is outside the generated cone");
    double c2 = 2.0 * (*phi_e);

    ReflectedLevelSet out;
    out.reflection_center2.assign(static_cast<std::size_t>(n), c2);

    LevelSetSpec Vc = V;
    auto reflected_eval = [Vc, c2](const EigenTuple& lambda) {
        Vec m(lambda.values().size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = -lambda[static_cast<int>(i)] + c2;
        return 2.0 - Vc.f0(EigenTuple(std::move(m)));
    };
    out.reflected.n = n;
    out.reflected.f0 =
        SymFun(n, 0.0, reflected_eval, nullptr, false, "reflect(" + V.f0.name() + ")");

    // convexity probe of V: midpoints of boundary pairs must stay in the
    // closure. One point gets a random coordinate permutation so the probe
    // also sees segments that leave the sorted chamber.
    Rng rng(seed);
    int checked = 0;
    for (int i = 0; i < probe_samples * 4 && checked < probe_samples; ++i) {
        Vec d1 = rng.sphere_point(n), d2 = rng.sphere_point(n);
        for (int j = 0; j < n; ++j) {
            d1[static_cast<std::size_t>(j)] += 1.5;
            d2[static_cast<std::size_t>(j)] += 1.5;
        }
        EigenTuple t1(d1), t2(d2);
        std::optional<double> c1, c2b;
        try {
            c1 = ray_scaling(V, t1, tol);
            c2b = ray_scaling(V, t2, tol);
        } catch (const std::runtime_error&) {
            continue;
        }
        if (!c1 || !c2b) continue;
        ++checked;
        Vec p2 = t2.values();
        for (std::size_t j = p2.size(); j > 1; --j)
            std::swap(p2[j - 1], p2[rng.next_u64() % j]);
        Vec mid(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            mid[static_cast<std::size_t>(j)] =
                0.5 * (*c1 * t1[j] + *c2b * p2[static_cast<std::size_t>(j)]);
        if (V.f0(EigenTuple(mid)) < 1.0 - 1e-7) {
            out.convexity_warning = true;
            break;
        }
    }
    return out;
}

Vec reflect_point(const ReflectedLevelSet& r, const Vec& x) {
    Vec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = -x[i] + r.reflection_center2[i];
    return y;
}

bool generated_cone_contains(const LevelSetSpec& V, const EigenTuple& dir,
                             const ToleranceProfile& tol) {
    return ray_scaling(V, dir, tol).has_value();
}

ConvexExtension::ConvexExtension(SymFun f, ConeSpec cone, double delta, int normal_samples,
                                 std::uint64_t seed, const ToleranceProfile& tol)
    : f_(std::move(f)), cone_(std::move(cone)), delta_(delta), tol_(tol) {
    if (!(delta > 0.0)) throw std::invalid_argument("convex_extend: delta must be > 0");
    const int n = cone_.dim();
    auto margin_raw = [this](const Vec& v) { return cone_.margin(EigenTuple(v)); };

    // sampled convexity check of the complement
    {
        Rng rng(seed ^ 0x5bd1e995ULL);
        int found = 0;
        std::vector<Vec> outside;
        for (int i = 0; i < 4000 && found < 60; ++i) {
            Vec d = rng.sphere_point(n);
            if (margin_raw(d) < -1e-6) {
                outside.push_back(d);
                ++found;
            }
        }
        for (std::size_t i = 0; i + 1 < outside.size(); i += 2) {
            Vec mid(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j)
                mid[static_cast<std::size_t>(j)] = 0.5 * (outside[i][static_cast<std::size_t>(j)] +
                                                          outside[i + 1][static_cast<std::size_t>(j)]);
            if (margin_raw(mid) > 1e-7 * (1.0 + norm2(mid)))
                throw std::invalid_argument("convex_extend: complement of the cone is not convex");
        }
    }

    // boundary normals from low-discrepancy sphere directions, slid along e
    SphereSampler sampler(n, seed);
    std::set<std::vector<long long>> seen;
    for (int i = 0; i < normal_samples; ++i) {
        Vec d = sampler.next();
        auto psi = [&](double t) {
            Vec x = d;
            for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] += t;
            return margin_raw(x);
        };
        double m0 = psi(0.0);
        double lo, hi;
        if (m0 > 0.0) {
            lo = -1.0;
            int guard = 0;
            while (psi(lo) > 0.0 && guard++ < 60) lo *= 2.0;
            if (psi(lo) > 0.0) continue;
            hi = 0.0;
        } else if (m0 < 0.0) {
            hi = 1.0;
            int guard = 0;
            while (psi(hi) < 0.0 && guard++ < 60) hi *= 2.0;
            if (psi(hi) < 0.0) continue;
            lo = 0.0;
        } else {
            lo = hi = 0.0;
        }
        double t_star = (lo == hi) ? 0.0 : bracketed_root(psi, lo, hi, tol.root_rel_tol);
        Vec x = d;
        for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] += t_star;
        double h = 1e-6 * (1.0 + norm2(x));
        Vec g = fd_gradient(margin_raw, x, h);
        double r = norm2(g);
        if (r <= 1e-12) continue;
        for (double& z : g) z /= r;
        std::sort(g.begin(), g.end(), std::greater<double>());
        std::vector<long long> key(g.size());
        for (std::size_t j = 0; j < g.size(); ++j)
            key[j] = static_cast<long long>(std::llround(g[j] * 1e7));
        if (seen.insert(key).second) normals_.push_back(g);
    }
    if (normals_.empty()) throw std::runtime_error("convex_extend: no boundary normals found");
}

double ConvexExtension::support_part(const EigenTuple& lambda) const {
    double best = -kInf;
    const Vec& v = lambda.values();  // descending
    for (const Vec& p : normals_) best = std::max(best, dot(p, v));
    return best;
}

double ConvexExtension::operator()(const EigenTuple& lambda) const {
    double m = cone_.margin(lambda);
    if (m >= 0.0) return f_(lambda);
    return delta_ * support_part(lambda);
}

bool ConditionReport::all_pass() const {
    for (const auto& c : checks)
        if (c.applicable && !c.pass) return false;
    return true;
}

const ConditionCheck* ConditionReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

ConditionReport verify_structural(const SymFun& f, const ConeSpec& cone, int samples,
                                  std::uint64_t seed, const ToleranceProfile& tol) {
    if (samples < 100) throw std::invalid_argument("verify_structural: need at least 100 samples");
    const int n = cone.dim();
    Rng rng(seed);
    ConditionReport rep;

    std::vector<EigenTuple> interior;
    interior.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) interior.push_back(sample_interior(cone, rng));

    ConditionCheck positivity{"positivity", true, true, kInf, {}, "min f over interior samples"};
    ConditionCheck partials{"monotone-partials", true, true, kInf, {}, "min df/dlambda_i"};
    ConditionCheck grad_floor{"gradient-sum-floor", true, true, kInf, {},
                              "min sum_i df_i / (1 + max_i |lambda_i df_i|)"};
    for (const auto& lam : interior) {
        double v = f(lam);
        if (v < positivity.worst) {
            positivity.worst = v;
            positivity.witness = lam.values();
        }
        Vec g = f.gradient(lam);
        double gmin = kInf, gsum = 0.0, denom = 1.0;
        for (int i = 0; i < n; ++i) {
            gmin = std::min(gmin, g[static_cast<std::size_t>(i)]);
            gsum += g[static_cast<std::size_t>(i)];
            denom = std::max(denom, 1.0 + std::fabs(lam[i] * g[static_cast<std::size_t>(i)]));
        }
        if (gmin < partials.worst) {
            partials.worst = gmin;
            partials.witness = lam.values();
        }
        double floor = gsum / denom;
        if (floor < grad_floor.worst) {
            grad_floor.worst = floor;
            grad_floor.witness = lam.values();
        }
    }
    positivity.pass = positivity.worst > 0.0;
    partials.pass = partials.worst > 0.0;
    grad_floor.pass = grad_floor.worst > 1e-10;

    ConditionCheck boundary{"boundary-vanishing", true, true, 0.0, {}, "max |f| on boundary samples"};
    {
        int bn = std::min(samples, 100);
        for (int i = 0; i < bn; ++i) {
            EigenTuple b = sample_boundary(cone, rng, tol);
            double v = 0.0;
            bool ok = true;
            try {
                v = std::fabs(f(b));
            } catch (const std::domain_error&) {
                ok = false;
            }
            if (ok && v > boundary.worst) {
                boundary.worst = v;
                boundary.witness = b.values();
            }
        }
        boundary.pass = boundary.worst <= 1e-5;
    }

    ConditionCheck growth{"ray-growth", true, true, kInf, {}, "min f(10 lambda) / f(lambda)"};
    for (int i = 0; i < std::min(samples, 200); ++i) {
        const EigenTuple& lam = interior[static_cast<std::size_t>(i)];
        double v = f(lam);
        if (v <= 0.0) continue;
        double ratio = f(lam.scaled(10.0)) / v;
        if (ratio < growth.worst) {
            growth.worst = ratio;
            growth.witness = lam.values();
        }
    }
    growth.pass = growth.worst >= 2.0;

    // midpoint probe to classify convexity over the sampled interior
    int convex_votes = 0, concave_votes = 0, pairs = 0;
    for (int i = 0; i + 1 < std::min(samples, 400); i += 2) {
        const EigenTuple& a = interior[static_cast<std::size_t>(i)];
        const EigenTuple& b = interior[static_cast<std::size_t>(i) + 1];
        Vec mid(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) mid[static_cast<std::size_t>(j)] = 0.5 * (a[j] + b[j]);
        double fm = f(EigenTuple(mid));
        double avg = 0.5 * (f(a) + f(b));
        double slack = 1e-9 * (1.0 + std::fabs(avg));
        ++pairs;
        if (fm <= avg + slack) ++convex_votes;
        if (fm >= avg - slack) ++concave_votes;
    }
    bool is_convex = (pairs > 0 && convex_votes == pairs);
    bool is_concave = (pairs > 0 && concave_votes == pairs);

    double fe = f(EigenTuple::ones(n));
    ConditionCheck sumvsfe{"gradient-sum-vs-f(e)", true, true, 0.0, {}, ""};
    if (std::fabs(f.degree() - 1.0) < 1e-12 && (is_convex || is_concave)) {
        double worst = 0.0;
        Vec wit;
        for (const auto& lam : interior) {
            Vec g = f.gradient(lam);
            double s = 0.0;
            for (double x : g) s += x;
            double viol = is_convex ? (s - fe) : (fe - s);
            if (viol > worst) {
                worst = viol;
                wit = lam.values();
            }
        }
        sumvsfe.worst = worst;
        sumvsfe.witness = wit;
        sumvsfe.pass = worst <= 1e-6 * (1.0 + std::fabs(fe));
        sumvsfe.note = is_convex ? "convex: sum df_i <= f(e)" : "concave: sum df_i >= f(e)";
    } else {
        sumvsfe.applicable = false;
        sumvsfe.note = "needs degree-1 homogeneity and definite curvature";
    }

    ConditionCheck floor_c{"partial-floor", true, true, kInf, {}, ""};
    {
        double mu = is_convex ? mu_plus(cone, tol) : (is_concave ? mu_minus(cone, tol) : kInf);
        if (std::isfinite(mu) && (is_convex || is_concave)) {
            double c = 1.0 / (1.0 + mu);
            for (const auto& lam : interior) {
                Vec g = f.gradient(lam);
                double s = 0.0, gmin = kInf;
                for (double x : g) {
                    s += x;
                    gmin = std::min(gmin, x);
                }
                double slackv = gmin - c * s;
                if (slackv < floor_c.worst) {
                    floor_c.worst = slackv;
                    floor_c.witness = lam.values();
                }
            }
            std::ostringstream os;
            os << "df_i >= sum_j df_j / (1 + " << (is_convex ? "mu+" : "mu-") << "), c=" << c;
            floor_c.note = os.str();
            floor_c.pass = floor_c.worst >= -1e-7;
        } else {
            floor_c.applicable = false;
            floor_c.note = "needs definite curvature and a finite mu";
        }
    }

    rep.checks = {positivity, partials, grad_floor, boundary, growth, sumvsfe, floor_c};
    return rep;
}

double maxform_value(int n, double s, const EigenTuple& lambda) {
    if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("maxform: s must be in (0, 1]");
    double total = lambda.sum();
    double best = -kInf;
    for (int k = 0; k < n; ++k) {
        double v = lambda[k] + s / (n - 1) * (total - lambda[k]);
        best = std::max(best, v);
    }
    return best;
}

SymFun maxform(int n, double s) {
    if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("maxform: s must be in (0, 1]");
    auto eval = [n, s](const EigenTuple& t) { return maxform_value(n, s, t); };
    auto grad = [n, s](const EigenTuple& t) {
        double total = t.sum();
        int kbest = 0;
        double best = -kInf;
        for (int k = 0; k < n; ++k) {
            double v = t[k] + s / (n - 1) * (total - t[k]);
            if (v > best) {
                best = v;
                kbest = k;
            }
        }
        Vec g(static_cast<std::size_t>(n), s / (n - 1));
        g[static_cast<std::size_t>(kbest)] = 1.0;
        return g;
    };
    ConeSpec dom = ConeSpec::gauge(
        n, [n, s](const EigenTuple& t) { return maxform_value(n, s, t); }, std::nullopt,
        "cone(max-form)");
    std::ostringstream nm;
    nm << "max-form:" << s;
    return SymFun(n, 1.0, eval, grad, true, nm.str(), dom);
}

namespace {
// 7-point Gauss-Legendre rule on [-1, 1]
constexpr double kGlNodes[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                                0.0,                 0.4058451513773972,  0.7415311855993945,
                                0.9491079123427585};
constexpr double kGlWeights[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                                  0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                                  0.1294849661688697};
}  // namespace

MollifiedMaxForm::MollifiedMaxForm(int n, double s, double eps) : n_(n), s_(s), eps_(eps) {
    if (n < 2 || n > 4)
        throw std::invalid_argument("MollifiedMaxForm: supported only for 2 <= n <= 4");
    if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("MollifiedMaxForm: s must be in (0, 1]");
    if (!(eps > 0.0 && eps < 0.5 / std::sqrt(static_cast<double>(n))))
        throw std::invalid_argument("MollifiedMaxForm: requires 0 < eps < 1/(2 sqrt(n))");

    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    double total = 0.0;
    while (true) {
        Vec node(static_cast<std::size_t>(n));
        double w = 1.0, r2 = 0.0;
        for (int i = 0; i < n; ++i) {
            double u = kGlNodes[idx[static_cast<std::size_t>(i)]];
            node[static_cast<std::size_t>(i)] = eps * u;
            w *= kGlWeights[idx[static_cast<std::size_t>(i)]];
            r2 += u * u;
        }
        if (r2 < 1.0) {
            double bump = std::exp(-1.0 / (1.0 - r2));
            nodes_.push_back(node);
            weights_.push_back(w * bump);
            total += w * bump;
        }
        int d = 0;
        while (d < n) {
            if (++idx[static_cast<std::size_t>(d)] < 7) break;
            idx[static_cast<std::size_t>(d)] = 0;
            ++d;
        }
        if (d == n) break;
    }
    for (double& w : weights_) w /= total;
}

double MollifiedMaxForm::operator()(const EigenTuple& lambda) const {
    double acc = 0.0;
    Vec shifted(lambda.values().size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        for (std::size_t i = 0; i < shifted.size(); ++i)
            shifted[i] = lambda[static_cast<int>(i)] - nodes_[k][i];
        acc += weights_[k] * maxform_value(n_, s_, EigenTuple(shifted));
    }
    return acc;
}

EigenTuple sample_interior(const ConeSpec& cone, Rng& rng, double scale) {
    const int n = cone.dim();
    const Vec& w = cone.witness().values();
    for (int attempt = 0; attempt < 500; ++attempt) {
        Vec x = rng.sphere_point(n);
        double blend = rng.uniform(0.0, 3.0);
        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] += blend * w[static_cast<std::size_t>(i)];
        EigenTuple t(std::move(x));
        if (cone.contains(t, 1e-7).region == Region::Interior)
            return t.scaled(scale * rng.uniform(0.2, 3.0));
    }
    // fall back to a scaled witness, interior by the cone axioms
    return cone.witness().scaled(scale * rng.uniform(0.5, 2.0));
}

EigenTuple sample_boundary(const ConeSpec& cone, Rng& rng, const ToleranceProfile& tol) {
    const int n = cone.dim();
    EigenTuple x = sample_interior(cone, rng);
    auto psi = [&](double t) {
        Vec v = x.values();
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= t;
        return cone.margin(EigenTuple(std::move(v)));
    };
    double hi = 1.0;
    int guard = 0;
    while (psi(hi) > 0.0 && guard++ < 80) hi *= 2.0;
    if (psi(hi) > 0.0) throw std::runtime_error("sample_boundary: failed to exit the cone");
    double t_star = bracketed_root(psi, 0.0, hi, tol.root_rel_tol);
    Vec v = x.values();
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= t_star;
    return EigenTuple(std::move(v));
}

}  // namespace mobcone
