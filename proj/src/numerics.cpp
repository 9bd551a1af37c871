#include "mobcone/numerics.hpp"

#include <cmath>
#include <limits>

namespace mobcone {

void ToleranceProfile::validate() const {
    auto pos = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!pos(fd_gradient_scale) || !pos(fd_hessian_scale) || !pos(eig_offdiag_rel) ||
        !pos(root_rel_tol) || !pos(ode_rtol) || !pos(ode_atol) || !pos(ode_event_time_tol) ||
        !pos(boundary_tol) || !pos(mu_bisect_cap))
        throw std::invalid_argument("ToleranceProfile: all entries must be strictly positive");
}

namespace {

double eval_checked(const ScalarFn& f, const Vec& x) {
    double v = f(x);
    if (!std::isfinite(v)) throw std::runtime_error("finite-difference stencil hit a non-finite value");
    return v;
}

}  // namespace

Vec fd_gradient(const ScalarFn& f, const Vec& x, double h) {
    const int n = static_cast<int>(x.size());
    Vec g(x.size(), 0.0);
    Vec xp = x, xm = x;
    for (int i = 0; i < n; ++i) {
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        g[i] = (eval_checked(f, xp) - eval_checked(f, xm)) / (2.0 * h);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    return g;
}

Matrix fd_hessian(const ScalarFn& f, const Vec& x, double h) {
    const int n = static_cast<int>(x.size());
    Matrix H(n);
    const double f0 = eval_checked(f, x);
    Vec y = x;
    for (int i = 0; i < n; ++i) {
        y[i] = x[i] + h;
        double fp = eval_checked(f, y);
        y[i] = x[i] - h;
        double fm = eval_checked(f, y);
        y[i] = x[i];
        H.at(i, i) = (fp - 2.0 * f0 + fm) / (h * h);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            y[i] = x[i] + h;
            y[j] = x[j] + h;
            double fpp = eval_checked(f, y);
            y[j] = x[j] - h;
            double fpm = eval_checked(f, y);
            y[i] = x[i] - h;
            double fmm = eval_checked(f, y);
            y[j] = x[j] + h;
            double fmp = eval_checked(f, y);
            y[i] = x[i];
            y[j] = x[j];
            double v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            H.at(i, j) = v;
            H.at(j, i) = v;
        }
    }
    return H;
}

EigResult sym_eigs(const Matrix& A, double offdiag_rel) {
    const int n = A.n;
    if (n < 1 || n > 16) throw std::invalid_argument("sym_eigs: dimension must be in [1, 16]");
    if (A.max_asymmetry() > 1e-10 * (1.0 + A.max_abs()))
        throw std::invalid_argument("sym_eigs: matrix asymmetric beyond tolerance");

    Matrix M = A;
    M.symmetrize();
    Matrix V = Matrix::identity(n);
    const double anorm = M.frobenius();
    const double stop = offdiag_rel * std::max(anorm, 1e-300);

    auto offdiag = [&]() {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += 2.0 * M.at(p, q) * M.at(p, q);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && offdiag() > stop; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = M.at(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                double theta = 0.5 * (M.at(q, q) - M.at(p, p)) / apq;
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double mkp = M.at(k, p), mkq = M.at(k, q);
                    M.at(k, p) = c * mkp - s * mkq;
                    M.at(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    double mpk = M.at(p, k), mqk = M.at(q, k);
                    M.at(p, k) = c * mpk - s * mqk;
                    M.at(q, k) = s * mpk + c * mqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = V.at(k, p), vkq = V.at(k, q);
                    V.at(k, p) = c * vkp - s * vkq;
                    V.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return M.at(a, a) > M.at(b, b); });

    EigResult r;
    r.eigenvalues.resize(static_cast<std::size_t>(n));
    r.vectors = Matrix(n);
    for (int i = 0; i < n; ++i) {
        int src = order[static_cast<std::size_t>(i)];
        r.eigenvalues[static_cast<std::size_t>(i)] = M.at(src, src);
        for (int k = 0; k < n; ++k) r.vectors.at(k, i) = V.at(k, src);
    }
    return r;
}

double bracketed_root(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
    double flo = f(lo), fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi))
        throw std::runtime_error("bracketed_root: non-finite endpoint value");
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw std::runtime_error("bracketed_root: no sign change on the bracket");

    for (int iter = 0; iter < 400; ++iter) {
        double width = hi - lo;
        if (width <= rel_tol * (std::fabs(lo) + std::fabs(hi) + 1.0)) break;
        double mid = 0.5 * (lo + hi);
        // secant candidate, accepted only if it lands strictly inside
        double sec = lo - flo * (hi - lo) / (fhi - flo);
        double x = (iter % 2 == 0 && sec > lo + 0.01 * width && sec < hi - 0.01 * width) ? sec : mid;
        double fx = f(x);
        if (!std::isfinite(fx)) throw std::runtime_error("bracketed_root: non-finite interior value");
        if (fx == 0.0) return x;
        if (flo * fx < 0.0) {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepOut {
    Vec y;     // 5th order solution
    Vec k7;    // FSAL derivative at the end point
    double err;  // scaled error estimate
};

StepOut dp_step(const OdeRhs& f, double t, const Vec& y, const Vec& k1, double h, double rtol,
                double atol) {
    const std::size_t n = y.size();
    auto stage = [&](const std::vector<std::pair<double, const Vec*>>& terms) {
        Vec z = y;
        for (auto& [coef, k] : terms)
            for (std::size_t i = 0; i < n; ++i) z[i] += h * coef * (*k)[i];
        return z;
    };
    Vec k2 = f(t + c2 * h, stage({{a21, &k1}}));
    Vec k3 = f(t + c3 * h, stage({{a31, &k1}, {a32, &k2}}));
    Vec k4 = f(t + c4 * h, stage({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    Vec k5 = f(t + c5 * h, stage({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    Vec k6 = f(t + h, stage({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    StepOut out;
    out.y = y;
    for (std::size_t i = 0; i < n; ++i)
        out.y[i] += h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    out.k7 = f(t + h, out.y);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                        e7 * out.k7[i]);
        double sc = atol + rtol * std::max(std::fabs(y[i]), std::fabs(out.y[i]));
        err = std::max(err, std::fabs(e) / sc);
    }
    out.err = err;
    return out;
}

}  // namespace

OdeResult rk45(const OdeRhs& f, Vec y0, double t0, double t1, double rtol, double atol,
               const OdeEvent& event, const std::vector<double>& dense_times,
               double event_time_tol) {
    if (!(t1 > t0)) throw std::invalid_argument("rk45: requires t1 > t0");
    OdeResult res;
    double t = t0;
    Vec y = std::move(y0);
    Vec k1 = f(t, y);
    res.samples.push_back({t, y});
    if (event && event(t, y)) {
        res.status = OdeStatus::EventHit;
        res.event_time = t;
        return res;
    }

    std::size_t next_dense = 0;
    while (next_dense < dense_times.size() && dense_times[next_dense] <= t0) ++next_dense;

    double h_prop = std::min(1e-3 * (t1 - t0), 1e-2);
    const double hmin_rel = 1e-14;

    for (long step = 0; step < 20'000'000; ++step) {
        if (t >= t1) break;
        double target = t1;
        if (next_dense < dense_times.size()) target = std::min(target, dense_times[next_dense]);
        const bool clamped = (t + h_prop > target);
        double h = clamped ? target - t : h_prop;
        if (h < hmin_rel * std::max(1.0, std::fabs(t))) {
            res.status = OdeStatus::StepUnderflow;
            return res;
        }

        StepOut s = dp_step(f, t, y, k1, h, rtol, atol);
        if (!std::isfinite(s.err) || s.err > 1.0) {
            double shrink = std::isfinite(s.err) ? std::max(0.2, 0.9 * std::pow(s.err, -0.2)) : 0.2;
            h_prop = h * shrink;
            continue;
        }

        // accepted
        double t_new = t + h;
        if (event && event(t_new, s.y)) {
            // localize the crossing from the pre-event state by bisecting
            // the sub-step size
            double lo = 0.0, hi = h;
            Vec y_hit = s.y;
            while (hi - lo > event_time_tol) {
                double mid = 0.5 * (lo + hi);
                StepOut sub = dp_step(f, t, y, k1, mid, rtol, atol);
                if (event(t + mid, sub.y)) {
                    hi = mid;
                    y_hit = sub.y;
                } else {
                    lo = mid;
                }
            }
            res.samples.push_back({t + hi, y_hit});
            res.status = OdeStatus::EventHit;
            res.event_time = t + hi;
            return res;
        }

        t = t_new;
        y = s.y;
        k1 = s.k7;
        res.samples.push_back({t, y});
        while (next_dense < dense_times.size() && dense_times[next_dense] <= t) ++next_dense;

        double grow = (s.err > 0.0) ? 0.9 * std::pow(s.err, -0.2) : 5.0;
        double h_next = h * std::min(5.0, std::max(0.2, grow));
        h_prop = clamped ? std::max(h_prop, h_next) : h_next;
    }
    res.status = OdeStatus::Completed;
    return res;
}

std::uint64_t Rng::next_u64() {
    // SplitMix64
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 1e-300);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

Vec Rng::normal_vec(int n) {
    Vec v(static_cast<std::size_t>(n));
    for (auto& x : v) x = normal();
    return v;
}

Vec Rng::sphere_point(int n) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vec v = normal_vec(n);
        double r = norm2(v);
        if (r > 1e-12) {
            for (auto& x : v) x /= r;
            return v;
        }
    }
    throw std::runtime_error("sphere_point: degenerate draw");
}

double halton(std::uint64_t index, int base) {
    double f = 1.0, r = 0.0;
    std::uint64_t i = index;
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
        i /= static_cast<std::uint64_t>(base);
    }
    return r;
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("inverse_normal_cdf: p outside (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    double q, r, x;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= phigh) {
        q = p - 0.5;
        r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    return x;
}

SphereSampler::SphereSampler(int dim, std::uint64_t seed) : dim_(dim), index_(17 + (seed % 1024) * 7919) {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    if (dim < 1 || dim > 16) throw std::invalid_argument("SphereSampler: dimension must be in [1, 16]");
    bases_.assign(primes, primes + dim);
}

Vec SphereSampler::next() {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vec v(static_cast<std::size_t>(dim_));
        for (int i = 0; i < dim_; ++i) {
            double u = halton(index_, bases_[static_cast<std::size_t>(i)]);
            u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
            v[static_cast<std::size_t>(i)] = inverse_normal_cdf(u);
        }
        ++index_;
        double r = norm2(v);
        if (r > 1e-9) {
            for (auto& x : v) x /= r;
            return v;
        }
    }
    throw std::runtime_error("SphereSampler: degenerate draw");
}

}  // namespace mobcone
