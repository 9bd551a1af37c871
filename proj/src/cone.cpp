#include "mobcone/cone.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mobcone {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double elementary_symmetric(const Vec& lambda, int k) {
    const int n = static_cast<int>(lambda.size());
    if (k < 0 || k > n) throw std::invalid_argument("elementary_symmetric: k out of range");
    if (k == 0) return 1.0;
    Vec e(static_cast<std::size_t>(k) + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < n; ++i) {
        for (int j = std::min(k, i + 1); j >= 1; --j)
            e[static_cast<std::size_t>(j)] += lambda[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(j) - 1];
    }
    return e[static_cast<std::size_t>(k)];
}

Vec elementary_symmetric_gradient(const Vec& lambda, int k) {
    const int n = static_cast<int>(lambda.size());
    Vec g(lambda.size(), 0.0);
    if (k == 0) return g;
    // partial_i sigma_k = sigma_{k-1}(lambda with entry i removed);
    // recomputed per entry rather than deflated, which stays stable for
    // large entries
    Vec rest(lambda.size() - 1);
    for (int i = 0; i < n; ++i) {
        std::size_t m = 0;
        for (int j = 0; j < n; ++j)
            if (j != i) rest[m++] = lambda[static_cast<std::size_t>(j)];
        g[static_cast<std::size_t>(i)] = elementary_symmetric(rest, k - 1);
    }
    return g;
}

ConeSpec ConeSpec::gamma_k(int n, int k) {
    if (n < 2) throw std::invalid_argument("gamma_k: n must be >= 2");
    if (k < 1 || k > n) throw std::invalid_argument("gamma_k: k must be in [1, n]");
    ConeSpec c;
    c.n_ = n;
    c.family_ = ConeFamily::GammaK;
    c.k_ = k;
    c.witness_ = EigenTuple::ones(n);
    return c;
}

ConeSpec ConeSpec::neg_dual_gamma_k(int n, int k) {
    ConeSpec c = gamma_k(n, k);
    c.family_ = ConeFamily::NegDualGammaK;
    return c;
}

ConeSpec ConeSpec::ordered_linear(Vec weights) {
    const int n = static_cast<int>(weights.size());
    if (n < 2) throw std::invalid_argument("ordered_linear: need at least 2 weights");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("ordered_linear: weights must be >= 0");
        total += w;
    }
    if (total <= 0.0) throw std::invalid_argument("ordered_linear: weights must not all vanish");
    ConeSpec c;
    c.n_ = n;
    c.family_ = ConeFamily::OrderedLinear;
    c.weights_ = std::move(weights);
    c.witness_ = EigenTuple::ones(n);
    return c;
}

ConeSpec ConeSpec::circular(int n, double cc) {
    if (n < 2) throw std::invalid_argument("circular: n must be >= 2");
    if (!(cc >= -1.0 && cc <= 1.0)) throw std::invalid_argument("circular: c must be in [-1, 1]");
    ConeSpec c;
    c.n_ = n;
    c.family_ = ConeFamily::Circular;
    c.param_ = cc;
    c.witness_ = EigenTuple::ones(n);
    return c;
}

ConeSpec ConeSpec::extremal_largest(int n, double mu) {
    if (n < 2) throw std::invalid_argument("extremal_largest: n must be >= 2");
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("extremal_largest: mu must be finite and >= 0");
    ConeSpec c;
    c.n_ = n;
    c.family_ = ConeFamily::ExtremalLargest;
    c.param_ = mu;
    c.witness_ = EigenTuple::ones(n);
    return c;
}

ConeSpec ConeSpec::extremal_smallest(int n, double mu) {
    ConeSpec c = extremal_largest(n, mu);
    c.family_ = ConeFamily::ExtremalSmallest;
    return c;
}

ConeSpec ConeSpec::gauge(int n, std::function<double(const EigenTuple&)> g,
                         std::optional<EigenTuple> witness, std::string label) {
    if (n < 2) throw std::invalid_argument("gauge: n must be >= 2");
    if (!g) throw std::invalid_argument("gauge: defining function required");
    ConeSpec c;
    c.n_ = n;
    c.family_ = ConeFamily::Gauge;
    c.gauge_ = std::move(g);
    c.witness_ = witness ? std::move(*witness) : EigenTuple::ones(n);
    if (c.witness_->dim() != n) throw std::invalid_argument("gauge: witness dimension mismatch");
    c.label_ = std::move(label);
    return c;
}

std::string ConeSpec::describe() const {
    std::ostringstream os;
    switch (family_) {
        case ConeFamily::GammaK: os << "gamma-" << k_; break;
        case ConeFamily::NegDualGammaK: os << "neg-dual-gamma-" << k_; break;
        case ConeFamily::OrderedLinear: {
            os << "ordered-linear:";
            for (std::size_t i = 0; i < weights_.size(); ++i) os << (i ? "," : "") << weights_[i];
            break;
        }
        case ConeFamily::Circular: os << "circular:" << param_; break;
        case ConeFamily::ExtremalLargest: os << "extremal-largest:" << param_; break;
        case ConeFamily::ExtremalSmallest: os << "extremal-smallest:" << param_; break;
        case ConeFamily::Gauge: os << label_; break;
    }
    os << " (n=" << n_ << ")";
    return os.str();
}

double ConeSpec::margin(const EigenTuple& lambda) const {
    if (lambda.dim() != n_) throw std::invalid_argument("cone margin: dimension mismatch");
    const Vec& v = lambda.values();
    switch (family_) {
        case ConeFamily::GammaK: {
            double m = kInf;
            for (int l = 1; l <= k_; ++l) m = std::min(m, elementary_symmetric(v, l));
            return m;
        }
        case ConeFamily::NegDualGammaK: {
            // lambda in R^n \ (-closure(Gamma_k))  <=>  -lambda outside closure(Gamma_k)
            Vec neg(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[v.size() - 1 - i];  // keeps descending order
            double m = kInf;
            for (int l = 1; l <= k_; ++l) m = std::min(m, elementary_symmetric(neg, l));
            return -m;
        }
        case ConeFamily::OrderedLinear: {
            double s = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) s += weights_[i] * v[i];
            return s;
        }
        case ConeFamily::Circular: {
            double s = 0.0, q = 0.0;
            for (double x : v) {
                s += x;
                q += x * x;
            }
            return s + param_ * std::sqrt(q);
        }
        case ConeFamily::ExtremalLargest:
            return v[0] + param_ * v[1];
        case ConeFamily::ExtremalSmallest:
            return v[v.size() - 1] + param_ * v[v.size() - 2];
        case ConeFamily::Gauge:
            return gauge_(lambda);
    }
    throw std::logic_error("cone margin: unreachable");
}

ConePosition ConeSpec::contains(const EigenTuple& lambda, double tol) const {
    if (!(tol > 0.0)) throw std::invalid_argument("cone contains: tol must be > 0");
    double m = margin(lambda);
    if (!std::isfinite(m)) throw std::runtime_error("cone contains: non-finite margin");
    double band = tol * (1.0 + lambda.norm());
    if (std::fabs(m) <= band) return {Region::Boundary, m};
    return {m > 0.0 ? Region::Interior : Region::Exterior, m};
}

namespace {

EigenTuple minus_ray_point(int n, double c) {
    // (c, -1, ..., -1); EigenTuple construction re-sorts when c < -1
    Vec v(static_cast<std::size_t>(n), -1.0);
    v[0] = c;
    return EigenTuple(std::move(v));
}

EigenTuple plus_ray_point(int n, double c) {
    // (-c, 1, ..., 1)
    Vec v(static_cast<std::size_t>(n), 1.0);
    v[0] = -c;
    return EigenTuple(std::move(v));
}

// mu^- ray: margin(c) with candidate (c, -1, ..., -1); the admissible set
// {c : margin >= 0} is an up-set, so a single crossing is expected.
MuResult mu_bisect(const ConeSpec& cone, bool minus_side, const ToleranceProfile& tol) {
    auto f = [&](double c) {
        EigenTuple p = minus_side ? minus_ray_point(cone.dim(), c) : plus_ray_point(cone.dim(), c);
        double m = cone.margin(p);
        return minus_side ? m : -m;  // want increasing-through-zero in both cases
    };

    MuResult r{0.0, false, true};

    // single-crossing scan along the ray
    {
        int sign_changes = 0;
        double prev = f(0.0);
        for (int i = 1; i <= 160; ++i) {
            double c = std::pow(tol.mu_bisect_cap, static_cast<double>(i) / 160.0) - 1.0 + 1e-9 * i;
            double cur = f(c);
            if ((prev < 0.0 && cur >= 0.0) || (prev >= 0.0 && cur < 0.0)) ++sign_changes;
            prev = cur;
        }
        r.unique_crossing = sign_changes <= 1;
    }

    double f0 = f(0.0);
    if (f0 >= 0.0) {
        r.value = 0.0;
        return r;
    }
    double fcap = f(tol.mu_bisect_cap);
    if (fcap < 0.0) {
        r.value = kInf;
        return r;
    }
    double lo = 0.0, hi = tol.mu_bisect_cap;
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-12 * (1.0 + std::fabs(mid))) break;
        double fm = f(mid);
        if (!std::isfinite(fm)) throw std::runtime_error("mu bisection: non-finite margin");
        if (fm < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    if (hi - lo > 1e-6) throw std::runtime_error("mu bisection: failed to converge");
    r.value = 0.5 * (lo + hi);
    return r;
}

std::optional<double> mu_minus_closed(const ConeSpec& cone) {
    const int n = cone.dim();
    switch (cone.family()) {
        case ConeFamily::GammaK:
            // sigma_1(c, -1, ..., -1) = c - (n-1) crosses zero, so k = 1 is
            // finite; for k >= 2 the sigma_1 and sigma_2 constraints exclude
            // the whole ray
            return cone.k() == 1 ? std::optional<double>(static_cast<double>(n - 1)) : std::optional<double>(kInf);
        case ConeFamily::NegDualGammaK:
            return static_cast<double>(n - cone.k()) / cone.k();
        case ConeFamily::OrderedLinear: {
            const Vec& w = cone.weights();
            double rest = 0.0;
            for (std::size_t i = 1; i < w.size(); ++i) rest += w[i];
            if (w[0] <= 0.0) return kInf;
            return rest / w[0];
        }
        case ConeFamily::ExtremalLargest:
            return cone.param();
        case ConeFamily::ExtremalSmallest: {
            if (n == 2) return cone.param() > 0.0 ? std::optional<double>(1.0 / cone.param()) : std::optional<double>(kInf);
            return kInf;  // lambda_n + mu lambda_{n-1} = -1 - mu < 0 on the whole ray
        }
        default:
            return std::nullopt;
    }
}

std::optional<double> mu_plus_closed(const ConeSpec& cone) {
    const int n = cone.dim();
    switch (cone.family()) {
        case ConeFamily::GammaK:
            return static_cast<double>(n - cone.k()) / cone.k();
        case ConeFamily::NegDualGammaK:
            return cone.k() == 1 ? std::optional<double>(static_cast<double>(n - 1)) : std::optional<double>(kInf);
        case ConeFamily::OrderedLinear: {
            const Vec& w = cone.weights();
            double rest = 0.0;
            for (std::size_t i = 0; i + 1 < w.size(); ++i) rest += w[i];
            if (w[w.size() - 1] <= 0.0) return kInf;
            return rest / w[w.size() - 1];
        }
        case ConeFamily::ExtremalLargest: {
            if (n == 2) return cone.param() > 0.0 ? std::optional<double>(1.0 / cone.param()) : std::optional<double>(kInf);
            return kInf;  // lambda_1 + mu lambda_2 = 1 + mu > 0 on the whole ray
        }
        case ConeFamily::ExtremalSmallest:
            return cone.param();
        default:
            return std::nullopt;
    }
}

}  // namespace

MuResult mu_minus_detail(const ConeSpec& cone, const ToleranceProfile& tol) {
    if (auto cf = mu_minus_closed(cone)) return {*cf, true, true};
    // shortcut: mu^- = +inf exactly when (1, 0, ..., 0) lies on the boundary
    {
        Vec v(static_cast<std::size_t>(cone.dim()), 0.0);
        v[0] = 1.0;
        if (cone.contains(EigenTuple(std::move(v)), tol.boundary_tol).region == Region::Boundary)
            return {kInf, false, true};
    }
    return mu_bisect(cone, true, tol);
}

MuResult mu_plus_detail(const ConeSpec& cone, const ToleranceProfile& tol) {
    if (auto cf = mu_plus_closed(cone)) return {*cf, true, true};
    {
        Vec v(static_cast<std::size_t>(cone.dim()), 0.0);
        v[0] = -1.0;
        if (cone.contains(EigenTuple(std::move(v)), tol.boundary_tol).region == Region::Boundary)
            return {kInf, false, true};
    }
    return mu_bisect(cone, false, tol);
}

double mu_minus(const ConeSpec& cone, const ToleranceProfile& tol) {
    return mu_minus_detail(cone, tol).value;
}

double mu_plus(const ConeSpec& cone, const ToleranceProfile& tol) {
    return mu_plus_detail(cone, tol).value;
}

double mu_minus_bisection(const ConeSpec& cone, const ToleranceProfile& tol) {
    return mu_bisect(cone, true, tol).value;
}

double mu_plus_bisection(const ConeSpec& cone, const ToleranceProfile& tol) {
    return mu_bisect(cone, false, tol).value;
}

ConeSpec negation_dual(const ConeSpec& cone) {
    const int n = cone.dim();
    switch (cone.family()) {
        case ConeFamily::GammaK:
            return ConeSpec::neg_dual_gamma_k(n, cone.k());
        case ConeFamily::NegDualGammaK:
            return ConeSpec::gamma_k(n, cone.k());
        case ConeFamily::OrderedLinear: {
            Vec w = cone.weights();
            std::reverse(w.begin(), w.end());
            return ConeSpec::ordered_linear(std::move(w));
        }
        case ConeFamily::Circular:
            return ConeSpec::circular(n, -cone.param());
        case ConeFamily::ExtremalLargest:
            return ConeSpec::extremal_smallest(n, cone.param());
        case ConeFamily::ExtremalSmallest:
            return ConeSpec::extremal_largest(n, cone.param());
        case ConeFamily::Gauge: {
            ConeSpec self = cone;  // copy captures the defining function
            auto g = [self](const EigenTuple& lambda) { return -self.margin(lambda.negated()); };
            return ConeSpec::gauge(n, g, std::nullopt, "neg-dual-gauge");
        }
    }
    throw std::logic_error("negation_dual: unreachable");
}

LambdaStarClass lambda_star_class(const ConeSpec& cone, const ToleranceProfile& tol) {
    const int n = cone.dim();
    LambdaStarClass out{};
    out.star = cone.contains(EigenTuple::lambda_star(n), tol.boundary_tol);
    out.neg_star = cone.contains(EigenTuple::neg_lambda_star(n), tol.boundary_tol);
    out.mu_minus = mu_minus(cone, tol);
    out.mu_plus = mu_plus(cone, tol);

    const double mu_band = 1e-9;
    auto from_mu_minus = [&](double mu) {
        // mu^- = 1 iff lambda* on the boundary; > 1 exterior; < 1 interior
        if (std::isfinite(mu) && std::fabs(mu - 1.0) <= mu_band) return Region::Boundary;
        return mu > 1.0 ? Region::Exterior : Region::Interior;
    };
    auto from_mu_plus = [&](double mu) {
        if (std::isfinite(mu) && std::fabs(mu - 1.0) <= mu_band) return Region::Boundary;
        return mu > 1.0 ? Region::Interior : Region::Exterior;
    };
    Region star_mu = from_mu_minus(out.mu_minus);
    Region neg_star_mu = from_mu_plus(out.mu_plus);
    if (star_mu != out.star.region || neg_star_mu != out.neg_star.region) {
        std::ostringstream os;
        os << "lambda_star_class: membership route and mu route disagree for " << cone.describe()
           << " (star: " << to_string(out.star.region) << " vs " << to_string(star_mu)
           << ", -star: " << to_string(out.neg_star.region) << " vs " << to_string(neg_star_mu)
           << ", mu-=" << out.mu_minus << ", mu+=" << out.mu_plus << ")";
        throw std::runtime_error(os.str());
    }
    return out;
}

ConeSpec extremal_cone(double mu, ExtremalSide side, int n) {
    return side == ExtremalSide::Largest ? ConeSpec::extremal_largest(n, mu)
                                         : ConeSpec::extremal_smallest(n, mu);
}

}  // namespace mobcone
