#include "mobcone/radial.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mobcone {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMuOneBand = 1e-9;  // branch switch between the log and power forms
}

const char* to_string(RadialFamily f) {
    switch (f) {
        case RadialFamily::LogLinear: return "log-linear";
        case RadialFamily::PowerLogPlus: return "power-log-plus";
        case RadialFamily::PowerLogMinus: return "power-log-minus";
        case RadialFamily::Constant: return "constant";
        case RadialFamily::ConstMinus2Log: return "constant-minus-2log";
        case RadialFamily::MaxKink: return "max-kink";
    }
    return "?";
}

const char* to_string(RadialCase c) {
    switch (c) {
        case RadialCase::A: return "a";
        case RadialCase::B: return "b";
        case RadialCase::C: return "c";
        case RadialCase::D: return "d";
        case RadialCase::E: return "e";
    }
    return "?";
}

const char* to_string(Regularity r) {
    switch (r) {
        case Regularity::Smooth: return "smooth";
        case Regularity::LipschitzKink: return "lipschitz-kink";
        case Regularity::Unsolvable: return "unsolvable";
    }
    return "?";
}

RadialProfile RadialProfile::log_linear(double C1, double C2) {
    if (C2 == 0.0 || C2 == -2.0)
        throw std::invalid_argument("log_linear: slope 0 and -2 belong to the constant families");
    RadialProfile p;
    p.family_ = RadialFamily::LogLinear;
    p.p1_ = C1;
    p.p2_ = C2;
    p.r_lo_ = 0.0;
    p.r_hi_ = kInf;
    return p;
}

RadialProfile RadialProfile::power_log_plus(double mu, double C3, double C4) {
    if (!(mu >= 0.0) || std::fabs(mu - 1.0) <= kMuOneBand)
        throw std::invalid_argument("power_log_plus: mu must be >= 0 and away from 1");
    if (!(C3 > 0.0 && C4 > 0.0)) throw std::invalid_argument("power_log_plus: C3, C4 must be > 0");
    RadialProfile p;
    p.family_ = RadialFamily::PowerLogPlus;
    p.mu_ = mu;
    p.p1_ = C3;
    p.p2_ = C4;
    p.r_lo_ = 0.0;
    p.r_hi_ = kInf;
    return p;
}

RadialProfile RadialProfile::power_log_minus(double mu, double C7, double C8) {
    if (!(mu >= 0.0) || std::fabs(mu - 1.0) <= kMuOneBand)
        throw std::invalid_argument("power_log_minus: mu must be >= 0 and away from 1");
    if (!(C7 * C8 < 0.0)) throw std::invalid_argument("power_log_minus: needs C7 * C8 < 0");
    RadialProfile p;
    p.family_ = RadialFamily::PowerLogMinus;
    p.mu_ = mu;
    p.p1_ = C7;
    p.p2_ = C8;
    double r0 = std::pow(-C8 / C7, 1.0 / (1.0 - mu));
    // positive side of C7 r^{1-mu} + C8
    bool positive_below;
    if (mu < 1.0)
        positive_below = C8 > 0.0;  // g(0+) = C8
    else
        positive_below = C7 > 0.0;  // g(0+) = sign(C7) * inf
    p.r_lo_ = positive_below ? 0.0 : r0;
    p.r_hi_ = positive_below ? r0 : kInf;
    return p;
}

RadialProfile RadialProfile::constant(double C) {
    RadialProfile p;
    p.family_ = RadialFamily::Constant;
    p.p1_ = C;
    p.r_lo_ = 0.0;
    p.r_hi_ = kInf;
    return p;
}

RadialProfile RadialProfile::const_minus_2log(double C) {
    RadialProfile p;
    p.family_ = RadialFamily::ConstMinus2Log;
    p.p1_ = C;
    p.r_lo_ = 0.0;
    p.r_hi_ = kInf;
    return p;
}

RadialProfile RadialProfile::max_kink(double C1, double C2) {
    RadialProfile p;
    p.family_ = RadialFamily::MaxKink;
    p.p1_ = C1;
    p.p2_ = C2;
    p.r_lo_ = 0.0;
    p.r_hi_ = kInf;
    return p;
}

void RadialProfile::check_r(double r) const {
    if (!(r > r_lo_ && r < r_hi_))
        throw std::domain_error("RadialProfile: radius outside the domain interval");
}

double RadialProfile::kink_radius() const {
    if (family_ != RadialFamily::MaxKink) return kNaN;
    return std::exp(0.5 * (p1_ - p2_));
}

double RadialProfile::v(double r) const {
    check_r(r);
    switch (family_) {
        case RadialFamily::LogLinear: return p1_ + p2_ * std::log(r);
        case RadialFamily::PowerLogPlus:
        case RadialFamily::PowerLogMinus: {
            double g = p1_ * std::pow(r, 1.0 - mu_) + p2_;
            return 2.0 / (mu_ - 1.0) * std::log(g);
        }
        case RadialFamily::Constant: return p1_;
        case RadialFamily::ConstMinus2Log: return p1_ - 2.0 * std::log(r);
        case RadialFamily::MaxKink: return std::max(p1_ - 2.0 * std::log(r), p2_);
    }
    throw std::logic_error("RadialProfile::v unreachable");
}

double RadialProfile::dv(double r) const {
    check_r(r);
    switch (family_) {
        case RadialFamily::LogLinear: return p2_ / r;
        case RadialFamily::PowerLogPlus:
        case RadialFamily::PowerLogMinus: {
            double g = p1_ * std::pow(r, 1.0 - mu_) + p2_;
            double gp = p1_ * (1.0 - mu_) * std::pow(r, -mu_);
            return 2.0 / (mu_ - 1.0) * gp / g;
        }
        case RadialFamily::Constant: return 0.0;
        case RadialFamily::ConstMinus2Log: return -2.0 / r;
        case RadialFamily::MaxKink: {
            double rk = kink_radius();
            if (std::fabs(r - rk) <= 4.0 * std::numeric_limits<double>::epsilon() * rk)
                throw std::domain_error(
                    "RadialProfile: derivative at the kink; use the one-sided accessors");
            return r < rk ? -2.0 / r : 0.0;
        }
    }
    throw std::logic_error("RadialProfile::dv unreachable");
}

double RadialProfile::ddv(double r) const {
    check_r(r);
    switch (family_) {
        case RadialFamily::LogLinear: return -p2_ / (r * r);
        case RadialFamily::PowerLogPlus:
        case RadialFamily::PowerLogMinus: {
            double g = p1_ * std::pow(r, 1.0 - mu_) + p2_;
            double gp = p1_ * (1.0 - mu_) * std::pow(r, -mu_);
            double gpp = p1_ * (1.0 - mu_) * (-mu_) * std::pow(r, -mu_ - 1.0);
            return 2.0 / (mu_ - 1.0) * (gpp * g - gp * gp) / (g * g);
        }
        case RadialFamily::Constant: return 0.0;
        case RadialFamily::ConstMinus2Log: return 2.0 / (r * r);
        case RadialFamily::MaxKink: {
            double rk = kink_radius();
            if (std::fabs(r - rk) <= 4.0 * std::numeric_limits<double>::epsilon() * rk)
                throw std::domain_error(
                    "RadialProfile: derivative at the kink; use the one-sided accessors");
            return r < rk ? 2.0 / (r * r) : 0.0;
        }
    }
    throw std::logic_error("RadialProfile::ddv unreachable");
}

double RadialProfile::dv_left(double r) const {
    if (family_ != RadialFamily::MaxKink) return dv(r);
    return r <= kink_radius() ? -2.0 / r : 0.0;
}

double RadialProfile::dv_right(double r) const {
    if (family_ != RadialFamily::MaxKink) return dv(r);
    return r < kink_radius() ? -2.0 / r : 0.0;
}

RadialProfile RadialProfile::kelvin(double R) const {
    if (!(R > 0.0)) throw std::invalid_argument("kelvin: R must be > 0");
    switch (family_) {
        case RadialFamily::LogLinear:
            return log_linear(p1_ + 2.0 * (p2_ + 1.0) * std::log(R), -(p2_ + 2.0));
        case RadialFamily::PowerLogPlus:
            return power_log_plus(mu_, p2_ * std::pow(R, mu_ - 1.0), p1_ * std::pow(R, 1.0 - mu_));
        case RadialFamily::PowerLogMinus:
            return power_log_minus(mu_, p2_ * std::pow(R, mu_ - 1.0), p1_ * std::pow(R, 1.0 - mu_));
        case RadialFamily::Constant:
            return const_minus_2log(p1_ + 2.0 * std::log(R));
        case RadialFamily::ConstMinus2Log:
            return constant(p1_ - 2.0 * std::log(R));
        case RadialFamily::MaxKink:
            return max_kink(p2_ + 2.0 * std::log(R), p1_ - 2.0 * std::log(R));
    }
    throw std::logic_error("RadialProfile::kelvin unreachable");
}

std::string RadialProfile::describe() const {
    std::ostringstream os;
    os << to_string(family_);
    switch (family_) {
        case RadialFamily::LogLinear: os << "(" << p1_ << ", " << p2_ << ")"; break;
        case RadialFamily::PowerLogPlus:
        case RadialFamily::PowerLogMinus:
            os << "(mu=" << mu_ << ", " << p1_ << ", " << p2_ << ")";
            break;
        case RadialFamily::Constant:
        case RadialFamily::ConstMinus2Log: os << "(" << p1_ << ")"; break;
        case RadialFamily::MaxKink: os << "(" << p1_ << ", " << p2_ << ")"; break;
    }
    return os.str();
}

RadialVnu radial_vnu(const RadialProfile& p, double r) {
    if (!p.in_domain(r)) throw std::domain_error("radial_vnu: radius outside the domain interval");
    // closed forms per family; the generic -v'' + v'^2/2 and -v'/r - v'^2/2
    // cancel catastrophically near the pure -2 log r branch
    switch (p.family()) {
        case RadialFamily::LogLinear: {
            double nu = -p.p2() * (p.p2() + 2.0) / (2.0 * r * r);
            return {-nu, nu};
        }
        case RadialFamily::PowerLogPlus:
        case RadialFamily::PowerLogMinus: {
            double mu = p.mu();
            double g = p.p1() * std::pow(r, 1.0 - mu) + p.p2();
            double nu = 2.0 * p.p1() * p.p2() * std::pow(r, -mu - 1.0) / (g * g);
            return {-mu * nu, nu};
        }
        case RadialFamily::Constant:
        case RadialFamily::ConstMinus2Log:
            return {0.0, 0.0};
        case RadialFamily::MaxKink: {
            double rk = p.kink_radius();
            if (std::fabs(r - rk) <= 4.0 * std::numeric_limits<double>::epsilon() * rk)
                throw std::domain_error(
                    "radial_vnu: eigenvalues at the kink; evaluate one-sidedly instead");
            return {0.0, 0.0};  // both branches are pure solutions
        }
    }
    throw std::logic_error("radial_vnu: unreachable");
}

EigenTuple radial_eigenvalues(const RadialProfile& p, double r, int n) {
    RadialVnu vn = radial_vnu(p, r);
    double em = std::exp(-2.0 * p.v(r));
    Vec lam(static_cast<std::size_t>(n), em * vn.nu);
    lam[0] = em * vn.V;
    return EigenTuple(std::move(lam));
}

ScalarField field_from_profile(const RadialProfile& p, int n) {
    RadialProfile prof = p;
    double kink = prof.kink_radius();
    auto radius = [](const Vec& x) { return norm2(x); };
    auto in_dom = [prof, kink, radius](const Vec& x) {
        double r = radius(x);
        if (!(r > prof.r_lo() && r < prof.r_hi())) return false;
        if (std::isfinite(kink) && std::fabs(r - kink) <= 1e-9 * (1.0 + kink)) return false;
        return true;
    };
    auto value = [prof, radius](const Vec& x) { return prof.v(radius(x)); };
    auto grad = [prof, radius](const Vec& x) {
        double r = radius(x);
        double d = prof.dv(r);
        Vec g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = d * x[i] / r;
        return g;
    };
    auto hess = [prof, radius, n](const Vec& x) {
        double r = radius(x);
        double d = prof.dv(r);
        double dd = prof.ddv(r);
        Matrix H(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double hat = x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)] / (r * r);
                H.at(i, j) = (dd - d / r) * hat;
            }
        for (int i = 0; i < n; ++i) H.at(i, i) += d / r;
        return H;
    };
    return ScalarField(n, value, grad, hess, in_dom, "radial:" + prof.describe());
}

std::vector<FamilyOption> enumerate_families(const ConeSpec& cone, const ToleranceProfile& tol) {
    double mp = mu_plus(cone, tol);
    double mm = mu_minus(cone, tol);
    std::vector<FamilyOption> out;
    if (std::isfinite(mp) && std::fabs(mp - 1.0) <= kMuOneBand)
        out.push_back({RadialCase::A, RadialFamily::LogLinear, 1.0, "C2 in (-2, 0)"});
    else if (std::isfinite(mp))
        out.push_back({RadialCase::B, RadialFamily::PowerLogPlus, mp, "C3 > 0, C4 > 0"});
    if (std::isfinite(mm) && std::fabs(mm - 1.0) <= kMuOneBand)
        out.push_back({RadialCase::C, RadialFamily::LogLinear, 1.0, "C2 in (-inf, -2) or (0, inf)"});
    else if (std::isfinite(mm))
        out.push_back({RadialCase::D, RadialFamily::PowerLogMinus, mm, "C7 * C8 < 0"});
    out.push_back({RadialCase::E, RadialFamily::Constant, kNaN, "v = C or v = C - 2 log r"});
    return out;
}

namespace {

// matched power-law profile through (a, alpha), (b, beta), in absolute
// coordinates; plus_family selects C3/C4 positivity vs the mixed-sign form
RadialProfile match_power(double mu, const DirichletAnnulus& pr, bool plus_family) {
    double d = pr.beta - pr.alpha;
    double ratio = pr.b / pr.a;
    double c_first = (std::exp(0.5 * (mu - 1.0) * d) - 1.0) / (std::pow(ratio, 1.0 - mu) - 1.0);
    double c_second = 1.0 - c_first;
    double k = std::exp(0.5 * (mu - 1.0) * pr.alpha);
    double C_first = c_first * k * std::pow(pr.a, mu - 1.0);
    double C_second = c_second * k;
    return plus_family ? RadialProfile::power_log_plus(mu, C_first, C_second)
                       : RadialProfile::power_log_minus(mu, C_first, C_second);
}

RadialProfile match_log_linear(const DirichletAnnulus& pr) {
    double L = std::log(pr.b / pr.a);
    double slope = (pr.beta - pr.alpha) / L;
    return RadialProfile::log_linear(pr.alpha - slope * std::log(pr.a), slope);
}

}  // namespace

SolveReport solve_dirichlet(const ConeSpec& cone, const DirichletAnnulus& prob,
                            const ToleranceProfile& tol) {
    if (!(prob.a > 0.0 && prob.a < prob.b && std::isfinite(prob.b)))
        throw std::invalid_argument("solve_dirichlet: requires 0 < a < b < inf");
    if (!std::isfinite(prob.alpha) || !std::isfinite(prob.beta))
        throw std::invalid_argument("solve_dirichlet: boundary values must be finite");

    SolveReport rep;
    rep.mu_plus = mu_plus(cone, tol);
    rep.mu_minus = mu_minus(cone, tol);

    const double L = std::log(prob.b / prob.a);
    const double d = prob.beta - prob.alpha;
    const double etol = 1e-12 * (1.0 + std::fabs(d) + 2.0 * L);

    auto smooth = [&](RadialProfile p, RadialCase c, std::string clause) {
        rep.solvable = true;
        rep.regularity = Regularity::Smooth;
        rep.profile = std::move(p);
        rep.applied_case = c;
        rep.clause = std::move(clause);
        return rep;
    };

    if (std::fabs(d) <= etol)
        return smooth(RadialProfile::constant(prob.alpha), RadialCase::E, "beta = alpha: constant");
    if (std::fabs(d + 2.0 * L) <= etol)
        return smooth(RadialProfile::const_minus_2log(prob.alpha + 2.0 * std::log(prob.a)),
                      RadialCase::E, "beta - alpha = -2 log(b/a): pure -2 log r");

    const bool inside_band = (d > -2.0 * L && d < 0.0);
    if (inside_band) {
        if (std::isfinite(rep.mu_plus)) {
            if (std::fabs(rep.mu_plus - 1.0) <= kMuOneBand)
                return smooth(match_log_linear(prob), RadialCase::A,
                              "gap inside (-2 log(b/a), 0), mu+ = 1: log-linear");
            return smooth(match_power(rep.mu_plus, prob, true), RadialCase::B,
                          "gap inside (-2 log(b/a), 0), mu+ finite: power form");
        }
        rep.solvable = true;
        rep.regularity = Regularity::LipschitzKink;
        rep.profile = RadialProfile::max_kink(prob.alpha + 2.0 * std::log(prob.a), prob.beta);
        rep.clause = "gap inside (-2 log(b/a), 0), mu+ = +inf: max of the two pure solutions";
        return rep;
    }

    // gap outside [-2 log(b/a), 0]
    if (!std::isfinite(rep.mu_minus)) {
        rep.solvable = false;
        rep.regularity = Regularity::Unsolvable;
        std::ostringstream os;
        os << "unsolvable: mu- = +inf and beta - alpha "
           << (d > 0.0 ? "> 0" : "< -2 log(b/a)");
        rep.clause = os.str();
        return rep;
    }
    if (std::fabs(rep.mu_minus - 1.0) <= kMuOneBand)
        return smooth(match_log_linear(prob), RadialCase::C,
                      "gap outside [-2 log(b/a), 0], mu- = 1: log-linear");
    return smooth(match_power(rep.mu_minus, prob, false), RadialCase::D,
                  "gap outside [-2 log(b/a), 0], mu- finite: power form");
}

RadialProfile lipschitz_approximation(double mu) {
    if (!(mu > 1.0)) throw std::invalid_argument("lipschitz_approximation: mu must be > 1");
    double t = std::pow(2.0, mu - 1.0);
    double c = t / (t + 1.0);
    return RadialProfile::power_log_plus(mu, c, c);
}

MonotonicityReport monotonicity_report(const RadialProfile& p, const std::vector<double>& grid,
                                       double tol) {
    if (grid.size() < 2) throw std::invalid_argument("monotonicity_report: need at least 2 radii");
    std::vector<double> rs = grid;
    std::sort(rs.begin(), rs.end());
    MonotonicityReport rep{true, true};
    double prev_v = p.v(rs[0]);
    double prev_w = prev_v + 2.0 * std::log(rs[0]);
    for (std::size_t i = 1; i < rs.size(); ++i) {
        if (!p.in_domain(rs[i])) throw std::domain_error("monotonicity_report: grid leaves domain");
        double v = p.v(rs[i]);
        double w = v + 2.0 * std::log(rs[i]);
        if (v > prev_v + tol) rep.v_nonincreasing = false;
        if (w < prev_w - tol) rep.v_plus_2logr_nondecreasing = false;
        prev_v = v;
        prev_w = w;
    }
    return rep;
}

}  // namespace mobcone
