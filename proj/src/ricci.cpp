#include "mobcone/ricci.hpp"

#include <cmath>

namespace mobcone {

LinearDictionary::LinearDictionary(int n) : n_(n) {
    if (n < 3) throw std::invalid_argument("LinearDictionary: requires n >= 3 (the map degenerates below)");
}

Vec LinearDictionary::forward_raw(const Vec& lambda) const {
    if (static_cast<int>(lambda.size()) != n_)
        throw std::invalid_argument("LinearDictionary: dimension mismatch");
    double s = 0.0;
    for (double x : lambda) s += x;
    Vec out(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i) out[i] = (n_ - 2) * lambda[i] + s;
    return out;
}

Vec LinearDictionary::inverse_raw(const Vec& lambda) const {
    if (static_cast<int>(lambda.size()) != n_)
        throw std::invalid_argument("LinearDictionary: dimension mismatch");
    double s = 0.0;
    for (double x : lambda) s += x;
    Vec out(lambda.size());
    double shift = s / (2.0 * (n_ - 1));
    for (std::size_t i = 0; i < lambda.size(); ++i) out[i] = (lambda[i] - shift) / (n_ - 2);
    return out;
}

EigenTuple LinearDictionary::schouten_to_ricci(const EigenTuple& lambda) const {
    return EigenTuple(forward_raw(lambda.values()));
}

EigenTuple LinearDictionary::ricci_to_schouten(const EigenTuple& lambda) const {
    return EigenTuple(inverse_raw(lambda.values()));
}

ConvertedPair convert_pair(const SymFun& f_hat, const ConeSpec& gamma_hat) {
    const int n = f_hat.dim();
    if (gamma_hat.dim() != n) throw std::invalid_argument("convert_pair: dimension mismatch");
    LinearDictionary T(n);
    SymFun fh = f_hat;
    ConeSpec gh = gamma_hat;

    auto eval = [fh, T](const EigenTuple& lam) { return fh(T.schouten_to_ricci(lam)); };
    SymFun f(n, f_hat.degree(), eval, nullptr, false, "ricci-side(" + f_hat.name() + ")");

    auto margin = [gh, T](const EigenTuple& lam) { return gh.margin(T.schouten_to_ricci(lam)); };
    ConeSpec cone = ConeSpec::gauge(n, margin, std::nullopt, "pullback(" + gh.describe() + ")");
    return {std::move(f), std::move(cone)};
}

const char* to_string(BubbleExample e) {
    switch (e) {
        case BubbleExample::RicciEigenvalue: return "ricci-eigenvalue";
        case BubbleExample::RicciEigenvalueSum: return "ricci-eigenvalue-sum";
        case BubbleExample::WeitzenbockCurvature: return "weitzenbock";
    }
    return "?";
}

double bubble_constraint_constant(BubbleExample ex, int n, int idx_i, int idx_j, int p) {
    switch (ex) {
        case BubbleExample::RicciEigenvalue:
            if (idx_i < 1 || idx_i > n) throw std::invalid_argument("bubble_constants: index out of range");
            return 4.0 * (n - 1);
        case BubbleExample::RicciEigenvalueSum:
            if (idx_i < 1 || idx_j < idx_i || idx_j > n)
                throw std::invalid_argument("bubble_constants: index range invalid");
            return 4.0 * (n - 1) * (idx_j - idx_i + 1);
        case BubbleExample::WeitzenbockCurvature:
            if (p < 1 || p > n - 1) throw std::invalid_argument("bubble_constants: p out of range");
            return 4.0 * p * (n - p);
    }
    throw std::logic_error("bubble_constraint_constant: unreachable");
}

BubbleConstantReport bubble_constants(BubbleExample ex, int n, double a, double b, int idx_i,
                                      int idx_j, int p, std::uint64_t seed,
                                      const ToleranceProfile& tol) {
    if (n < 3) throw std::invalid_argument("bubble_constants: requires n >= 3");
    if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("bubble_constants: a, b must be > 0");

    BubbleConstantReport rep;
    rep.example = ex;
    rep.n = n;
    double M = bubble_constraint_constant(ex, n, idx_i, idx_j, p);
    rep.required_ratio_sq = 1.0 / M;
    double ratio_sq = (b / a) * (b / a);
    rep.constraint_residual = std::fabs(M * ratio_sq - 1.0);
    rep.constraint_satisfied = rep.constraint_residual <= 1e-9;

    Rng rng(seed);
    Vec xbar = rng.normal_vec(n);
    Vec x = rng.normal_vec(n);
    ScalarField v = ScalarField::bubble(n, a, b, xbar);
    HessianResult h = mobius_hessian(v, x, tol);

    switch (ex) {
        case BubbleExample::RicciEigenvalue: {
            LinearDictionary T(n);
            EigenTuple ric = T.schouten_to_ricci(h.eigenvalues);
            rep.value = ric[idx_i - 1];
            break;
        }
        case BubbleExample::RicciEigenvalueSum: {
            LinearDictionary T(n);
            EigenTuple ric = T.schouten_to_ricci(h.eigenvalues);
            double s = 0.0;
            for (int i = idx_i; i <= idx_j; ++i) s += ric[i - 1];
            rep.value = s;
            break;
        }
        case BubbleExample::WeitzenbockCurvature: {
            SymFun g = SymFun::weitzenbock(n, p);
            rep.value = g(h.eigenvalues);
            break;
        }
    }
    rep.pass = rep.constraint_satisfied && std::fabs(rep.value - 1.0) <= 1e-9;
    return rep;
}

}  // namespace mobcone
