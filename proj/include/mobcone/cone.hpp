#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "mobcone/numerics.hpp"
#include "mobcone/types.hpp"

namespace mobcone {

enum class ConeFamily {
    GammaK,           // { sigma_l > 0 for all l <= k }
    NegDualGammaK,    // R^n \ (-closure(GammaK))
    OrderedLinear,    // { sum mu_i lambda_i > 0 }, lambda descending, mu in closure(Gamma_n)\{0}
    Circular,         // { sigma_1 + c |lambda| > 0 }, c in [-1, 1]
    ExtremalLargest,  // { lambda_1 + mu lambda_2 > 0 }
    ExtremalSmallest, // { lambda_n + mu lambda_{n-1} > 0 }
    Gauge,            // { g > 0 } for a caller-supplied symmetric defining function
};

/// Elementary symmetric polynomial sigma_k of the tuple.
double elementary_symmetric(const Vec& lambda, int k);

/// Gradient of sigma_k (each partial is sigma_{k-1} of the remaining entries).
Vec elementary_symmetric_gradient(const Vec& lambda, int k);

/// An open symmetric cone with vertex at the origin, Gamma + Gamma_n inside
/// Gamma, represented by a defining function that is positive exactly on the
/// cone interior.
class ConeSpec {
public:
    static ConeSpec gamma_k(int n, int k);
    static ConeSpec neg_dual_gamma_k(int n, int k);
    static ConeSpec ordered_linear(Vec weights);
    static ConeSpec circular(int n, double c);
    static ConeSpec extremal_largest(int n, double mu);
    static ConeSpec extremal_smallest(int n, double mu);
    static ConeSpec gauge(int n, std::function<double(const EigenTuple&)> g,
                          std::optional<EigenTuple> witness = std::nullopt,
                          std::string label = "gauge");

    int dim() const { return n_; }
    ConeFamily family() const { return family_; }
    int k() const { return k_; }
    double param() const { return param_; }
    const Vec& weights() const { return weights_; }
    const EigenTuple& witness() const { return *witness_; }
    std::string describe() const;

    /// Signed value of the defining function; > 0 interior, 0 boundary.
    double margin(const EigenTuple& lambda) const;

    /// Membership with a relative boundary band |margin| <= tol * (1 + |lambda|).
    ConePosition contains(const EigenTuple& lambda, double tol = 1e-8) const;

private:
    ConeSpec() = default;
    int n_ = 0;
    ConeFamily family_ = ConeFamily::Gauge;
    int k_ = 0;
    double param_ = 0.0;
    Vec weights_;
    std::function<double(const EigenTuple&)> gauge_;
    std::optional<EigenTuple> witness_;
    std::string label_;
};

struct MuResult {
    double value;            // may be +infinity
    bool from_closed_form;   // closed form vs bracketed bisection
    bool unique_crossing;    // margin changes sign once along the test ray
};

/// mu^- = inf{ c : (c, -1, ..., -1) in closure(Gamma) }.
MuResult mu_minus_detail(const ConeSpec& cone, const ToleranceProfile& tol = {});
double mu_minus(const ConeSpec& cone, const ToleranceProfile& tol = {});

/// mu^+ = sup{ c : (-c, 1, ..., 1) in closure(Gamma) }.
MuResult mu_plus_detail(const ConeSpec& cone, const ToleranceProfile& tol = {});
double mu_plus(const ConeSpec& cone, const ToleranceProfile& tol = {});

/// Bisection-only routes, used to cross-check the closed forms.
double mu_minus_bisection(const ConeSpec& cone, const ToleranceProfile& tol = {});
double mu_plus_bisection(const ConeSpec& cone, const ToleranceProfile& tol = {});

/// The involution Gamma -> R^n \ (-closure(Gamma)).
ConeSpec negation_dual(const ConeSpec& cone);

struct LambdaStarClass {
    ConePosition star;      // position of (1, -1, ..., -1)
    ConePosition neg_star;  // position of -(1, -1, ..., -1)
    double mu_minus;
    double mu_plus;
};

/// Classifies lambda* and -lambda* both by direct membership and through
/// mu-/mu+; throws if the two routes disagree.
LambdaStarClass lambda_star_class(const ConeSpec& cone, const ToleranceProfile& tol = {});

enum class ExtremalSide { Largest, Smallest };
ConeSpec extremal_cone(double mu, ExtremalSide side, int n);

}  // namespace mobcone
