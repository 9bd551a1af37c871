#pragma once

#include "mobcone/cone.hpp"
#include "mobcone/conformal.hpp"
#include "mobcone/symfun.hpp"
#include "mobcone/types.hpp"

namespace mobcone {

/// The linear map T = (n-2) I + e (x) e between Schouten and Ricci
/// eigenvalues, with its closed-form inverse.
class LinearDictionary {
public:
    explicit LinearDictionary(int n);

    int dim() const { return n_; }

    Vec forward_raw(const Vec& lambda) const;   // (n-2) lambda + sigma_1(lambda) e
    Vec inverse_raw(const Vec& lambda) const;   // ((lambda - sigma_1/(2(n-1)) e) / (n-2)

    EigenTuple schouten_to_ricci(const EigenTuple& lambda) const;
    EigenTuple ricci_to_schouten(const EigenTuple& lambda) const;

private:
    int n_;
};

struct ConvertedPair {
    SymFun f;       // f(lambda) = f_hat(T lambda)
    ConeSpec cone;  // T^{-1} Gamma_hat
};

/// Pulls a Ricci-side pair (f_hat, Gamma_hat) back to the Schouten side.
ConvertedPair convert_pair(const SymFun& f_hat, const ConeSpec& gamma_hat);

enum class BubbleExample {
    RicciEigenvalue,      // a single Ricci eigenvalue equals 1
    RicciEigenvalueSum,   // lambda_i + ... + lambda_j of Ricci equals 1
    WeitzenbockCurvature  // G_p of the Schouten eigenvalues equals 1
};
const char* to_string(BubbleExample e);

struct BubbleConstantReport {
    BubbleExample example;
    int n = 0;
    double required_ratio_sq = 0.0;   // the b^2/a^2 that normalizes the quantity to 1
    double constraint_residual = 0.0; // |M b^2/a^2 - 1|
    bool constraint_satisfied = false;
    double value = 0.0;               // the curvature quantity on the bubble
    bool pass = false;                // value within 1e-9 of 1
};

/// Evaluates the example's curvature quantity on the bubble field
/// end-to-end (conformal Hessian -> eigenvalues -> dictionary/function).
/// idx_i/idx_j select the Ricci eigenvalue range (1-based), p the
/// Weitzenbock index.
BubbleConstantReport bubble_constants(BubbleExample ex, int n, double a, double b, int idx_i = 2,
                                      int idx_j = 2, int p = 1, std::uint64_t seed = 3,
                                      const ToleranceProfile& tol = {});

/// The normalizing constant M with M * (b/a)^2 = 1 on the constraint:
/// 4(n-1)(j-i+1) for Ricci sums, 4 p (n-p) for the Weitzenbock curvature.
double bubble_constraint_constant(BubbleExample ex, int n, int idx_i, int idx_j, int p);

}  // namespace mobcone
