#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mobcone/cone.hpp"
#include "mobcone/conformal.hpp"
#include "mobcone/types.hpp"

namespace mobcone {

enum class RadialFamily {
    LogLinear,       // C1 + C2 log r
    PowerLogPlus,    // 2/(mu-1) log(C3 r^{1-mu} + C4), C3, C4 > 0
    PowerLogMinus,   // 2/(mu-1) log(C7 r^{1-mu} + C8), C7 * C8 < 0
    Constant,        // C
    ConstMinus2Log,  // C - 2 log r
    MaxKink,         // max{ C1 - 2 log r, C2 }
};

const char* to_string(RadialFamily f);

/// Closed-form radial function with v, v', v'' and the maximal domain
/// interval on which the formula is finite.
class RadialProfile {
public:
    static RadialProfile log_linear(double C1, double C2);
    static RadialProfile power_log_plus(double mu, double C3, double C4);
    static RadialProfile power_log_minus(double mu, double C7, double C8);
    static RadialProfile constant(double C);
    static RadialProfile const_minus_2log(double C);
    static RadialProfile max_kink(double C1, double C2);

    RadialFamily family() const { return family_; }
    double mu() const { return mu_; }
    double p1() const { return p1_; }
    double p2() const { return p2_; }
    double r_lo() const { return r_lo_; }
    double r_hi() const { return r_hi_; }
    bool in_domain(double r) const { return r > r_lo_ && r < r_hi_; }

    double v(double r) const;
    double dv(double r) const;   // throws exactly at the kink
    double ddv(double r) const;  // throws exactly at the kink
    double dv_left(double r) const;
    double dv_right(double r) const;

    /// Kink radius of a MaxKink profile; NaN for smooth families.
    double kink_radius() const;

    /// v(R^2/r) - 2 log(r/R): same family, mapped parameters.
    RadialProfile kelvin(double R) const;

    std::string describe() const;

private:
    RadialProfile() = default;
    void check_r(double r) const;
    RadialFamily family_ = RadialFamily::Constant;
    double mu_ = 0.0;
    double p1_ = 0.0, p2_ = 0.0;
    double r_lo_ = 0.0, r_hi_ = 0.0;
};

/// V = -v'' + v'^2/2 and nu = -v'/r - v'^2/2.
struct RadialVnu {
    double V;
    double nu;
};
RadialVnu radial_vnu(const RadialProfile& p, double r);

/// lambda(A[v]) = e^{-2v} (V, nu, ..., nu), sorted descending.
EigenTuple radial_eigenvalues(const RadialProfile& p, double r, int n);

/// The profile as a radial scalar field with analytic derivatives.
ScalarField field_from_profile(const RadialProfile& p, int n);

enum class RadialCase { A, B, C, D, E };
const char* to_string(RadialCase c);

struct FamilyOption {
    RadialCase which;
    RadialFamily family;
    double mu;  // the mu value tied to the case (NaN for case E)
    std::string constraint;
};

/// The admissible smooth radial families for the cone, keyed on its
/// (mu+, mu-) pair.
std::vector<FamilyOption> enumerate_families(const ConeSpec& cone, const ToleranceProfile& tol = {});

struct DirichletAnnulus {
    double a, b;       // 0 < a < b
    double alpha, beta;  // boundary values at r = a and r = b
};

enum class Regularity { Smooth, LipschitzKink, Unsolvable };
const char* to_string(Regularity r);

struct SolveReport {
    bool solvable = false;
    Regularity regularity = Regularity::Unsolvable;
    std::optional<RadialProfile> profile;
    std::optional<RadialCase> applied_case;
    std::string clause;  // human-readable decision trail
    double mu_plus = 0.0, mu_minus = 0.0;
};

SolveReport solve_dirichlet(const ConeSpec& cone, const DirichletAnnulus& prob,
                            const ToleranceProfile& tol = {});

/// Smooth approximation of max{-2 log r, 0} matching its values at r = 1/2
/// and r = 2: C3 = C4 = 2^{mu-1} / (2^{mu-1} + 1); requires mu > 1.
RadialProfile lipschitz_approximation(double mu);

struct MonotonicityReport {
    bool v_nonincreasing = false;
    bool v_plus_2logr_nondecreasing = false;
};

MonotonicityReport monotonicity_report(const RadialProfile& p, const std::vector<double>& grid,
                                       double tol = 1e-10);

}  // namespace mobcone
