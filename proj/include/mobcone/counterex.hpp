#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mobcone/conformal.hpp"
#include "mobcone/radial.hpp"
#include "mobcone/symfun.hpp"

namespace mobcone {

/// Initial data for v'' + (gamma-1)/2 v'^2 + e^{2v} = 0, integrated in the
/// (phi, w) = (e^v, v') phase plane.
struct OdeSetup {
    double gamma = 1.0;
    double v0 = 0.0;
    double w0 = 0.0;

    double delta() const { return -(gamma - 1.0) / 2.0; }
    double phi0() const { return std::exp(v0); }
};

enum class Existence { Global, FiniteTime };
const char* to_string(Existence e);

/// Exact clause evaluation: global iff gamma in [-1, 1], or
/// gamma in (-1 - 2 e^{2 v0} / w0^2, -1) (read as (-inf, -1) when w0 = 0).
Existence existence_predicate(const OdeSetup& s);

/// First integral of the phase system for the given delta.
double ode_first_integral(double delta, double phi, double w);

struct OdeTrajectory {
    std::vector<double> t;    // ascending; negative half from the backward sweep
    std::vector<double> phi;
    std::vector<double> w;
    std::vector<double> integral;
    bool blowup = false;
    double blowup_time = std::numeric_limits<double>::quiet_NaN();  // smallest |t| crossing
    double integral0 = 0.0;

    double drift() const;  // max |I(t) - I(0)|
};

/// Integrates forward and backward over [-T, T]; stops a sweep when
/// |phi| + |w| exceeds the threshold (threshold >= 1e6 required).
OdeTrajectory integrate_ode(const OdeSetup& s, double window, double threshold,
                            const ToleranceProfile& tol = {});

struct NonBubbleSolution {
    double s = 1.0;
    int n = 0;
    SymFun f0;         // the max-form with parameter s
    ScalarField v;     // entire one-variable solution as a field on R^n
    double window = 3.0;
};

/// The one-variable entire solution paired with the max-form that it
/// solves at level 1; s in (0, 1].
NonBubbleSolution nonbubble_entire(double s, int n, double window = 3.0, int dense_points = 1000,
                                   const ToleranceProfile& tol = {});

struct ConstantFit {
    double best_distance = 0.0;  // min over c > 0 of max_x ||A[v](x) - c I||_F
    double best_c = 0.0;
};

/// Grid-search oracle: distance of A[v] from the constant-matrix family.
ConstantFit constant_fit_distance(const ScalarField& v, double window, int samples,
                                  const ToleranceProfile& tol = {});

enum class BlowupKind { NegSigmaHalf, NegGeneral, PosGeneral };
const char* to_string(BlowupKind k);

struct BlowupReport {
    BlowupKind kind;
    int n = 0;
    int j = 0;
    double c_j = 0.0;                  // schedule constant (general kinds)
    double max_identity_residual = 0;  // NegSigmaHalf: closed-form identity
    double sup_deviation = 0.0;        // sup |sigma - c_n| or max f-value on the slab
    double min_grad = 0.0;             // min |grad v_j| on the inner slab
    double max_field_value = 0.0;      // max v_j on the unit slab
    bool in_cone = false;              // eigenvalues inside the target cone
    double omega_j = 0.0;              // f at the limiting direction (general kinds)
    double bound = 0.0;                // e^{8 / C_j} * omega_j
    double c_n = 0.0;                  // NegSigmaHalf limiting constant
};

/// The gradient-blowup field v_j as a one-variable scalar field.
ScalarField blowup_field(BlowupKind kind, int n, int j);
double blowup_schedule(int j);  // C_j = max(5/j, j^{-1/2})
double blowup_sigma_constant(int n);  // n^2 2^{1-n/2} binom(n-1, n/2-1)

/// Verification report over sample points of the unit slab |x_1| < 1.
BlowupReport gradient_blowup(BlowupKind kind, int n, int j, int samples = 100,
                             const ToleranceProfile& tol = {});

/// Singular radial profiles near r = 0, named by their shape.
enum class SingularFamily {
    PositiveLog,          // alpha log r, alpha > 0
    InteriorCusp,         // 2/(mu-1) log(1 - r^{1-mu}), mu in [0,1), on (0,1)
    NegativeLog,          // alpha log r, alpha in (-2, 0)
    ExteriorPower,        // 2/(mu-1) log(1 + r^{1-mu}), mu in [0,1)
    ShiftedExteriorPower  // 2/(mu-1) log(1 + e^{(mu-1)a/2} r^{1-mu}), mu > 1
};
const char* to_string(SingularFamily f);

RadialProfile singular_profile(SingularFamily fam, double param, double shift = 0.0);

struct SingularCheck {
    SingularFamily family;
    double direction_head = 0.0;  // largest entry of the sorted direction
    double direction_tail = 0.0;  // smallest entry of the sorted direction
    double max_direction_residual = 0.0;
    double min_scale = 0.0;  // min of the positive factor C(r) on the grid
    bool scale_positive = false;
};

/// Verifies the displayed eigenvalue direction pattern over a log grid.
SingularCheck verify_singular_direction(const RadialProfile& p, SingularFamily fam, int n,
                                        int grid_points = 64);

}  // namespace mobcone
