#pragma once

#include <functional>
#include <optional>

#include "mobcone/types.hpp"

namespace mobcone {

/// Shared numerical knobs. All values strictly positive.
struct ToleranceProfile {
    double fd_gradient_scale = 1e-5;   // step = scale * (1 + |x|)
    double fd_hessian_scale = 1e-4;    // step = scale * (1 + |x|)
    double eig_offdiag_rel = 1e-13;    // Jacobi stop: off-diag norm <= rel * ||A||
    double root_rel_tol = 1e-14;       // bracketed root interval tolerance (relative)
    double ode_rtol = 1e-10;
    // effectively pure relative control: an absolute floor near the state
    // magnitudes lets the phi-component drift once it decays past it, which
    // shows up directly in the first integral
    double ode_atol = 1e-300;
    double ode_event_time_tol = 1e-8;  // event localization in time
    double boundary_tol = 1e-8;        // cone boundary band: |margin| <= tol*(1+|lambda|)
    double mu_bisect_cap = 1e6;        // bracket cap for mu+/mu- searches

    void validate() const;
};

using ScalarFn = std::function<double(const Vec&)>;

/// Central-difference gradient; throws on a non-finite stencil value.
Vec fd_gradient(const ScalarFn& f, const Vec& x, double h);

/// Central-difference Hessian, symmetrized; throws on a non-finite stencil value.
Matrix fd_hessian(const ScalarFn& f, const Vec& x, double h);

struct EigResult {
    Vec eigenvalues;  // descending
    Matrix vectors;   // columns are eigenvectors, matching order
};

/// Cyclic Jacobi eigensolver for small symmetric matrices (n <= 16).
/// Throws if the input is asymmetric beyond 1e-10 * (1 + max|A|).
EigResult sym_eigs(const Matrix& A, double offdiag_rel = 1e-13);

/// Bisection with secant acceleration. Requires f(lo) * f(hi) <= 0.
double bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                      double rel_tol = 1e-14);

enum class OdeStatus { Completed, EventHit, StepUnderflow };

struct OdePoint {
    double t;
    Vec y;
};

struct OdeResult {
    std::vector<OdePoint> samples;  // every accepted step plus requested times
    OdeStatus status = OdeStatus::Completed;
    double event_time = std::numeric_limits<double>::quiet_NaN();
};

using OdeRhs = std::function<Vec(double, const Vec&)>;
using OdeEvent = std::function<bool(double, const Vec&)>;

/// Adaptive Dormand-Prince 5(4). Steps are clamped to hit `dense_times`
/// (which must be sorted, inside [t0, t1]) and t1 exactly. When `event`
/// becomes true the crossing time is localized to `event_time_tol`.
OdeResult rk45(const OdeRhs& f, Vec y0, double t0, double t1, double rtol, double atol,
               const OdeEvent& event = nullptr, const std::vector<double>& dense_times = {},
               double event_time_tol = 1e-8);

/// SplitMix64-based generator: identical seeds give bit-identical streams
/// on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double uniform();                      // [0, 1)
    double uniform(double a, double b);    // [a, b)
    double normal();                       // Box-Muller
    Vec normal_vec(int n);
    Vec sphere_point(int n);               // uniform on S^{n-1}

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Low-discrepancy points on S^{n-1}: Halton sequence mapped through the
/// inverse normal CDF and normalized. Seed only offsets the start index,
/// so identical seeds give bit-identical sequences.
class SphereSampler {
public:
    SphereSampler(int dim, std::uint64_t seed);
    Vec next();

private:
    int dim_;
    std::uint64_t index_;
    std::vector<int> bases_;
};

double inverse_normal_cdf(double p);  // Acklam's rational approximation
double halton(std::uint64_t index, int base);

}  // namespace mobcone
