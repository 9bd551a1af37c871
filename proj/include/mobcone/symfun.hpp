#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mobcone/cone.hpp"
#include "mobcone/numerics.hpp"
#include "mobcone/types.hpp"

namespace mobcone {

/// A symmetric function of eigenvalue tuples, with evaluator, gradient
/// (analytic where closed-form, finite-difference otherwise) and its
/// homogeneity degree.
class SymFun {
public:
    SymFun() = default;
    SymFun(int n, double degree, std::function<double(const EigenTuple&)> eval,
           std::function<Vec(const EigenTuple&)> grad, bool analytic_gradient,
           std::string name, std::optional<ConeSpec> domain = std::nullopt);

    int dim() const { return n_; }
    double degree() const { return degree_; }
    bool analytic_gradient() const { return analytic_; }
    const std::string& name() const { return name_; }
    const std::optional<ConeSpec>& domain() const { return domain_; }

    double operator()(const EigenTuple& lambda) const;
    Vec gradient(const EigenTuple& lambda) const;

    static SymFun sigma_k(int n, int k);
    static SymFun sigma_k_root(int n, int k);      // sigma_k^{1/k} on Gamma_k
    static SymFun weitzenbock(int n, int p);       // G_p, 1 <= p <= n-1
    static SymFun lambda_range_sum(int n, int p, int q);  // lambda_p + ... + lambda_{p+q}
    static SymFun circular(int n, double c);       // sigma_1 + c |lambda|
    static SymFun ordered_linear(Vec mu);

    /// Weights of G_p in the ordered-linear representation.
    static Vec weitzenbock_weights(int n, int p);
    static Vec lambda_range_weights(int n, int p, int q);

private:
    int n_ = 0;
    double degree_ = 1.0;
    std::function<double(const EigenTuple&)> eval_;
    std::function<Vec(const EigenTuple&)> grad_;
    bool analytic_ = false;
    std::string name_;
    std::optional<ConeSpec> domain_;
};

/// An open symmetric set V = { f0 > 1 } with smooth boundary, used for the
/// gauge construction. The defining function need not be homogeneous.
struct LevelSetSpec {
    int n = 0;
    SymFun f0;

    bool contains(const EigenTuple& lambda) const { return f0(lambda) > 1.0; }
    /// Inward unit normal at a boundary point: normalized gradient of f0.
    Vec inward_normal(const EigenTuple& lambda) const;
};

/// Scaling function along rays: the unique c > 0 with c * lambda on the
/// boundary of V, or nullopt when the ray never meets it (the direction is
/// outside the generated cone). Throws when the ray crosses the boundary
/// more than once.
std::optional<double> ray_scaling(const LevelSetSpec& V, const EigenTuple& lambda,
                                  const ToleranceProfile& tol = {});

/// Homogeneous degree-1 gauge of V: f = 1 on the boundary of V, f = 0 on
/// the boundary of the generated cone, f = 0 (flagged by the optional
/// out-parameter) outside it.
SymFun gauge_from_levelset(const LevelSetSpec& V, const ToleranceProfile& tol = {});

/// Same construction with V = { margin > 1 }.
SymFun gauge_from_cone(const ConeSpec& cone, const ToleranceProfile& tol = {});

LevelSetSpec levelset_from_cone(const ConeSpec& cone);

/// | sum_i df/dlambda_i  -  e.nu / (lambda.nu) | at a boundary point of V,
/// with the gradient of f taken by finite differences. Throws when
/// lambda . nu <= 0.
double normal_identity_residual(const SymFun& f, const LevelSetSpec& V, const EigenTuple& lambda,
                                const ToleranceProfile& tol = {});

struct ReflectedLevelSet {
    LevelSetSpec reflected;     // V~ = R^n \ closure(Psi_V(V)), as { f~0 > 1 }
    Vec reflection_center2;     // 2 phi(e) e: Psi_V(x) = -x + reflection_center2
    bool convexity_warning = false;  // input V failed a sampled convexity probe
};

ReflectedLevelSet reflect_levelset(const LevelSetSpec& V, int probe_samples = 200,
                                   std::uint64_t seed = 7, const ToleranceProfile& tol = {});

Vec reflect_point(const ReflectedLevelSet& r, const Vec& x);

/// Does the ray through `dir` meet the open set V? Decides membership in
/// the generated cone of V.
bool generated_cone_contains(const LevelSetSpec& V, const EigenTuple& dir,
                             const ToleranceProfile& tol = {});

/// Convex degree-1 extension of f beyond its cone: f on the closure, and
/// delta * F outside, where F is the support function of the sampled set
/// of boundary normals of R^n \ Gamma.
class ConvexExtension {
public:
    ConvexExtension(SymFun f, ConeSpec cone, double delta, int normal_samples = 10000,
                    std::uint64_t seed = 11, const ToleranceProfile& tol = {});

    double operator()(const EigenTuple& lambda) const;
    double support_part(const EigenTuple& lambda) const;  // F(lambda)
    int normal_count() const { return static_cast<int>(normals_.size()); }
    const std::vector<Vec>& normals() const { return normals_; }

private:
    SymFun f_;
    ConeSpec cone_;
    double delta_;
    std::vector<Vec> normals_;  // each stored sorted descending
    ToleranceProfile tol_;
};

struct ConditionCheck {
    std::string name;
    bool pass = false;
    bool applicable = true;
    double worst = 0.0;       // worst observed value for the condition
    Vec witness;              // sample attaining the worst value
    std::string note;
};

struct ConditionReport {
    std::vector<ConditionCheck> checks;
    bool all_pass() const;
    const ConditionCheck* find(const std::string& name) const;
};

/// Sampled structural verification: positivity, monotonicity in every
/// eigenvalue, the gradient-sum floor, vanishing on the cone boundary,
/// growth along rays, the convex/concave gradient-sum comparison with
/// f(e), and the per-partial floor c * sum_j df_j with c = 1/(1+mu).
ConditionReport verify_structural(const SymFun& f, const ConeSpec& cone, int samples,
                                  std::uint64_t seed = 23, const ToleranceProfile& tol = {});

/// Piecewise-linear max-form: max_k { lambda_k + s/(n-1) * sum_{j != k} lambda_j }.
double maxform_value(int n, double s, const EigenTuple& lambda);
SymFun maxform(int n, double s);

/// Mollified max-form evaluated by tensor Gauss-Legendre quadrature of a
/// radial bump over the eps-ball (n <= 4; requires eps < 1/(2 sqrt(n))).
class MollifiedMaxForm {
public:
    MollifiedMaxForm(int n, double s, double eps);
    double operator()(const EigenTuple& lambda) const;
    double eps() const { return eps_; }

private:
    int n_;
    double s_;
    double eps_;
    std::vector<Vec> nodes_;     // quadrature nodes inside the ball, pre-scaled
    std::vector<double> weights_;  // bump-weighted, normalized to sum 1
};

/// Interior sample of the cone: rejection sampling of sphere directions
/// blended toward the witness point.
EigenTuple sample_interior(const ConeSpec& cone, Rng& rng, double scale = 1.0);

/// A boundary point obtained by sliding an interior sample along -e.
EigenTuple sample_boundary(const ConeSpec& cone, Rng& rng, const ToleranceProfile& tol = {});

}  // namespace mobcone
