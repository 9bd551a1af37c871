#pragma once

#include <functional>
#include <memory>
#include <string>

#include "mobcone/numerics.hpp"
#include "mobcone/types.hpp"

namespace mobcone {

/// A scalar function on an open subset of R^n with optional analytic first
/// and second derivatives; finite differences otherwise.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(int n, std::function<double(const Vec&)> value,
                std::function<Vec(const Vec&)> grad, std::function<Matrix(const Vec&)> hess,
                std::function<bool(const Vec&)> in_domain, std::string name);

    int dim() const { return n_; }
    bool analytic() const { return analytic_; }
    const std::string& name() const { return name_; }
    bool in_domain(const Vec& x) const;

    double operator()(const Vec& x) const;
    Vec gradient(const Vec& x, const ToleranceProfile& tol = {}) const;
    Matrix hessian(const Vec& x, const ToleranceProfile& tol = {}) const;

    /// v = log(a / (1 + b^2 |x - xbar|^2))
    static ScalarField bubble(int n, double a, double b, Vec xbar);
    /// u = e^{(n-2) v / 2} for the bubble v (positive, analytic)
    static ScalarField bubble_u(int n, double a, double b, Vec xbar);
    static ScalarField constant(int n, double c);
    static ScalarField linear(int n, Vec p, double c = 0.0);
    /// alpha * log |x|
    static ScalarField log_radial(int n, double alpha);
    /// cubic polynomial sum c.x + x'Qx + sum t_i x_i^3 (analytic derivatives)
    static ScalarField cubic(int n, Vec c, Matrix Q, Vec t, double c0 = 0.0);
    /// e^{cubic}, positive, analytic
    static ScalarField exp_cubic(int n, Vec c, Matrix Q, Vec t, double c0 = 0.0);
    /// field depending on x_1 only, with supplied one-variable derivatives
    static ScalarField one_dim(int n, std::function<double(double)> v,
                               std::function<double(double)> dv, std::function<double(double)> ddv,
                               std::string name = "one-dim");
    /// value-only field; derivatives fall back to finite differences
    static ScalarField from_value(int n, std::function<double(const Vec&)> value,
                                  std::string name = "fd-field");

private:
    int n_ = 0;
    std::function<double(const Vec&)> value_;
    std::function<Vec(const Vec&)> grad_;
    std::function<Matrix(const Vec&)> hess_;
    std::function<bool(const Vec&)> in_domain_;
    bool analytic_ = false;
    std::string name_;
};

struct MobiusGen {
    enum class Kind { Translation, Dilation, Rotation, Inversion } kind;
    Vec shift;  // Translation
    double a = 1.0;  // Dilation
    Matrix O;   // Rotation (orthogonal)
};

/// Value, Jacobian, and per-component Hessians of a map at a point.
struct MapJet {
    Vec y;
    Matrix J;
    std::vector<Matrix> H;  // H[i] = Hessian of component i
};

/// Finite composition of translations, dilations, rotations, and inversions,
/// applied first-to-last.
class MobiusMap {
public:
    MobiusMap() = default;
    explicit MobiusMap(int n) : n_(n) {}

    int dim() const { return n_; }
    const std::vector<MobiusGen>& generators() const { return gens_; }

    MobiusMap& translate(Vec xbar);
    MobiusMap& dilate(double a);
    MobiusMap& rotate(Matrix O);
    MobiusMap& invert();
    MobiusMap& append(const MobiusMap& other);

    Vec apply(const Vec& x) const;
    /// |det J| via the generator product; throws within 1e-12 of an
    /// inversion center anywhere along the chain.
    double jacobian_det_abs(const Vec& x) const;
    double log_jacobian_abs(const Vec& x) const;
    MapJet jet(const Vec& x) const;
    bool singular_at(const Vec& x) const;

    /// log|J|/n together with analytic gradient and Hessian.
    void log_jacobian_jet(const Vec& x, double& w, Vec& grad, Matrix& hess) const;

private:
    int n_ = 0;
    std::vector<MobiusGen> gens_;
};

struct HessianResult {
    Vec x;
    Matrix A;
    EigenTuple eigenvalues;
    bool analytic;
    HessianResult(Vec point, Matrix mat, EigenTuple eig, bool an)
        : x(std::move(point)), A(std::move(mat)), eigenvalues(std::move(eig)), analytic(an) {}
};

/// A[v] = e^{-2v} ( -D^2 v + Dv (x) Dv - |Dv|^2 I / 2 ) with eigenvalues.
HessianResult mobius_hessian(const ScalarField& v, const Vec& x, const ToleranceProfile& tol = {});

/// The conformal Hessian of a positive function u, n >= 3, assembled from
/// its own displayed formula (independent of mobius_hessian).
HessianResult conformal_hessian_u(const ScalarField& u, const Vec& x,
                                  const ToleranceProfile& tol = {});

/// Eigenvalues of A[v] for v depending on x_1 only:
/// ( e^{-2v} (-v'' + v'^2/2), -e^{-2v} v'^2/2, ..., ) sorted descending.
EigenTuple onedim_eigenvalues(double v, double dv, double ddv, int n);

/// v o phi + log|J_phi| / n, with chain-rule analytic derivatives when v
/// has them.
ScalarField apply_mobius(const ScalarField& v, const MobiusMap& phi);

/// v^{x0,lam}(y) = 2 log(lam/|y-x0|) + v(x0 + lam^2 (y-x0)/|y-x0|^2),
/// evaluated by the direct formula.
ScalarField kelvin_transform(const ScalarField& v, const Vec& x0, double lam);

/// The Mobius map psi with psi(0) = 0 and grad v^psi (0) = 0 for any field
/// with grad v(0) = p != 0; parameters (p, lam != 0, orthogonal O).
MobiusMap gradient_vanishing_map(const Vec& p, double lam, const Matrix& O);

}  // namespace mobcone
