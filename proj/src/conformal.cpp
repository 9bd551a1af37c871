#include "mobcone/conformal.hpp"

#include <cmath>
#include <sstream>

namespace mobcone {

namespace {
constexpr double kSingularRadius = 1e-12;
}

ScalarField::ScalarField(int n, std::function<double(const Vec&)> value,
                         std::function<Vec(const Vec&)> grad, std::function<Matrix(const Vec&)> hess,
                         std::function<bool(const Vec&)> in_domain, std::string name)
    : n_(n),
      value_(std::move(value)),
      grad_(std::move(grad)),
      hess_(std::move(hess)),
      in_domain_(std::move(in_domain)),
      analytic_(grad_ && hess_),
      name_(std::move(name)) {
    if (!value_) throw std::invalid_argument("ScalarField: evaluator required");
}

bool ScalarField::in_domain(const Vec& x) const {
    if (static_cast<int>(x.size()) != n_) return false;
    return in_domain_ ? in_domain_(x) : true;
}

double ScalarField::operator()(const Vec& x) const {
    if (!in_domain(x)) throw std::domain_error("ScalarField: point outside the domain");
    return value_(x);
}

Vec ScalarField::gradient(const Vec& x, const ToleranceProfile& tol) const {
    if (!in_domain(x)) throw std::domain_error("ScalarField: point outside the domain");
    if (grad_) return grad_(x);
    double h = tol.fd_gradient_scale * (1.0 + norm2(x));
    // the whole stencil must stay inside the domain
    for (std::size_t i = 0; i < x.size(); ++i) {
        Vec p = x, m = x;
        p[i] += h;
        m[i] -= h;
        if (!in_domain(p) || !in_domain(m))
            throw std::domain_error("ScalarField: finite-difference stencil leaves the domain");
    }
    return fd_gradient(value_, x, h);
}

Matrix ScalarField::hessian(const Vec& x, const ToleranceProfile& tol) const {
    if (!in_domain(x)) throw std::domain_error("ScalarField: point outside the domain");
    if (hess_) return hess_(x);
    double h = tol.fd_hessian_scale * (1.0 + norm2(x));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (int s : {-1, 1}) {
            Vec p = x;
            p[i] += s * h;
            if (!in_domain(p))
                throw std::domain_error("ScalarField: finite-difference stencil leaves the domain");
        }
    }
    Matrix H = fd_hessian(value_, x, h);
    H.symmetrize();
    return H;
}

ScalarField ScalarField::bubble(int n, double a, double b, Vec xbar) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("bubble: a, b must be > 0");
    if (static_cast<int>(xbar.size()) != n) throw std::invalid_argument("bubble: center dimension");
    auto rho = [b, xbar](const Vec& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double d = x[i] - xbar[i];
            s += d * d;
        }
        return 1.0 + b * b * s;
    };
    auto value = [a, rho](const Vec& x) { return std::log(a / rho(x)); };
    auto grad = [b, xbar, rho](const Vec& x) {
        double r = rho(x);
        Vec g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = -2.0 * b * b * (x[i] - xbar[i]) / r;
        return g;
    };
    auto hess = [n, b, xbar, rho](const Vec& x) {
        double r = rho(x);
        Matrix H(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double yi = x[static_cast<std::size_t>(i)] - xbar[static_cast<std::size_t>(i)];
                double yj = x[static_cast<std::size_t>(j)] - xbar[static_cast<std::size_t>(j)];
                H.at(i, j) = 4.0 * b * b * b * b * yi * yj / (r * r);
            }
            H.at(i, i) += -2.0 * b * b / r;
        }
        return H;
    };
    std::ostringstream nm;
    nm << "bubble(a=" << a << ",b=" << b << ")";
    return ScalarField(n, value, grad, hess, nullptr, nm.str());
}

ScalarField ScalarField::bubble_u(int n, double a, double b, Vec xbar) {
    if (n < 3) throw std::invalid_argument("bubble_u: requires n >= 3");
    ScalarField v = bubble(n, a, b, std::move(xbar));
    double half = 0.5 * (n - 2);
    auto value = [v, half](const Vec& x) { return std::exp(half * v(x)); };
    auto grad = [v, half, value](const Vec& x) {
        Vec g = v.gradient(x);
        double u = value(x);
        for (double& gi : g) gi *= half * u;
        return g;
    };
    auto hess = [v, half, value](const Vec& x) {
        Vec g = v.gradient(x);
        Matrix H = v.hessian(x);
        double u = value(x);
        Matrix out = Matrix::outer(g, g);
        out.scale(half * half * u);
        H.scale(half * u);
        out.add_scaled(H, 1.0);
        return out;
    };
    return ScalarField(n, value, grad, hess, nullptr, "bubble-u");
}

ScalarField ScalarField::constant(int n, double c) {
    auto value = [c](const Vec&) { return c; };
    auto grad = [n](const Vec&) { return Vec(static_cast<std::size_t>(n), 0.0); };
    auto hess = [n](const Vec&) { return Matrix(n); };
    return ScalarField(n, value, grad, hess, nullptr, "constant");
}

ScalarField ScalarField::linear(int n, Vec p, double c) {
    if (static_cast<int>(p.size()) != n) throw std::invalid_argument("linear: dimension mismatch");
    auto value = [p, c](const Vec& x) { return c + dot(p, x); };
    auto grad = [p](const Vec&) { return p; };
    auto hess = [n](const Vec&) { return Matrix(n); };
    return ScalarField(n, value, grad, hess, nullptr, "linear");
}

ScalarField ScalarField::log_radial(int n, double alpha) {
    auto value = [alpha](const Vec& x) { return alpha * std::log(norm2(x)); };
    auto grad = [alpha](const Vec& x) {
        double r2 = dot(x, x);
        Vec g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = alpha * x[i] / r2;
        return g;
    };
    auto hess = [n, alpha](const Vec& x) {
        double r2 = dot(x, x);
        Matrix H(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j)
                H.at(i, j) = -2.0 * alpha * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)] / (r2 * r2);
            H.at(i, i) += alpha / r2;
        }
        return H;
    };
    auto dom = [](const Vec& x) { return norm2(x) > kSingularRadius; };
    return ScalarField(n, value, grad, hess, dom, "log-radial");
}

ScalarField ScalarField::cubic(int n, Vec c, Matrix Q, Vec t, double c0) {
    if (static_cast<int>(c.size()) != n || Q.n != n || static_cast<int>(t.size()) != n)
        throw std::invalid_argument("cubic: dimension mismatch");
    Q.symmetrize();
    auto value = [c, Q, t, c0](const Vec& x) {
        double s = c0 + dot(c, x);
        for (int i = 0; i < Q.n; ++i)
            for (int j = 0; j < Q.n; ++j) s += Q.at(i, j) * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < t.size(); ++i) s += t[i] * x[i] * x[i] * x[i];
        return s;
    };
    auto grad = [c, Q, t](const Vec& x) {
        Vec g = c;
        for (int i = 0; i < Q.n; ++i) {
            double s = 0.0;
            for (int j = 0; j < Q.n; ++j) s += 2.0 * Q.at(i, j) * x[static_cast<std::size_t>(j)];
            g[static_cast<std::size_t>(i)] += s + 3.0 * t[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        }
        return g;
    };
    auto hess = [Q, t](const Vec& x) {
        Matrix H = Q;
        H.scale(2.0);
        for (int i = 0; i < Q.n; ++i) H.at(i, i) += 6.0 * t[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        return H;
    };
    return ScalarField(n, value, grad, hess, nullptr, "cubic");
}

ScalarField ScalarField::exp_cubic(int n, Vec c, Matrix Q, Vec t, double c0) {
    ScalarField s = cubic(n, std::move(c), std::move(Q), std::move(t), c0);
    auto value = [s](const Vec& x) { return std::exp(s(x)); };
    auto grad = [s, value](const Vec& x) {
        Vec g = s.gradient(x);
        double u = value(x);
        for (double& gi : g) gi *= u;
        return g;
    };
    auto hess = [s, value](const Vec& x) {
        Vec g = s.gradient(x);
        Matrix H = s.hessian(x);
        double u = value(x);
        Matrix out = Matrix::outer(g, g);
        out.add_scaled(H, 1.0);
        out.scale(u);
        return out;
    };
    return ScalarField(n, value, grad, hess, nullptr, "exp-cubic");
}

ScalarField ScalarField::one_dim(int n, std::function<double(double)> v,
                                 std::function<double(double)> dv,
                                 std::function<double(double)> ddv, std::string name) {
    auto value = [v](const Vec& x) { return v(x[0]); };
    auto grad = [dv, n](const Vec& x) {
        Vec g(static_cast<std::size_t>(n), 0.0);
        g[0] = dv(x[0]);
        return g;
    };
    auto hess = [ddv, n](const Vec& x) {
        Matrix H(n);
        H.at(0, 0) = ddv(x[0]);
        return H;
    };
    return ScalarField(n, value, grad, hess, nullptr, std::move(name));
}

ScalarField ScalarField::from_value(int n, std::function<double(const Vec&)> value,
                                    std::string name) {
    return ScalarField(n, std::move(value), nullptr, nullptr, nullptr, std::move(name));
}

MobiusMap& MobiusMap::translate(Vec xbar) {
    if (static_cast<int>(xbar.size()) != n_) throw std::invalid_argument("translate: dimension");
    MobiusGen g;
    g.kind = MobiusGen::Kind::Translation;
    g.shift = std::move(xbar);
    gens_.push_back(std::move(g));
    return *this;
}

MobiusMap& MobiusMap::dilate(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("dilate: a must be > 0");
    MobiusGen g;
    g.kind = MobiusGen::Kind::Dilation;
    g.a = a;
    gens_.push_back(std::move(g));
    return *this;
}

MobiusMap& MobiusMap::rotate(Matrix O) {
    if (O.n != n_) throw std::invalid_argument("rotate: dimension");
    Matrix OtO = O.transposed().mul(O);
    OtO.add_scaled(Matrix::identity(n_), -1.0);
    if (OtO.max_abs() > 1e-10) throw std::invalid_argument("rotate: matrix is not orthogonal");
    MobiusGen g;
    g.kind = MobiusGen::Kind::Rotation;
    g.O = std::move(O);
    gens_.push_back(std::move(g));
    return *this;
}

MobiusMap& MobiusMap::invert() {
    MobiusGen g;
    g.kind = MobiusGen::Kind::Inversion;
    gens_.push_back(std::move(g));
    return *this;
}

MobiusMap& MobiusMap::append(const MobiusMap& other) {
    if (other.n_ != n_) throw std::invalid_argument("append: dimension");
    for (const auto& g : other.gens_) gens_.push_back(g);
    return *this;
}

Vec MobiusMap::apply(const Vec& x) const {
    Vec y = x;
    for (const auto& g : gens_) {
        switch (g.kind) {
            case MobiusGen::Kind::Translation:
                for (std::size_t i = 0; i < y.size(); ++i) y[i] += g.shift[i];
                break;
            case MobiusGen::Kind::Dilation:
                for (double& yi : y) yi *= g.a;
                break;
            case MobiusGen::Kind::Rotation:
                y = g.O.mul(y);
                break;
            case MobiusGen::Kind::Inversion: {
                double r2 = dot(y, y);
                if (r2 <= kSingularRadius * kSingularRadius)
                    throw std::domain_error("MobiusMap: evaluation at an inversion center");
                for (double& yi : y) yi /= r2;
                break;
            }
        }
    }
    return y;
}

bool MobiusMap::singular_at(const Vec& x) const {
    Vec y = x;
    for (const auto& g : gens_) {
        switch (g.kind) {
            case MobiusGen::Kind::Translation:
                for (std::size_t i = 0; i < y.size(); ++i) y[i] += g.shift[i];
                break;
            case MobiusGen::Kind::Dilation:
                for (double& yi : y) yi *= g.a;
                break;
            case MobiusGen::Kind::Rotation:
                y = g.O.mul(y);
                break;
            case MobiusGen::Kind::Inversion: {
                double r2 = dot(y, y);
                if (r2 <= kSingularRadius * kSingularRadius) return true;
                for (double& yi : y) yi /= r2;
                break;
            }
        }
    }
    return false;
}

double MobiusMap::log_jacobian_abs(const Vec& x) const {
    double acc = 0.0;
    Vec y = x;
    for (const auto& g : gens_) {
        switch (g.kind) {
            case MobiusGen::Kind::Translation:
                for (std::size_t i = 0; i < y.size(); ++i) y[i] += g.shift[i];
                break;
            case MobiusGen::Kind::Dilation:
                acc += n_ * std::log(g.a);
                for (double& yi : y) yi *= g.a;
                break;
            case MobiusGen::Kind::Rotation:
                y = g.O.mul(y);
                break;
            case MobiusGen::Kind::Inversion: {
                double r2 = dot(y, y);
                if (r2 <= kSingularRadius * kSingularRadius)
                    throw std::domain_error("MobiusMap: evaluation at an inversion center");
                acc += -n_ * std::log(r2);
                for (double& yi : y) yi /= r2;
                break;
            }
        }
    }
    return acc;
}

double MobiusMap::jacobian_det_abs(const Vec& x) const { return std::exp(log_jacobian_abs(x)); }

namespace {

MapJet identity_jet(const Vec& x) {
    MapJet j;
    j.y = x;
    j.J = Matrix::identity(static_cast<int>(x.size()));
    j.H.assign(x.size(), Matrix(static_cast<int>(x.size())));
    return j;
}

// jets of a single generator at point y
MapJet generator_jet(const MobiusGen& g, const Vec& y, int n) {
    MapJet out;
    out.H.assign(static_cast<std::size_t>(n), Matrix(n));
    switch (g.kind) {
        case MobiusGen::Kind::Translation: {
            out.y = y;
            for (int i = 0; i < n; ++i) out.y[static_cast<std::size_t>(i)] += g.shift[static_cast<std::size_t>(i)];
            out.J = Matrix::identity(n);
            break;
        }
        case MobiusGen::Kind::Dilation: {
            out.y = y;
            for (double& yi : out.y) yi *= g.a;
            out.J = Matrix::identity(n);
            out.J.scale(g.a);
            break;
        }
        case MobiusGen::Kind::Rotation: {
            out.y = g.O.mul(y);
            out.J = g.O;
            break;
        }
        case MobiusGen::Kind::Inversion: {
            double r2 = dot(y, y);
            if (r2 <= kSingularRadius * kSingularRadius)
                throw std::domain_error("MobiusMap: evaluation at an inversion center");
            out.y = y;
            for (double& yi : out.y) yi /= r2;
            out.J = Matrix(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    out.J.at(i, j) = (i == j ? 1.0 / r2 : 0.0) -
                                     2.0 * y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] / (r2 * r2);
            double r4 = r2 * r2, r6 = r4 * r2;
            for (int i = 0; i < n; ++i) {
                Matrix& Hi = out.H[static_cast<std::size_t>(i)];
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        double v = 8.0 * y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(k)] / r6;
                        if (i == j) v -= 2.0 * y[static_cast<std::size_t>(k)] / r4;
                        if (i == k) v -= 2.0 * y[static_cast<std::size_t>(j)] / r4;
                        if (j == k) v -= 2.0 * y[static_cast<std::size_t>(i)] / r4;
                        Hi.at(j, k) = v;
                    }
            }
            break;
        }
    }
    return out;
}

// composite of jet P (inner) with generator jet G taken at P.y
MapJet compose(const MapJet& P, const MapJet& G, int n) {
    MapJet out;
    out.y = G.y;
    out.J = G.J.mul(P.J);
    out.H.assign(static_cast<std::size_t>(n), Matrix(n));
    for (int i = 0; i < n; ++i) {
        Matrix& Hi = out.H[static_cast<std::size_t>(i)];
        // first-order part: sum_c dG_i/dy_c * P.H[c]
        for (int c = 0; c < n; ++c) {
            double gc = G.J.at(i, c);
            if (gc != 0.0) Hi.add_scaled(P.H[static_cast<std::size_t>(c)], gc);
        }
        // second-order part: J_P^T G.H[i] J_P
        const Matrix& Gi = G.H[static_cast<std::size_t>(i)];
        if (Gi.max_abs() != 0.0) {
            Matrix tmp = Gi.mul(P.J);             // G.H[i] * J_P
            Matrix quad = P.J.transposed().mul(tmp);
            Hi.add_scaled(quad, 1.0);
        }
    }
    return out;
}

// gradient and Hessian of s(x) = log |y(x)| through a jet
void log_norm_jet(const MapJet& P, Vec& grad, Matrix& hess) {
    const int n = static_cast<int>(P.y.size());
    double r2 = dot(P.y, P.y);
    Vec ds(P.y.size());
    for (std::size_t i = 0; i < P.y.size(); ++i) ds[i] = P.y[i] / r2;
    Matrix S(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            S.at(i, j) = (i == j ? 1.0 / r2 : 0.0) -
                         2.0 * P.y[static_cast<std::size_t>(i)] * P.y[static_cast<std::size_t>(j)] / (r2 * r2);
    }
    grad = P.J.transposed().mul(ds);
    Matrix quad = P.J.transposed().mul(S.mul(P.J));
    hess = quad;
    for (int c = 0; c < n; ++c) hess.add_scaled(P.H[static_cast<std::size_t>(c)], ds[static_cast<std::size_t>(c)]);
}

}  // namespace

MapJet MobiusMap::jet(const Vec& x) const {
    MapJet cur = identity_jet(x);
    for (const auto& g : gens_) {
        MapJet G = generator_jet(g, cur.y, n_);
        cur = compose(cur, G, n_);
    }
    return cur;
}

void MobiusMap::log_jacobian_jet(const Vec& x, double& w, Vec& grad, Matrix& hess) const {
    const int n = n_;
    w = 0.0;
    grad.assign(static_cast<std::size_t>(n), 0.0);
    hess = Matrix(n);
    MapJet cur = identity_jet(x);
    for (const auto& g : gens_) {
        if (g.kind == MobiusGen::Kind::Inversion) {
            double r2 = dot(cur.y, cur.y);
            if (r2 <= kSingularRadius * kSingularRadius)
                throw std::domain_error("MobiusMap: evaluation at an inversion center");
            // contribution of log|J_inv| / n = -2 log |y|
            w += -std::log(r2);
            Vec gl;
            Matrix hl;
            log_norm_jet(cur, gl, hl);
            for (int i = 0; i < n; ++i) grad[static_cast<std::size_t>(i)] += -2.0 * gl[static_cast<std::size_t>(i)];
            hess.add_scaled(hl, -2.0);
        } else if (g.kind == MobiusGen::Kind::Dilation) {
            w += std::log(g.a);
        }
        MapJet G = generator_jet(g, cur.y, n);
        cur = compose(cur, G, n);
    }
}

HessianResult mobius_hessian(const ScalarField& v, const Vec& x, const ToleranceProfile& tol) {
    const int n = v.dim();
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("mobius_hessian: dimension");
    double val = v(x);
    Vec g = v.gradient(x, tol);
    Matrix H = v.hessian(x, tol);

    Matrix A(n);
    A.add_scaled(H, -1.0);
    A.add_scaled(Matrix::outer(g, g), 1.0);
    A.add_scaled(Matrix::identity(n), -0.5 * dot(g, g));
    A.scale(std::exp(-2.0 * val));
    A.symmetrize();
    EigResult e = sym_eigs(A, tol.eig_offdiag_rel);
    return HessianResult(x, std::move(A), EigenTuple(e.eigenvalues), v.analytic());
}

HessianResult conformal_hessian_u(const ScalarField& u, const Vec& x, const ToleranceProfile& tol) {
    const int n = u.dim();
    if (n < 3) throw std::invalid_argument("conformal_hessian_u: requires n >= 3");
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("conformal_hessian_u: dimension");
    double uv = u(x);
    if (!(uv > 0.0)) throw std::domain_error("conformal_hessian_u: u must be positive");
    Vec g = u.gradient(x, tol);
    Matrix H = u.hessian(x, tol);

    const double nn = static_cast<double>(n);
    double p_hess = std::pow(uv, -(nn + 2.0) / (nn - 2.0));
    double p_grad = std::pow(uv, -2.0 * nn / (nn - 2.0));
    Matrix A(n);
    A.add_scaled(H, -2.0 / (nn - 2.0) * p_hess);
    A.add_scaled(Matrix::outer(g, g), 2.0 * nn / ((nn - 2.0) * (nn - 2.0)) * p_grad);
    A.add_scaled(Matrix::identity(n), -2.0 / ((nn - 2.0) * (nn - 2.0)) * p_grad * dot(g, g));
    A.symmetrize();
    EigResult e = sym_eigs(A, tol.eig_offdiag_rel);
    return HessianResult(x, std::move(A), EigenTuple(e.eigenvalues), u.analytic());
}

EigenTuple onedim_eigenvalues(double v, double dv, double ddv, int n) {
    double em = std::exp(-2.0 * v);
    double first = em * (-ddv + 0.5 * dv * dv);
    double rest = -0.5 * dv * dv * em;
    Vec lam(static_cast<std::size_t>(n), rest);
    lam[0] = first;
    return EigenTuple(std::move(lam));
}

ScalarField apply_mobius(const ScalarField& v, const MobiusMap& phi) {
    const int n = v.dim();
    if (phi.dim() != n) throw std::invalid_argument("apply_mobius: dimension mismatch");
    MobiusMap map = phi;
    ScalarField field = v;

    auto value = [field, map](const Vec& x) {
        return field(map.apply(x)) + map.log_jacobian_abs(x) / field.dim();
    };
    auto in_dom = [field, map](const Vec& x) {
        if (map.singular_at(x)) return false;
        return field.in_domain(map.apply(x));
    };
    if (!v.analytic()) {
        return ScalarField(n, value, nullptr, nullptr, in_dom, "mobius(" + v.name() + ")");
    }
    auto grad = [field, map](const Vec& x) {
        MapJet jet = map.jet(x);
        Vec gv = field.gradient(jet.y);
        Vec g = jet.J.transposed().mul(gv);
        double w;
        Vec gw;
        Matrix hw;
        map.log_jacobian_jet(x, w, gw, hw);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += gw[i];
        return g;
    };
    auto hess = [field, map, n](const Vec& x) {
        MapJet jet = map.jet(x);
        Vec gv = field.gradient(jet.y);
        Matrix Hv = field.hessian(jet.y);
        Matrix out = jet.J.transposed().mul(Hv.mul(jet.J));
        for (int c = 0; c < n; ++c) out.add_scaled(jet.H[static_cast<std::size_t>(c)], gv[static_cast<std::size_t>(c)]);
        double w;
        Vec gw;
        Matrix hw;
        map.log_jacobian_jet(x, w, gw, hw);
        out.add_scaled(hw, 1.0);
        return out;
    };
    return ScalarField(n, value, grad, hess, in_dom, "mobius(" + v.name() + ")");
}

ScalarField kelvin_transform(const ScalarField& v, const Vec& x0, double lam) {
    const int n = v.dim();
    if (static_cast<int>(x0.size()) != n) throw std::invalid_argument("kelvin_transform: dimension");
    if (!(lam > 0.0)) throw std::invalid_argument("kelvin_transform: radius must be > 0");

    // y |-> x0 + lam^2 (y - x0)/|y - x0|^2 as a generator chain, reused for
    // the derivative jets
    MobiusMap comp(n);
    Vec neg_x0(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) neg_x0[i] = -x0[i];
    comp.translate(neg_x0).invert().dilate(lam * lam).translate(x0);

    ScalarField field = v;
    Vec center = x0;
    // direct formula for the value; jets of the equivalent composition for
    // the derivatives
    auto value = [field, center, lam](const Vec& y) {
        Vec d(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) d[i] = y[i] - center[i];
        double r = norm2(d);
        if (r <= kSingularRadius) throw std::domain_error("kelvin_transform: evaluation at the center");
        Vec z(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) z[i] = center[i] + lam * lam * d[i] / (r * r);
        return 2.0 * std::log(lam / r) + field(z);
    };
    ScalarField composed = apply_mobius(v, comp);
    auto in_dom = [composed](const Vec& y) { return composed.in_domain(y); };
    if (!v.analytic()) return ScalarField(n, value, nullptr, nullptr, in_dom, "kelvin(" + v.name() + ")");
    auto grad = [composed](const Vec& y) { return composed.gradient(y); };
    auto hess = [composed](const Vec& y) { return composed.hessian(y); };
    return ScalarField(n, value, grad, hess, in_dom, "kelvin(" + v.name() + ")");
}

MobiusMap gradient_vanishing_map(const Vec& p, double lam, const Matrix& O) {
    const int n = static_cast<int>(p.size());
    if (norm2(p) <= 0.0) throw std::invalid_argument("gradient_vanishing_map: p must be nonzero");
    if (lam == 0.0) throw std::invalid_argument("gradient_vanishing_map: lam must be nonzero");
    if (O.n != n) throw std::invalid_argument("gradient_vanishing_map: dimension mismatch");

    Vec otp = O.transposed().mul(p);
    Vec xbar(otp.size());
    for (std::size_t i = 0; i < otp.size(); ++i) xbar[i] = 0.5 * lam * lam * otp[i];
    double xbar2 = dot(xbar, xbar);

    Vec neg_xbar(xbar.size()), shift(xbar.size());
    for (std::size_t i = 0; i < xbar.size(); ++i) {
        neg_xbar[i] = -xbar[i];
        // mirrors the rounding of the generator chain so psi(0) cancels exactly
        shift[i] = (xbar[i] / xbar2) * (lam * lam);
    }
    MobiusMap psi(n);
    psi.translate(neg_xbar).invert().dilate(lam * lam).translate(shift).rotate(O);
    return psi;
}

}  // namespace mobcone
