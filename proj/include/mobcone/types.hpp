#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mobcone {

using Vec = std::vector<double>;

inline bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

/// A point in eigenvalue space, stored in descending order.
class EigenTuple {
public:
    explicit EigenTuple(Vec values) : v_(std::move(values)) {
        if (v_.size() < 2)
            throw std::invalid_argument("EigenTuple: dimension must be >= 2");
        if (!all_finite(v_))
            throw std::invalid_argument("EigenTuple: non-finite entry");
        std::sort(v_.begin(), v_.end(), std::greater<double>());
    }

    int dim() const { return static_cast<int>(v_.size()); }
    double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
    const Vec& values() const { return v_; }

    double sum() const {
        double s = 0.0;
        for (double x : v_) s += x;
        return s;
    }
    double norm() const { return norm2(v_); }

    EigenTuple negated() const {
        Vec w(v_.size());
        for (std::size_t i = 0; i < v_.size(); ++i) w[i] = -v_[i];
        return EigenTuple(std::move(w));
    }

    EigenTuple scaled(double t) const {
        Vec w(v_.size());
        for (std::size_t i = 0; i < v_.size(); ++i) w[i] = t * v_[i];
        return EigenTuple(std::move(w));
    }

    static EigenTuple ones(int n) { return EigenTuple(Vec(static_cast<std::size_t>(n), 1.0)); }

    /// (1, -1, ..., -1)
    static EigenTuple lambda_star(int n) {
        Vec w(static_cast<std::size_t>(n), -1.0);
        w[0] = 1.0;
        return EigenTuple(std::move(w));
    }

    /// -(1, -1, ..., -1), sorted: (1, ..., 1, -1)
    static EigenTuple neg_lambda_star(int n) { return lambda_star(n).negated(); }

private:
    Vec v_;
};

/// Dense square matrix, row-major; sizes stay small (n <= 16).
struct Matrix {
    int n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static Matrix identity(int dim) {
        Matrix m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    static Matrix outer(const Vec& u, const Vec& v) {
        Matrix m(static_cast<int>(u.size()));
        for (int i = 0; i < m.n; ++i)
            for (int j = 0; j < m.n; ++j) m.at(i, j) = u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
        return m;
    }

    Matrix& add_scaled(const Matrix& other, double s) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * other.a[i];
        return *this;
    }

    Matrix& scale(double s) {
        for (double& x : a) x *= s;
        return *this;
    }

    Matrix transposed() const {
        Matrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = at(j, i);
        return m;
    }

    Vec mul(const Vec& x) const {
        Vec y(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += at(i, j) * x[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = s;
        }
        return y;
    }

    Matrix mul(const Matrix& b) const {
        Matrix c(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                double aik = at(i, k);
                if (aik == 0.0) continue;
                for (int j = 0; j < n; ++j) c.at(i, j) += aik * b.at(k, j);
            }
        return c;
    }

    double frobenius() const {
        double s = 0.0;
        for (double x : a) s += x * x;
        return std::sqrt(s);
    }

    double max_abs() const {
        double s = 0.0;
        for (double x : a) s = std::max(s, std::fabs(x));
        return s;
    }

    double max_asymmetry() const {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s = std::max(s, std::fabs(at(i, j) - at(j, i)));
        return s;
    }

    void symmetrize() {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double m = 0.5 * (at(i, j) + at(j, i));
                at(i, j) = m;
                at(j, i) = m;
            }
    }
};

enum class Region { Interior, Boundary, Exterior };

/// Position of a point relative to a cone, with the signed value of the
/// cone's defining function.
struct ConePosition {
    Region region;
    double margin;
};

inline const char* to_string(Region r) {
    switch (r) {
        case Region::Interior: return "interior";
        case Region::Boundary: return "boundary";
        case Region::Exterior: return "exterior";
    }
    return "?";
}

}  // namespace mobcone
