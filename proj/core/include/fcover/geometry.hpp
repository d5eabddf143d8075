#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace fcover {

/// A point in R^1 or R^2. The unused coordinate of a 1D point is kept at 0
/// so arithmetic never has to branch on dimension.
struct Point {
    int dim = 1;
    std::array<double, 2> c{0.0, 0.0};

    Point() = default;
    explicit Point(double x) : dim(1), c{x, 0.0} {}
    Point(double x, double y) : dim(2), c{x, y} {}

    double operator[](int k) const { return c[static_cast<size_t>(k)]; }
    double& operator[](int k) { return c[static_cast<size_t>(k)]; }

    Point operator-() const { return dim == 1 ? Point(-c[0]) : Point(-c[0], -c[1]); }

    friend Point operator+(Point a, const Point& b) {
        a.c[0] += b.c[0];
        a.c[1] += b.c[1];
        return a;
    }
    friend Point operator-(Point a, const Point& b) {
        a.c[0] -= b.c[0];
        a.c[1] -= b.c[1];
        return a;
    }
    friend Point operator*(double s, Point a) {
        a.c[0] *= s;
        a.c[1] *= s;
        return a;
    }

    double dot(const Point& b) const { return c[0] * b.c[0] + c[1] * b.c[1]; }
    double norm2() const { return std::sqrt(dot(*this)); }
    double norm_inf() const { return std::max(std::fabs(c[0]), std::fabs(c[1])); }
    double norm1() const { return std::fabs(c[0]) + std::fabs(c[1]); }

    /// ||x||_p for p in {1, 2, inf}.
    double norm_p(double p) const {
        if (p == 1.0) return norm1();
        if (p == 2.0) return norm2();
        return norm_inf();
    }

    bool operator==(const Point& o) const { return dim == o.dim && c == o.c; }
};

/// Symmetric matrix for gaussian quadratic forms: [a11] in 1D,
/// [[a11,a12],[a12,a22]] in 2D.
struct SymMat {
    int dim = 1;
    double a11 = 1.0, a12 = 0.0, a22 = 0.0;

    SymMat() = default;
    explicit SymMat(double a) : dim(1), a11(a) {}
    SymMat(double m11, double m12, double m22) : dim(2), a11(m11), a12(m12), a22(m22) {}

    double quad(const Point& x) const {
        if (dim == 1) return a11 * x[0] * x[0];
        return a11 * x[0] * x[0] + 2.0 * a12 * x[0] * x[1] + a22 * x[1] * x[1];
    }

    double det() const { return dim == 1 ? a11 : a11 * a22 - a12 * a12; }

    bool positive_definite() const {
        return a11 > 0.0 && (dim == 1 || det() > 0.0);
    }

    SymMat inverse() const {
        if (dim == 1) {
            if (a11 == 0.0) throw std::invalid_argument("singular 1x1 matrix");
            return SymMat(1.0 / a11);
        }
        const double d = det();
        if (d == 0.0) throw std::invalid_argument("singular 2x2 matrix");
        return SymMat(a22 / d, -a12 / d, a11 / d);
    }

    double min_eigenvalue() const {
        if (dim == 1) return a11;
        const double tr = a11 + a22;
        const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det()));
        return tr / 2.0 - disc;
    }

    bool operator==(const SymMat& o) const {
        return dim == o.dim && a11 == o.a11 && a12 == o.a12 && a22 == o.a22;
    }
};

/// Eigendecomposition of a symmetric matrix: values ascending, columns of v
/// are the corresponding orthonormal eigenvectors.
struct SymEigen {
    std::array<double, 2> values{0.0, 0.0};
    std::array<Point, 2> vectors;
};

inline SymEigen sym_eigen(const SymMat& m) {
    SymEigen e;
    if (m.dim == 1) {
        e.values[0] = m.a11;
        e.vectors[0] = Point(1.0);
        return e;
    }
    const double tr = m.a11 + m.a22;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - m.det()));
    e.values[0] = tr / 2.0 - disc;
    e.values[1] = tr / 2.0 + disc;

    // columns of (M - lambda0 I) span the lambda1 eigenspace; take the larger
    // one and its orthogonal complement, which stays stable when the two
    // eigenvalues (nearly) coincide
    const double c0x = m.a11 - e.values[0], c0y = m.a12;
    const double c1x = m.a12, c1y = m.a22 - e.values[0];
    double vx, vy;
    if (c0x * c0x + c0y * c0y >= c1x * c1x + c1y * c1y) {
        vx = c0x;
        vy = c0y;
    } else {
        vx = c1x;
        vy = c1y;
    }
    double n = std::hypot(vx, vy);
    if (!(n > 1e-30 * (std::fabs(tr) + 1.0))) {
        vx = 1.0;
        vy = 0.0;
        n = 1.0;
    }
    e.vectors[1] = Point(vx / n, vy / n);
    e.vectors[0] = Point(-e.vectors[1][1], e.vectors[1][0]);
    return e;
}

/// General (not necessarily symmetric) matrix, used for linear changes of
/// variables u(Ax). 1D maps are the top-left entry.
struct Mat {
    int dim = 1;
    double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;

    Mat() = default;
    explicit Mat(double a) : dim(1), m11(a) {}
    Mat(double a, double b, double c, double d) : dim(2), m11(a), m12(b), m21(c), m22(d) {}

    static Mat identity(int d) { return d == 1 ? Mat(1.0) : Mat(1.0, 0.0, 0.0, 1.0); }

    Point apply(const Point& x) const {
        if (dim == 1) return Point(m11 * x[0]);
        return Point(m11 * x[0] + m12 * x[1], m21 * x[0] + m22 * x[1]);
    }

    double det() const { return dim == 1 ? m11 : m11 * m22 - m12 * m21; }

    Mat inverse() const {
        const double d = det();
        if (d == 0.0) throw std::invalid_argument("singular linear map");
        if (dim == 1) return Mat(1.0 / m11);
        return Mat(m22 / d, -m12 / d, -m21 / d, m11 / d);
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.dim == 1) return Mat(a.m11 * b.m11);
        return Mat(a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                   a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22);
    }

    bool operator==(const Mat& o) const {
        return dim == o.dim && m11 == o.m11 && m12 == o.m12 && m21 == o.m21 && m22 == o.m22;
    }
};

}  // namespace fcover
