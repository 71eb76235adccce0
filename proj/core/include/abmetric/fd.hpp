#pragma once

// Multivariate finite-difference helpers shared by the curvature oracles.
// All first/second derivatives are second-order central stencils with one
// Richardson level, so the leading error is O(h^4).

#include <Eigen/Dense>

#include <functional>

namespace abm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using ScalarField = std::function<double(const Vec&)>;

inline double fd_partial(const ScalarField& f, const Vec& x, int i, double h) {
    auto slope = [&](double hh) {
        Vec xp = x, xm = x;
        xp[i] += hh;
        xm[i] -= hh;
        return (f(xp) - f(xm)) / (2 * hh);
    };
    const double c = slope(h), d = slope(h / 2);
    return d + (d - c) / 3.0;
}

inline Vec fd_gradient(const ScalarField& f, const Vec& x, double h) {
    Vec g(x.size());
    for (int i = 0; i < x.size(); ++i) g[i] = fd_partial(f, x, i, h);
    return g;
}

// d^2 f / dx_i dx_j; the cross stencil is symmetric in (i, j) by construction.
inline double fd_second(const ScalarField& f, const Vec& x, int i, int j, double h) {
    auto diag = [&](double hh) {
        Vec xp = x, xm = x;
        xp[i] += hh;
        xm[i] -= hh;
        return (f(xp) - 2 * f(x) + f(xm)) / (hh * hh);
    };
    auto cross = [&](double hh) {
        Vec a = x, b = x, c = x, d = x;
        a[i] += hh; a[j] += hh;
        b[i] += hh; b[j] -= hh;
        c[i] -= hh; c[j] += hh;
        d[i] -= hh; d[j] -= hh;
        return (f(a) - f(b) - f(c) + f(d)) / (4 * hh * hh);
    };
    const double coarse = (i == j) ? diag(h) : cross(h);
    const double fine = (i == j) ? diag(h / 2) : cross(h / 2);
    return fine + (fine - coarse) / 3.0;
}

inline Mat fd_hessian(const ScalarField& f, const Vec& x, double h) {
    const int n = static_cast<int>(x.size());
    Mat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) out(i, j) = out(j, i) = fd_second(f, x, i, j, h);
    return out;
}

// Mixed partial d^2 f / dx_i dy_j of f(x, y), central in both arguments.
inline double fd_mixed_xy(const std::function<double(const Vec&, const Vec&)>& f, const Vec& x,
                          const Vec& y, int i, int j, double hx, double hy) {
    auto stencil = [&](double ax, double ay) {
        Vec xp = x, xm = x, yp = y, ym = y;
        xp[i] += ax;
        xm[i] -= ax;
        yp[j] += ay;
        ym[j] -= ay;
        return (f(xp, yp) - f(xp, ym) - f(xm, yp) + f(xm, ym)) / (4 * ax * ay);
    };
    const double coarse = stencil(hx, hy), fine = stencil(hx / 2, hy / 2);
    return fine + (fine - coarse) / 3.0;
}

}  // namespace abm
