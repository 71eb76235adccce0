#include <abmetric/scalars.hpp>

#include <abmetric/errors.hpp>
#include <abmetric/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace abm {

ScalarPack scalar_pack(const PhiSpec& phi, double s, double b2, int n, int order) {
    if (n < 2) throw OutOfDomain("scalar_pack: n >= 2 required");
    if (order < 4) throw DomainError("scalar_pack: order >= 4 required");
    if (s * s > b2 * (1.0 + 1e-14)) throw OutOfDomain("scalar_pack: s^2 > b^2");
    if (b2 > phi.b0 * phi.b0 * (1.0 + 1e-14)) throw OutOfDomain("scalar_pack: b^2 > b0^2");

    const Jet x = Jet::variable(s, order);
    const Jet ph = phi_eval(phi, s, order);
    const Jet php = ph.derivative_jet();
    const Jet denom = ph - x * php;  // phi - s phi'
    if (denom.value() <= 0.0) throw Degenerate("phi - s phi' <= 0 at s=" + std::to_string(s));

    ScalarPack p;
    p.s = s;
    p.b2 = b2;
    p.n = n;

    p.Q = php / denom;
    const Jet Qp = p.Q.derivative_jet();
    const Jet Qpp = Qp.derivative_jet();
    const Jet one_sQ = 1.0 + x * p.Q;
    const Jet bs2 = b2 - x * x;  // b^2 - s^2 as a function of s (b^2 held fixed)

    p.Delta = 1.0 + x * p.Q + bs2 * Qp;
    if (p.Delta.value() <= 0.0) throw Degenerate("Delta <= 0 at s=" + std::to_string(s));

    p.Phi = -(p.Q - x * Qp) * (static_cast<double>(n) * p.Delta + one_sQ) - bs2 * one_sQ * Qpp;
    p.Psi = Qp / (2.0 * p.Delta);
    p.Omega = p.Phi / (2.0 * p.Delta * p.Delta);
    p.Theta = (p.Q - x * Qp) / (2.0 * p.Delta);
    p.Xi = (b2 * p.Q + x) * p.Phi / (p.Delta * p.Delta);
    p.Upsilon = (x * p.Phi / (p.Delta * p.Delta) - (2.0 * b2) * p.Psi).derivative_jet();
    return p;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = (n == 1) ? a : a + (b - a) * i / (n - 1);
    return v;
}

namespace {

ProfileReport profile_of(const std::vector<double>& grid, const std::vector<double>& vals, double tol) {
    ProfileReport rep;
    rep.grid = grid;
    rep.values = vals;
    const auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
    rep.variation = *mx - *mn;
    rep.max_abs = std::max(std::abs(*mx), std::abs(*mn));
    rep.constant = rep.variation <= tol * (1.0 + rep.max_abs);
    return rep;
}

}  // namespace

ProfileReport xi_profile(const PhiSpec& phi, double b2, int n, const std::vector<double>& grid,
                         const Tolerances& tol) {
    std::vector<double> vals;
    vals.reserve(grid.size());
    const double b = std::sqrt(b2);
    for (double s : grid) {
        if (!(std::abs(s) < b)) throw OutOfDomain("xi_profile: grid point outside (-b, b)");
        vals.push_back(scalar_pack(phi, s, b2, n, 4).xi());
    }
    return profile_of(grid, vals, tol.constancy);
}

ProfileReport upsilon_arg_profile(const PhiSpec& phi, double b2, int n, const std::vector<double>& grid,
                                  const Tolerances& tol) {
    std::vector<double> vals;
    vals.reserve(grid.size());
    const double b = std::sqrt(b2);
    for (double s : grid) {
        if (!(std::abs(s) < b)) throw OutOfDomain("upsilon_arg_profile: grid point outside (-b, b)");
        const ScalarPack p = scalar_pack(phi, s, b2, n, 4);
        vals.push_back(s * p.phi_big() / (p.delta() * p.delta()) - 2.0 * p.psi() * b2);
    }
    return profile_of(grid, vals, tol.constancy);
}

namespace {

double bh_ratio(const PhiSpec& phi, double b, int n, int npoints) {
    const double pi = std::numbers::pi;
    auto sin_pow = [n](double t) { return n == 2 ? 1.0 : std::pow(std::sin(t), n - 2); };
    const double num = integrate(sin_pow, 0.0, pi, npoints);
    const double den = integrate(
        [&](double t) {
            const double ph = phi.value(b * std::cos(t));
            if (ph <= 0.0) throw QuadratureFailure("phi(b cos t) <= 0 inside BH integral");
            return sin_pow(t) * std::pow(ph, -n);
        },
        0.0, pi, npoints);
    return num / den;
}

}  // namespace

BhFactor bh_factor(const PhiSpec& phi, double b, int n, const Tolerances& tol) {
    if (b < 0.0 || b >= phi.b0) throw OutOfDomain("bh_factor: need 0 <= b < b0");
    BhFactor out;
    out.T = bh_ratio(phi, b, n, tol.quadrature_points);
    // f is even in b, so the central stencil is safe across b = 0.
    double h = tol.step_b_rel * std::max(1.0, b);
    h = std::min(h, 0.5 * (phi.b0 - b));  // keep b + h inside the validity radius
    if (h <= 0.0) throw OutOfDomain("bh_factor: b too close to b0 for the derivative stencil");
    const double fp = bh_ratio(phi, b + h, n, tol.quadrature_points);
    const double fm = bh_ratio(phi, std::abs(b - h), n, tol.quadrature_points);
    out.dlogf_db = (fp - fm) / (2.0 * h) / out.T;
    return out;
}

}  // namespace abm
