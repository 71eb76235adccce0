#include <abmetric/phi.hpp>

#include <abmetric/errors.hpp>

#include <algorithm>
#include <cmath>

namespace abm {

PhiSpec PhiSpec::riemannian() {
    PhiSpec p;
    p.family = PhiFamily::riemannian;
    p.b0 = 1.0;
    return p;
}

PhiSpec PhiSpec::randers(double b0) {
    PhiSpec p;
    p.family = PhiFamily::randers;
    p.b0 = b0;
    return p;
}

PhiSpec PhiSpec::power(double m, double b0) {
    PhiSpec p;
    p.family = PhiFamily::power;
    p.m = m;
    // phi - s phi' = (1+s)^m (1 - m s) vanishes at s = 1/m
    p.b0 = (m > 1.0) ? std::min(b0, 1.0 / m) : b0;
    return p;
}

PhiSpec PhiSpec::quadratic(double b0) {
    PhiSpec p;
    p.family = PhiFamily::quadratic;
    p.b0 = b0;
    return p;
}

PhiSpec PhiSpec::randers_type(double k1, double k2, double k3, double b0) {
    if (!(k1 > 0.0)) throw ValidationError("phi.k1", "randers_type requires k1 > 0");
    PhiSpec p;
    p.family = PhiFamily::randers_type;
    p.k1 = k1;
    p.k2 = k2;
    p.k3 = k3;
    p.b0 = b0;
    return p;
}

PhiSpec PhiSpec::taylor(std::vector<double> coeffs, double radius) {
    if (coeffs.empty()) throw ValidationError("phi.coeffs", "taylor family needs coefficients");
    if (!(radius > 0.0)) throw ValidationError("phi.radius", "taylor family needs radius > 0");
    if (!(coeffs[0] > 0.0)) throw ValidationError("phi.coeffs", "phi(0) must be positive");
    PhiSpec p;
    p.family = PhiFamily::taylor;
    p.taylor_coeffs = std::move(coeffs);
    p.taylor_radius = radius;
    p.b0 = radius;
    return p;
}

std::string PhiSpec::family_name() const {
    switch (family) {
        case PhiFamily::riemannian: return "riemannian";
        case PhiFamily::randers: return "randers";
        case PhiFamily::power: return "power";
        case PhiFamily::quadratic: return "quadratic";
        case PhiFamily::randers_type: return "randers_type";
        case PhiFamily::taylor: return "taylor";
    }
    return "?";
}

double PhiSpec::value(double s) const {
    switch (family) {
        case PhiFamily::riemannian: return 1.0;
        case PhiFamily::randers: return 1.0 + s;
        case PhiFamily::power: return std::pow(1.0 + s, m + 1.0);
        case PhiFamily::quadratic: return 1.0 + s * s;
        case PhiFamily::randers_type: return k1 * std::sqrt(1.0 + k2 * s * s) + k3 * s;
        case PhiFamily::taylor: {
            double acc = 0.0;
            for (size_t i = taylor_coeffs.size(); i-- > 0;) acc = acc * s + taylor_coeffs[i];
            return acc;
        }
    }
    return 0.0;
}

Jet phi_eval(const PhiSpec& phi, double s, int order) {
    if (!(std::abs(s) < phi.b0)) throw OutOfDomain("phi_eval: |s| >= b0");
    const Jet x = Jet::variable(s, order);
    switch (phi.family) {
        case PhiFamily::riemannian:
            return Jet::constant(1.0, s, order);
        case PhiFamily::randers:
            return 1.0 + x;
        case PhiFamily::power:
            if (1.0 + s <= 0.0) throw OutOfDomain("phi_eval: 1 + s <= 0");
            return pow(1.0 + x, phi.m + 1.0);
        case PhiFamily::quadratic:
            return 1.0 + x * x;
        case PhiFamily::randers_type: {
            if (1.0 + phi.k2 * s * s <= 0.0) throw OutOfDomain("phi_eval: 1 + k2 s^2 <= 0");
            return phi.k1 * sqrt(1.0 + phi.k2 * (x * x)) + phi.k3 * x;
        }
        case PhiFamily::taylor: {
            Jet acc = Jet::constant(0.0, s, order);
            for (size_t i = phi.taylor_coeffs.size(); i-- > 0;) acc = acc * x + phi.taylor_coeffs[i];
            return acc;
        }
    }
    throw DomainError("phi_eval: unknown family");
}

ValidationReport phi_validate(const PhiSpec& phi, double bmax, int grid_n) {
    if (!(bmax > 0.0) || bmax > phi.b0) throw OutOfDomain("phi_validate: need 0 < bmax <= b0");
    ValidationReport rep;
    rep.grid_n = grid_n;
    rep.bmax = bmax;
    rep.min_phi = std::numeric_limits<double>::infinity();
    rep.min_regularity = std::numeric_limits<double>::infinity();
    // |s| <= b <= bmax; stay marginally inside b0 for the jet evaluation.
    const double smax = std::min(bmax, phi.b0 * (1.0 - 1e-12));
    for (int ib = 0; ib <= grid_n; ++ib) {
        const double b = bmax * ib / grid_n;
        for (int is = 0; is <= grid_n; ++is) {
            const double s = std::min(b, smax) * (2.0 * is / grid_n - 1.0);
            const Jet pj = phi_eval(phi, s, 2);
            const double p = pj.value(), p1 = pj.derivative(1), p2 = pj.derivative(2);
            rep.min_phi = std::min(rep.min_phi, p);
            rep.min_regularity = std::min(rep.min_regularity, p - s * p1 + (b * b - s * s) * p2);
        }
    }
    rep.pass = rep.min_phi > 0.0 && rep.min_regularity > 0.0;
    return rep;
}

std::optional<RandersTypeParams> randers_type_detect(const PhiSpec& phi, const Tolerances& tol) {
    const Jet j0 = phi_eval(phi, 0.0, 3);
    RandersTypeParams cand;
    cand.k1 = j0.value();
    cand.k3 = j0.derivative(1);
    cand.k2 = j0.derivative(2) / j0.value();
    if (!(cand.k1 > 0.0)) return std::nullopt;
    const int n_grid = 41;
    const double smax = 0.8 * phi.b0;
    for (int i = 0; i <= n_grid; ++i) {
        const double s = smax * (2.0 * i / n_grid - 1.0);
        const double arg = 1.0 + cand.k2 * s * s;
        if (arg <= 0.0) return std::nullopt;
        const double model = cand.k1 * std::sqrt(arg) + cand.k3 * s;
        const double actual = phi.value(s);
        if (std::abs(actual - model) > tol.randers_type_fit * (1.0 + std::abs(actual))) return std::nullopt;
    }
    return cand;
}

}  // namespace abm
