#pragma once

// The derived scalar functions of (s, b^2) behind every curvature formula:
//
//   Q     = phi' / (phi - s phi')
//   Delta = 1 + sQ + (b^2 - s^2) Q'
//   Phi   = -(Q - sQ'){n Delta + 1 + sQ} - (b^2 - s^2)(1 + sQ) Q''
//   Psi   = Q' / (2 Delta)
//   Omega = Phi / (2 Delta^2)
//   Theta = (Q - sQ') / (2 Delta)
//   Xi    = (b^2 Q + s) Phi / Delta^2
//   Upsilon = d/ds [ s Phi / Delta^2 - 2 Psi b^2 ]
//
// plus the Busemann-Hausdorff volume factor f(b). Theta and f are not pinned
// down by the formula set above alone; the definitions adopted here are the
// standard ones and are validated end to end against the from-definition
// spray and S oracles (see curvature module and the verify suite).

#include <abmetric/jet.hpp>
#include <abmetric/phi.hpp>
#include <abmetric/tolerances.hpp>

#include <vector>

namespace abm {

struct ScalarPack {
    double s = 0.0;
    double b2 = 0.0;
    int n = 2;
    Jet Q, Delta, Phi, Psi, Omega, Theta, Xi, Upsilon;

    double q() const { return Q.value(); }
    double qp() const { return Q.derivative(1); }
    double qpp() const { return Q.derivative(2); }
    double delta() const { return Delta.value(); }
    double phi_big() const { return Phi.value(); }
    double psi() const { return Psi.value(); }
    double psip() const { return Psi.derivative(1); }
    double psipp() const { return Psi.derivative(2); }
    double omega() const { return Omega.value(); }
    double omegap() const { return Omega.derivative(1); }
    double omegapp() const { return Omega.derivative(2); }
    double theta() const { return Theta.value(); }
    double xi() const { return Xi.value(); }
    double upsilon() const { return Upsilon.value(); }
};

// All eight scalars as jets in s at fixed (b^2, n). Throws Degenerate when
// phi - s phi' <= 0 or Delta <= 0, OutOfDomain when s^2 > b2 or b2 > b0^2.
ScalarPack scalar_pack(const PhiSpec& phi, double s, double b2, int n,
                       int order = Jet::kDefaultOrder);

struct ProfileReport {
    std::vector<double> grid;
    std::vector<double> values;
    double variation = 0.0;  // max - min
    double max_abs = 0.0;
    bool constant = false;   // variation <= tol * (1 + max_abs)
};

std::vector<double> linspace(double a, double b, int n);

// Xi over an s-grid inside (-sqrt(b2), sqrt(b2)) with the constancy verdict.
ProfileReport xi_profile(const PhiSpec& phi, double b2, int n, const std::vector<double>& grid,
                         const Tolerances& tol = Tolerances::defaults());

// Same machinery for s Phi/Delta^2 - 2 Psi b^2, whose s-independence is the
// Upsilon = 0 branch condition.
ProfileReport upsilon_arg_profile(const PhiSpec& phi, double b2, int n, const std::vector<double>& grid,
                                  const Tolerances& tol = Tolerances::defaults());

struct BhFactor {
    double T = 1.0;          // f(b) = sigma_BH / sigma_alpha
    double dlogf_db = 0.0;   // f'(b) / f(b), central differences in b
};

// Busemann-Hausdorff volume ratio
//   f(b) = [int_0^pi sin^{n-2}t dt] / [int_0^pi sin^{n-2}t phi(b cos t)^{-n} dt]
// by Gauss-Legendre quadrature. Throws QuadratureFailure if phi(b cos t) <= 0
// at any node.
BhFactor bh_factor(const PhiSpec& phi, double b, int n,
                   const Tolerances& tol = Tolerances::defaults());

}  // namespace abm
