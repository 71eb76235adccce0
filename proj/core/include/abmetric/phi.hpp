#pragma once

// phi-profile families for F = alpha * phi(beta/alpha). A PhiSpec names a
// family and its parameters together with the validity radius b0; evaluation
// always happens through jets so every s-derivative up to the truncation
// order comes out of one pass.

#include <abmetric/jet.hpp>
#include <abmetric/tolerances.hpp>

#include <optional>
#include <string>
#include <vector>

namespace abm {

enum class PhiFamily { riemannian, randers, power, quadratic, randers_type, taylor };

struct PhiSpec {
    PhiFamily family = PhiFamily::randers;
    double b0 = 1.0;  // validity radius: |s| < b0

    // power
    double m = 1.0;  // phi = (1+s)^(m+1)
    // randers_type: phi = k1 sqrt(1 + k2 s^2) + k3 s, k1 > 0
    double k1 = 1.0, k2 = 0.0, k3 = 0.0;
    // taylor: phi = sum coeffs[k] s^k, valid for |s| < radius
    std::vector<double> taylor_coeffs;
    double taylor_radius = 0.0;

    static PhiSpec riemannian();
    static PhiSpec randers(double b0 = 1.0);
    static PhiSpec power(double m, double b0 = 0.9);
    static PhiSpec quadratic(double b0 = 0.7);
    static PhiSpec randers_type(double k1, double k2, double k3, double b0 = 0.9);
    static PhiSpec taylor(std::vector<double> coeffs, double radius);

    std::string family_name() const;
    // Fast scalar value (no derivative bookkeeping).
    double value(double s) const;
};

// Taylor jet of phi at s. Throws OutOfDomain for |s| >= b0, DomainError if
// the family's own domain is violated (e.g. 1 + k2 s^2 <= 0).
Jet phi_eval(const PhiSpec& phi, double s, int order = Jet::kDefaultOrder);

struct ValidationReport {
    double min_phi = 0.0;         // min of phi over the grid
    double min_regularity = 0.0;  // min of phi - s phi' + (b^2 - s^2) phi''
    bool pass = false;
    int grid_n = 0;
    double bmax = 0.0;
};

// Grid check of phi > 0 and phi - s phi' + (b^2 - s^2) phi'' > 0 over
// |s| <= b <= bmax. This positivity is what makes the fundamental tensor
// positive definite.
ValidationReport phi_validate(const PhiSpec& phi, double bmax, int grid_n = 64);

struct RandersTypeParams {
    double k1 = 0.0, k2 = 0.0, k3 = 0.0;
};

// Detects phi of the shape k1 sqrt(1 + k2 s^2) + k3 s. The candidate comes
// from the 2-jet at 0 and is accepted only if it reproduces phi on a grid.
std::optional<RandersTypeParams> randers_type_detect(const PhiSpec& phi,
                                                     const Tolerances& tol = Tolerances::defaults());

}  // namespace abm
