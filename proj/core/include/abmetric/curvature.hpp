#pragma once

// Sprays, fundamental/angular tensors, Busemann-Hausdorff density, and the
// S- and E-curvatures. Everything exists twice: the closed form driven by
// the scalar pack, and a from-definition finite-difference oracle that never
// touches the closed-form code path.

#include <abmetric/geometry.hpp>
#include <abmetric/phi.hpp>
#include <abmetric/scalars.hpp>
#include <abmetric/tolerances.hpp>

#include <array>

namespace abm {

// The F-evaluator: F(x, y) = alpha(x, y) * phi(beta/alpha).
struct FinslerMetric {
    MetricField alpha;
    OneFormField beta;
    PhiSpec phi;

    int n() const { return alpha.n; }
    double F(const Vec& x, const Vec& y) const;
    double F2(const Vec& x, const Vec& y) const { const double f = F(x, y); return f * f; }
};

// Gbar^i = 1/2 Gamma^i_{jk} y^j y^k
Vec alpha_spray(const MetricField& metric, const Vec& x, const Vec& y);

// G^i = Gbar^i + alpha Q s^i_0 + Theta{r_00 - 2 Q alpha s_0} y^i/alpha
//     + Psi{r_00 - 2 Q alpha s_0} b^i
Vec finsler_spray_closed(const ScalarPack& pack, const BetaData& bd, const Vec& gbar);

// From-definition spray G^i = 1/4 g^{il}{ (F^2)_{x^k y^l} y^k - (F^2)_{x^l} }.
Vec finsler_spray_oracle(const FinslerMetric& fm, const Vec& x, const Vec& y,
                         const Tolerances& tol = Tolerances::defaults());

// g_ij = 1/2 d^2(F^2)/dy^i dy^j by Richardson-extrapolated central differences.
Mat fundamental_tensor(const FinslerMetric& fm, const Vec& x, const Vec& y,
                       const Tolerances& tol = Tolerances::defaults());

// h_ij = g_ij - l_i l_j with l_i = g_ij y^j / F.
Mat angular_metric(const Mat& g, double F, const Vec& y);

// sigma_BH = sqrt(det a) * f(b); throws QuadratureFailure via bh_factor.
double sigma_bh(const PhiSpec& phi, const MetricField& metric, const OneFormField& form, const Vec& x,
                const Tolerances& tol = Tolerances::defaults());

// tau = ln( sqrt(det g) / sigma )
double distortion(const Mat& g, double sigma);

// Eq-style closed form S = {2 Psi - f'(b)/(b f(b))}(r_0+s_0) - Omega (r_00 - 2 alpha Q s_0)/alpha.
double s_curvature_closed(const ScalarPack& pack, const BetaData& bd, double dlogf_db);

// S = dG^m/dy^m - y^m d_m ln sigma_BH, everything from definitions.
double s_curvature_oracle(const FinslerMetric& fm, const Vec& x, const Vec& y,
                          const Tolerances& tol = Tolerances::defaults());

// dG^m/dy^m of a spray map by central differences.
double spray_divergence(const std::function<Vec(const Vec&)>& spray, const Vec& y, double h);

struct ECoefficients {
    std::array<double, 11> c{};  // C1..C11
};

struct EResult {
    Mat E;
    ECoefficients coeff;
};

// Mean Berwald curvature, assembled from the eleven tensor blocks. y is
// lowered with a_ij (validated against the oracle).
EResult e_curvature_closed(const ScalarPack& pack, const BetaData& bd);

// E_ij = 1/2 d^2 S/dy^i dy^j of any S-evaluator; symmetrized after FD.
Mat e_curvature_oracle(const std::function<double(const Vec&)>& s_eval, const Vec& y,
                       const Tolerances& tol = Tolerances::defaults());

// Everything the reports need at one (x, y), closed forms and oracles side
// by side.
struct CurvatureReport {
    Vec x, y;
    double alpha = 0.0, beta = 0.0, s = 0.0, b2 = 0.0, F = 0.0;
    Vec gbar, G_closed, G_oracle;
    double divG_closed = 0.0;
    double S_closed = 0.0, S_oracle = 0.0;
    Mat E_closed, E_oracle;
    Mat g, h;
    double tau = 0.0;
    double sigma = 0.0;   // sigma_BH at x
    double bh_T = 0.0, bh_dlogf = 0.0;
    ECoefficients coeff;
    double divergence_identity_residual = 0.0;  // divG_closed vs the divergence identity
};

// Full evaluation at (x, y). with_oracles=false skips every finite-difference
// oracle (used by the fit sample loops where only closed forms are needed).
CurvatureReport curvature_at(const FinslerMetric& fm, const Vec& x, const Vec& y, bool with_oracles,
                             const Tolerances& tol = Tolerances::defaults());

}  // namespace abm
