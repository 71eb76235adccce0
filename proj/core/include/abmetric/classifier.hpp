#pragma once

// Executable decision procedures: the three isotropy fits, the beta-tensor
// case split, the ODE residual suites, the Upsilon/Xi branch logic, and the
// main equivalence verdict.

#include <abmetric/curvature.hpp>

#include <cstdint>
#include <optional>

namespace abm {

// Deterministic low-discrepancy alpha-unit directions at x (golden-angle
// circle for n=2, spherical Fibonacci for n=3, seeded Gaussian otherwise).
std::vector<Vec> sample_directions(const Mat& a, int count, std::uint64_t seed);

struct CurvatureSample {
    Vec y;
    double F = 0.0;
    double S = 0.0;
    Mat E;  // closed form
    Mat h;  // angular metric (FD path)
};

// Closed-form S/E/h samples over a deterministic direction set at x.
// Appends the 2n signed coordinate axes so linear fits always span.
std::vector<CurvatureSample> make_samples(const FinslerMetric& fm, const Vec& x, int count,
                                          std::uint64_t seed, const Tolerances& tol);

enum class FitKind { isotropic_S, weak_isotropic_S, isotropic_E };

struct IsotropyFit {
    FitKind kind = FitKind::isotropic_S;
    double c = 0.0;
    Vec eta;            // zero by construction except for the weak fit
    double residual = 0.0;  // relative L2 over the sample set
    double tolerance = 0.0;
    bool verdict = false;
};

// S = (n+1) c F least squares over the sample set.
IsotropyFit test_isotropic_S(const std::vector<CurvatureSample>& samples, int n,
                             const Tolerances& tol = Tolerances::defaults());

// S = (n+1) c F + eta_i y^i joint least squares.
IsotropyFit test_weak_isotropic_S(const std::vector<CurvatureSample>& samples, int n,
                                  const Tolerances& tol = Tolerances::defaults());

// E = (n+1)/2 c F^{-1} h least squares over all entries.
IsotropyFit test_isotropic_E(const std::vector<CurvatureSample>& samples, int n,
                             const Tolerances& tol = Tolerances::defaults());

enum class BetaCase { case_i, case_ii, neither };

struct BetaCaseResult {
    BetaCase which = BetaCase::neither;
    double eps = 0.0;       // fitted scale for case_i
    double residual = 0.0;  // fit residual (case_i) or max tensor norm (case_ii test)
    double s_norm = 0.0;    // ||s_j||
};

// Eq-(6)-first test (r = 0, s_j = 0), then the rank-one-deficient fit
// r_ij = eps(b^2 a_ij - b_i b_j) with s_j = 0.
BetaCaseResult beta_case_check(const BetaData& bd, const Tolerances& tol = Tolerances::defaults());

// max_s | Phi + 2(n+1) k phi Delta^2 / (b^2 - s^2) |
double isotropy_ode_residual(const PhiSpec& phi, double k, double b2, int n, const std::vector<double>& grid);

struct ScanResult {
    double best_param = 0.0;
    double best_residual = 0.0;
    bool satisfied = false;  // best_residual <= tol
};

// Coarse grid + local refinement over k.
ScanResult isotropy_ode_scan(const PhiSpec& phi, double b2, int n, const std::vector<double>& grid,
                     double kmin, double kmax, const Tolerances& tol = Tolerances::defaults());

struct DecomposeParams {
    double k = 0.0, eps = 0.0, c = 0.0, nu = 0.0, lambda = 0.0, delta = 0.0;
};

enum class DecomposeExpr { eq, EQ };

// eq(b^2)  = Delta^2 { -2s(k - eps b^2)Psi + (k - eps s^2) Phi/(2 Delta^2)
//                      + (n+1) c phi - s nu }
// EQ(b^2)  = Delta^2 { -2Psi - Q Phi/Delta^2
//                      - lambda (s Phi/Delta^2 - 2 Psi b^2) - delta }
// Both are quadratic polynomials in b^2 at fixed s.
double decompose_expr_value(DecomposeExpr which, const PhiSpec& phi, double s, double b2, int n,
                            const DecomposeParams& p);

struct B2Coefficients {
    double c0 = 0.0, c2 = 0.0, c4 = 0.0;  // of (b^2)^0, (b^2)^1, (b^2)^2
    double check_rel = 0.0;               // 4th-node prediction error, relative
};

// Solves the 3-node Vandermonde system in b^2 and validates the degree by
// predicting a 4th node; throws NotPolynomial past tol.decompose_rel.
B2Coefficients b2_decompose(DecomposeExpr which, const PhiSpec& phi, double s, int n,
                            const DecomposeParams& p,
                            const Tolerances& tol = Tolerances::defaults());

// Closed forms for the leading coefficient and the reduced identities (the
// latter hold under nu = eps, c = 0 for eq and delta = lambda for EQ).
double trace_eq_leading_coeff(const PhiSpec& phi, double s, int n, const DecomposeParams& p);
double skew_eq_leading_coeff(const PhiSpec& phi, double s, const DecomposeParams& p);
double trace_eq_reduced_form(const PhiSpec& phi, double s, int n, double k, double eps);
double skew_eq_reduced_form(const PhiSpec& phi, double s, int n, double lambda);

struct ReducedOdeResult {
    double residual = 0.0;       // max |(n-1)(k - eps s^2)(Q - sQ') + 2kQ + 2 eps s|
    double residual_shifted = 0.0;       // same equation through the Qtilde = Q - s Q'(0) route
    double kqp0_plus_eps = 0.0;  // k Q'(0) + eps, forced to zero by the reduction
};

ReducedOdeResult reduced_ode_residual(const PhiSpec& phi, double k, double eps, int n,
                           const std::vector<double>& grid);

struct UpsilonZeroBranchResiduals {
    double res_c_equation = 0.0;  // (k-eps s^2) Phi/(2 Delta^2) = {nu + (k-eps b^2) mu} s - (n+1) c phi
    double res_xi_constant = 0.0;  // best-constant fit residual of Xi over the grid
};

UpsilonZeroBranchResiduals upsilon_zero_branch_residuals(const PhiSpec& phi, double k, double eps, double mu, double nu,
                                   double c, double b2, int n, const std::vector<double>& grid);

struct UpsilonNonzeroBranchResiduals {
    double res_c_equation = 0.0;
    double res_skew_equation = 0.0;
    double nu = 0.0;     // -f'(b)/(b f(b)) (k - eps b^2)
    double delta = 0.0;  // -f'(b)/(b f(b)) (1 - lambda b^2) - eta_ratio
};

UpsilonNonzeroBranchResiduals upsilon_nonzero_branch_residuals(const PhiSpec& phi, double k, double eps, double lambda, double c,
                                   double eta_ratio, double b2, int n,
                                   const std::vector<double>& grid,
                                   const Tolerances& tol = Tolerances::defaults());

enum class UpsilonBranch { upsilon_zero, upsilon_nonzero };

struct UpsilonResult {
    UpsilonBranch branch = UpsilonBranch::upsilon_nonzero;
    double mu = 0.0;        // constant value / b^2 when the branch is zero
    double variation = 0.0;
    // When Upsilon = 0 and phi is not Randers-type, any fixture with db != 0
    // is inconsistent (b must be constant); the caller raises this advisory.
    bool constant_b_forced = false;
};

UpsilonResult upsilon_branch(const PhiSpec& phi, double b2, int n, const std::vector<double>& grid,
                             const Tolerances& tol = Tolerances::defaults());

enum class EquivalenceVerdict { equivalent, inconclusive_constant_xi, violation };

struct EquivalenceResult {
    EquivalenceVerdict verdict = EquivalenceVerdict::equivalent;
    ProfileReport xi;
    IsotropyFit fit_s, fit_e;
    double c_gap = 0.0;
};

EquivalenceResult equivalence_check(const FinslerMetric& fm, const Vec& x, int direction_count,
                          std::uint64_t seed, const Tolerances& tol = Tolerances::defaults());

struct StructureCheckReport {
    bool upsilon_nonzero = false;
    bool non_randers_type = false;
    bool xi_nonconstant = false;
    bool weak_isotropic = false;
    bool preconditions_met = false;
    BetaCaseResult beta_case;     // the case_i fit of the beta tensors
    double structure_ode_residual = 0.0;  // max |eps (b^2 - s^2) Phi/(2 Delta^2) + (n+1) c phi|
};

StructureCheckReport isotropy_structure_check(const FinslerMetric& fm, const Vec& x, int direction_count,
                          std::uint64_t seed, const Tolerances& tol = Tolerances::defaults());

struct SignProbe {
    double res_upsilon_zero_minus = 0.0, res_upsilon_zero_plus = 0.0;
    double res_upsilon_nonzero_minus = 0.0, res_upsilon_nonzero_plus = 0.0;
    int upsilon_zero_sign = 0;  // sign of r11 = sign * (k - eps b^2) that satisfies the reduction
    int upsilon_nonzero_sign = 0;
};

// Pure-algebra probe of the r11 sign convention used by the two reduction
// chains; exactly one sign zeroes each.
SignProbe sign_convention_probe(const PhiSpec& phi, double b2, int n, const std::vector<double>& grid,
                                double k, double eps, const Tolerances& tol = Tolerances::defaults());

struct ClassificationReport {
    bool xi_constant = false;
    double xi_variation = 0.0;
    bool upsilon_zero = false;
    UpsilonResult upsilon;
    std::optional<RandersTypeParams> randers_type;
    BetaCaseResult beta_case;
    IsotropyFit fit_s, fit_weak, fit_e;
    EquivalenceVerdict equivalence_verdict = EquivalenceVerdict::equivalent;
    double equivalence_c_gap = 0.0;
    SignProbe sign_probe;
    bool constant_b_advisory = false;  // Upsilon = 0, non-Randers-type, but db != 0 on the fixture
    bool riemannian_flag = false;   // Xi == 0 on the grid => Phi == 0 (Riemannian)
};

ClassificationReport classify(const FinslerMetric& fm, const Vec& x, int direction_count,
                              std::uint64_t seed, const Tolerances& tol = Tolerances::defaults());

}  // namespace abm
