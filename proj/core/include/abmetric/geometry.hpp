#pragma once

// The Riemannian side: a_ij(x) with first derivatives, the 1-form b_i(x),
// Christoffel symbols, the covariant derivative b_{i|j}, and the r/s tensor
// family with all contractions. Also the a-orthonormal frame adapted to beta
// and the transformation into it.

#include <abmetric/errors.hpp>
#include <abmetric/fd.hpp>

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace abm {

using Ten3 = std::vector<Mat>;  // Ten3[k](i,j) = d a_ij / d x^k

struct MetricField {
    int n = 0;
    std::function<Mat(const Vec&)> a;
    std::function<Ten3(const Vec&)> da;  // analytic for built-ins; FD fallback otherwise

    static MetricField euclidean(int n);
    // Wraps a value-only map with a central-difference derivative
    // (step 1e-6 * (1 + |x|)).
    static MetricField from_values(int n, std::function<Mat(const Vec&)> a);
};

struct OneFormField {
    int n = 0;
    std::function<Vec(const Vec&)> b;
    std::function<Mat(const Vec&)> db;  // db(i,j) = d b_i / d x^j

    static OneFormField constant(Vec value);
    // b_i = M_ij x^j
    static OneFormField linear(Mat coeff);
    static OneFormField from_values(int n, std::function<Vec(const Vec&)> b);
};

// Gamma[k](i,j) = Gamma^k_{ij} = 1/2 a^{kl} (d_i a_jl + d_j a_il - d_l a_ij)
Ten3 christoffel(const MetricField& metric, const Vec& x);

struct BetaData {
    Vec x, y;
    Mat a;            // metric at x (used for raising throughout)
    Mat a_inv;
    Vec b_cov;        // b_i
    Vec b_up;         // b^i = a^{ij} b_j
    double b2 = 0.0;  // ||beta||_a^2
    Mat r, s;         // r_ij symmetric, s_ij antisymmetric, r + s = b_{i|j}
    Mat b_cov_deriv;  // b_{i|j}
    Vec r_vec, s_vec; // r_j = b^i r_ij, s_j = b^i s_ij
    Vec r_i0, s_i0;   // r_{ij} y^j, s_{ij} y^j (lower index)
    Vec s_i0_up;      // s^i_0 = a^{ih} s_{hj} y^j
    double r0 = 0.0, s0 = 0.0, r00 = 0.0;
    double alpha = 0.0, beta = 0.0;  // alpha(y), beta(y) at x
};

BetaData beta_data(const MetricField& metric, const OneFormField& form, const Vec& x, const Vec& y);

// Builds BetaData from tensors given directly (synthetic injections in the
// classifier suites). r/s are symmetrized/antisymmetrized defensively.
BetaData beta_data_from_tensors(const Mat& a, const Vec& b_cov, const Mat& r, const Mat& s,
                                const Vec& x, const Vec& y);

// | d/dt b(x + t y)|_0 - (r_0 + s_0)/b |, a test utility.
double db_check(const MetricField& metric, const OneFormField& form, const Vec& x, const Vec& y,
                double fd_step = 1e-5);

struct AdaptedFrame {
    Mat E;      // columns a-orthonormal, first column b^i / b
    Mat E_inv;  // = E^T a, so u = E_inv y are the frame components of y
    double b = 0.0;
};

// Gram-Schmidt with reorthogonalization; pivot order is b first then the
// canonical axes, sign fixed so each column's first nonzero entry is
// positive. Throws ZeroBeta when b = 0.
AdaptedFrame adapted_frame(const MetricField& metric, const OneFormField& form, const Vec& x);
AdaptedFrame adapted_frame_from(const Mat& a, const Vec& b_cov);

struct SpecialData {
    double r11 = 0.0;
    Vec r1A, s1A;       // frame components, A = 2..n
    Mat rAB;            // r in the (A,B) block
    double rbar10 = 0.0, sbar10 = 0.0, rbar00 = 0.0, rbar0 = 0.0, sbar0 = 0.0;
    double alpha_bar = 0.0;
    // internal consistency residuals (identities of the adapted coordinates)
    double res_r0 = 0.0;    // r_0 vs  s b r11 / sqrt(b^2-s^2) abar + b rbar10
    double res_r00 = 0.0;   // r_00 vs s^2 abar^2/(b^2-s^2) r11 + 2 s abar/sqrt(b^2-s^2) rbar10 + rbar00
    double res_s0 = 0.0;    // s_0 vs  b sbar10
    double res_s1 = 0.0;    // s_1 = 0
    double res_rcontr = 0.0;  // r_1 = b r11, r_A = b r1A, s_A = b s1A
};

// Transforms the beta tensors into the adapted frame and reconstructs the
// contractions from the barred pieces. Throws OutOfCone when s^2 >= b^2.
SpecialData transform_special(const BetaData& bd, const AdaptedFrame& frame, double s);

// y^m d_m ln sqrt(det a) via Jacobi's formula (exact given da).
double dlog_sqrt_det_a(const MetricField& metric, const Vec& x, const Vec& y);

}  // namespace abm
