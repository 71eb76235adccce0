#include <abmetric/geometry.hpp>

#include <cmath>

namespace abm {

MetricField MetricField::euclidean(int n) {
    MetricField m;
    m.n = n;
    m.a = [n](const Vec&) { return Mat::Identity(n, n); };
    m.da = [n](const Vec&) { return Ten3(static_cast<size_t>(n), Mat::Zero(n, n)); };
    return m;
}

MetricField MetricField::from_values(int n, std::function<Mat(const Vec&)> a_fn) {
    MetricField m;
    m.n = n;
    m.a = a_fn;
    m.da = [n, a_fn](const Vec& x) {
        Ten3 d(static_cast<size_t>(n), Mat::Zero(n, n));
        const double h = 1e-6 * (1.0 + x.norm());
        for (int k = 0; k < n; ++k) {
            Vec xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            d[static_cast<size_t>(k)] = (a_fn(xp) - a_fn(xm)) / (2.0 * h);
        }
        return d;
    };
    return m;
}

OneFormField OneFormField::constant(Vec value) {
    OneFormField f;
    f.n = static_cast<int>(value.size());
    const int n = f.n;
    f.b = [value](const Vec&) { return value; };
    f.db = [n](const Vec&) { return Mat::Zero(n, n); };
    return f;
}

OneFormField OneFormField::linear(Mat coeff) {
    OneFormField f;
    f.n = static_cast<int>(coeff.rows());
    f.b = [coeff](const Vec& x) { return Vec(coeff * x); };
    f.db = [coeff](const Vec&) { return coeff; };
    return f;
}

OneFormField OneFormField::from_values(int n, std::function<Vec(const Vec&)> b_fn) {
    OneFormField f;
    f.n = n;
    f.b = b_fn;
    f.db = [n, b_fn](const Vec& x) {
        Mat d(n, n);
        const double h = 1e-6 * (1.0 + x.norm());
        for (int j = 0; j < n; ++j) {
            Vec xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            d.col(j) = (b_fn(xp) - b_fn(xm)) / (2.0 * h);
        }
        return d;
    };
    return f;
}

namespace {

Mat inverse_spd(const Mat& a, const char* what) {
    Eigen::LDLT<Mat> ldlt(a);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw SingularMetric(std::string(what) + ": metric not positive definite");
    return ldlt.solve(Mat::Identity(a.rows(), a.cols()));
}

}  // namespace

Ten3 christoffel(const MetricField& metric, const Vec& x) {
    const int n = metric.n;
    const Mat a = metric.a(x);
    const Ten3 da = metric.da(x);
    const Mat ainv = inverse_spd(a, "christoffel");
    Ten3 gamma(static_cast<size_t>(n), Mat::Zero(n, n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double acc = 0.0;
                for (int l = 0; l < n; ++l)
                    acc += ainv(k, l) * (da[static_cast<size_t>(i)](j, l) + da[static_cast<size_t>(j)](i, l) -
                                         da[static_cast<size_t>(l)](i, j));
                gamma[static_cast<size_t>(k)](i, j) = gamma[static_cast<size_t>(k)](j, i) = 0.5 * acc;
            }
    return gamma;
}

BetaData beta_data_from_tensors(const Mat& a, const Vec& b_cov, const Mat& r_in, const Mat& s_in,
                                const Vec& x, const Vec& y) {
    if (y.norm() == 0.0) throw OutOfDomain("beta_data: y must be nonzero");
    BetaData d;
    d.x = x;
    d.y = y;
    d.a = a;
    d.a_inv = inverse_spd(a, "beta_data");
    d.b_cov = b_cov;
    d.b_up = d.a_inv * b_cov;
    d.b2 = b_cov.dot(d.b_up);
    d.r = 0.5 * (r_in + r_in.transpose());
    d.s = 0.5 * (s_in - s_in.transpose());
    d.b_cov_deriv = d.r + d.s;
    d.r_vec = d.r * d.b_up;                    // r symmetric
    d.s_vec = d.s.transpose() * d.b_up;        // s_j = b^i s_ij
    d.r_i0 = d.r * y;
    d.s_i0 = d.s * y;
    d.s_i0_up = d.a_inv * d.s_i0;
    d.r0 = d.r_vec.dot(y);
    d.s0 = d.s_vec.dot(y);
    d.r00 = y.dot(d.r * y);
    d.alpha = std::sqrt(y.dot(a * y));
    d.beta = b_cov.dot(y);
    return d;
}

BetaData beta_data(const MetricField& metric, const OneFormField& form, const Vec& x, const Vec& y) {
    const Mat a = metric.a(x);
    const Vec b = form.b(x);
    const Mat db = form.db(x);
    const Ten3 gamma = christoffel(metric, x);
    const int n = metric.n;
    // b_{i|j} = d_j b_i - b_k Gamma^k_{ij}
    Mat cov(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = db(i, j);
            for (int k = 0; k < n; ++k) acc -= b[k] * gamma[static_cast<size_t>(k)](i, j);
            cov(i, j) = acc;
        }
    const Mat r = 0.5 * (cov + cov.transpose());
    const Mat s = 0.5 * (cov - cov.transpose());
    BetaData d = beta_data_from_tensors(a, b, r, s, x, y);
    d.b_cov_deriv = cov;
    return d;
}

double db_check(const MetricField& metric, const OneFormField& form, const Vec& x, const Vec& y,
                double fd_step) {
    auto bnorm = [&](const Vec& xx) {
        const Mat ainv = inverse_spd(metric.a(xx), "db_check");
        const Vec bb = form.b(xx);
        return std::sqrt(bb.dot(ainv * bb));
    };
    const double b = bnorm(x);
    if (!(b > 0.0)) throw ZeroBeta("db_check: b = 0");
    const double h = fd_step;
    const double coarse = (bnorm(x + h * y) - bnorm(x - h * y)) / (2 * h);
    const double fine = (bnorm(x + 0.5 * h * y) - bnorm(x - 0.5 * h * y)) / h;
    const double ddir = fine + (fine - coarse) / 3.0;
    const BetaData d = beta_data(metric, form, x, y);
    return std::abs(ddir - (d.r0 + d.s0) / b);
}

AdaptedFrame adapted_frame_from(const Mat& a, const Vec& b_cov) {
    const int n = static_cast<int>(a.rows());
    const Mat ainv = inverse_spd(a, "adapted_frame");
    const Vec b_up = ainv * b_cov;
    const double b2 = b_cov.dot(b_up);
    if (!(b2 > 0.0)) throw ZeroBeta("adapted_frame: b = 0");
    const double b = std::sqrt(b2);

    auto inner = [&](const Vec& u, const Vec& v) { return u.dot(a * v); };
    AdaptedFrame fr;
    fr.b = b;
    fr.E = Mat::Zero(n, n);
    std::vector<Vec> cols;
    cols.push_back(b_up / b);
    // extend with canonical axes, two-pass Gram-Schmidt for stability
    for (int axis = 0; axis < n && static_cast<int>(cols.size()) < n; ++axis) {
        Vec v = Vec::Unit(n, axis);
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& e : cols) v -= inner(e, v) * e;
        const double nrm = std::sqrt(inner(v, v));
        if (nrm < 1e-10) continue;  // axis (nearly) parallel to the span so far
        v /= nrm;
        for (int i = 0; i < n; ++i) {
            if (std::abs(v[i]) > 1e-12) {
                if (v[i] < 0) v = -v;
                break;
            }
        }
        cols.push_back(v);
    }
    if (static_cast<int>(cols.size()) != n) throw SingularMetric("adapted_frame: frame incomplete");
    for (int j = 0; j < n; ++j) fr.E.col(j) = cols[static_cast<size_t>(j)];
    fr.E_inv = fr.E.transpose() * a;
    return fr;
}

AdaptedFrame adapted_frame(const MetricField& metric, const OneFormField& form, const Vec& x) {
    return adapted_frame_from(metric.a(x), form.b(x));
}

SpecialData transform_special(const BetaData& bd, const AdaptedFrame& frame, double s) {
    const double b = frame.b;
    if (!(s * s < b * b)) throw OutOfCone("transform_special: s^2 >= b^2");
    const int n = static_cast<int>(bd.a.rows());

    const Mat rt = frame.E.transpose() * bd.r * frame.E;  // frame components
    const Mat st = frame.E.transpose() * bd.s * frame.E;
    const Vec u = frame.E_inv * bd.y;

    SpecialData out;
    out.r11 = rt(0, 0);
    out.r1A = rt.row(0).segment(1, n - 1);
    out.s1A = st.row(0).segment(1, n - 1);
    out.rAB = rt.block(1, 1, n - 1, n - 1);

    const Vec uA = u.segment(1, n - 1);
    out.alpha_bar = uA.norm();
    out.rbar10 = out.r1A.dot(uA);
    out.sbar10 = out.s1A.dot(uA);
    out.rbar00 = uA.dot(out.rAB * uA);
    out.rbar0 = b * out.rbar10;  // r_A = b r_1A contracted with u^A
    out.sbar0 = b * out.sbar10;

    const double root = std::sqrt(b * b - s * s);
    const double abar = out.alpha_bar;
    out.res_r0 = std::abs(bd.r0 - (s * b * out.r11 / root * abar + b * out.rbar10));
    out.res_r00 = std::abs(bd.r00 - (s * s * abar * abar / (b * b - s * s) * out.r11 +
                                     2.0 * s * abar / root * out.rbar10 + out.rbar00));
    out.res_s0 = std::abs(bd.s0 - b * out.sbar10);

    // contraction identities: s_1 = 0, r_1 = b r_11, r_A = b r_1A, s_A = b s_1A
    const Vec r_frame = frame.E.transpose() * bd.r_vec;
    const Vec s_frame = frame.E.transpose() * bd.s_vec;
    out.res_s1 = std::abs(s_frame[0]);
    double rc = std::abs(r_frame[0] - b * out.r11);
    for (int A = 1; A < n; ++A) {
        rc = std::max(rc, std::abs(r_frame[A] - b * out.r1A[A - 1]));
        rc = std::max(rc, std::abs(s_frame[A] - b * out.s1A[A - 1]));
    }
    out.res_rcontr = rc;
    return out;
}

double dlog_sqrt_det_a(const MetricField& metric, const Vec& x, const Vec& y) {
    const Mat ainv = inverse_spd(metric.a(x), "dlog_sqrt_det_a");
    const Ten3 da = metric.da(x);
    double acc = 0.0;
    for (int m = 0; m < metric.n; ++m) acc += y[m] * 0.5 * (ainv * da[static_cast<size_t>(m)]).trace();
    return acc;
}

}  // namespace abm
