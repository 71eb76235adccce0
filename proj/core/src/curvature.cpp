#include <abmetric/curvature.hpp>

#include <cmath>

namespace abm {

double FinslerMetric::F(const Vec& x, const Vec& y) const {
    const Mat am = alpha.a(x);
    const double al = std::sqrt(y.dot(am * y));
    if (!(al > 0.0)) throw OutOfDomain("F: y = 0");
    const double be = beta.b(x).dot(y);
    return al * phi.value(be / al);
}

Vec alpha_spray(const MetricField& metric, const Vec& x, const Vec& y) {
    const Ten3 gamma = christoffel(metric, x);
    Vec g(metric.n);
    for (int i = 0; i < metric.n; ++i) g[i] = 0.5 * y.dot(gamma[static_cast<size_t>(i)] * y);
    return g;
}

Vec finsler_spray_closed(const ScalarPack& pack, const BetaData& bd, const Vec& gbar) {
    const double al = bd.alpha;
    const double corr = bd.r00 - 2.0 * pack.q() * al * bd.s0;
    return gbar + al * pack.q() * bd.s_i0_up + (pack.theta() * corr / al) * bd.y +
           (pack.psi() * corr) * bd.b_up;
}

Mat fundamental_tensor(const FinslerMetric& fm, const Vec& x, const Vec& y, const Tolerances& tol) {
    const double h = tol.step_y_rel * y.norm();
    ScalarField f2 = [&](const Vec& yy) { return fm.F2(x, yy); };
    Mat g = 0.5 * fd_hessian(f2, y, h);
    g = 0.5 * (g + g.transpose());
    return g;
}

Mat angular_metric(const Mat& g, double F, const Vec& y) {
    // Normalize with the F implied by g itself (y^T g y = F^2 for the exact
    // fundamental tensor); this makes h y = 0 an algebraic identity even
    // when g carries FD noise. The passed F only guards gross mismatch.
    const double f2 = y.dot(g * y);
    if (!(f2 > 0.0)) throw IllConditioned("angular_metric: y^T g y <= 0");
    if (std::abs(std::sqrt(f2) - F) > 0.05 * F)
        throw IllConditioned("angular_metric: g inconsistent with F");
    const Vec l = g * y / std::sqrt(f2);
    return g - l * l.transpose();
}

Vec finsler_spray_oracle(const FinslerMetric& fm, const Vec& x, const Vec& y, const Tolerances& tol) {
    const int n = fm.n();
    const double hy = tol.step_y_rel * y.norm();
    const double hx = tol.step_y_rel * (1.0 + x.norm());
    auto f2 = [&](const Vec& xx, const Vec& yy) { return fm.F2(xx, yy); };
    Vec rhs(n);
    for (int l = 0; l < n; ++l) {
        double mixed = 0.0;
        for (int k = 0; k < n; ++k) mixed += fd_mixed_xy(f2, x, y, k, l, hx, hy) * y[k];
        ScalarField f2x = [&](const Vec& xx) { return fm.F2(xx, y); };
        rhs[l] = mixed - fd_partial(f2x, x, l, hx);
    }
    const Mat g = fundamental_tensor(fm, x, y, tol);
    const Eigen::JacobiSVD<Mat> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
    if (!(cond < tol.cond_limit)) throw IllConditioned("spray oracle: cond(g) = " + std::to_string(cond));
    return 0.25 * svd.solve(rhs);
}

double sigma_bh(const PhiSpec& phi, const MetricField& metric, const OneFormField& form, const Vec& x,
                const Tolerances& tol) {
    const Mat a = metric.a(x);
    Eigen::LDLT<Mat> ldlt(a);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) throw SingularMetric("sigma_bh");
    const Vec b_cov = form.b(x);
    const double b2 = b_cov.dot(ldlt.solve(b_cov));
    const double T = bh_factor(phi, std::sqrt(std::max(0.0, b2)), metric.n, tol).T;
    return std::sqrt(a.determinant()) * T;
}

double distortion(const Mat& g, double sigma) {
    const double det = g.determinant();
    if (!(det > 0.0)) throw IllConditioned("distortion: det g <= 0");
    return std::log(std::sqrt(det) / sigma);
}

double s_curvature_closed(const ScalarPack& pack, const BetaData& bd, double dlogf_db) {
    const double b = std::sqrt(bd.b2);
    const double rho = (bd.r0 + bd.s0 == 0.0) ? 0.0 : dlogf_db / b;
    const double corr = bd.r00 - 2.0 * bd.alpha * pack.q() * bd.s0;
    return (2.0 * pack.psi() - rho) * (bd.r0 + bd.s0) - pack.omega() * corr / bd.alpha;
}

double spray_divergence(const std::function<Vec(const Vec&)>& spray, const Vec& y, double h) {
    const int n = static_cast<int>(y.size());
    auto div_at = [&](double hh) {
        double acc = 0.0;
        for (int m = 0; m < n; ++m) {
            Vec yp = y, ym = y;
            yp[m] += hh;
            ym[m] -= hh;
            acc += (spray(yp)[m] - spray(ym)[m]) / (2.0 * hh);
        }
        return acc;
    };
    const double coarse = div_at(h), fine = div_at(h / 2);
    return fine + (fine - coarse) / 3.0;
}

double s_curvature_oracle(const FinslerMetric& fm, const Vec& x, const Vec& y, const Tolerances& tol) {
    // Divergence of the from-definition spray. The outer step is larger than
    // the inner mixed-FD steps so the spray noise is not amplified.
    const double hdiv = tol.step_div_rel * y.norm();
    auto spray = [&](const Vec& yy) { return finsler_spray_oracle(fm, x, yy, tol); };
    const double div = spray_divergence(spray, y, hdiv);

    ScalarField log_sigma = [&](const Vec& xx) { return std::log(sigma_bh(fm.phi, fm.alpha, fm.beta, xx, tol)); };
    const double hx = tol.step_x_rel * (1.0 + x.norm());
    double dlnsigma = 0.0;
    for (int m = 0; m < fm.n(); ++m) dlnsigma += y[m] * fd_partial(log_sigma, x, m, hx);
    return div - dlnsigma;
}

EResult e_curvature_closed(const ScalarPack& pack, const BetaData& bd) {
    if (pack.Psi.order() < 2 || pack.Omega.order() < 2 || pack.Q.order() < 2)
        throw DomainError("e_curvature_closed: pack jets too shallow");
    const double al = bd.alpha;
    const double s = pack.s;
    const double rs = bd.r0 + bd.s0;
    const double s0 = bd.s0, r00 = bd.r00;

    const double Q = pack.q(), Qp = pack.qp(), Qpp = pack.qpp();
    const double Pp = pack.psip(), Ppp = pack.psipp();
    const double Om = pack.omega(), Omp = pack.omegap(), Ompp = pack.omegapp();
    // (Omega Q)' and (Omega Q)''
    const double p1 = Omp * Q + Om * Qp;
    const double p2 = Ompp * Q + 2.0 * Omp * Qp + Om * Qpp;

    const double a2 = al * al, a3 = a2 * al, a4 = a3 * al, a5 = a4 * al;
    ECoefficients C;
    C.c[0] = (Ppp * rs + p2 * s0) / a2 - Ompp * r00 / (2.0 * a3);
    C.c[1] = -((Ppp * s + Pp) * rs + (p2 * s + p1) * s0) / a3 + (0.5 * Ompp * s + Omp) * r00 / a4;
    C.c[2] = ((Ppp * s * s + 3.0 * s * Pp) * rs + (p2 * s * s + 3.0 * p1 * s) * s0) / a4 -
             (0.5 * Ompp * s * s + 2.5 * Omp * s + 1.5 * Om) * r00 / a5;
    C.c[3] = -(Pp * s * rs + p1 * s * s0) / a2 + (Omp * s + Om) * r00 / (2.0 * a3);
    C.c[4] = -Omp / a2;
    C.c[5] = (s * Omp + Om) / a3;
    C.c[6] = -Om / al;
    C.c[7] = (Pp + p1) / al;
    C.c[8] = -s * C.c[7] / al;
    C.c[9] = Pp / al;
    C.c[10] = -s * C.c[9] / al;

    const Vec y_low = bd.a * bd.y;
    const Vec& b = bd.b_cov;
    const Vec& ri0 = bd.r_i0;
    auto sym = [](const Vec& u, const Vec& v) { return Mat(u * v.transpose() + v * u.transpose()); };

    EResult out;
    out.coeff = C;
    out.E = C.c[0] * (b * b.transpose()) + C.c[1] * sym(b, y_low) + C.c[2] * (y_low * y_low.transpose()) +
            C.c[3] * bd.a + C.c[4] * sym(ri0, b) + C.c[5] * sym(ri0, y_low) + C.c[6] * bd.r +
            C.c[7] * sym(bd.s_vec, b) + C.c[8] * sym(bd.s_vec, y_low) + C.c[9] * sym(bd.r_vec, b) +
            C.c[10] * sym(bd.r_vec, y_low);
    return out;
}

Mat e_curvature_oracle(const std::function<double(const Vec&)>& s_eval, const Vec& y,
                       const Tolerances& tol) {
    const double h = tol.step_y_rel * y.norm();
    Mat e = 0.5 * fd_hessian(s_eval, y, h);
    return 0.5 * (e + e.transpose());
}

CurvatureReport curvature_at(const FinslerMetric& fm, const Vec& x, const Vec& y, bool with_oracles,
                             const Tolerances& tol) {
    CurvatureReport rep;
    rep.x = x;
    rep.y = y;
    const BetaData bd = beta_data(fm.alpha, fm.beta, x, y);
    rep.alpha = bd.alpha;
    rep.beta = bd.beta;
    rep.b2 = bd.b2;
    rep.s = bd.beta / bd.alpha;
    rep.F = bd.alpha * fm.phi.value(rep.s);

    const ScalarPack pack = scalar_pack(fm.phi, rep.s, bd.b2, fm.n(), tol.order);
    const BhFactor bh = bh_factor(fm.phi, std::sqrt(bd.b2), fm.n(), tol);
    rep.bh_T = bh.T;
    rep.bh_dlogf = bh.dlogf_db;

    rep.gbar = alpha_spray(fm.alpha, x, y);
    rep.G_closed = finsler_spray_closed(pack, bd, rep.gbar);
    rep.S_closed = s_curvature_closed(pack, bd, bh.dlogf_db);
    const EResult er = e_curvature_closed(pack, bd);
    rep.E_closed = er.E;
    rep.coeff = er.coeff;

    // divergence of the closed-form spray against the known identity
    auto closed_spray = [&](const Vec& yy) {
        const BetaData bdy = beta_data(fm.alpha, fm.beta, x, yy);
        const ScalarPack py = scalar_pack(fm.phi, bdy.beta / bdy.alpha, bdy.b2, fm.n(), tol.order);
        return finsler_spray_closed(py, bdy, alpha_spray(fm.alpha, x, yy));
    };
    rep.divG_closed = spray_divergence(closed_spray, y, tol.step_y_rel * y.norm());
    const double eq2_rhs = dlog_sqrt_det_a(fm.alpha, x, y) + 2.0 * pack.psi() * (bd.r0 + bd.s0) -
                           pack.omega() * (bd.r00 - 2.0 * bd.alpha * pack.q() * bd.s0) / bd.alpha;
    rep.divergence_identity_residual = std::abs(rep.divG_closed - eq2_rhs);

    if (with_oracles) {
        rep.g = fundamental_tensor(fm, x, y, tol);
        rep.h = angular_metric(rep.g, rep.F, y);
        rep.sigma = sigma_bh(fm.phi, fm.alpha, fm.beta, x, tol);
        rep.tau = distortion(rep.g, rep.sigma);
        rep.G_oracle = finsler_spray_oracle(fm, x, y, tol);
        rep.S_oracle = s_curvature_oracle(fm, x, y, tol);
        auto s_closed_eval = [&](const Vec& yy) {
            const BetaData bdy = beta_data(fm.alpha, fm.beta, x, yy);
            const ScalarPack py = scalar_pack(fm.phi, bdy.beta / bdy.alpha, bdy.b2, fm.n(), tol.order);
            return s_curvature_closed(py, bdy, bh.dlogf_db);
        };
        rep.E_oracle = e_curvature_oracle(s_closed_eval, y, tol);
    }
    return rep;
}

}  // namespace abm
