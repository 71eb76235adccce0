#include <abmetric/report.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace abm {

Command parse_command(const std::string& name) {
    if (name == "scalars") return Command::scalars;
    if (name == "analyze") return Command::analyze;
    if (name == "verify") return Command::verify;
    if (name == "classify") return Command::classify;
    if (name == "equivalence") return Command::equivalence;
    throw ValidationError("command", "unknown command '" + name + "'");
}

std::string command_name(Command cmd) {
    switch (cmd) {
        case Command::scalars: return "scalars";
        case Command::analyze: return "analyze";
        case Command::verify: return "verify";
        case Command::classify: return "classify";
        case Command::equivalence: return "equivalence";
    }
    return "?";
}

namespace {

std::string format_double(double v) {
    if (!std::isfinite(v)) throw DomainError("report contains a non-finite numeric entry");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void dump(const Json& j, std::string& out, int indent) {
    const std::string pad(static_cast<size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                out += pad_in;
                out += Json(it.key()).dump();
                out += ": ";
                dump(it.value(), out, indent + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (size_t i = 0; i < j.size(); ++i) {
                out += pad_in;
                dump(j[i], out, indent + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_json(const Json& j) {
    std::string out;
    dump(j, out, 0);
    out += "\n";
    return out;
}

Json json_vec(const Vec& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Json json_mat(const Mat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

namespace {

constexpr int kSchemaVersion = 1;

struct CheckList {
    Json checks = Json::array();
    int failures = 0;

    void add(const std::string& name, double residual, double tolerance) {
        const bool pass = residual <= tolerance;
        if (!pass) ++failures;
        Json c;
        c["name"] = name;
        c["residual"] = residual;
        c["tolerance"] = tolerance;
        c["pass"] = pass;
        checks.push_back(std::move(c));
    }
    void add_flag(const std::string& name, bool pass) {
        if (!pass) ++failures;
        Json c;
        c["name"] = name;
        c["residual"] = pass ? 0.0 : 1.0;
        c["tolerance"] = 0.5;
        c["pass"] = pass;
        checks.push_back(std::move(c));
    }
};

Json header(Command cmd, const Fixture& fx, std::uint64_t seed, const std::string& tol_profile) {
    Json h;
    h["schema_version"] = kSchemaVersion;
    h["tool"] = "abmetric";
    h["command"] = command_name(cmd);
    Json f;
    f["name"] = fx.cfg.name;
    f["dimension"] = fx.cfg.n;
    f["alpha"] = fx.cfg.alpha_kind;
    f["beta"] = fx.cfg.beta_kind;
    f["phi"] = fx.fm.phi.family_name();
    f["b0"] = fx.fm.phi.b0;
    h["fixture"] = std::move(f);
    h["seed"] = seed;
    h["tol_profile"] = tol_profile;
    // Definitions the formula set leaves open; every consumer of Theta or
    // f(b) inherits these.
    Json adopted = Json::array();
    adopted.push_back("theta = (Q - s Q') / (2 Delta)");
    adopted.push_back("f(b) = int sin^(n-2) t dt / int sin^(n-2) t phi(b cos t)^(-n) dt");
    h["adopted_definitions"] = std::move(adopted);
    return h;
}

double b2_at(const Fixture& fx, const Vec& x) {
    const Mat a = fx.fm.alpha.a(x);
    const Vec b = fx.fm.beta.b(x);
    return b.dot(a.ldlt().solve(b));
}

std::string fit_kind_name(FitKind k) {
    switch (k) {
        case FitKind::isotropic_S: return "isotropic_S";
        case FitKind::weak_isotropic_S: return "weak_isotropic_S";
        case FitKind::isotropic_E: return "isotropic_E";
    }
    return "?";
}

Json json_fit(const IsotropyFit& fit) {
    Json f;
    f["kind"] = fit_kind_name(fit.kind);
    f["c"] = fit.c;
    f["eta"] = json_vec(fit.eta);
    f["residual"] = fit.residual;
    f["tolerance"] = fit.tolerance;
    f["verdict"] = fit.verdict;
    return f;
}

std::string verdict_name(EquivalenceVerdict v) {
    switch (v) {
        case EquivalenceVerdict::equivalent: return "equivalent";
        case EquivalenceVerdict::inconclusive_constant_xi: return "inconclusive_constant_xi";
        case EquivalenceVerdict::violation: return "violation";
    }
    return "?";
}

// ---------------------------------------------------------------- scalars

RunResult run_scalars(const Fixture& fx, int grid_n, std::uint64_t seed, const Tolerances& tol) {
    RunResult rr;
    rr.report = header(Command::scalars, fx, seed, fx.cfg.tol_profile);
    Json tables = Json::array();
    std::ostringstream csv;
    csv << "b2,s,Q,Delta,Phi,Psi,Omega,Theta,Xi,Upsilon\n";

    std::vector<double> b2s = fx.cfg.b2_list;
    if (b2s.empty())
        for (const Vec& x : fx.points) b2s.push_back(b2_at(fx, x));

    for (double b2 : b2s) {
        const double b = std::sqrt(b2);
        std::vector<double> svals = fx.cfg.s_list;
        if (svals.empty()) svals = linspace(-0.8 * b, 0.8 * b, grid_n);
        Json table;
        table["b2"] = b2;
        table["n"] = fx.cfg.n;
        Json rows = Json::array();
        for (double s : svals) {
            const ScalarPack p = scalar_pack(fx.fm.phi, s, b2, fx.cfg.n, tol.order);
            Json row;
            row["s"] = s;
            row["Q"] = p.q();
            row["Delta"] = p.delta();
            row["Phi"] = p.phi_big();
            row["Psi"] = p.psi();
            row["Omega"] = p.omega();
            row["Theta"] = p.theta();
            row["Xi"] = p.xi();
            row["Upsilon"] = p.upsilon();
            rows.push_back(std::move(row));
            csv << format_double(b2) << ',' << format_double(s) << ',' << format_double(p.q()) << ','
                << format_double(p.delta()) << ',' << format_double(p.phi_big()) << ','
                << format_double(p.psi()) << ',' << format_double(p.omega()) << ','
                << format_double(p.theta()) << ',' << format_double(p.xi()) << ','
                << format_double(p.upsilon()) << '\n';
        }
        table["rows"] = std::move(rows);

        const auto xi_grid = linspace(-0.8 * b, 0.8 * b, std::max(grid_n, 3));
        const ProfileReport xi = xi_profile(fx.fm.phi, b2, fx.cfg.n, xi_grid, tol);
        Json xj;
        xj["variation"] = xi.variation;
        xj["max_abs"] = xi.max_abs;
        xj["constant"] = xi.constant;
        table["xi_profile"] = std::move(xj);

        const UpsilonResult ub = upsilon_branch(fx.fm.phi, b2, fx.cfg.n, xi_grid, tol);
        Json uj;
        uj["branch"] = ub.branch == UpsilonBranch::upsilon_zero ? "upsilon_zero" : "upsilon_nonzero";
        uj["variation"] = ub.variation;
        if (ub.branch == UpsilonBranch::upsilon_zero) uj["mu"] = ub.mu;
        table["upsilon_branch"] = std::move(uj);
        tables.push_back(std::move(table));
    }
    rr.report["tables"] = std::move(tables);
    rr.csv = csv.str();
    return rr;
}

// ---------------------------------------------------------------- analyze

RunResult run_analyze(const Fixture& fx, std::uint64_t seed, const Tolerances& tol) {
    RunResult rr;
    rr.report = header(Command::analyze, fx, seed, fx.cfg.tol_profile);
    Json points = Json::array();
    for (const Vec& x : fx.points) {
        Json pj;
        pj["x"] = json_vec(x);
        const Mat a = fx.fm.alpha.a(x);
        const auto dirs = sample_directions(a, std::min(fx.directions, 8), seed);
        Json rows = Json::array();
        bool first = true;
        for (const Vec& y : dirs) {
            const CurvatureReport cr = curvature_at(fx.fm, x, y, true, tol);
            Json row;
            row["y"] = json_vec(y);
            row["alpha"] = cr.alpha;
            row["beta"] = cr.beta;
            row["s"] = cr.s;
            row["F"] = cr.F;
            row["S_closed"] = cr.S_closed;
            row["S_oracle"] = cr.S_oracle;
            row["S_delta"] = std::abs(cr.S_closed - cr.S_oracle);
            row["G_closed"] = json_vec(cr.G_closed);
            row["G_oracle"] = json_vec(cr.G_oracle);
            row["E_closed"] = json_mat(cr.E_closed);
            row["E_oracle"] = json_mat(cr.E_oracle);
            row["E_delta_max"] = (cr.E_closed - cr.E_oracle).cwiseAbs().maxCoeff();
            row["tau"] = cr.tau;
            row["divergence_identity_residual"] = cr.divergence_identity_residual;
            if (first) {
                row["g"] = json_mat(cr.g);
                row["h"] = json_mat(cr.h);
                row["sigma_bh"] = cr.sigma;
                row["bh_T"] = cr.bh_T;
                row["bh_dlogf_db"] = cr.bh_dlogf;
                Json cj = Json::array();
                for (double c : cr.coeff.c) cj.push_back(c);
                row["C"] = std::move(cj);
                first = false;
            }
            rows.push_back(std::move(row));
        }
        pj["b2"] = b2_at(fx, x);
        pj["directions"] = std::move(rows);
        points.push_back(std::move(pj));
    }
    rr.report["points"] = std::move(points);
    return rr;
}

// ----------------------------------------------------------------- verify

void verify_pack_consistency(const Fixture& fx, double bmax, CheckList& out, const Tolerances& tol) {
    // Recompute Delta, Psi, Omega, Xi from the Q and Phi jets and compare.
    double worst = 0.0;
    const double cap = std::min(bmax, 0.95 * fx.fm.phi.b0);
    for (double frac : {0.2, 0.4, 0.6, 0.8, 1.0}) {
        const double b = cap * frac;
        const double b2 = b * b;
        for (double s : linspace(-0.9 * b, 0.9 * b, 21)) {
            ScalarPack p;
            try {
                p = scalar_pack(fx.fm.phi, s, b2, fx.cfg.n, tol.order);
            } catch (const Degenerate&) {
                continue;
            }
            const Jet x = Jet::variable(s, p.Q.order() + 1);
            const Jet xq = x.truncated(p.Q.order());
            const Jet Qp = p.Q.derivative_jet();
            const Jet delta = 1.0 + xq * p.Q + (b2 - xq * xq) * Qp;
            const Jet psi = Qp / (2.0 * delta);
            const Jet omega = p.Phi / (2.0 * p.Delta * p.Delta);
            const Jet xi = (b2 * p.Q + xq) * p.Phi / (p.Delta * p.Delta);
            auto jdiff = [](const Jet& u, const Jet& v) {
                double w = 0.0;
                const int k = std::min(u.order(), v.order());
                for (int i = 0; i <= k; ++i)
                    w = std::max(w, std::abs(u.coeff(i) - v.coeff(i)) / (1.0 + std::abs(v.coeff(i))));
                return w;
            };
            worst = std::max({worst, jdiff(delta, p.Delta), jdiff(psi, p.Psi), jdiff(omega, p.Omega),
                              jdiff(xi, p.Xi)});
            if (fx.fm.phi.family == PhiFamily::riemannian)
                worst = std::max(worst, std::abs(p.phi_big()));
        }
    }
    out.add("pack_consistency", worst, tol.pack_identity);
}

void verify_jets_vs_fd(const Fixture& fx, CheckList& out) {
    double worst = 0.0;
    const double smax = 0.45 * fx.fm.phi.b0;
    for (double s : linspace(-smax, smax, 41)) {
        const Jet j = phi_eval(fx.fm.phi, s, Jet::kDefaultOrder);
        for (int k = 1; k <= 4; ++k) {
            const double h = (k <= 2) ? 1e-3 : (k == 3 ? 5e-3 : 3e-2);
            const FdEstimate fd =
                jet_fd_check([&](double t) { return fx.fm.phi.value(t); }, s, k, h);
            worst = std::max(worst, std::abs(j.derivative(k) - fd.value) / (1.0 + std::abs(fd.value)));
        }
    }
    out.add("jet_vs_richardson_fd", worst, 1e-6);
}

void verify_point(const Fixture& fx, const Vec& x, std::uint64_t seed, CheckList& out,
                  const Tolerances& tol) {
    const Mat a = fx.fm.alpha.a(x);
    const auto dirs = sample_directions(a, fx.directions, seed);
    const int n = fx.cfg.n;

    double spray_rel = 0.0, s_rel = 0.0, e_rel = 0.0, div_res = 0.0, euler_e = 0.0, euler_h = 0.0;
    double homog = 0.0, tau_riem = 0.0;
    bool has_iso_check = false;
    double iso_consistency = 0.0;

    IsotropyFit fit_s;
    std::vector<CurvatureSample> samples;
    bool fits_ok = true;
    try {
        samples = make_samples(fx.fm, x, fx.directions, seed, tol);
        fit_s = test_isotropic_S(samples, n, tol);
    } catch (const Error&) {
        fits_ok = false;
    }

    for (const Vec& y : dirs) {
        const CurvatureReport cr = curvature_at(fx.fm, x, y, true, tol);
        spray_rel = std::max(spray_rel,
                             (cr.G_closed - cr.G_oracle).norm() / (1.0 + cr.G_oracle.norm()));
        s_rel = std::max(s_rel, std::abs(cr.S_closed - cr.S_oracle) / (1.0 + std::abs(cr.S_oracle)));
        e_rel = std::max(e_rel,
                         (cr.E_closed - cr.E_oracle).cwiseAbs().maxCoeff() / (1.0 + cr.E_oracle.norm()));
        div_res = std::max(div_res, cr.divergence_identity_residual);
        euler_e = std::max(euler_e, (cr.E_closed * y).norm() / (1.0 + cr.E_closed.norm() * y.norm()));
        euler_h = std::max(euler_h, (cr.h * y).norm() / (1.0 + cr.h.norm() * y.norm()));
        if (fx.fm.phi.family == PhiFamily::riemannian) tau_riem = std::max(tau_riem, std::abs(cr.tau));

        // closed-form homogeneity: G degree 2, S degree 1, E degree -1
        for (double lam : {0.5, 2.0, 3.0}) {
            const CurvatureReport cl = curvature_at(fx.fm, x, Vec(lam * y), false, tol);
            homog = std::max(homog, (cl.G_closed - lam * lam * cr.G_closed).norm() /
                                        (1.0 + cr.G_closed.norm() * lam * lam));
            homog = std::max(homog,
                             std::abs(cl.S_closed - lam * cr.S_closed) / (1.0 + std::abs(cr.S_closed) * lam));
            homog = std::max(homog, (cl.E_closed - cr.E_closed / lam).cwiseAbs().maxCoeff() /
                                        (1.0 + cr.E_closed.norm() / lam));
        }
        if (fits_ok && fit_s.verdict) {
            // isotropic S forces isotropic E at the same c; check E directly.
            const Mat model = 0.5 * (n + 1) * fit_s.c / cr.F * cr.h;
            iso_consistency =
                std::max(iso_consistency, (cr.E_closed - model).norm() / (1.0 + cr.E_closed.norm()));
            has_iso_check = true;
        }
    }
    out.add("spray_closed_vs_oracle", spray_rel, tol.spray_oracle_rel);
    out.add("s_closed_vs_oracle", s_rel, tol.s_oracle_rel);
    out.add("e_closed_vs_oracle", e_rel, tol.e_oracle_rel);
    out.add("spray_divergence_identity", div_res, tol.divergence_identity_abs);
    out.add("euler_E_y", euler_e, tol.euler_rel);
    out.add("euler_h_y", euler_h, tol.angular_rel * 1e4);  // scaled: h is an FD product
    out.add("homogeneity_G2_S1_Em1", homog, tol.homogeneity_rel);
    if (fx.fm.phi.family == PhiFamily::riemannian) out.add("riemannian_tau_zero", tau_riem, 1e-8);
    if (has_iso_check) out.add("isotropic_E_consistency", iso_consistency, tol.e_oracle_rel);

    // beta machinery residuals
    const BetaData bd = beta_data(fx.fm.alpha, fx.fm.beta, x, dirs.front());
    out.add("s_ij_antisymmetry_contraction", std::abs(bd.s_vec.dot(bd.b_up)), 1e-12);
    out.add("r_plus_s_decomposition", (bd.r + bd.s - bd.b_cov_deriv).norm(), 1e-12);
    if (bd.b2 > 1e-12) {
        out.add("db_directional_identity", db_check(fx.fm.alpha, fx.fm.beta, x, dirs.front()), 1e-6);
        const AdaptedFrame frame = adapted_frame(fx.fm.alpha, fx.fm.beta, x);
        out.add("frame_orthonormality",
                (frame.E.transpose() * a * frame.E - Mat::Identity(n, n)).norm(), 1e-12);
        const Vec b_frame = frame.E.transpose() * bd.b_cov;
        double bres = std::abs(b_frame[0] - frame.b);
        for (int i = 1; i < n; ++i) bres = std::max(bres, std::abs(b_frame[i]));
        out.add("frame_beta_alignment", bres, 1e-12);
        const double s_val = bd.beta / bd.alpha;
        if (s_val * s_val < bd.b2 * 0.998) {
            const SpecialData sd = transform_special(bd, frame, s_val);
            const double trans = std::max({sd.res_r0, sd.res_r00, sd.res_s0, sd.res_s1, sd.res_rcontr});
            out.add("special_coordinate_identities", trans, 1e-10);
        }

        // chain rule for the BH density:
        // y d ln sigma_BH = y d ln sigma_alpha + dlogf (r0+s0)/b
        const BhFactor bh = bh_factor(fx.fm.phi, std::sqrt(bd.b2), n, tol);
        ScalarField log_sigma = [&](const Vec& xx) {
            return std::log(sigma_bh(fx.fm.phi, fx.fm.alpha, fx.fm.beta, xx, tol));
        };
        const double hx = tol.step_x_rel * (1.0 + x.norm());
        double lhs = 0.0;
        for (int mm = 0; mm < n; ++mm) lhs += dirs.front()[mm] * fd_partial(log_sigma, x, mm, hx);
        const double rhs = dlog_sqrt_det_a(fx.fm.alpha, x, dirs.front()) +
                           bh.dlogf_db * (bd.r0 + bd.s0) / std::sqrt(bd.b2);
        out.add("bh_sigma_chain_rule", std::abs(lhs - rhs), 1e-6);
    }
}

RunResult run_verify(const Fixture& fx, std::uint64_t seed, const Tolerances& tol) {
    RunResult rr;
    rr.report = header(Command::verify, fx, seed, fx.cfg.tol_profile);
    CheckList checks;

    double bmax = 0.1;
    for (const Vec& x : fx.points) bmax = std::max(bmax, std::sqrt(b2_at(fx, x)));
    const ValidationReport vr = phi_validate(fx.fm.phi, std::min(1.05 * bmax, fx.fm.phi.b0));
    checks.add_flag("phi_regularity", vr.pass);
    verify_pack_consistency(fx, bmax, checks, tol);
    verify_jets_vs_fd(fx, checks);
    for (const Vec& x : fx.points) verify_point(fx, x, seed, checks, tol);

    rr.report["checks"] = checks.checks;
    rr.report["failures"] = checks.failures;
    rr.report["pass"] = checks.failures == 0;
    rr.exit_code = checks.failures == 0 ? 0 : 3;
    return rr;
}

// --------------------------------------------------------------- classify

RunResult run_classify(const Fixture& fx, std::uint64_t seed, const Tolerances& tol) {
    RunResult rr;
    rr.report = header(Command::classify, fx, seed, fx.cfg.tol_profile);
    Json points = Json::array();
    int violations = 0;
    for (const Vec& x : fx.points) {
        Json pj;
        pj["x"] = json_vec(x);
        const ClassificationReport rep = classify(fx.fm, x, fx.directions, seed, tol);
        pj["xi_constant"] = rep.xi_constant;
        pj["xi_variation"] = rep.xi_variation;
        pj["riemannian_flag"] = rep.riemannian_flag;
        pj["upsilon_zero"] = rep.upsilon_zero;
        if (rep.upsilon_zero) pj["mu"] = rep.upsilon.mu;
        pj["constant_b_advisory"] = rep.constant_b_advisory;
        if (rep.randers_type) {
            Json rt;
            rt["k1"] = rep.randers_type->k1;
            rt["k2"] = rep.randers_type->k2;
            rt["k3"] = rep.randers_type->k3;
            pj["randers_type"] = std::move(rt);
        } else {
            pj["randers_type"] = nullptr;
        }
        Json l23;
        l23["case"] = rep.beta_case.which == BetaCase::case_i
                          ? "case_i"
                          : (rep.beta_case.which == BetaCase::case_ii ? "case_ii" : "neither");
        l23["eps"] = rep.beta_case.eps;
        l23["residual"] = rep.beta_case.residual;
        l23["s_norm"] = rep.beta_case.s_norm;
        pj["beta_case"] = std::move(l23);
        pj["fit_isotropic_S"] = json_fit(rep.fit_s);
        pj["fit_weak_isotropic_S"] = json_fit(rep.fit_weak);
        pj["fit_isotropic_E"] = json_fit(rep.fit_e);
        pj["equivalence_check"] = verdict_name(rep.equivalence_verdict);
        pj["equivalence_c_gap"] = rep.equivalence_c_gap;
        Json sp;
        sp["upsilon_zero_sign"] = rep.sign_probe.upsilon_zero_sign;
        sp["upsilon_nonzero_sign"] = rep.sign_probe.upsilon_nonzero_sign;
        sp["res_upsilon_zero_minus"] = rep.sign_probe.res_upsilon_zero_minus;
        sp["res_upsilon_zero_plus"] = rep.sign_probe.res_upsilon_zero_plus;
        sp["res_upsilon_nonzero_minus"] = rep.sign_probe.res_upsilon_nonzero_minus;
        sp["res_upsilon_nonzero_plus"] = rep.sign_probe.res_upsilon_nonzero_plus;
        pj["sign_convention_probe"] = std::move(sp);

        const StructureCheckReport p37 = isotropy_structure_check(fx.fm, x, fx.directions, seed, tol);
        Json p37j;
        p37j["preconditions_met"] = p37.preconditions_met;
        p37j["upsilon_nonzero"] = p37.upsilon_nonzero;
        p37j["non_randers_type"] = p37.non_randers_type;
        p37j["xi_nonconstant"] = p37.xi_nonconstant;
        p37j["weak_isotropic"] = p37.weak_isotropic;
        p37j["structure_ode_residual"] = p37.structure_ode_residual;
        if (!p37.preconditions_met) p37j["status"] = "PreconditionNotMet";
        pj["structure_check"] = std::move(p37j);
        if (rep.equivalence_verdict == EquivalenceVerdict::violation) ++violations;
        points.push_back(std::move(pj));
    }
    rr.report["points"] = std::move(points);
    rr.exit_code = violations == 0 ? 0 : 3;
    return rr;
}

// ------------------------------------------------------------ equivalence

RunResult run_equivalence(const Fixture& fx, std::uint64_t seed, const Tolerances& tol) {
    RunResult rr;
    rr.report = header(Command::equivalence, fx, seed, fx.cfg.tol_profile);
    Json points = Json::array();
    int violations = 0;
    for (const Vec& x : fx.points) {
        const EquivalenceResult t = equivalence_check(fx.fm, x, fx.directions, seed, tol);
        Json pj;
        pj["x"] = json_vec(x);
        pj["verdict"] = verdict_name(t.verdict);
        pj["xi_variation"] = t.xi.variation;
        pj["xi_constant"] = t.xi.constant;
        if (t.verdict != EquivalenceVerdict::inconclusive_constant_xi) {
            pj["fit_isotropic_S"] = json_fit(t.fit_s);
            pj["fit_isotropic_E"] = json_fit(t.fit_e);
            pj["c_gap"] = t.c_gap;
        }
        if (t.verdict == EquivalenceVerdict::violation) ++violations;
        points.push_back(std::move(pj));
    }
    rr.report["points"] = std::move(points);
    rr.report["violations"] = violations;
    rr.exit_code = violations == 0 ? 0 : 3;
    return rr;
}

}  // namespace

RunResult run_command(Command cmd, const Fixture& fixture, const RunOptions& opt) {
    Fixture fx = fixture;
    if (opt.point) {
        if (static_cast<int>(opt.point->size()) != fx.cfg.n)
            throw ValidationError("point", "override has wrong arity");
        Vec x(fx.cfg.n);
        for (int i = 0; i < fx.cfg.n; ++i) x[i] = (*opt.point)[static_cast<size_t>(i)];
        fx.points = {x};
    }
    const std::uint64_t seed = opt.seed.value_or(fx.cfg.seed);
    const int grid = opt.grid.value_or(fx.cfg.grid);
    Tolerances tol = fx.tol;
    if (opt.tol_profile) {
        if (*opt.tol_profile == "strict") tol = Tolerances::strict();
        else if (*opt.tol_profile == "fd") tol = Tolerances::defaults();
        else throw ValidationError("tol-profile", "expected 'strict' or 'fd'");
    }
    switch (cmd) {
        case Command::scalars: return run_scalars(fx, grid, seed, tol);
        case Command::analyze: return run_analyze(fx, seed, tol);
        case Command::verify: return run_verify(fx, seed, tol);
        case Command::classify: return run_classify(fx, seed, tol);
        case Command::equivalence: return run_equivalence(fx, seed, tol);
    }
    throw DomainError("run_command: bad command");
}

}  // namespace abm
