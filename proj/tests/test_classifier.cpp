#include <abmetric/classifier.hpp>
#include <abmetric/config.hpp>

#include <doctest.h>

#include <cmath>

using namespace abm;

namespace {

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Fixture builtin(const std::string& name) { return build_fixture(parse_config(builtin_fixture_text(name))); }

}  // namespace

TEST_CASE("direction sampling is alpha-unit and deterministic") {
    Mat a(2, 2);
    a << 2.0, 0.3, 0.3, 1.5;
    const auto d1 = sample_directions(a, 8, 42);
    const auto d2 = sample_directions(a, 8, 42);
    REQUIRE(d1.size() == 8);
    for (size_t i = 0; i < d1.size(); ++i) {
        CHECK((d1[i] - d2[i]).norm() == 0.0);  // bitwise reproducible
        CHECK(d1[i].dot(a * d1[i]) == doctest::Approx(1.0).epsilon(1e-12));
    }
    const auto d3 = sample_directions(a, 8, 43);
    CHECK((d3[0] - d1[0]).norm() > 1e-6);  // seed moves the sequence

    Mat a3 = Mat::Identity(3, 3);
    for (const Vec& y : sample_directions(a3, 12, 7))
        CHECK(y.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("isotropic S fit: parallel-beta fixture gives c = 0, verdict true") {
    const Fixture fx = builtin("randers-parallel2");
    const auto samples = make_samples(fx.fm, fx.points[0], 8, 1, fx.tol);
    const IsotropyFit fit = test_isotropic_S(samples, 2, fx.tol);
    CHECK(fit.verdict);
    CHECK(fit.c == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.residual <= 1e-10);
}

TEST_CASE("isotropic S fit: funk fixture gives c = 1/2") {
    const Fixture fx = builtin("funk2");
    const auto samples = make_samples(fx.fm, fx.points[0], 8, 1, fx.tol);
    const IsotropyFit fit = test_isotropic_S(samples, 2, fx.tol);
    CHECK(fit.verdict);
    CHECK(fit.c == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("isotropic S fit: nonzero-s_ij fixture fails with residual > 1e-2") {
    const Fixture fx = builtin("skew2");
    const auto samples = make_samples(fx.fm, fx.points[0], 8, 1, fx.tol);
    const IsotropyFit fit = test_isotropic_S(samples, 2, fx.tol);
    CHECK_FALSE(fit.verdict);
    CHECK(fit.residual > 1e-2);
}

TEST_CASE("insufficient samples raises") {
    const Fixture fx = builtin("randers-parallel2");
    auto samples = make_samples(fx.fm, fx.points[0], 8, 1, fx.tol);
    samples.resize(3);  // < n + 2
    CHECK_THROWS_AS(test_isotropic_S(samples, 2, fx.tol), InsufficientSamples);
    CHECK_THROWS_AS(test_weak_isotropic_S(samples, 2, fx.tol), InsufficientSamples);
}

TEST_CASE("weak fit nests the isotropic fit and recovers injected 1-forms") {
    // nesting on an isotropic fixture: same c, eta ~ 0
    const Fixture fx = builtin("funk2");
    const auto samples = make_samples(fx.fm, fx.points[0], 8, 1, fx.tol);
    const IsotropyFit iso = test_isotropic_S(samples, 2, fx.tol);
    const IsotropyFit weak = test_weak_isotropic_S(samples, 2, fx.tol);
    CHECK(weak.verdict);
    CHECK(std::abs(weak.c - iso.c) <= 1e-6);
    CHECK(weak.eta.norm() <= 1e-4);

    // synthetic S that is exactly a 1-form: c = 0, eta recovered
    auto synth = samples;
    const Vec eta_true = vec2(0.7, -0.3);
    for (auto& m : synth) m.S = eta_true.dot(m.y);
    const IsotropyFit lin = test_weak_isotropic_S(synth, 2, fx.tol);
    CHECK(lin.verdict);
    CHECK(std::abs(lin.c) <= 1e-8);
    CHECK((lin.eta - eta_true).norm() <= 1e-8);
}

TEST_CASE("isotropic E fit follows the S verdict on randers fixtures") {
    for (const char* name : {"randers-parallel2", "funk2", "skew2"}) {
        const Fixture fx = builtin(name);
        const auto samples = make_samples(fx.fm, fx.points[0], 8, 1, fx.tol);
        const IsotropyFit s = test_isotropic_S(samples, 2, fx.tol);
        const IsotropyFit e = test_isotropic_E(samples, 2, fx.tol);
        CHECK(s.verdict == e.verdict);
        if (s.verdict) CHECK(std::abs(s.c - e.c) <= 1e-3);
    }
}

TEST_CASE("beta_case_check cases") {
    const MetricField eu = MetricField::euclidean(2);
    const Vec x = vec2(0.3, 0.7), y = vec2(1.0, 0.4);

    // constant beta -> case (ii)
    {
        const BetaData bd = beta_data(eu, OneFormField::constant(vec2(0.5, 0.0)), x, y);
        CHECK(beta_case_check(bd).which == BetaCase::case_ii);
    }
    // b = c x -> neither (r = c I is not proportional to b^2 a - b b^T)
    {
        const BetaData bd = beta_data(eu, OneFormField::linear(Mat(0.1 * Mat::Identity(2, 2))), x, y);
        CHECK(beta_case_check(bd).which == BetaCase::neither);
    }
    // injected r = eps (b^2 a - b b^T), s = 0 -> case (i), eps recovered
    {
        const Vec b = vec2(0.3, 0.1);
        const Mat a = Mat::Identity(2, 2);
        const double b2 = b.squaredNorm();
        const double eps_true = 0.37;
        const Mat r = eps_true * (b2 * a - b * b.transpose());
        const BetaData bd = beta_data_from_tensors(a, b, r, Mat::Zero(2, 2), x, y);
        const BetaCaseResult res = beta_case_check(bd);
        CHECK(res.which == BetaCase::case_i);
        CHECK(res.eps == doctest::Approx(eps_true).epsilon(1e-10));
        CHECK(res.residual <= 1e-10);
    }
    // zero beta rejected
    {
        const BetaData bd = beta_data(eu, OneFormField::constant(vec2(0.0, 0.0)), x, y);
        CHECK_THROWS_AS(beta_case_check(bd), ZeroBeta);
    }
}

TEST_CASE("ode5 residuals") {
    const auto grid = linspace(-0.35, 0.35, 41);
    // riemannian, k = 0: Phi = 0 identically
    CHECK(isotropy_ode_residual(PhiSpec::riemannian(), 0.0, 0.2, 2, grid) == doctest::Approx(0.0));
    // randers, k = 0: residual = max |Phi| = (n+1)(1 + s_max)
    const double r = isotropy_ode_residual(PhiSpec::randers(), 0.0, 0.2025, 2, linspace(-0.36, 0.36, 41));
    CHECK(r == doctest::Approx(3.0 * 1.36).epsilon(1e-12));
    CHECK(r > 0.0);
    // scan: riemannian satisfied at any k (pick k in range), randers not
    const ScanResult sc_r = isotropy_ode_scan(PhiSpec::riemannian(), 0.2, 2, grid, -1.0, 1.0);
    CHECK(sc_r.satisfied);
    const ScanResult sc_rand = isotropy_ode_scan(PhiSpec::randers(), 0.2025, 2, linspace(-0.36, 0.36, 41), -1.0, 1.0);
    CHECK_FALSE(sc_rand.satisfied);
    CHECK(sc_rand.best_residual > 0.1);
}

TEST_CASE("b2_decompose: quadratic polynomiality and closed-form coefficients") {
    const PhiSpec fams[] = {PhiSpec::randers(), PhiSpec::power(1.0), PhiSpec::power(2.0),
                            PhiSpec::quadratic(), PhiSpec::randers_type(2.0, 0.5, -1.0)};
    DecomposeParams p;
    p.k = 0.4;
    p.eps = 0.15;
    p.c = 0.2;
    p.nu = -0.3;
    p.lambda = 0.6;
    p.delta = 0.25;
    for (const PhiSpec& phi : fams) {
        for (double s : {-0.2, 0.1, 0.3}) {
            const B2Coefficients eq = b2_decompose(DecomposeExpr::trace_eq, phi, s, 2, p);
            CHECK(eq.check_rel <= 1e-8);
            CHECK(eq.c4 == doctest::Approx(trace_eq_leading_coeff(phi, s, 2, p)).epsilon(1e-8));
            const B2Coefficients EQ = b2_decompose(DecomposeExpr::skew_eq, phi, s, 2, p);
            CHECK(EQ.check_rel <= 1e-8);
            CHECK(EQ.c4 == doctest::Approx(skew_eq_leading_coeff(phi, s, p)).epsilon(1e-8));
        }
    }

    // eq leading coefficient vanishes for randers with eps = nu, c = 0
    DecomposeParams pr;
    pr.k = 0.4;
    pr.eps = 0.15;
    pr.nu = 0.15;
    pr.c = 0.0;
    const B2Coefficients eqr = b2_decompose(DecomposeExpr::trace_eq, PhiSpec::randers(), 0.2, 2, pr);
    CHECK(std::abs(eqr.c4) <= 1e-12);

    // EQ leading coefficient (Q')^2 (lambda - delta) vanishes for quadratic at
    // s = 0 when lambda = delta
    DecomposeParams pq;
    pq.lambda = 0.6;
    pq.delta = 0.6;
    const B2Coefficients eqq = b2_decompose(DecomposeExpr::skew_eq, PhiSpec::quadratic(), 0.0, 2, pq);
    CHECK(std::abs(eqq.c4) <= 1e-12);
}

TEST_CASE("b2_decompose reduced identities (nu = eps, c = 0 and delta = lambda)") {
    const PhiSpec fams[] = {PhiSpec::randers(), PhiSpec::power(1.0), PhiSpec::power(2.0),
                            PhiSpec::quadratic(), PhiSpec::randers_type(2.0, 0.5, -1.0)};
    for (const PhiSpec& phi : fams) {
        for (double s : {-0.25, -0.05, 0.15, 0.3}) {
            for (int n : {2, 3}) {
                DecomposeParams p;
                p.k = 0.7;
                p.eps = 0.3;
                p.nu = p.eps;
                p.c = 0.0;
                const B2Coefficients eq = b2_decompose(DecomposeExpr::trace_eq, phi, s, n, p);
                CHECK(eq.c0 + eq.c2 * s * s ==
                      doctest::Approx(trace_eq_reduced_form(phi, s, n, p.k, p.eps)).epsilon(1e-8));

                DecomposeParams q;
                q.lambda = 0.45;
                q.delta = q.lambda;
                const B2Coefficients EQ = b2_decompose(DecomposeExpr::skew_eq, phi, s, n, q);
                CHECK(EQ.c0 + EQ.c2 * s * s ==
                      doctest::Approx(skew_eq_reduced_form(phi, s, n, q.lambda)).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("reduced ODE residuals") {
    const auto grid = linspace(-0.3, 0.3, 41);
    // k = eps = 0: every term carries k or eps
    const ReducedOdeResult z = reduced_ode_residual(PhiSpec::quadratic(), 0.0, 0.0, 2, grid);
    CHECK(z.residual == doctest::Approx(0.0));
    CHECK(z.residual_shifted == doctest::Approx(0.0));

    // sqrt family: Q = k2 s linear, residual vanishes iff eps = -k k2
    const PhiSpec sqrt_fam = PhiSpec::randers_type(1.0, 0.5, 0.0);  // phi = sqrt(1 + s^2/2)
    const ReducedOdeResult m = reduced_ode_residual(sqrt_fam, 0.8, -0.8 * 0.5, 2, grid);
    CHECK(m.residual <= 1e-8);
    CHECK(m.residual_shifted <= 1e-8);
    CHECK(std::abs(m.kqp0_plus_eps) <= 1e-12);

    // randers, k=1, eps=0, n=2: residual = |(1)(1)(1) + 2| = 3
    const ReducedOdeResult r = reduced_ode_residual(PhiSpec::randers(), 1.0, 0.0, 2, grid);
    CHECK(r.residual == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.residual_shifted == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("branch residual suites") {
    const auto grid = linspace(-0.35, 0.35, 41);
    // riemannian with all parameters zero: every residual vanishes
    const UpsilonZeroBranchResiduals r0 = upsilon_zero_branch_residuals(PhiSpec::riemannian(), 0, 0, 0, 0, 0, 0.2, 2, grid);
    CHECK(r0.res_c_equation == doctest::Approx(0.0));
    CHECK(r0.res_xi_constant == doctest::Approx(0.0));

    // randers, zero parameters: both sides of the c-equation vanish
    const UpsilonZeroBranchResiduals rr = upsilon_zero_branch_residuals(PhiSpec::randers(), 0, 0, 0, 0, 0, 0.25, 2,
                                                  linspace(-0.4, 0.4, 41));
    CHECK(rr.res_c_equation == doctest::Approx(0.0).epsilon(1e-14));
    // Xi non-constant => best-constant residual is variation/2 = 15/14
    CHECK(rr.res_xi_constant == doctest::Approx(15.0 / 14.0).epsilon(1e-12));
    CHECK(rr.res_xi_constant > 0.1);

    const UpsilonNonzeroBranchResiduals l35 =
        upsilon_nonzero_branch_residuals(PhiSpec::riemannian(), 0, 0, 0, 0, 0, 0.2, 2, grid);
    CHECK(l35.res_c_equation == doctest::Approx(0.0));
    CHECK(l35.nu == doctest::Approx(0.0));
    // delta reduces to -f'(b)/(b f(b)) = 0 for riemannian; skew residual 0
    CHECK(l35.res_skew_equation == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("upsilon_branch") {
    const auto grid = linspace(-0.3, 0.3, 41);
    const UpsilonResult r = upsilon_branch(PhiSpec::randers(), 0.16, 2, grid);
    CHECK(r.branch == UpsilonBranch::upsilon_nonzero);

    const UpsilonResult riem = upsilon_branch(PhiSpec::riemannian(), 0.16, 2, grid);
    CHECK(riem.branch == UpsilonBranch::upsilon_zero);
    CHECK(riem.mu == doctest::Approx(0.0));
    CHECK_FALSE(riem.constant_b_forced);  // phi = 1 is (degenerate) Randers-type

    const UpsilonResult quad =
        upsilon_branch(PhiSpec::quadratic(), 0.25, 2, linspace(-0.4, 0.4, 41));
    CHECK(quad.branch == UpsilonBranch::upsilon_nonzero);
}

TEST_CASE("equivalence_check verdicts on the bundled fixtures") {
    // both-true (c = 0), both-true (c = 1/2), both-false; never violation
    {
        const EquivalenceResult t = equivalence_check(builtin("randers-parallel2").fm, vec2(0.3, 0.7), 8, 1);
        CHECK(t.verdict == EquivalenceVerdict::equivalent);
        CHECK(t.fit_s.verdict);
        CHECK(t.fit_e.verdict);
        CHECK(std::abs(t.fit_s.c) <= 1e-8);
    }
    {
        const EquivalenceResult t = equivalence_check(builtin("funk2").fm, vec2(0.2, 0.1), 8, 1);
        CHECK(t.verdict == EquivalenceVerdict::equivalent);
        CHECK(t.fit_s.c == doctest::Approx(0.5).epsilon(1e-3));
        CHECK(t.fit_e.c == doctest::Approx(0.5).epsilon(2e-3));
    }
    {
        const EquivalenceResult t = equivalence_check(builtin("skew2").fm, vec2(0.3, 0.7), 8, 1);
        CHECK(t.verdict == EquivalenceVerdict::equivalent);
        CHECK_FALSE(t.fit_s.verdict);
        CHECK_FALSE(t.fit_e.verdict);
    }
    // riemannian: Xi constant -> inconclusive
    {
        const EquivalenceResult t = equivalence_check(builtin("riemannian2").fm, vec2(0.3, 0.7), 8, 1);
        CHECK(t.verdict == EquivalenceVerdict::inconclusive_constant_xi);
    }
}

TEST_CASE("isotropy_structure_check") {
    // riemannian: Xi constant -> preconditions not met
    const StructureCheckReport riem = isotropy_structure_check(builtin("riemannian2").fm, vec2(0.3, 0.7), 8, 1);
    CHECK_FALSE(riem.preconditions_met);
    CHECK_FALSE(riem.xi_nonconstant);

    // eps = 0 and c = 0 zero both sides of the structure ODE.
    // quadratic phi (non-Randers-type, Upsilon != 0, Xi non-constant) with
    // parallel beta is weak-isotropic with c = 0.
    const Fixture fx = builtin("quadratic-parallel2");
    const StructureCheckReport rep = isotropy_structure_check(fx.fm, fx.points[0], 8, 1);
    CHECK(rep.upsilon_nonzero);
    CHECK(rep.non_randers_type);
    CHECK(rep.xi_nonconstant);
    CHECK(rep.weak_isotropic);
    CHECK(rep.preconditions_met);
    CHECK(rep.beta_case.which == BetaCase::case_ii);  // r = 0 is the eps = 0 member of case_i
    CHECK(rep.structure_ode_residual <= 1e-8);

    // randers fixture: Randers-type, so preconditions fail but the residual
    // profile is still reported
    const Fixture rl = builtin("randers-linear2");
    const StructureCheckReport rrep = isotropy_structure_check(rl.fm, rl.points[0], 8, 1);
    CHECK_FALSE(rrep.non_randers_type);
    CHECK_FALSE(rrep.preconditions_met);
    CHECK(rrep.structure_ode_residual >= 0.0);
}

TEST_CASE("sign convention probe: zero branch takes minus, nonzero branch plus") {
    const auto grid = linspace(-0.3, 0.3, 21);
    for (const PhiSpec& phi : {PhiSpec::randers(), PhiSpec::power(1.0), PhiSpec::quadratic()}) {
        const SignProbe p = sign_convention_probe(phi, 0.16, 2, grid, 0.7, 0.3);
        if (phi.family == PhiFamily::riemannian) continue;
        CHECK(p.upsilon_zero_sign == -1);
        CHECK(p.upsilon_nonzero_sign == +1);
        CHECK(p.res_upsilon_zero_minus <= 1e-10);
        CHECK(p.res_upsilon_nonzero_plus <= 1e-10);
        CHECK(p.res_upsilon_zero_plus > 1e-4);
        CHECK(p.res_upsilon_nonzero_minus > 1e-4);
    }
}

TEST_CASE("classify assembles a coherent report") {
    const Fixture fx = builtin("randers-linear2");
    const ClassificationReport rep = classify(fx.fm, fx.points[0], 8, 1);
    CHECK_FALSE(rep.xi_constant);
    CHECK_FALSE(rep.upsilon_zero);
    REQUIRE(rep.randers_type.has_value());
    CHECK(rep.randers_type->k2 == doctest::Approx(0.0));
    CHECK(rep.beta_case.which == BetaCase::neither);
    CHECK(rep.equivalence_verdict != EquivalenceVerdict::violation);
    CHECK(rep.sign_probe.upsilon_zero_sign == -1);
    CHECK(rep.sign_probe.upsilon_nonzero_sign == +1);

    const ClassificationReport riem = classify(builtin("riemannian2").fm, vec2(0.3, 0.7), 8, 1);
    CHECK(riem.xi_constant);
    CHECK(riem.riemannian_flag);
    CHECK(riem.equivalence_verdict == EquivalenceVerdict::inconclusive_constant_xi);
}

TEST_CASE("one-way implication: isotropic S true forces isotropic E true") {
    for (const char* name : {"randers-parallel2", "power1-parallel2", "quadratic-parallel2",
                             "power2-parallel2", "funk2", "funk3"}) {
        const Fixture fx = builtin(name);
        const int n = fx.cfg.n;
        const auto samples = make_samples(fx.fm, fx.points[0], 4 * n, 1, fx.tol);
        const IsotropyFit s = test_isotropic_S(samples, n, fx.tol);
        if (!s.verdict) continue;
        const IsotropyFit e = test_isotropic_E(samples, n, fx.tol);
        CHECK(e.verdict);
        CHECK(std::abs(s.c - e.c) <= 1e-3);
    }
}
