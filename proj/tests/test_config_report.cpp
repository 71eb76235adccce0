#include <abmetric/report.hpp>

#include <doctest.h>

using namespace abm;

namespace {

const char* kMinimal = R"(
[fixture]
name = mini
[alpha]
kind = euclidean
[beta]
kind = constant
vector = 0.5, 0
[phi]
family = randers
)";

}  // namespace

TEST_CASE("parse_config fills defaults on a minimal fixture") {
    const FixtureConfig cfg = parse_config(kMinimal);
    CHECK(cfg.name == "mini");
    CHECK(cfg.n == 2);
    CHECK(cfg.alpha_kind == "euclidean");
    CHECK(cfg.grid == 201);
    CHECK(cfg.seed == 0);
    const Fixture fx = build_fixture(cfg);
    CHECK(fx.points.size() == 1);
    CHECK(fx.directions == 8);  // 4n default
}

TEST_CASE("parse_config diagnostics carry locations") {
    // bad line
    try {
        parse_config("[fixture]\nname mini\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    // duplicate key
    CHECK_THROWS_AS(parse_config("[phi]\nfamily = randers\nfamily = power\n"), ParseError);
    // key outside section
    CHECK_THROWS_AS(parse_config("family = randers\n"), ParseError);
    // unknown key names the field
    try {
        parse_config("[phi]\nfamly = randers\n");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.field() == "phi.famly");
    }
}

TEST_CASE("validation: power family requires m") {
    const std::string text = R"(
[alpha]
kind = euclidean
[beta]
kind = constant
vector = 0.4, 0
[phi]
family = power
)";
    try {
        parse_config(text);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.field() == "phi.m");
    }
}

TEST_CASE("validation: funk_ball probe points must stay in the unit ball") {
    const std::string text = R"(
[fixture]
dimension = 2
[alpha]
kind = funk_ball
[beta]
kind = funk_ball
[phi]
family = randers
[probe]
points = 1.2, 0
)";
    try {
        build_fixture(parse_config(text));
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.field() == "probe.points");
    }
}

TEST_CASE("builtin catalog parses and builds completely") {
    const auto names = builtin_fixture_names();
    CHECK(names.size() >= 15);
    for (const auto& name : names) {
        const Fixture fx = build_fixture(parse_config(builtin_fixture_text(name)));
        CHECK(fx.cfg.name == name);
    }
    CHECK_THROWS_AS(builtin_fixture_text("nope"), ValidationError);
}

TEST_CASE("dump_json: deterministic layout, 17 significant digits, finite-only") {
    Json j;
    j["b"] = 1.0 / 3.0;
    j["a"] = 1;
    j["nested"] = Json::array({0.1, 2.5, -1e-17});
    const std::string s1 = dump_json(j);
    const std::string s2 = dump_json(j);
    CHECK(s1 == s2);
    CHECK(s1.find("0.33333333333333331") != std::string::npos);
    // insertion order preserved ("b" before "a")
    CHECK(s1.find("\"b\"") < s1.find("\"a\""));

    Json bad;
    bad["x"] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(dump_json(bad), DomainError);
}

TEST_CASE("scalars command reproduces the closed-form row") {
    Fixture fx = build_fixture(parse_config(kMinimal));
    fx.cfg.b2_list = {0.25};
    fx.cfg.s_list = {0.2};
    const RunResult rr = run_command(Command::scalars, fx);
    CHECK(rr.exit_code == 0);
    const Json& row = rr.report["tables"][0]["rows"][0];
    CHECK(row["Delta"].get<double>() == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(row["Phi"].get<double>() == doctest::Approx(-3.6).epsilon(1e-14));
    CHECK(row["Xi"].get<double>() == doctest::Approx(-1.125).epsilon(1e-14));
    CHECK(!rr.csv.empty());
    CHECK(rr.csv.find("b2,s,Q,Delta") == 0);
}

TEST_CASE("verify command: riemannian fixture passes everything") {
    const Fixture fx = build_fixture(parse_config(builtin_fixture_text("riemannian2")));
    const RunResult rr = run_command(Command::verify, fx);
    CHECK(rr.exit_code == 0);
    CHECK(rr.report["pass"].get<bool>());
    CHECK(rr.report["failures"].get<int>() == 0);
    // every check carries residual + tolerance next to the verdict
    for (const auto& c : rr.report["checks"]) {
        CHECK(c.contains("residual"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("pass"));
    }
}

TEST_CASE("verify reports are byte-identical across runs with the same seed") {
    const Fixture fx = build_fixture(parse_config(builtin_fixture_text("randers-linear2")));
    RunOptions opt;
    opt.seed = 7;
    const RunResult a = run_command(Command::verify, fx, opt);
    const RunResult b = run_command(Command::verify, fx, opt);
    CHECK(dump_json(a.report) == dump_json(b.report));
    CHECK(a.exit_code == 0);
}

TEST_CASE("equivalence command: catalog trio is equivalent, exit 0") {
    for (const char* name : {"randers-parallel2", "power1-parallel2", "quadratic-parallel2"}) {
        const Fixture fx = build_fixture(parse_config(builtin_fixture_text(name)));
        const RunResult rr = run_command(Command::equivalence, fx);
        CHECK(rr.exit_code == 0);
        for (const auto& pt : rr.report["points"])
            CHECK(pt["verdict"].get<std::string>() == "equivalent");
    }
}

TEST_CASE("classify command emits the full report shape") {
    const Fixture fx = build_fixture(parse_config(builtin_fixture_text("randers-linear2")));
    const RunResult rr = run_command(Command::classify, fx);
    CHECK(rr.exit_code == 0);
    const Json& pt = rr.report["points"][0];
    CHECK(pt.contains("xi_constant"));
    CHECK(pt.contains("fit_isotropic_S"));
    CHECK(pt.contains("fit_weak_isotropic_S"));
    CHECK(pt.contains("fit_isotropic_E"));
    CHECK(pt.contains("beta_case"));
    CHECK(pt.contains("sign_convention_probe"));
    CHECK(pt.contains("structure_check"));
    CHECK(pt["equivalence_check"].get<std::string>() != "violation");
    // adopted definitions flagged in the header
    CHECK(rr.report["adopted_definitions"].size() == 2);
}

TEST_CASE("verify exit code is 3 when a residual check fails") {
    // An absurd tolerance forces a failing check; the command must flag it
    // (exit class 3) and keep listing every other check.
    Fixture fx = build_fixture(parse_config(builtin_fixture_text("randers-linear2")));
    fx.tol.divergence_identity_abs = 1e-30;
    const RunResult rr = run_command(Command::verify, fx);
    CHECK(rr.exit_code == 3);
    CHECK_FALSE(rr.report["pass"].get<bool>());
    CHECK(rr.report["failures"].get<int>() >= 1);
    int listed = 0;
    for (const auto& c : rr.report["checks"])
        if (!c["pass"].get<bool>()) ++listed;
    CHECK(listed == rr.report["failures"].get<int>());
}

TEST_CASE("point override validates arity") {
    const Fixture fx = build_fixture(parse_config(kMinimal));
    RunOptions opt;
    opt.point = std::vector<double>{0.1, 0.2, 0.3};
    CHECK_THROWS_AS(run_command(Command::scalars, fx, opt), ValidationError);
}
