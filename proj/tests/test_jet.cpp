#include <abmetric/jet.hpp>
#include <abmetric/phi.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace abm;

TEST_CASE("jet_var represents the identity") {
    const Jet a = jet_var(0.2, 3);
    CHECK(a.coeff(0) == 0.2);
    CHECK(a.coeff(1) == 1.0);
    CHECK(a.coeff(2) == 0.0);
    CHECK(a.coeff(3) == 0.0);

    const Jet b = jet_var(0.0, 6);
    CHECK(b.order() == 6);
    CHECK(b.coeff(0) == 0.0);
    CHECK(b.coeff(1) == 1.0);
    for (int k = 2; k <= 6; ++k) CHECK(b.coeff(k) == 0.0);

    const Jet c = jet_var(-0.4, 2);
    CHECK(c.coeff(0) == -0.4);
    CHECK(c.coeff(1) == 1.0);

    CHECK_THROWS_AS(jet_var(std::nan(""), 3), DomainError);
    CHECK_THROWS_AS(jet_var(0.0, 0), DomainError);
}

TEST_CASE("jet arithmetic basics") {
    const Jet x = jet_var(0.0, 4);
    const Jet sq = jet_arith(1.0 + x, 1.0 + x, JetOp::mul);  // (1+s)^2
    CHECK(sq.coeff(0) == 1.0);
    CHECK(sq.coeff(1) == 2.0);
    CHECK(sq.coeff(2) == 1.0);
    CHECK(sq.coeff(3) == 0.0);
    CHECK(sq.coeff(4) == 0.0);

    const Jet x3 = jet_var(0.0, 3);
    const Jet geo = jet_arith(Jet::constant(1.0, 0.0, 3), 1.0 - x3, JetOp::div);  // 1/(1-s)
    for (int k = 0; k <= 3; ++k) CHECK(geo.coeff(k) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("quotient jet matches hand differentiation of 2s/(1-s^2)") {
    // at s0 = 0.2: value 5/12, first derivative 1300/576, second 38000/13824
    const Jet x = jet_var(0.2, 2);
    const Jet q = (2.0 * x) / (1.0 - x * x);
    CHECK(q.value() == doctest::Approx(5.0 / 12.0).epsilon(1e-15));
    CHECK(q.derivative(1) == doctest::Approx(1300.0 / 576.0).epsilon(1e-14));
    CHECK(q.derivative(2) == doctest::Approx(38000.0 / 13824.0).epsilon(1e-14));
}

TEST_CASE("jet_elem: pow, sqrt, ln") {
    const Jet x = jet_var(0.0, 4);
    const Jet cube = jet_elem(1.0 + x, JetFn::pow, 3.0);  // (1+s)^3
    CHECK(cube.derivative(0) == doctest::Approx(1.0));
    CHECK(cube.derivative(1) == doctest::Approx(3.0));
    CHECK(cube.derivative(2) == doctest::Approx(6.0));
    CHECK(cube.derivative(3) == doctest::Approx(6.0));
    CHECK(cube.derivative(4) == doctest::Approx(0.0));

    const Jet x2 = jet_var(0.0, 2);
    const Jet root = jet_elem(1.0 + x2 * x2, JetFn::sqrt);  // sqrt(1+s^2)
    CHECK(root.coeff(0) == doctest::Approx(1.0));
    CHECK(root.coeff(1) == doctest::Approx(0.0));
    CHECK(root.coeff(2) == doctest::Approx(0.5));

    const Jet x1 = jet_var(0.0, 1);
    const Jet lg = jet_elem(1.0 + x1, JetFn::ln);
    CHECK(lg.coeff(0) == doctest::Approx(0.0));
    CHECK(lg.coeff(1) == doctest::Approx(1.0));

    CHECK_THROWS_AS(jet_elem(-1.0 + x, JetFn::sqrt), DomainError);
    CHECK_THROWS_AS(jet_elem(-1.0 + x, JetFn::ln), DomainError);
}

TEST_CASE("division degeneracy guard") {
    const Jet x = jet_var(0.0, 3);
    const Jet tiny = Jet::constant(1e-15, 0.0, 3);
    CHECK_THROWS_AS((1.0 + x) / tiny, DivisionByZeroJet);
}

TEST_CASE("jet_fd_check examples") {
    const auto cube = [](double s) { return (1.0 + s) * (1.0 + s) * (1.0 + s); };
    const FdEstimate d2 = jet_fd_check(cube, 0.0, 2, 1e-3);
    CHECK(std::abs(d2.value - 6.0) < 1e-6);

    const auto q = [](double s) { return 2.0 * s / (1.0 - s * s); };
    const FdEstimate d1 = jet_fd_check(q, 0.2, 1, 1e-3);
    CHECK(std::abs(d1.value - 1300.0 / 576.0) < 1e-6);

    const auto cst = [](double) { return 4.25; };
    CHECK(std::abs(jet_fd_check(cst, 1.3, 1, 1e-3).value) < 1e-10);
}

namespace {

Jet random_jet(std::mt19937_64& rng, double s0, int order, double lead_min) {
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    Jet j(s0, order);
    Jet x = jet_var(s0, order);
    // build from a random polynomial in (s - s0): exact control of coefficients
    Jet acc = Jet::constant(0.0, s0, order);
    for (int k = order; k >= 1; --k) acc = (acc + coef(rng)) * (x - s0);
    double lead = coef(rng);
    if (std::abs(lead) < lead_min) lead = lead_min + std::abs(lead);
    return acc + lead;
}

}  // namespace

TEST_CASE("multiplication is commutative and associative") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 200; ++trial) {
        const Jet a = random_jet(rng, 0.1, 6, 0.0);
        const Jet b = random_jet(rng, 0.1, 6, 0.0);
        const Jet c = random_jet(rng, 0.1, 6, 0.0);
        const Jet ab = a * b, ba = b * a;
        const Jet abc1 = (a * b) * c, abc2 = a * (b * c);
        for (int k = 0; k <= 6; ++k) {
            CHECK(std::abs(ab.coeff(k) - ba.coeff(k)) <= 1e-14 * (1.0 + std::abs(ab.coeff(k))));
            CHECK(std::abs(abc1.coeff(k) - abc2.coeff(k)) <= 1e-14 * (1.0 + std::abs(abc1.coeff(k))));
        }
    }
}

TEST_CASE("division round-trips against multiplication") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        const Jet a = random_jet(rng, -0.3, 6, 0.0);
        const Jet b = random_jet(rng, -0.3, 6, 0.15);  // |b0| > 0.1
        const Jet q = a / b;
        const Jet back = q * b;
        // error scale of the round trip: the quotient can be large when |b0|
        // sits near the 0.1 floor, so measure relative to its magnitude
        double scale = 1.0;
        for (int k = 0; k <= 6; ++k) scale = std::max(scale, std::abs(q.coeff(k)));
        for (int k = 0; k <= 6; ++k)
            CHECK(std::abs(back.coeff(k) - a.coeff(k)) <= 1e-12 * (scale + std::abs(a.coeff(k))));
    }
}

TEST_CASE("jet derivatives of the built-in phi families match Richardson FD") {
    const PhiSpec fams[] = {PhiSpec::riemannian(),      PhiSpec::randers(),
                            PhiSpec::power(1.0),        PhiSpec::power(2.0),
                            PhiSpec::quadratic(),       PhiSpec::randers_type(2.0, 0.5, -1.0),
                            PhiSpec::taylor({1.0, 0.3, 0.1, -0.05}, 0.8)};
    for (const PhiSpec& phi : fams) {
        const double smax = 0.45 * phi.b0;
        for (int i = 0; i <= 40; ++i) {
            const double s = -smax + 2.0 * smax * i / 40;
            const Jet j = phi_eval(phi, s, Jet::kDefaultOrder);
            for (int k = 1; k <= 4; ++k) {
                const double h = (k <= 2) ? 1e-3 : (k == 3 ? 5e-3 : 3e-2);
                const FdEstimate fd = jet_fd_check([&](double t) { return phi.value(t); }, s, k, h);
                CHECK(std::abs(j.derivative(k) - fd.value) <= 1e-6 * (1.0 + std::abs(fd.value)));
            }
        }
    }
}
