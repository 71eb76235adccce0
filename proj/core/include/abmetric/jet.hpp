#pragma once

// Truncated univariate Taylor-series ("jet") arithmetic. A Jet holds the
// coefficients c_k = f^(k)(s0)/k! of a scalar function of s at a basepoint s0,
// truncated at a fixed order. All s-derivatives in the library flow through
// this type. Jets are immutable values; arithmetic between jets with
// different orders truncates to the shorter one (an explicit derivative
// always loses one order, so mixed orders are the normal case).

#include <abmetric/errors.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

namespace abm {

class Jet {
public:
    static constexpr int kMaxOrder = 15;
    static constexpr int kDefaultOrder = 6;

    Jet() : Jet(0.0, 0) {}
    Jet(double basepoint, int order) : s0_(basepoint), order_(check_order(order)) { c_.fill(0.0); }

    // The identity function s -> s at s0: coeffs [s0, 1, 0, ...].
    static Jet variable(double s0, int order) {
        if (!std::isfinite(s0)) throw DomainError("jet basepoint must be finite");
        if (order < 1) throw DomainError("jet_var requires order >= 1");
        Jet j(s0, order);
        j.c_[0] = s0;
        j.c_[1] = 1.0;
        return j;
    }

    static Jet constant(double value, double s0, int order) {
        if (!std::isfinite(value)) throw DomainError("jet constant must be finite");
        Jet j(s0, order);
        j.c_[0] = value;
        return j;
    }

    int order() const { return order_; }
    double basepoint() const { return s0_; }
    double coeff(int k) const { return (k <= order_) ? c_[static_cast<size_t>(k)] : 0.0; }
    double value() const { return c_[0]; }

    // f^(k)(s0) = k! * c_k
    double derivative(int k) const {
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= i;
        return fact * coeff(k);
    }

    // The jet of f'; one order shorter.
    Jet derivative_jet() const {
        if (order_ < 1) throw DomainError("cannot differentiate an order-0 jet");
        Jet d(s0_, order_ - 1);
        for (int k = 0; k < order_; ++k) d.c_[static_cast<size_t>(k)] = (k + 1) * c_[static_cast<size_t>(k + 1)];
        return d;
    }

    Jet truncated(int new_order) const {
        if (new_order > order_) throw DomainError("cannot extend a jet by truncation");
        Jet t(s0_, new_order);
        for (int k = 0; k <= new_order; ++k) t.c_[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)];
        return t;
    }

    bool all_finite() const {
        for (int k = 0; k <= order_; ++k)
            if (!std::isfinite(c_[static_cast<size_t>(k)])) return false;
        return true;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r = aligned(a, b);
        for (int k = 0; k <= r.order_; ++k) r.c_[static_cast<size_t>(k)] = a.coeff(k) + b.coeff(k);
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r = aligned(a, b);
        for (int k = 0; k <= r.order_; ++k) r.c_[static_cast<size_t>(k)] = a.coeff(k) - b.coeff(k);
        return r;
    }
    friend Jet operator-(const Jet& a) {
        Jet r = a;
        for (int k = 0; k <= r.order_; ++k) r.c_[static_cast<size_t>(k)] = -r.c_[static_cast<size_t>(k)];
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r = aligned(a, b);
        for (int k = 0; k <= r.order_; ++k) {
            double acc = 0.0;
            for (int j = 0; j <= k; ++j) acc += a.coeff(j) * b.coeff(k - j);
            r.c_[static_cast<size_t>(k)] = acc;
        }
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        // Scale-aware degeneracy guard: |b0| below eps relative to the
        // numerator signals phi - s phi' (or Delta) collapsing.
        if (std::abs(b.value()) < 1e-12 * (1.0 + std::abs(a.value())))
            throw DivisionByZeroJet("leading coefficient of divisor is " + std::to_string(b.value()));
        Jet r = aligned(a, b);
        for (int k = 0; k <= r.order_; ++k) {
            double acc = a.coeff(k);
            for (int j = 0; j < k; ++j) acc -= r.c_[static_cast<size_t>(j)] * b.coeff(k - j);
            r.c_[static_cast<size_t>(k)] = acc / b.value();
        }
        return r;
    }

    friend Jet operator+(const Jet& a, double c) { Jet r = a; r.c_[0] += c; return r; }
    friend Jet operator+(double c, const Jet& a) { return a + c; }
    friend Jet operator-(const Jet& a, double c) { return a + (-c); }
    friend Jet operator-(double c, const Jet& a) { return (-a) + c; }
    friend Jet operator*(const Jet& a, double c) {
        Jet r = a;
        for (int k = 0; k <= r.order_; ++k) r.c_[static_cast<size_t>(k)] *= c;
        return r;
    }
    friend Jet operator*(double c, const Jet& a) { return a * c; }
    friend Jet operator/(const Jet& a, double c) { return a * (1.0 / c); }
    friend Jet operator/(double c, const Jet& a) { return constant(c, a.s0_, a.order_) / a; }

    // u^r for real r via the standard power recurrence k u0 w_k = sum_j ((r+1)j - k) u_j w_{k-j}.
    // Nonpositive leading coefficients are only admitted for integral r >= 0.
    friend Jet pow(const Jet& u, double r) {
        const double u0 = u.value();
        if (u0 <= 0.0) {
            if (r >= 0.0 && r == std::floor(r) && r <= 64) return powi(u, static_cast<int>(r));
            throw DomainError("pow: nonpositive base with non-integral exponent");
        }
        Jet w(u.s0_, u.order_);
        w.c_[0] = std::pow(u0, r);
        for (int k = 1; k <= u.order_; ++k) {
            double acc = 0.0;
            for (int j = 1; j <= k; ++j) acc += ((r + 1.0) * j - k) * u.coeff(j) * w.c_[static_cast<size_t>(k - j)];
            w.c_[static_cast<size_t>(k)] = acc / (k * u0);
        }
        return w;
    }

    friend Jet sqrt(const Jet& u) {
        if (u.value() < 0.0) throw DomainError("sqrt of negative leading coefficient");
        if (u.value() == 0.0) throw DomainError("sqrt at zero is not differentiable");
        return pow(u, 0.5);
    }

    friend Jet exp(const Jet& u) {
        Jet w(u.s0_, u.order_);
        w.c_[0] = std::exp(u.value());
        for (int k = 1; k <= u.order_; ++k) {
            double acc = 0.0;
            for (int j = 1; j <= k; ++j) acc += j * u.coeff(j) * w.c_[static_cast<size_t>(k - j)];
            w.c_[static_cast<size_t>(k)] = acc / k;
        }
        return w;
    }

    friend Jet log(const Jet& u) {
        const double u0 = u.value();
        if (u0 <= 0.0) throw DomainError("log of nonpositive leading coefficient");
        Jet w(u.s0_, u.order_);
        w.c_[0] = std::log(u0);
        for (int k = 1; k <= u.order_; ++k) {
            double acc = k * u.coeff(k);
            for (int j = 1; j < k; ++j) acc -= j * w.c_[static_cast<size_t>(j)] * u.coeff(k - j);
            w.c_[static_cast<size_t>(k)] = acc / (k * u0);
        }
        return w;
    }

private:
    static int check_order(int order) {
        if (order < 0 || order > kMaxOrder) throw DomainError("jet order out of range [0," + std::to_string(kMaxOrder) + "]");
        return order;
    }

    // Result skeleton for a binary op: common basepoint, min order.
    static Jet aligned(const Jet& a, const Jet& b) {
        if (a.s0_ != b.s0_) throw DomainError("jet basepoints differ");
        return Jet(a.s0_, a.order_ < b.order_ ? a.order_ : b.order_);
    }

    static Jet powi(const Jet& u, int r) {
        Jet acc = constant(1.0, u.s0_, u.order_);
        for (int i = 0; i < r; ++i) acc = acc * u;
        return acc;
    }

    double s0_;
    int order_;
    std::array<double, kMaxOrder + 1> c_;
};

enum class JetOp : std::uint8_t { add, sub, mul, div };
enum class JetFn : std::uint8_t { pow, sqrt, exp, ln };

// Strict-contract entry points mirroring the operation table: both operands
// must share order and basepoint exactly.
inline Jet jet_var(double s0, int order) { return Jet::variable(s0, order); }

inline Jet jet_arith(const Jet& a, const Jet& b, JetOp op) {
    if (a.order() != b.order()) throw DomainError("jet_arith: orders differ");
    if (a.basepoint() != b.basepoint()) throw DomainError("jet_arith: basepoints differ");
    switch (op) {
        case JetOp::add: return a + b;
        case JetOp::sub: return a - b;
        case JetOp::mul: return a * b;
        case JetOp::div: return a / b;
    }
    throw DomainError("jet_arith: bad op");
}

inline Jet jet_elem(const Jet& a, JetFn fn, double exponent = 0.0) {
    switch (fn) {
        case JetFn::pow: return pow(a, exponent);
        case JetFn::sqrt: return sqrt(a);
        case JetFn::exp: return exp(a);
        case JetFn::ln: return log(a);
    }
    throw DomainError("jet_elem: bad fn");
}

struct FdEstimate {
    double value = 0.0;
    double error = 0.0;  // |D(h/2) - D(h)| / 3, the Richardson error indicator
};

// Central finite-difference estimate of f^(k)(s0), Richardson-extrapolated
// once. Test-side oracle for everything the jets compute.
FdEstimate jet_fd_check(const std::function<double(double)>& f, double s0, int k, double h);

}  // namespace abm
