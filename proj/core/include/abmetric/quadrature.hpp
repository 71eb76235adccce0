#pragma once

#include <functional>
#include <vector>

namespace abm {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n; accurate to
// machine precision for the orders used here. Results are cached per order.
const QuadratureRule& gauss_legendre(int npoints);

// Integrate f over [a, b] with an npoints Gauss-Legendre rule.
double integrate(const std::function<double(double)>& f, double a, double b, int npoints = 64);

}  // namespace abm
