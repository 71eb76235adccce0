#include <abmetric/jet.hpp>

namespace abm {

namespace {

// Second-order central stencils for f^(k), k = 1..4.
double central(const std::function<double(double)>& f, double x, int k, double h) {
    switch (k) {
        case 0:
            return f(x);
        case 1:
            return (f(x + h) - f(x - h)) / (2 * h);
        case 2:
            return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
        case 3:
            return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
        case 4:
            return (f(x + 2 * h) - 4 * f(x + h) + 6 * f(x) - 4 * f(x - h) + f(x - 2 * h)) / (h * h * h * h);
        default:
            throw DomainError("jet_fd_check supports k <= 4");
    }
}

}  // namespace

FdEstimate jet_fd_check(const std::function<double(double)>& f, double s0, int k, double h) {
    if (k < 0 || k > 4) throw DomainError("jet_fd_check supports k <= 4");
    if (!(h > 0.0)) throw DomainError("jet_fd_check needs h > 0");
    const double coarse = central(f, s0, k, h);
    const double fine = central(f, s0, k, h / 2);
    FdEstimate e;
    e.error = std::abs(fine - coarse) / 3.0;
    e.value = fine + (fine - coarse) / 3.0;  // O(h^4)
    return e;
}

}  // namespace abm
