// Adaptive integration with breakpoints (GSL QAGP / QAGIU)

#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qle::quad {

struct Tolerance {
    double rel{1e-8};
    double abs{1e-12};
    std::size_t max_panels{4000};
};

struct Result {
    double value{0.0};
    double error{0.0};
    std::size_t panels{0};
    std::size_t evaluations{0};
};

// Raised when the tolerance cannot be met within the panel budget.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

using Integrand = std::function<double(double)>;

// Integrates f over [points.front(), points.back()] with the interior points
// as forced panel edges. The last point may be +infinity; that segment is
// integrated separately on a mapped variable. Exceptions thrown by f
// propagate to the caller.
Result integrate(const Integrand& f, std::span<const double> points, const Tolerance& tol = {});

Result integrate(const Integrand& f, double a, double b, const Tolerance& tol = {});

// ∫_a^b f(x) cos(kx) dx for k > 0, with b possibly +∞. Uses a Clenshaw–Curtis
// rule weighted by cos(kx) on finite ranges and cycle-by-cycle summation with
// extrapolation on [a, ∞). On the semi-infinite range only tol.abs is used.
Result integrate_cosine(const Integrand& f, double a, double b, double k, const Tolerance& tol = {});

// Sorted, de-duplicated breakpoints clipped to [a, b], with a and b included.
std::vector<double> make_breakpoints(double a, double b, std::vector<double> interior);

inline constexpr double infinity = std::numeric_limits<double>::infinity();

} // namespace qle::quad
