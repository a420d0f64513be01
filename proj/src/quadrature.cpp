#include "qle/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <memory>
#include <sstream>

namespace qle::quad {

namespace {

struct Trampoline {
    const Integrand* fn;
    std::size_t evaluations{0};
    std::exception_ptr failure;

    static double call(double x, void* self) {
        auto* t = static_cast<Trampoline*>(self);
        ++t->evaluations;
        if (t->failure) return 0.0;
        try {
            const double v = (*t->fn)(x);
            return v;
        } catch (...) {
            t->failure = std::current_exception();
            return 0.0;
        }
    }
};

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

// GSL's default handler aborts; errors are reported through return codes instead.
void silence_gsl() {
    static const bool once = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)once;
}

// Roundoff detection is benign when the reported error still meets the request.
bool acceptable(int status, double value, double error, double abs_tol, double rel_tol) {
    if (status == GSL_SUCCESS) return true;
    return status == GSL_EROUND && error <= std::max(abs_tol, rel_tol * std::abs(value));
}

// A purely relative request tighter than 50 ulp is rejected by GSL before any work.
void check_tolerance(const Tolerance& tol, const char* who) {
    const bool ok = tol.rel > 0.0 && tol.abs >= 0.0 &&
                    (tol.abs > 0.0 || tol.rel >= 50.0 * std::numeric_limits<double>::epsilon());
    if (!ok) throw std::invalid_argument(std::string(who) + ": bad tolerance");
}

[[noreturn]] void fail(int status, double value, double error, std::size_t limit) {
    std::ostringstream msg;
    msg << "quadrature did not converge (" << gsl_strerror(status) << ", panel budget " << limit
        << "): estimate " << value << ", error bound " << error;
    throw QuadratureError(msg.str(), value, error);
}

} // namespace

std::vector<double> make_breakpoints(double a, double b, std::vector<double> interior) {
    std::vector<double> pts;
    pts.reserve(interior.size() + 2);
    pts.push_back(a);
    for (double x : interior) {
        if (x > a && x < b) pts.push_back(x);
    }
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

Result integrate(const Integrand& f, std::span<const double> points, const Tolerance& tol) {
    if (points.size() < 2) throw std::invalid_argument("integrate: need at least two points");
    check_tolerance(tol, "integrate");
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!(points[i] > points[i - 1])) throw std::invalid_argument("integrate: points must increase");
    }
    if (!std::isfinite(points.front())) throw std::invalid_argument("integrate: lower limit must be finite");
    silence_gsl();

    const bool has_tail = std::isinf(points.back());
    const std::size_t n_finite_pts = has_tail ? points.size() - 1 : points.size();
    const std::size_t limit = std::max<std::size_t>(tol.max_panels, n_finite_pts + 1);
    Workspace ws(gsl_integration_workspace_alloc(limit));
    if (!ws) throw std::bad_alloc();

    Trampoline tramp{&f, 0, nullptr};
    gsl_function fn{&Trampoline::call, &tramp};
    Result out;

    if (n_finite_pts >= 2) {
        std::vector<double> pts(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(n_finite_pts));
        double value = 0.0;
        double error = 0.0;
        const int status = gsl_integration_qagp(&fn, pts.data(), pts.size(), tol.abs, tol.rel, limit,
                                                ws.get(), &value, &error);
        if (tramp.failure) std::rethrow_exception(tramp.failure);
        if (!acceptable(status, value, error, tol.abs, tol.rel)) fail(status, value, error, limit);
        out.value += value;
        out.error += error;
        out.panels += ws->size;
    }
    if (has_tail) {
        // The tail is held to the tolerance of the whole integral.
        const double abs_tol = std::max(tol.abs, 0.5 * tol.rel * std::abs(out.value));
        double value = 0.0;
        double error = 0.0;
        const int status = gsl_integration_qagiu(&fn, points[n_finite_pts - 1], abs_tol, tol.rel, limit,
                                                 ws.get(), &value, &error);
        if (tramp.failure) std::rethrow_exception(tramp.failure);
        if (!acceptable(status, value, error, abs_tol, tol.rel)) {
            fail(status, out.value + value, out.error + error, limit);
        }
        out.value += value;
        out.error += error;
        out.panels += ws->size;
    }
    if (!std::isfinite(out.value)) {
        throw QuadratureError("non-finite integral", out.value, std::numeric_limits<double>::infinity());
    }
    out.evaluations = tramp.evaluations;
    return out;
}

Result integrate_cosine(const Integrand& f, double a, double b, double k, const Tolerance& tol) {
    if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("integrate_cosine: k must be positive");
    if (!std::isfinite(a) || !(b > a)) throw std::invalid_argument("integrate_cosine: need finite a < b");
    check_tolerance(tol, "integrate_cosine");
    silence_gsl();

    const std::size_t limit = std::max<std::size_t>(tol.max_panels, 64);
    Workspace ws(gsl_integration_workspace_alloc(limit));
    if (!ws) throw std::bad_alloc();
    Trampoline tramp{&f, 0, nullptr};
    gsl_function fn{&Trampoline::call, &tramp};
    constexpr std::size_t kLevels = 25;

    double value = 0.0;
    double error = 0.0;
    int status = GSL_SUCCESS;
    if (std::isinf(b)) {
        Workspace cycles(gsl_integration_workspace_alloc(limit));
        std::unique_ptr<gsl_integration_qawo_table, decltype(&gsl_integration_qawo_table_free)> table(
            gsl_integration_qawo_table_alloc(k, 1.0, GSL_INTEG_COSINE, kLevels), &gsl_integration_qawo_table_free);
        if (!cycles || !table) throw std::bad_alloc();
        const double abs_tol = tol.abs > 0.0 ? tol.abs : 1e-300;
        status = gsl_integration_qawf(&fn, a, abs_tol, limit, ws.get(), cycles.get(), table.get(), &value, &error);
    } else {
        std::unique_ptr<gsl_integration_qawo_table, decltype(&gsl_integration_qawo_table_free)> table(
            gsl_integration_qawo_table_alloc(k, b - a, GSL_INTEG_COSINE, kLevels), &gsl_integration_qawo_table_free);
        if (!table) throw std::bad_alloc();
        status = gsl_integration_qawo(&fn, a, tol.abs, tol.rel, limit, ws.get(), table.get(), &value, &error);
    }
    if (tramp.failure) std::rethrow_exception(tramp.failure);
    if (!acceptable(status, value, error, tol.abs, std::isinf(b) ? 0.0 : tol.rel)) fail(status, value, error, limit);
    Result out;
    out.value = value;
    out.error = error;
    out.panels = ws->size;
    out.evaluations = tramp.evaluations;
    return out;
}

Result integrate(const Integrand& f, double a, double b, const Tolerance& tol) {
    const std::array<double, 2> pts{a, b};
    return integrate(f, pts, tol);
}

} // namespace qle::quad
