#include "spinengine/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinengine {

Bracket make_bracket(const std::function<double(double)>& f, double lo, double hi) {
    if (!(lo < hi)) throw std::domain_error("make_bracket: need lo < hi");
    return Bracket{lo, hi, f(lo), f(hi)};
}

double golden_argmax(const std::function<double(double)>& f,
                     const Bracket& bracket, double tol) {
    if (!(bracket.lo < bracket.hi))
        throw std::domain_error("golden_argmax: degenerate bracket");
    if (!(tol > 0.0)) throw std::domain_error("golden_argmax: tol must be positive");

    constexpr double inv_phi = 0.6180339887498949;  // 1/golden ratio
    double lo = bracket.lo, hi = bracket.hi;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    const double x_best = f1 > f2 ? x1 : x2;
    const double f_best = f1 > f2 ? f1 : f2;

    // Unimodality guard: a denser sample beating the located maximum means
    // the bracket held more than one hump. The slack is relative to the
    // function's range over the bracket so a maximum near zero is not
    // penalized for the rounding of its own tails.
    const int sweep = 1000;
    double sweep_max = f_best, sweep_min = f_best;
    for (int i = 0; i <= sweep; ++i) {
        const double x = bracket.lo + (bracket.hi - bracket.lo) * i / sweep;
        const double value = f(x);
        sweep_max = std::max(sweep_max, value);
        sweep_min = std::min(sweep_min, value);
    }
    const double scale = std::max(std::abs(f_best), sweep_max - sweep_min);
    if (sweep_max > f_best + 1e-12 * scale)
        throw std::runtime_error(
            "golden_argmax: function is not unimodal on the bracket");
    return x_best;
}

double bisect_root(const std::function<double(double)>& f,
                   const Bracket& bracket, double tol) {
    if (!(bracket.lo < bracket.hi))
        throw std::domain_error("bisect_root: degenerate bracket");
    if (bracket.f_lo == 0.0) return bracket.lo;
    if (bracket.f_hi == 0.0) return bracket.hi;
    if (bracket.f_lo * bracket.f_hi > 0.0)
        throw std::domain_error("bisect_root: no sign change across bracket");

    double lo = bracket.lo, hi = bracket.hi;
    double f_lo = bracket.f_lo;
    while (hi - lo > tol) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid == lo || mid == hi) break;  // bracket narrower than spacing
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (f_lo * f_mid < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

double central_diff(const std::function<double(double)>& f, double x, double h) {
    if (!(h > 0.0)) throw std::domain_error("central_diff: h must be positive");
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double central_diff_richardson(const std::function<double(double)>& f,
                               double x, double h) {
    const double coarse = central_diff(f, x, h);
    const double fine = central_diff(f, x, 0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

}  // namespace spinengine
