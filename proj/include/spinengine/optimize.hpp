// Derivative-free one-dimensional optimization and root finding.
//
// Deliberately self-contained: nothing in here knows about the engine model,
// so these routines can serve as black-box checks of any closed form.

#pragma once

#include <functional>

namespace spinengine {

struct Bracket {
    double lo, hi;
    double f_lo, f_hi;
};

// Evaluates f at both ends. Requires lo < hi.
Bracket make_bracket(const std::function<double(double)>& f, double lo, double hi);

// Golden-section maximizer. Assumes f is unimodal on the bracket; after
// convergence the bracket is swept with 1000 uniform samples and a sample
// exceeding the located maximum (beyond a 1e-12 relative slack) raises
// std::runtime_error rather than returning a local optimum.
double golden_argmax(const std::function<double(double)>& f,
                     const Bracket& bracket, double tol);

// Bisection to |hi - lo| <= tol. Requires a sign change across the bracket
// (an exact zero at an endpoint is returned directly).
double bisect_root(const std::function<double(double)>& f,
                   const Bracket& bracket, double tol);

// (f(x+h) - f(x-h)) / (2h).
double central_diff(const std::function<double(double)>& f, double x, double h);

// Richardson-extrapolated central difference, (4*D(h/2) - D(h)) / 3.
double central_diff_richardson(const std::function<double(double)>& f,
                               double x, double h);

}  // namespace spinengine
