// Omega-dot figure of merit: (2*eta - eta_carnot) * Q_hot / t, the trade-off
// between delivered and lost energy per unit cycle time.
//
// The closed-form track treats the cycle time t as continuous (n
// proportional to t, constant 1) and freezes the interior stroke populations
// at their three-subdivision reference values. Under that treatment
//
//     Q_hot(t) = q_rev + phi / t,      W_out(t) = w_rev - gamma / t,
//
// and omega_dot(t) = (2*W_out - eta_c*Q_hot)/t has a unique interior maximum
// whenever 2*gamma + eta_c*phi > 0. On corners derived from the adiabatic
// constraints, w_rev = eta_c * q_rev holds identically, which collapses the
// optimum to the transcribed optimal_time() expression and the efficiency at
// the optimum to eta_at_max_omega(eta_c, gamma/phi).

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinengine/cycle.hpp"

namespace spinengine {

// Thrown where a formula is evaluated at (or collapses onto) a genuine pole.
class singularity_error : public std::domain_error {
public:
    singularity_error(const std::string& what, double where)
        : std::domain_error(what), location_(where) {}
    double location() const { return location_; }

private:
    double location_;
};

// Gap-weighted population sums controlling the efficiency at maximum
// omega-dot. ratio = gamma / phi is the sole cycle-dependent parameter.
struct MeritInputs {
    double phi;         // (gap_a - gap_b) * (P_A + P_2 + P_4)
    double pi_;         // (gap_d - gap_c) * (P_C + P_2 + P_4)
    double gamma;       // pi_ - phi
    double ratio;       // gamma / phi
    double eta_carnot;
};

// Interior equilibrium populations of the hot stroke at the
// three-subdivision reference discretization.
struct ReferencePopulations {
    double p2;  // at gap_a - (gap_a - gap_b)/3
    double p4;  // at gap_a - 2(gap_a - gap_b)/3
};

// Fixed-population model coefficients; see the header comment.
struct OmegaModel {
    double q_rev;       // gap_b*P_B - gap_a*P_A
    double w_rev;       // (gap_b - gap_c)*P_B - (gap_a - gap_d)*P_A
    double phi;
    double gamma;
    double eta_carnot;
};

ReferencePopulations reference_populations(const CycleCorners& corners);
MeritInputs merit_inputs(const CycleCorners& corners);

// Sum of the cold-stroke interior equilibrium populations at the reference
// discretization (the P_7 + P_9 variant of the pi_ bracket). On derived
// corners it coincides with P_2 + P_4 because
// beta_c*(gap_c + k*delta') = beta_h*(gap_b + k*delta).
double cold_interior_population_sum(const CycleCorners& corners);

OmegaModel make_omega_model(const CycleCorners& corners);

double fixed_population_qhot(const OmegaModel& model, double t);
double fixed_population_wnet(const OmegaModel& model, double t);
double fixed_population_eta(const OmegaModel& model, double t);

// (2*eta(t) - eta_carnot) * Q_hot(t) / t. Requires t > 0.
double omega_dot(const OmegaModel& model, double t);
double omega_dot(const CycleCorners& corners, double t);

// Stationary cycle time of omega_dot, transcribed with the bracket structure
//   2*(2*[gamma bracket] + eta_c*phi)
//   / ((gap_b - gap_c)*P_B * (1 - (gap_a - gap_d)*P_A / ((gap_b - gap_c)*P_B))).
// Throws singularity_error when the denominator vanishes (collapsed cycle).
// The stationary point is the interior maximum exactly when both q_rev and
// 2*gamma + eta_c*phi are positive; otherwise omega_dot is monotone on t > 0
// and the cycle has no finite optimum.
double optimal_time(const CycleCorners& corners);

// eta_c * (2*eta_c + 3*r) / (3*eta_c + 4*r). Requires 0 < eta_carnot < 1;
// throws singularity_error exactly at the pole r = -(3/4)*eta_c.
double eta_at_max_omega(double eta_carnot, double ratio);

// 1 - sqrt(1 - eta_carnot). Requires 0 <= eta_carnot < 1.
double curzon_ahlborn(double eta_carnot);

// Carnot efficiency at which eta_at_max_omega(., ratio) crosses the
// Curzon-Ahlborn curve, by bracketed bisection on (0, 1); nullopt when no
// sign change exists. Requires ratio >= 0.
std::optional<double> ca_crossover(double ratio);

struct NegativeBranch {
    double zero;  // -(2/3)*eta_c, where eta_at_max_omega vanishes
    double pole;  // -(3/4)*eta_c, where it diverges
};
NegativeBranch negative_branch(double eta_carnot);

struct EfficiencyBounds {
    double lower;  // (2/3)*eta_c, reached as ratio -> 0
    double upper;  // (3/4)*eta_c, reached as ratio -> infinity
};
EfficiencyBounds efficiency_bounds(double eta_carnot);

struct MeritSample {
    double t;
    double omega_dot;
    double efficiency;
};

struct MeritProfile {
    std::vector<MeritSample> samples;   // log-spaced in t
    double t_opt_closed;                // optimal_time()
    double t_opt_numeric;               // golden-section argmax over the samples' span
    double eta_at_max;                  // fixed-population eta at t_opt_closed
};

MeritProfile sample_profile(const CycleCorners& corners, double t_min,
                            double t_max, int count);

// Nearest integer subdivision count for a continuous cycle time, floored at 1.
int subdivisions_for_time(double t);

}  // namespace spinengine
