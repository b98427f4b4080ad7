// Working-substance primitives for a two-level (spin-1/2) heat engine.
//
// Units: hbar = k_B = 1. The energy gap Delta = 2*mu*B carries arbitrary
// energy units, inverse temperatures carry 1/energy; every observable
// depends only on products beta*Delta and on ratios of gaps.
//
// Energy zero: ground state at 0, excited state at Delta, so the internal
// energy is U = Delta * P_excited.
//
// Sign convention (fixed once, used by every module): work and heat are
// signed from the system's perspective. Negative work means the system did
// work on the surroundings; positive heat means the system absorbed heat.

#pragma once

namespace spinengine {

// Instantaneous state of the working substance.
struct EnginePoint {
    double gap;          // level spacing Delta > 0
    double pop_excited;  // upper-level occupation probability, in (0, 1)
};

struct Reservoir {
    double inv_temp;  // beta > 0
};

enum class StepKind {
    AdiabaticChange,  // gap moves at frozen population, zero heat
    Equilibration     // population jumps to the Gibbs value at fixed gap, zero work
};

struct StepRecord {
    StepKind kind;
    double work;
    double heat;
    EnginePoint before;
    EnginePoint after;
};

// Raw logistic kernel 1/(1 + exp(beta_gap)). No domain checks; accepts
// beta_gap = 0 (degenerate levels, p = 1/2) and negative arguments.
// Evaluated overflow-free for any magnitude.
double excited_population_kernel(double beta_gap);

// Equilibrium excited-state population 1/(1 + exp(beta*gap)).
// Requires gap > 0 and res.inv_temp > 0; throws std::domain_error otherwise,
// including when beta*gap is so large the population underflows to zero.
double gibbs_population(Reservoir res, double gap);

// Work exchanged when the gap moves from gap_from to gap_to at frozen
// population p: p * (gap_to - gap_from). Requires 0 < p < 1.
double step_work(double pop, double gap_from, double gap_to);

// Heat exchanged when the population moves from pop_from to pop_to at fixed
// gap: gap * (pop_to - pop_from). Requires populations in (0, 1).
double step_heat(double gap, double pop_from, double pop_to);

// U = gap * pop_excited under the ground-state-at-zero convention.
double internal_energy(const EnginePoint& point);

// Shannon/Gibbs entropy of a two-level occupation, -p ln p - (1-p) ln(1-p).
double two_level_entropy(double pop_excited);

}  // namespace spinengine
