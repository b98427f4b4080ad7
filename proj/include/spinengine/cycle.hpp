// Four-stroke finite-time cycle: hot isothermal A->B, adiabatic B->C,
// cold isothermal C->D, adiabatic D->A.
//
// Each isothermal stroke is discretized into n sub-steps; one sub-step is an
// abrupt gap change at frozen population followed by an instantaneous
// equilibration to the Gibbs population at the new gap. The adiabatic
// strokes swap reservoirs at frozen population, which pins the cold-side
// corner gaps to Delta_C = (beta_h/beta_c) * Delta_B and
// Delta_D = (beta_h/beta_c) * Delta_A.

#pragma once

#include <vector>

#include "spinengine/thermo.hpp"

namespace spinengine {

struct CycleSpec {
    double gap_a;      // hot-stroke starting gap, gap_a > gap_b > 0
    double gap_b;      // hot-stroke final gap
    Reservoir hot;     // beta_h
    Reservoir cold;    // beta_c >= beta_h (equality is the degenerate limit)
    int subdivisions;  // n >= 1 sub-steps per isothermal stroke
};

struct CycleCorners {
    EnginePoint a, b, c, d;
    Reservoir hot, cold;

    double eta_carnot() const { return 1.0 - hot.inv_temp / cold.inv_temp; }
};

struct StrokeLedger {
    std::vector<StepRecord> steps;  // alternating AdiabaticChange / Equilibration
    double total_work = 0.0;
    double total_heat = 0.0;
};

struct CycleResult {
    double q_hot;            // heat absorbed on A->B (positive for an engine)
    double q_cold;           // heat exchanged on C->D (negative for an engine)
    double w_net;            // signed net work, negative when the engine outputs work
    double efficiency;       // -w_net / q_hot
    double delta_step;       // (gap_a - gap_b) / n
    double delta_prime_step; // (gap_d - gap_c) / n
    std::vector<double> hot_intermediate_pops;   // n-1 interior equilibrated populations
    std::vector<double> cold_intermediate_pops;
    bool is_engine;          // false when q_hot <= 0 (non-engine regime)
};

// Throws std::domain_error naming the offending field.
void validate_spec(const CycleSpec& spec);

CycleCorners derive_corners(const CycleSpec& spec);

// Produces 2n StepRecords, starting with an AdiabaticChange and ending with
// an Equilibration. The stroke begins from the equilibrium population at
// gap_start. gap_start == gap_end yields an all-zero ledger.
StrokeLedger simulate_isothermal_stroke(Reservoir res, double gap_start,
                                        double gap_end, int subdivisions);

// Single abrupt gap change at frozen population; zero heat.
StepRecord simulate_adiabatic_stroke(const EnginePoint& from, double gap_to);

CycleResult simulate_cycle(const CycleSpec& spec);

// Reversible-isotherm heat T * (S_end - S_start) between the equilibrium
// states at the two gaps; the n -> infinity limit of the discrete stroke heat.
double quasistatic_heat(Reservoir res, double gap_start, double gap_end);

}  // namespace spinengine
