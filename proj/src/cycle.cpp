#include "spinengine/cycle.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace spinengine {

namespace {

// Compensated (Kahan) accumulator; keeps stroke totals and full-cycle energy
// balances at rounding level even for very large subdivision counts.
class KahanSum {
public:
    void add(double x) {
        const double y = x - carry_;
        const double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

double stroke_gap(double gap_start, double gap_end, int k, int n) {
    if (k == n) return gap_end;  // land on the corner exactly
    return gap_start + (gap_end - gap_start) * (static_cast<double>(k) / n);
}

}  // namespace

void validate_spec(const CycleSpec& spec) {
    if (!(spec.gap_b > 0.0))
        throw std::domain_error("cycle spec: gap_b must be positive");
    if (!(spec.gap_a > spec.gap_b))
        throw std::domain_error("cycle spec: gap_a must exceed gap_b");
    if (!(spec.hot.inv_temp > 0.0))
        throw std::domain_error("cycle spec: beta_h must be positive");
    if (!(spec.cold.inv_temp >= spec.hot.inv_temp))
        throw std::domain_error("cycle spec: beta_c must be >= beta_h (hot reservoir hotter)");
    if (spec.subdivisions < 1)
        throw std::domain_error("cycle spec: subdivisions must be >= 1");
}

CycleCorners derive_corners(const CycleSpec& spec) {
    validate_spec(spec);
    const double ratio = spec.hot.inv_temp / spec.cold.inv_temp;
    const double gap_c = ratio * spec.gap_b;
    const double gap_d = ratio * spec.gap_a;
    const double pop_a = gibbs_population(spec.hot, spec.gap_a);
    const double pop_b = gibbs_population(spec.hot, spec.gap_b);
    // The adiabatic strokes freeze populations, so C carries P_B and D
    // carries P_A; with the gaps above these are also the cold-isotherm
    // equilibrium values.
    return CycleCorners{
        EnginePoint{spec.gap_a, pop_a},
        EnginePoint{spec.gap_b, pop_b},
        EnginePoint{gap_c, pop_b},
        EnginePoint{gap_d, pop_a},
        spec.hot,
        spec.cold,
    };
}

StrokeLedger simulate_isothermal_stroke(Reservoir res, double gap_start,
                                        double gap_end, int subdivisions) {
    if (!(gap_start > 0.0) || !(gap_end > 0.0))
        throw std::domain_error("isothermal stroke: gaps must be positive");
    if (subdivisions < 1)
        throw std::domain_error("isothermal stroke: subdivisions must be >= 1");

    StrokeLedger ledger;
    ledger.steps.reserve(2 * static_cast<std::size_t>(subdivisions));
    KahanSum work_sum, heat_sum;

    double gap = gap_start;
    double pop = gibbs_population(res, gap_start);
    for (int k = 1; k <= subdivisions; ++k) {
        const double next_gap = stroke_gap(gap_start, gap_end, k, subdivisions);

        const double work = pop * (next_gap - gap);
        ledger.steps.push_back(StepRecord{StepKind::AdiabaticChange, work, 0.0,
                                          EnginePoint{gap, pop},
                                          EnginePoint{next_gap, pop}});
        work_sum.add(work);

        const double next_pop = gibbs_population(res, next_gap);
        const double heat = next_gap * (next_pop - pop);
        ledger.steps.push_back(StepRecord{StepKind::Equilibration, 0.0, heat,
                                          EnginePoint{next_gap, pop},
                                          EnginePoint{next_gap, next_pop}});
        heat_sum.add(heat);

        gap = next_gap;
        pop = next_pop;
    }
    ledger.total_work = work_sum.value();
    ledger.total_heat = heat_sum.value();
    return ledger;
}

StepRecord simulate_adiabatic_stroke(const EnginePoint& from, double gap_to) {
    if (!(from.gap > 0.0) || !(gap_to > 0.0))
        throw std::domain_error("adiabatic stroke: gaps must be positive");
    if (!(from.pop_excited > 0.0 && from.pop_excited < 1.0))
        throw std::domain_error("adiabatic stroke: population must lie in (0, 1)");
    const double work = from.pop_excited * (gap_to - from.gap);
    return StepRecord{StepKind::AdiabaticChange, work, 0.0, from,
                      EnginePoint{gap_to, from.pop_excited}};
}

CycleResult simulate_cycle(const CycleSpec& spec) {
    const CycleCorners corners = derive_corners(spec);
    const int n = spec.subdivisions;

    const StrokeLedger hot =
        simulate_isothermal_stroke(spec.hot, corners.a.gap, corners.b.gap, n);
    const StepRecord to_cold = simulate_adiabatic_stroke(
        EnginePoint{corners.b.gap, hot.steps.back().after.pop_excited},
        corners.c.gap);
    const StrokeLedger cold =
        simulate_isothermal_stroke(spec.cold, corners.c.gap, corners.d.gap, n);
    const StepRecord to_hot = simulate_adiabatic_stroke(
        EnginePoint{corners.d.gap, cold.steps.back().after.pop_excited},
        corners.a.gap);

    KahanSum work_sum;
    work_sum.add(hot.total_work);
    work_sum.add(to_cold.work);
    work_sum.add(cold.total_work);
    work_sum.add(to_hot.work);

    CycleResult result;
    result.q_hot = hot.total_heat;
    result.q_cold = cold.total_heat;
    result.w_net = work_sum.value();
    result.is_engine = result.q_hot > 0.0;
    result.efficiency = result.q_hot != 0.0
                            ? -result.w_net / result.q_hot
                            : std::numeric_limits<double>::quiet_NaN();
    result.delta_step = (corners.a.gap - corners.b.gap) / n;
    result.delta_prime_step = (corners.d.gap - corners.c.gap) / n;
    result.hot_intermediate_pops.reserve(static_cast<std::size_t>(n) - 1);
    result.cold_intermediate_pops.reserve(static_cast<std::size_t>(n) - 1);
    for (int k = 0; k + 1 < n; ++k) {
        result.hot_intermediate_pops.push_back(
            hot.steps[2 * static_cast<std::size_t>(k) + 1].after.pop_excited);
        result.cold_intermediate_pops.push_back(
            cold.steps[2 * static_cast<std::size_t>(k) + 1].after.pop_excited);
    }
    return result;
}

double quasistatic_heat(Reservoir res, double gap_start, double gap_end) {
    if (!(gap_start > 0.0) || !(gap_end > 0.0))
        throw std::domain_error("quasistatic_heat: gaps must be positive");
    const double s_start = two_level_entropy(gibbs_population(res, gap_start));
    const double s_end = two_level_entropy(gibbs_population(res, gap_end));
    return (s_end - s_start) / res.inv_temp;
}

}  // namespace spinengine
