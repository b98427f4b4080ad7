#include "spinengine/thermo.hpp"

#include <cmath>
#include <stdexcept>

namespace spinengine {

double excited_population_kernel(double beta_gap) {
    // Branch keeps the exponential argument non-positive so large beta*gap
    // underflows gracefully instead of overflowing.
    if (beta_gap >= 0.0) {
        const double e = std::exp(-beta_gap);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(beta_gap));
}

double gibbs_population(Reservoir res, double gap) {
    if (!(gap > 0.0))
        throw std::domain_error("gibbs_population: gap must be positive");
    if (!(res.inv_temp > 0.0))
        throw std::domain_error("gibbs_population: inverse temperature must be positive");
    const double p = excited_population_kernel(res.inv_temp * gap);
    if (p == 0.0)
        throw std::domain_error(
            "gibbs_population: beta*gap too large, excited population underflows");
    return p;
}

double step_work(double pop, double gap_from, double gap_to) {
    if (!(pop > 0.0 && pop < 1.0))
        throw std::domain_error("step_work: population must lie in (0, 1)");
    return pop * (gap_to - gap_from);
}

double step_heat(double gap, double pop_from, double pop_to) {
    if (!(pop_from > 0.0 && pop_from < 1.0) || !(pop_to > 0.0 && pop_to < 1.0))
        throw std::domain_error("step_heat: populations must lie in (0, 1)");
    return gap * (pop_to - pop_from);
}

double internal_energy(const EnginePoint& point) {
    return point.gap * point.pop_excited;
}

double two_level_entropy(double pop_excited) {
    if (!(pop_excited > 0.0 && pop_excited < 1.0))
        throw std::domain_error("two_level_entropy: population must lie in (0, 1)");
    return -pop_excited * std::log(pop_excited)
           - (1.0 - pop_excited) * std::log(1.0 - pop_excited);
}

}  // namespace spinengine
