#include "spinengine/merit.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "spinengine/optimize.hpp"

namespace spinengine {

namespace {

void require_eta_carnot(double eta_carnot) {
    if (!(eta_carnot > 0.0 && eta_carnot < 1.0))
        throw std::domain_error("eta_carnot must lie in (0, 1)");
}

}  // namespace

ReferencePopulations reference_populations(const CycleCorners& corners) {
    const double delta = (corners.a.gap - corners.b.gap) / 3.0;
    return ReferencePopulations{
        gibbs_population(corners.hot, corners.a.gap - delta),
        gibbs_population(corners.hot, corners.a.gap - 2.0 * delta),
    };
}

MeritInputs merit_inputs(const CycleCorners& corners) {
    const ReferencePopulations ref = reference_populations(corners);
    const double interior = ref.p2 + ref.p4;
    const double phi = (corners.a.gap - corners.b.gap)
                       * (corners.a.pop_excited + interior);
    const double pi = (corners.d.gap - corners.c.gap)
                      * (corners.c.pop_excited + interior);
    const double gamma = pi - phi;
    return MeritInputs{phi, pi, gamma, phi != 0.0 ? gamma / phi : 0.0,
                       corners.eta_carnot()};
}

double cold_interior_population_sum(const CycleCorners& corners) {
    const double delta_prime = (corners.d.gap - corners.c.gap) / 3.0;
    return gibbs_population(corners.cold, corners.c.gap + delta_prime)
           + gibbs_population(corners.cold, corners.c.gap + 2.0 * delta_prime);
}

OmegaModel make_omega_model(const CycleCorners& corners) {
    const MeritInputs in = merit_inputs(corners);
    const double q_rev = corners.b.gap * corners.b.pop_excited
                         - corners.a.gap * corners.a.pop_excited;
    const double w_rev = (corners.b.gap - corners.c.gap) * corners.b.pop_excited
                         - (corners.a.gap - corners.d.gap) * corners.a.pop_excited;
    return OmegaModel{q_rev, w_rev, in.phi, in.gamma, in.eta_carnot};
}

double fixed_population_qhot(const OmegaModel& model, double t) {
    if (!(t > 0.0)) throw std::domain_error("fixed_population_qhot: t must be positive");
    return model.q_rev + model.phi / t;
}

double fixed_population_wnet(const OmegaModel& model, double t) {
    if (!(t > 0.0)) throw std::domain_error("fixed_population_wnet: t must be positive");
    return model.w_rev - model.gamma / t;
}

double fixed_population_eta(const OmegaModel& model, double t) {
    return fixed_population_wnet(model, t) / fixed_population_qhot(model, t);
}

double omega_dot(const OmegaModel& model, double t) {
    if (!(t > 0.0)) throw std::domain_error("omega_dot: t must be positive");
    const double q = fixed_population_qhot(model, t);
    const double eta = fixed_population_wnet(model, t) / q;
    return (2.0 * eta - model.eta_carnot) * q / t;
}

double omega_dot(const CycleCorners& corners, double t) {
    return omega_dot(make_omega_model(corners), t);
}

double optimal_time(const CycleCorners& corners) {
    const ReferencePopulations ref = reference_populations(corners);
    const double interior = ref.p2 + ref.p4;
    const double span_cold = corners.d.gap - corners.c.gap;
    const double span_hot = corners.a.gap - corners.b.gap;

    const double gamma_bracket = span_cold * corners.c.pop_excited
                                 - span_hot * corners.a.pop_excited
                                 + (span_cold - span_hot) * interior;
    const double phi = span_hot * (corners.a.pop_excited + interior);
    const double numerator =
        2.0 * (2.0 * gamma_bracket + corners.eta_carnot() * phi);

    const double lead = (corners.b.gap - corners.c.gap) * corners.b.pop_excited;
    const double denominator =
        lead * (1.0 - (corners.a.gap - corners.d.gap) * corners.a.pop_excited / lead);
    if (denominator == 0.0 || !std::isfinite(denominator))
        throw singularity_error(
            "optimal_time: collapsed cycle, optimal-time denominator vanishes",
            denominator);
    return numerator / denominator;
}

double eta_at_max_omega(double eta_carnot, double ratio) {
    require_eta_carnot(eta_carnot);
    const double denominator = 3.0 * eta_carnot + 4.0 * ratio;
    if (denominator == 0.0)
        throw singularity_error("eta_at_max_omega: ratio sits on the pole",
                                -0.75 * eta_carnot);
    return eta_carnot * (2.0 * eta_carnot + 3.0 * ratio) / denominator;
}

double curzon_ahlborn(double eta_carnot) {
    if (!(eta_carnot >= 0.0 && eta_carnot < 1.0))
        throw std::domain_error("curzon_ahlborn: eta_carnot must lie in [0, 1)");
    return 1.0 - std::sqrt(1.0 - eta_carnot);
}

std::optional<double> ca_crossover(double ratio) {
    if (!(ratio >= 0.0))
        throw std::domain_error("ca_crossover: ratio must be non-negative");
    const auto gap = [ratio](double eta_c) {
        return eta_at_max_omega(eta_c, ratio) - curzon_ahlborn(eta_c);
    };
    const Bracket bracket = make_bracket(gap, 1e-9, 1.0 - 1e-9);
    if (bracket.f_lo * bracket.f_hi > 0.0) return std::nullopt;
    return bisect_root(gap, bracket, 1e-12);
}

NegativeBranch negative_branch(double eta_carnot) {
    require_eta_carnot(eta_carnot);
    return NegativeBranch{-(2.0 / 3.0) * eta_carnot, -0.75 * eta_carnot};
}

EfficiencyBounds efficiency_bounds(double eta_carnot) {
    require_eta_carnot(eta_carnot);
    return EfficiencyBounds{(2.0 / 3.0) * eta_carnot, 0.75 * eta_carnot};
}

MeritProfile sample_profile(const CycleCorners& corners, double t_min,
                            double t_max, int count) {
    if (!(t_min > 0.0 && t_max > t_min))
        throw std::domain_error("sample_profile: need 0 < t_min < t_max");
    if (count < 3)
        throw std::domain_error("sample_profile: need at least 3 samples");

    const OmegaModel model = make_omega_model(corners);
    MeritProfile profile;
    profile.samples.reserve(static_cast<std::size_t>(count));
    const double log_lo = std::log(t_min);
    const double log_step = (std::log(t_max) - log_lo) / (count - 1);
    std::size_t best = 0;
    for (int i = 0; i < count; ++i) {
        const double t = std::exp(log_lo + log_step * i);
        profile.samples.push_back(
            MeritSample{t, omega_dot(model, t), fixed_population_eta(model, t)});
        if (profile.samples[i].omega_dot > profile.samples[best].omega_dot)
            best = static_cast<std::size_t>(i);
    }

    profile.t_opt_closed = optimal_time(corners);
    profile.eta_at_max = profile.t_opt_closed > 0.0
                             ? fixed_population_eta(model, profile.t_opt_closed)
                             : std::numeric_limits<double>::quiet_NaN();

    if (best == 0 || best + 1 == profile.samples.size()) {
        // maximum sits on the sampled boundary: no interior optimum to refine
        profile.t_opt_numeric = profile.samples[best].t;
    } else {
        const auto f = [&model](double t) { return omega_dot(model, t); };
        const Bracket bracket =
            make_bracket(f, profile.samples[best - 1].t, profile.samples[best + 1].t);
        profile.t_opt_numeric =
            golden_argmax(f, bracket, 1e-10 * (bracket.hi - bracket.lo));
    }
    return profile;
}

int subdivisions_for_time(double t) {
    if (!(t > 0.0)) throw std::domain_error("subdivisions_for_time: t must be positive");
    constexpr long long max_n = std::numeric_limits<int>::max();
    const long long n = std::llround(std::min(t, static_cast<double>(max_n)));
    return n < 1 ? 1 : static_cast<int>(n);
}

}  // namespace spinengine
