#include "spinengine/run.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spinengine/cycle.hpp"
#include "spinengine/merit.hpp"

namespace spinengine {

namespace {

const char* mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::cycle: return "cycle";
        case RunMode::fig2: return "fig2";
        case RunMode::fig3: return "fig3";
        case RunMode::fig4: return "fig4";
        case RunMode::validate: return "validate";
    }
    return "unknown";
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_compact_double(values[i]);
    }
    return out;
}

CycleSpec spec_from(const RunConfig& config) {
    return CycleSpec{config.gap_a, config.gap_b, Reservoir{config.beta_h},
                     Reservoir{config.beta_c}, config.subdivisions};
}

// Shared config block at the top of every sidecar file.
void write_config_block(std::ostringstream& meta, const RunConfig& config) {
    meta << "mode = " << mode_name(config.mode) << '\n';
    meta << "gap_a = " << format_compact_double(config.gap_a) << '\n';
    meta << "gap_b = " << format_compact_double(config.gap_b) << '\n';
    meta << "beta_h = " << format_compact_double(config.beta_h) << '\n';
    meta << "beta_c = " << format_compact_double(config.beta_c) << '\n';
    meta << "n = " << config.subdivisions << '\n';
    meta << "eta_c_values = " << join(config.eta_c_values) << '\n';
    meta << "ratios = " << join(config.ratios) << '\n';
    meta << "r_min = " << format_compact_double(config.r_min) << '\n';
    meta << "r_max = " << format_compact_double(config.r_max) << '\n';
    meta << "r_steps = " << config.r_steps << '\n';
    meta << "pole_eps_factor = " << format_compact_double(config.pole_eps_factor)
         << '\n';
    meta << "out = " << config.out_path << '\n';
}

}  // namespace

std::string format_csv_double(double value) {
    if (std::isnan(value)) return "NaN";
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_compact_double(double value) {
    if (std::isnan(value)) return "NaN";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

RunConfig resolve(RunConfig config) {
    if (!(config.gap_b > 0.0))
        throw config_error("gap-b", "gap-b must be positive");
    if (!(config.gap_a > config.gap_b))
        throw config_error("gap-a", "gap-a must exceed gap-b");
    if (!(config.beta_h > 0.0))
        throw config_error("beta-h", "beta-h must be positive");
    if (!(config.beta_c >= config.beta_h))
        throw config_error("beta-c", "beta-c must be >= beta-h");
    if (config.subdivisions < 1)
        throw config_error("n", "n must be >= 1");
    if (config.subdivisions > 10'000'000)
        throw config_error("n", "n above 10000000 is not supported");
    if (!(config.pole_eps_factor > 0.0))
        throw config_error("pole-eps", "pole-eps must be positive");

    if (config.eta_c_values.empty()) {
        if (config.mode == RunMode::fig2) {
            for (int i = 1; i <= 99; ++i) config.eta_c_values.push_back(i / 100.0);
        } else {
            config.eta_c_values = {0.4, 0.6};
        }
    }
    for (double eta : config.eta_c_values)
        if (!(eta > 0.0 && eta < 1.0))
            throw config_error("eta-c", "eta-c values must lie in (0, 1)");

    if (config.mode == RunMode::fig2) {
        if (config.ratios.empty()) config.ratios = {0.0, 0.5, 2.0, 10.0};
        for (double r : config.ratios)
            if (!(r >= 0.0))
                throw config_error("r", "fig2 ratios must be non-negative");
    }

    if (config.mode == RunMode::fig3) {
        if (config.r_min == 0.0 && config.r_max == 0.0) {
            config.r_min = 1e-3;
            config.r_max = 1e3;
        }
        if (config.r_steps == 0) config.r_steps = 60;
        if (!(config.r_min > 0.0))
            throw config_error("r-min", "fig3 r-min must be positive");
        if (!(config.r_max > config.r_min))
            throw config_error("r-max", "r-max must exceed r-min");
        if (config.r_steps < 2)
            throw config_error("r-steps", "r-steps must be >= 2");
    }

    if (config.mode == RunMode::fig4) {
        if (config.r_min == 0.0 && config.r_max == 0.0) {
            double eta_max = 0.0;
            for (double eta : config.eta_c_values) eta_max = std::max(eta_max, eta);
            config.r_min = -1.2 * 0.75 * eta_max;
            config.r_max = -1e-3;
        }
        if (config.r_steps == 0) config.r_steps = 400;
        if (!(config.r_max < 0.0))
            throw config_error("r-max", "fig4 r-max must be negative");
        if (!(config.r_min < config.r_max))
            throw config_error("r-min", "r-min must be below r-max");
        if (config.r_steps < 2)
            throw config_error("r-steps", "r-steps must be >= 2");
    }

    if (config.out_path.empty())
        config.out_path = std::string(mode_name(config.mode)) + ".csv";
    return config;
}

Document run_cycle(const RunConfig& raw) {
    const RunConfig config = resolve(raw);
    const CycleSpec spec = spec_from(config);
    const CycleCorners corners = derive_corners(spec);

    struct NamedStroke {
        const char* name;
        StrokeLedger ledger;
    };
    std::vector<NamedStroke> strokes;
    strokes.push_back({"hot_isothermal",
                       simulate_isothermal_stroke(spec.hot, corners.a.gap,
                                                  corners.b.gap, spec.subdivisions)});
    StrokeLedger to_cold;
    to_cold.steps.push_back(simulate_adiabatic_stroke(
        EnginePoint{corners.b.gap,
                    strokes.back().ledger.steps.back().after.pop_excited},
        corners.c.gap));
    to_cold.total_work = to_cold.steps.back().work;
    strokes.push_back({"hot_to_cold_adiabatic", std::move(to_cold)});
    strokes.push_back({"cold_isothermal",
                       simulate_isothermal_stroke(spec.cold, corners.c.gap,
                                                  corners.d.gap, spec.subdivisions)});
    StrokeLedger to_hot;
    to_hot.steps.push_back(simulate_adiabatic_stroke(
        EnginePoint{corners.d.gap,
                    strokes[2].ledger.steps.back().after.pop_excited},
        corners.a.gap));
    to_hot.total_work = to_hot.steps.back().work;
    strokes.push_back({"cold_to_hot_adiabatic", std::move(to_hot)});

    std::ostringstream csv;
    csv << "stroke,step_index,kind,gap_before,gap_after,pop_before,pop_after,work,heat\n";
    for (const NamedStroke& stroke : strokes) {
        for (std::size_t i = 0; i < stroke.ledger.steps.size(); ++i) {
            const StepRecord& step = stroke.ledger.steps[i];
            csv << stroke.name << ',' << i << ','
                << (step.kind == StepKind::AdiabaticChange ? "adiabatic_change"
                                                           : "equilibration")
                << ',' << format_csv_double(step.before.gap) << ','
                << format_csv_double(step.after.gap) << ','
                << format_csv_double(step.before.pop_excited) << ','
                << format_csv_double(step.after.pop_excited) << ','
                << format_csv_double(step.work) << ','
                << format_csv_double(step.heat) << '\n';
        }
    }

    const CycleResult result = simulate_cycle(spec);
    csv << "q_hot,q_cold,w_net,efficiency,eta_carnot\n";
    csv << format_csv_double(result.q_hot) << ','
        << format_csv_double(result.q_cold) << ','
        << format_csv_double(result.w_net) << ','
        << format_csv_double(result.efficiency) << ','
        << format_csv_double(corners.eta_carnot()) << '\n';
    return Document{csv.str(), ""};
}

Document run_fig2(const RunConfig& raw) {
    const RunConfig config = resolve(raw);

    std::ostringstream csv;
    csv << "eta_c,eta_ca";
    for (double r : config.ratios) csv << ",eta_omega_r" << format_compact_double(r);
    csv << '\n';
    for (double eta_c : config.eta_c_values) {
        csv << format_csv_double(eta_c) << ','
            << format_csv_double(curzon_ahlborn(eta_c));
        for (double r : config.ratios)
            csv << ',' << format_csv_double(eta_at_max_omega(eta_c, r));
        csv << '\n';
    }

    std::ostringstream meta;
    write_config_block(meta, config);
    std::vector<std::pair<double, double>> crossings;
    for (double r : config.ratios) {
        const std::optional<double> cross = ca_crossover(r);
        meta << "crossover[r=" << format_compact_double(r) << "] = "
             << (cross ? format_csv_double(*cross) : std::string("none")) << '\n';
        if (cross) crossings.emplace_back(r, *cross);
    }
    std::sort(crossings.begin(), crossings.end());
    bool increasing = crossings.size() >= 2, decreasing = increasing;
    for (std::size_t i = 1; i < crossings.size(); ++i) {
        increasing = increasing && crossings[i].second > crossings[i - 1].second;
        decreasing = decreasing && crossings[i].second < crossings[i - 1].second;
    }
    meta << "crossover_direction = "
         << (crossings.size() < 2 ? "undetermined"
             : increasing         ? "increases_with_ratio"
             : decreasing         ? "decreases_with_ratio"
                                  : "non_monotonic")
         << '\n';
    return Document{csv.str(), meta.str()};
}

Document run_fig3(const RunConfig& raw) {
    const RunConfig config = resolve(raw);

    std::ostringstream csv;
    csv << 'r';
    for (double eta_c : config.eta_c_values)
        csv << ",eta_omega_etac" << format_compact_double(eta_c);
    csv << '\n';

    const double log_lo = std::log(config.r_min);
    const double log_step =
        (std::log(config.r_max) - log_lo) / (config.r_steps - 1);
    for (int i = 0; i < config.r_steps; ++i) {
        const double r = i == 0                  ? config.r_min
                         : i + 1 == config.r_steps ? config.r_max
                                                   : std::exp(log_lo + log_step * i);
        csv << format_csv_double(r);
        for (double eta_c : config.eta_c_values)
            csv << ',' << format_csv_double(eta_at_max_omega(eta_c, r));
        csv << '\n';
    }

    std::ostringstream meta;
    write_config_block(meta, config);
    meta << "r_spacing = log\n";
    return Document{csv.str(), meta.str()};
}

Document run_fig4(const RunConfig& raw) {
    const RunConfig config = resolve(raw);

    std::ostringstream csv;
    csv << 'r';
    for (double eta_c : config.eta_c_values)
        csv << ",eta_omega_etac" << format_compact_double(eta_c);
    csv << '\n';

    const double step =
        (config.r_max - config.r_min) / (config.r_steps - 1);
    for (int i = 0; i < config.r_steps; ++i) {
        const double r = i == 0                    ? config.r_min
                         : i + 1 == config.r_steps ? config.r_max
                                                   : config.r_min + step * i;
        csv << format_csv_double(r);
        for (double eta_c : config.eta_c_values) {
            const double pole = negative_branch(eta_c).pole;
            const double eps = config.pole_eps_factor * eta_c;
            const bool excluded = std::abs(r - pole) < eps;
            csv << ','
                << (excluded
                        ? "NaN"
                        : format_csv_double(eta_at_max_omega(eta_c, r)));
        }
        csv << '\n';
    }

    std::ostringstream meta;
    write_config_block(meta, config);
    meta << "r_spacing = linear\n";
    for (double eta_c : config.eta_c_values) {
        const NegativeBranch branch = negative_branch(eta_c);
        meta << "zero[eta_c=" << format_compact_double(eta_c)
             << "] = " << format_csv_double(branch.zero) << '\n';
        meta << "pole[eta_c=" << format_compact_double(eta_c)
             << "] = " << format_csv_double(branch.pole) << '\n';
    }
    return Document{csv.str(), meta.str()};
}

}  // namespace spinengine
