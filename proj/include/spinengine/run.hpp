// Batch front end: resolved run configurations and the document builders
// behind the CLI subcommands. Builders return complete documents as strings
// so identical configs produce byte-identical output.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spinengine {

class config_error : public std::runtime_error {
public:
    config_error(std::string field, const std::string& what)
        : std::runtime_error(what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class RunMode { cycle, fig2, fig3, fig4, validate };

struct RunConfig {
    RunMode mode = RunMode::cycle;

    // cycle parameters
    double gap_a = 4.0;
    double gap_b = 2.0;
    double beta_h = 0.5;
    double beta_c = 1.0;
    int subdivisions = 3;

    // sweep parameters; empty/zero fields fall back to per-mode defaults
    std::vector<double> eta_c_values;  // fig2: grid rows; fig3/fig4: one curve each
    std::vector<double> ratios;        // fig2: one eta_omega column per ratio
    double r_min = 0.0;
    double r_max = 0.0;
    int r_steps = 0;
    double pole_eps_factor = 1e-6;     // exclusion half-width = factor * eta_c

    std::string out_path;              // empty -> "<mode>.csv"

    // validate-mode negative control: corrupt the cold-stroke step sign
    // inside the closure check to prove the check can fail
    bool corrupt_delta_prime = false;
};

// Fills every defaulted field for the given mode; validates and throws
// config_error naming the offending field.
RunConfig resolve(RunConfig config);

struct Document {
    std::string csv;
    std::string meta;  // sidecar content; empty when the mode emits none
};

// Locale-independent float formatting: %.17g semantics, "NaN" for NaN.
std::string format_csv_double(double value);

// Shortest round-trip formatting, used for column labels and report text.
std::string format_compact_double(double value);

Document run_cycle(const RunConfig& config);
Document run_fig2(const RunConfig& config);
Document run_fig3(const RunConfig& config);
Document run_fig4(const RunConfig& config);

struct ValidationOutcome {
    std::string report;
    bool passed;
};

ValidationOutcome run_validate(const RunConfig& config);

}  // namespace spinengine
