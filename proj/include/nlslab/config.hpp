#pragma once
#include <cstdint>
#include <string>

namespace nlslab {

// Flat "section.key = value" experiment description. Every field has the
// default shown in configs/reference.cfg; unknown keys are rejected by name.
struct ExperimentConfig {
    struct {
        int n = 16384;
        double L = 200.0;
    } grid;
    struct {
        double dt = 1e-3;
        double T = 80.0;
        double store_every = 0.5;
    } time;
    struct {
        double omega0 = 1.0;
        double gamma0 = 0.0;
        double p0 = 0.0;
        double sigma0 = 0.0;
    } soliton;
    struct {
        std::string kind = "gaussian"; // or "none"
        double amplitude = 0.05;
        double width = 3.0;
        double center = 1.0;
        double phase = 0.6;
    } perturbation;
    struct {
        double xi_max = 12.0;
        int n_xi = 2049;
    } frozen;
    struct {
        double newton = 1e-10;
        double boundary_monitor = 1e-6;
    } tolerances;
    std::uint64_t seed = 20260822;
};

ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

// validation shared by the parser and programmatic construction
void validate(const ExperimentConfig& cfg);

} // namespace nlslab
