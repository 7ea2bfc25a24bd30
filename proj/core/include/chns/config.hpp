#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chns/forward.hpp"
#include "chns/optimizer.hpp"

namespace chns {

/// Carries every validation problem found in a config file, not just the first.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

  private:
    std::vector<std::string> errors_;
};

struct RunConfig {
    // [grid]
    std::size_t nx = 64, ny = 64;
    double lx = Grid::two_pi(), ly = Grid::two_pi();

    // [physics]
    double nu = 0.1;
    std::string kernel_type = "gaussian";  // gaussian | delta
    double kernel_sigma = 0.5;
    double kernel_strength = 5.0;
    bool synthetic_a = false;
    double synthetic_a_offset = 2.0;
    double synthetic_a_amp_x = 1.0;
    double synthetic_a_amp_y = 0.0;
    long synthetic_a_mode_x = 1;
    long synthetic_a_mode_y = 1;
    std::vector<double> potential_coeffs = {1.0, 0.0, -2.0, 0.0, 1.0};
    double potential_range = 2.0;

    // [time]
    double dt = 1e-3;
    double t_final = 0.25;
    std::optional<double> stabilization;
    std::size_t record_every = 1;

    // [initial]
    std::string phi_preset = "constant";  // constant | stripe | random
    double phi_value = 0.0;
    double phi_amplitude = 0.1;
    double stripe_width = 0.5;
    std::string u_preset = "zero";  // zero | taylor_green | random
    double u_amplitude = 1.0;

    // [targets]
    std::string targets_mode = "twin";  // twin | self | files
    double twin_amplitude = 0.5;
    double twin_k0 = 2.0;
    std::string targets_dir;

    // [optimizer]
    std::size_t max_iters = 50;
    double grad_tol = 1e-3;
    double armijo_c1 = 1e-4;
    double backtrack_rho = 0.5;
    double alpha = 1.0, beta = 1.0, gamma = 1.0;

    // [output]
    std::string out_dir = "out";
    std::uint64_t seed = 12345;

    /// Path the config was loaded from (copied into output directories).
    std::filesystem::path source_path;
};

/// Parse and fully validate a TOML-syntax config file. Throws ConfigError
/// listing every problem found (unknown keys, bad types, range violations,
/// missing referenced files).
RunConfig load_config(const std::filesystem::path& path);

GridPtr make_grid(const RunConfig& cfg);
Kernel make_kernel(const RunConfig& cfg, const GridPtr& grid);
Potential make_potential(const RunConfig& cfg);
SolverConfig make_solver_config(const RunConfig& cfg);
State make_initial_state(const RunConfig& cfg, const GridPtr& grid);
/// Deterministic known control for twin experiments (seeded by cfg.seed).
Control make_twin_control(const RunConfig& cfg, const GridPtr& grid);
OptimizerOptions make_optimizer_options(const RunConfig& cfg);

/// Everything a subcommand needs, assembled consistently from one config.
struct Problem {
    RunConfig cfg;
    GridPtr grid;
    Kernel kernel;
    Potential potential;
    SolverConfig solver;
    State init;
    TargetSpec targets;
    /// The known control behind twin-generated targets, when applicable.
    std::optional<Control> twin_control;
};

Problem build_problem(const RunConfig& cfg);

/// Copy the source config and a seed record into the output directory.
void record_run(const RunConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace chns
