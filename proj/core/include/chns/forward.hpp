#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "chns/control.hpp"
#include "chns/physics.hpp"

namespace chns {

struct SolverConfig {
    double nu = 0.1;        ///< kinematic viscosity, > 0
    double dt = 1e-3;       ///< fixed time step, > 0
    double t_final = 0.25;  ///< horizon T, > 0
    /// IMEX stabilization shift; unset selects max(0, max|F''| - mean(a)).
    std::optional<double> stabilization;
    /// snapshot persistence stride (unused by the in-memory trajectory)
    std::size_t record_every = 1;
    /// external forcing h, one slice per step; empty means h = 0
    std::optional<Control> forcing;

    std::size_t n_steps() const;
    void validate() const;
    double stabilization_for(const Kernel& kernel, const Potential& potential) const;
};

struct State {
    VectorField u;
    ScalarField phi;
    double t = 0.0;
};

/// One diagnostics row per stored snapshot; fixed CSV column order
/// t, energy, mass, enstrophy, grad_mu_sq, max_speed.
struct DiagnosticsRow {
    double t = 0.0;
    double energy = 0.0;
    double mass = 0.0;
    double enstrophy = 0.0;   ///< ||grad u||^2
    double grad_mu_sq = 0.0;  ///< ||grad mu||^2
    double max_speed = 0.0;
};

/// Forward solution path: N+1 states (strictly increasing times), the control
/// that produced it, and per-snapshot diagnostics.
class Trajectory {
  public:
    Trajectory() = default;
    Trajectory(std::vector<State> states, Control control, std::vector<DiagnosticsRow> diagnostics)
        : states_(std::move(states)),
          control_(std::move(control)),
          diagnostics_(std::move(diagnostics)) {}

    const std::vector<State>& states() const { return states_; }
    const State& state(std::size_t n) const { return states_[n]; }
    const Control& control() const { return control_; }
    const std::vector<DiagnosticsRow>& diagnostics() const { return diagnostics_; }
    std::size_t steps() const { return states_.empty() ? 0 : states_.size() - 1; }

  private:
    std::vector<State> states_;
    Control control_;
    std::vector<DiagnosticsRow> diagnostics_;
};

/// Raised when a state turns non-finite; carries the step index and the
/// partial trajectory for post-mortem inspection.
class BlowupError : public std::runtime_error {
  public:
    BlowupError(std::size_t step_index, std::shared_ptr<Trajectory> partial);
    std::size_t step_index() const { return step_index_; }
    const Trajectory* partial() const { return partial_.get(); }

  private:
    std::size_t step_index_;
    std::shared_ptr<Trajectory> partial_;
};

/// One IMEX step of the controlled CHNS system. Diffusive parts
/// (nu Lap u, (mean(a)+S) Lap phi) are implicit and diagonal in Fourier
/// space; transport, the nonlocal terms and F' are explicit at the old time.
State step(const State& state, const VectorField& control_slice, const SolverConfig& cfg,
           const Kernel& kernel, const Potential& potential);

/// Integrate n_steps from init, recording every state and diagnostics row.
Trajectory solve_forward(const State& init, const Control& control, const SolverConfig& cfg,
                         const Kernel& kernel, const Potential& potential);

DiagnosticsRow diagnostics_row(const State& state, const Kernel& kernel,
                               const Potential& potential);

/// Taylor-Green vortex (amp sin x cos y, -amp cos x sin y).
VectorField taylor_green(const GridPtr& grid, double amplitude = 1.0);

}  // namespace chns
