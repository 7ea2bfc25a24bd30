#pragma once

#include <filesystem>

#include "chns/forward.hpp"
#include "chns/optimizer.hpp"

namespace chns {

/// Fixed CSV schemas; columns never reorder within a format version.

/// t,energy,mass,enstrophy,grad_mu_sq,max_speed
void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRow>& rows);

/// iter,J,grad_norm,step,backtracks
void write_optim_csv(const std::filesystem::path& path, const std::vector<IterationRow>& rows);

struct GradcheckRow {
    std::size_t direction = 0;
    double eps = 0.0;
    double fd_value = 0.0;
    double adjoint_value = 0.0;
    double rel_err = 0.0;
};

/// direction,eps,fd_value,adjoint_value,rel_err
void write_gradcheck_csv(const std::filesystem::path& path, const std::vector<GradcheckRow>& rows);

struct CurvatureRow {
    std::uint64_t direction_seed = 0;
    double s = 0.0;
    double q = 0.0;
    double two_delta_j = 0.0;
    double fd_curvature = 0.0;
};

/// direction_seed,s,Q,two_delta_J,fd_curvature
void write_curvature_csv(const std::filesystem::path& path, const std::vector<CurvatureRow>& rows);

}  // namespace chns
