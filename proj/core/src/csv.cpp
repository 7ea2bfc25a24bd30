#include "chns/csv.hpp"

#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace chns {

namespace {
std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << std::setprecision(17);
    return out;
}
}  // namespace

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRow>& rows) {
    std::ofstream out = open_csv(path);
    out << "t,energy,mass,enstrophy,grad_mu_sq,max_speed\n";
    for (const auto& r : rows)
        out << r.t << ',' << r.energy << ',' << r.mass << ',' << r.enstrophy << ','
            << r.grad_mu_sq << ',' << r.max_speed << '\n';
}

void write_optim_csv(const std::filesystem::path& path, const std::vector<IterationRow>& rows) {
    std::ofstream out = open_csv(path);
    out << "iter,J,grad_norm,step,backtracks\n";
    for (const auto& r : rows)
        out << r.iter << ',' << r.cost << ',' << r.grad_norm << ',' << r.step << ','
            << r.backtracks << '\n';
}

void write_gradcheck_csv(const std::filesystem::path& path,
                         const std::vector<GradcheckRow>& rows) {
    std::ofstream out = open_csv(path);
    out << "direction,eps,fd_value,adjoint_value,rel_err\n";
    for (const auto& r : rows)
        out << r.direction << ',' << r.eps << ',' << r.fd_value << ',' << r.adjoint_value << ','
            << r.rel_err << '\n';
}

void write_curvature_csv(const std::filesystem::path& path,
                         const std::vector<CurvatureRow>& rows) {
    std::ofstream out = open_csv(path);
    out << "direction_seed,s,Q,two_delta_J,fd_curvature\n";
    for (const auto& r : rows)
        out << r.direction_seed << ',' << r.s << ',' << r.q << ',' << r.two_delta_j << ','
            << r.fd_curvature << '\n';
}

}  // namespace chns
