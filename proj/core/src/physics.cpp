#include "chns/physics.hpp"

#include <stdexcept>

namespace chns {

ScalarField chemical_potential(const ScalarField& phi, const Kernel& kernel,
                               const Potential& potential) {
    if (!phi.finite()) throw std::invalid_argument("chemical_potential: non-finite phi");
    require_same_grid(phi.grid(), kernel.grid(), "chemical_potential");
    ScalarField mu = multiply(kernel.a(), phi);
    mu -= convolve(kernel, phi);
    mu += potential.d1(phi);
    return dealias(mu);
}

VectorField korteweg_force(const ScalarField& phi, const Kernel& kernel,
                           const Potential& potential) {
    if (!phi.finite()) throw std::invalid_argument("korteweg_force: non-finite phi");
    require_same_grid(phi.grid(), kernel.grid(), "korteweg_force");
    (void)potential;  // enters only through the pressure-absorbed gradient part
    VectorField force = multiply(grad(phi), convolve(kernel, phi));
    force *= -1.0;
    if (!kernel.translation_invariant()) {
        ScalarField half_phi2(phi.grid_ptr());
        for (std::size_t n = 0; n < phi.size(); ++n) half_phi2[n] = 0.5 * phi[n] * phi[n];
        force -= multiply(kernel.grad_a(), half_phi2);
    }
    return leray_project(dealias(force));
}

double energy(const VectorField& u, const ScalarField& phi, const Kernel& kernel,
              const Potential& potential) {
    if (!u.finite() || !phi.finite()) throw std::invalid_argument("energy: non-finite state");
    require_same_grid(u.grid(), phi.grid(), "energy");
    require_same_grid(phi.grid(), kernel.grid(), "energy");
    const double kinetic = 0.5 * inner(u, u);
    const double nonlocal =
        0.5 * inner(multiply(kernel.a(), phi), phi) - 0.5 * inner(convolve(kernel, phi), phi);
    double well = 0.0;
    for (std::size_t n = 0; n < phi.size(); ++n) well += potential.value(phi[n]);
    well *= phi.grid().cell_area();
    return kinetic + nonlocal + well;
}

}  // namespace chns
