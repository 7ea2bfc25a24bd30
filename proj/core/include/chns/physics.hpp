#pragma once

#include "chns/kernel.hpp"
#include "chns/potential.hpp"

namespace chns {

/// Chemical potential mu = a*phi - J*phi + F'(phi), dealiased.
ScalarField chemical_potential(const ScalarField& phi, const Kernel& kernel,
                               const Potential& potential);

/// Capillarity body force in the pressure-absorbed form
///   P[ -(grad a) phi^2/2 - (J*phi) grad phi ],
/// which equals P[mu grad phi] because the gradient part projects to zero.
VectorField korteweg_force(const ScalarField& phi, const Kernel& kernel,
                           const Potential& potential);

/// Total free energy
///   E = 1/2 ||u||^2 + 1/2 (a phi, phi) - 1/2 (J*phi, phi) + int F(phi),
/// where the middle terms equal 1/4 int int J(x-y) (phi(x)-phi(y))^2.
double energy(const VectorField& u, const ScalarField& phi, const Kernel& kernel,
              const Potential& potential);

}  // namespace chns
