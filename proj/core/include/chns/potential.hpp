#pragma once

#include <array>
#include <vector>

#include "chns/kernel.hpp"

namespace chns {

/// Polynomial double-well potential F of degree <= 6 with exact symbolic
/// derivatives F' .. F''''. The derivative chain is cross-checked by finite
/// differences at construction.
class Potential {
  public:
    static constexpr std::size_t max_degree = 6;

    /// coeffs[k] multiplies s^k.
    static Potential from_coefficients(std::vector<double> coeffs, double validation_range);
    /// F(s) = (s^2 - 1)^2.
    static Potential double_well(double validation_range = 2.0);

    double value(double s) const { return eval(c_[0], s); }
    double d1(double s) const { return eval(c_[1], s); }
    double d2(double s) const { return eval(c_[2], s); }
    double d3(double s) const { return eval(c_[3], s); }
    double d4(double s) const { return eval(c_[4], s); }

    /// Validation range bound M: assumptions are scanned on [-M, M].
    double range() const { return range_; }
    const std::vector<double>& coefficients() const { return c_[0]; }
    std::size_t degree() const { return c_[0].size() - 1; }

    /// max |F''| over [-M, M]; sets the default IMEX stabilization shift.
    double max_d2() const;

    /// Pointwise application helpers.
    ScalarField value(const ScalarField& phi) const { return apply(c_[0], phi); }
    ScalarField d1(const ScalarField& phi) const { return apply(c_[1], phi); }
    ScalarField d2(const ScalarField& phi) const { return apply(c_[2], phi); }
    ScalarField d3(const ScalarField& phi) const { return apply(c_[3], phi); }

  private:
    Potential() = default;
    static double eval(const std::vector<double>& c, double s);
    static ScalarField apply(const std::vector<double>& c, const ScalarField& phi);
    void self_check() const;

    std::array<std::vector<double>, 5> c_;  // F, F', F'', F''', F''''
    double range_ = 2.0;
};

/// Numeric verification of the structural assumptions on (F, J):
///   (2) F''(s) + a(x) >= C0 > 0,
///   (3) F''(s) + a(x) >= C1 |s|^{2q} - C2,
///   (4) |F'(s)|^r <= C3 |F(s)| + C4 with r in (1,2].
struct ValidationReport {
    double c0 = 0.0;
    bool c0_ok = false;
    double q = 1.0, c1 = 0.0, c2 = 0.0;
    bool coercivity_ok = false;
    double r = 4.0 / 3.0, c3 = 0.0, c4 = 0.0;
    bool growth_ok = false;
    bool pass() const { return c0_ok && coercivity_ok && growth_ok; }
};

ValidationReport validate_assumptions(const Potential& potential, const Kernel& kernel,
                                      double q = 1.0, double r = 4.0 / 3.0);

}  // namespace chns
