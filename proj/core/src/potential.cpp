#include "chns/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace chns {

double Potential::eval(const std::vector<double>& c, double s) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * s + c[k];
    return acc;
}

ScalarField Potential::apply(const std::vector<double>& c, const ScalarField& phi) {
    ScalarField out(phi.grid_ptr());
    for (std::size_t n = 0; n < phi.size(); ++n) out[n] = eval(c, phi[n]);
    return out;
}

Potential Potential::from_coefficients(std::vector<double> coeffs, double validation_range) {
    if (coeffs.empty() || coeffs.size() > max_degree + 1)
        throw std::invalid_argument("Potential: degree must be between 0 and 6");
    if (!(validation_range > 0.0))
        throw std::invalid_argument("Potential: validation range must be > 0");
    Potential p;
    p.c_[0] = std::move(coeffs);
    p.range_ = validation_range;
    for (int d = 1; d <= 4; ++d) {
        const std::vector<double>& prev = p.c_[d - 1];
        std::vector<double>& next = p.c_[d];
        if (prev.size() <= 1) {
            next = {0.0};
            continue;
        }
        next.resize(prev.size() - 1);
        for (std::size_t k = 1; k < prev.size(); ++k)
            next[k - 1] = prev[k] * static_cast<double>(k);
    }
    p.self_check();
    return p;
}

Potential Potential::double_well(double validation_range) {
    return from_coefficients({1.0, 0.0, -2.0, 0.0, 1.0}, validation_range);
}

void Potential::self_check() const {
    // Central differences of each derivative level must reproduce the next.
    const double h = 1e-5;
    for (int d = 0; d < 4; ++d) {
        for (double s : {-range_, -0.3, 0.0, 0.7, range_}) {
            const double fd = (eval(c_[d], s + h) - eval(c_[d], s - h)) / (2.0 * h);
            const double exact = eval(c_[d + 1], s);
            const double scale = std::max({1.0, std::abs(exact), std::abs(eval(c_[d], s))});
            if (std::abs(fd - exact) > 1e-6 * scale)
                throw std::logic_error("Potential: derivative chain self-check failed");
        }
    }
}

double Potential::max_d2() const {
    double m = 0.0;
    const int steps = 2001;
    for (int k = 0; k < steps; ++k) {
        const double s = -range_ + 2.0 * range_ * static_cast<double>(k) / (steps - 1);
        m = std::max(m, std::abs(d2(s)));
    }
    return m;
}

ValidationReport validate_assumptions(const Potential& potential, const Kernel& kernel, double q,
                                      double r) {
    ValidationReport rep;
    rep.q = q;
    rep.r = r;
    const double a_min = kernel.a_min();
    const double M = potential.range();
    const int steps = 4001;
    auto scan_s = [&](int k, double half_width) {
        return -half_width + 2.0 * half_width * static_cast<double>(k) / (steps - 1);
    };

    // (2): C0 = min over the scan of F''(s) + a_min.
    rep.c0 = potential.d2(scan_s(0, M)) + a_min;
    for (int k = 1; k < steps; ++k)
        rep.c0 = std::min(rep.c0, potential.d2(scan_s(k, M)) + a_min);
    rep.c0_ok = rep.c0 > 0.0;

    // (3): pick C1 from the leading coefficient of F'' when 2q matches its
    // degree, then C2 by scan so the bound holds on [-M, M].
    const std::vector<double>& f2 = [&] {
        std::vector<double> c(potential.coefficients());
        for (int d = 0; d < 2; ++d) {
            std::vector<double> next(c.size() > 1 ? c.size() - 1 : 1, 0.0);
            for (std::size_t k = 1; k < c.size(); ++k) next[k - 1] = c[k] * static_cast<double>(k);
            c = std::move(next);
        }
        return c;
    }();
    const std::size_t deg_f2 = f2.size() - 1;
    const double lead_f2 = f2.back();
    if (2.0 * q == static_cast<double>(deg_f2) && lead_f2 > 0.0)
        rep.c1 = lead_f2;
    else
        rep.c1 = 1.0;
    rep.c2 = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double s = scan_s(k, M);
        rep.c2 = std::max(rep.c2, rep.c1 * std::pow(std::abs(s), 2.0 * q) - potential.d2(s) - a_min);
    }
    rep.c2 += 1e-12;
    bool asymptotic_ok =
        (2.0 * q < static_cast<double>(deg_f2) && lead_f2 > 0.0) ||
        (2.0 * q == static_cast<double>(deg_f2) && rep.c1 <= lead_f2);
    rep.coercivity_ok = rep.c1 > 0.0 && asymptotic_ok;

    // (4): |F'|^r <= C3 |F| + C4, constants found by scan over a widened range.
    const double Mext = std::max(2.0 * M, 4.0);
    rep.c4 = 1.0;
    for (int k = 0; k < steps; ++k) {
        const double s = scan_s(k, Mext);
        if (std::abs(potential.value(s)) <= 1.0)
            rep.c4 = std::max(rep.c4, std::pow(std::abs(potential.d1(s)), r));
    }
    rep.c3 = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double s = scan_s(k, Mext);
        const double F = std::abs(potential.value(s));
        if (F > 1e-12)
            rep.c3 = std::max(rep.c3, (std::pow(std::abs(potential.d1(s)), r) - rep.c4) / F);
    }
    rep.c3 = std::max(rep.c3, 0.0) * (1.0 + 1e-12);
    // Asymptotics: r * deg(F') must not exceed deg(F).
    const double deg_f = static_cast<double>(potential.degree());
    bool growth_asymptotic = r * (deg_f - 1.0) <= deg_f + 1e-12;
    bool scan_holds = true;
    for (int k = 0; k < steps && scan_holds; ++k) {
        const double s = scan_s(k, Mext);
        scan_holds = std::pow(std::abs(potential.d1(s)), r) <=
                     rep.c3 * std::abs(potential.value(s)) + rep.c4 + 1e-9;
    }
    rep.growth_ok = growth_asymptotic && scan_holds && r > 1.0 && r <= 2.0;
    return rep;
}

}  // namespace chns
