#include "swarmlift/catenary.hpp"

#include <cmath>
#include <string>

namespace swarmlift {

void PayloadModel::validate() const {
    if (!(mass_kg > 0.0)) throw std::domain_error("payload mass must be positive");
    if (!(cable_length_m > 0.0)) throw std::domain_error("cable length must be positive");
    if (agent_count < 2) throw std::domain_error("payload needs at least two carriers");
    if (!(gravity > 0.0)) throw std::domain_error("gravity must be positive");
}

double vertical_tension(double mass_kg, int agent_count, double gravity) {
    if (!(mass_kg > 0.0)) throw std::domain_error("payload mass must be positive");
    if (agent_count < 1) throw std::domain_error("agent count must be positive");
    if (!(gravity > 0.0)) throw std::domain_error("gravity must be positive");
    return mass_kg * gravity / agent_count;
}

double vertical_tension(const PayloadModel& payload) {
    payload.validate();
    return vertical_tension(payload.mass_kg, payload.agent_count, payload.gravity);
}

namespace {

// a*sinh(x0/a) - L. Strictly decreasing in a for fixed x0 < L, with range
// (x0 - L, +inf) as a runs from +inf down to 0.
double length_mismatch(double a, double x0, double length) {
    return a * std::sinh(x0 / a) - length;
}

}  // namespace

CatenarySolution solve_catenary(const PayloadModel& payload, double x0) {
    payload.validate();
    const double length = payload.cable_length_m;
    if (!(x0 > 0.0)) throw std::domain_error("span must be positive");
    if (x0 >= length)
        throw TautCableError("span " + std::to_string(x0) + " m reaches cable length " +
                             std::to_string(length) + " m");
    // Below ~1e-9*L the shape parameter underflows any tension of interest
    // and sinh(x0/a) approaches overflow; treat as degenerate.
    if (x0 < 1e-9 * length) throw std::domain_error("span is vanishingly small");

    const double tol = kCatenaryRelTol * length;

    // Bracket the root. length_mismatch(x0) = x0*sinh(1) - L, so x0 itself
    // lands on one side or the other depending on x0/L.
    double lo = x0;  // side with positive mismatch
    double hi = x0;  // side with negative mismatch
    if (length_mismatch(x0, x0, length) > 0.0) {
        do {
            hi *= 2.0;
        } while (length_mismatch(hi, x0, length) > 0.0);
        lo = hi / 2.0;
    } else {
        do {
            lo *= 0.5;
        } while (length_mismatch(lo, x0, length) <= 0.0);
        hi = lo * 2.0;
    }

    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
        mid = 0.5 * (lo + hi);
        double f = length_mismatch(mid, x0, length);
        if (std::abs(f) <= tol) break;
        if (f > 0.0)
            lo = mid;
        else
            hi = mid;
    }

    CatenarySolution out;
    out.a = mid;
    out.x0 = x0;
    out.residual = std::abs(length_mismatch(mid, x0, length));
    return out;
}

double horizontal_tension(const PayloadModel& payload, double x0) {
    CatenarySolution sol = solve_catenary(payload, x0);
    return vertical_tension(payload) * sol.a / payload.cable_length_m;
}

double payload_stiffness(const PayloadModel& payload, double x0_eq) {
    CatenarySolution sol = solve_catenary(payload, x0_eq);
    double u = x0_eq / sol.a;
    // Implicit differentiation of a*sinh(x0/a) = L gives
    // da/dx0 = cosh(u) / (u*cosh(u) - sinh(u)).
    double denom = u * std::cosh(u) - std::sinh(u);
    return vertical_tension(payload) / payload.cable_length_m * std::cosh(u) / denom;
}

}  // namespace swarmlift
