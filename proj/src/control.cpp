#include "swarmlift/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swarmlift {

void SpringDamperConfig::validate() const {
    if (!(k > 0.0)) throw std::domain_error("spring constant must be positive");
    if (!(l0 > 0.0)) throw std::domain_error("rest length must be positive");
    if (B < 0.0) throw std::domain_error("damping constant must be nonnegative");
    if (!(tau > 0.0)) throw std::domain_error("smoothing time constant must be positive");
}

void LennardJonesConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::domain_error("well strength must be positive");
    if (!(sigma > 0.0)) throw std::domain_error("equilibrium distance must be positive");
}

double spring_damper_force(const SpringDamperConfig& cfg, double d, double d_dot) {
    cfg.validate();
    if (!(d > 0.0)) throw std::domain_error("pair distance must be positive");
    return -cfg.k * (d - cfg.l0) - cfg.B * d_dot;
}

double lennard_jones_potential(const LennardJonesConfig& cfg, double d) {
    cfg.validate();
    if (!(d > 0.0)) throw std::domain_error("pair distance must be positive");
    double r = cfg.sigma / d;
    double r2 = r * r;
    return cfg.epsilon * cfg.sigma * cfg.sigma / 8.0 * (r2 * r2 - 2.0 * r2);
}

double lennard_jones_force(const LennardJonesConfig& cfg, double d) {
    cfg.validate();
    if (!(d > 0.0)) throw std::domain_error("pair distance must be positive");
    double r = cfg.sigma / d;
    double r2 = r * r;
    return cfg.epsilon * cfg.sigma / 2.0 * (r2 * r2 * r - r2 * r);
}

double clamp_force(double f, const ForceLimits& limits) {
    return std::clamp(f, -limits.f_max, limits.f_max);
}

AxisGains axis_gains(double k, double B, double k_p,
                     std::span<const double> neighbor_bearings) {
    if (k < 0.0 || B < 0.0 || k_p < 0.0)
        throw std::domain_error("gains and payload stiffness must be nonnegative");
    double sum_c = 0.0;
    double sum_s = 0.0;
    for (double th : neighbor_bearings) {
        double c = std::cos(th);
        double s = std::sin(th);
        sum_c += c * c;
        sum_s += s * s;
    }
    AxisGains g;
    g.k_x = k_p + k * sum_c;
    g.k_y = k * sum_s;
    g.B_x = B * sum_c;
    g.B_y = B * sum_s;
    return g;
}

namespace {

struct ProjectionSums {
    double c = 0.0;
    double s = 0.0;
};

ProjectionSums projection_sums(std::span<const double> bearings) {
    ProjectionSums p;
    for (double th : bearings) {
        double c = std::cos(th);
        double s = std::sin(th);
        p.c += c * c;
        p.s += s * s;
    }
    return p;
}

// Damping ratio per unit of B on each axis, for a candidate k.
struct AxisSlopes {
    double x = 0.0;
    double y = 0.0;
};

AxisSlopes slopes(double m, double k_p, double k, const ProjectionSums& p) {
    AxisSlopes a;
    double k_x = k_p + k * p.c;
    if (k_x > 0.0) a.x = p.c / (2.0 * std::sqrt(m * k_x));
    double k_y = k * p.s;
    if (k_y > 0.0) a.y = p.s / (2.0 * std::sqrt(m * k_y));
    return a;
}

// Worst-axis deviation from the target ratio with B chosen optimally,
// which balances the two axes at B = 2*zeta/(ax+ay).
double balanced_deviation(double zeta, const AxisSlopes& a) {
    return zeta * std::abs(a.x - a.y) / (a.x + a.y);
}

}  // namespace

TuneResult tune_gains(double m_robot, double k_p,
                      std::span<const double> neighbor_bearings,
                      double damping_ratio, double k_fallback) {
    if (!(m_robot > 0.0)) throw std::domain_error("robot mass must be positive");
    if (k_p < 0.0) throw std::domain_error("payload stiffness must be nonnegative");
    if (!(damping_ratio > 0.0)) throw std::domain_error("damping ratio must be positive");
    if (!(k_fallback > 0.0)) throw std::domain_error("fallback stiffness must be positive");
    if (neighbor_bearings.empty()) throw std::domain_error("at least one neighbor required");

    const ProjectionSums p = projection_sums(neighbor_bearings);
    const double n = static_cast<double>(neighbor_bearings.size());
    const bool collinear = p.s <= 1e-12 * n;

    TuneResult out;
    out.collinear = collinear;

    if (collinear) {
        // Only the radial axis closes a loop; any k works with a matching B.
        out.k = k_fallback;
    } else if (k_p > 0.0 && p.c - p.s > 1e-12 * (p.c + p.s)) {
        // Equal ratios on both axes admit a closed form:
        // sum_c^2 * k * sum_s = sum_s^2 * (k_p + k * sum_c).
        out.k = p.s * k_p / (p.c * (p.c - p.s));
    } else if (k_p == 0.0) {
        // The axis ratio gap is independent of k; keep the fallback scale.
        out.k = k_fallback;
    } else {
        // No exact solution. Sweep k over a bounded log grid and keep the
        // value whose balanced deviation is smallest.
        double best_k = k_fallback;
        double best_dev = balanced_deviation(damping_ratio, slopes(m_robot, k_p, best_k, p));
        double lo = 1e-3 * k_fallback;
        double hi = 1e3 * std::max(k_fallback, k_p);
        for (int round = 0; round < 3; ++round) {
            const int steps = 600;
            double log_lo = std::log(lo);
            double log_hi = std::log(hi);
            int best_i = -1;
            for (int i = 0; i <= steps; ++i) {
                double k = std::exp(log_lo + (log_hi - log_lo) * i / steps);
                double dev = balanced_deviation(damping_ratio, slopes(m_robot, k_p, k, p));
                if (dev < best_dev) {
                    best_dev = dev;
                    best_k = k;
                    best_i = i;
                }
            }
            if (best_i < 0) break;
            double span = (log_hi - log_lo) / steps;
            lo = std::exp(std::log(best_k) - span);
            hi = std::exp(std::log(best_k) + span);
        }
        out.k = best_k;
    }

    AxisSlopes a = slopes(m_robot, k_p, out.k, p);
    if (a.x + a.y <= 0.0) throw std::domain_error("geometry closes no loop on either axis");
    // With no transverse loop the balanced form would land zeta_x at twice
    // the target, so meet it on the one live axis instead.
    out.B = collinear ? damping_ratio / a.x : 2.0 * damping_ratio / (a.x + a.y);
    out.zeta_x = a.x * out.B;
    out.zeta_y = a.y * out.B;
    return out;
}

std::vector<double> bearings_about_centroid(std::span<const Vec2> positions,
                                            std::size_t index) {
    if (positions.size() < 2) throw std::domain_error("need at least two robots");
    if (index >= positions.size()) throw std::domain_error("robot index out of range");

    Vec2 centroid;
    for (const Vec2& q : positions) centroid += q;
    centroid *= 1.0 / static_cast<double>(positions.size());

    const Vec2 here = positions[index];
    Vec2 x_axis = centroid - here;
    if (norm(x_axis) <= 0.0)
        throw std::domain_error("robot sits at the swarm centroid; radial axis undefined");

    std::vector<double> bearings;
    bearings.reserve(positions.size() - 1);
    for (std::size_t j = 0; j < positions.size(); ++j) {
        if (j == index) continue;
        Vec2 rel = positions[j] - here;
        if (norm(rel) <= 0.0) throw std::domain_error("coincident robots");
        bearings.push_back(angle_between(x_axis, rel));
    }
    return bearings;
}

std::vector<Vec2> regular_polygon(int n, double circumradius) {
    if (n < 2) throw std::domain_error("polygon needs at least two vertices");
    if (!(circumradius > 0.0)) throw std::domain_error("circumradius must be positive");
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double th = 2.0 * M_PI * i / n;
        out.push_back({circumradius * std::cos(th), circumradius * std::sin(th)});
    }
    return out;
}

}  // namespace swarmlift
