// End-to-end gate: one pass/fail line per release criterion, with the
// measured numbers. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "swarmlift/analysis.hpp"
#include "swarmlift/catenary.hpp"
#include "swarmlift/control.hpp"
#include "swarmlift/estimation.hpp"
#include "swarmlift/experiments.hpp"
#include "swarmlift/scenario_io.hpp"
#include "swarmlift/sim.hpp"

using namespace swarmlift;

namespace {

int failures = 0;

void report(bool ok, const char* fmt, ...) {
    if (!ok) ++failures;
    std::printf("[%s] ", ok ? "PASS" : "FAIL");
    va_list args;
    va_start(args, fmt);
    std::vprintf(fmt, args);
    va_end(args);
    std::printf("\n");
    std::fflush(stdout);
}

void fail_with(const char* name, const std::exception& e) {
    ++failures;
    std::printf("[FAIL] %s: unexpected exception: %s\n", name, e.what());
    std::fflush(stdout);
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

// 1. Cable solve: random geometries, tiny residual, tension identity, < 1 s.
void criterion_cable_solver() {
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> length_dist(0.1, 10.0);
    std::uniform_real_distribution<double> ratio_dist(0.01, 0.99);
    const int cases = 1000;

    double worst_residual = 0.0;
    double worst_identity = 0.0;
    bool all_in_tol = true;
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < cases; ++i) {
        PayloadModel payload;
        payload.cable_length_m = length_dist(gen);
        const double x0 = ratio_dist(gen) * payload.cable_length_m;

        CatenarySolution sol = solve_catenary(payload, x0);
        const double L = payload.cable_length_m;
        double residual = std::abs(sol.a * std::sinh(x0 / sol.a) - L);
        if (residual > 1e-9 * L) all_in_tol = false;
        worst_residual = std::max(worst_residual, residual / L);

        double lhs = vertical_tension(payload) / horizontal_tension(payload, x0);
        double rhs = L / sol.a;
        worst_identity = std::max(worst_identity, std::abs(lhs - rhs) / rhs);
    }
    double elapsed = ms_since(t0);

    bool ok = all_in_tol && worst_identity <= 1e-9 && elapsed < 1000.0;
    report(ok,
           "1. cable solve: worst residual %.3g*L (<= 1e-9), worst tension identity error %.3g "
           "(<= 1e-9), %d cases in %.0f ms (< 1000)",
           worst_residual, worst_identity, cases, elapsed);
}

// 2. Ramp recovery: steady-sampling form exact, small-step form within dt/tau.
void criterion_estimator() {
    const double v = 0.3;

    EmaDerivativeFilter regular(0.2);
    EmaUpdate u{};
    const double dt_a = 0.01;
    for (int i = 0; i < 3000; ++i) u = regular.update(i * dt_a, 1.0 + v * i * dt_a);
    double err_regular = std::abs(u.rate_regular - v) / v;

    EmaDerivativeFilter slow(1.0);
    EmaUpdate w{};
    const double dt_b = 0.01;  // dt/tau = 0.01
    for (int i = 0; i < 3000; ++i) w = slow.update(i * dt_b, 2.0 + v * i * dt_b);
    double err_simple = std::abs(w.rate_simple - v) / v;

    bool ok = err_regular <= 1e-9 && u.regular && err_simple <= 0.01;
    report(ok,
           "2. ramp slope recovery: steady form error %.3g (<= 1e-9), small-step form error "
           "%.4f at dt/tau = 0.01 (<= 0.01)",
           err_regular, err_simple);
}

// 3. Pair potential vs linear spring near the rest distance.
void criterion_force_equivalence() {
    const double eps = 0.25, sigma = 0.6;
    LennardJonesConfig lj{eps, sigma};
    SpringDamperConfig sd{eps, sigma, 0.16, 0.2};

    double worst = 0.0;
    for (int i = 0; i <= 500; ++i) {
        double d = sigma * (0.95 + 0.10 * i / 500.0);
        double diff = std::abs(lennard_jones_force(lj, d) - spring_damper_force(sd, d, 0.0));
        worst = std::max(worst, diff / (eps * sigma));
    }

    const double h = 1e-6 * sigma;
    double slope =
        (lennard_jones_force(lj, sigma + h) - lennard_jones_force(lj, sigma - h)) / (2.0 * h);
    double slope_err = std::abs(slope + eps) / eps;

    bool ok = worst <= 0.02 && slope_err <= 0.001;
    report(ok,
           "3. pair potential matches the spring near rest: max |dF|/(eps*sigma) %.4f over "
           "+-5%% (<= 0.02), slope at rest -eps within %.4f%% (<= 0.1%%)",
           worst, 100.0 * slope_err);
}

// 4. Tuned 3-robot step response: no real overshoot, settles inside 5*sqrt(m/k_x).
void criterion_step_response() {
    PayloadModel payload;
    const double side = 0.6;
    const double m_robot = 0.027;
    TunedGains gains = tune_for_polygon(payload, side, m_robot);

    // Equilibrium side length: mutual spring push balances the payload pull.
    auto imbalance = [&](double d) {
        return std::sqrt(3.0) * gains.k * (side - d) -
               horizontal_tension(payload, d / std::sqrt(3.0));
    };
    double lo = 0.2, hi = side - 1e-9;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (imbalance(mid) > 0.0 ? lo : hi) = mid;
    }
    const double d_star = 0.5 * (lo + hi);
    const double step_size = 0.05 * d_star;

    Scenario sc;
    sc.initial_positions = regular_polygon(3, 0.95 * d_star / std::sqrt(3.0));
    sc.payload = payload;
    sc.controller.law = SpringDamperConfig{gains.k, side, gains.B, 0.05};
    sc.controller.mode = CommandMode::force;
    sc.fleet.attractor_weight = 0.0;
    sc.dt = 0.005;
    sc.duration_s = 6.0;
    TrajectoryLog log = run(sc);

    const double k_x = gains.k_p + 1.5 * gains.k;
    const double settle_deadline = 5.0 * std::sqrt(m_robot / k_x);
    const double band = 0.02 * side;

    double overshoot = -1e9;
    double worst_after_deadline = 0.0;
    for (std::size_t s = 0; s < log.steps(); ++s) {
        const Vec2 p0 = log.records[3 * s].position;
        const Vec2 p1 = log.records[3 * s + 1].position;
        const Vec2 p2 = log.records[3 * s + 2].position;
        double d = (norm(p1 - p0) + norm(p2 - p1) + norm(p0 - p2)) / 3.0;
        overshoot = std::max(overshoot, d - d_star);
        if (log.records[3 * s].t >= settle_deadline)
            worst_after_deadline = std::max(worst_after_deadline, std::abs(d - d_star));
    }

    bool ok = overshoot <= 0.1 * step_size && worst_after_deadline <= band;
    report(ok,
           "4. tuned step response: overshoot %.1f%% of the step (<= 10%%), worst distance "
           "error %.2g m after %.2f s (<= %.3g)",
           100.0 * std::max(overshoot, 0.0) / step_size, worst_after_deadline, settle_deadline,
           band);
}

// 5. Stock suite: payload runs synchronize, free flight does not, laws tie.
void criterion_suite_trends() {
    SuiteConfig cfg;
    std::vector<Scenario> suite = default_suite(cfg);

    auto t0 = std::chrono::steady_clock::now();
    std::vector<CorrelationReport> reports;
    for (const Scenario& sc : suite)
        reports.push_back(synchronicity(run(sc), cfg.window_start_s, cfg.window_end_s));
    double elapsed = ms_since(t0);

    double baseline = reports[0].combined;
    GroupSummary sd = summarize(std::span<const CorrelationReport>(reports).subspan(1, 5));
    GroupSummary lj = summarize(std::span<const CorrelationReport>(reports).subspan(6, 5));

    bool ok = std::abs(baseline) <= 0.15 && sd.mean >= 0.2 && lj.mean >= 0.2 &&
              std::abs(sd.mean - lj.mean) <= 0.15 && elapsed < 60000.0;
    report(ok,
           "5. suite trends: free flight |rho| %.3f (<= 0.15), carry means %.3f / %.3f (>= 0.2), "
           "gap %.3f (<= 0.15), 11 runs in %.1f s (< 60)",
           std::abs(baseline), sd.mean, lj.mean, std::abs(sd.mean - lj.mean), elapsed / 1000.0);
}

// 6. Group summary arithmetic on the fixed reference columns.
void criterion_summary_convention() {
    auto column = [](std::initializer_list<double> values) {
        std::vector<CorrelationReport> rows;
        for (double v : values) {
            CorrelationReport r;
            r.combined = v;
            rows.push_back(r);
        }
        return rows;
    };
    std::vector<CorrelationReport> sd_rows = column({0.59, 0.48, 0.29, 0.17, 0.12});
    std::vector<CorrelationReport> lj_rows = column({0.57, 0.17, 0.44, 0.41, 0.10});
    GroupSummary sd = summarize(sd_rows);
    GroupSummary lj = summarize(lj_rows);

    bool ok = std::abs(sd.mean - 0.33) <= 0.005 && std::abs(sd.stddev - 0.20) <= 0.005 &&
              std::abs(lj.mean - 0.34) <= 0.005 && std::abs(lj.stddev - 0.20) <= 0.005;
    report(ok,
           "6. summary convention: columns give %.4f/%.4f and %.4f/%.4f vs 0.33/0.20 and "
           "0.34/0.20 (within 0.005)",
           sd.mean, sd.stddev, lj.mean, lj.stddev);
}

// 7. An unreachable extra agent must not perturb anyone's commands.
void criterion_bystander_isolation() {
    Scenario base = default_suite()[1];
    base.carriers = {0, 1, 2};
    base.hub.position_noise_std_m = 0.002;

    Scenario extra = base;
    extra.initial_positions.push_back({1000.0, 1000.0});

    TrajectoryLog a = run(base);
    TrajectoryLog b = run(extra);

    std::size_t mismatches = 0;
    const std::size_t steps = a.steps();
    for (std::size_t s = 0; s < steps; ++s)
        for (std::size_t i = 0; i < 3; ++i) {
            const StepRecord& ra = a.records[3 * s + i];
            const StepRecord& rb = b.records[4 * s + i];
            if (ra.command.x != rb.command.x || ra.command.y != rb.command.y) ++mismatches;
        }

    report(mismatches == 0 && steps > 0,
           "7. bystander isolation: %zu of %zu command samples differ after adding an "
           "out-of-range agent (expected 0)",
           mismatches, 3 * steps);
}

// 8. Same scenario, same seed, same bytes on disk.
void criterion_byte_identical_logs() {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "swarmlift_acceptance";
    fs::create_directories(dir);

    Scenario sc = default_suite()[1];
    write_csv(run(sc), dir / "first.csv");
    write_csv(run(sc), dir / "second.csv");

    auto slurp = [](const fs::path& f) {
        std::ifstream in(f, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    };
    std::string first = slurp(dir / "first.csv");
    std::string second = slurp(dir / "second.csv");

    report(!first.empty() && first == second,
           "8. determinism: rerun log %s (%zu bytes)",
           first == second ? "byte-identical" : "DIFFERS", first.size());
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        void (*fn)();
    };
    const Criterion criteria[] = {
        {"1. cable solve", criterion_cable_solver},
        {"2. ramp slope recovery", criterion_estimator},
        {"3. pair potential equivalence", criterion_force_equivalence},
        {"4. tuned step response", criterion_step_response},
        {"5. suite trends", criterion_suite_trends},
        {"6. summary convention", criterion_summary_convention},
        {"7. bystander isolation", criterion_bystander_isolation},
        {"8. determinism", criterion_byte_identical_logs},
    };
    for (const Criterion& c : criteria) {
        try {
            c.fn();
        } catch (const std::exception& e) {
            fail_with(c.name, e);
        }
    }
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria failed\n", failures);
    return failures;
}
