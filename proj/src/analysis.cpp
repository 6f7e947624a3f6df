#include "swarmlift/analysis.hpp"

#include <cmath>
#include <iomanip>
#include <stdexcept>

namespace swarmlift {

void fit_line(std::span<const double> t, std::span<const double> y, double& slope,
              double& intercept) {
    if (t.size() != y.size()) throw std::invalid_argument("series lengths differ");
    if (t.size() < 2) throw std::invalid_argument("line fit needs at least two samples");
    const double n = static_cast<double>(t.size());
    double t_mean = 0.0;
    double y_mean = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        t_mean += t[i];
        y_mean += y[i];
    }
    t_mean /= n;
    y_mean /= n;
    double stt = 0.0;
    double sty = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double dt = t[i] - t_mean;
        stt += dt * dt;
        sty += dt * (y[i] - y_mean);
    }
    if (stt <= 0.0) throw std::invalid_argument("line fit needs non-constant time");
    slope = sty / stt;
    intercept = y_mean - slope * t_mean;
}

DetrendedSignal detrend(std::span<const double> t, std::span<const double> y) {
    DetrendedSignal out;
    fit_line(t, y, out.slope, out.intercept);
    out.t.assign(t.begin(), t.end());
    out.values.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        out.values[i] = y[i] - (out.intercept + out.slope * t[i]);
    return out;
}

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("series lengths differ");
    if (a.size() < 2) throw std::invalid_argument("correlation needs at least two samples");
    const double n = static_cast<double>(a.size());
    double a_mean = 0.0;
    double b_mean = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        a_mean += a[i];
        b_mean += b[i];
    }
    a_mean /= n;
    b_mean /= n;
    double saa = 0.0;
    double sbb = 0.0;
    double sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - a_mean;
        const double db = b[i] - b_mean;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) return std::nullopt;
    return sab / std::sqrt(saa * sbb);
}

CorrelationReport synchronicity(const TrajectoryLog& log, double t_start, double t_end) {
    if (!(t_end > t_start)) throw std::invalid_argument("analysis window is empty");
    CorrelationReport report;
    report.name = log.name;
    report.window_start = t_start;
    report.window_end = t_end;

    struct AgentSignals {
        AgentId id;
        DetrendedSignal x;
        DetrendedSignal y;
    };
    std::vector<AgentSignals> signals;
    for (AgentId id : log.agents) {
        TrajectoryLog::Series sx = log.position_series(id, Axis::x, t_start, t_end);
        TrajectoryLog::Series sy = log.position_series(id, Axis::y, t_start, t_end);
        if (sx.t.size() < 2)
            throw std::invalid_argument("analysis window selects fewer than two samples");
        signals.push_back({id, detrend(sx.t, sx.value), detrend(sy.t, sy.value)});
    }

    double sums[2] = {0.0, 0.0};
    int counts[2] = {0, 0};
    for (std::size_t i = 0; i < signals.size(); ++i) {
        for (std::size_t j = i + 1; j < signals.size(); ++j) {
            for (Axis axis : {Axis::x, Axis::y}) {
                const DetrendedSignal& si = axis == Axis::x ? signals[i].x : signals[i].y;
                const DetrendedSignal& sj = axis == Axis::x ? signals[j].x : signals[j].y;
                PairCorrelation pc;
                pc.a = signals[i].id;
                pc.b = signals[j].id;
                pc.axis = axis;
                pc.rho = pearson(si.values, sj.values);
                if (pc.rho) {
                    sums[axis == Axis::x ? 0 : 1] += *pc.rho;
                    counts[axis == Axis::x ? 0 : 1] += 1;
                } else {
                    report.warnings.push_back(
                        "pair (" + std::to_string(pc.a) + "," + std::to_string(pc.b) + ") " +
                        (axis == Axis::x ? "x" : "y") + ": zero variance, pair skipped");
                }
                report.pairs.push_back(pc);
            }
        }
    }
    if (counts[0] > 0)
        report.rho_x_mean = sums[0] / counts[0];
    else
        report.warnings.push_back("x: no usable pairs, mean reported as 0");
    if (counts[1] > 0)
        report.rho_y_mean = sums[1] / counts[1];
    else
        report.warnings.push_back("y: no usable pairs, mean reported as 0");
    report.combined = 0.5 * (report.rho_x_mean + report.rho_y_mean);
    return report;
}

GroupSummary summarize(std::span<const CorrelationReport> reports) {
    GroupSummary s;
    s.count = static_cast<int>(reports.size());
    if (reports.empty()) return s;
    for (const CorrelationReport& r : reports) s.mean += r.combined;
    s.mean /= s.count;
    if (s.count > 1) {
        double acc = 0.0;
        for (const CorrelationReport& r : reports) {
            const double d = r.combined - s.mean;
            acc += d * d;
        }
        s.stddev = std::sqrt(acc / (s.count - 1));
    }
    return s;
}

void write_report_text(std::ostream& out, std::span<const ReportSection> sections) {
    for (const ReportSection& section : sections) {
        out << "=== " << section.label << " ===\n";
        out << std::left << std::setw(20) << "run" << std::right << std::setw(9) << "rho_x"
            << std::setw(9) << "rho_y" << std::setw(10) << "combined" << "\n";
        for (const CorrelationReport& r : section.rows) {
            out << std::left << std::setw(20) << r.name << std::right << std::fixed
                << std::setprecision(3) << std::setw(9) << r.rho_x_mean << std::setw(9)
                << r.rho_y_mean << std::setw(10) << r.combined << "\n";
            out.unsetf(std::ios::fixed);
            for (const std::string& w : r.warnings) out << "  note: " << w << "\n";
        }
        GroupSummary s = summarize(section.rows);
        out << std::fixed << std::setprecision(3);
        out << "summary: mean " << s.mean << "  stddev " << s.stddev << "  over " << s.count
            << (s.count == 1 ? " run" : " runs") << "\n\n";
        out.unsetf(std::ios::fixed);
    }
}

void write_report_csv(std::ostream& out, std::span<const ReportSection> sections) {
    out << "kind,section,run,rho_x,rho_y,combined,mean,stddev,count\n";
    char buf[64];
    auto cell = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return std::string(buf);
    };
    for (const ReportSection& section : sections) {
        for (const CorrelationReport& r : section.rows)
            out << "run," << section.label << ',' << r.name << ',' << cell(r.rho_x_mean) << ','
                << cell(r.rho_y_mean) << ',' << cell(r.combined) << ",,,\n";
        GroupSummary s = summarize(section.rows);
        out << "summary," << section.label << ",,,,," << cell(s.mean) << ',' << cell(s.stddev)
            << ',' << s.count << "\n";
    }
}

}  // namespace swarmlift
