#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "swarmlift/geometry.hpp"
#include "swarmlift/sim.hpp"

namespace swarmlift {

/// A time series with its best straight-line fit removed.
struct DetrendedSignal {
    std::vector<double> t;
    std::vector<double> values;  ///< residuals about the fit
    double slope = 0.0;
    double intercept = 0.0;
};

/// Pearson correlation of one agent pair's detrended motion on one axis.
/// rho is empty when either side has (numerically) zero variance.
struct PairCorrelation {
    AgentId a = 0;
    AgentId b = 0;
    Axis axis = Axis::x;
    std::optional<double> rho;
};

/// Synchronicity of a run: pairwise correlations averaged per axis, then
/// across axes.
struct CorrelationReport {
    std::string name;
    double rho_x_mean = 0.0;
    double rho_y_mean = 0.0;
    double combined = 0.0;  ///< (rho_x_mean + rho_y_mean) / 2
    std::vector<PairCorrelation> pairs;
    double window_start = 0.0;
    double window_end = 0.0;
    std::vector<std::string> warnings;
};

/// Mean and spread of the combined column over a group of runs. The spread
/// is the sample standard deviation (n-1), 0 for a single run.
struct GroupSummary {
    double mean = 0.0;
    double stddev = 0.0;
    int count = 0;
};

/// Ordinary least squares line fit. Requires at least two samples and
/// non-constant t.
void fit_line(std::span<const double> t, std::span<const double> y, double& slope,
              double& intercept);

/// Removes the least-squares line from y over t.
DetrendedSignal detrend(std::span<const double> t, std::span<const double> y);

/// Two-pass Pearson correlation; empty when either input is constant.
std::optional<double> pearson(std::span<const double> a, std::span<const double> b);

/// Detrends every agent's x and y position over [t_start, t_end] and
/// correlates all pairs. Zero-variance pairs are skipped with a warning and
/// excluded from the means; an axis with no usable pairs reports 0 with a
/// warning.
CorrelationReport synchronicity(const TrajectoryLog& log, double t_start, double t_end);

GroupSummary summarize(std::span<const CorrelationReport> reports);

/// One labeled block of a comparison table.
struct ReportSection {
    std::string label;
    std::vector<CorrelationReport> rows;
};

/// Fixed-width text table: one row per run (x, y, combined), one summary
/// row per section.
void write_report_text(std::ostream& out, std::span<const ReportSection> sections);

/// Same content as CSV: section,run,rho_x,rho_y,combined plus summary rows.
void write_report_csv(std::ostream& out, std::span<const ReportSection> sections);

}  // namespace swarmlift
