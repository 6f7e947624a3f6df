#pragma once

#include <stdexcept>

namespace swarmlift {

/// Thrown when samples arrive with non-increasing timestamps.
struct NonMonotonicTimeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Outputs of one filter update.
struct EmaUpdate {
    double filtered = 0.0;      ///< smoothed value after this sample
    double rate = 0.0;          ///< gated derivative estimate fed to control
    double rate_simple = 0.0;   ///< (d - filtered)/tau, robust to uneven sampling
    double rate_regular = 0.0;  ///< exact-on-ramps form, valid for steady sampling
    bool regular = false;       ///< whether the steady-sampling form was selected
};

/// Exponential smoothing of a sampled scalar with derivative estimation,
/// for signals measured at millisecond-jittery intervals (e.g. inter-robot
/// distances reconstructed from radio messages).
///
/// The smoothed value after a sample d at time t is
///   filtered' = w*filtered + (1-w)*d,  w = exp(-dt/tau),
/// seeded with the first sample. Two derivative forms are computed:
/// rate_simple = (d - filtered')/tau holds for arbitrary sample spacing;
/// rate_regular = (1-w)*(d - filtered')/(w*dt) recovers a ramp's slope
/// exactly once spacing is steady. The `rate` field selects between them
/// by comparing consecutive intervals, and stays 0 until the filter has
/// seen samples spanning three time constants so control never acts on a
/// half-converged estimate.
class EmaDerivativeFilter {
public:
    explicit EmaDerivativeFilter(double tau = 0.2);

    /// Feeds one sample. Timestamps must strictly increase.
    EmaUpdate update(double t, double d);

    double tau() const { return tau_; }
    double filtered() const { return filtered_; }
    bool initialized() const { return initialized_; }

    /// Interval jitter below this fraction counts as steady sampling.
    static constexpr double kJitterFraction = 0.05;
    /// Time constants of data required before `rate` unfreezes.
    static constexpr double kBurnInTaus = 3.0;

private:
    double tau_;
    double filtered_ = 0.0;
    double first_time_ = 0.0;
    double last_time_ = 0.0;
    double last_dt_ = 0.0;
    bool initialized_ = false;
};

}  // namespace swarmlift
