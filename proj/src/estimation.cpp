#include "swarmlift/estimation.hpp"

#include <cmath>
#include <string>

namespace swarmlift {

EmaDerivativeFilter::EmaDerivativeFilter(double tau) : tau_(tau) {
    if (!(tau > 0.0)) throw std::domain_error("time constant must be positive");
}

EmaUpdate EmaDerivativeFilter::update(double t, double d) {
    EmaUpdate out;
    if (!initialized_) {
        initialized_ = true;
        filtered_ = d;
        first_time_ = t;
        last_time_ = t;
        out.filtered = d;
        return out;
    }
    if (!(t > last_time_))
        throw NonMonotonicTimeError("sample at t=" + std::to_string(t) +
                                    " does not advance past t=" + std::to_string(last_time_));

    const double dt = t - last_time_;
    const double w = std::exp(-dt / tau_);
    filtered_ = w * filtered_ + (1.0 - w) * d;

    out.filtered = filtered_;
    out.rate_simple = (d - filtered_) / tau_;
    out.rate_regular = (1.0 - w) * (d - filtered_) / (w * dt);
    out.regular = last_dt_ > 0.0 && std::abs(dt - last_dt_) <= kJitterFraction * dt;

    double selected = out.regular ? out.rate_regular : out.rate_simple;
    out.rate = (t - first_time_ >= kBurnInTaus * tau_) ? selected : 0.0;

    last_dt_ = dt;
    last_time_ = t;
    return out;
}

}  // namespace swarmlift
