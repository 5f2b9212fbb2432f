#ifndef SPLITCHIRP_CHANNEL_HPP
#define SPLITCHIRP_CHANNEL_HPP

#include <random>

#include "splitchirp/phy.hpp"

namespace splitchirp {

enum class ChannelKind { ideal, awgn, rayleigh };

struct ChannelModel {
    ChannelKind kind = ChannelKind::ideal;
    double snr_db = 0.0;   // ignored for ideal
    double sigma2 = 0.0;   // explicit noise variance; 0 derives it from the
                           // transmitted power (see noise_variance)
    void validate() const;
};

struct ChannelRealization {
    cplx h = cplx(1.0, 0.0);
};

// Complex circular Gaussian gain with E|h|^2 = 1.
cplx draw_fading(std::mt19937_64& rng);

// Per-sample complex noise variance for a given SNR and average signal
// power: sigma^2 = power / (2 * snr_linear). With the default unit-power
// tones this makes the per-symbol deflection E_s/sigma^2 = 2 * N_s * snr,
// the convention calibrated once against the Eq.-7-style bounds (see README).
double noise_variance(double snr_db, double avg_power);

struct PropagateResult {
    Waveform y;
    ChannelRealization realization;
};

// y[n] = h x[n] + w[n]; h per kind, w complex white Gaussian. The fading
// gain is redrawn on every call (block fading per channel use).
PropagateResult propagate(const Waveform& x, const ChannelModel& model, std::mt19937_64& rng);

}  // namespace splitchirp

#endif
