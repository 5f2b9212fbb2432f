#include "splitchirp/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace splitchirp {

namespace {
// Uniform in (0, 1]; 53-bit mantissa from the top of the generator word.
inline double u01(std::mt19937_64& rng) {
    return double((rng() >> 11) + 1) * 0x1.0p-53;
}

// Box-Muller pair; hand-rolled so the noise stream is identical across
// standard libraries for a given seed.
inline void gauss_pair(std::mt19937_64& rng, double& a, double& b) {
    const double u1 = u01(rng);
    const double u2 = u01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    a = r * std::cos(th);
    b = r * std::sin(th);
}
}  // namespace

void ChannelModel::validate() const {
    if (!std::isfinite(snr_db)) throw std::invalid_argument("channel: snr_db must be finite");
    if (sigma2 < 0.0) throw std::invalid_argument("channel: sigma2 must be nonnegative");
}

cplx draw_fading(std::mt19937_64& rng) {
    double re, im;
    gauss_pair(rng, re, im);
    return cplx(re, im) / std::numbers::sqrt2;
}

double noise_variance(double snr_db, double avg_power) {
    const double snr = std::pow(10.0, snr_db / 10.0);
    return avg_power / (2.0 * snr);
}

PropagateResult propagate(const Waveform& x, const ChannelModel& model, std::mt19937_64& rng) {
    model.validate();
    PropagateResult out;
    out.y = x;
    if (model.kind == ChannelKind::ideal)
        return out;

    if (model.kind == ChannelKind::rayleigh)
        out.realization.h = draw_fading(rng);

    double sigma2 = model.sigma2;
    if (sigma2 <= 0.0) {
        double power = 0.0;
        for (const cplx& v : x) power += std::norm(v);
        power /= double(x.size());
        sigma2 = noise_variance(model.snr_db, power);
    }

    const double s = std::sqrt(sigma2 / 2.0);
    const double hr = out.realization.h.real();
    const double hi = out.realization.h.imag();
    for (size_t n = 0; n < out.y.size(); ++n) {
        double wr, wi;
        gauss_pair(rng, wr, wi);
        const double xr = x[n].real(), xi = x[n].imag();
        out.y[n] = cplx(hr * xr - hi * xi + s * wr, hr * xi + hi * xr + s * wi);
    }
    return out;
}

}  // namespace splitchirp
