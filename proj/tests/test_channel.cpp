#include <doctest.h>

#include <cmath>
#include <random>

#include "splitchirp/channel.hpp"

using namespace splitchirp;

TEST_CASE("ideal channel is exact") {
    std::mt19937_64 rng(1);
    Waveform x(64);
    for (size_t n = 0; n < x.size(); ++n)
        x[n] = cplx(std::cos(0.1 * n), std::sin(0.07 * n));
    PropagateResult r = propagate(x, ChannelModel{ChannelKind::ideal, 0.0}, rng);
    CHECK(r.y == x);
    CHECK(r.realization.h == cplx(1.0, 0.0));

    double ein = 0.0, eout = 0.0;
    for (size_t n = 0; n < x.size(); ++n) {
        ein += std::norm(x[n]);
        eout += std::norm(r.y[n]);
    }
    CHECK(ein == eout);
}

TEST_CASE("very high snr awgn is the identity to 1e-10") {
    std::mt19937_64 rng(2);
    Waveform x(128, cplx(1.0, 0.0));
    PropagateResult r = propagate(x, ChannelModel{ChannelKind::awgn, 300.0}, rng);
    for (size_t n = 0; n < x.size(); ++n)
        CHECK(std::abs(r.y[n] - x[n]) < 1e-10);
}

TEST_CASE("awgn noise variance follows the documented mapping") {
    // sigma^2 = power / (2 snr): at 0 dB and unit power, 0.5 per complex
    // sample
    std::mt19937_64 rng(3);
    Waveform x(1000, cplx(1.0, 0.0));
    const ChannelModel ch{ChannelKind::awgn, 0.0};
    double acc = 0.0;
    long count = 0;
    for (int rep = 0; rep < 100; ++rep) {
        PropagateResult r = propagate(x, ch, rng);
        for (size_t n = 0; n < x.size(); ++n) {
            acc += std::norm(r.y[n] - x[n]);
            ++count;
        }
    }
    CHECK(acc / count == doctest::Approx(0.5).epsilon(0.02));

    // explicit override wins
    std::mt19937_64 rng2(3);
    const ChannelModel ov{ChannelKind::awgn, 0.0, 0.125};
    acc = 0.0;
    count = 0;
    for (int rep = 0; rep < 100; ++rep) {
        PropagateResult r = propagate(x, ov, rng2);
        for (size_t n = 0; n < x.size(); ++n) {
            acc += std::norm(r.y[n] - x[n]);
            ++count;
        }
    }
    CHECK(acc / count == doctest::Approx(0.125).epsilon(0.02));
}

TEST_CASE("rayleigh fading statistics") {
    std::mt19937_64 rng(4);
    const long draws = 1000000;
    double pow_acc = 0.0;
    long below_one = 0;
    for (long i = 0; i < draws; ++i) {
        const cplx h = draw_fading(rng);
        pow_acc += std::norm(h);
        if (std::abs(h) <= 1.0) ++below_one;
    }
    CHECK(pow_acc / draws == doctest::Approx(1.0).epsilon(0.005));
    // P(|h| <= 1) = 1 - exp(-1)
    CHECK(double(below_one) / draws ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(0.01));
}

TEST_CASE("fading and noise are reproducible under a seed") {
    Waveform x(32, cplx(0.5, -0.25));
    const ChannelModel ch{ChannelKind::rayleigh, -5.0};
    std::mt19937_64 a(99), b(99);
    PropagateResult ra = propagate(x, ch, a);
    PropagateResult rb = propagate(x, ch, b);
    CHECK(ra.realization.h == rb.realization.h);
    CHECK(ra.y == rb.y);

    std::mt19937_64 c(100);
    PropagateResult rc = propagate(x, ch, c);
    CHECK(ra.realization.h != rc.realization.h);
}

TEST_CASE("noise is white") {
    std::mt19937_64 rng(5);
    Waveform zero(1000, cplx(0.0, 0.0));
    const ChannelModel ch{ChannelKind::awgn, 0.0, 1.0};
    std::vector<cplx> w;
    w.reserve(1000000);
    for (int rep = 0; rep < 1000; ++rep) {
        PropagateResult r = propagate(zero, ch, rng);
        for (const cplx& v : r.y) w.push_back(v);
    }
    cplx lag0(0.0, 0.0);
    for (const cplx& v : w) lag0 += v * std::conj(v);
    for (int lag : {1, 2, 5, 10}) {
        cplx acc(0.0, 0.0);
        for (size_t n = 0; n + lag < w.size(); ++n)
            acc += w[n + lag] * std::conj(w[n]);
        CHECK(std::abs(acc) < 0.01 * std::abs(lag0));
    }
}

TEST_CASE("channel validation") {
    ChannelModel bad{ChannelKind::awgn, std::nan("")};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    ChannelModel neg{ChannelKind::awgn, 0.0, -1.0};
    CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
}
