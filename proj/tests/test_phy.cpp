#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "splitchirp/phy.hpp"

using namespace splitchirp;

namespace {
constexpr double kPi = std::numbers::pi;

cplx inner(const Waveform& a, const Waveform& b) {
    cplx acc(0.0, 0.0);
    for (size_t n = 0; n < a.size(); ++n)
        acc += a[n] * std::conj(b[n]);
    return acc;
}

PhyConfig plain_cfg(int n, int e = 1, double amp = std::numbers::sqrt2) {
    PhyConfig p;
    p.n = n;
    p.extension = e;
    p.carrier_amp = amp;
    p.mode = Mode::plain_fsk;
    return p;
}

PhyConfig bpsk_cfg(int n, double amp = std::numbers::sqrt2) {
    PhyConfig p;
    p.n = n;
    p.carrier_amp = amp;
    p.mode = Mode::fsk_bpsk;
    return p;
}
}  // namespace

TEST_CASE("quantize on the index grid") {
    PhyConfig p = plain_cfg(16);
    QuantResult q = quantize(-1.0, p);
    CHECK(q.sym.k == 0);
    CHECK(q.raw == 0);
    CHECK_FALSE(q.clamped);

    q = quantize(-1.0 + 2.0 * 5 / 16, p);
    CHECK(q.sym.k == 5);
    CHECK_FALSE(q.clamped);

    // round half away from zero: n(z+1)/2 = 2.5 and -2.5
    q = quantize(2.0 * 2.5 / 16 - 1.0, p);
    CHECK(q.raw == 3);
    q = quantize(2.0 * -2.5 / 16 - 1.0, p);
    CHECK(q.raw == -3);
    CHECK(q.sym.k == 0);
    CHECK(q.clamped);

    // clamping at the top of the extended alphabet
    PhyConfig p2 = plain_cfg(16, 2);
    q = quantize(10.0, p2);
    CHECK(q.sym.k == 31);
    CHECK(q.clamped);
}

TEST_CASE("quantize folds in fsk_bpsk mode") {
    PhyConfig p = bpsk_cfg(8);
    QuantResult q = quantize(1.2, p);  // raw = round(8.8) = 9
    CHECK(q.raw == 9);
    CHECK(q.sym.k == 1);
    CHECK(q.sym.sign == -1);
    CHECK_FALSE(q.clamped);
}

TEST_CASE("dequantize and round trips") {
    CHECK(dequantize(SymbolIndex{0, 1}, 16) == -1.0);
    CHECK(dequantize(SymbolIndex{8, 1}, 16) == 0.0);
    PhyConfig p = plain_cfg(16, 2);
    for (int k = 0; k < p.alphabet(); ++k) {
        SymbolIndex s{k, 1};
        CHECK(quantize(dequantize(s, p.n), p).sym.k == k);
    }
}

TEST_CASE("quantization error bound and halving") {
    auto max_err = [](int n) {
        PhyConfig p = plain_cfg(n, 2);
        double worst = 0.0;
        for (int i = 0; i <= 20000; ++i) {
            const double z = -1.0 + (2.0 * p.extension) * i / 20000.0 * 0.999;
            const double back = dequantize(quantize(z, p).sym, n);
            worst = std::max(worst, std::abs(back - z));
        }
        return worst;
    };
    const double e64 = max_err(64);
    const double e128 = max_err(128);
    CHECK(e64 <= 1.0 / 64 + 1e-12);
    CHECK(e128 <= 1.0 / 128 + 1e-12);
    CHECK(e128 <= 0.55 * e64);
}

TEST_CASE("fsk tones are exactly orthogonal") {
    for (int n : {8, 16, 64}) {
        PhyConfig p = plain_cfg(n);
        std::vector<Waveform> w;
        for (int k = 0; k < n; ++k)
            w.push_back(modulate_fsk(SymbolIndex{k, 1}, p));
        const double es = p.carrier_amp * p.carrier_amp * n / 2.0;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                const double g = inner(w[a], w[b]).real();
                if (a == b)
                    CHECK(g == doctest::Approx(es).epsilon(1e-12));
                else
                    CHECK(std::abs(g) < 1e-9);
            }
        }
    }
}

TEST_CASE("extended alphabet stays orthogonal") {
    PhyConfig p = plain_cfg(16, 2);
    std::vector<Waveform> w;
    for (int k = 0; k < p.alphabet(); ++k)
        w.push_back(modulate_fsk(SymbolIndex{k, 1}, p));
    for (int a = 0; a < p.alphabet(); ++a)
        for (int b = a + 1; b < p.alphabet(); ++b)
            CHECK(std::abs(inner(w[a], w[b]).real()) < 1e-9);
}

TEST_CASE("bpsk constellation geometry") {
    PhyConfig p = bpsk_cfg(16);
    Waveform plus = modulate_fsk_bpsk(SymbolIndex{5, 1}, p);
    Waveform minus = modulate_fsk_bpsk(SymbolIndex{5, -1}, p);
    for (size_t n = 0; n < plus.size(); ++n)
        CHECK(minus[n] == -plus[n]);

    // identical to the plain tone for sign +1
    PhyConfig pp = plain_cfg(16);
    Waveform tone = modulate_fsk(SymbolIndex{5, 1}, pp);
    for (size_t n = 0; n < plus.size(); ++n)
        CHECK(plus[n] == tone[n]);

    // full 2N constellation: orthogonal except sign pairs, which are
    // anti-parallel
    const double es = p.carrier_amp * p.carrier_amp * p.n / 2.0;
    for (int a = 0; a < p.n; ++a) {
        for (int b = 0; b < p.n; ++b) {
            for (int sa : {1, -1}) {
                for (int sb : {1, -1}) {
                    const double g =
                        inner(modulate_fsk_bpsk(SymbolIndex{a, sa}, p),
                              modulate_fsk_bpsk(SymbolIndex{b, sb}, p))
                            .real();
                    if (a != b)
                        CHECK(std::abs(g) < 1e-9);
                    else
                        CHECK(g == doctest::Approx(sa * sb * es).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("modulation rejects out-of-range indices") {
    PhyConfig p = plain_cfg(16);
    CHECK_THROWS_AS(modulate_fsk(SymbolIndex{16, 1}, p), std::invalid_argument);
    CHECK_THROWS_AS(modulate_fsk(SymbolIndex{-1, 1}, p), std::invalid_argument);
    PhyConfig b = bpsk_cfg(16);
    CHECK_THROWS_AS(modulate_fsk_bpsk(SymbolIndex{3, 0}, b), std::invalid_argument);
}

TEST_CASE("chirps") {
    for (int m : {0, 2, 5}) {
        auto psi = chirp(m, 8);
        CHECK(psi[m] == cplx(1.0, 0.0));
        for (const cplx& v : psi)
            CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // the spec point <psi_2, psi_5> = 0 at N_s = 8
    auto p2 = chirp(2, 8), p5 = chirp(5, 8);
    cplx acc(0.0, 0.0);
    for (int n = 0; n < 8; ++n) acc += p2[n] * std::conj(p5[n]);
    CHECK(std::abs(acc) < 1e-9);

    // full bank Gram
    for (int a = 0; a < 16; ++a) {
        for (int b = a + 1; b < 16; ++b) {
            auto pa = chirp(a, 16), pb = chirp(b, 16);
            cplx g(0.0, 0.0);
            for (int n = 0; n < 16; ++n) g += pa[n] * std::conj(pb[n]);
            CHECK(std::abs(g) < 1e-9);
        }
    }

    CHECK_THROWS_AS(chirp(0, 7), std::invalid_argument);
    CHECK_THROWS_AS(chirp(8, 8), std::invalid_argument);
}

TEST_CASE("ocdm multiplex and dechirp") {
    PhyConfig p = plain_cfg(16);
    Waveform x = modulate_fsk(SymbolIndex{3, 1}, p);

    Waveform mux = ocdm_multiplex({x});
    auto psi = chirp(0, 16);
    for (int n = 0; n < 16; ++n)
        CHECK(std::abs(mux[n] - x[n] * psi[n]) < 1e-12);

    Waveform back = ocdm_dechirp(mux, 0);
    for (int n = 0; n < 16; ++n)
        CHECK(std::abs(back[n] - x[n]) < 1e-12);

    Waveform zeros(16, cplx(0.0, 0.0));
    Waveform mz = ocdm_multiplex({zeros, zeros});
    for (const cplx& v : mz) CHECK(v == cplx(0.0, 0.0));

    // dechirp of a pure chirp gives all ones
    Waveform pure(chirp(3, 16).begin(), chirp(3, 16).end());
    Waveform ones = ocdm_dechirp(pure, 3);
    for (const cplx& v : ones)
        CHECK(std::abs(v - cplx(1.0, 0.0)) < 1e-12);

    CHECK_THROWS_AS(ocdm_multiplex({x, Waveform(8)}), std::invalid_argument);
    CHECK_THROWS_AS(ocdm_multiplex(std::vector<Waveform>(17, Waveform(16))),
                    std::invalid_argument);

    // total energy decomposes into per-stream energies plus the cross terms,
    // computed independently
    Waveform x2 = modulate_fsk(SymbolIndex{9, 1}, p);
    Waveform mux2 = ocdm_multiplex({x, x2});
    auto psi0 = chirp(0, 16), psi1 = chirp(1, 16);
    Waveform c0(16), c1(16);
    for (int n = 0; n < 16; ++n) {
        c0[n] = x[n] * psi0[n];
        c1[n] = x2[n] * psi1[n];
    }
    const double expect =
        inner(c0, c0).real() + inner(c1, c1).real() + 2.0 * inner(c0, c1).real();
    CHECK(inner(mux2, mux2).real() == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("noncoherent demodulation") {
    for (int e : {1, 2}) {
        PhyConfig p = plain_cfg(16, e);
        for (int k = 0; k < p.alphabet(); ++k) {
            Waveform w = modulate_fsk(SymbolIndex{k, 1}, p);
            CHECK(demodulate_noncoherent(w, p).k == k);
            // complex channel, magnitude detection
            Waveform rot = w;
            for (cplx& v : rot) v *= cplx(0.0, 1.0);
            CHECK(demodulate_noncoherent(rot, p).k == k);
        }
    }
}

TEST_CASE("noncoherent demodulation is phase and scale blind") {
    PhyConfig p = plain_cfg(32);
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> uph(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> ug(0.1, 4.0);
    std::normal_distribution<double> gn(0.0, 0.3);
    for (int t = 0; t < 200; ++t) {
        const int k = int(rng() % 32);
        Waveform y = modulate_fsk(SymbolIndex{k, 1}, p);
        for (cplx& v : y) v += cplx(gn(rng), gn(rng));
        const SymbolIndex base = demodulate_noncoherent(y, p);
        const cplx rot = std::polar(ug(rng), uph(rng));
        Waveform y2 = y;
        for (cplx& v : y2) v *= rot;
        const SymbolIndex rotated = demodulate_noncoherent(y2, p);
        CHECK(rotated.k == base.k);
    }
}

TEST_CASE("coherent demodulation recovers index and sign") {
    PhyConfig p = bpsk_cfg(16);
    for (int k = 0; k < p.n; ++k) {
        for (int s : {1, -1}) {
            Waveform w = modulate_fsk_bpsk(SymbolIndex{k, s}, p);
            SymbolIndex r = demodulate_coherent(w, cplx(1.0, 0.0), p);
            CHECK(r.k == k);
            CHECK(r.sign == s);

            const cplx h = std::polar(0.8, kPi / 3.0);
            Waveform y = w;
            for (cplx& v : y) v *= h;
            r = demodulate_coherent(y, h, p);
            CHECK(r.k == k);
            CHECK(r.sign == s);
        }
    }
    CHECK_THROWS_AS(
        demodulate_coherent(modulate_fsk_bpsk(SymbolIndex{0, 1}, p), cplx(0.0, 0.0), p),
        std::invalid_argument);
}

TEST_CASE("ocdm joint demodulation recovers all streams noiselessly") {
    PhyConfig p = plain_cfg(128);
    std::mt19937_64 rng(71);
    int naive_stream_errors = 0;
    const int frames = 300;
    for (int t = 0; t < frames; ++t) {
        std::vector<SymbolIndex> tx(6);
        std::vector<Waveform> streams(6);
        for (int m = 0; m < 6; ++m) {
            tx[m] = SymbolIndex{int(rng() % 128), 1};
            streams[m] = modulate_fsk(tx[m], p);
        }
        Waveform mux = ocdm_multiplex(streams);

        // plain per-stream filter bank has residual cross-stream collisions;
        // record its error rate as a characterization
        for (int m = 0; m < 6; ++m) {
            SymbolIndex naive = demodulate_noncoherent(ocdm_dechirp(mux, m), p);
            if (naive.k != tx[m].k) ++naive_stream_errors;
        }

        auto joint = ocdm_demodulate(mux, 6, p, OcdmEffort::exact);
        for (int m = 0; m < 6; ++m) {
            CHECK(joint[m].k == tx[m].k);
        }
    }
    // measured at desk scale: the plain filter bank alone misses a visible
    // fraction of streams, the joint decoder must not
    CHECK(naive_stream_errors > 0);
}

TEST_CASE("demodulator correlations agree with direct summation") {
    // the transform-based bank against a direct textbook correlation, on a
    // power-of-two length (fast path) and a non power-of-two one (fallback)
    std::mt19937_64 rng(83);
    std::normal_distribution<double> gn(0.0, 1.0);
    for (int n : {16, 12}) {
        PhyConfig p = plain_cfg(n);
        for (int t = 0; t < 50; ++t) {
            Waveform y(n);
            for (cplx& v : y) v = cplx(gn(rng), gn(rng));
            int best_k = 0;
            double best = -1.0;
            for (int k = 0; k < n; ++k) {
                cplx acc(0.0, 0.0);
                for (int i = 0; i < n; ++i)
                    acc += y[i] * std::cos(kPi * (2 * k + 1) * (2 * i + 1) / (4.0 * n));
                if (std::norm(acc) > best) {
                    best = std::norm(acc);
                    best_k = k;
                }
            }
            CHECK(demodulate_noncoherent(y, p).k == best_k);
        }
    }
}

TEST_CASE("pe formulas") {
    auto q_oracle = [](double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); };

    // spec point: N=128, A^2 h^2 / N0 = 10
    const double want_fsk = 127.0 * q_oracle(std::sqrt(10.0));
    CHECK(pe_fsk(128, std::sqrt(10.0), 1.0, 1.0) == doctest::Approx(want_fsk).epsilon(1e-12));
    const double want_bpsk = want_fsk + q_oracle(std::sqrt(20.0));
    CHECK(pe_fsk_bpsk(128, std::sqrt(10.0), 1.0, 1.0) ==
          doctest::Approx(want_bpsk).epsilon(1e-12));

    // limits and clipping
    CHECK(pe_fsk(128, 1e6, 1.0, 1.0) == 0.0);
    CHECK(pe_fsk_bpsk(128, 1e6, 1.0, 1.0) == 0.0);
    CHECK(pe_fsk(3, 0.0, 1.0, 1.0) == 1.0);  // 2 Q(0) = 1 after clipping

    // term identity where nothing clips
    const double a = 2.0;
    CHECK(pe_fsk_bpsk(128, a, 1.0, 1.0) - pe_fsk(128, a, 1.0, 1.0) ==
          doctest::Approx(q_oracle(std::sqrt(2.0 * a * a))).epsilon(1e-10));

    CHECK_THROWS_AS(pe_fsk(128, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("pe bounds are valid and monotone in snr") {
    double prev_fsk = 1.1, prev_bpsk = 1.1;
    for (double arg = 0.0; arg < 30.0; arg += 0.25) {
        const double pf = pe_fsk(128, std::sqrt(std::max(arg, 1e-12)), 1.0, 1.0);
        const double pb = pe_fsk_bpsk(128, std::sqrt(std::max(arg, 1e-12)), 1.0, 1.0);
        CHECK(pf >= 0.0);
        CHECK(pf <= 1.0);
        CHECK(pb >= 0.0);
        CHECK(pb <= 1.0);
        CHECK(pf <= prev_fsk + 1e-15);
        CHECK(pb <= prev_bpsk + 1e-15);
        CHECK(pb >= pf - 1e-15);
        prev_fsk = pf;
        prev_bpsk = pb;
    }
}

TEST_CASE("bandwidth") {
    CHECK(bandwidth(128, 1e-3) == doctest::Approx(64000.0));
    CHECK(bandwidth(256, 1e-3) == doctest::Approx(2.0 * bandwidth(128, 1e-3)));
    PhyConfig p = plain_cfg(128, 4);
    CHECK(bandwidth(p.extension * p.n, p.symbol_period) == doctest::Approx(4.0 * 64000.0));
    CHECK_THROWS_AS(bandwidth(128, 0.0), std::invalid_argument);
}

TEST_CASE("config validation") {
    PhyConfig p = plain_cfg(15);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = plain_cfg(16);
    p.carrier_amp = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = plain_cfg(16, 0);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
