#include "splitchirp/phy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace splitchirp {

namespace {
constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Unit-amplitude tone table for one waveform length; row k holds
// cos(pi(2k+1)(2n+1)/(4 L)) for n = 0..L-1. Shared read-only across threads.
struct ToneBank {
    int len = 0;
    std::vector<double> t;  // [k * len + n]
    const double* row(int k) const { return t.data() + size_t(k) * len; }
};

const ToneBank& tone_bank(int len) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<ToneBank>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(len);
    if (it == cache.end()) {
        auto bank = std::make_unique<ToneBank>();
        bank->len = len;
        bank->t.resize(size_t(len) * len);
        for (int k = 0; k < len; ++k)
            for (int n = 0; n < len; ++n)
                bank->t[size_t(k) * len + n] =
                    std::cos(kPi * (2.0 * k + 1.0) * (2.0 * n + 1.0) / (4.0 * len));
        it = cache.emplace(len, std::move(bank)).first;
    }
    return *it->second;
}

cplx correlate(const Waveform& y, const double* tone, int len) {
    double re = 0.0, im = 0.0;
    for (int n = 0; n < len; ++n) {
        re += y[n].real() * tone[n];
        im += y[n].imag() * tone[n];
    }
    return cplx(re, im);
}

// --- fast transform path ------------------------------------------------
// The full correlation bank <y, tone_k> for k = 0..L-1 is a DCT-IV of the
// real and imaginary parts. Each DCT-IV is computed by a quarter-bin ramp,
// a zero-padded FFT of length 2L, and a post-twiddle; non power-of-two
// lengths fall back to the table product.

struct FftPlan {
    int n = 0;
    std::vector<int> rev;
    std::vector<cplx> w;  // w[j] = exp(-2 pi i j / n), j < n/2
};

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

const FftPlan& fft_plan(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<FftPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto p = std::make_unique<FftPlan>();
        p->n = n;
        p->rev.resize(n);
        int bits = 0;
        while ((1 << bits) < n) ++bits;
        for (int i = 0; i < n; ++i) {
            int r = 0;
            for (int b = 0; b < bits; ++b)
                if (i & (1 << b)) r |= 1 << (bits - 1 - b);
            p->rev[i] = r;
        }
        p->w.resize(n / 2);
        for (int j = 0; j < n / 2; ++j) {
            const double ph = -2.0 * kPi * j / n;
            p->w[j] = cplx(std::cos(ph), std::sin(ph));
        }
        it = cache.emplace(n, std::move(p)).first;
    }
    return *it->second;
}

void fft_inplace(cplx* a, const FftPlan& p) {
    const int n = p.n;
    for (int i = 0; i < n; ++i) {
        const int r = p.rev[i];
        if (i < r) std::swap(a[i], a[r]);
    }
    // butterflies on raw doubles; std::complex operator* is not inlined
    // without fast-math and dominates the profile otherwise
    double* d = reinterpret_cast<double*>(a);
    const double* w = reinterpret_cast<const double*>(p.w.data());
    for (int len = 2; len <= n; len <<= 1) {
        const int half = len / 2;
        const int step = n / len;
        for (int base = 0; base < n; base += len) {
            for (int j = 0; j < half; ++j) {
                const size_t wi = 2 * size_t(j) * step;
                const size_t lo = 2 * size_t(base + j);
                const size_t hi = 2 * size_t(base + j + half);
                const double wr = w[wi], wim = w[wi + 1];
                const double xr = d[hi], xi = d[hi + 1];
                const double tr = xr * wr - xi * wim;
                const double ti = xr * wim + xi * wr;
                d[hi] = d[lo] - tr;
                d[hi + 1] = d[lo + 1] - ti;
                d[lo] += tr;
                d[lo + 1] += ti;
            }
        }
    }
}

struct Dct4Plan {
    int len = 0;
    bool fast = false;
    std::vector<cplx> ramp;   // exp(-2 pi i n / (4L)), n < L
    std::vector<cplx> post;   // exp(-i pi (2k+1) / (4L)), k < L
};

const Dct4Plan& dct4_plan(int len) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Dct4Plan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(len);
    if (it == cache.end()) {
        auto p = std::make_unique<Dct4Plan>();
        p->len = len;
        p->fast = is_pow2(2 * len);
        if (p->fast) {
            p->ramp.resize(len);
            p->post.resize(len);
            for (int n = 0; n < len; ++n) {
                const double ph = -2.0 * kPi * n / (4.0 * len);
                p->ramp[n] = cplx(std::cos(ph), std::sin(ph));
            }
            for (int k = 0; k < len; ++k) {
                const double ph = -kPi * (2.0 * k + 1.0) / (4.0 * len);
                p->post[k] = cplx(std::cos(ph), std::sin(ph));
            }
        }
        it = cache.emplace(len, std::move(p)).first;
    }
    return *it->second;
}

// out[k] = sum_n x[n] cos(pi(2n+1)(2k+1)/(4 len))
void dct4_all(const double* x, int len, double* out) {
    const Dct4Plan& plan = dct4_plan(len);
    if (!plan.fast) {
        const ToneBank& bank = tone_bank(len);
        for (int k = 0; k < len; ++k) {
            const double* row = bank.row(k);
            double acc = 0.0;
            for (int n = 0; n < len; ++n) acc += x[n] * row[n];
            out[k] = acc;
        }
        return;
    }
    const FftPlan& fp = fft_plan(2 * len);
    thread_local std::vector<cplx> g;
    g.assign(2 * len, cplx(0.0, 0.0));
    const double* ramp = reinterpret_cast<const double*>(plan.ramp.data());
    double* gd = reinterpret_cast<double*>(g.data());
    for (int n = 0; n < len; ++n) {
        gd[2 * n] = x[n] * ramp[2 * n];
        gd[2 * n + 1] = x[n] * ramp[2 * n + 1];
    }
    fft_inplace(g.data(), fp);
    const double* post = reinterpret_cast<const double*>(plan.post.data());
    for (int k = 0; k < len; ++k)
        out[k] = post[2 * k] * gd[2 * k] - post[2 * k + 1] * gd[2 * k + 1];
}

// c[k] = <y, tone_k> for the whole alphabet (length == alphabet here).
void corr_all(const Waveform& y, std::vector<cplx>& out) {
    const int len = int(y.size());
    thread_local std::vector<double> re, im, cr, ci;
    re.resize(len); im.resize(len); cr.resize(len); ci.resize(len);
    for (int n = 0; n < len; ++n) {
        re[n] = y[n].real();
        im[n] = y[n].imag();
    }
    dct4_all(re.data(), len, cr.data());
    dct4_all(im.data(), len, ci.data());
    out.resize(len);
    for (int k = 0; k < len; ++k)
        out[k] = cplx(cr[k], ci[k]);
}
}  // namespace

void PhyConfig::validate() const {
    require(n >= 2 && n % 2 == 0, "phy: n must be even and >= 2");
    require(carrier_amp > 0.0, "phy: carrier_amp must be positive");
    require(extension >= 1, "phy: extension must be >= 1");
    require(symbol_period > 0.0, "phy: symbol_period must be positive");
}

QuantResult quantize(double z, const PhyConfig& cfg) {
    require(std::isfinite(z), "quantize: non-finite input");
    QuantResult out;
    out.raw = std::llround(cfg.n * (z + 1.0) / 2.0);  // round half away from zero
    if (cfg.mode == Mode::plain_fsk) {
        const long hi = long(cfg.alphabet()) - 1;
        long k = std::clamp(out.raw, 0L, hi);
        out.clamped = (k != out.raw);
        out.sym = SymbolIndex{int(k), 1};
    } else {
        FoldedIndex f = fold_index(out.raw, cfg.n);
        out.sym = SymbolIndex{int(f.k), f.sign};
    }
    return out;
}

double dequantize(SymbolIndex s, int n) {
    return -1.0 + 2.0 * double(s.k) / double(n);
}

namespace {
Waveform make_tone(int k, int sign, const PhyConfig& cfg) {
    const int len = cfg.n_samples();
    require(k >= 0 && k < cfg.alphabet(), "modulate: index out of range");
    const ToneBank& bank = tone_bank(len);
    const double* row = bank.row(k);
    const double amp = cfg.carrier_amp * sign;
    Waveform w(len);
    for (int n = 0; n < len; ++n)
        w[n] = cplx(amp * row[n], 0.0);
    return w;
}
}  // namespace

Waveform modulate_fsk(SymbolIndex s, const PhyConfig& cfg) {
    require(cfg.mode == Mode::plain_fsk, "modulate_fsk: config not in plain mode");
    return make_tone(s.k, 1, cfg);
}

Waveform modulate_fsk_bpsk(SymbolIndex s, const PhyConfig& cfg) {
    require(cfg.mode == Mode::fsk_bpsk, "modulate_fsk_bpsk: config not in fsk_bpsk mode");
    require(s.sign == 1 || s.sign == -1, "modulate_fsk_bpsk: sign must be +-1");
    return make_tone(s.k, s.sign, cfg);
}

std::vector<cplx> chirp(int m, int n_samples) {
    require(n_samples >= 2 && n_samples % 2 == 0, "chirp: length must be even");
    require(m >= 0 && m < n_samples, "chirp: stream index out of range");
    std::vector<cplx> psi(n_samples);
    for (int n = 0; n < n_samples; ++n) {
        const double d = double(n - m);
        const double ph = -kPi / double(n_samples) * d * d;
        psi[n] = cplx(std::cos(ph), std::sin(ph));
    }
    return psi;
}

Waveform ocdm_multiplex(const std::vector<Waveform>& waveforms) {
    require(!waveforms.empty(), "ocdm_multiplex: no streams");
    const size_t len = waveforms[0].size();
    require(waveforms.size() <= len, "ocdm_multiplex: more streams than samples");
    for (const Waveform& w : waveforms)
        require(w.size() == len, "ocdm_multiplex: length mismatch");
    Waveform out(len, cplx(0.0, 0.0));
    for (size_t m = 0; m < waveforms.size(); ++m) {
        std::vector<cplx> psi = chirp(int(m), int(len));
        for (size_t n = 0; n < len; ++n)
            out[n] += waveforms[m][n] * psi[n];
    }
    return out;
}

Waveform ocdm_dechirp(const Waveform& y, int m) {
    std::vector<cplx> psi = chirp(m, int(y.size()));
    Waveform out(y.size());
    for (size_t n = 0; n < y.size(); ++n)
        out[n] = y[n] * std::conj(psi[n]);
    return out;
}

SymbolIndex demodulate_noncoherent(const Waveform& y, const PhyConfig& cfg) {
    const int len = cfg.n_samples();
    require(int(y.size()) == len, "demodulate: waveform length mismatch");
    std::vector<cplx> c;
    corr_all(y, c);
    int best_k = 0;
    double best = -1.0;
    for (int k = 0; k < cfg.alphabet(); ++k) {
        const double mag = std::norm(c[k]);
        if (mag > best) {
            best = mag;
            best_k = k;
        }
    }
    return SymbolIndex{best_k, 1};
}

SymbolIndex demodulate_coherent(const Waveform& y, cplx h, const PhyConfig& cfg) {
    require(std::abs(h) > 1e-12, "demodulate_coherent: channel gain too small");
    const int len = cfg.n_samples();
    require(int(y.size()) == len, "demodulate: waveform length mismatch");
    const cplx hinv = 1.0 / h;
    std::vector<double> eq(len), re(len);
    for (int n = 0; n < len; ++n)
        eq[n] = (y[n] * hinv).real();
    dct4_all(eq.data(), len, re.data());
    int best_k = 0;
    double best = -1.0, best_re = 0.0;
    for (int k = 0; k < cfg.alphabet(); ++k) {
        const double mag = std::abs(re[k]);
        if (mag > best) {
            best = mag;
            best_k = k;
            best_re = re[k];
        }
    }
    return SymbolIndex{best_k, best_re >= 0.0 ? 1 : -1};
}

// ---------------------------------------------------------------------------
// OCDM joint demodulation.
//
// Dechirping with the wrong stream offset shifts an interfering tone by an
// integer number of bins, so the plain filter bank collides whenever two
// streams carry suitably spaced symbols. The pic/exact efforts treat the
// superposition as a least-squares problem over one tone per stream and
// refine by interference cancellation; exact escalates through pairwise and
// enumerative repairs until the residual vanishes.
// ---------------------------------------------------------------------------

namespace {
struct OcdmWork {
    const PhyConfig* cfg;
    int len;
    int streams;
    int alphabet;
    const ToneBank* bank;
    std::vector<std::vector<cplx>> psis;       // per-stream chirps
    std::vector<Waveform> recon;               // per-stream reconstructed candidate
    Waveform y;                                // equalized input

    // signed index per stream: plain mode stores sign +1 always
    std::vector<int> k;
    std::vector<int> sign;

    bool bpsk() const { return cfg->mode == Mode::fsk_bpsk; }

    void rebuild(int m) {
        const double* tone = bank->row(k[m]);
        const double s = sign[m];
        for (int n = 0; n < len; ++n)
            recon[m][n] = s * tone[n] * psis[m][n];
    }

    Waveform residual_excluding(int skip) const {
        Waveform r = y;
        for (int m = 0; m < streams; ++m) {
            if (m == skip) continue;
            for (int n = 0; n < len; ++n)
                r[n] -= recon[m][n];
        }
        return r;
    }

    double residual2() const {
        double acc = 0.0;
        for (int n = 0; n < len; ++n) {
            cplx r = y[n];
            for (int m = 0; m < streams; ++m)
                r -= recon[m][n];
            acc += std::norm(r);
        }
        return acc;
    }

    // Best (k, sign) for stream m against residual r by the LS score
    // Re<r psi_m^*, tone_k> (energies are equal across candidates).
    // In bpsk mode the sign doubles the candidate set, which is the
    // same as scoring |Re| and taking its sign.
    std::pair<int, int> best_against(const Waveform& r, int m) const {
        std::vector<double> d(len), re(len);
        for (int n = 0; n < len; ++n)
            d[n] = (r[n] * std::conj(psis[m][n])).real();
        dct4_all(d.data(), len, re.data());
        int bk = 0, bs = 1;
        double best = -1e300;
        for (int kk = 0; kk < alphabet; ++kk) {
            const double sc = bpsk() ? std::abs(re[kk]) : re[kk];
            if (sc > best) {
                best = sc;
                bk = kk;
                bs = (bpsk() && re[kk] < 0.0) ? -1 : 1;
            }
        }
        return {bk, bs};
    }

    // One pass of per-stream refinement; returns true if anything changed.
    bool cd_sweep() {
        bool changed = false;
        for (int m = 0; m < streams; ++m) {
            Waveform r = residual_excluding(m);
            auto [bk, bs] = best_against(r, m);
            if (bk != k[m] || bs != sign[m]) {
                k[m] = bk;
                sign[m] = bs;
                rebuild(m);
                changed = true;
            }
        }
        return changed;
    }

    void cd(int max_sweeps = 16) {
        for (int it = 0; it < max_sweeps; ++it)
            if (!cd_sweep()) break;
    }
};

constexpr double kExactTol = 1e-9;

bool solved(const OcdmWork& w) { return w.residual2() < kExactTol * double(w.len); }

void exact_escalate(OcdmWork& w) {
    const int M = w.streams;
    // Stage: best pairwise repair, polished by coordinate descent.
    {
        std::vector<int> save_k = w.k, save_s = w.sign;
        double best_res = w.residual2();
        std::vector<int> best_k = w.k, best_sign = w.sign;
        for (int m1 = 0; m1 < M && best_res >= kExactTol * w.len; ++m1) {
            for (int m2 = m1 + 1; m2 < M; ++m2) {
                w.k = save_k;
                w.sign = save_s;
                for (int m = 0; m < M; ++m) w.rebuild(m);
                // joint argmax over (k1, k2) of the LS score
                Waveform r2 = w.y;
                for (int m = 0; m < M; ++m) {
                    if (m == m1 || m == m2) continue;
                    for (int n = 0; n < w.len; ++n) r2[n] -= w.recon[m][n];
                }
                std::vector<double> d1(w.len), d2(w.len);
                for (int n = 0; n < w.len; ++n) {
                    d1[n] = (r2[n] * std::conj(w.psis[m1][n])).real();
                    d2[n] = (r2[n] * std::conj(w.psis[m2][n])).real();
                }
                std::vector<double> c1(w.alphabet), c2(w.alphabet);
                dct4_all(d1.data(), w.len, c1.data());
                dct4_all(d2.data(), w.len, c2.data());
                // cross energies <s1, s2> between chirped tones
                std::vector<cplx> x12(w.len);
                for (int n = 0; n < w.len; ++n)
                    x12[n] = w.psis[m1][n] * std::conj(w.psis[m2][n]);
                // LS score of the joint choice: C1 + C2 - <s1, s2>, maximized
                // over the sign combinations in bpsk mode.
                double bsc = -1e300;
                int bi = 0, bj = 0, bs1 = 1, bs2 = 1;
                const auto signs = w.bpsk() ? std::vector<int>{1, -1} : std::vector<int>{1};
                for (int i = 0; i < w.alphabet; ++i) {
                    const double* t1 = w.bank->row(i);
                    for (int j = 0; j < w.alphabet; ++j) {
                        const double* t2 = w.bank->row(j);
                        double cross = 0.0;
                        for (int n = 0; n < w.len; ++n)
                            cross += t1[n] * t2[n] * x12[n].real();
                        for (int s1 : signs) {
                            for (int s2 : signs) {
                                const double sc = s1 * c1[i] + s2 * c2[j] - s1 * s2 * cross;
                                if (sc > bsc) {
                                    bsc = sc;
                                    bi = i;
                                    bj = j;
                                    bs1 = s1;
                                    bs2 = s2;
                                }
                            }
                        }
                    }
                }
                w.k[m1] = bi;
                w.k[m2] = bj;
                w.sign[m1] = bs1;
                w.sign[m2] = bs2;
                w.rebuild(m1);
                w.rebuild(m2);
                w.cd();
                const double res = w.residual2();
                if (res < best_res) {
                    best_res = res;
                    best_k = w.k;
                    best_sign = w.sign;
                }
                if (best_res < kExactTol * w.len) break;
            }
        }
        w.k = best_k;
        w.sign = best_sign;
        for (int m = 0; m < M; ++m) w.rebuild(m);
        if (solved(w)) return;
    }
    // Stage: enumerate one stream's full alphabet, coordinate descent on the rest.
    {
        std::vector<int> save_k = w.k, save_s = w.sign;
        for (int m0 = 0; m0 < M; ++m0) {
            for (int k0 = 0; k0 < w.alphabet; ++k0) {
                for (int s0 : w.bpsk() ? std::vector<int>{1, -1} : std::vector<int>{1}) {
                    w.k = save_k;
                    w.sign = save_s;
                    w.k[m0] = k0;
                    w.sign[m0] = s0;
                    for (int m = 0; m < M; ++m) w.rebuild(m);
                    w.cd(8);
                    if (solved(w)) return;
                }
            }
        }
        w.k = save_k;
        w.sign = save_s;
        for (int m = 0; m < M; ++m) w.rebuild(m);
    }
    // Stage: enumerate pairs over per-stream shortlists.
    {
        const int shortlist = std::min(24, w.alphabet);
        std::vector<std::vector<int>> lists(M);
        for (int m = 0; m < M; ++m) {
            Waveform d(w.len);
            for (int n = 0; n < w.len; ++n)
                d[n] = w.y[n] * std::conj(w.psis[m][n]);
            std::vector<cplx> corr;
            corr_all(d, corr);
            std::vector<std::pair<double, int>> scored(w.alphabet);
            for (int kk = 0; kk < w.alphabet; ++kk)
                scored[kk] = {std::abs(corr[kk]), kk};
            std::partial_sort(scored.begin(), scored.begin() + shortlist, scored.end(),
                              [](auto& a, auto& b) { return a.first > b.first; });
            for (int i = 0; i < shortlist; ++i)
                lists[m].push_back(scored[i].second);
        }
        std::vector<int> save_k = w.k, save_s = w.sign;
        for (int m1 = 0; m1 < M; ++m1) {
            for (int m2 = m1 + 1; m2 < M; ++m2) {
                for (int k1 : lists[m1]) {
                    for (int k2 : lists[m2]) {
                        for (int s1 : w.bpsk() ? std::vector<int>{1, -1} : std::vector<int>{1}) {
                            for (int s2 : w.bpsk() ? std::vector<int>{1, -1} : std::vector<int>{1}) {
                                w.k = save_k;
                                w.sign = save_s;
                                w.k[m1] = k1;
                                w.sign[m1] = s1;
                                w.k[m2] = k2;
                                w.sign[m2] = s2;
                                for (int m = 0; m < M; ++m) w.rebuild(m);
                                w.cd(8);
                                if (solved(w)) return;
                            }
                        }
                    }
                }
            }
        }
        w.k = save_k;
        w.sign = save_s;
        for (int m = 0; m < M; ++m) w.rebuild(m);
    }
}
}  // namespace

std::vector<SymbolIndex> ocdm_demodulate(const Waveform& y, int streams, const PhyConfig& cfg,
                                         OcdmEffort effort, cplx h) {
    const int len = cfg.n_samples();
    require(int(y.size()) == len, "ocdm_demodulate: waveform length mismatch");
    require(streams >= 1 && streams <= len, "ocdm_demodulate: bad stream count");

    OcdmWork w;
    w.cfg = &cfg;
    w.len = len;
    w.streams = streams;
    w.alphabet = cfg.alphabet();
    w.bank = &tone_bank(len);
    w.psis.resize(streams);
    for (int m = 0; m < streams; ++m)
        w.psis[m] = chirp(m, len);

    w.y = y;
    if (effort != OcdmEffort::fast) {
        require(std::abs(h) > 1e-12, "ocdm_demodulate: channel gain too small");
        const cplx hinv = 1.0 / (h * cfg.carrier_amp);
        for (cplx& v : w.y) v *= hinv;  // unit-amplitude reference
    }

    // Per-stream matched filter (phase-blind in fast mode).
    w.k.assign(streams, 0);
    w.sign.assign(streams, 1);
    for (int m = 0; m < streams; ++m) {
        Waveform d(len);
        for (int n = 0; n < len; ++n)
            d[n] = w.y[n] * std::conj(w.psis[m][n]);
        std::vector<cplx> c;
        corr_all(d, c);
        int bk = 0, bs = 1;
        double best = -1.0;
        for (int kk = 0; kk < w.alphabet; ++kk) {
            const double mag = std::norm(c[kk]);
            if (mag > best) {
                best = mag;
                bk = kk;
                bs = (w.bpsk() && c[kk].real() < 0.0) ? -1 : 1;
            }
        }
        w.k[m] = bk;
        w.sign[m] = bs;
    }
    if (effort == OcdmEffort::fast) {
        std::vector<SymbolIndex> out(streams);
        for (int m = 0; m < streams; ++m)
            out[m] = SymbolIndex{w.k[m], w.sign[m]};
        return out;
    }

    w.recon.assign(streams, Waveform(len));
    for (int m = 0; m < streams; ++m) w.rebuild(m);
    w.cd();
    if (effort == OcdmEffort::exact && !solved(w))
        exact_escalate(w);

    std::vector<SymbolIndex> out(streams);
    for (int m = 0; m < streams; ++m)
        out[m] = SymbolIndex{w.k[m], w.sign[m]};
    return out;
}

double q_func(double x) {
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double pe_fsk(int n, double a_c, double h_mag, double n0) {
    require(n0 > 0.0, "pe_fsk: n0 must be positive");
    const double arg = a_c * a_c * h_mag * h_mag / n0;
    return std::min(1.0, (n - 1) * q_func(std::sqrt(arg)));
}

double pe_fsk_bpsk(int n, double a_c, double h_mag, double n0) {
    require(n0 > 0.0, "pe_fsk_bpsk: n0 must be positive");
    const double arg = a_c * a_c * h_mag * h_mag / n0;
    return std::min(1.0, (n - 1) * q_func(std::sqrt(arg)) + q_func(std::sqrt(2.0 * arg)));
}

double bandwidth(int n, double symbol_period) {
    require(symbol_period > 0.0, "bandwidth: symbol_period must be positive");
    return double(n) / (2.0 * symbol_period);
}

}  // namespace splitchirp
