#include "splitchirp/split.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace splitchirp {

namespace {
void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Analytic N0 per the documented calibration: noise variance sigma^2 from
// the channel mapping, scaled by 1.17 for the noncoherent plain-FSK
// detector (fitted once at high SNR), unscaled for the coherent detector.
constexpr double kNoncoherentN0Scale = 1.17;

double symbol_energy(const PhyConfig& phy) {
    // Real tone of amplitude A_c over N_s samples.
    return phy.carrier_amp * phy.carrier_amp * phy.n_samples() / 2.0;
}

// SNR is referenced to the base-N symbol energy: an extension-E symbol is
// the same signal oversampled E-fold, so the per-sample noise variance
// scales with E and the detection quality at a given snr_db does not
// depend on E.
double channel_sigma2(const PhyConfig& phy, const ChannelModel& ch) {
    const double power = phy.carrier_amp * phy.carrier_amp / 2.0;
    const double ext = phy.mode == Mode::plain_fsk ? double(phy.extension) : 1.0;
    return ext * noise_variance(ch.snr_db, power);
}

ChannelModel resolved_channel(const PhyConfig& phy, const ChannelModel& ch) {
    ChannelModel out = ch;
    if (out.sigma2 <= 0.0 && out.kind != ChannelKind::ideal)
        out.sigma2 = channel_sigma2(phy, ch);
    return out;
}

// E[Q(sqrt(a |h|^2))] for Rayleigh h with E|h|^2 = 1.
double rayleigh_q(double a) {
    return 0.5 * (1.0 - std::sqrt(a / (a + 2.0)));
}
}  // namespace

int label_point(const std::string& labeler, double x1, double x2) {
    if (labeler == "halfplane")
        return x1 >= 0.0 ? 1 : -1;
    if (labeler == "rings") {
        const double r = std::hypot(x1, x2);
        return (r >= 0.4 && r <= 0.8) ? 1 : -1;
    }
    if (labeler == "checker2x2")
        return x1 * x2 >= 0.0 ? 1 : -1;
    throw std::invalid_argument("unknown labeler: " + labeler);
}

Dataset make_map_dataset(const std::string& labeler, int n, uint64_t seed) {
    require(n >= 1, "make_map_dataset: n must be >= 1");
    label_point(labeler, 0.0, 0.0);  // reject unknown names up front
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Dataset d;
    d.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double x1 = u(rng);
        const double x2 = u(rng);
        d.push_back(Sample{x1, x2, label_point(labeler, x1, x2)});
    }
    return d;
}

void SplitSession::validate() const {
    model.cfg.validate();
    phy.validate();
    forward_channel.validate();
    backward_channel.validate();
    require(phy.n == model.cfg.dct_size, "split: phy.n must equal the model grid size");
}

namespace {
OcdmEffort ocdm_effort_for(const ChannelModel& ch, Mode mode) {
    // Refinement needs a coherent reference: always available in fsk_bpsk
    // (genie CSI) and trivially in ideal/awgn. Blind plain-mode reception
    // under fading stays with the plain filter bank.
    if (ch.kind == ChannelKind::ideal) return OcdmEffort::exact;
    if (ch.kind == ChannelKind::awgn || mode == Mode::fsk_bpsk) return OcdmEffort::pic;
    return OcdmEffort::fast;
}

struct LinkResult {
    std::vector<SymbolIndex> rx;
    int errors = 0;
};

// Carry a vector of symbols across the channel with the configured access
// scheme and demodulate.
LinkResult run_link(const std::vector<SymbolIndex>& tx, const SplitSession& s,
                    const ChannelModel& ch_in, std::mt19937_64& rng) {
    const PhyConfig& phy = s.phy;
    const ChannelModel ch = resolved_channel(phy, ch_in);
    const int m_streams = int(tx.size());
    LinkResult out;
    out.rx.resize(m_streams);

    auto modulate = [&](SymbolIndex sym) {
        return phy.mode == Mode::plain_fsk ? modulate_fsk(sym, phy) : modulate_fsk_bpsk(sym, phy);
    };

    if (phy.access == Access::tdm) {
        for (int m = 0; m < m_streams; ++m) {
            PropagateResult pr = propagate(modulate(tx[m]), ch, rng);
            out.rx[m] = phy.mode == Mode::plain_fsk
                            ? demodulate_noncoherent(pr.y, phy)
                            : demodulate_coherent(pr.y, pr.realization.h, phy);
        }
    } else {
        std::vector<Waveform> streams(m_streams);
        for (int m = 0; m < m_streams; ++m)
            streams[m] = modulate(tx[m]);
        PropagateResult pr = propagate(ocdm_multiplex(streams), ch, rng);
        out.rx = ocdm_demodulate(pr.y, m_streams, phy, ocdm_effort_for(ch, phy.mode),
                                 pr.realization.h);
    }
    for (int m = 0; m < m_streams; ++m)
        if (out.rx[m].k != tx[m].k || out.rx[m].sign != tx[m].sign)
            ++out.errors;
    return out;
}
}  // namespace

SplitForward forward_over_channel(const SplitSession& s, const Vec& x, std::mt19937_64& rng) {
    const EnnConfig& c = s.model.cfg;
    require(int(x.size()) == c.input_dim, "forward_over_channel: input dimension mismatch");

    SplitForward out;
    // TX side: first linear layer plus quantization.
    Vec z1(c.hidden);
    out.tx_symbols.resize(c.hidden);
    for (int m = 0; m < c.hidden; ++m) {
        double z = s.model.a1.at(0, m);
        for (int d = 0; d < c.input_dim; ++d)
            z += s.model.a1.at(d + 1, m) * x[d];
        z1[m] = z;
        QuantResult q = quantize(z, s.phy);
        out.tx_symbols[m] = q.sym;
        if (q.clamped) ++out.clamps;
    }

    LinkResult link = run_link(out.tx_symbols, s, s.forward_channel, rng);
    out.rx_symbols = std::move(link.rx);
    out.symbol_errors = link.errors;

    // RX side: activations from the recovered indices, then layer 2.
    ForwardTrace& tr = out.trace;
    tr.x = x;
    tr.z1.assign(c.hidden, 0.0);
    tr.s1.assign(c.hidden, 0.0);
    tr.fold_signs.assign(c.hidden, 1);
    for (int m = 0; m < c.hidden; ++m) {
        const SymbolIndex sym = out.rx_symbols[m];
        tr.z1[m] = dequantize(sym, c.dct_size);
        Vec fcol(c.half_coeffs);
        for (int q = 0; q < c.half_coeffs; ++q)
            fcol[q] = s.model.f1.at(q, m);
        if (s.phy.mode == Mode::fsk_bpsk) {
            tr.fold_signs[m] = sym.sign;
            tr.s1[m] = activation_eval_folded(fcol, sym.k, sym.sign, c.dct_size);
        } else {
            tr.s1[m] = activation_eval(fcol, tr.z1[m], c.dct_size);
        }
    }
    double z2 = s.model.a2[0];
    for (int m = 0; m < c.hidden; ++m)
        z2 += s.model.a2[m + 1] * tr.s1[m];
    tr.z2 = z2;
    tr.y_hat = activation_eval(s.model.f2, z2, c.dct_size);
    return out;
}

BackwardStats backward_over_channel(SplitSession& s, const SplitForward& fwd, const Vec& x,
                                    double error, std::mt19937_64& rng) {
    const EnnConfig& c = s.model.cfg;
    BackwardStats stats;

    // RX-local parameter updates from the receiver-side trace.
    ReceiverGradients rg = grad_receiver_params(fwd.trace, s.model, error);
    Vec factors = backward_neuron_factors(fwd.trace, s.model, error);
    {
        Gradients g;
        g.a1 = Matrix(c.input_dim + 1, c.hidden);  // zeros; a1 is updated from the wire
        g.a2 = std::move(rg.a2);
        g.f1 = std::move(rg.f1);
        g.f2 = std::move(rg.f2);
        s.model = lms_step(s.model, g, s.lr);
    }

    double g_max = 0.0;
    for (double v : factors) g_max = std::max(g_max, std::abs(v));
    if (g_max == 0.0)
        return stats;  // nothing to send, a1 unchanged
    stats.transmitted = true;

    // Scale to [-1,1], quantize onto the grid, carry over the backward link.
    std::vector<SymbolIndex> tx(c.hidden);
    for (int k = 0; k < c.hidden; ++k) {
        QuantResult q = quantize(factors[k] / g_max, s.phy);
        tx[k] = q.sym;
        if (q.clamped) ++stats.clamps;
    }
    LinkResult link = run_link(tx, s, s.backward_channel, rng);
    stats.symbol_errors = link.errors;

    // TX side: rebuild dL/da1 from the wire values and its local inputs.
    Gradients g;
    g.a1 = Matrix(c.input_dim + 1, c.hidden);
    g.a2.assign(c.hidden + 1, 0.0);
    g.f1 = Matrix(c.half_coeffs, c.hidden);
    g.f2.assign(c.half_coeffs, 0.0);
    for (int k = 0; k < c.hidden; ++k) {
        const SymbolIndex sym = link.rx[k];
        double u = dequantize(sym, c.dct_size);
        if (s.phy.mode == Mode::fsk_bpsk) u *= sym.sign;
        const double factor = g_max * u;
        g.a1.at(0, k) = factor;
        for (int d = 0; d < c.input_dim; ++d)
            g.a1.at(d + 1, k) = factor * x[d];
    }
    s.model = lms_step(s.model, g, s.lr);
    return stats;
}

SplitTrainResult train_split(SplitSession& s, const Dataset& train, const SplitTrainOptions& opt) {
    require(!train.empty(), "train_split: empty dataset");
    s.validate();
    SplitTrainResult res;
    std::mt19937_64 rng(opt.seed);
    std::vector<size_t> order(train.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    const int m_streams = s.model.cfg.hidden;
    for (int ep = 0; ep < opt.epochs; ++ep) {
        std::shuffle(order.begin(), order.end(), rng);
        SplitEpochRow row;
        row.epoch = ep;
        long correct = 0;
        long fwd_err = 0, bwd_err = 0, bwd_sent = 0;
        double sq = 0.0;
        for (size_t idx = 0; idx < order.size(); ++idx) {
            const Sample& smp = train[order[idx]];
            const Vec x{smp.x1, smp.x2};
            SplitForward fwd = forward_over_channel(s, x, rng);
            const double err = double(smp.label) - fwd.trace.y_hat;
            if (!std::isfinite(err)) {
                res.diverged = true;
                return res;
            }
            sq += err * err;
            if ((fwd.trace.y_hat >= 0.0 ? 1 : -1) == smp.label) ++correct;
            fwd_err += fwd.symbol_errors;
            row.clamps += fwd.clamps;
            BackwardStats bs = backward_over_channel(s, fwd, x, err, rng);
            bwd_err += bs.symbol_errors;
            if (bs.transmitted) bwd_sent += m_streams;
            row.clamps += bs.clamps;
        }
        row.accuracy = double(correct) / double(train.size());
        row.mse = sq / double(train.size());
        row.fwd_ser = double(fwd_err) / double(train.size() * size_t(m_streams));
        row.bwd_ser = bwd_sent > 0 ? double(bwd_err) / double(bwd_sent) : 0.0;
        res.rows.push_back(row);
        s.lr.weights *= opt.lr_decay;
        s.lr.coeffs *= opt.lr_decay;
    }
    return res;
}

double split_accuracy(const SplitSession& s, const Dataset& data, std::mt19937_64& rng) {
    require(!data.empty(), "split_accuracy: empty dataset");
    long correct = 0;
    for (const Sample& smp : data) {
        SplitForward fwd = forward_over_channel(s, Vec{smp.x1, smp.x2}, rng);
        if ((fwd.trace.y_hat >= 0.0 ? 1 : -1) == smp.label) ++correct;
    }
    return double(correct) / double(data.size());
}

std::vector<int> decision_map(const std::function<double(double, double)>& evaluator,
                              int resolution) {
    require(resolution >= 2, "decision_map: resolution must be >= 2");
    std::vector<int> grid(size_t(resolution) * resolution);
    for (int i = 0; i < resolution; ++i) {
        const double x2 = 1.0 - 2.0 * i / double(resolution - 1);
        for (int j = 0; j < resolution; ++j) {
            const double x1 = -1.0 + 2.0 * j / double(resolution - 1);
            grid[size_t(i) * resolution + j] = evaluator(x1, x2) >= 0.0 ? 1 : -1;
        }
    }
    return grid;
}

double analytic_ser(const PhyConfig& phy, const ChannelModel& ch) {
    if (ch.kind == ChannelKind::ideal)
        return 0.0;
    const double es = symbol_energy(phy);
    const double sigma2 = channel_sigma2(phy, ch);
    const int alphabet = phy.alphabet();
    if (phy.mode == Mode::plain_fsk) {
        const double n0 = kNoncoherentN0Scale * sigma2;
        if (ch.kind == ChannelKind::awgn)
            return pe_fsk(alphabet, std::sqrt(es), 1.0, n0);
        return std::min(1.0, (alphabet - 1) * rayleigh_q(es / n0));
    }
    const double n0 = sigma2;
    if (ch.kind == ChannelKind::awgn)
        return pe_fsk_bpsk(alphabet, std::sqrt(es), 1.0, n0);
    return std::min(1.0, (alphabet - 1) * rayleigh_q(es / n0) + rayleigh_q(2.0 * es / n0));
}

std::vector<SerRow> ser_sweep(const PhyConfig& phy, const std::vector<ChannelModel>& channels,
                              long trials, uint64_t seed) {
    require(trials >= 1, "ser_sweep: trials must be >= 1");
    phy.validate();
    std::vector<SerRow> rows;
    for (size_t ci = 0; ci < channels.size(); ++ci) {
        const ChannelModel ch = resolved_channel(phy, channels[ci]);
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (ci + 1));
        std::uniform_int_distribution<int> pick(0, phy.alphabet() - 1);
        std::uniform_int_distribution<int> coin(0, 1);
        long errors = 0;
        for (long t = 0; t < trials; ++t) {
            SymbolIndex tx{pick(rng), 1};
            Waveform w;
            if (phy.mode == Mode::plain_fsk) {
                w = modulate_fsk(tx, phy);
            } else {
                tx.sign = coin(rng) ? 1 : -1;
                w = modulate_fsk_bpsk(tx, phy);
            }
            PropagateResult pr = propagate(w, ch, rng);
            const SymbolIndex rx = phy.mode == Mode::plain_fsk
                                       ? demodulate_noncoherent(pr.y, phy)
                                       : demodulate_coherent(pr.y, pr.realization.h, phy);
            if (rx.k != tx.k || rx.sign != tx.sign) ++errors;
        }
        SerRow row;
        row.channel = channel_kind_name(ch.kind);
        row.snr_db = ch.snr_db;
        row.trials = trials;
        row.errors = errors;
        row.ser_measured = double(errors) / double(trials);
        row.ser_analytic = analytic_ser(phy, ch);
        rows.push_back(row);
    }
    return rows;
}

double bpsk_sign_error_rate(const PhyConfig& phy, const ChannelModel& ch_in, long trials,
                            uint64_t seed) {
    const ChannelModel ch = resolved_channel(phy, ch_in);
    require(phy.mode == Mode::fsk_bpsk, "bpsk_sign_error_rate: fsk_bpsk mode only");
    require(trials >= 1, "bpsk_sign_error_rate: trials must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, phy.alphabet() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    const int len = phy.n_samples();
    long errors = 0;
    for (long t = 0; t < trials; ++t) {
        const SymbolIndex tx{pick(rng), coin(rng) ? 1 : -1};
        Waveform w = modulate_fsk_bpsk(tx, phy);
        PropagateResult pr = propagate(w, ch, rng);
        // probe the known tone: sign of Re<y/h, tone_k>
        Waveform ref = modulate_fsk_bpsk(SymbolIndex{tx.k, 1}, phy);
        cplx corr(0.0, 0.0);
        for (int n = 0; n < len; ++n)
            corr += pr.y[n] * ref[n].real();
        corr /= pr.realization.h;
        if ((corr.real() >= 0.0 ? 1 : -1) != tx.sign) ++errors;
    }
    return double(errors) / double(trials);
}

const char* channel_kind_name(ChannelKind k) {
    switch (k) {
        case ChannelKind::ideal: return "ideal";
        case ChannelKind::awgn: return "awgn";
        case ChannelKind::rayleigh: return "rayleigh";
    }
    return "?";
}

}  // namespace splitchirp
