#ifndef SPLITCHIRP_SPLIT_HPP
#define SPLITCHIRP_SPLIT_HPP

#include <functional>
#include <string>

#include "splitchirp/channel.hpp"
#include "splitchirp/enn.hpp"
#include "splitchirp/phy.hpp"

namespace splitchirp {

// Uniform samples on [-1,1]^2 labelled by a named boolean map.
// Labelers: halfplane (x1 >= 0), rings (0.4 <= |x| <= 0.8), checker2x2
// (x1*x2 >= 0). Throws on unknown names.
Dataset make_map_dataset(const std::string& labeler, int n, uint64_t seed);
int label_point(const std::string& labeler, double x1, double x2);

// TX holds the first linear layer; RX holds the activations and layer 2.
// Forward activations and backward gradient factors cross the configured
// PHY and channel.
struct SplitSession {
    EnnModel model;
    PhyConfig phy;
    ChannelModel forward_channel;
    ChannelModel backward_channel;
    LearningRates lr;

    void validate() const;  // phy.n must equal the model grid size
};

struct SplitForward {
    ForwardTrace trace;                    // receiver-side view (z1 = dequantized)
    std::vector<SymbolIndex> tx_symbols;   // ground truth after quantization
    std::vector<SymbolIndex> rx_symbols;
    int symbol_errors = 0;
    int clamps = 0;
};

SplitForward forward_over_channel(const SplitSession& s, const Vec& x, std::mt19937_64& rng);

struct BackwardStats {
    int symbol_errors = 0;
    int clamps = 0;
    bool transmitted = false;
};

// RX updates its local parameters, quantizes the per-neuron gradient factors
// onto the grid (scaled by their max, clipped to [-1,1]) and sends them back
// over the same PHY; TX rebuilds the first-layer gradient with its local
// input terms and applies the step. Mutates the session model.
BackwardStats backward_over_channel(SplitSession& s, const SplitForward& fwd, const Vec& x,
                                    double error, std::mt19937_64& rng);

struct SplitEpochRow {
    int epoch = 0;
    double accuracy = 0.0;  // training pass, through the channel
    double mse = 0.0;
    double fwd_ser = 0.0;
    double bwd_ser = 0.0;
    long clamps = 0;
};

struct SplitTrainResult {
    std::vector<SplitEpochRow> rows;
    bool diverged = false;
};

struct SplitTrainOptions {
    int epochs = 6;
    double lr_decay = 0.7;
    uint64_t seed = 1;
};

SplitTrainResult train_split(SplitSession& s, const Dataset& train, const SplitTrainOptions& opt);

// Test-set accuracy with channel noise resampled per sample.
double split_accuracy(const SplitSession& s, const Dataset& data, std::mt19937_64& rng);

// sign(evaluator) on a uniform res x res grid over [-1,1]^2; row 0 is
// x2 = +1, column 0 is x1 = -1, corners exact. Values are +-1.
std::vector<int> decision_map(const std::function<double(double, double)>& evaluator,
                              int resolution);

struct SerRow {
    std::string channel;
    double snr_db = 0.0;
    long trials = 0;
    long errors = 0;
    double ser_measured = 0.0;
    double ser_analytic = 0.0;
};

// Monte-Carlo symbol error rate over uniform random symbols, one row per
// channel point, with the calibrated analytic bound alongside.
std::vector<SerRow> ser_sweep(const PhyConfig& phy, const std::vector<ChannelModel>& channels,
                              long trials, uint64_t seed);

// Analytic clipped union bound for one channel point under the simulator's
// documented N0 calibration (Rayleigh uses the fading-averaged pairwise
// bounds).
double analytic_ser(const PhyConfig& phy, const ChannelModel& ch);

// BPSK sub-channel in isolation: sign detection on the known transmitted
// tone with genie CSI. Converges to Q(sqrt(2 E_s |h|^2 / sigma^2)).
double bpsk_sign_error_rate(const PhyConfig& phy, const ChannelModel& ch, long trials,
                            uint64_t seed);

const char* channel_kind_name(ChannelKind k);

}  // namespace splitchirp

#endif
