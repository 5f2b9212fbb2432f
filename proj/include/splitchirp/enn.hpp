#ifndef SPLITCHIRP_ENN_HPP
#define SPLITCHIRP_ENN_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace splitchirp {

using Vec = std::vector<double>;

// Minimal dense row-major matrix, sized for the tiny networks used here.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c, double fill = 0.0) : rows(r), cols(c), data(size_t(r) * c, fill) {}
    double& at(int r, int c) { return data[size_t(r) * cols + c]; }
    double at(int r, int c) const { return data[size_t(r) * cols + c]; }
};

struct EnnConfig {
    int input_dim = 2;
    int hidden = 6;       // M neurons in the hidden layer
    int half_coeffs = 6;  // Q/2 DCT coefficients per activation
    int dct_size = 128;   // N, shared with the PHY grid

    void validate() const;  // throws std::invalid_argument
};

// Two-layer network with per-neuron DCT-parameterized activations.
// a1 is (input_dim+1) x M with the bias terms in row 0; a2 has the bias
// in entry 0. Column m of f1 holds the hidden activation coefficients of
// neuron m; f2 holds the output activation coefficients.
struct EnnModel {
    EnnConfig cfg;
    Matrix a1;
    Vec a2;
    Matrix f1;
    Vec f2;
};

struct ForwardTrace {
    Vec x;
    Vec z1;
    Vec s1;
    double z2 = 0.0;
    double y_hat = 0.0;
    std::vector<int> fold_signs;  // +-1 per neuron, all +1 when not folding
};

// DCT basis pair: cos((pi/2N)(2i-1)(N(x+1)+1)) and its sine companion.
// Defined for any finite x; i >= 1.
double dct_cos(int i, double x, int n);
double dct_sin(int i, double x, int n);

// sum_q f[q] * cos_q(z)
double activation_eval(const Vec& f, double z, int n);

struct FoldedIndex {
    long k = 0;   // in [0, n)
    int sign = 1; // +-1
};

// Reduce an arbitrary integer grid index to the base period [0, n) plus a
// sign, such that the activation at the original index equals
// sign * activation at k. Nonnegative indices follow
// k = j mod n, sign = (-1)^floor(j/n); negative indices use the even
// reflection of the basis about j = -1/2 (the DCT-II extension), which is
// what the basis actually satisfies.
FoldedIndex fold_index(long j, int n);

// sign * sum_q f[q] * cos_q(x_k) with x_k = -1 + 2k/n. Throws on k out of range.
double activation_eval_folded(const Vec& f, long k, int sign, int n);

// Argument of grid index k under the canonical grid x = -1 + 2k/n.
double grid_argument(long k, int n);

ForwardTrace forward(const EnnModel& model, const Vec& x);

// Gradients of the half-squared error L = (y - y_hat)^2 / 2 taken at
// error = y - y_hat. These are the plain chain-rule gradients used for
// descent: param <- param - mu * g.
struct Gradients {
    Matrix a1;
    Vec a2;
    Matrix f1;
    Vec f2;
};

Gradients gradients(const ForwardTrace& tr, const EnnModel& model, double error);

// Receiver-side parameter gradients only (a2, f1, f2); what the RX of a
// split session updates locally.
struct ReceiverGradients {
    Vec a2;
    Matrix f1;
    Vec f2;
};

ReceiverGradients grad_receiver_params(const ForwardTrace& tr, const EnnModel& model, double error);

// First-layer gradient in the normalized per-entry form
//   (pi^2/4) * (s0[m]/|s0[m]|^2) * error * a2[k] * S2 * S1[k],
// i.e. the update direction scaled entrywise by 1/s0[m]. Entries with
// |s0[m]| below eps_input get factor 0. Note this equals
// -dL/da1[m][k] / |s0[m]|^2 for L above; the sign and normalization are
// pinned by the finite-difference tests.
Matrix grad_first_layer(const ForwardTrace& tr, const EnnModel& model, double error,
                        double eps_input = 1e-6);

// Common per-neuron backward factor g[k] = -(pi^2/4) * error * a2[k] * S2 * S1[k];
// dL/da1[m][k] = g[k] * s0[m]. This is the quantity a split receiver sends back.
Vec backward_neuron_factors(const ForwardTrace& tr, const EnnModel& model, double error);

struct LearningRates {
    double weights = 1e-2;  // a1, a2
    double coeffs = 1e-3;   // f1, f2
};

// One descent step; pure, input model unchanged. Throws on non-finite gradients.
EnnModel lms_step(const EnnModel& model, const Gradients& g, const LearningRates& mu);

struct Sample {
    double x1 = 0.0;
    double x2 = 0.0;
    int label = 1;  // -1 or +1
};

using Dataset = std::vector<Sample>;

struct EpochMetrics {
    double train_accuracy = 0.0;
    double train_mse = 0.0;
};

struct TrainResult {
    EnnModel model;
    std::vector<EpochMetrics> epochs;
    bool diverged = false;
    int diverged_epoch = -1;
    long diverged_sample = -1;
};

struct TrainOptions {
    int epochs = 20;
    LearningRates lr;
    double lr_decay = 0.7;  // per-epoch multiplier on both rates
    uint64_t seed = 1;      // shuffling order
};

// Sample-by-sample LMS with the mean squared error loss, labels in {-1,+1}.
// Deterministic for a given seed.
TrainResult train_centralized(const EnnModel& start, const Dataset& data, const TrainOptions& opt);

// Fraction of samples with sign(y_hat) == label; sign(0) counts as +1.
double accuracy(const EnnModel& model, const Dataset& data);

// Random initialization: activation coefficients seeded from the leading odd
// DCT coefficients of tanh on the grid (scaled 0.5, plus +-0.01 noise),
// linear weights uniform in [-0.5, 0.5]. bias_shift is added to the hidden
// bias row; split sessions use it to start the pre-activations inside the
// one-sided index grid (the activations are shift-periodic, so this costs
// no expressiveness).
EnnModel init_model(const EnnConfig& cfg, uint64_t seed, double bias_shift = 0.0);

// Flat text serialization, one line per parameter group.
void save_model(const EnnModel& model, const std::string& path);
EnnModel load_model(const std::string& path);

}  // namespace splitchirp

#endif
