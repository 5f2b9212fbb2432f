#include "splitchirp/enn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace splitchirp {

namespace {
constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

double phase(int i, double x, int n) {
    return kPi / (2.0 * n) * (2.0 * i - 1.0) * (n * (x + 1.0) + 1.0);
}
}  // namespace

void EnnConfig::validate() const {
    require(input_dim >= 1, "input_dim must be >= 1");
    require(hidden >= 1, "hidden must be >= 1");
    require(half_coeffs >= 1, "half_coeffs must be >= 1");
    require(dct_size >= 2 && dct_size % 2 == 0, "dct_size must be even and >= 2");
}

double dct_cos(int i, double x, int n) {
    require(i >= 1 && n >= 2, "dct_cos: bad index or size");
    require(std::isfinite(x), "dct_cos: non-finite argument");
    return std::cos(phase(i, x, n));
}

double dct_sin(int i, double x, int n) {
    require(i >= 1 && n >= 2, "dct_sin: bad index or size");
    require(std::isfinite(x), "dct_sin: non-finite argument");
    return std::sin(phase(i, x, n));
}

double activation_eval(const Vec& f, double z, int n) {
    double acc = 0.0;
    for (size_t q = 0; q < f.size(); ++q)
        acc += f[q] * dct_cos(int(q) + 1, z, n);
    return acc;
}

FoldedIndex fold_index(long j, int n) {
    // The basis at integer grid indices satisfies g(j+n) = -g(j) and
    // g(-1-j) = g(j); negatives are reflected first, then reduced.
    long jp = j >= 0 ? j : -1 - j;
    FoldedIndex out;
    out.k = jp % n;
    out.sign = ((jp / n) % 2 == 0) ? 1 : -1;
    return out;
}

double grid_argument(long k, int n) {
    return -1.0 + 2.0 * double(k) / double(n);
}

double activation_eval_folded(const Vec& f, long k, int sign, int n) {
    require(k >= 0 && k < n, "activation_eval_folded: index out of range");
    require(sign == 1 || sign == -1, "activation_eval_folded: sign must be +-1");
    return sign * activation_eval(f, grid_argument(k, n), n);
}

ForwardTrace forward(const EnnModel& model, const Vec& x) {
    const EnnConfig& c = model.cfg;
    require(int(x.size()) == c.input_dim, "forward: input dimension mismatch");
    ForwardTrace tr;
    tr.x = x;
    tr.z1.assign(c.hidden, 0.0);
    tr.s1.assign(c.hidden, 0.0);
    tr.fold_signs.assign(c.hidden, 1);
    for (int m = 0; m < c.hidden; ++m) {
        double z = model.a1.at(0, m);
        for (int d = 0; d < c.input_dim; ++d)
            z += model.a1.at(d + 1, m) * x[d];
        tr.z1[m] = z;
        Vec fcol(c.half_coeffs);
        for (int q = 0; q < c.half_coeffs; ++q)
            fcol[q] = model.f1.at(q, m);
        tr.s1[m] = activation_eval(fcol, z, c.dct_size);
    }
    double z2 = model.a2[0];
    for (int m = 0; m < c.hidden; ++m)
        z2 += model.a2[m + 1] * tr.s1[m];
    tr.z2 = z2;
    tr.y_hat = activation_eval(model.f2, z2, c.dct_size);
    return tr;
}

namespace {
// Weighted sine sums that appear in every gradient:
// s2sum = sum_p f2[p] (2p-1) sin_p(z2), s1sum[k] = sum_q f1[q][k] (2q-1) sin_q(z1[k])
double outer_sine_sum(const EnnModel& model, double z2) {
    double acc = 0.0;
    for (size_t p = 0; p < model.f2.size(); ++p)
        acc += model.f2[p] * (2.0 * (p + 1) - 1.0) * dct_sin(int(p) + 1, z2, model.cfg.dct_size);
    return acc;
}

double inner_sine_sum(const EnnModel& model, int k, double z1k) {
    double acc = 0.0;
    for (int q = 0; q < model.cfg.half_coeffs; ++q)
        acc += model.f1.at(q, k) * (2.0 * (q + 1) - 1.0) * dct_sin(q + 1, z1k, model.cfg.dct_size);
    return acc;
}

// When the trace was produced with folded activations, s1[k] is
// sign * sum_q f1[q][k] cos_q(z1[k]); the sign rides along in d s1/d z1
// and d s1/d f1 as well.
int fold_sign_of(const ForwardTrace& tr, int k) {
    return tr.fold_signs.empty() ? 1 : tr.fold_signs[k];
}
}  // namespace

Gradients gradients(const ForwardTrace& tr, const EnnModel& model, double error) {
    const EnnConfig& c = model.cfg;
    const int n = c.dct_size;
    Gradients g;
    g.a1 = Matrix(c.input_dim + 1, c.hidden);
    g.a2.assign(c.hidden + 1, 0.0);
    g.f1 = Matrix(c.half_coeffs, c.hidden);
    g.f2.assign(c.half_coeffs, 0.0);

    const double s2 = outer_sine_sum(model, tr.z2);
    // dL/dz2 with L = (y - y_hat)^2/2 and d y_hat/dz2 = -(pi/2) s2
    const double dz2 = (kPi / 2.0) * error * s2;

    g.a2[0] = dz2;
    for (int m = 0; m < c.hidden; ++m)
        g.a2[m + 1] = dz2 * tr.s1[m];
    for (int p = 0; p < c.half_coeffs; ++p)
        g.f2[p] = -error * dct_cos(p + 1, tr.z2, n);

    for (int k = 0; k < c.hidden; ++k) {
        const double dl_s1 = dz2 * model.a2[k + 1];
        const int fs = fold_sign_of(tr, k);
        for (int q = 0; q < c.half_coeffs; ++q)
            g.f1.at(q, k) = dl_s1 * fs * dct_cos(q + 1, tr.z1[k], n);
        const double dz1 = dl_s1 * fs * (-(kPi / 2.0)) * inner_sine_sum(model, k, tr.z1[k]);
        g.a1.at(0, k) = dz1;
        for (int d = 0; d < c.input_dim; ++d)
            g.a1.at(d + 1, k) = dz1 * tr.x[d];
    }
    return g;
}

ReceiverGradients grad_receiver_params(const ForwardTrace& tr, const EnnModel& model, double error) {
    Gradients g = gradients(tr, model, error);
    return ReceiverGradients{std::move(g.a2), std::move(g.f1), std::move(g.f2)};
}

Vec backward_neuron_factors(const ForwardTrace& tr, const EnnModel& model, double error) {
    const EnnConfig& c = model.cfg;
    const double s2 = outer_sine_sum(model, tr.z2);
    Vec g(c.hidden);
    for (int k = 0; k < c.hidden; ++k)
        g[k] = -(kPi * kPi / 4.0) * error * model.a2[k + 1] * s2 * fold_sign_of(tr, k) *
               inner_sine_sum(model, k, tr.z1[k]);
    return g;
}

Matrix grad_first_layer(const ForwardTrace& tr, const EnnModel& model, double error,
                        double eps_input) {
    const EnnConfig& c = model.cfg;
    Vec factors = backward_neuron_factors(tr, model, error);
    Matrix g(c.input_dim + 1, c.hidden);
    for (int k = 0; k < c.hidden; ++k) {
        g.at(0, k) = -factors[k];  // bias entry: s0[0] = 1, normalization 1
        for (int d = 0; d < c.input_dim; ++d) {
            const double s0 = tr.x[d];
            const double norm = std::abs(s0) < eps_input ? 0.0 : s0 / (s0 * s0);
            g.at(d + 1, k) = -factors[k] * norm;
        }
    }
    return g;
}

EnnModel lms_step(const EnnModel& model, const Gradients& g, const LearningRates& mu) {
    auto check = [](double v) {
        if (!std::isfinite(v)) throw std::runtime_error("lms_step: non-finite gradient");
    };
    EnnModel out = model;
    for (size_t i = 0; i < g.a1.data.size(); ++i) {
        check(g.a1.data[i]);
        out.a1.data[i] -= mu.weights * g.a1.data[i];
    }
    for (size_t i = 0; i < g.a2.size(); ++i) {
        check(g.a2[i]);
        out.a2[i] -= mu.weights * g.a2[i];
    }
    for (size_t i = 0; i < g.f1.data.size(); ++i) {
        check(g.f1.data[i]);
        out.f1.data[i] -= mu.coeffs * g.f1.data[i];
    }
    for (size_t i = 0; i < g.f2.size(); ++i) {
        check(g.f2[i]);
        out.f2[i] -= mu.coeffs * g.f2[i];
    }
    return out;
}

TrainResult train_centralized(const EnnModel& start, const Dataset& data, const TrainOptions& opt) {
    require(!data.empty(), "train_centralized: empty dataset");
    TrainResult res;
    res.model = start;
    std::mt19937_64 rng(opt.seed);
    std::vector<size_t> order(data.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    LearningRates mu = opt.lr;
    for (int ep = 0; ep < opt.epochs; ++ep) {
        std::shuffle(order.begin(), order.end(), rng);
        double sq_err = 0.0;
        long correct = 0;
        for (size_t idx = 0; idx < order.size(); ++idx) {
            const Sample& s = data[order[idx]];
            ForwardTrace tr = forward(res.model, Vec{s.x1, s.x2});
            const double err = double(s.label) - tr.y_hat;
            if (!std::isfinite(err)) {
                res.diverged = true;
                res.diverged_epoch = ep;
                res.diverged_sample = long(idx);
                return res;
            }
            sq_err += err * err;
            const int pred = tr.y_hat >= 0.0 ? 1 : -1;
            if (pred == s.label) ++correct;
            Gradients g = gradients(tr, res.model, err);
            res.model = lms_step(res.model, g, mu);
        }
        res.epochs.push_back(EpochMetrics{double(correct) / double(data.size()),
                                          sq_err / double(data.size())});
        mu.weights *= opt.lr_decay;
        mu.coeffs *= opt.lr_decay;
    }
    return res;
}

double accuracy(const EnnModel& model, const Dataset& data) {
    require(!data.empty(), "accuracy: empty dataset");
    long correct = 0;
    for (const Sample& s : data) {
        ForwardTrace tr = forward(model, Vec{s.x1, s.x2});
        const int pred = tr.y_hat >= 0.0 ? 1 : -1;
        if (pred == s.label) ++correct;
    }
    return double(correct) / double(data.size());
}

EnnModel init_model(const EnnConfig& cfg, uint64_t seed, double bias_shift) {
    cfg.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uw(-0.5, 0.5);
    std::uniform_real_distribution<double> un(-0.01, 0.01);

    const int n = cfg.dct_size;
    // Leading odd DCT-II coefficients of tanh on the grid x_k = -1 + 2k/n.
    Vec coef(cfg.half_coeffs, 0.0);
    for (int q = 0; q < cfg.half_coeffs; ++q) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k)
            acc += std::tanh(2.0 * grid_argument(k, n)) *
                   std::cos(kPi / (2.0 * n) * (2.0 * (q + 1) - 1.0) * (2.0 * k + 1.0));
        coef[q] = 2.0 / n * acc;
    }

    EnnModel m;
    m.cfg = cfg;
    m.a1 = Matrix(cfg.input_dim + 1, cfg.hidden);
    for (double& v : m.a1.data) v = uw(rng);
    for (int k = 0; k < cfg.hidden; ++k) m.a1.at(0, k) += bias_shift;
    m.a2.assign(cfg.hidden + 1, 0.0);
    for (double& v : m.a2) v = uw(rng);
    m.f1 = Matrix(cfg.half_coeffs, cfg.hidden);
    for (int q = 0; q < cfg.half_coeffs; ++q)
        for (int k = 0; k < cfg.hidden; ++k)
            m.f1.at(q, k) = 0.5 * coef[q] + un(rng);
    m.f2.assign(cfg.half_coeffs, 0.0);
    for (int q = 0; q < cfg.half_coeffs; ++q)
        m.f2[q] = 0.5 * coef[q] + un(rng);
    return m;
}

namespace {
void write_group(std::ostream& os, const char* name, const double* v, size_t count) {
    os << name;
    char buf[32];
    for (size_t i = 0; i < count; ++i) {
        std::snprintf(buf, sizeof buf, " %.17g", v[i]);
        os << buf;
    }
    os << "\n";
}

Vec read_group(std::istream& is, const std::string& name, size_t count) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("model file: missing group " + name);
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag != name) throw std::runtime_error("model file: expected group " + name);
    Vec v(count);
    for (size_t i = 0; i < count; ++i)
        if (!(ls >> v[i])) throw std::runtime_error("model file: short group " + name);
    return v;
}
}  // namespace

void save_model(const EnnModel& model, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open model file for writing: " + path);
    os << "splitchirp-enn 1\n";
    os << "input_dim " << model.cfg.input_dim << "\n";
    os << "hidden " << model.cfg.hidden << "\n";
    os << "half_coeffs " << model.cfg.half_coeffs << "\n";
    os << "dct_size " << model.cfg.dct_size << "\n";
    write_group(os, "A1", model.a1.data.data(), model.a1.data.size());
    write_group(os, "A2", model.a2.data(), model.a2.size());
    write_group(os, "F1", model.f1.data.data(), model.f1.data.size());
    write_group(os, "F2", model.f2.data(), model.f2.size());
}

EnnModel load_model(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open model file: " + path);
    std::string magic;
    int version = 0;
    is >> magic >> version;
    if (magic != "splitchirp-enn" || version != 1)
        throw std::runtime_error("not a splitchirp model file: " + path);
    EnnModel m;
    std::string key;
    is >> key >> m.cfg.input_dim;
    is >> key >> m.cfg.hidden;
    is >> key >> m.cfg.half_coeffs;
    is >> key >> m.cfg.dct_size;
    is.ignore();
    m.cfg.validate();
    m.a1 = Matrix(m.cfg.input_dim + 1, m.cfg.hidden);
    m.a1.data = read_group(is, "A1", m.a1.data.size());
    m.a2 = read_group(is, "A2", size_t(m.cfg.hidden) + 1);
    m.f1 = Matrix(m.cfg.half_coeffs, m.cfg.hidden);
    m.f1.data = read_group(is, "F1", m.f1.data.size());
    m.f2 = read_group(is, "F2", size_t(m.cfg.half_coeffs));
    return m;
}

}  // namespace splitchirp
