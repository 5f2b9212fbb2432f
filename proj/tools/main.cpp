// Command-line front end: train-centralized, train-split, ser-sweep, bandwidth.
// Exit codes: 0 success, 1 config error, 2 training divergence.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "splitchirp/io.hpp"
#include "splitchirp/split.hpp"

using namespace splitchirp;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    uint64_t seed = 1;
    int n = 128;
    int neurons = 6;
    int coeffs = 6;
    std::string labeler = "rings";
    int epochs = 6;
    long train_samples = 200000;
    long test_samples = 20000;
    double lr_weights = 1e-2;
    double lr_coeffs = 1e-3;
    double lr_decay = 0.7;
    int map_resolution = 101;
    double bias_init = 0.0;

    std::string mode = "plain";
    std::string access = "tdm";
    int extension = 1;
    double carrier_amp = 1.4142135623730951;
    double symbol_period = 1e-3;
    std::string channel = "awgn";
    std::string snr_list = "0,-5,-10,-12.5,-15,-17.5";
    double backward_snr = -10.0;
    long trials = 100000;
    int threads = 0;  // 0 = hardware_concurrency
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "key=value config file; flags override it");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--seed", o.seed, "master RNG seed");
    cmd->add_option("--n", o.n, "DCT grid / alphabet size N (even)");
    cmd->add_option("--neurons", o.neurons, "hidden neurons M");
    cmd->add_option("--coeffs", o.coeffs, "DCT coefficients per activation (Q/2)");
    cmd->add_option("--labeler", o.labeler, "dataset map: halfplane|rings|checker2x2");
    cmd->add_option("--epochs", o.epochs, "training epochs");
    cmd->add_option("--train-samples", o.train_samples, "training set size");
    cmd->add_option("--test-samples", o.test_samples, "test set size");
    cmd->add_option("--lr-weights", o.lr_weights, "LMS rate for linear weights");
    cmd->add_option("--lr-coeffs", o.lr_coeffs, "LMS rate for DCT coefficients");
    cmd->add_option("--lr-decay", o.lr_decay, "per-epoch learning-rate multiplier");
    cmd->add_option("--map-resolution", o.map_resolution, "decision map grid size");
    cmd->add_option("--bias-init", o.bias_init, "offset added to hidden bias initialization");
    cmd->add_option("--mode", o.mode, "plain|fsk-bpsk");
    cmd->add_option("--access", o.access, "tdm|ocdm");
    cmd->add_option("--extension", o.extension, "plain-mode alphabet extension E");
    cmd->add_option("--carrier-amp", o.carrier_amp, "carrier amplitude A_c");
    cmd->add_option("--symbol-period", o.symbol_period, "symbol period T in seconds");
    cmd->add_option("--channel", o.channel, "ideal|awgn|rayleigh (comma list for sweeps)");
    cmd->add_option("--snr-list", o.snr_list, "comma-separated SNR points in dB");
    cmd->add_option("--backward-snr", o.backward_snr, "gradient-link SNR in dB");
    cmd->add_option("--trials", o.trials, "Monte-Carlo trials per point");
    cmd->add_option("--threads", o.threads, "sweep worker threads (0 = auto)");
}

// Config-file values fill in everything the user did not pass explicitly.
void apply_config_file(CLI::App* cmd, CommonOpts& o) {
    if (o.config_path.empty()) return;
    auto kv = parse_kv_file(o.config_path);
    auto take = [&](const char* flag, const char* key, auto& field) {
        auto it = kv.find(key);
        if (it == kv.end()) return;
        auto* opt = cmd->get_option(flag);
        if (opt && opt->count() > 0) return;  // explicit flag wins
        std::istringstream ss(it->second);
        ss >> field;
        if (ss.fail()) throw std::runtime_error(std::string("config: bad value for ") + key);
        kv.erase(it);
    };
    take("--out", "out", o.out_dir);
    take("--seed", "seed", o.seed);
    take("--n", "n", o.n);
    take("--neurons", "neurons", o.neurons);
    take("--coeffs", "coeffs", o.coeffs);
    take("--labeler", "labeler", o.labeler);
    take("--epochs", "epochs", o.epochs);
    take("--train-samples", "train_samples", o.train_samples);
    take("--test-samples", "test_samples", o.test_samples);
    take("--lr-weights", "lr_weights", o.lr_weights);
    take("--lr-coeffs", "lr_coeffs", o.lr_coeffs);
    take("--lr-decay", "lr_decay", o.lr_decay);
    take("--map-resolution", "map_resolution", o.map_resolution);
    take("--bias-init", "bias_init", o.bias_init);
    take("--mode", "mode", o.mode);
    take("--access", "access", o.access);
    take("--extension", "extension", o.extension);
    take("--carrier-amp", "carrier_amp", o.carrier_amp);
    take("--symbol-period", "symbol_period", o.symbol_period);
    take("--channel", "channel", o.channel);
    take("--snr-list", "snr_list", o.snr_list);
    take("--backward-snr", "backward_snr", o.backward_snr);
    take("--trials", "trials", o.trials);
    take("--threads", "threads", o.threads);
    if (!kv.empty())
        throw std::runtime_error("config: unknown key '" + kv.begin()->first + "'");
}

EnnConfig enn_config(const CommonOpts& o) {
    EnnConfig c;
    c.input_dim = 2;
    c.hidden = o.neurons;
    c.half_coeffs = o.coeffs;
    c.dct_size = o.n;
    c.validate();
    return c;
}

PhyConfig phy_config(const CommonOpts& o) {
    PhyConfig p;
    p.n = o.n;
    p.carrier_amp = o.carrier_amp;
    if (o.mode == "plain")
        p.mode = Mode::plain_fsk;
    else if (o.mode == "fsk-bpsk")
        p.mode = Mode::fsk_bpsk;
    else
        throw std::runtime_error("unknown --mode: " + o.mode);
    if (o.access == "tdm")
        p.access = Access::tdm;
    else if (o.access == "ocdm")
        p.access = Access::ocdm;
    else
        throw std::runtime_error("unknown --access: " + o.access);
    p.extension = o.extension;
    p.symbol_period = o.symbol_period;
    p.validate();
    return p;
}

ChannelKind parse_kind(const std::string& s) {
    if (s == "ideal") return ChannelKind::ideal;
    if (s == "awgn") return ChannelKind::awgn;
    if (s == "rayleigh") return ChannelKind::rayleigh;
    throw std::runtime_error("unknown channel kind: " + s);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<double> parse_snr_list(const std::string& s) {
    std::vector<double> out;
    for (const std::string& item : split_list(s)) out.push_back(std::stod(item));
    if (out.empty()) throw std::runtime_error("empty --snr-list");
    return out;
}

int run_train_centralized(const CommonOpts& o) {
    fs::create_directories(o.out_dir);
    EnnConfig cfg = enn_config(o);
    Dataset train = make_map_dataset(o.labeler, int(o.train_samples), o.seed);
    Dataset test = make_map_dataset(o.labeler, int(o.test_samples), o.seed + 1);

    EnnModel model = init_model(cfg, o.seed, o.bias_init);
    TrainOptions opt;
    opt.epochs = o.epochs;
    opt.lr = LearningRates{o.lr_weights, o.lr_coeffs};
    opt.lr_decay = o.lr_decay;
    opt.seed = o.seed + 2;
    TrainResult res = train_centralized(model, train, opt);
    if (res.diverged) {
        std::cerr << "training diverged at epoch " << res.diverged_epoch << " sample "
                  << res.diverged_sample << "\n";
        return 2;
    }

    save_model(res.model, o.out_dir + "/model.txt");
    std::vector<SplitEpochRow> rows;
    for (size_t i = 0; i < res.epochs.size(); ++i) {
        SplitEpochRow r;
        r.epoch = int(i);
        r.accuracy = res.epochs[i].train_accuracy;
        r.mse = res.epochs[i].train_mse;
        rows.push_back(r);
    }
    write_metrics_csv(rows, o.out_dir + "/metrics.csv");

    const EnnModel& m = res.model;
    auto grid = decision_map(
        [&](double x1, double x2) { return forward(m, Vec{x1, x2}).y_hat; }, o.map_resolution);
    write_map_pgm(grid, o.map_resolution, o.out_dir + "/map.pgm");
    write_map_csv(grid, o.map_resolution, o.out_dir + "/map.csv");

    const double acc = accuracy(res.model, test);
    std::printf("centralized %s: test accuracy %.4f (%d epochs)\n", o.labeler.c_str(), acc,
                o.epochs);
    return 0;
}

struct SweepPointResult {
    SweepRow row;
    std::vector<SplitEpochRow> metrics;
    std::vector<int> map;
    bool diverged = false;
};

SweepPointResult run_split_point(const CommonOpts& o, ChannelKind kind, double snr_db) {
    SweepPointResult out;
    EnnConfig cfg = enn_config(o);
    Dataset train = make_map_dataset(o.labeler, int(o.train_samples), o.seed);
    Dataset test = make_map_dataset(o.labeler, int(o.test_samples), o.seed + 1);

    SplitSession sess;
    sess.model = init_model(cfg, o.seed, o.bias_init);
    sess.phy = phy_config(o);
    sess.forward_channel = ChannelModel{kind, snr_db};
    sess.backward_channel =
        ChannelModel{kind, kind == ChannelKind::ideal ? 0.0 : o.backward_snr};
    sess.lr = LearningRates{o.lr_weights, o.lr_coeffs};

    SplitTrainOptions opt;
    opt.epochs = o.epochs;
    opt.lr_decay = o.lr_decay;
    // decorrelate the per-point sample order / noise stream, deterministically
    opt.seed = o.seed + 2 + 0x9e3779b97f4a7c15ULL * uint64_t(int(kind) * 1000 +
                                                             int(std::llround(snr_db * 4)) + 512);
    SplitTrainResult res = train_split(sess, train, opt);
    out.diverged = res.diverged;
    out.metrics = res.rows;

    std::mt19937_64 eval_rng(opt.seed ^ 0xabcdef);
    out.row.channel = channel_kind_name(kind);
    out.row.snr_db = snr_db;
    out.row.accuracy = res.diverged ? 0.0 : split_accuracy(sess, test, eval_rng);

    std::mt19937_64 map_rng(opt.seed ^ 0x5eed);
    out.map = decision_map(
        [&](double x1, double x2) {
            return forward_over_channel(sess, Vec{x1, x2}, map_rng).trace.y_hat;
        },
        o.map_resolution);
    return out;
}

std::string point_tag(const std::string& kind, double snr_db) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%g", kind.c_str(), snr_db);
    std::string s(buf);
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

int run_train_split(const CommonOpts& o) {
    fs::create_directories(o.out_dir);
    std::vector<std::pair<ChannelKind, double>> points;
    for (const std::string& ch : split_list(o.channel)) {
        const ChannelKind kind = parse_kind(ch);
        if (kind == ChannelKind::ideal)
            points.emplace_back(kind, 0.0);
        else
            for (double snr : parse_snr_list(o.snr_list)) points.emplace_back(kind, snr);
    }

    unsigned workers = o.threads > 0 ? unsigned(o.threads) : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, unsigned(points.size())));

    std::vector<SweepPointResult> results(points.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= points.size()) break;
            results[i] = run_split_point(o, points[i].first, points[i].second);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::vector<SweepRow> sweep;
    bool diverged = false;
    for (size_t i = 0; i < points.size(); ++i) {
        const SweepPointResult& r = results[i];
        diverged = diverged || r.diverged;
        sweep.push_back(r.row);
        const std::string tag = point_tag(r.row.channel, r.row.snr_db);
        write_metrics_csv(r.metrics, o.out_dir + "/metrics_" + tag + ".csv");
        write_map_pgm(r.map, o.map_resolution, o.out_dir + "/map_" + tag + ".pgm");
        write_map_csv(r.map, o.map_resolution, o.out_dir + "/map_" + tag + ".csv");
        std::printf("split %-8s %7.2f dB: accuracy %.4f\n", r.row.channel.c_str(), r.row.snr_db,
                    r.row.accuracy);
    }
    write_sweep_csv(sweep, o.out_dir + "/sweep.csv");
    return diverged ? 2 : 0;
}

int run_ser_sweep(const CommonOpts& o) {
    fs::create_directories(o.out_dir);
    PhyConfig phy = phy_config(o);
    std::vector<ChannelModel> channels;
    for (const std::string& ch : split_list(o.channel)) {
        const ChannelKind kind = parse_kind(ch);
        if (kind == ChannelKind::ideal)
            channels.push_back(ChannelModel{kind, 0.0});
        else
            for (double snr : parse_snr_list(o.snr_list))
                channels.push_back(ChannelModel{kind, snr});
    }
    std::vector<SerRow> rows = ser_sweep(phy, channels, o.trials, o.seed);
    write_ser_csv(rows, o.out_dir + "/ser.csv");
    for (const SerRow& r : rows)
        std::printf("%-8s %7.2f dB: measured %.6g analytic %.6g (%ld/%ld)\n", r.channel.c_str(),
                    r.snr_db, r.ser_measured, r.ser_analytic, r.errors, r.trials);
    return 0;
}

int run_bandwidth(const CommonOpts& o, int streams) {
    PhyConfig phy = phy_config(o);
    const int eff = phy.mode == Mode::plain_fsk ? phy.extension * phy.n : phy.n;
    const double b = bandwidth(eff, phy.symbol_period);
    std::printf("mode %s, N %d", o.mode.c_str(), phy.n);
    if (phy.mode == Mode::plain_fsk) std::printf(", extension %d", phy.extension);
    std::printf(", T %g s\n", phy.symbol_period);
    std::printf("bandwidth %.6g Hz\n", b);
    if (phy.access == Access::ocdm)
        std::printf("ocdm access expansion: %dx (%d orthogonal chirps)\n", streams, streams);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"split learning over a DCT-basis FSK / chirp-multiplexed link"};
    app.require_subcommand(1);

    CommonOpts o;
    int streams = 6;
    CLI::App* c_train = app.add_subcommand("train-centralized", "train the reference ENN");
    CLI::App* c_split = app.add_subcommand("train-split", "split training across the channel");
    CLI::App* c_ser = app.add_subcommand("ser-sweep", "Monte-Carlo symbol error rates");
    CLI::App* c_bw = app.add_subcommand("bandwidth", "report occupied bandwidth");
    for (CLI::App* cmd : {c_train, c_split, c_ser, c_bw}) add_common(cmd, o);
    c_bw->add_option("--streams", streams, "OCDM stream count for the expansion report");

    try {
        app.parse(argc, argv);
        CLI::App* active = app.get_subcommands().front();
        apply_config_file(active, o);
        if (active == c_train) return run_train_centralized(o);
        if (active == c_split) return run_train_split(o);
        if (active == c_ser) return run_ser_sweep(o);
        return run_bandwidth(o, streams);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
