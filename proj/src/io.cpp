#include "splitchirp/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace splitchirp {

namespace {
std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    return os;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}
}  // namespace

void write_waveform_csv(const Waveform& w, const std::string& path) {
    std::ofstream os = open_out(path);
    os << "n,real,imag\n";
    for (size_t n = 0; n < w.size(); ++n)
        os << n << "," << fmt(w[n].real()) << "," << fmt(w[n].imag()) << "\n";
}

void write_ser_csv(const std::vector<SerRow>& rows, const std::string& path) {
    std::ofstream os = open_out(path);
    os << "snr_db,trials,errors,ser_measured,ser_analytic\n";
    for (const SerRow& r : rows)
        os << fmt(r.snr_db) << "," << r.trials << "," << r.errors << ","
           << fmt(r.ser_measured) << "," << fmt(r.ser_analytic) << "\n";
}

void write_metrics_csv(const std::vector<SplitEpochRow>& rows, const std::string& path) {
    std::ofstream os = open_out(path);
    os << "epoch,accuracy,mse,fwd_ser,bwd_ser,clamps\n";
    for (const SplitEpochRow& r : rows)
        os << r.epoch << "," << fmt(r.accuracy) << "," << fmt(r.mse) << "," << fmt(r.fwd_ser)
           << "," << fmt(r.bwd_ser) << "," << r.clamps << "\n";
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream os = open_out(path);
    os << "channel,snr_db,accuracy\n";
    for (const SweepRow& r : rows)
        os << r.channel << "," << fmt(r.snr_db) << "," << fmt(r.accuracy) << "\n";
}

void write_map_pgm(const std::vector<int>& grid, int resolution, const std::string& path) {
    if (int(grid.size()) != resolution * resolution)
        throw std::invalid_argument("write_map_pgm: grid size mismatch");
    std::ofstream os = open_out(path);
    os << "P2\n" << resolution << " " << resolution << "\n255\n";
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j)
            os << (grid[size_t(i) * resolution + j] > 0 ? 255 : 0)
               << (j + 1 == resolution ? '\n' : ' ');
    }
}

void write_map_csv(const std::vector<int>& grid, int resolution, const std::string& path) {
    if (int(grid.size()) != resolution * resolution)
        throw std::invalid_argument("write_map_csv: grid size mismatch");
    std::ofstream os = open_out(path);
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j)
            os << grid[size_t(i) * resolution + j] << (j + 1 == resolution ? '\n' : ',');
    }
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = val;
    }
    return kv;
}

}  // namespace splitchirp
