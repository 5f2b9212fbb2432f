#ifndef SPLITCHIRP_IO_HPP
#define SPLITCHIRP_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "splitchirp/split.hpp"

namespace splitchirp {

// Debug dump: one "n,real,imag" line per sample.
void write_waveform_csv(const Waveform& w, const std::string& path);

// Header snr_db,trials,errors,ser_measured,ser_analytic
void write_ser_csv(const std::vector<SerRow>& rows, const std::string& path);

// Header epoch,accuracy,mse,fwd_ser,bwd_ser,clamps
void write_metrics_csv(const std::vector<SplitEpochRow>& rows, const std::string& path);

struct SweepRow {
    std::string channel;
    double snr_db = 0.0;
    double accuracy = 0.0;
};

// Header channel,snr_db,accuracy
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

// +-1 grid as P2 PGM (255 for +1, 0 for -1) and as CSV.
void write_map_pgm(const std::vector<int>& grid, int resolution, const std::string& path);
void write_map_csv(const std::vector<int>& grid, int resolution, const std::string& path);

// Flat key=value config file; '#' starts a comment. Later keys win.
std::map<std::string, std::string> parse_kv_file(const std::string& path);

}  // namespace splitchirp

#endif
