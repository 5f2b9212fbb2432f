#ifndef SPLITCHIRP_PHY_HPP
#define SPLITCHIRP_PHY_HPP

#include <complex>
#include <vector>

#include "splitchirp/enn.hpp"

namespace splitchirp {

using cplx = std::complex<double>;
using Waveform = std::vector<cplx>;

enum class Mode { plain_fsk, fsk_bpsk };
enum class Access { tdm, ocdm };

struct PhyConfig {
    int n = 128;                 // alphabet size per period, = DCT grid size
    double carrier_amp = 1.4142135623730951;  // A_c; sqrt(2) gives unit average power
    Mode mode = Mode::plain_fsk;
    int extension = 1;           // E, plain mode only: alphabet E*n, waveform E*n samples
    Access access = Access::tdm;
    double symbol_period = 1e-3; // seconds, for bandwidth reporting only

    int n_samples() const { return mode == Mode::plain_fsk ? extension * n : n; }
    int alphabet() const { return mode == Mode::plain_fsk ? extension * n : n; }
    void validate() const;
};

struct SymbolIndex {
    int k = 0;
    int sign = 1;  // +-1; fixed +1 in plain mode
};

struct QuantResult {
    SymbolIndex sym;
    long raw = 0;          // unclamped grid index round(n(z+1)/2)
    bool clamped = false;  // plain mode: raw fell outside [0, alphabet)
};

// Map a real value onto the index grid x = -1 + 2k/n (round half away from
// zero). Plain mode clamps to [0, E*n); fsk_bpsk folds to [0, n) x {+-1}.
QuantResult quantize(double z, const PhyConfig& cfg);

// x = -1 + 2k/n. The sign bit is not applied here.
double dequantize(SymbolIndex s, int n);

// Tone k over n_samples samples: A_c * cos(pi(2k+1)(2n+1)/(4 N_s)), the
// size-N_s DCT-IV family. Sampling at half-integer offsets is what makes the
// alphabet exactly orthogonal: the Gram matrix is A_c^2 (N_s/2) I.
Waveform modulate_fsk(SymbolIndex s, const PhyConfig& cfg);

// Same tone with BPSK phase 0 or pi carrying the folding sign.
Waveform modulate_fsk_bpsk(SymbolIndex s, const PhyConfig& cfg);

// psi_m[n] = exp(-j pi/N_s (n-m)^2); pairwise orthogonal for distinct
// m mod N_s, N_s even.
std::vector<cplx> chirp(int m, int n_samples);

// out[n] = sum_m waveforms[m][n] * psi_m[n]
Waveform ocdm_multiplex(const std::vector<Waveform>& waveforms);

// y[n] * conj(psi_m[n])
Waveform ocdm_dechirp(const Waveform& y, int m);

// argmax_k |<y, tone_k>| over the full alphabet; ties go to the lowest k.
SymbolIndex demodulate_noncoherent(const Waveform& y, const PhyConfig& cfg);

// Equalize by the (genie) channel gain, pick argmax_k |Re <y/h, tone_k>|,
// sign from the winning real correlation. Throws on |h| ~ 0.
SymbolIndex demodulate_coherent(const Waveform& y, cplx h, const PhyConfig& cfg);

// Joint demodulation of an OCDM superposition of `streams` symbols.
// Effort fast: per-stream dechirp + matched filter (the plain filter-bank
// receiver; it has residual cross-stream interference).
// Effort pic: adds least-squares interference-cancellation sweeps; needs a
// coherent reference, pass the (genie or known-ideal) channel gain.
// Effort exact: escalates to joint repair until the reconstruction residual
// vanishes; intended for noiseless links where exact recovery is possible.
enum class OcdmEffort { fast, pic, exact };

std::vector<SymbolIndex> ocdm_demodulate(const Waveform& y, int streams, const PhyConfig& cfg,
                                         OcdmEffort effort, cplx h = cplx(1.0, 0.0));

// Gaussian tail function Q(x).
double q_func(double x);

// Clipped union bounds. The caller supplies the calibrated noise density n0;
// see channel.hpp for the simulator's mapping.
double pe_fsk(int n, double a_c, double h_mag, double n0);
double pe_fsk_bpsk(int n, double a_c, double h_mag, double n0);

// B = n/(2T). Plain mode with extension E occupies E*n/(2T).
double bandwidth(int n, double symbol_period);

}  // namespace splitchirp

#endif
