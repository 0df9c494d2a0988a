// One-sided amplitude spectra of sampled signals and peak extraction.
#pragma once

#include <span>
#include <vector>

#include "beamspring/dynamics.hpp"

namespace beamspring {

/// One-sided magnitude spectrum. Bin k corresponds to frequency
/// k * df_bin; amplitudes carry the units of the input signal.
struct Spectrum {
    double df_bin = 0.0;            ///< frequency resolution, 1/(N dt) [Hz]
    int n_fft = 0;                  ///< transform length N (a power of two)
    std::vector<double> amplitude;  ///< N/2 bins, scaled 2/N (bin 0: 1/N)

    int n_bins() const { return static_cast<int>(amplitude.size()); }
    double frequency(int bin) const { return bin * df_bin; }
};

/// Rectangular-window amplitude spectrum of a uniformly sampled signal.
/// The signal is truncated to the largest power of two <= its length.
Spectrum fft_amplitude(std::span<const double> signal, double dt);

/// Spectrum of one DOF of a trajectory.
Spectrum fft_amplitude(const TimeSeries& series, int dof);

struct Peak {
    double frequency_hz = 0.0;
    double amplitude = 0.0;
};

/// Strict local maxima above threshold_rel * max(amplitude), frequency and
/// amplitude refined by a 3-point parabolic fit, sorted by amplitude
/// descending. threshold_rel must lie in (0, 1].
std::vector<Peak> find_peaks(const Spectrum& spec, double threshold_rel);

}  // namespace beamspring
