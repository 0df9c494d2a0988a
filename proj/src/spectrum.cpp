#include "beamspring/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace beamspring {

namespace {

// FFTW plan creation mutates global planner state; execution is
// thread-safe on distinct plans.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

int largest_pow2_at_most(std::size_t n) {
    int p = 1;
    while (static_cast<std::size_t>(p) * 2 <= n) p *= 2;
    return p;
}

}  // namespace

Spectrum fft_amplitude(std::span<const double> signal, double dt) {
    if (signal.size() < 2)
        throw std::invalid_argument("fft_amplitude needs at least 2 samples");
    if (!(dt > 0.0))
        throw std::invalid_argument("fft_amplitude: dt must be positive");

    const int n = largest_pow2_at_most(signal.size());
    std::vector<double> in(signal.begin(), signal.begin() + n);
    std::vector<std::complex<double>> out(n / 2 + 1);

    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_plan plan = fftw_plan_dft_r2c_1d(
            n, in.data(), reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
        if (!plan) throw std::runtime_error("fftw plan creation failed");
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    Spectrum spec;
    spec.n_fft = n;
    spec.df_bin = 1.0 / (n * dt);
    spec.amplitude.resize(n / 2);
    spec.amplitude[0] = std::abs(out[0]) / n;
    for (int k = 1; k < n / 2; ++k) spec.amplitude[k] = 2.0 * std::abs(out[k]) / n;
    return spec;
}

Spectrum fft_amplitude(const TimeSeries& series, int dof) {
    if (dof < 0 || dof >= series.n_dof())
        throw std::invalid_argument("fft_amplitude: DOF index out of range");
    std::vector<double> signal(series.n_samples());
    for (int i = 0; i < series.n_samples(); ++i) signal[i] = series.q(i, dof);
    return fft_amplitude(signal, series.dt);
}

std::vector<Peak> find_peaks(const Spectrum& spec, double threshold_rel) {
    if (spec.amplitude.empty())
        throw std::invalid_argument("find_peaks: empty spectrum");
    if (!(threshold_rel > 0.0) || threshold_rel > 1.0)
        throw std::invalid_argument("find_peaks: threshold must lie in (0, 1]");

    const double floor =
        threshold_rel * *std::max_element(spec.amplitude.begin(), spec.amplitude.end());

    std::vector<Peak> peaks;
    for (int k = 1; k + 1 < spec.n_bins(); ++k) {
        const double y1 = spec.amplitude[k - 1];
        const double y2 = spec.amplitude[k];
        const double y3 = spec.amplitude[k + 1];
        if (!(y2 > y1 && y2 > y3 && y2 >= floor)) continue;
        // 3-point parabolic refinement of position and height.
        const double denom = y1 - 2.0 * y2 + y3;
        double delta = 0.0;
        if (denom != 0.0) delta = 0.5 * (y1 - y3) / denom;
        peaks.push_back(Peak{(k + delta) * spec.df_bin,
                             y2 - 0.25 * (y1 - y3) * delta});
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.amplitude > b.amplitude; });
    return peaks;
}

}  // namespace beamspring
