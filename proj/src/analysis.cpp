#include "swsync/analysis.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>

#include "swsync/errors.h"

namespace swsync {

double kernel(double x, int half_width) {
    if (std::abs(x) > half_width) return 0.0;
    const double z = x / 10.0;
    return std::exp(-z * z);
}

std::vector<double> kernel_taps(int half_width) {
    if (half_width < 0) throw ConfigError("kernel half width must be non-negative");
    std::vector<double> taps(static_cast<std::size_t>(2 * half_width + 1));
    for (int j = -half_width; j <= half_width; ++j) {
        taps[static_cast<std::size_t>(j + half_width)] = kernel(j, half_width);
    }
    return taps;
}

std::vector<double> convolve_and_sum(const SpikeRaster& raster, std::size_t duration,
                                     int half_width) {
    // Convolution is linear, so convolving the summed count series is the
    // same as summing per-unit convolutions.
    const auto counts = spike_counts(raster, duration);
    const auto taps = kernel_taps(half_width);
    const auto len = static_cast<std::ptrdiff_t>(duration);
    std::vector<double> out(duration, 0.0);
    for (std::ptrdiff_t t = 0; t < len; ++t) {
        if (counts[static_cast<std::size_t>(t)] == 0) continue;
        const double c = counts[static_cast<std::size_t>(t)];
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, t - half_width);
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(len - 1, t + half_width);
        for (std::ptrdiff_t s = lo; s <= hi; ++s) {
            out[static_cast<std::size_t>(s)] += c * taps[static_cast<std::size_t>(s - t + half_width)];
        }
    }
    return out;
}

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* plan) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
};

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

} // namespace

std::vector<double> power_spectrum(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n == 0) return {};
    const std::size_t bins = n / 2 + 1;
    std::unique_ptr<double, FftwFree> in(fftw_alloc_real(n));
    std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(bins));
    std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    std::copy(series.begin(), series.end(), in.get());
    fftw_execute(plan.get());

    std::vector<double> power(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        const double re = out.get()[k][0];
        const double im = out.get()[k][1];
        power[k] = re * re + im * im;
    }
    return power;
}

SyncMeasure sync_measure(std::span<const double> series, double sample_rate_hz) {
    const std::size_t n = series.size();
    if (n < 2) throw ConfigError("sync_measure needs at least two samples");
    const auto power = power_spectrum(series);

    SyncMeasure m;
    for (std::size_t k = 1; k < power.size(); ++k) {
        if (power[k] > m.S) {
            m.S = power[k];
            m.bin = k;
        }
    }

    double mass = 0.0;
    for (double x : series) mass += std::abs(x);
    const double floor = 1e-12 * mass;
    if (m.bin == 0 || m.S <= floor * floor) {
        return {};
    }
    m.dominant_freq_hz = static_cast<double>(m.bin) * sample_rate_hz / static_cast<double>(n);
    return m;
}

NormalizedS normalize_S(std::span<const double> values) {
    double peak = 0.0;
    for (double v : values) {
        if (!std::isfinite(v) || v < 0) throw ConfigError("S values must be finite and non-negative");
        peak = std::max(peak, v);
    }
    NormalizedS out;
    out.values.assign(values.size(), 0.0);
    if (peak == 0.0) {
        out.degenerate = true;
        return out;
    }
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i] = values[i] / peak;
    return out;
}

} // namespace swsync
