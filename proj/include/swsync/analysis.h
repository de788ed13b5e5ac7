#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "swsync/simulate.h"

namespace swsync {

// Half of the 30 ms smoothing window, in 1 ms taps.
inline constexpr int kKernelHalfWidth = 15;

// exp(-(x/10)^2) on |x| <= half_width, zero outside.
double kernel(double x, int half_width = kKernelHalfWidth);

// Taps for offsets -half_width..half_width.
std::vector<double> kernel_taps(int half_width = kKernelHalfWidth);

// Sum over units of each unit's spike train convolved with the kernel.
// Contributions falling outside [0, duration) are dropped.
std::vector<double> convolve_and_sum(const SpikeRaster& raster, std::size_t duration,
                                     int half_width = kKernelHalfWidth);

// One-sided power |X_k|^2 of the unnormalized DFT, k = 0..n/2.
std::vector<double> power_spectrum(std::span<const double> series);

struct SyncMeasure {
    double S = 0;                           // power of the dominant non-DC bin
    std::optional<double> dominant_freq_hz; // absent when every non-DC bin is zero
    std::size_t bin = 0;
};

// Largest non-DC power and its frequency, bin * sample_rate / n. Ties go to
// the lower frequency. Power at round-off level relative to the signal counts
// as zero. Throws ConfigError for fewer than two samples.
SyncMeasure sync_measure(std::span<const double> series, double sample_rate_hz = 1000.0);

struct NormalizedS {
    std::vector<double> values;
    bool degenerate = false; // every input was zero
};

// Divides by the largest value. Throws ConfigError on negative or
// non-finite input.
NormalizedS normalize_S(std::span<const double> values);

} // namespace swsync
