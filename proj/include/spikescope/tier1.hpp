#pragma once

#include <cstdint>
#include <vector>

#include "spikescope/dataset.hpp"
#include "spikescope/matrix.hpp"

namespace spikescope {

struct Tier1Config {
    std::size_t window = 100;   // Hamming window length in samples (1 s at 100 Hz)
    std::size_t hop = 25;       // frame hop in samples (0.25 s)
    double max_freq_hz = 30.0;  // retain bins 0..max_freq inclusive
    double log_floor = 1e-10;   // magnitude clamp before the log

    /// Retained bin count F; bin k sits at k*fs/window Hz.
    std::size_t freq_bins(double sample_rate) const;
    /// Frames per second of signal; throws unless hop divides one second.
    std::size_t frames_per_second(double sample_rate) const;
};

/// Normalized (or pre-normalization) time-frequency intensity matrix.
struct Spectrogram {
    std::size_t freq_bins = 0;
    std::size_t frames = 0;
    Matrix values;  // freq_bins x frames
    double frame_hop_seconds = 0.0;
};

/// One truncation unit: a freq_bins x frames block, flattened row-major
/// for SNN input.
struct Episode {
    std::size_t second_index = 0;
    std::size_t freq_bins = 0;
    std::size_t frames = 0;
    std::vector<double> flat;  // length freq_bins * frames
};

/// Hamming weights 0.54 - 0.46 cos(2 pi i / (n-1)); [1.0] for n = 1.
std::vector<double> hamming_window(std::size_t n);

/// Windowed DFT magnitudes, log-compressed with a floor, bins cropped to
/// 0..max_freq_hz. Frames start every `hop` samples; the tail is zero-padded
/// so the frame count is samples/hop exactly.
Spectrogram stft_logpower(const RawSignal& sig, const Tier1Config& cfg = {});

/// Min-max rescale to [0,1] over the whole spectrogram; a degenerate range
/// (max - min < 1e-12) maps to all zeros.
Spectrogram normalize(Spectrogram spec);

/// Cuts the frame axis into epoch_seconds contiguous per-second episodes.
std::vector<Episode> truncate_time(const Spectrogram& spec, std::size_t epoch_seconds);

/// Cuts the frequency axis into `bands` contiguous equal-width episodes;
/// the tail is zero-padded when the bin count is not divisible.
std::vector<Episode> truncate_space(const Spectrogram& spec, std::size_t bands);

/// Bernoulli-samples each intensity into a binary spike, p = intensity.
Episode encode_spike_train(const Episode& episode, std::uint64_t seed);

}  // namespace spikescope
