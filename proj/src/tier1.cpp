#include "spikescope/tier1.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spikescope/rng.hpp"

namespace spikescope {

namespace {
constexpr double kTwoPi = 6.283185307179586;
}

std::size_t Tier1Config::freq_bins(double sample_rate) const {
    const std::size_t nyquist_bins = window / 2 + 1;
    const std::size_t cropped =
        static_cast<std::size_t>(max_freq_hz * static_cast<double>(window) / sample_rate) + 1;
    return std::min(cropped, nyquist_bins);
}

std::size_t Tier1Config::frames_per_second(double sample_rate) const {
    const double fps = sample_rate / static_cast<double>(hop);
    const double rounded = std::round(fps);
    if (rounded < 1.0 || std::abs(fps - rounded) > 1e-9)
        throw std::invalid_argument("tier1: hop of " + std::to_string(hop) +
                                    " samples does not divide one second at " +
                                    std::to_string(sample_rate) + " Hz");
    return static_cast<std::size_t>(rounded);
}

std::vector<double> hamming_window(std::size_t n) {
    if (n == 0) throw std::invalid_argument("hamming_window: n must be >= 1");
    if (n == 1) return {1.0};
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.54 - 0.46 * std::cos(kTwoPi * static_cast<double>(i) /
                                      static_cast<double>(n - 1));
    return w;
}

Spectrogram stft_logpower(const RawSignal& sig, const Tier1Config& cfg) {
    const std::size_t len = sig.samples.size();
    if (cfg.window == 0 || cfg.hop == 0)
        throw std::invalid_argument("stft_logpower: window and hop must be >= 1");
    if (cfg.window > len)
        throw std::invalid_argument("stft_logpower: window of " + std::to_string(cfg.window) +
                                    " samples is longer than the signal (" +
                                    std::to_string(len) + ")");

    const std::size_t n = cfg.window;
    const std::size_t bins = cfg.freq_bins(sig.sample_rate);
    const std::size_t frames = len / cfg.hop;

    const std::vector<double> window = hamming_window(n);

    // Twiddle tables: cos/sin of 2 pi k i / N for each retained bin.
    Matrix cos_tab(bins, n), sin_tab(bins, n);
    for (std::size_t k = 0; k < bins; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const double angle = kTwoPi * static_cast<double>(k) * static_cast<double>(i) /
                                 static_cast<double>(n);
            cos_tab(k, i) = std::cos(angle);
            sin_tab(k, i) = std::sin(angle);
        }
    }

    Spectrogram spec;
    spec.freq_bins = bins;
    spec.frames = frames;
    spec.frame_hop_seconds = static_cast<double>(cfg.hop) / sig.sample_rate;
    spec.values = Matrix(bins, frames);

    std::vector<double> windowed(n);
    for (std::size_t f = 0; f < frames; ++f) {
        const std::size_t start = f * cfg.hop;
        const std::size_t avail = std::min(n, len - start);
        for (std::size_t i = 0; i < avail; ++i) windowed[i] = sig.samples[start + i] * window[i];
        std::fill(windowed.begin() + avail, windowed.end(), 0.0);
        for (std::size_t k = 0; k < bins; ++k) {
            const double* ct = cos_tab.row(k).data();
            const double* st = sin_tab.row(k).data();
            double re = 0.0, im = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                re += windowed[i] * ct[i];
                im -= windowed[i] * st[i];
            }
            const double mag = std::sqrt(re * re + im * im);
            spec.values(k, f) = std::log(std::max(mag, cfg.log_floor));
        }
    }
    require_finite(spec.values, "stft_logpower output");
    return spec;
}

Spectrogram normalize(Spectrogram spec) {
    require_finite(spec.values, "normalize input");
    const auto& v = spec.values.values();
    if (v.empty()) return spec;
    const auto [mn_it, mx_it] = std::minmax_element(v.begin(), v.end());
    const double mn = *mn_it, span = *mx_it - *mn_it;
    auto& data = spec.values.values();
    if (span < 1e-12) {
        std::fill(data.begin(), data.end(), 0.0);
    } else {
        for (double& x : data) x = (x - mn) / span;
    }
    return spec;
}

std::vector<Episode> truncate_time(const Spectrogram& spec, std::size_t epoch_seconds) {
    if (epoch_seconds == 0) throw std::invalid_argument("truncate_time: epoch_seconds >= 1");
    if (spec.frames == 0 || spec.frames % epoch_seconds != 0)
        throw std::invalid_argument("truncate_time: " + std::to_string(spec.frames) +
                                    " frames are not divisible into " +
                                    std::to_string(epoch_seconds) + " episodes");
    const std::size_t per = spec.frames / epoch_seconds;
    std::vector<Episode> episodes(epoch_seconds);
    for (std::size_t e = 0; e < epoch_seconds; ++e) {
        Episode& ep = episodes[e];
        ep.second_index = e;
        ep.freq_bins = spec.freq_bins;
        ep.frames = per;
        ep.flat.resize(spec.freq_bins * per);
        for (std::size_t k = 0; k < spec.freq_bins; ++k)
            for (std::size_t f = 0; f < per; ++f)
                ep.flat[k * per + f] = spec.values(k, e * per + f);
    }
    return episodes;
}

std::vector<Episode> truncate_space(const Spectrogram& spec, std::size_t bands) {
    if (bands == 0) throw std::invalid_argument("truncate_space: bands must be >= 1");
    const std::size_t width = (spec.freq_bins + bands - 1) / bands;
    std::vector<Episode> episodes(bands);
    for (std::size_t b = 0; b < bands; ++b) {
        Episode& ep = episodes[b];
        ep.second_index = b;
        ep.freq_bins = width;
        ep.frames = spec.frames;
        ep.flat.assign(width * spec.frames, 0.0);
        for (std::size_t r = 0; r < width; ++r) {
            const std::size_t k = b * width + r;
            if (k >= spec.freq_bins) break;  // zero padding past the last bin
            for (std::size_t f = 0; f < spec.frames; ++f)
                ep.flat[r * spec.frames + f] = spec.values(k, f);
        }
    }
    return episodes;
}

Episode encode_spike_train(const Episode& episode, std::uint64_t seed) {
    for (double v : episode.flat)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("encode_spike_train: intensity " + std::to_string(v) +
                                        " outside [0,1]");
    Episode out = episode;
    Rng rng(seed);
    for (double& v : out.flat) v = rng.uniform() < v ? 1.0 : 0.0;
    return out;
}

}  // namespace spikescope
