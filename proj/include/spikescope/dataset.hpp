#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spikescope {

enum class Stage : std::uint8_t { Wake = 0, N1 = 1, N2 = 2, N3 = 3, Rem = 4 };

inline constexpr std::size_t kNumStages = 5;
inline constexpr std::array<const char*, kNumStages> kStageNames = {"Wake", "N1", "N2", "N3",
                                                                    "REM"};

const char* stage_name(Stage s);
Stage stage_from_name(std::string_view name);  // throws on unknown name
Stage stage_from_index(std::size_t idx);       // throws on idx >= 5

/// One single-channel epoch: samples in arbitrary units at a fixed rate,
/// labelled with its sleep stage.
struct RawSignal {
    std::string id;
    Stage label = Stage::Wake;
    double sample_rate = 0.0;
    std::vector<double> samples;

    double seconds() const { return static_cast<double>(samples.size()) / sample_rate; }
};

struct Dataset {
    std::vector<RawSignal> signals;

    std::size_t size() const { return signals.size(); }
    bool empty() const { return signals.empty(); }
    std::array<std::size_t, kNumStages> class_counts() const;
};

/// Synthetic generator settings. Band assignments per stage are fixed:
/// Wake 8-13 Hz, N1 4-8 Hz, N2 12-14 Hz burst trains, N3 0.5-4 Hz,
/// REM mixed 4-8 Hz at low amplitude.
struct GenConfig {
    double sample_rate = 100.0;
    std::size_t epoch_seconds = 30;
    double amplitude = 1.0;     // dominant-rhythm amplitude scale
    double noise_sigma = 0.30;  // additive white Gaussian noise
};

/// Deterministic in (stage, seed, config).
RawSignal generate_sample(Stage stage, std::uint64_t seed, const GenConfig& cfg = {});

/// n_per_class samples per stage, ids "<stage>-<index>".
Dataset generate_dataset(std::size_t n_per_class, std::uint64_t seed, const GenConfig& cfg = {});

// CSV: header `id,label,sample_rate,n_samples`, then one signal per row
// `id,label,rate,n,s_0,...,s_{n-1}`. Decimal text, LF line endings.
Dataset load_csv(const std::string& path);
void save_csv(const Dataset& ds, const std::string& path);

// Binary: magic EEGRAW01, little-endian u32 record count; per record
// u32 id length, id bytes, u8 label index, f64 sample_rate, u32 n, n x f64.
Dataset load_binary(const std::string& path);
void save_binary(const Dataset& ds, const std::string& path);

/// Dispatch on file extension: .bin/.eegraw -> binary, anything else CSV.
Dataset load_dataset(const std::string& path);
void save_dataset(const Dataset& ds, const std::string& path);

struct SplitResult {
    Dataset train;
    Dataset val;
    Dataset test;
};

/// Disjoint cover of ds, shuffled deterministically by seed. Stratified per
/// class when every class present has at least 3 members.
SplitResult split(const Dataset& ds, double train_frac, double val_frac, std::uint64_t seed);

}  // namespace spikescope
