#include "spikescope/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "spikescope/rng.hpp"

namespace spikescope {

const char* stage_name(Stage s) { return kStageNames[static_cast<std::size_t>(s)]; }

Stage stage_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kNumStages; ++i)
        if (name == kStageNames[i]) return static_cast<Stage>(i);
    throw std::invalid_argument("unknown stage label '" + std::string(name) + "'");
}

Stage stage_from_index(std::size_t idx) {
    if (idx >= kNumStages)
        throw std::invalid_argument("stage index " + std::to_string(idx) + " out of range");
    return static_cast<Stage>(idx);
}

std::array<std::size_t, kNumStages> Dataset::class_counts() const {
    std::array<std::size_t, kNumStages> counts{};
    for (const auto& s : signals) counts[static_cast<std::size_t>(s.label)] += 1;
    return counts;
}

namespace {

constexpr double kTwoPi = 6.283185307179586;

struct Tone {
    double freq;
    double amp;
    double phase;
};

void add_tone(std::vector<double>& out, double fs, const Tone& t) {
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += t.amp * std::sin(kTwoPi * t.freq * static_cast<double>(i) / fs + t.phase);
}

// Spindle-like bursts: Hann-shaped envelopes repeating at a jittered cadence.
void add_burst_tone(std::vector<double>& out, double fs, const Tone& t, double period,
                    double burst_len, double offset) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double time = static_cast<double>(i) / fs - offset;
        if (time < 0.0) continue;
        const double in_period = std::fmod(time, period);
        if (in_period >= burst_len) continue;
        const double env = std::sin(3.141592653589793 * in_period / burst_len);
        out[i] += t.amp * env * env *
                  std::sin(kTwoPi * t.freq * static_cast<double>(i) / fs + t.phase);
    }
}

}  // namespace

RawSignal generate_sample(Stage stage, std::uint64_t seed, const GenConfig& cfg) {
    if (cfg.epoch_seconds < 1)
        throw std::invalid_argument("generate_sample: epoch_seconds must be >= 1");
    if (cfg.sample_rate <= 0.0)
        throw std::invalid_argument("generate_sample: sample_rate must be positive");

    const std::size_t n =
        static_cast<std::size_t>(std::llround(cfg.sample_rate * cfg.epoch_seconds));
    RawSignal sig;
    sig.label = stage;
    sig.sample_rate = cfg.sample_rate;
    sig.samples.assign(n, 0.0);

    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(stage)));
    const double a = cfg.amplitude;
    const double fs = cfg.sample_rate;

    switch (stage) {
        case Stage::Wake:
            add_tone(sig.samples, fs,
                     {rng.uniform(8.0, 12.0), 1.0 * a, rng.uniform(0.0, kTwoPi)});
            break;
        case Stage::N1:
            add_tone(sig.samples, fs,
                     {rng.uniform(4.0, 8.0), 1.0 * a, rng.uniform(0.0, kTwoPi)});
            break;
        case Stage::N2: {
            const double period = rng.uniform(1.8, 2.6);
            const double burst_len = rng.uniform(0.5, 0.8);
            const double offset = rng.uniform(0.0, period);
            add_burst_tone(sig.samples, fs,
                           {rng.uniform(12.5, 14.0), 1.3 * a, rng.uniform(0.0, kTwoPi)}, period,
                           burst_len, offset);
            add_tone(sig.samples, fs,
                     {rng.uniform(2.0, 4.0), 0.35 * a, rng.uniform(0.0, kTwoPi)});
            break;
        }
        case Stage::N3:
            add_tone(sig.samples, fs,
                     {rng.uniform(0.5, 4.0), 1.5 * a, rng.uniform(0.0, kTwoPi)});
            break;
        case Stage::Rem:
            for (int k = 0; k < 3; ++k)
                add_tone(sig.samples, fs,
                         {rng.uniform(4.0, 8.0), 0.35 * a, rng.uniform(0.0, kTwoPi)});
            break;
    }

    if (cfg.noise_sigma > 0.0) {
        const double sigma = cfg.noise_sigma * a;
        for (double& x : sig.samples) x += rng.gauss(0.0, sigma);
    }
    return sig;
}

Dataset generate_dataset(std::size_t n_per_class, std::uint64_t seed, const GenConfig& cfg) {
    if (n_per_class < 1)
        throw std::invalid_argument("generate_dataset: n_per_class must be >= 1");
    Dataset ds;
    ds.signals.reserve(n_per_class * kNumStages);
    for (std::size_t c = 0; c < kNumStages; ++c) {
        for (std::size_t i = 0; i < n_per_class; ++i) {
            char id[64];
            std::snprintf(id, sizeof(id), "%s-%03zu", kStageNames[c], i);
            RawSignal sig =
                generate_sample(static_cast<Stage>(c), mix_seed(seed, fnv1a(id)), cfg);
            sig.id = id;
            ds.signals.push_back(std::move(sig));
        }
    }
    return ds;
}

// ---------------------------------------------------------------- CSV I/O

namespace {

void append_double(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

double parse_double(std::string_view field, std::size_t line_no, std::size_t col) {
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw std::runtime_error("csv row " + std::to_string(line_no) + ": bad number '" +
                                 std::string(field) + "' at column " + std::to_string(col + 1));
    return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}

}  // namespace

void save_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "id,label,sample_rate,n_samples\n";
    std::string line;
    for (const auto& sig : ds.signals) {
        line.clear();
        line += sig.id;
        line += ',';
        line += stage_name(sig.label);
        line += ',';
        append_double(line, sig.sample_rate);
        line += ',';
        line += std::to_string(sig.samples.size());
        for (double v : sig.samples) {
            line += ',';
            append_double(line, v);
        }
        line += '\n';
        out << line;
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty dataset in '" + path + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "id,label,sample_rate,n_samples")
        throw std::runtime_error("malformed header in '" + path + "': '" + line + "'");

    Dataset ds;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() < 4)
            throw std::runtime_error("csv row " + std::to_string(line_no) +
                                     ": expected at least 4 fields, got " +
                                     std::to_string(fields.size()));
        RawSignal sig;
        sig.id = std::string(fields[0]);
        try {
            sig.label = stage_from_name(fields[1]);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("csv row " + std::to_string(line_no) + ": " + e.what());
        }
        sig.sample_rate = parse_double(fields[2], line_no, 2);
        if (sig.sample_rate <= 0.0)
            throw std::runtime_error("csv row " + std::to_string(line_no) +
                                     ": sample_rate must be positive");
        const double n_decl = parse_double(fields[3], line_no, 3);
        const std::size_t n = static_cast<std::size_t>(n_decl);
        if (n_decl < 0 || static_cast<double>(n) != n_decl)
            throw std::runtime_error("csv row " + std::to_string(line_no) +
                                     ": bad sample count");
        if (fields.size() - 4 != n)
            throw std::runtime_error("csv row " + std::to_string(line_no) + ": declared " +
                                     std::to_string(n) + " samples but row has " +
                                     std::to_string(fields.size() - 4));
        sig.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            sig.samples[i] = parse_double(fields[4 + i], line_no, 4 + i);
        ds.signals.push_back(std::move(sig));
    }
    if (ds.empty()) throw std::runtime_error("empty dataset in '" + path + "'");
    return ds;
}

// ------------------------------------------------------------- binary I/O

namespace {

constexpr char kMagic[8] = {'E', 'E', 'G', 'R', 'A', 'W', '0', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u8(std::string& out, std::uint8_t v) { out.push_back(static_cast<char>(v)); }

void put_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;
    const std::string& path;

    void need(std::size_t n) const {
        if (pos + n > buf.size())
            throw std::runtime_error("truncated binary dataset '" + path + "'");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(buf[pos++]);
    }
    double f64() {
        need(8);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i)
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i]))
                    << (8 * i);
        pos += 8;
        double v;
        std::memcpy(&v, &bits, sizeof(v));
        return v;
    }
    std::string bytes(std::size_t n) {
        need(n);
        std::string s = buf.substr(pos, n);
        pos += n;
        return s;
    }
};

}  // namespace

void save_binary(const Dataset& ds, const std::string& path) {
    std::string out;
    out.append(kMagic, sizeof(kMagic));
    put_u32(out, static_cast<std::uint32_t>(ds.size()));
    for (const auto& sig : ds.signals) {
        put_u32(out, static_cast<std::uint32_t>(sig.id.size()));
        out += sig.id;
        put_u8(out, static_cast<std::uint8_t>(sig.label));
        put_f64(out, sig.sample_rate);
        put_u32(out, static_cast<std::uint32_t>(sig.samples.size()));
        for (double v : sig.samples) put_f64(out, v);
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

Dataset load_binary(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    const std::string buf = ss.str();
    if (buf.size() < sizeof(kMagic) || std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("bad magic in binary dataset '" + path + "'");

    Reader r{buf, sizeof(kMagic), path};
    const std::uint32_t count = r.u32();
    Dataset ds;
    ds.signals.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        RawSignal sig;
        const std::uint32_t id_len = r.u32();
        sig.id = r.bytes(id_len);
        sig.label = stage_from_index(r.u8());
        sig.sample_rate = r.f64();
        const std::uint32_t n = r.u32();
        sig.samples.resize(n);
        for (std::uint32_t j = 0; j < n; ++j) sig.samples[j] = r.f64();
        ds.signals.push_back(std::move(sig));
    }
    if (ds.empty()) throw std::runtime_error("empty dataset in '" + path + "'");
    return ds;
}

namespace {

bool has_binary_extension(const std::string& path) {
    const auto dot = path.rfind('.');
    if (dot == std::string::npos) return false;
    const std::string ext = path.substr(dot);
    return ext == ".bin" || ext == ".eegraw";
}

}  // namespace

Dataset load_dataset(const std::string& path) {
    return has_binary_extension(path) ? load_binary(path) : load_csv(path);
}

void save_dataset(const Dataset& ds, const std::string& path) {
    if (has_binary_extension(path))
        save_binary(ds, path);
    else
        save_csv(ds, path);
}

// ------------------------------------------------------------------ split

SplitResult split(const Dataset& ds, double train_frac, double val_frac, std::uint64_t seed) {
    if (!(train_frac > 0.0 && train_frac < 1.0) || !(val_frac > 0.0 && val_frac < 1.0) ||
        train_frac + val_frac >= 1.0)
        throw std::invalid_argument("split: fractions must lie in (0,1) with train+val < 1");
    if (ds.empty()) throw std::invalid_argument("split: empty dataset");

    const auto counts = ds.class_counts();
    bool stratify = true;
    for (std::size_t c = 0; c < kNumStages; ++c)
        if (counts[c] > 0 && counts[c] < 3) stratify = false;

    std::vector<std::vector<std::size_t>> groups;
    if (stratify) {
        groups.resize(kNumStages);
        for (std::size_t i = 0; i < ds.size(); ++i)
            groups[static_cast<std::size_t>(ds.signals[i].label)].push_back(i);
    } else {
        groups.resize(1);
        groups[0].resize(ds.size());
        std::iota(groups[0].begin(), groups[0].end(), std::size_t{0});
    }

    SplitResult out;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        auto& idx = groups[g];
        if (idx.empty()) continue;
        Rng rng(mix_seed(seed, g));
        rng.shuffle(idx);
        const std::size_t n = idx.size();
        const std::size_t n_train = static_cast<std::size_t>(train_frac * n);
        const std::size_t n_val = static_cast<std::size_t>(val_frac * n);
        for (std::size_t i = 0; i < n; ++i) {
            const RawSignal& sig = ds.signals[idx[i]];
            if (i < n_train)
                out.train.signals.push_back(sig);
            else if (i < n_train + n_val)
                out.val.signals.push_back(sig);
            else
                out.test.signals.push_back(sig);
        }
    }
    return out;
}

}  // namespace spikescope
