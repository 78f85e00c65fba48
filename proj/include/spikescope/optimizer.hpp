#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace spikescope {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// Per-parameter Adam accumulator. Moment arrays always match the size of
/// the parameter they track; step is strictly increasing.
struct AdamState {
    AdamConfig cfg;
    std::vector<double> first_moment;
    std::vector<double> second_moment;
    std::uint64_t step = 0;

    AdamState() = default;
    explicit AdamState(std::size_t n, AdamConfig c = {})
        : cfg(c), first_moment(n, 0.0), second_moment(n, 0.0) {}
};

/// Standard Adam update with bias correction, in place. Increments state.step.
void adam_step(std::span<double> param, std::span<const double> grad, AdamState& state);

}  // namespace spikescope
