#include "spikescope/optimizer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spikescope/matrix.hpp"

namespace spikescope {

void adam_step(std::span<double> param, std::span<const double> grad, AdamState& state) {
    if (param.size() != grad.size() || param.size() != state.first_moment.size())
        throw std::invalid_argument("adam_step: shape mismatch, param " +
                                    std::to_string(param.size()) + ", grad " +
                                    std::to_string(grad.size()) + ", state " +
                                    std::to_string(state.first_moment.size()));
    require_finite(grad, "adam_step gradient");
    state.step += 1;
    const auto& c = state.cfg;
    const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < param.size(); ++i) {
        double& m = state.first_moment[i];
        double& v = state.second_moment[i];
        m = c.beta1 * m + (1.0 - c.beta1) * grad[i];
        v = c.beta2 * v + (1.0 - c.beta2) * grad[i] * grad[i];
        const double m_hat = m / bc1;
        const double v_hat = v / bc2;
        param[i] -= c.lr * m_hat / (std::sqrt(v_hat) + c.eps);
    }
    require_finite(param, "adam_step parameter");
}

}  // namespace spikescope
