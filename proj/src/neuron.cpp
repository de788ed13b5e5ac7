#include "swsync/neuron.h"

#include <cmath>
#include <numeric>
#include <string>

#include "swsync/errors.h"

namespace swsync {

namespace {

double dvdt(double v, double u, double input) noexcept {
    return 0.04 * v * v + 5.0 * v + 140.0 - u + input;
}

} // namespace

NeuronState step_neuron(NeuronState state, const NeuronParams& params, double input,
                        double divergence_ceiling) {
    state.v += 0.5 * dvdt(state.v, state.u, input);
    state.v += 0.5 * dvdt(state.v, state.u, input);
    state.u += params.a * (params.b * state.v - state.u);
    if (!std::isfinite(state.v) || !std::isfinite(state.u) ||
        std::abs(state.v) > divergence_ceiling) {
        throw NumericFault("integrator diverged (v=" + std::to_string(state.v) +
                           "); check weight and input scaling");
    }
    return state;
}

ResetResult detect_and_reset(NeuronState state, const NeuronParams& params) noexcept {
    if (state.v >= kSpikeThreshold) {
        state.v = params.c;
        state.u += params.d;
        return {true, state};
    }
    return {false, state};
}

NeuronParams excitatory_params(double r_c, double r_d) noexcept {
    return {0.02, 0.2, -65.0 + 15.0 * r_c * r_c, 8.0 - 6.0 * r_d * r_d};
}

NeuronParams inhibitory_params(double r_a, double r_b) noexcept {
    return {0.02 + 0.08 * r_a, 0.25 - 0.05 * r_b, -65.0, 2.0};
}

Population make_population(std::size_t n, std::size_t num_excitatory,
                           std::size_t num_inhibitory, Rng& rng) {
    if (num_excitatory + num_inhibitory != n) {
        throw ConfigError("excitatory (" + std::to_string(num_excitatory) +
                          ") + inhibitory (" + std::to_string(num_inhibitory) +
                          ") must equal N (" + std::to_string(n) + ")");
    }

    // Partial Fisher-Yates: the first num_inhibitory slots become the
    // inhibitory ring positions.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < num_inhibitory; ++i) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(order[i], order[j]);
    }

    Population pop;
    pop.params.resize(n);
    pop.states.resize(n);
    for (std::size_t i = 0; i < num_inhibitory; ++i) {
        pop.states[order[i]].kind = UnitKind::Inhibitory;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        NeuronState& s = pop.states[i];
        pop.params[i] = s.kind == UnitKind::Inhibitory ? inhibitory_params(r1, r2)
                                                       : excitatory_params(r1, r2);
        s.v = -65.0;
        s.u = pop.params[i].b * s.v;
    }
    return pop;
}

} // namespace swsync
