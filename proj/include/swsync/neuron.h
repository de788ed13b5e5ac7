#pragma once

#include <cstddef>
#include <vector>

#include "swsync/rng.h"

namespace swsync {

enum class UnitKind : unsigned char { Excitatory, Inhibitory };

// Izhikevich (a, b, c, d).
struct NeuronParams {
    double a = 0.02; // recovery time scale, 1/ms
    double b = 0.2;  // recovery sensitivity
    double c = -65;  // reset potential, mV
    double d = 8;    // reset recovery increment
};

struct NeuronState {
    double v = -65; // membrane potential, mV
    double u = -13; // recovery variable
    UnitKind kind = UnitKind::Excitatory;
};

inline constexpr double kSpikeThreshold = 30.0;
inline constexpr double kDefaultDivergenceCeiling = 1e6;

// Advances one 1 ms tick: v by two 0.5 ms Euler half-steps, then u by one
// 1 ms Euler step using the updated v. Reset is not applied here.
// Throws NumericFault when v leaves [-ceiling, ceiling] or becomes non-finite.
NeuronState step_neuron(NeuronState state, const NeuronParams& params, double input,
                        double divergence_ceiling = kDefaultDivergenceCeiling);

struct ResetResult {
    bool fired = false;
    NeuronState state;
};

// v >= 30 fires: v <- c, u <- u + d.
ResetResult detect_and_reset(NeuronState state, const NeuronParams& params) noexcept;

// Heterogeneous parameter maps; each argument is an independent U[0,1) draw.
// Excitatory: (0.02, 0.2, -65 + 15 r_c^2, 8 - 6 r_d^2).
// Inhibitory: (0.02 + 0.08 r_a, 0.25 - 0.05 r_b, -65, 2).
NeuronParams excitatory_params(double r_c, double r_d) noexcept;
NeuronParams inhibitory_params(double r_a, double r_b) noexcept;

struct Population {
    std::vector<NeuronParams> params;
    std::vector<NeuronState> states;

    std::size_t size() const noexcept { return states.size(); }
    bool is_inhibitory(std::size_t i) const noexcept {
        return states[i].kind == UnitKind::Inhibitory;
    }
};

// Places num_inhibitory inhibitory identities uniformly at random among the
// ring positions, draws per-unit parameters and starts every unit at
// v = -65, u = b*v. Throws ConfigError unless num_excitatory + num_inhibitory == n.
Population make_population(std::size_t n, std::size_t num_excitatory,
                           std::size_t num_inhibitory, Rng& rng);

} // namespace swsync
