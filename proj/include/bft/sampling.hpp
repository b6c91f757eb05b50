#ifndef BFT_SAMPLING_HPP
#define BFT_SAMPLING_HPP

#include "bft/state.hpp"

#include <cstdint>
#include <random>

namespace bft {

// Uniform double in [0, 1) built from raw mt19937_64 output. The standard
// distributions are not bit-identical across library implementations; this is.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// Random validated GGE: a low-harmonic even weight with w > 0.05 everywhere.
inline GGEState random_validated_gge(DispersionPtr disp, std::mt19937_64& rng) {
    for (;;) {
        double a0 = uniform_in(rng, 0.3, 1.6);
        double a1 = uniform_in(rng, -0.3, 0.3);
        double a2 = uniform_in(rng, -0.2, 0.2);
        double a3 = uniform_in(rng, -0.1, 0.1);
        if (a0 - std::abs(a1) - std::abs(a2) - std::abs(a3) < 0.05) continue;
        return GGEState(disp,
                        [a0, a1, a2, a3](double th) {
                            return a0 + a1 * std::cos(th) + a2 * std::cos(2.0 * th) +
                                   a3 * std::cos(3.0 * th);
                        },
                        "random_gge");
    }
}

} // namespace bft

#endif
