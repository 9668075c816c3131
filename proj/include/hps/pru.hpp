#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <variant>
#include <vector>

#include "hps/design.hpp"
#include "hps/state.hpp"

namespace hps {

// One diagonal-then-Hadamard round. The HPS form draws an m x n
// architecture with m angles; the ideal form draws an independent phase
// per basis string (the exponential-depth limit, n <= 12).
struct HpsLayer {
    BitMatrix arch;
    AngleVector angles;
};

struct IdealLayer {
    std::uint32_t q = 2;
    std::vector<std::uint32_t> ks;  // one phase index per basis string
};

using Layer = std::variant<HpsLayer, IdealLayer>;

struct LayeredUnitarySpec {
    std::size_t n = 1;
    std::uint32_t q = 2;
    std::vector<Layer> layers;
};

inline std::size_t default_layer_terms(std::size_t n) {
    std::size_t lg = 0;
    while ((1ull << lg) < n) ++lg;
    return n + lg;  // m >= n + log2(n), rounded up
}

// Independent uniform architectures and angles per layer; m = 0 selects
// the default n + ceil(log2 n).
LayeredUnitarySpec sample_layered(std::size_t n, std::size_t m, std::uint32_t q,
                                  std::size_t layers, Rng& rng);
// Fresh uniform phase per basis string per layer; q = 0 selects 2^n.
LayeredUnitarySpec sample_ideal_layered(std::size_t n, std::uint32_t q, std::size_t layers,
                                        Rng& rng);

// Applies each layer in sequence: diagonal phases, then the Hadamard layer.
Statevector apply_layered(const LayeredUnitarySpec& spec, const Statevector& state);

// Estimate of || E_U[U |0^n><0^n| U^dag] - I/2^n ||_1 by averaging sampled
// conjugations; n <= 6.
MomentReport first_moment_distance(std::size_t n, std::size_t m, std::uint32_t q,
                                   std::size_t layers, std::uint64_t samples, Rng& rng);
// Exact counterpart via the entrywise single-layer channel; used as a
// deterministic cross-check of the sampled estimate.
double first_moment_distance_exact(std::size_t n, std::size_t m, std::uint32_t q,
                                   std::size_t layers);

// Monte-Carlo E |Tr(U^dag V)|^(2t) over independent spec pairs; the Haar
// reference values are 1 (t = 1) and 2 (t = 2).
MomentReport unitary_frame_potential(std::size_t n, std::size_t m, std::uint32_t q,
                                     std::size_t layers, std::size_t t, std::uint64_t samples,
                                     Rng& rng);

// Tr(U^dag V) by applying both specs to every basis state.
cplx layered_trace_inner(const LayeredUnitarySpec& u, const LayeredUnitarySpec& v);

}  // namespace hps
