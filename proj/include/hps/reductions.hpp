#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hps/state.hpp"

namespace hps {

struct ArchRerandomization {
    HpsInstance instance;  // arch = A*R, angles unchanged
    BitMatrix r;           // the sampled GL(n, Z2) secret
};

// Scrambles the architecture with a uniform R in GL(n, Z2);
// U_R|phi_old> = |phi_new>. Pass forced_r to pin R (test hook).
ArchRerandomization rerandomize_architecture(const HpsInstance& inst, Rng& rng,
                                             const std::optional<BitMatrix>& forced_r = {});

struct AngleRerandomization {
    HpsInstance instance;  // angles one-time-padded mod q
    AngleVector pad;
};

AngleRerandomization rerandomize_angles(const HpsInstance& inst, Rng& rng,
                                        const std::optional<AngleVector>& forced_pad = {});

struct EmbeddingSpec {
    std::size_t extra_rows = 0;  // k
    std::size_t extra_cols = 0;  // l (ancilla qubits)
    HpsInstance base;
};

struct HiddenEmbedding {
    BitMatrix m;                       // Pi * (A 0; B C) * R, (m+k) x (n+l)
    std::vector<std::size_t> pi;       // row permutation: output row i = input row pi[i]
    BitMatrix r;                       // GL(n+l, Z2)
    AngleVector extra_angles;          // phi, length k
    HpsInstance instance;              // arch m, angles = Pi applied to (theta, phi)
};

// Embeds the base instance into a larger hidden ensemble; the embedded
// state equals U_R applied to exp(i sum phi_j ...) (|phi_base> (x) |+^l>).
// Test hooks pin the sampled secrets.
HiddenEmbedding hidden_ensemble_embed(const EmbeddingSpec& spec, Rng& rng,
                                      const std::optional<std::vector<std::size_t>>& forced_pi = {},
                                      const std::optional<BitMatrix>& forced_r = {},
                                      const std::optional<BitMatrix>& forced_bc = {},
                                      const std::optional<AngleVector>& forced_phi = {});

std::vector<std::size_t> sample_permutation(std::size_t size, Rng& rng);

}  // namespace hps
