#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hps/state.hpp"

namespace hps {

// Source of fresh state copies, as handed to a learner.
using StateOracle = std::function<Statevector()>;

// Recovers the angles of an instance with public full-rank architecture
// (m <= n): applies the CNOT circuit splitting the state into a product,
// then reads each angle mod pi from per-qubit X- and Y-basis statistics
// and snaps it to the Theta_q grid. shots_per_angle = 0 selects the
// infinite-shot mode (exact Born probabilities, deterministic).
AngleVector learn_angles_public_arch(const BitMatrix& arch, std::uint32_t q,
                                     const StateOracle& oracle, std::uint64_t shots_per_angle,
                                     Rng& rng);

// Exhaustive maximum-fidelity hypothesis selection over the full key
// class; guard: #architectures * q^m <= 2^22. Ties break towards the
// earlier candidate in (row-lexicographic arch, odometer angles) order.
struct BruteForceResult {
    HpsInstance best;
    double fidelity = 0.0;
    std::uint64_t candidates = 0;
};

BruteForceResult brute_force_hypothesis(const Statevector& truth, std::size_t n, std::size_t m,
                                        std::uint32_t q, ArchMode arch_mode = ArchMode::uniform);

// A distinguishing statistic consumes t copies and outputs one bit.
using Statistic = std::function<bool(std::span<const Statevector>, Rng&)>;

struct AdvantageEstimate {
    double advantage = 0.0;
    double stderr = 0.0;
    double p_hps = 0.0;
    double p_haar = 0.0;
    std::uint64_t trials = 0;
};

// |P(1 | HPS copies) - P(1 | Haar copies)| with binomial standard error.
AdvantageEstimate distinguisher_harness(const EnsembleSpec& ensemble, std::size_t t_copies,
                                        const Statistic& statistic, std::uint64_t trials,
                                        Rng& rng);

// Bundled statistics: swap test between the first two copies; collision
// of full X-basis outcomes on two copies; all-zeros X outcome on one copy.
Statistic swap_test_statistic();
Statistic x_collision_statistic();
Statistic x_all_zeros_statistic();

}  // namespace hps
