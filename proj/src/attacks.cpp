#include "hps/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hps/errors.hpp"
#include "hps/parallel.hpp"

namespace hps {

namespace {

struct QubitStats {
    double p_x_plus = 0.0;
    double p_y_plus = 0.0;
};

// Exact Born probabilities of the +-outcomes on one qubit.
QubitStats exact_stats(const Statevector& psi, std::size_t qubit) {
    const std::uint64_t bit = qubit_bit(qubit, psi.n);
    QubitStats st;
    const cplx minus_i(0.0, -1.0);
    for (std::uint64_t x = 0; x < psi.dim(); ++x) {
        if (x & bit) continue;
        const cplx a0 = psi.amps[x], a1 = psi.amps[x | bit];
        st.p_x_plus += 0.5 * std::norm(a0 + a1);
        st.p_y_plus += 0.5 * std::norm(a0 + minus_i * a1);
    }
    return st;
}

std::uint32_t snap_to_grid_mod_pi(double theta_hat, std::uint32_t q) {
    // Candidates 2*pi*k/q compared modulo pi; smallest k wins ties.
    double best = 1e300;
    std::uint32_t best_k = 0;
    for (std::uint32_t k = 0; k < q; ++k) {
        const double grid = 2.0 * std::numbers::pi * k / q;
        double delta = std::fmod(grid - theta_hat, std::numbers::pi);
        if (delta < 0) delta += std::numbers::pi;
        const double dist = std::min(delta, std::numbers::pi - delta);
        if (dist < best - 1e-12) {
            best = dist;
            best_k = k;
        }
    }
    return best_k;
}

}  // namespace

AngleVector learn_angles_public_arch(const BitMatrix& arch, std::uint32_t q,
                                     const StateOracle& oracle, std::uint64_t shots_per_angle,
                                     Rng& rng) {
    const std::size_t m = arch.rows();
    const std::size_t n = arch.cols();
    if (m > n) throw TooManyTerms("learn_angles_public_arch: m > n");
    if (rank(arch) != m) throw RankDeficient("learn_angles_public_arch: architecture rank < m");

    // R with A*R = (I_m | 0): invert a basis completion of the rows of A.
    const BitMatrix r = invert(complete_to_basis(arch));

    std::vector<double> px(m, 0.0), py(m, 0.0);
    if (shots_per_angle == 0) {
        const Statevector product = apply_linear_permutation(oracle(), r);
        for (std::size_t j = 0; j < m; ++j) {
            const QubitStats st = exact_stats(product, j);
            px[j] = st.p_x_plus;
            py[j] = st.p_y_plus;
        }
    } else {
        std::vector<std::uint64_t> x_plus(m, 0), y_plus(m, 0);
        for (std::uint64_t shot = 0; shot < shots_per_angle; ++shot) {
            const Statevector copy_x =
                rotate_to_basis(apply_linear_permutation(oracle(), r), Basis::x);
            const std::uint64_t ox = sample_outcome(copy_x, rng);
            const Statevector copy_y =
                rotate_to_basis(apply_linear_permutation(oracle(), r), Basis::y);
            const std::uint64_t oy = sample_outcome(copy_y, rng);
            for (std::size_t j = 0; j < m; ++j) {
                if (!(ox & qubit_bit(j, n))) ++x_plus[j];
                if (!(oy & qubit_bit(j, n))) ++y_plus[j];
            }
        }
        for (std::size_t j = 0; j < m; ++j) {
            px[j] = static_cast<double>(x_plus[j]) / shots_per_angle;
            py[j] = static_cast<double>(y_plus[j]) / shots_per_angle;
        }
    }

    AngleVector out = zero_angles(q, m);
    for (std::size_t j = 0; j < m; ++j) {
        // P+x = cos^2 theta, P+y = (1 - sin 2theta)/2; both pi-periodic.
        const double cos2 = 2.0 * px[j] - 1.0;
        const double sin2 = 1.0 - 2.0 * py[j];
        const double theta_hat = 0.5 * std::atan2(sin2, cos2);
        out.ks[j] = snap_to_grid_mod_pi(theta_hat, q);
    }
    return out;
}

BruteForceResult brute_force_hypothesis(const Statevector& truth, std::size_t n, std::size_t m,
                                        std::uint32_t q, ArchMode arch_mode) {
    if (truth.n != n) throw DimensionMismatch("brute_force_hypothesis: truth size");
    if (arch_mode == ArchMode::fixed) throw Error("brute_force_hypothesis: fixed mode unsupported");
    const double log2_space = static_cast<double>(n) * static_cast<double>(m) +
                              static_cast<double>(m) * std::log2(static_cast<double>(q));
    if (log2_space > 22.0) throw TooLarge("brute_force_hypothesis: search space beyond 2^22");

    const std::uint64_t arch_count = 1ull << (n * m);
    std::uint64_t angle_count = 1;
    for (std::size_t i = 0; i < m; ++i) angle_count *= q;
    const std::uint64_t dim = 1ull << n;
    const double scale = std::pow(2.0, -0.5 * static_cast<double>(n));

    struct Best {
        double fidelity = -1.0;
        std::uint64_t arch_code = 0;
        std::vector<std::uint32_t> ks;
    };
    const std::uint64_t arch_block = 64;
    std::vector<Best> block_best((arch_count + arch_block - 1) / arch_block);
    std::vector<cplx> units(q);
    for (std::uint32_t j = 0; j < q; ++j)
        units[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / q);

    parallel_blocks(arch_count, arch_block, [&](std::uint64_t b, std::uint64_t lo,
                                                std::uint64_t hi) {
        Best best;
        std::vector<std::uint64_t> row_masks(m);
        std::vector<std::uint32_t> ks(m, 0);
        for (std::uint64_t code = lo; code < hi; ++code) {
            // Row-lexicographic: row 0 sits in the most significant bits.
            BitMatrix arch(m, n);
            for (std::size_t rr = 0; rr < m; ++rr)
                for (std::size_t cc = 0; cc < n; ++cc)
                    if ((code >> ((m - 1 - rr) * n + (n - 1 - cc))) & 1u)
                        arch.set(rr, cc, true);
            if (arch_mode == ArchMode::full_rank && rank(arch) != std::min(m, n)) continue;
            for (std::size_t rr = 0; rr < m; ++rr) row_masks[rr] = row_index_mask(arch, rr);
            std::fill(ks.begin(), ks.end(), 0);
            for (std::uint64_t a = 0; a < angle_count; ++a) {
                cplx overlap(0.0, 0.0);
                for (std::uint64_t x = 0; x < dim; ++x) {
                    std::int64_t s = 0;
                    for (std::size_t rr = 0; rr < m; ++rr)
                        s += (std::popcount(row_masks[rr] & x) & 1u)
                                 ? -static_cast<std::int64_t>(ks[rr])
                                 : ks[rr];
                    const std::uint32_t sm =
                        static_cast<std::uint32_t>(((s % q) + q) % q);
                    overlap += std::conj(units[sm]) * truth.amps[x];
                }
                const double fid = std::norm(overlap) * scale * scale;
                if (fid > best.fidelity + 1e-15) {
                    best.fidelity = fid;
                    best.arch_code = code;
                    best.ks = ks;
                }
                // odometer order: last angle index moves fastest
                for (std::size_t d = m; d > 0; --d) {
                    if (++ks[d - 1] < q) break;
                    ks[d - 1] = 0;
                }
            }
        }
        block_best[b] = std::move(best);
    });

    Best winner;
    for (const Best& cand : block_best) {
        if (cand.fidelity > winner.fidelity + 1e-15) winner = cand;
    }
    BitMatrix arch(m, n);
    for (std::size_t rr = 0; rr < m; ++rr)
        for (std::size_t cc = 0; cc < n; ++cc)
            if ((winner.arch_code >> ((m - 1 - rr) * n + (n - 1 - cc))) & 1u)
                arch.set(rr, cc, true);
    BruteForceResult result{make_instance(arch, AngleVector{q, winner.ks}), winner.fidelity,
                            arch_count * angle_count};
    return result;
}

AdvantageEstimate distinguisher_harness(const EnsembleSpec& ensemble, std::size_t t_copies,
                                        const Statistic& statistic, std::uint64_t trials,
                                        Rng& rng) {
    std::vector<std::uint8_t> hps_hits(trials, 0), haar_hits(trials, 0);
    parallel_blocks(trials, 16, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            Rng task = rng.fork(2 * i);
            const HpsInstance inst = sample_instance(ensemble, task);
            const Statevector phi = build_statevector(inst);
            std::vector<Statevector> copies(t_copies, phi);
            hps_hits[i] = statistic(copies, task) ? 1 : 0;

            Rng task2 = rng.fork(2 * i + 1);
            const Statevector psi = haar_random_state(ensemble.n, task2);
            std::vector<Statevector> haar_copies(t_copies, psi);
            haar_hits[i] = statistic(haar_copies, task2) ? 1 : 0;
        }
    });
    std::uint64_t c1 = 0, c2 = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        c1 += hps_hits[i];
        c2 += haar_hits[i];
    }
    AdvantageEstimate est;
    est.trials = trials;
    est.p_hps = static_cast<double>(c1) / trials;
    est.p_haar = static_cast<double>(c2) / trials;
    est.advantage = std::abs(est.p_hps - est.p_haar);
    est.stderr = std::sqrt(est.p_hps * (1.0 - est.p_hps) / trials +
                           est.p_haar * (1.0 - est.p_haar) / trials);
    return est;
}

Statistic swap_test_statistic() {
    return [](std::span<const Statevector> copies, Rng& rng) {
        if (copies.size() < 2) throw Error("swap test needs two copies");
        const double overlap = std::norm(inner_product(copies[0], copies[1]));
        return rng.next_double() < 0.5 * (1.0 + overlap);
    };
}

Statistic x_collision_statistic() {
    return [](std::span<const Statevector> copies, Rng& rng) {
        if (copies.size() < 2) throw Error("collision statistic needs two copies");
        return sample_outcome(rotate_to_basis(copies[0], Basis::x), rng) ==
               sample_outcome(rotate_to_basis(copies[1], Basis::x), rng);
    };
}

Statistic x_all_zeros_statistic() {
    return [](std::span<const Statevector> copies, Rng& rng) {
        if (copies.empty()) throw Error("statistic needs one copy");
        return sample_outcome(rotate_to_basis(copies[0], Basis::x), rng) == 0;
    };
}

}  // namespace hps
