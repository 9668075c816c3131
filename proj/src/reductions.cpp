#include "hps/reductions.hpp"

#include <numeric>

#include "hps/errors.hpp"

namespace hps {

ArchRerandomization rerandomize_architecture(const HpsInstance& inst, Rng& rng,
                                             const std::optional<BitMatrix>& forced_r) {
    BitMatrix r = forced_r ? *forced_r : sample_gl(inst.n(), rng);
    if (r.rows() != inst.n() || r.cols() != inst.n() || rank(r) != inst.n())
        throw SingularMatrix("rerandomize_architecture: R must be in GL(n)");
    HpsInstance out = make_instance(matmul(inst.arch, r), inst.angles);
    return ArchRerandomization{std::move(out), std::move(r)};
}

AngleRerandomization rerandomize_angles(const HpsInstance& inst, Rng& rng,
                                        const std::optional<AngleVector>& forced_pad) {
    AngleVector pad = forced_pad ? *forced_pad : sample_angles(inst.q(), inst.m(), rng);
    HpsInstance out = make_instance(inst.arch, inst.angles.plus(pad));
    return AngleRerandomization{std::move(out), std::move(pad)};
}

std::vector<std::size_t> sample_permutation(std::size_t size, Rng& rng) {
    std::vector<std::size_t> pi(size);
    std::iota(pi.begin(), pi.end(), 0);
    for (std::size_t i = size; i > 1; --i) {
        const std::size_t j = rng.next_below(i);
        std::swap(pi[i - 1], pi[j]);
    }
    return pi;
}

HiddenEmbedding hidden_ensemble_embed(const EmbeddingSpec& spec, Rng& rng,
                                      const std::optional<std::vector<std::size_t>>& forced_pi,
                                      const std::optional<BitMatrix>& forced_r,
                                      const std::optional<BitMatrix>& forced_bc,
                                      const std::optional<AngleVector>& forced_phi) {
    const std::size_t n = spec.base.n();
    const std::size_t m = spec.base.m();
    const std::size_t k = spec.extra_rows;
    const std::size_t l = spec.extra_cols;

    BitMatrix bc = forced_bc ? *forced_bc : sample_uniform(k, n + l, rng);
    if (bc.rows() != k || bc.cols() != n + l)
        throw DimensionMismatch("hidden_ensemble_embed: (B|C) shape");
    BitMatrix r = forced_r ? *forced_r : sample_gl(n + l, rng);
    if (rank(r) != n + l) throw SingularMatrix("hidden_ensemble_embed: R not invertible");
    std::vector<std::size_t> pi = forced_pi ? *forced_pi : sample_permutation(m + k, rng);
    if (pi.size() != m + k) throw DimensionMismatch("hidden_ensemble_embed: permutation size");
    AngleVector phi = forced_phi ? *forced_phi : sample_angles(spec.base.q(), k, rng);
    if (phi.ks.size() != k || phi.q != spec.base.q())
        throw DimensionMismatch("hidden_ensemble_embed: extra angles shape");

    // Stacked block matrix (A 0; B C), rows carry their angles (theta, phi).
    BitMatrix stacked(m + k, n + l);
    for (std::size_t row = 0; row < m; ++row)
        for (std::size_t col = 0; col < n; ++col)
            if (spec.base.arch.get(row, col)) stacked.set(row, col, true);
    for (std::size_t row = 0; row < k; ++row)
        for (std::size_t col = 0; col < n + l; ++col)
            if (bc.get(row, col)) stacked.set(m + row, col, true);

    std::vector<std::uint32_t> ks_concat = spec.base.angles.ks;
    ks_concat.insert(ks_concat.end(), phi.ks.begin(), phi.ks.end());

    const BitMatrix scrambled = matmul(stacked, r);
    BitMatrix permuted(m + k, n + l);
    std::vector<std::uint32_t> ks_out(m + k);
    for (std::size_t row = 0; row < m + k; ++row) {
        for (std::size_t col = 0; col < n + l; ++col)
            if (scrambled.get(pi[row], col)) permuted.set(row, col, true);
        ks_out[row] = ks_concat[pi[row]];
    }

    HpsInstance inst = make_instance(permuted, AngleVector{spec.base.q(), std::move(ks_out)});
    return HiddenEmbedding{permuted, std::move(pi), std::move(r), std::move(phi),
                           std::move(inst)};
}

}  // namespace hps
