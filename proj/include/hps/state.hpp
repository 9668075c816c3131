#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hps/bitmatrix.hpp"
#include "hps/rng.hpp"

namespace hps {

using cplx = std::complex<double>;

// Statevectors above this many qubits are refused (16 MiB of amplitudes).
inline constexpr std::size_t kDefaultQubitCap = 20;
// inner_product streams phases and never materializes the vector.
inline constexpr std::size_t kInnerProductQubitCap = 24;

// Discretized angles theta_i = 2*pi*k_i/q, stored exactly as integers mod q.
struct AngleVector {
    std::uint32_t q = 1;
    std::vector<std::uint32_t> ks;

    std::size_t size() const { return ks.size(); }
    AngleVector plus(const AngleVector& other) const;
    AngleVector negated() const;
    bool operator==(const AngleVector& other) const = default;
};

AngleVector zero_angles(std::uint32_t q, std::size_t m);
AngleVector sample_angles(std::uint32_t q, std::size_t m, Rng& rng);

// The secret key (A, k-vector): an m x n architecture plus m angle indices.
struct HpsInstance {
    BitMatrix arch;       // m x n
    AngleVector angles;   // length m, modulus q

    std::size_t n() const { return arch.cols(); }
    std::size_t m() const { return arch.rows(); }
    std::uint32_t q() const { return angles.q; }
    bool operator==(const HpsInstance& other) const;
};

HpsInstance make_instance(BitMatrix arch, AngleVector angles);

// Merges duplicate architecture rows (angles add mod q), drops rows that
// became inert (k = 0) and all-zero rows (global phase), sorts rows.
// Optional normalizer only; Ver never needs it.
HpsInstance canonical_key(const HpsInstance& inst);

struct Statevector {
    std::size_t n = 0;
    std::vector<cplx> amps;

    std::size_t dim() const { return amps.size(); }
    double norm() const;
};

Statevector zero_state(std::size_t n, std::size_t cap = kDefaultQubitCap);
Statevector plus_state(std::size_t n, std::size_t cap = kDefaultQubitCap);

// Amplitude indices put qubit 0 at the most significant bit:
// index(x) = sum_j x_j * 2^(n-1-j).
inline std::uint64_t qubit_bit(std::size_t qubit, std::size_t n) {
    return 1ull << (n - 1 - qubit);
}

// Architecture row r as an index-space mask (for parity tests against
// amplitude indices).
std::uint64_t row_index_mask(const BitMatrix& arch, std::size_t r);

// Total phase of basis state x as an integer s in [0, 2q),
// s = sum_i k_i * (-1)^(<A_i, x>) mod 2q; the amplitude factor is
// exp(2*pi*i*s/q). Exact integer arithmetic throughout.
std::uint32_t phase_at(const HpsInstance& inst, std::uint64_t x_index);
std::uint32_t phase_at(const HpsInstance& inst, const std::vector<std::uint8_t>& x);

// All 2^n phase integers mod 2q at once via a Walsh-Hadamard accumulation,
// O(2^n * n + m) instead of O(2^n * m).
std::vector<std::uint32_t> phase_table(const HpsInstance& inst);

Statevector build_statevector(const HpsInstance& inst, std::size_t cap = kDefaultQubitCap);

// <a|b> by direct 2^n summation of exact phase differences.
cplx inner_product(const HpsInstance& a, const HpsInstance& b);
cplx inner_product(const Statevector& a, const Statevector& b);

struct VerifyResult {
    bool accept = false;
    double fidelity = 0.0;
};

// Exact-match semantics: accept iff |<claim|truth>|^2 >= 1 - 1e-9.
VerifyResult fidelity_verify(const HpsInstance& claim, const HpsInstance& truth);
// Protocol-faithful mode: accept with probability equal to the fidelity.
VerifyResult fidelity_verify_sampled(const HpsInstance& claim, const HpsInstance& truth,
                                     Rng& rng);

Statevector apply_diagonal(const Statevector& state, const BitMatrix& arch,
                           const AngleVector& angles);
// amps[y] *= (-1)^(<x, y>)
Statevector apply_pauli_z_mask(const Statevector& state, std::uint64_t x_index);
// Basis relabeling |x> -> |R^-1 x|: out[y] = in[R*y]. R must be invertible.
Statevector apply_linear_permutation(const Statevector& state, const BitMatrix& r);

Statevector apply_hadamard_layer(const Statevector& state);
// Rotate qubit j so that the requested basis becomes computational.
enum class Basis { computational, x, y };
Statevector rotate_to_basis(const Statevector& state, Basis basis);

std::map<std::uint64_t, std::uint64_t> measure(const Statevector& state, Basis basis,
                                               Rng& rng, std::uint64_t shots);
std::uint64_t sample_outcome(const Statevector& state, Rng& rng);

enum class ArchMode { uniform, full_rank, fixed };
enum class AngleMode { uniform, fixed };

struct EnsembleSpec {
    std::size_t n = 1;
    std::size_t m = 1;
    std::uint32_t q = 2;
    ArchMode arch_mode = ArchMode::uniform;
    AngleMode angle_mode = AngleMode::uniform;
    std::optional<BitMatrix> fixed_arch;
    std::optional<AngleVector> fixed_angles;

    void validate() const;
};

HpsInstance sample_instance(const EnsembleSpec& spec, Rng& rng);

Statevector haar_random_state(std::size_t n, Rng& rng, std::size_t cap = kDefaultQubitCap);

}  // namespace hps
