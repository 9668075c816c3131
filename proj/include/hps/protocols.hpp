#pragma once

#include <cstdint>
#include <vector>

#include "hps/state.hpp"

namespace hps {

// --- One-way state generator (keyed phase-state family) ---

HpsInstance owsg_keygen(std::size_t n, std::size_t m, std::uint32_t q, Rng& rng);
Statevector owsg_stategen(const HpsInstance& key);
// Threshold mode: accept iff fidelity >= 1 - 1e-9.
VerifyResult owsg_verify(const HpsInstance& claimed_key, const Statevector& state);
// Protocol-faithful mode: projective measurement succeeds with
// probability equal to the fidelity.
VerifyResult owsg_verify_sampled(const HpsInstance& claimed_key, const Statevector& state,
                                 Rng& rng);

// --- Quantum trapdoor function ---

struct Trapdoor {
    HpsInstance td;  // the pair (theta, A)
};

struct CipherState {
    Statevector state;
    std::size_t n = 0;
    std::uint32_t q = 1;
};

Trapdoor qtf_gen_trap(std::size_t n, std::size_t m, std::uint32_t q, Rng& rng);
Statevector qtf_gen_eval(const Trapdoor& td);
// |psi_x> = Z^x |xi_td>
CipherState qtf_eval(const Statevector& eval_state, std::uint64_t x_index, std::uint32_t q);
// Applies H^n D^dag and measures; returns x with probability 1 when the
// trapdoor matches.
std::uint64_t qtf_invert(const Trapdoor& td, const CipherState& cipher, Rng& rng);

// --- Public-key encryption with quantum public keys ---

// Each public-key copy is one evaluation state; encryption consumes a copy.
class QuantumPublicKey {
public:
    QuantumPublicKey(Statevector copy_template, std::size_t copies);

    std::size_t remaining() const { return remaining_; }
    // Hands out the next unused copy; throws PublicKeyExhausted.
    Statevector consume();

private:
    Statevector template_;
    std::size_t remaining_;
};

struct PkeKeyPair {
    Trapdoor sk;
    QuantumPublicKey pk;
};

PkeKeyPair pke_keygen(std::size_t n, std::size_t m, std::uint32_t q, std::size_t copies,
                      Rng& rng);
CipherState pke_encrypt(QuantumPublicKey& pk, std::uint64_t message_index, std::size_t n,
                        std::uint32_t q);
std::uint64_t pke_decrypt(const Trapdoor& sk, const CipherState& cipher, Rng& rng);

}  // namespace hps
