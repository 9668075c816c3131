#include "hps/protocols.hpp"

#include "hps/errors.hpp"

namespace hps {

HpsInstance owsg_keygen(std::size_t n, std::size_t m, std::uint32_t q, Rng& rng) {
    EnsembleSpec spec;
    spec.n = n;
    spec.m = m;
    spec.q = q;
    return sample_instance(spec, rng);
}

Statevector owsg_stategen(const HpsInstance& key) { return build_statevector(key); }

namespace {

double state_fidelity(const HpsInstance& claimed_key, const Statevector& state) {
    const Statevector reference = build_statevector(claimed_key);
    return std::norm(inner_product(reference, state));
}

}  // namespace

VerifyResult owsg_verify(const HpsInstance& claimed_key, const Statevector& state) {
    const double f = state_fidelity(claimed_key, state);
    return VerifyResult{f >= 1.0 - 1e-9, f};
}

VerifyResult owsg_verify_sampled(const HpsInstance& claimed_key, const Statevector& state,
                                 Rng& rng) {
    const double f = state_fidelity(claimed_key, state);
    return VerifyResult{rng.next_double() < f, f};
}

Trapdoor qtf_gen_trap(std::size_t n, std::size_t m, std::uint32_t q, Rng& rng) {
    return Trapdoor{owsg_keygen(n, m, q, rng)};
}

Statevector qtf_gen_eval(const Trapdoor& td) { return build_statevector(td.td); }

CipherState qtf_eval(const Statevector& eval_state, std::uint64_t x_index, std::uint32_t q) {
    return CipherState{apply_pauli_z_mask(eval_state, x_index), eval_state.n, q};
}

std::uint64_t qtf_invert(const Trapdoor& td, const CipherState& cipher, Rng& rng) {
    if (cipher.state.n != td.td.n()) throw DimensionMismatch("qtf_invert: size mismatch");
    const Statevector undone =
        apply_diagonal(cipher.state, td.td.arch, td.td.angles.negated());
    const Statevector rotated = apply_hadamard_layer(undone);
    return sample_outcome(rotated, rng);
}

QuantumPublicKey::QuantumPublicKey(Statevector copy_template, std::size_t copies)
    : template_(std::move(copy_template)), remaining_(copies) {}

Statevector QuantumPublicKey::consume() {
    if (remaining_ == 0) throw PublicKeyExhausted("all public-key copies consumed");
    --remaining_;
    return template_;
}

PkeKeyPair pke_keygen(std::size_t n, std::size_t m, std::uint32_t q, std::size_t copies,
                      Rng& rng) {
    Trapdoor sk = qtf_gen_trap(n, m, q, rng);
    Statevector eval_state = qtf_gen_eval(sk);
    return PkeKeyPair{std::move(sk), QuantumPublicKey(std::move(eval_state), copies)};
}

CipherState pke_encrypt(QuantumPublicKey& pk, std::uint64_t message_index, std::size_t n,
                        std::uint32_t q) {
    const Statevector copy = pk.consume();
    if (copy.n != n) throw DimensionMismatch("pke_encrypt: message size mismatch");
    return qtf_eval(copy, message_index, q);
}

std::uint64_t pke_decrypt(const Trapdoor& sk, const CipherState& cipher, Rng& rng) {
    return qtf_invert(sk, cipher, rng);
}

}  // namespace hps
