#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hps/state.hpp"

namespace hps {

// RZ(target, k) realizes exp(i * pi * k / q * Z) on one qubit, so an
// instance angle index k_inst (theta = 2*pi*k_inst/q) compiles to
// k = 2*k_inst mod 2q.
struct Gate {
    enum class Kind { H, RZ, CNOT };
    Kind kind;
    std::uint32_t a = 0;  // qubit (H, RZ) or control (CNOT)
    std::uint32_t b = 0;  // target (CNOT)
    std::uint32_t k = 0;  // rotation index mod 2q (RZ)
};

struct Circuit {
    std::size_t n = 0;
    std::uint32_t q = 1;
    std::vector<Gate> gates;
    std::size_t blocks = 0;
    // Zero architecture rows act as global phases exp(i*pi*k/q); the gate
    // set cannot realize those, so they are carried here exactly.
    std::uint32_t global_phase_k = 0;
};

struct GateCounts {
    std::size_t h = 0;
    std::size_t rz = 0;
    std::size_t cnot = 0;
    std::size_t blocks = 0;
};

// CNOT sequence implementing x -> R*x by Gaussian elimination;
// at most n^2 + O(n) gates. Throws SingularMatrix if R is not invertible.
std::vector<Gate> cnot_synthesis(const BitMatrix& r);

// Hadamard layer, then one block of single-qubit rotations plus a CNOT
// subcircuit per full-rank chunk of the architecture. Simulating the
// result reproduces build_statevector(inst) exactly (global phase
// included, via global_phase_k).
Circuit compile(const HpsInstance& inst);

Statevector simulate(const Circuit& c, std::size_t cap = kDefaultQubitCap);
Statevector simulate(const Circuit& c, const Statevector& input);

GateCounts gate_counts(const Circuit& c);

// One gate per line: "H q", "RZ q k/q", "CNOT c t"; a single header
// comment carries n, q, blocks and the global phase.
std::string circuit_to_text(const Circuit& c);
Circuit circuit_from_text(const std::string& text);

}  // namespace hps
