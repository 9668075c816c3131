#include "hps/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hps/errors.hpp"

namespace hps {

namespace {

void check_gate(const Gate& g, std::size_t n) {
    switch (g.kind) {
        case Gate::Kind::H:
        case Gate::Kind::RZ:
            if (g.a >= n) throw DimensionMismatch("gate qubit out of range");
            break;
        case Gate::Kind::CNOT:
            if (g.a >= n || g.b >= n) throw DimensionMismatch("gate qubit out of range");
            if (g.a == g.b) throw DimensionMismatch("CNOT control equals target");
            break;
    }
}

void apply_h(Statevector& psi, std::uint32_t qubit) {
    const std::uint64_t bit = qubit_bit(qubit, psi.n);
    const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    for (std::uint64_t x = 0; x < psi.dim(); ++x) {
        if (x & bit) continue;
        const cplx u = psi.amps[x], v = psi.amps[x | bit];
        psi.amps[x] = (u + v) * inv_sqrt2;
        psi.amps[x | bit] = (u - v) * inv_sqrt2;
    }
}

void apply_rz(Statevector& psi, std::uint32_t qubit, std::uint32_t k, std::uint32_t q) {
    const std::uint64_t bit = qubit_bit(qubit, psi.n);
    const double theta = std::numbers::pi * static_cast<double>(k) / q;
    const cplx plus = std::polar(1.0, theta);
    const cplx minus = std::polar(1.0, -theta);
    for (std::uint64_t x = 0; x < psi.dim(); ++x) psi.amps[x] *= (x & bit) ? minus : plus;
}

void apply_cnot(Statevector& psi, std::uint32_t control, std::uint32_t target) {
    const std::uint64_t cbit = qubit_bit(control, psi.n);
    const std::uint64_t tbit = qubit_bit(target, psi.n);
    for (std::uint64_t x = 0; x < psi.dim(); ++x) {
        if ((x & cbit) && !(x & tbit)) std::swap(psi.amps[x], psi.amps[x | tbit]);
    }
}

}  // namespace

std::vector<Gate> cnot_synthesis(const BitMatrix& r) {
    const std::size_t n = r.rows();
    if (r.cols() != n) throw SingularMatrix("cnot_synthesis: matrix not square");
    BitMatrix work = r;
    // Row ops reducing R to I; op (t += c) is left-multiplication by
    // I + E_tc, so R factors as the recorded ops in reverse.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ops;  // (target, control)
    for (std::size_t col = 0; col < n; ++col) {
        if (!work.get(col, col)) {
            std::size_t src = col + 1;
            while (src < n && !work.get(src, col)) ++src;
            if (src == n) throw SingularMatrix("cnot_synthesis: matrix singular");
            work.row_xor(col, src);
            ops.emplace_back(col, src);
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row != col && work.get(row, col)) {
                work.row_xor(row, col);
                ops.emplace_back(row, col);
            }
        }
    }
    std::vector<Gate> gates;
    gates.reserve(ops.size());
    for (auto it = ops.rbegin(); it != ops.rend(); ++it)
        gates.push_back(Gate{Gate::Kind::CNOT, it->second, it->first, 0});
    return gates;
}

Circuit compile(const HpsInstance& inst) {
    const std::size_t n = inst.n();
    const std::uint32_t q = inst.q();
    Circuit c;
    c.n = n;
    c.q = q;
    for (std::size_t j = 0; j < n; ++j)
        c.gates.push_back(Gate{Gate::Kind::H, static_cast<std::uint32_t>(j), 0, 0});

    // Greedy consecutive blocks of linearly independent nonzero rows;
    // zero rows only shift the global phase.
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> current;
    for (std::size_t r = 0; r < inst.m(); ++r) {
        if (inst.arch.row_is_zero(r)) {
            c.global_phase_k = (c.global_phase_k + 2 * inst.angles.ks[r]) % (2 * q);
            continue;
        }
        std::vector<std::size_t> trial = current;
        trial.push_back(r);
        BitMatrix sub(trial.size(), n);
        for (std::size_t i = 0; i < trial.size(); ++i)
            for (std::size_t col = 0; col < n; ++col)
                if (inst.arch.get(trial[i], col)) sub.set(i, col, true);
        if (rank(sub) == trial.size()) {
            current = std::move(trial);
        } else {
            blocks.push_back(std::move(current));
            current = {r};
        }
    }
    if (!current.empty()) blocks.push_back(std::move(current));
    c.blocks = blocks.size();
    if (blocks.empty()) return c;

    // Completed block matrices W_b (block rows first, arbitrary fill to
    // full rank). The CNOT subcircuits M_b must satisfy
    // (M_l ... M_b)^-1 = W_b, so M_l = W_l^-1 and M_b = W_{b+1} W_b^-1.
    const std::size_t l = blocks.size();
    std::vector<BitMatrix> w(l);
    for (std::size_t b = 0; b < l; ++b) {
        BitMatrix sub(blocks[b].size(), n);
        for (std::size_t i = 0; i < blocks[b].size(); ++i)
            for (std::size_t col = 0; col < n; ++col)
                if (inst.arch.get(blocks[b][i], col)) sub.set(i, col, true);
        w[b] = complete_to_basis(sub);
    }
    for (std::size_t b = 0; b < l; ++b) {
        for (std::size_t i = 0; i < blocks[b].size(); ++i) {
            const std::uint32_t k2 = (2 * inst.angles.ks[blocks[b][i]]) % (2 * q);
            c.gates.push_back(Gate{Gate::Kind::RZ, static_cast<std::uint32_t>(i), 0, k2});
        }
        const BitMatrix m_b = (b + 1 < l) ? matmul(w[b + 1], invert(w[b])) : invert(w[b]);
        const std::vector<Gate> cnots = cnot_synthesis(m_b);
        c.gates.insert(c.gates.end(), cnots.begin(), cnots.end());
    }
    return c;
}

Statevector simulate(const Circuit& c, std::size_t cap) {
    return simulate(c, zero_state(c.n, cap));
}

Statevector simulate(const Circuit& c, const Statevector& input) {
    if (input.n != c.n) throw DimensionMismatch("simulate: qubit counts differ");
    Statevector psi = input;
    for (const Gate& g : c.gates) {
        check_gate(g, c.n);
        switch (g.kind) {
            case Gate::Kind::H: apply_h(psi, g.a); break;
            case Gate::Kind::RZ: apply_rz(psi, g.a, g.k, c.q); break;
            case Gate::Kind::CNOT: apply_cnot(psi, g.a, g.b); break;
        }
    }
    if (c.global_phase_k != 0) {
        const cplx f = std::polar(1.0, std::numbers::pi * c.global_phase_k / c.q);
        for (auto& a : psi.amps) a *= f;
    }
    return psi;
}

GateCounts gate_counts(const Circuit& c) {
    GateCounts counts;
    counts.blocks = c.blocks;
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case Gate::Kind::H: ++counts.h; break;
            case Gate::Kind::RZ: ++counts.rz; break;
            case Gate::Kind::CNOT: ++counts.cnot; break;
        }
    }
    return counts;
}

std::string circuit_to_text(const Circuit& c) {
    std::ostringstream out;
    out << "# hpslab circuit v1 n=" << c.n << " q=" << c.q << " blocks=" << c.blocks
        << " gphase=" << c.global_phase_k << "\n";
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case Gate::Kind::H: out << "H " << g.a << "\n"; break;
            case Gate::Kind::RZ: out << "RZ " << g.a << " " << g.k << "/" << c.q << "\n"; break;
            case Gate::Kind::CNOT: out << "CNOT " << g.a << " " << g.b << "\n"; break;
        }
    }
    return out.str();
}

Circuit circuit_from_text(const std::string& text) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream h(line);
            std::string tok;
            while (h >> tok) {
                if (tok.rfind("n=", 0) == 0) c.n = std::stoul(tok.substr(2));
                if (tok.rfind("q=", 0) == 0) c.q = std::stoul(tok.substr(2));
                if (tok.rfind("blocks=", 0) == 0) c.blocks = std::stoul(tok.substr(7));
                if (tok.rfind("gphase=", 0) == 0) c.global_phase_k = std::stoul(tok.substr(7));
            }
            header_seen = true;
            continue;
        }
        if (!header_seen) throw Error("circuit text: missing header line");
        std::istringstream g(line);
        std::string kind;
        g >> kind;
        if (kind == "H") {
            Gate gate{Gate::Kind::H, 0, 0, 0};
            g >> gate.a;
            c.gates.push_back(gate);
        } else if (kind == "RZ") {
            Gate gate{Gate::Kind::RZ, 0, 0, 0};
            std::string frac;
            g >> gate.a >> frac;
            const auto slash = frac.find('/');
            if (slash == std::string::npos) throw Error("circuit text: bad RZ fraction");
            gate.k = std::stoul(frac.substr(0, slash));
            c.gates.push_back(gate);
        } else if (kind == "CNOT") {
            Gate gate{Gate::Kind::CNOT, 0, 0, 0};
            g >> gate.a >> gate.b;
            c.gates.push_back(gate);
        } else {
            throw Error("circuit text: unknown gate '" + kind + "'");
        }
    }
    return c;
}

}  // namespace hps
