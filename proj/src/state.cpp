#include "hps/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "hps/errors.hpp"
#include "hps/parallel.hpp"

namespace hps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kBlock = 1u << 12;

void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap) throw TooManyQubits("qubit count exceeds cap");
}

// e^(2*pi*i*j/q) for j in [0, q)
std::vector<cplx> phase_units(std::uint32_t q) {
    std::vector<cplx> u(q);
    for (std::uint32_t j = 0; j < q; ++j)
        u[j] = std::polar(1.0, kTwoPi * static_cast<double>(j) / q);
    return u;
}

}  // namespace

AngleVector AngleVector::plus(const AngleVector& other) const {
    if (q != other.q || ks.size() != other.ks.size())
        throw DimensionMismatch("angle vectors incompatible");
    AngleVector out{q, ks};
    for (std::size_t i = 0; i < ks.size(); ++i) out.ks[i] = (ks[i] + other.ks[i]) % q;
    return out;
}

AngleVector AngleVector::negated() const {
    AngleVector out{q, ks};
    for (auto& k : out.ks) k = (q - k) % q;
    return out;
}

AngleVector zero_angles(std::uint32_t q, std::size_t m) {
    if (q < 1) throw InvalidQ("q must be >= 1");
    return AngleVector{q, std::vector<std::uint32_t>(m, 0)};
}

AngleVector sample_angles(std::uint32_t q, std::size_t m, Rng& rng) {
    AngleVector out = zero_angles(q, m);
    for (auto& k : out.ks) k = static_cast<std::uint32_t>(rng.next_below(q));
    return out;
}

bool HpsInstance::operator==(const HpsInstance& other) const {
    return arch == other.arch && angles == other.angles;
}

HpsInstance make_instance(BitMatrix arch, AngleVector angles) {
    if (arch.rows() != angles.ks.size())
        throw DimensionMismatch("angle count must equal architecture rows");
    for (auto k : angles.ks)
        if (k >= angles.q) throw InvalidQ("angle index out of [0, q)");
    return HpsInstance{std::move(arch), std::move(angles)};
}

HpsInstance canonical_key(const HpsInstance& inst) {
    std::map<std::string, std::uint64_t> merged;
    for (std::size_t r = 0; r < inst.m(); ++r) merged[inst.arch.row_string(r)] += inst.angles.ks[r];
    std::vector<std::string> rows;
    std::vector<std::uint32_t> ks;
    const std::string zero_row(inst.n(), '0');
    for (const auto& [row, ksum] : merged) {
        const std::uint32_t k = static_cast<std::uint32_t>(ksum % inst.q());
        if (k == 0 || row == zero_row) continue;
        rows.push_back(row);
        ks.push_back(k);
    }
    BitMatrix arch = rows.empty() ? BitMatrix(0, inst.n()) : BitMatrix::from_rows(rows);
    return HpsInstance{std::move(arch), AngleVector{inst.q(), std::move(ks)}};
}

double Statevector::norm() const {
    double s = 0.0;
    for (const cplx& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

Statevector zero_state(std::size_t n, std::size_t cap) {
    check_cap(n, cap);
    Statevector psi{n, std::vector<cplx>(1ull << n, cplx(0.0, 0.0))};
    psi.amps[0] = 1.0;
    return psi;
}

Statevector plus_state(std::size_t n, std::size_t cap) {
    check_cap(n, cap);
    const double a = std::pow(2.0, -0.5 * static_cast<double>(n));
    return Statevector{n, std::vector<cplx>(1ull << n, cplx(a, 0.0))};
}

std::uint64_t row_index_mask(const BitMatrix& arch, std::size_t r) {
    const std::size_t n = arch.cols();
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (arch.get(r, j)) mask |= qubit_bit(j, n);
    return mask;
}

std::uint32_t phase_at(const HpsInstance& inst, std::uint64_t x_index) {
    const std::uint32_t q = inst.q();
    std::int64_t s = 0;
    for (std::size_t r = 0; r < inst.m(); ++r) {
        const std::uint64_t mask = row_index_mask(inst.arch, r);
        const bool odd = std::popcount(mask & x_index) & 1u;
        s += odd ? -static_cast<std::int64_t>(inst.angles.ks[r]) : inst.angles.ks[r];
    }
    const std::int64_t mod = 2ll * q;
    return static_cast<std::uint32_t>(((s % mod) + mod) % mod);
}

std::uint32_t phase_at(const HpsInstance& inst, const std::vector<std::uint8_t>& x) {
    if (x.size() != inst.n()) throw DimensionMismatch("phase_at: |x| != n");
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j]) idx |= qubit_bit(j, inst.n());
    return phase_at(inst, idx);
}

std::vector<std::uint32_t> phase_table(const HpsInstance& inst) {
    const std::size_t n = inst.n();
    if (n > kInnerProductQubitCap) throw TooManyQubits("phase_table cap exceeded");
    const std::uint64_t dim = 1ull << n;
    // Character-sum accumulation: each row contributes k_r * (-1)^<a_r, x>,
    // so collecting k_r at index a_r and Walsh-transforming gives all sums.
    std::vector<std::int64_t> acc(dim, 0);
    for (std::size_t r = 0; r < inst.m(); ++r)
        acc[row_index_mask(inst.arch, r)] += inst.angles.ks[r];
    for (std::uint64_t len = 1; len < dim; len <<= 1) {
        for (std::uint64_t i = 0; i < dim; i += (len << 1)) {
            for (std::uint64_t j = i; j < i + len; ++j) {
                const std::int64_t u = acc[j], v = acc[j + len];
                acc[j] = u + v;
                acc[j + len] = u - v;
            }
        }
    }
    const std::int64_t mod = 2ll * inst.q();
    std::vector<std::uint32_t> out(dim);
    for (std::uint64_t x = 0; x < dim; ++x)
        out[x] = static_cast<std::uint32_t>(((acc[x] % mod) + mod) % mod);
    return out;
}

Statevector build_statevector(const HpsInstance& inst, std::size_t cap) {
    const std::size_t n = inst.n();
    check_cap(n, cap);
    const std::uint32_t q = inst.q();
    const std::vector<std::uint32_t> phases = phase_table(inst);
    const std::vector<cplx> units = phase_units(q);
    const double a = std::pow(2.0, -0.5 * static_cast<double>(n));
    Statevector psi{n, std::vector<cplx>(1ull << n)};
    parallel_blocks(psi.dim(), kBlock, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t x = lo; x < hi; ++x) psi.amps[x] = a * units[phases[x] % q];
    });
    return psi;
}

cplx inner_product(const HpsInstance& a, const HpsInstance& b) {
    if (a.n() != b.n()) throw DimensionMismatch("inner_product: qubit counts differ");
    const std::size_t n = a.n();
    if (n > kInnerProductQubitCap) throw TooManyQubits("inner_product cap exceeded");
    // <phi_a|phi_b> = 2^-n sum_x e^(2 pi i (s_b(x) - s_a(x)) / q) with exact
    // integer phases; the only float work is the accumulation.
    if (a.q() != b.q()) throw DimensionMismatch("inner_product: moduli differ");
    const std::uint32_t q = a.q();
    const std::vector<std::uint32_t> sa = phase_table(a);
    const std::vector<std::uint32_t> sb = phase_table(b);
    const std::vector<cplx> units = phase_units(q);
    const std::uint64_t dim = 1ull << n;
    const cplx total = block_sum<cplx>(dim, kBlock, [&](std::uint64_t x) {
        return units[((sb[x] + 2 * q) - sa[x]) % q];
    });
    return total / static_cast<double>(dim);
}

cplx inner_product(const Statevector& a, const Statevector& b) {
    if (a.n != b.n) throw DimensionMismatch("inner_product: qubit counts differ");
    return block_sum<cplx>(a.dim(), kBlock,
                           [&](std::uint64_t x) { return std::conj(a.amps[x]) * b.amps[x]; });
}

VerifyResult fidelity_verify(const HpsInstance& claim, const HpsInstance& truth) {
    const double f = std::norm(inner_product(claim, truth));
    return VerifyResult{f >= 1.0 - 1e-9, f};
}

VerifyResult fidelity_verify_sampled(const HpsInstance& claim, const HpsInstance& truth,
                                     Rng& rng) {
    const double f = std::norm(inner_product(claim, truth));
    return VerifyResult{rng.next_double() < f, f};
}

Statevector apply_diagonal(const Statevector& state, const BitMatrix& arch,
                           const AngleVector& angles) {
    if (arch.cols() != state.n) throw DimensionMismatch("apply_diagonal: qubit counts differ");
    const HpsInstance d = make_instance(arch, angles);
    const std::vector<std::uint32_t> phases = phase_table(d);
    const std::vector<cplx> units = phase_units(angles.q);
    Statevector out = state;
    parallel_blocks(out.dim(), kBlock, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t x = lo; x < hi; ++x) out.amps[x] *= units[phases[x] % angles.q];
    });
    return out;
}

Statevector apply_pauli_z_mask(const Statevector& state, std::uint64_t x_index) {
    if (x_index >> state.n) throw DimensionMismatch("apply_pauli_z_mask: mask out of range");
    Statevector out = state;
    parallel_blocks(out.dim(), kBlock, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t y = lo; y < hi; ++y)
            if (std::popcount(y & x_index) & 1u) out.amps[y] = -out.amps[y];
    });
    return out;
}

Statevector apply_linear_permutation(const Statevector& state, const BitMatrix& r) {
    const std::size_t n = state.n;
    if (r.rows() != n || r.cols() != n)
        throw DimensionMismatch("apply_linear_permutation: shape mismatch");
    if (rank(r) != n) throw SingularMatrix("apply_linear_permutation: R not invertible");
    // out[y] = in[R*y]; rows act on index-space masks.
    std::vector<std::uint64_t> row_masks(n);
    for (std::size_t i = 0; i < n; ++i) row_masks[i] = row_index_mask(r, i);
    Statevector out{n, std::vector<cplx>(state.dim())};
    parallel_blocks(out.dim(), kBlock, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t y = lo; y < hi; ++y) {
            std::uint64_t ry = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (std::popcount(row_masks[i] & y) & 1u) ry |= qubit_bit(i, n);
            out.amps[y] = state.amps[ry];
        }
    });
    return out;
}

Statevector apply_hadamard_layer(const Statevector& state) {
    Statevector out = state;
    const std::uint64_t dim = out.dim();
    const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    for (std::uint64_t len = 1; len < dim; len <<= 1) {
        for (std::uint64_t i = 0; i < dim; i += (len << 1)) {
            for (std::uint64_t j = i; j < i + len; ++j) {
                const cplx u = out.amps[j], v = out.amps[j + len];
                out.amps[j] = (u + v) * inv_sqrt2;
                out.amps[j + len] = (u - v) * inv_sqrt2;
            }
        }
    }
    return out;
}

Statevector rotate_to_basis(const Statevector& state, Basis basis) {
    if (basis == Basis::computational) return state;
    Statevector out = state;
    if (basis == Basis::y) {
        // S^dag per qubit: amps[x] *= (-i)^(popcount of x)
        const cplx minus_i(0.0, -1.0);
        for (std::uint64_t x = 0; x < out.dim(); ++x) {
            cplx f(1.0, 0.0);
            for (int b = std::popcount(x) & 3; b > 0; --b) f *= minus_i;
            out.amps[x] *= f;
        }
    }
    return apply_hadamard_layer(out);
}

std::uint64_t sample_outcome(const Statevector& state, Rng& rng) {
    double r = rng.next_double();
    for (std::uint64_t x = 0; x + 1 < state.dim(); ++x) {
        r -= std::norm(state.amps[x]);
        if (r < 0.0) return x;
    }
    return state.dim() - 1;
}

std::map<std::uint64_t, std::uint64_t> measure(const Statevector& state, Basis basis,
                                               Rng& rng, std::uint64_t shots) {
    if (shots < 1) throw Error("measure: shots must be >= 1");
    const Statevector rotated = rotate_to_basis(state, basis);
    std::vector<double> cdf(rotated.dim());
    double acc = 0.0;
    for (std::uint64_t x = 0; x < rotated.dim(); ++x) {
        acc += std::norm(rotated.amps[x]);
        cdf[x] = acc;
    }
    std::map<std::uint64_t, std::uint64_t> hist;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double r = rng.next_double() * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
        const std::uint64_t x =
            it == cdf.end() ? rotated.dim() - 1 : static_cast<std::uint64_t>(it - cdf.begin());
        ++hist[x];
    }
    return hist;
}

void EnsembleSpec::validate() const {
    if (n < 1) throw Error("EnsembleSpec: n must be >= 1");
    if (q < 1) throw InvalidQ("EnsembleSpec: q must be >= 1");
    if (arch_mode == ArchMode::fixed) {
        if (!fixed_arch) throw Error("EnsembleSpec: fixed arch missing");
        if (fixed_arch->rows() != m || fixed_arch->cols() != n)
            throw DimensionMismatch("EnsembleSpec: fixed arch shape");
    }
    if (angle_mode == AngleMode::fixed) {
        if (!fixed_angles) throw Error("EnsembleSpec: fixed angles missing");
        if (fixed_angles->ks.size() != m || fixed_angles->q != q)
            throw DimensionMismatch("EnsembleSpec: fixed angles shape");
    }
}

HpsInstance sample_instance(const EnsembleSpec& spec, Rng& rng) {
    spec.validate();
    BitMatrix arch;
    switch (spec.arch_mode) {
        case ArchMode::uniform: arch = sample_uniform(spec.m, spec.n, rng); break;
        case ArchMode::full_rank: arch = sample_full_rank(spec.m, spec.n, rng); break;
        case ArchMode::fixed: arch = *spec.fixed_arch; break;
    }
    AngleVector angles = spec.angle_mode == AngleMode::uniform
                             ? sample_angles(spec.q, spec.m, rng)
                             : *spec.fixed_angles;
    return make_instance(std::move(arch), std::move(angles));
}

Statevector haar_random_state(std::size_t n, Rng& rng, std::size_t cap) {
    check_cap(n, cap);
    Statevector psi{n, std::vector<cplx>(1ull << n)};
    for (auto& a : psi.amps) a = cplx(rng.next_normal(), rng.next_normal());
    const double nrm = psi.norm();
    for (auto& a : psi.amps) a /= nrm;
    return psi;
}

}  // namespace hps
