#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "hps/state.hpp"

namespace hps {

// nullopt = continuous angles (theta uniform on [0, 2pi)); otherwise the
// q-fold discretization.
using AngleModulus = std::optional<std::uint32_t>;

// Pair of t-tuples of basis strings indexing the moment operator;
// equivalence under simultaneous sorting ("x ~ x'").
struct MomentIndex {
    std::size_t n = 1;
    std::vector<std::uint64_t> xs;
    std::vector<std::uint64_t> xs_prime;

    MomentIndex canonical() const;
    bool equivalent() const;  // xs ~ xs_prime
};

struct MomentReport {
    double value = 0.0;
    double stderr = 0.0;  // 0 for exact
    enum class Method { exact, monte_carlo } method = Method::exact;
    std::size_t n = 0;
    std::size_t m = 0;
    AngleModulus q;  // nullopt = continuous
    std::size_t t = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

// f^{x,x'}(a) = sum_j (-1)^<a,x_j> - (-1)^<a,x'_j>
std::int64_t moment_index_f(const MomentIndex& idx, std::uint64_t a);

// Single-term moment operator entry E_a E_theta e^(i theta f(a)):
// the fraction of a with f(a) = 0 (continuous) or f(a) = 0 mod q.
std::complex<double> moment_entry(const MomentIndex& idx, AngleModulus q);
// Diagonal-Haar reference: 1 if x ~ x', else 0.
std::complex<double> moment_entry_haar_diag(const MomentIndex& idx);

struct MomentEntryRecord {
    MomentIndex index;
    std::complex<double> value;
};

// All entries over canonical tuple pairs. Guarded by 2^(2nt+n) <= 2^30.
std::vector<MomentEntryRecord> moment_operator_diagonal(std::size_t n, AngleModulus q,
                                                        std::size_t t);

// Exact essential-norm gap of the single-term walk: the maximum over
// non-equivalent pairs of Pr_a[f = 0 (mod q)].
MomentReport spectral_gap(std::size_t n, std::size_t t, AngleModulus q);

// ceil(2t(2nt + ln(1/eps))); natural log closes the amplification chain.
std::size_t sufficient_m(std::size_t n, std::size_t t, double epsilon);
// (1 - 1/(2t))^m * 2^(2nt) <= eps at m = sufficient_m?
bool amplification_holds(std::size_t n, std::size_t t, double epsilon);

// t-th moment density of the HPS ensemble, exact: every entry of
// E(|phi><phi|)^(x t) equals 2^-nt times the single-term moment entry
// raised to the m-th power (terms are i.i.d.).
Eigen::MatrixXcd hps_state_moment(std::size_t n, std::size_t m, AngleModulus q, std::size_t t);
// Haar moment Pi_sym / binom(2^n + t - 1, t).
Eigen::MatrixXcd haar_state_moment(std::size_t n, std::size_t t);

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Exact one-norm distance between the ensemble's t-th moment density and
// the Haar moment. Guard: 2^(nt) <= 2^8.
MomentReport state_design_distance_exact(std::size_t n, std::size_t m, std::uint32_t q,
                                         std::size_t t);

// Monte-Carlo E|<phi|phi'>|^(2t) over independent instance pairs.
MomentReport frame_potential_mc(const EnsembleSpec& spec, std::size_t t, std::uint64_t samples,
                                Rng& rng);

// Empirical frequency of |<target|phi>|^2 >= 2^(-n/8) over sampled
// uniform instances. t is recorded, not used.
double overlap_tail_probe(std::size_t n, std::size_t m, std::uint32_t q, std::size_t t,
                          const Statevector& target, std::uint64_t trials, Rng& rng);

}  // namespace hps
