#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "hps/design.hpp"
#include "hps/state.hpp"

namespace hps {

inline constexpr std::size_t kDefaultHalfCap = 12;

// 2^(n/2) x 2^(n/2) arrangement of the diagonal phases across the
// half-half cut: entry(k, l) = <k,l| D |k,l>, unit modulus.
Eigen::MatrixXcd partition_matrix(const HpsInstance& inst,
                                  std::size_t half_cap = kDefaultHalfCap);

// rho_A = 2^-n Lambda Lambda^dag, the reduced state of the first n/2 qubits.
Eigen::MatrixXcd reduced_density(const HpsInstance& inst,
                                 std::size_t half_cap = kDefaultHalfCap);

// Partial trace of |psi><psi| over the last n/2 qubits (oracle route).
Eigen::MatrixXcd reduced_density_from_state(const Statevector& psi);

// -sum lambda log2 lambda over eigenvalues >= 1e-12; result in bits.
double entanglement_entropy(const Eigen::MatrixXcd& rho);

struct EntropyBounds {
    double lower = 0.0;    // -log2 ||rho||_F
    double upper = 0.0;    // min(log2 rank, 4m, n/2)
    double entropy = 0.0;  // von Neumann, bits
    std::size_t rank = 0;  // eigenvalues above 1e-10 * dim
};

EntropyBounds entropy_bounds(const HpsInstance& inst,
                             std::size_t half_cap = kDefaultHalfCap);

// Monte-Carlo E ||2^-n Lambda Lambda^dag||_F^2 against the bound
// 2*2^(-n/2) + (3/4)^m; requires q > 4.
MomentReport frobenius_second_moment(std::size_t n, std::size_t m, std::uint32_t q,
                                     std::uint64_t samples, Rng& rng);

double frobenius_second_moment_bound(std::size_t n, std::size_t m);

}  // namespace hps
