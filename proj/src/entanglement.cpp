#include "hps/entanglement.hpp"

#include <cmath>
#include <numbers>

#include "hps/errors.hpp"
#include "hps/parallel.hpp"

namespace hps {

namespace {

void check_half(const HpsInstance& inst, std::size_t half_cap) {
    if (inst.n() % 2 != 0) throw OddQubitCount("partition needs an even qubit count");
    if (inst.n() / 2 > half_cap) throw TooLarge("partition half exceeds cap");
}

}  // namespace

Eigen::MatrixXcd partition_matrix(const HpsInstance& inst, std::size_t half_cap) {
    check_half(inst, half_cap);
    const std::size_t half = inst.n() / 2;
    const std::uint64_t hdim = 1ull << half;
    const std::uint32_t q = inst.q();
    const std::vector<std::uint32_t> phases = phase_table(inst);
    Eigen::MatrixXcd lambda(hdim, hdim);
    for (std::uint64_t k = 0; k < hdim; ++k) {
        for (std::uint64_t l = 0; l < hdim; ++l) {
            // |k,l>: k holds the top half of the index (qubit 0 is MSB)
            const std::uint64_t x = (k << half) | l;
            const double angle =
                2.0 * std::numbers::pi * static_cast<double>(phases[x] % q) / q;
            lambda(k, l) = std::polar(1.0, angle);
        }
    }
    return lambda;
}

Eigen::MatrixXcd reduced_density(const HpsInstance& inst, std::size_t half_cap) {
    const Eigen::MatrixXcd lambda = partition_matrix(inst, half_cap);
    const double scale = std::pow(2.0, -static_cast<double>(inst.n()));
    return scale * (lambda * lambda.adjoint());
}

Eigen::MatrixXcd reduced_density_from_state(const Statevector& psi) {
    if (psi.n % 2 != 0) throw OddQubitCount("partial trace needs an even qubit count");
    const std::size_t half = psi.n / 2;
    const std::uint64_t hdim = 1ull << half;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(hdim, hdim);
    for (std::uint64_t i = 0; i < hdim; ++i)
        for (std::uint64_t k = 0; k < hdim; ++k)
            for (std::uint64_t j = 0; j < hdim; ++j)
                rho(i, k) += psi.amps[(i << half) | j] * std::conj(psi.amps[(k << half) | j]);
    return rho;
}

double entanglement_entropy(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (lambda >= 1e-12) s -= lambda * std::log2(lambda);
    }
    return s;
}

EntropyBounds entropy_bounds(const HpsInstance& inst, std::size_t half_cap) {
    const Eigen::MatrixXcd rho = reduced_density(inst, half_cap);
    EntropyBounds out;
    out.entropy = entanglement_entropy(rho);
    out.lower = -std::log2(rho.norm());  // Eigen norm() is Frobenius
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
    const double floor = 1e-10 * static_cast<double>(rho.rows());
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        if (solver.eigenvalues()(i) > floor) ++out.rank;
    const double structural =
        std::min(4.0 * static_cast<double>(inst.m()), static_cast<double>(inst.n()) / 2.0);
    out.upper = std::min(std::log2(static_cast<double>(std::max<std::size_t>(out.rank, 1))),
                         structural);
    return out;
}

double frobenius_second_moment_bound(std::size_t n, std::size_t m) {
    return 2.0 * std::pow(2.0, -static_cast<double>(n) / 2.0) +
           std::pow(0.75, static_cast<double>(m));
}

MomentReport frobenius_second_moment(std::size_t n, std::size_t m, std::uint32_t q,
                                     std::uint64_t samples, Rng& rng) {
    if (q <= 4) throw InvalidQ("frobenius_second_moment needs q > 4");
    if (samples < 2) throw Error("frobenius_second_moment: samples >= 2");
    EnsembleSpec spec;
    spec.n = n;
    spec.m = m;
    spec.q = q;
    std::vector<double> vals(samples);
    parallel_blocks(samples, 8, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            Rng task = rng.fork(i);
            const HpsInstance inst = sample_instance(spec, task);
            const Eigen::MatrixXcd rho = reduced_density(inst);
            vals[i] = rho.squaredNorm();
        }
    });
    double mean = 0.0;
    for (const double v : vals) mean += v;
    mean /= static_cast<double>(samples);
    double var = 0.0;
    for (const double v : vals) var += (v - mean) * (v - mean);
    var /= static_cast<double>(samples - 1);
    MomentReport report;
    report.value = mean;
    report.stderr = std::sqrt(var / static_cast<double>(samples));
    report.method = MomentReport::Method::monte_carlo;
    report.n = n;
    report.m = m;
    report.q = q;
    report.t = 2;
    report.samples = samples;
    report.seed = rng.seed();
    return report;
}

}  // namespace hps
