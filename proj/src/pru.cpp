#include "hps/pru.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "hps/errors.hpp"
#include "hps/parallel.hpp"

namespace hps {

LayeredUnitarySpec sample_layered(std::size_t n, std::size_t m, std::uint32_t q,
                                  std::size_t layers, Rng& rng) {
    if (m == 0) m = default_layer_terms(n);
    LayeredUnitarySpec spec;
    spec.n = n;
    spec.q = q;
    spec.layers.reserve(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        HpsLayer layer{sample_uniform(m, n, rng), sample_angles(q, m, rng)};
        spec.layers.emplace_back(std::move(layer));
    }
    return spec;
}

LayeredUnitarySpec sample_ideal_layered(std::size_t n, std::uint32_t q, std::size_t layers,
                                        Rng& rng) {
    if (n > 12) throw TooLarge("ideal layers keep a 2^n phase table; n <= 12");
    if (q == 0) q = static_cast<std::uint32_t>(1u << n);
    LayeredUnitarySpec spec;
    spec.n = n;
    spec.q = q;
    spec.layers.reserve(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        IdealLayer layer;
        layer.q = q;
        layer.ks.resize(1ull << n);
        for (auto& k : layer.ks) k = static_cast<std::uint32_t>(rng.next_below(q));
        spec.layers.emplace_back(std::move(layer));
    }
    return spec;
}

Statevector apply_layered(const LayeredUnitarySpec& spec, const Statevector& state) {
    if (state.n != spec.n) throw DimensionMismatch("apply_layered: qubit counts differ");
    Statevector psi = state;
    for (const Layer& layer : spec.layers) {
        if (const auto* hl = std::get_if<HpsLayer>(&layer)) {
            psi = apply_diagonal(psi, hl->arch, hl->angles);
        } else {
            const auto& il = std::get<IdealLayer>(layer);
            for (std::uint64_t x = 0; x < psi.dim(); ++x)
                psi.amps[x] *= std::polar(
                    1.0, 2.0 * std::numbers::pi * static_cast<double>(il.ks[x]) / il.q);
        }
        psi = apply_hadamard_layer(psi);
    }
    return psi;
}

MomentReport first_moment_distance(std::size_t n, std::size_t m, std::uint32_t q,
                                   std::size_t layers, std::uint64_t samples, Rng& rng) {
    if (n > 6) throw TooLarge("first_moment_distance: n <= 6");
    const std::uint64_t dim = 1ull << n;
    const std::uint64_t block = 256;
    const std::uint64_t nblocks = samples == 0 ? 0 : (samples + block - 1) / block;
    std::vector<Eigen::MatrixXcd> partial(nblocks, Eigen::MatrixXcd::Zero(dim, dim));
    parallel_blocks(samples, block, [&](std::uint64_t b, std::uint64_t lo, std::uint64_t hi) {
        Eigen::VectorXcd v(dim);
        for (std::uint64_t i = lo; i < hi; ++i) {
            Rng task = rng.fork(i);
            const LayeredUnitarySpec spec = sample_layered(n, m, q, layers, task);
            const Statevector psi = apply_layered(spec, zero_state(n));
            for (std::uint64_t x = 0; x < dim; ++x) v(x) = psi.amps[x];
            partial[b] += v * v.adjoint();
        }
    });
    Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& p : partial) avg += p;
    avg /= static_cast<double>(samples);
    avg -= Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
    MomentReport report;
    report.value = trace_distance(avg, Eigen::MatrixXcd::Zero(dim, dim));
    report.method = MomentReport::Method::monte_carlo;
    report.n = n;
    report.m = m;
    report.q = q;
    report.t = 1;
    report.samples = samples;
    report.seed = rng.seed();
    return report;
}

double first_moment_distance_exact(std::size_t n, std::size_t m, std::uint32_t q,
                                   std::size_t layers) {
    if (n > 6) throw TooLarge("first_moment_distance_exact: n <= 6");
    const std::uint64_t dim = 1ull << n;
    // One layer acts entrywise: rho_xy *= E_{a,theta} e^(i theta ((-1)^<a,x>
    // - (-1)^<a,y>)), which is the t = 1 moment entry, then conjugation by
    // the Hadamard layer. Iterate the exact channel.
    Eigen::MatrixXd schur(dim, dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        for (std::uint64_t y = 0; y < dim; ++y) {
            const MomentIndex idx{n, {x}, {y}};
            schur(x, y) = std::pow(moment_entry(idx, AngleModulus{q}).real(),
                                   static_cast<double>(m));
        }
    }
    Eigen::MatrixXcd had(dim, dim);
    const double h = std::pow(2.0, -0.5 * static_cast<double>(n));
    for (std::uint64_t x = 0; x < dim; ++x)
        for (std::uint64_t y = 0; y < dim; ++y)
            had(x, y) = ((std::popcount(x & y) & 1u) ? -h : h);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    rho(0, 0) = 1.0;
    for (std::size_t l = 0; l < layers; ++l) {
        rho = rho.cwiseProduct(schur.cast<cplx>());
        rho = had * rho * had;
    }
    rho -= Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
    return trace_distance(rho, Eigen::MatrixXcd::Zero(dim, dim));
}

cplx layered_trace_inner(const LayeredUnitarySpec& u, const LayeredUnitarySpec& v) {
    if (u.n != v.n) throw DimensionMismatch("layered_trace_inner: qubit counts differ");
    const std::uint64_t dim = 1ull << u.n;
    cplx trace(0.0, 0.0);
    for (std::uint64_t x = 0; x < dim; ++x) {
        Statevector basis = zero_state(u.n);
        basis.amps[0] = 0.0;
        basis.amps[x] = 1.0;
        const Statevector ucol = apply_layered(u, basis);
        const Statevector vcol = apply_layered(v, basis);
        trace += inner_product(ucol, vcol);
    }
    return trace;
}

MomentReport unitary_frame_potential(std::size_t n, std::size_t m, std::uint32_t q,
                                     std::size_t layers, std::size_t t, std::uint64_t samples,
                                     Rng& rng) {
    if (samples < 2) throw Error("unitary_frame_potential: samples >= 2");
    std::vector<double> vals(samples);
    parallel_blocks(samples, 16, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            Rng task = rng.fork(i);
            const LayeredUnitarySpec u = sample_layered(n, m, q, layers, task);
            const LayeredUnitarySpec v = sample_layered(n, m, q, layers, task);
            const double tr2 = std::norm(layered_trace_inner(u, v));
            vals[i] = std::pow(tr2, static_cast<double>(t));
        }
    });
    double mean = 0.0;
    for (const double val : vals) mean += val;
    mean /= static_cast<double>(samples);
    double var = 0.0;
    for (const double val : vals) var += (val - mean) * (val - mean);
    var /= static_cast<double>(samples - 1);
    MomentReport report;
    report.value = mean;
    report.stderr = std::sqrt(var / static_cast<double>(samples));
    report.method = MomentReport::Method::monte_carlo;
    report.n = n;
    report.m = m;
    report.q = q;
    report.t = t;
    report.samples = samples;
    report.seed = rng.seed();
    return report;
}

}  // namespace hps
