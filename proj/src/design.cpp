#include "hps/design.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "hps/errors.hpp"
#include "hps/parallel.hpp"

namespace hps {

namespace {

void check_enumeration_guard(std::size_t n, std::size_t t) {
    if (2 * n * t + n > 30) throw TooLarge("moment enumeration guard 2^(2nt+n) <= 2^30");
}

// Non-decreasing t-tuples over [0, 2^n): canonical representatives of
// tuples up to permutation.
std::vector<std::vector<std::uint64_t>> canonical_tuples(std::size_t n, std::size_t t) {
    const std::uint64_t dim = 1ull << n;
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> tup(t, 0);
    for (;;) {
        out.push_back(tup);
        std::size_t pos = t;
        while (pos > 0 && tup[pos - 1] == dim - 1) --pos;
        if (pos == 0) break;
        const std::uint64_t v = tup[pos - 1] + 1;
        for (std::size_t i = pos - 1; i < t; ++i) tup[i] = v;
    }
    return out;
}

}  // namespace

MomentIndex MomentIndex::canonical() const {
    MomentIndex c = *this;
    std::sort(c.xs.begin(), c.xs.end());
    std::sort(c.xs_prime.begin(), c.xs_prime.end());
    return c;
}

bool MomentIndex::equivalent() const {
    const MomentIndex c = canonical();
    return c.xs == c.xs_prime;
}

std::int64_t moment_index_f(const MomentIndex& idx, std::uint64_t a) {
    std::int64_t f = 0;
    for (const std::uint64_t x : idx.xs) f += (std::popcount(a & x) & 1u) ? -1 : 1;
    for (const std::uint64_t x : idx.xs_prime) f -= (std::popcount(a & x) & 1u) ? -1 : 1;
    return f;
}

std::complex<double> moment_entry(const MomentIndex& idx, AngleModulus q) {
    if (idx.xs.size() != idx.xs_prime.size()) throw DimensionMismatch("tuple lengths differ");
    const std::uint64_t dim = 1ull << idx.n;
    std::uint64_t zero = 0;
    for (std::uint64_t a = 0; a < dim; ++a) {
        const std::int64_t f = moment_index_f(idx, a);
        const bool vanished = q ? (f % static_cast<std::int64_t>(*q) == 0) : (f == 0);
        if (vanished) ++zero;
    }
    return {static_cast<double>(zero) / static_cast<double>(dim), 0.0};
}

std::complex<double> moment_entry_haar_diag(const MomentIndex& idx) {
    return idx.equivalent() ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, 0.0);
}

std::vector<MomentEntryRecord> moment_operator_diagonal(std::size_t n, AngleModulus q,
                                                        std::size_t t) {
    check_enumeration_guard(n, t);
    const auto tuples = canonical_tuples(n, t);
    std::vector<MomentEntryRecord> out;
    out.reserve(tuples.size() * tuples.size());
    for (const auto& xs : tuples) {
        for (const auto& xsp : tuples) {
            MomentIndex idx{n, xs, xsp};
            out.push_back(MomentEntryRecord{idx, moment_entry(idx, q)});
        }
    }
    return out;
}

MomentReport spectral_gap(std::size_t n, std::size_t t, AngleModulus q) {
    check_enumeration_guard(n, t);
    const auto tuples = canonical_tuples(n, t);
    const std::size_t count = tuples.size() * tuples.size();
    std::vector<double> block_max((count + 255) / 256, 0.0);
    parallel_blocks(count, 256, [&](std::uint64_t b, std::uint64_t lo, std::uint64_t hi) {
        double best = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const auto& xs = tuples[i / tuples.size()];
            const auto& xsp = tuples[i % tuples.size()];
            if (xs == xsp) continue;  // tuples are canonical, so ~ means equal
            const MomentIndex idx{n, xs, xsp};
            best = std::max(best, moment_entry(idx, q).real());
        }
        block_max[b] = best;
    });
    MomentReport report;
    report.value = block_max.empty() ? 0.0 : *std::max_element(block_max.begin(), block_max.end());
    report.method = MomentReport::Method::exact;
    report.n = n;
    report.t = t;
    report.q = q;
    report.m = 1;
    return report;
}

std::size_t sufficient_m(std::size_t n, std::size_t t, double epsilon) {
    if (epsilon <= 0.0 || epsilon > 1.0) throw Error("sufficient_m: epsilon in (0, 1]");
    const double raw = 2.0 * static_cast<double>(t) *
                       (2.0 * static_cast<double>(n) * static_cast<double>(t) +
                        std::log(1.0 / epsilon));
    return static_cast<std::size_t>(std::ceil(raw - 1e-12));
}

bool amplification_holds(std::size_t n, std::size_t t, double epsilon) {
    const std::size_t m = sufficient_m(n, t, epsilon);
    const double log_lhs = static_cast<double>(m) * std::log1p(-1.0 / (2.0 * t)) +
                           2.0 * static_cast<double>(n) * static_cast<double>(t) * std::log(2.0);
    return log_lhs <= std::log(epsilon) + 1e-15;
}

Eigen::MatrixXcd hps_state_moment(std::size_t n, std::size_t m, AngleModulus q, std::size_t t) {
    if (n * t > 8) throw TooLarge("state moment guard 2^(nt) <= 2^8");
    const std::uint64_t dim = 1ull << (n * t);
    const std::uint64_t mask = (1ull << n) - 1;
    Eigen::MatrixXcd out(dim, dim);
    const double scale = std::pow(2.0, -static_cast<double>(n * t));
    for (std::uint64_t row = 0; row < dim; ++row) {
        for (std::uint64_t col = 0; col < dim; ++col) {
            MomentIndex idx{n, {}, {}};
            for (std::size_t j = 0; j < t; ++j) {
                idx.xs.push_back((row >> (n * (t - 1 - j))) & mask);
                idx.xs_prime.push_back((col >> (n * (t - 1 - j))) & mask);
            }
            const double g = moment_entry(idx, q).real();
            out(row, col) = scale * std::pow(g, static_cast<double>(m));
        }
    }
    return out;
}

Eigen::MatrixXcd haar_state_moment(std::size_t n, std::size_t t) {
    if (n * t > 8) throw TooLarge("state moment guard 2^(nt) <= 2^8");
    const std::uint64_t d = 1ull << n;
    const std::uint64_t dim = 1ull << (n * t);
    const std::uint64_t mask = d - 1;
    Eigen::MatrixXcd sym = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<std::size_t> perm(t);
    for (std::size_t j = 0; j < t; ++j) perm[j] = j;
    std::uint64_t nperm = 0;
    do {
        ++nperm;
        for (std::uint64_t col = 0; col < dim; ++col) {
            std::uint64_t row = 0;
            for (std::size_t j = 0; j < t; ++j) {
                const std::uint64_t xj = (col >> (n * (t - 1 - perm[j]))) & mask;
                row |= xj << (n * (t - 1 - j));
            }
            sym(row, col) += 1.0;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    sym /= static_cast<double>(nperm);
    // dimension of the symmetric subspace: binom(d + t - 1, t)
    double binom = 1.0;
    for (std::size_t j = 0; j < t; ++j)
        binom = binom * static_cast<double>(d + t - 1 - j) / static_cast<double>(j + 1);
    return sym / binom;
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a - b);
    double dist = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (std::abs(lambda) > 1e-12) dist += std::abs(lambda);
    }
    return dist;
}

MomentReport state_design_distance_exact(std::size_t n, std::size_t m, std::uint32_t q,
                                         std::size_t t) {
    MomentReport report;
    report.value = trace_distance(hps_state_moment(n, m, AngleModulus{q}, t),
                                  haar_state_moment(n, t));
    report.method = MomentReport::Method::exact;
    report.n = n;
    report.m = m;
    report.q = q;
    report.t = t;
    return report;
}

MomentReport frame_potential_mc(const EnsembleSpec& spec, std::size_t t, std::uint64_t samples,
                                Rng& rng) {
    if (samples < 2) throw Error("frame_potential_mc: samples >= 2");
    std::vector<double> vals(samples);
    parallel_blocks(samples, 64, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            Rng task = rng.fork(i);
            const HpsInstance a = sample_instance(spec, task);
            const HpsInstance b = sample_instance(spec, task);
            const double f = std::norm(inner_product(a, b));
            vals[i] = std::pow(f, static_cast<double>(t));
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
    report.n = spec.n;
    report.m = spec.m;
    report.q = spec.q;
    report.t = t;
    report.samples = samples;
    report.seed = rng.seed();
    return report;
}

double overlap_tail_probe(std::size_t n, std::size_t m, std::uint32_t q, std::size_t t,
                          const Statevector& target, std::uint64_t trials, Rng& rng) {
    (void)t;  // recorded by callers, not used in the probe itself
    if (target.n != n) throw DimensionMismatch("overlap_tail_probe: target size");
    const double threshold = std::pow(2.0, -static_cast<double>(n) / 8.0);
    EnsembleSpec spec;
    spec.n = n;
    spec.m = m;
    spec.q = q;
    const double scale = std::pow(2.0, -0.5 * static_cast<double>(n));
    std::vector<std::uint8_t> hits(trials, 0);
    parallel_blocks(trials, 16, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            Rng task = rng.fork(i);
            const HpsInstance inst = sample_instance(spec, task);
            const std::vector<std::uint32_t> phases = phase_table(inst);
            cplx overlap(0.0, 0.0);
            for (std::uint64_t x = 0; x < target.dim(); ++x) {
                const double angle = 2.0 * std::numbers::pi *
                                     static_cast<double>(phases[x] % q) / q;
                overlap += std::conj(target.amps[x]) * std::polar(scale, angle);
            }
            hits[i] = std::norm(overlap) >= threshold ? 1 : 0;
        }
    });
    std::uint64_t total = 0;
    for (const auto h : hits) total += h;
    return static_cast<double>(total) / static_cast<double>(trials);
}

}  // namespace hps
