#include "hps/serialize.hpp"

#include <fstream>

#include "hps/errors.hpp"

namespace hps {

using nlohmann::json;

json bitmatrix_to_json(const BitMatrix& m) { return json(m.to_row_strings()); }

BitMatrix bitmatrix_from_json(const json& j) {
    return BitMatrix::from_rows(j.get<std::vector<std::string>>());
}

json instance_to_json(const HpsInstance& inst) {
    return json{{"n", inst.n()},
                {"m", inst.m()},
                {"q", inst.q()},
                {"arch", inst.arch.to_row_strings()},
                {"ks", inst.angles.ks}};
}

HpsInstance instance_from_json(const json& j) {
    const std::size_t n = j.at("n").get<std::size_t>();
    const std::size_t m = j.at("m").get<std::size_t>();
    const std::uint32_t q = j.at("q").get<std::uint32_t>();
    auto rows = j.at("arch").get<std::vector<std::string>>();
    BitMatrix arch = rows.empty() ? BitMatrix(0, n) : BitMatrix::from_rows(rows);
    if (arch.rows() != m || (m > 0 && arch.cols() != n))
        throw DimensionMismatch("instance json: arch shape disagrees with n, m");
    AngleVector angles{q, j.at("ks").get<std::vector<std::uint32_t>>()};
    return make_instance(std::move(arch), std::move(angles));
}

json report_to_json(const MomentReport& r) {
    json j{{"value", r.value},
           {"stderr", r.stderr},
           {"method", r.method == MomentReport::Method::exact ? "exact" : "monte_carlo"},
           {"n", r.n},
           {"m", r.m},
           {"t", r.t},
           {"samples", r.samples},
           {"seed", r.seed},
           {"version", kVersion}};
    if (r.q)
        j["q"] = *r.q;
    else
        j["q"] = "continuous";
    return j;
}

json gate_counts_to_json(const GateCounts& c) {
    return json{{"h", c.h}, {"rz", c.rz}, {"cnot", c.cnot}, {"blocks", c.blocks}};
}

json entropy_to_json(const EntropyBounds& b) {
    return json{{"entropy", b.entropy}, {"lower", b.lower}, {"upper", b.upper}, {"rank", b.rank}};
}

void write_statevector(const std::string& path, const Statevector& psi) {
    std::ofstream bin(path, std::ios::binary);
    if (!bin) throw Error("cannot open " + path);
    for (const cplx& a : psi.amps) {
        const double re = a.real(), im = a.imag();
        bin.write(reinterpret_cast<const char*>(&re), sizeof(double));
        bin.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
    const json header{{"n", psi.n},
                      {"amplitudes", psi.dim()},
                      {"format", "float64-le-interleaved-re-im"},
                      {"index_convention", "qubit 0 is the most significant bit"},
                      {"version", kVersion}};
    write_text_file(path + ".json", header.dump(2) + "\n");
}

Statevector read_statevector(const std::string& path) {
    const json header = json::parse(read_text_file(path + ".json"));
    const std::size_t n = header.at("n").get<std::size_t>();
    std::ifstream bin(path, std::ios::binary);
    if (!bin) throw Error("cannot open " + path);
    Statevector psi{n, std::vector<cplx>(1ull << n)};
    for (auto& a : psi.amps) {
        double re = 0.0, im = 0.0;
        bin.read(reinterpret_cast<char*>(&re), sizeof(double));
        bin.read(reinterpret_cast<char*>(&im), sizeof(double));
        a = cplx(re, im);
    }
    if (!bin) throw Error("statevector file truncated: " + path);
    return psi;
}

json embedding_secrets_to_json(const HiddenEmbedding& e) {
    return json{{"R", bitmatrix_to_json(e.r)},
                {"Pi", e.pi},
                {"extra_ks", e.extra_angles.ks},
                {"q", e.extra_angles.q}};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path);
    out << content;
}

}  // namespace hps
