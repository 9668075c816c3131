#pragma once

#include <string>

#include <json.hpp>

#include "hps/circuit.hpp"
#include "hps/design.hpp"
#include "hps/entanglement.hpp"
#include "hps/reductions.hpp"
#include "hps/state.hpp"

namespace hps {

inline constexpr const char* kVersion = "hpslab 0.1.0";

nlohmann::json bitmatrix_to_json(const BitMatrix& m);
BitMatrix bitmatrix_from_json(const nlohmann::json& j);

// {"n":int,"m":int,"q":int,"arch":["0101...",...],"ks":[int,...]}
nlohmann::json instance_to_json(const HpsInstance& inst);
HpsInstance instance_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const MomentReport& r);
nlohmann::json gate_counts_to_json(const GateCounts& c);
nlohmann::json entropy_to_json(const EntropyBounds& b);

// Binary little-endian interleaved (re, im) doubles at `path`, JSON
// header at `path`.json. Qubit 0 is the most significant index bit.
void write_statevector(const std::string& path, const Statevector& psi);
Statevector read_statevector(const std::string& path);

nlohmann::json embedding_secrets_to_json(const HiddenEmbedding& e);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace hps
