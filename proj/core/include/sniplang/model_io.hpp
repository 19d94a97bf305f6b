#pragma once

#include <iosfwd>
#include <string>

#include "sniplang/mnb.hpp"

namespace sniplang {

/// Serializes a trained model as a single JSON document. The seed that
/// produced the training corpus is carried along so downstream reports can
/// echo it. Doubles survive the round trip bit-for-bit.
void save_model(const MnbModel& model, std::uint64_t seed, std::ostream& out);
void save_model_file(const MnbModel& model, std::uint64_t seed, const std::string& path);

/// Reads a model written by save_model. Throws IoError when the document is
/// not valid JSON, announces an unknown format or version, or fails internal
/// consistency checks (array lengths, label ordering, vocabulary shape).
MnbModel load_model(std::istream& in, std::uint64_t* seed_out = nullptr);
MnbModel load_model_file(const std::string& path, std::uint64_t* seed_out = nullptr);

}  // namespace sniplang
