#pragma once

#include <string>

#include "baker/tower.hpp"

namespace baker {

inline constexpr int kModelFormatVersion = 1;

/// Canonical decimal rendering used everywhere a double reaches a file:
/// 17 significant digits, lossless for IEEE doubles and stable across runs.
std::string canonical_double(double x);

/// Canonical model serialization: format version, parameters, per-level
/// sub-disc constants (enough to re-evaluate the map without re-running the
/// eps search), and build metadata. Deterministic byte-for-byte.
std::string serialize_model(const Tower& tower, bool lazy = false);

/// 64-bit FNV-1a over the parameter and level sections only; metadata is
/// excluded.
std::string model_fingerprint(const Tower& tower);

/// Parses a model file; rejects unknown format versions. Lazy files carry
/// parameters only and rebuild levels on demand.
Tower parse_model(const std::string& text);

void write_model_file(const Tower& tower, const std::string& path, bool lazy = false);
Tower read_model_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

} // namespace baker
