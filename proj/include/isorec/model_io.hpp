#pragma once

#include <string>

#include "isorec/types.hpp"

namespace isorec {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kModelFormatVersion = 1;

struct ModelMetadata {
    std::string created;       // ISO 8601 UTC timestamp
    std::string input_digest;  // fnv1a64 of the training file bytes
    std::string tool_version;
};

struct ModelDocument {
    Recalibrator model;
    ModelMetadata metadata;
};

// 64-bit FNV-1a of a byte string, rendered as "fnv1a64:<16 hex digits>".
std::string fnv1a64_hex(const std::string& bytes);

std::string current_utc_timestamp();

// Versioned JSON document. Numeric fields survive a round-trip exactly, so
// a reloaded model predicts identically.
void save_model(const std::string& path, const ModelDocument& doc);

// throws ParseError on malformed or wrong-version content, IoError on
// filesystem failure
ModelDocument load_model(const std::string& path);

}  // namespace isorec
