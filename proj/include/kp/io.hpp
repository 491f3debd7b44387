#pragma once

// Serialization: configuration / body JSON, the versioned results CSV and
// run manifests. All floating point output uses 17 significant digits so
// reproducibility claims can be checked with a byte diff.

#include <string>
#include <vector>

#include "kp/geometry.hpp"
#include "kp/uncond.hpp"

namespace kp {

struct VerificationRecord; // experiments.hpp

/// printf "%.17g" — round-trippable doubles for CSV/JSON output.
std::string fmt17(double v);

std::string configuration_to_json(const Configuration& c);
/// Rejects NaN / infinity and malformed shapes.
Configuration configuration_from_json(const std::string& text);

std::string body_to_json(const UncondBody& b);
UncondBody body_from_json(const std::string& text);

std::string placed_bodies_to_json(const PlacedBodies& pb);
PlacedBodies placed_bodies_from_json(const std::string& text);

inline constexpr const char* kResultsCsvSchema = "kp.results.v1";

/// Results CSV: one header comment line carrying the schema id, then
/// theorem,d,k,N,lambda,trial,lhs,lhs_err,rhs,rhs_err,margin,method,verdict,seed.
std::string records_to_csv(const std::vector<VerificationRecord>& records);
std::vector<VerificationRecord> records_from_csv(const std::string& text); // rejects unknown schemas

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params; // flag -> value, insertion order
    std::uint64_t seed = 0;
    std::string artifact_version = "0.1.0";
    std::string created_utc; // informational; not part of any determinism contract
    std::vector<std::string> outputs;
};

std::string manifest_to_json(const RunManifest& m);

} // namespace kp
