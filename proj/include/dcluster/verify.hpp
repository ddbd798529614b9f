// Runs every structural check on one instance (quiver, d, prime) and
// collects the outcomes into a deterministic report.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcluster/quiver.hpp"
#include "dcluster/tilting.hpp"

namespace dcluster {

enum class CheckStatus { pass, fail, not_applicable, refuted };
std::string to_string(CheckStatus s);

struct CheckInfo {
    std::string id;
    std::string statement;
};

/// All checks in the order they run.
const std::vector<CheckInfo>& check_catalog();
bool is_known_check(const std::string& id);

struct CheckRecord {
    std::string id;
    std::string statement;
    CheckStatus status = CheckStatus::pass;
    long long instances = 0;
    std::string detail;
    nlohmann::json counterexample; // null when there is none
    double wall_ms = 0;
};

struct VerifyOptions {
    std::set<std::string> checks; // empty: all
    bool timings = false;         // include wall time in the report
    std::optional<std::filesystem::path> cache_dir;
};

struct VerificationReport {
    nlohmann::json instance;
    std::vector<CheckRecord> checks;
    bool timings = false;
    bool cache_hit = false; // not part of the serialized report

    /// No check failed. Refuted statements do not count as failures.
    bool passed() const;
    const CheckRecord* find(const std::string& id) const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

VerificationReport verify_all(const DynkinQuiver& q, int d, std::uint32_t prime, const VerifyOptions& opts = {});

/// Cache of tilting enumerations keyed by (diagram, rank, orientation, d, prime).
struct EnumerationCache {
    std::filesystem::path dir;
    std::filesystem::path file_for(const DynkinQuiver& q, int d, std::uint32_t prime) const;
    std::optional<std::vector<ObjectSet>> load(const DynkinQuiver& q, int d, std::uint32_t prime) const;
    void store(const DynkinQuiver& q, int d, std::uint32_t prime, const std::vector<ObjectSet>& tilting) const;
};

} // namespace dcluster
