/// @file report.hpp
/// Structured check reports with deterministic text and JSON rendering.
#pragma once

#include <string>
#include <vector>

namespace workbench {

inline constexpr const char* kVersion = "workbench 1.0";

enum class CheckStatus { pass, fail, skip };

struct CheckRecord {
    std::string id;
    std::string inputs;
    std::string expected;
    std::string actual;
    CheckStatus status = CheckStatus::pass;
};

struct Report {
    std::string command;
    std::vector<CheckRecord> checks;

    void add(std::string id, std::string inputs, std::string expected, std::string actual,
             CheckStatus status);
    /// Convenience: expected/actual strings compared for equality.
    void add_eq(std::string id, std::string inputs, std::string expected, std::string actual);
    /// Merges another report's checks, prefixing their ids.
    void absorb(const Report& other, const std::string& prefix);

    int passed() const;
    int failed() const;
    int skipped() const;
    bool ok() const { return failed() == 0; }

    std::string text() const;
    std::string json() const;
};

std::string status_str(CheckStatus s);

}  // namespace workbench
