#include "workbench/report.hpp"

#include <sstream>
#include <utility>

#include "json.hpp"

namespace workbench {

std::string status_str(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "FAIL";
        case CheckStatus::skip: return "skip";
    }
    return "?";
}

void Report::add(std::string id, std::string inputs, std::string expected, std::string actual,
                 CheckStatus status) {
    checks.push_back({std::move(id), std::move(inputs), std::move(expected), std::move(actual), status});
}

void Report::add_eq(std::string id, std::string inputs, std::string expected, std::string actual) {
    const CheckStatus st = expected == actual ? CheckStatus::pass : CheckStatus::fail;
    add(std::move(id), std::move(inputs), std::move(expected), std::move(actual), st);
}

void Report::absorb(const Report& other, const std::string& prefix) {
    for (CheckRecord rec : other.checks) {
        rec.id = prefix + rec.id;
        checks.push_back(std::move(rec));
    }
}

int Report::passed() const {
    int n = 0;
    for (const auto& c : checks) n += c.status == CheckStatus::pass;
    return n;
}

int Report::failed() const {
    int n = 0;
    for (const auto& c : checks) n += c.status == CheckStatus::fail;
    return n;
}

int Report::skipped() const {
    int n = 0;
    for (const auto& c : checks) n += c.status == CheckStatus::skip;
    return n;
}

std::string Report::text() const {
    std::ostringstream out;
    out << kVersion << " report\n";
    out << "command: " << command << "\n";
    for (const auto& c : checks) {
        out << status_str(c.status) << "  " << c.id << "  input=" << c.inputs
            << "  expected=" << c.expected << "  actual=" << c.actual << "\n";
    }
    out << "summary: " << passed() << " passed, " << failed() << " failed, " << skipped()
        << " skipped\n";
    return out.str();
}

std::string Report::json() const {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["command"] = command;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json rec;
        rec["id"] = c.id;
        rec["inputs"] = c.inputs;
        rec["expected"] = c.expected;
        rec["actual"] = c.actual;
        rec["status"] = status_str(c.status);
        j["checks"].push_back(std::move(rec));
    }
    j["summary"] = {{"pass", passed()}, {"fail", failed()}, {"skip", skipped()}};
    return j.dump(2) + "\n";
}

}  // namespace workbench
