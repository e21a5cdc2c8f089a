#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace esp {

struct ReportWitness {
    std::vector<std::vector<int>> lagrangian_rref;
    std::string difference_poly;

    bool operator==(const ReportWitness&) const = default;
};

// Structured pass/fail record for one verifier instance.
struct VerificationReport {
    std::string theorem_id;
    // ordered, so serialization is deterministic
    std::vector<std::pair<std::string, std::string>> parameters;
    bool pass = false;
    long checks_run = 0;
    std::optional<ReportWitness> witness;
    double elapsed_ms = 0.0;

    void param(const std::string& key, const std::string& value) {
        parameters.emplace_back(key, value);
    }
    void param(const std::string& key, long long value) {
        parameters.emplace_back(key, std::to_string(value));
    }

    nlohmann::ordered_json to_json() const;
    static VerificationReport from_json(const nlohmann::ordered_json& j);
    std::string to_text() const;

    bool operator==(const VerificationReport&) const = default;
};

// Small scope guard that stamps elapsed_ms on exit.
class ReportTimer {
public:
    explicit ReportTimer(VerificationReport& r);
    ~ReportTimer();

private:
    VerificationReport& r_;
    double start_;
};

}  // namespace esp
