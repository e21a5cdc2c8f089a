#include "esp/report.hpp"

#include <chrono>
#include <sstream>

namespace esp {

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(
               clock::now().time_since_epoch())
        .count();
}

}  // namespace

ReportTimer::ReportTimer(VerificationReport& r) : r_(r), start_(now_ms()) {}

ReportTimer::~ReportTimer() { r_.elapsed_ms = now_ms() - start_; }

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["theorem_id"] = theorem_id;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : parameters) params[k] = v;
    j["parameters"] = params;
    j["status"] = pass ? "pass" : "fail";
    j["checks_run"] = checks_run;
    if (witness) {
        nlohmann::ordered_json w;
        w["lagrangian_rref"] = witness->lagrangian_rref;
        w["difference_poly"] = witness->difference_poly;
        j["witness"] = w;
    }
    j["elapsed_ms"] = elapsed_ms;
    return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::ordered_json& j) {
    VerificationReport r;
    r.theorem_id = j.at("theorem_id").get<std::string>();
    for (const auto& [k, v] : j.at("parameters").items())
        r.parameters.emplace_back(k, v.get<std::string>());
    r.pass = j.at("status").get<std::string>() == "pass";
    r.checks_run = j.at("checks_run").get<long>();
    if (j.contains("witness")) {
        ReportWitness w;
        w.lagrangian_rref =
            j["witness"].at("lagrangian_rref").get<std::vector<std::vector<int>>>();
        w.difference_poly = j["witness"].at("difference_poly").get<std::string>();
        r.witness = std::move(w);
    }
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    return r;
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << (pass ? "[PASS] " : "[FAIL] ") << theorem_id << " (";
    for (std::size_t i = 0; i < parameters.size(); ++i) {
        if (i) os << ", ";
        os << parameters[i].first << "=" << parameters[i].second;
    }
    os << ") checks=" << checks_run << " elapsed_ms=" << elapsed_ms;
    if (witness) {
        os << "\n  witness subspace: [";
        for (std::size_t r = 0; r < witness->lagrangian_rref.size(); ++r) {
            if (r) os << ",";
            os << "[";
            for (std::size_t c = 0; c < witness->lagrangian_rref[r].size(); ++c) {
                if (c) os << ",";
                os << witness->lagrangian_rref[r][c];
            }
            os << "]";
        }
        os << "]\n  difference: " << witness->difference_poly;
    }
    return os.str();
}

}  // namespace esp
