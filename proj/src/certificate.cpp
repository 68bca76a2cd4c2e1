#include "upw/certificate.hpp"

#include <algorithm>

namespace upw {

namespace {
constexpr const char* kToolVersion = "upw 0.1.0";
}

bool Certificate::check_lt(const std::string& claim, const Rational& lhs, const Rational& rhs) {
    const bool ok = lhs < rhs;
    checks_.push_back({claim + " [lt]", lhs.str(), rhs.str(), ok});
    return ok;
}

bool Certificate::check_le(const std::string& claim, const Rational& lhs, const Rational& rhs) {
    const bool ok = lhs <= rhs;
    checks_.push_back({claim + " [le]", lhs.str(), rhs.str(), ok});
    return ok;
}

bool Certificate::check_gt(const std::string& claim, const Rational& lhs, const Rational& rhs) {
    const bool ok = lhs > rhs;
    checks_.push_back({claim + " [gt]", lhs.str(), rhs.str(), ok});
    return ok;
}

bool Certificate::check_ge(const std::string& claim, const Rational& lhs, const Rational& rhs) {
    const bool ok = lhs >= rhs;
    checks_.push_back({claim + " [ge]", lhs.str(), rhs.str(), ok});
    return ok;
}

bool Certificate::check_eq(const std::string& claim, const std::string& lhs,
                           const std::string& rhs) {
    const bool ok = lhs == rhs;
    checks_.push_back({claim + " [eq]", lhs, rhs, ok});
    return ok;
}

bool Certificate::check_ne(const std::string& claim, const std::string& lhs,
                           const std::string& rhs) {
    const bool ok = lhs != rhs;
    checks_.push_back({claim + " [ne]", lhs, rhs, ok});
    return ok;
}

bool Certificate::check_true(const std::string& claim, bool actual) {
    return check_eq(claim, actual ? "true" : "false", "true");
}

bool Certificate::verdict() const {
    return std::all_of(checks_.begin(), checks_.end(),
                       [](const CheckRecord& c) { return c.verdict; });
}

Json Certificate::to_json() const {
    Json j;
    j["tool_version"] = kToolVersion;
    j["theorem"] = theorem_;
    j["inputs"] = inputs_;
    j["params"] = params_;
    if (expected_failure_) j["expected_failure"] = true;
    Json arr = Json::array();
    for (const CheckRecord& c : checks_) {
        Json cj;
        cj["claim"] = c.claim;
        cj["lhs"] = c.lhs;
        cj["rhs"] = c.rhs;
        cj["verdict"] = c.verdict;
        arr.push_back(std::move(cj));
    }
    j["checks"] = std::move(arr);
    j["verdict"] = verdict();
    return j;
}

namespace {

std::string relation_tag(const std::string& claim) {
    const auto pos = claim.rfind(" [");
    if (pos == std::string::npos || claim.back() != ']') return "";
    return claim.substr(pos + 2, claim.size() - pos - 3);
}

}  // namespace

bool recheck_certificate(const Json& cert) {
    if (!cert.contains("checks") || !cert.contains("verdict")) return false;
    bool all = true;
    for (const auto& c : cert["checks"]) {
        if (!c.contains("claim") || !c.contains("lhs") || !c.contains("rhs") ||
            !c.contains("verdict"))
            return false;
        const std::string tag = relation_tag(c["claim"].get<std::string>());
        const std::string lhs = c["lhs"].get<std::string>();
        const std::string rhs = c["rhs"].get<std::string>();
        const bool recorded = c["verdict"].get<bool>();
        bool recomputed;
        if (tag == "eq") {
            recomputed = lhs == rhs;
        } else if (tag == "ne") {
            recomputed = lhs != rhs;
        } else if (tag == "lt" || tag == "le" || tag == "gt" || tag == "ge") {
            const auto l = Rational::parse(lhs);
            const auto r = Rational::parse(rhs);
            if (!l || !r) return false;
            if (tag == "lt")
                recomputed = *l < *r;
            else if (tag == "le")
                recomputed = *l <= *r;
            else if (tag == "gt")
                recomputed = *l > *r;
            else
                recomputed = *l >= *r;
        } else {
            return false;  // unknown relation tag
        }
        if (recomputed != recorded) return false;
        all = all && recorded;
    }
    return all == cert["verdict"].get<bool>();
}

}  // namespace upw
