#pragma once

// Self-contained verification certificates. A certificate records one
// theorem-level verification: the inputs (as word/tree literals), the
// parameters, and a list of checks, each carrying both sides of its
// comparison as exact strings. The global verdict is the conjunction of the
// check verdicts, and a certificate can be re-checked offline from its own
// content alone.
//
// Relation tags are encoded as a claim suffix: "... [lt]", "[le]", "[eq]",
// "[ne]", "[gt]", "[ge]". For [lt]/[le]/[gt]/[ge] both sides parse as exact
// rationals; [eq]/[ne] compare strings literally.

#include <json.hpp>

#include <string>
#include <vector>

#include "upw/rational.hpp"

namespace upw {

using Json = nlohmann::ordered_json;

struct CheckRecord {
    std::string claim;
    std::string lhs;
    std::string rhs;
    bool verdict = false;
};

class Certificate {
public:
    explicit Certificate(std::string theorem) : theorem_(std::move(theorem)) {}

    void set_input(const std::string& key, const std::string& value) { inputs_[key] = value; }
    void set_input(const std::string& key, const Json& value) { inputs_[key] = value; }
    void set_param(const std::string& key, const std::string& value) { params_[key] = value; }
    void set_param(const std::string& key, std::int64_t value) { params_[key] = value; }
    void set_expected_failure(bool v) { expected_failure_ = v; }

    bool check_lt(const std::string& claim, const Rational& lhs, const Rational& rhs);
    bool check_le(const std::string& claim, const Rational& lhs, const Rational& rhs);
    bool check_gt(const std::string& claim, const Rational& lhs, const Rational& rhs);
    bool check_ge(const std::string& claim, const Rational& lhs, const Rational& rhs);
    bool check_eq(const std::string& claim, const std::string& lhs, const std::string& rhs);
    bool check_ne(const std::string& claim, const std::string& lhs, const std::string& rhs);
    bool check_true(const std::string& claim, bool actual);

    // A check already evaluated elsewhere (e.g. a budget-exhaustion note).
    void record(CheckRecord rec) { checks_.push_back(std::move(rec)); }

    const std::vector<CheckRecord>& checks() const { return checks_; }
    bool verdict() const;
    const std::string& theorem() const { return theorem_; }

    Json to_json() const;

private:
    std::string theorem_;
    Json inputs_ = Json::object();
    Json params_ = Json::object();
    std::vector<CheckRecord> checks_;
    bool expected_failure_ = false;
};

// Offline re-check: re-evaluates every check from recorded lhs/rhs and the
// claim's relation tag, and re-derives the global verdict. Returns true iff
// every recorded verdict and the global verdict are reproducible.
bool recheck_certificate(const Json& cert);

}  // namespace upw
