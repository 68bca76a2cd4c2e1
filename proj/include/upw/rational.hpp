#pragma once

// Arbitrary-precision exact rationals. Thin value wrapper around GMP's
// mpq_class: canonical form (denominator > 0, gcd(|num|, den) = 1) is
// maintained by GMP on every operation.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace upw {

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, unsigned long d) : v_(n, d) { v_.canonicalize(); }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    // 1/(k+1), the summand of the delta pseudo-metrics.
    static Rational inv_succ(std::uint64_t k);

    // exponent >= 0: 2^-exponent
    static Rational pow2_neg(unsigned exponent);
    // 3^exponent
    static Rational pow3(unsigned exponent);

    // Parse "p/q" or "p"; returns nullopt on malformed input.
    static std::optional<Rational> parse(const std::string& text);

    std::string str() const { return v_.get_str(); }
    double approx() const { return v_.get_d(); }
    bool is_zero() const { return v_ == 0; }

    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const { return Rational(mpq_class(v_ / o.v_)); }
    Rational& operator+=(const Rational& o) {
        v_ += o.v_;
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        v_ -= o.v_;
        return *this;
    }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    static Rational abs(const Rational& r) { return Rational(mpq_class(::abs(r.v_))); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    mpq_class v_;
};

// Value of a delta pseudo-metric over an infinite window: either an exact
// finite rational or provably infinite (harmonic divergence).
class DeltaValue {
public:
    static DeltaValue infinite() { return DeltaValue(); }
    static DeltaValue finite(Rational r) { return DeltaValue(std::move(r)); }

    bool is_finite() const { return value_.has_value(); }
    const Rational& value() const;

    std::string str() const { return is_finite() ? value_->str() : "infinite"; }

    friend bool operator==(const DeltaValue& a, const DeltaValue& b) = default;

private:
    DeltaValue() = default;
    explicit DeltaValue(Rational r) : value_(std::move(r)) {}
    std::optional<Rational> value_;
};

}  // namespace upw
