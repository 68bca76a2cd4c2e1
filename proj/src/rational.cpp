#include "upw/rational.hpp"

#include <stdexcept>

namespace upw {

Rational Rational::inv_succ(std::uint64_t k) {
    mpz_class den;
    mpz_import(den.get_mpz_t(), 1, 1, sizeof(k), 0, 0, &k);
    den += 1;
    mpq_class q(1);
    q /= mpq_class(den);
    return Rational(std::move(q));
}

Rational Rational::pow2_neg(unsigned exponent) {
    mpz_class den(1);
    den <<= exponent;
    mpq_class q(1);
    q /= mpq_class(den);
    return Rational(std::move(q));
}

Rational Rational::pow3(unsigned exponent) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 3, exponent);
    return Rational(mpq_class(p));
}

std::optional<Rational> Rational::parse(const std::string& text) {
    if (text.empty()) return std::nullopt;
    for (char c : text)
        if (!(c == '/' || c == '-' || (c >= '0' && c <= '9'))) return std::nullopt;
    mpq_class v;
    if (v.set_str(text, 10) != 0) return std::nullopt;
    if (v.get_den() == 0) return std::nullopt;
    v.canonicalize();
    return Rational(std::move(v));
}

const Rational& DeltaValue::value() const {
    if (!value_) throw std::logic_error("DeltaValue: value() on infinite");
    return *value_;
}

}  // namespace upw
