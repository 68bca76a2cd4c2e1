#pragma once

// Exact representations of finite words and ultimately periodic infinite
// words over the alphabets {0,1} and {0,1,2}, together with the primitive
// operations (tilde, switch, shift, interleave, symmetric difference,
// Cantor pairing / grids) that the rest of the toolkit is built from.
//
// A UPWord is kept in canonical form, so equality of infinite words is
// syntactic equality of the stored fields.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace upw {

using Symbol = std::uint8_t;

class FiniteWord {
public:
    FiniteWord() = default;
    FiniteWord(int alphabet, std::vector<Symbol> symbols);

    // Convenience: parse a digit string like "0110" (alphabet inferred,
    // 2 unless a '2' occurs or force3 is set).
    static FiniteWord from_digits(const std::string& digits, bool force3 = false);

    int alphabet() const { return alphabet_; }
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    Symbol at(std::size_t i) const { return symbols_.at(i); }
    const std::vector<Symbol>& symbols() const { return symbols_; }

    FiniteWord prefix(std::size_t n) const;
    FiniteWord suffix_from(std::size_t n) const;
    FiniteWord concat(const FiniteWord& other) const;
    FiniteWord append(Symbol s) const;
    bool is_prefix_of(const FiniteWord& other) const;

    std::string digits() const;

    friend bool operator==(const FiniteWord& a, const FiniteWord& b) {
        return a.alphabet_ == b.alphabet_ && a.symbols_ == b.symbols_;
    }
    friend auto operator<=>(const FiniteWord& a, const FiniteWord& b) = default;

private:
    int alphabet_ = 2;
    std::vector<Symbol> symbols_;
};

// Ultimately periodic infinite word, canonical form:
//  - the period is primitive (not a power of a shorter word),
//  - the preamble is minimal (its last symbol differs from the symbol the
//    period would produce one slot earlier).
// Two UPWords denote the same infinite word iff their fields are identical.
class UPWord {
public:
    UPWord() : UPWord(2, {}, {0}) {}
    UPWord(int alphabet, std::vector<Symbol> preamble, std::vector<Symbol> period);
    UPWord(FiniteWord preamble, FiniteWord period);

    static UPWord constant(Symbol s, int alphabet = 2);

    int alphabet() const { return alphabet_; }
    const std::vector<Symbol>& preamble() const { return preamble_; }
    const std::vector<Symbol>& period() const { return period_; }
    std::size_t preamble_size() const { return preamble_.size(); }
    std::size_t period_size() const { return period_.size(); }

    Symbol at(std::uint64_t n) const {
        if (n < preamble_.size()) return preamble_[static_cast<std::size_t>(n)];
        return period_[static_cast<std::size_t>((n - preamble_.size()) % period_.size())];
    }

    FiniteWord prefix(std::size_t n) const;

    // Word-literal text form: pre "(" period ")", e.g. "11(0)", "(01)".
    std::string literal() const;

    friend bool operator==(const UPWord& a, const UPWord& b) {
        return a.alphabet_ == b.alphabet_ && a.preamble_ == b.preamble_ &&
               a.period_ == b.period_;
    }
    friend auto operator<=>(const UPWord& a, const UPWord& b) = default;

private:
    int alphabet_ = 2;
    std::vector<Symbol> preamble_;
    std::vector<Symbol> period_;  // nonempty, primitive
};

// Element of omega(omega 2): finitely many explicit UPWord coordinates, all
// later coordinates equal to a default tail. Canonical: trailing head
// entries equal to the tail are trimmed, so equality is syntactic.
class OmegaSeq {
public:
    OmegaSeq() : OmegaSeq({}, UPWord::constant(0)) {}
    OmegaSeq(std::vector<UPWord> head, UPWord tail);

    static OmegaSeq zero();  // 0-bar: every coordinate the constant-zero word

    const std::vector<UPWord>& head() const { return head_; }
    const UPWord& tail() const { return tail_; }
    const UPWord& coord(std::size_t i) const {
        return i < head_.size() ? head_[i] : tail_;
    }

    std::string literal() const;

    friend bool operator==(const OmegaSeq& a, const OmegaSeq& b) = default;

private:
    std::vector<UPWord> head_;
    UPWord tail_;
};

// --- primitive operations ---------------------------------------------

// sigma-tilde: the purely periodic word repeating sigma.
UPWord tilde(const FiniteWord& sigma);

// switch_s: overwrite the first |s| symbols of x with s.
UPWord switch_word(const FiniteWord& s, const UPWord& x);
FiniteWord switch_fin(const FiniteWord& s, const FiniteWord& sigma);

// x_{>=n}
UPWord shift(const UPWord& x, std::uint64_t n);

// (x ⊕ y)(2k) = x(k), (x ⊕ y)(2k+1) = y(k)
UPWord interleave(const UPWord& x, const UPWord& y);

// alphabet-2 word whose n-th symbol is 1 iff x(n) != y(n)
UPWord sym_diff_pattern(const UPWord& x, const UPWord& y);

// A bound D such that two UPWords are equal iff they agree on [0, D).
std::uint64_t agreement_bound(const UPWord& x, const UPWord& y);

// First position where x and y differ, if any.
std::optional<std::uint64_t> first_difference(const UPWord& x, const UPWord& y);

// --- Cantor pairing and grids ------------------------------------------

std::uint64_t pairing(std::uint64_t i, std::uint64_t j);
std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t n);

// dom(n) = {(i,j) : <i,j> < n}
std::vector<std::pair<std::uint64_t, std::uint64_t>> dom(std::uint64_t n);

// grid(s)(i,j) = s(<i,j>), defined for (i,j) in dom(|s|)
std::optional<Symbol> grid_at(const FiniteWord& s, std::uint64_t i, std::uint64_t j);

// L(A) = sup pi_1[dom(A)] for a finite A of naturals (0 when A is empty)
std::uint64_t grid_L(const std::set<std::uint64_t>& a);

// --- literals ------------------------------------------------------------

// word := digits? '(' digits ')'  with digits over {0,1,2}; alphabet 2
// unless a '2' appears or force3 is set.
UPWord parse_word_literal(const std::string& text, bool force3 = false);

// seq := '[' (word (',' word)*)? ';' word ']'
OmegaSeq parse_seq_literal(const std::string& text, bool force3 = false);

}  // namespace upw
