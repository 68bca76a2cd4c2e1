#include "upw/words.hpp"

#include <algorithm>
#include <numeric>

namespace upw {

namespace {

void check_alphabet(int alphabet) {
    if (alphabet != 2 && alphabet != 3)
        throw std::invalid_argument("alphabet must be 2 or 3");
}

void check_symbols(int alphabet, const std::vector<Symbol>& symbols) {
    for (Symbol s : symbols)
        if (s >= alphabet)
            throw std::invalid_argument("symbol out of alphabet range");
}

// Smallest d dividing |w| with w = (w restricted to d)^(|w|/d).
std::vector<Symbol> primitive_root(std::vector<Symbol> w) {
    const std::size_t k = w.size();
    for (std::size_t d = 1; d <= k / 2; ++d) {
        if (k % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < k && ok; ++i)
            if (w[i] != w[i % d]) ok = false;
        if (ok) {
            w.resize(d);
            return w;
        }
    }
    return w;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    return a / std::gcd(a, b) * b;
}

}  // namespace

// --- FiniteWord -----------------------------------------------------------

FiniteWord::FiniteWord(int alphabet, std::vector<Symbol> symbols)
    : alphabet_(alphabet), symbols_(std::move(symbols)) {
    check_alphabet(alphabet_);
    check_symbols(alphabet_, symbols_);
}

FiniteWord FiniteWord::from_digits(const std::string& digits, bool force3) {
    std::vector<Symbol> syms;
    bool has2 = false;
    for (char c : digits) {
        if (c < '0' || c > '2') throw std::invalid_argument("digit outside {0,1,2}");
        if (c == '2') has2 = true;
        syms.push_back(static_cast<Symbol>(c - '0'));
    }
    return FiniteWord((has2 || force3) ? 3 : 2, std::move(syms));
}

FiniteWord FiniteWord::prefix(std::size_t n) const {
    if (n > symbols_.size()) throw std::invalid_argument("prefix longer than word");
    return FiniteWord(alphabet_, std::vector<Symbol>(symbols_.begin(), symbols_.begin() + n));
}

FiniteWord FiniteWord::suffix_from(std::size_t n) const {
    if (n > symbols_.size()) throw std::invalid_argument("suffix start past end");
    return FiniteWord(alphabet_, std::vector<Symbol>(symbols_.begin() + n, symbols_.end()));
}

FiniteWord FiniteWord::concat(const FiniteWord& other) const {
    std::vector<Symbol> syms = symbols_;
    syms.insert(syms.end(), other.symbols_.begin(), other.symbols_.end());
    return FiniteWord(std::max(alphabet_, other.alphabet_), std::move(syms));
}

FiniteWord FiniteWord::append(Symbol s) const {
    std::vector<Symbol> syms = symbols_;
    syms.push_back(s);
    return FiniteWord(alphabet_, std::move(syms));
}

bool FiniteWord::is_prefix_of(const FiniteWord& other) const {
    if (size() > other.size()) return false;
    return std::equal(symbols_.begin(), symbols_.end(), other.symbols_.begin());
}

std::string FiniteWord::digits() const {
    std::string out;
    out.reserve(symbols_.size());
    for (Symbol s : symbols_) out.push_back(static_cast<char>('0' + s));
    return out;
}

// --- UPWord ---------------------------------------------------------------

UPWord::UPWord(int alphabet, std::vector<Symbol> preamble, std::vector<Symbol> period)
    : alphabet_(alphabet), preamble_(std::move(preamble)), period_(std::move(period)) {
    check_alphabet(alphabet_);
    check_symbols(alphabet_, preamble_);
    check_symbols(alphabet_, period_);
    if (period_.empty()) throw std::invalid_argument("period must be nonempty");
    period_ = primitive_root(std::move(period_));
    // Minimal preamble: while the last preamble symbol equals the symbol the
    // period would produce one slot earlier, absorb it (rotate period right).
    while (!preamble_.empty() && preamble_.back() == period_.back()) {
        preamble_.pop_back();
        std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
}

UPWord::UPWord(FiniteWord preamble, FiniteWord period)
    : UPWord(std::max(preamble.alphabet(), period.alphabet()), preamble.symbols(),
             period.symbols()) {}

UPWord UPWord::constant(Symbol s, int alphabet) {
    return UPWord(alphabet, {}, {s});
}

FiniteWord UPWord::prefix(std::size_t n) const {
    std::vector<Symbol> syms(n);
    for (std::size_t i = 0; i < n; ++i) syms[i] = at(i);
    return FiniteWord(alphabet_, std::move(syms));
}

std::string UPWord::literal() const {
    std::string out;
    for (Symbol s : preamble_) out.push_back(static_cast<char>('0' + s));
    out.push_back('(');
    for (Symbol s : period_) out.push_back(static_cast<char>('0' + s));
    out.push_back(')');
    return out;
}

// --- OmegaSeq ---------------------------------------------------------------

OmegaSeq::OmegaSeq(std::vector<UPWord> head, UPWord tail)
    : head_(std::move(head)), tail_(std::move(tail)) {
    while (!head_.empty() && head_.back() == tail_) head_.pop_back();
}

OmegaSeq OmegaSeq::zero() {
    return OmegaSeq({}, UPWord::constant(0));
}

std::string OmegaSeq::literal() const {
    std::string out = "[";
    for (std::size_t i = 0; i < head_.size(); ++i) {
        if (i) out += ",";
        out += head_[i].literal();
    }
    out += ";";
    out += tail_.literal();
    out += "]";
    return out;
}

// --- operations -------------------------------------------------------------

UPWord tilde(const FiniteWord& sigma) {
    if (sigma.empty()) throw std::invalid_argument("tilde of the empty word");
    return UPWord(sigma.alphabet(), {}, sigma.symbols());
}

UPWord switch_word(const FiniteWord& s, const UPWord& x) {
    if (s.alphabet() > x.alphabet())
        throw std::invalid_argument("switch: alphabet mismatch");
    const std::size_t m = std::max(s.size(), x.preamble_size());
    std::vector<Symbol> pre(m);
    for (std::size_t n = 0; n < m; ++n)
        pre[n] = n < s.size() ? s.at(n) : x.at(n);
    // At position m we are inside x's periodic part; rotate accordingly.
    std::vector<Symbol> per = x.period();
    std::rotate(per.begin(),
                per.begin() + static_cast<std::ptrdiff_t>((m - x.preamble_size()) % per.size()),
                per.end());
    return UPWord(x.alphabet(), std::move(pre), std::move(per));
}

FiniteWord switch_fin(const FiniteWord& s, const FiniteWord& sigma) {
    std::vector<Symbol> syms(sigma.size());
    for (std::size_t n = 0; n < sigma.size(); ++n)
        syms[n] = n < s.size() ? s.at(n) : sigma.at(n);
    return FiniteWord(std::max(s.alphabet(), sigma.alphabet()), std::move(syms));
}

UPWord shift(const UPWord& x, std::uint64_t n) {
    std::vector<Symbol> pre;
    for (std::uint64_t k = n; k < x.preamble_size(); ++k)
        pre.push_back(x.preamble()[static_cast<std::size_t>(k)]);
    std::vector<Symbol> per = x.period();
    const std::uint64_t start = n < x.preamble_size() ? 0 : (n - x.preamble_size()) % per.size();
    std::rotate(per.begin(), per.begin() + static_cast<std::ptrdiff_t>(start), per.end());
    return UPWord(x.alphabet(), std::move(pre), std::move(per));
}

UPWord interleave(const UPWord& x, const UPWord& y) {
    const std::size_t pre_halves = std::max(x.preamble_size(), y.preamble_size());
    const std::uint64_t per_halves = lcm_u64(x.period_size(), y.period_size());
    std::vector<Symbol> pre(2 * pre_halves);
    for (std::size_t k = 0; k < pre_halves; ++k) {
        pre[2 * k] = x.at(k);
        pre[2 * k + 1] = y.at(k);
    }
    std::vector<Symbol> per(2 * per_halves);
    for (std::uint64_t k = 0; k < per_halves; ++k) {
        per[static_cast<std::size_t>(2 * k)] = x.at(pre_halves + k);
        per[static_cast<std::size_t>(2 * k + 1)] = y.at(pre_halves + k);
    }
    return UPWord(std::max(x.alphabet(), y.alphabet()), std::move(pre), std::move(per));
}

UPWord sym_diff_pattern(const UPWord& x, const UPWord& y) {
    if (x.alphabet() != y.alphabet())
        throw std::invalid_argument("sym_diff_pattern: alphabet mismatch");
    const std::size_t pre_len = std::max(x.preamble_size(), y.preamble_size());
    const std::uint64_t per_len = lcm_u64(x.period_size(), y.period_size());
    std::vector<Symbol> pre(pre_len);
    for (std::size_t n = 0; n < pre_len; ++n) pre[n] = x.at(n) != y.at(n) ? 1 : 0;
    std::vector<Symbol> per(static_cast<std::size_t>(per_len));
    for (std::uint64_t n = 0; n < per_len; ++n)
        per[static_cast<std::size_t>(n)] = x.at(pre_len + n) != y.at(pre_len + n) ? 1 : 0;
    return UPWord(2, std::move(pre), std::move(per));
}

std::uint64_t agreement_bound(const UPWord& x, const UPWord& y) {
    return std::max(x.preamble_size(), y.preamble_size()) +
           lcm_u64(x.period_size(), y.period_size());
}

std::optional<std::uint64_t> first_difference(const UPWord& x, const UPWord& y) {
    if (x.alphabet() == y.alphabet() && x == y) return std::nullopt;
    const std::uint64_t bound = agreement_bound(x, y);
    for (std::uint64_t n = 0; n < bound; ++n)
        if (x.at(n) != y.at(n)) return n;
    return std::nullopt;  // equal as infinite words despite alphabet tag
}

// --- pairing ------------------------------------------------------------------

std::uint64_t pairing(std::uint64_t i, std::uint64_t j) {
    const std::uint64_t w = i + j;
    return w * (w + 1) / 2 + j;
}

std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t n) {
    std::uint64_t w = 0;
    while ((w + 1) * (w + 2) / 2 <= n) ++w;
    const std::uint64_t t = w * (w + 1) / 2;
    const std::uint64_t j = n - t;
    return {w - j, j};
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> dom(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::uint64_t k = 0; k < n; ++k) out.push_back(unpair(k));
    return out;
}

std::optional<Symbol> grid_at(const FiniteWord& s, std::uint64_t i, std::uint64_t j) {
    const std::uint64_t code = pairing(i, j);
    if (code >= s.size()) return std::nullopt;
    return s.at(static_cast<std::size_t>(code));
}

std::uint64_t grid_L(const std::set<std::uint64_t>& a) {
    std::uint64_t sup = 0;
    for (std::uint64_t code : a) sup = std::max(sup, unpair(code).first);
    return sup;
}

// --- literals -------------------------------------------------------------------

UPWord parse_word_literal(const std::string& text, bool force3) {
    const auto open = text.find('(');
    const auto close = text.find(')');
    if (open == std::string::npos || close == std::string::npos || close != text.size() - 1 ||
        close < open)
        throw std::invalid_argument("word literal must look like pre(period): \"" + text + "\"");
    const std::string pre = text.substr(0, open);
    const std::string per = text.substr(open + 1, close - open - 1);
    if (per.empty()) throw std::invalid_argument("word literal has empty period: \"" + text + "\"");
    const bool has2 = text.find('2') != std::string::npos;
    const bool use3 = has2 || force3;
    auto digits = [&](const std::string& d, std::size_t offset) {
        std::vector<Symbol> syms;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const char c = d[i];
            if (c < '0' || c > '2')
                throw std::invalid_argument("word literal: bad digit at position " +
                                            std::to_string(offset + i));
            syms.push_back(static_cast<Symbol>(c - '0'));
        }
        return syms;
    };
    return UPWord(use3 ? 3 : 2, digits(pre, 0), digits(per, open + 1));
}

OmegaSeq parse_seq_literal(const std::string& text, bool force3) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        throw std::invalid_argument("sequence literal must look like [w,...;tail]");
    const std::string body = text.substr(1, text.size() - 2);
    const auto semi = body.rfind(';');
    if (semi == std::string::npos)
        throw std::invalid_argument("sequence literal missing ';tail'");
    const std::string head_part = body.substr(0, semi);
    const std::string tail_part = body.substr(semi + 1);
    std::vector<UPWord> head;
    std::size_t start = 0;
    while (start < head_part.size()) {
        auto comma = head_part.find(',', start);
        if (comma == std::string::npos) comma = head_part.size();
        head.push_back(parse_word_literal(head_part.substr(start, comma - start), force3));
        start = comma + 1;
    }
    return OmegaSeq(std::move(head), parse_word_literal(tail_part, force3));
}

}  // namespace upw
