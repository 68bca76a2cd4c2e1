#include "upw/eqrel.hpp"

#include <algorithm>
#include <stdexcept>

namespace upw {

bool decide_E0(const UPWord& x, const UPWord& y) {
    if (x.alphabet() != y.alphabet())
        throw std::invalid_argument("decide_E0: alphabet mismatch");
    const UPWord d = sym_diff_pattern(x, y);
    return std::all_of(d.period().begin(), d.period().end(),
                       [](Symbol s) { return s == 0; });
}

Rational delta_window(std::uint64_t m, std::uint64_t n, const UPWord& x, const UPWord& y) {
    if (m > n) throw std::invalid_argument("delta_window: m > n");
    Rational sum;
    for (std::uint64_t k = m; k < n; ++k)
        if (x.at(k) != y.at(k)) sum += Rational::inv_succ(k);
    return sum;
}

Rational delta_window(std::uint64_t m, std::uint64_t n, const FiniteWord& x, const FiniteWord& y) {
    if (m > n) throw std::invalid_argument("delta_window: m > n");
    if (n > x.size() || n > y.size())
        throw std::invalid_argument("delta_window: window past end of finite word");
    Rational sum;
    for (std::uint64_t k = m; k < n; ++k)
        if (x.at(static_cast<std::size_t>(k)) != y.at(static_cast<std::size_t>(k)))
            sum += Rational::inv_succ(k);
    return sum;
}

DeltaValue delta_total(std::uint64_t m, const UPWord& x, const UPWord& y) {
    const UPWord d = sym_diff_pattern(x, y);
    const bool periodic_ones =
        std::any_of(d.period().begin(), d.period().end(), [](Symbol s) { return s != 0; });
    if (periodic_ones) return DeltaValue::infinite();
    // Differences occur only in the preamble of the pattern.
    Rational sum;
    for (std::uint64_t k = m; k < d.preamble_size(); ++k)
        if (d.at(k) == 1) sum += Rational::inv_succ(k);
    return DeltaValue::finite(std::move(sum));
}

bool decide_E2(const UPWord& x, const UPWord& y) {
    return delta_total(0, x, y).is_finite();
}

bool decide_Etail(const UPWord& x, const UPWord& y) {
    if (x.alphabet() != y.alphabet())
        throw std::invalid_argument("decide_Etail: alphabet mismatch");
    const std::uint64_t r_max = x.preamble_size() + x.period_size();
    const std::uint64_t s_max = y.preamble_size() + y.period_size();
    for (std::uint64_t r = 0; r <= r_max; ++r) {
        const UPWord xr = shift(x, r);
        for (std::uint64_t s = 0; s <= s_max; ++s)
            if (xr == shift(y, s)) return true;
    }
    return false;
}

const std::array<Perm3, 6> kS3 = {{{0, 1, 2},
                                   {0, 2, 1},
                                   {1, 0, 2},
                                   {1, 2, 0},
                                   {2, 0, 1},
                                   {2, 1, 0}}};

UPWord s3_act(const Perm3& g, const UPWord& x) {
    if (x.alphabet() != 3) throw std::invalid_argument("s3_act: alphabet-3 word required");
    std::vector<Symbol> pre = x.preamble();
    std::vector<Symbol> per = x.period();
    for (Symbol& s : pre) s = g[s];
    for (Symbol& s : per) s = g[s];
    return UPWord(3, std::move(pre), std::move(per));
}

bool decide_F(const UPWord& x, const UPWord& y) {
    for (const Perm3& g : kS3)
        if (decide_Etail(s3_act(g, x), y)) return true;
    return false;
}

bool decide_E1(const OmegaSeq& x, const OmegaSeq& y) {
    // Heads are finite, so only the default tails decide eventual equality.
    return x.tail() == y.tail();
}

bool decide_E3(const OmegaSeq& x, const OmegaSeq& y) {
    const std::size_t n = std::max(x.head().size(), y.head().size());
    for (std::size_t i = 0; i < n; ++i)
        if (!decide_E0(x.coord(i), y.coord(i))) return false;
    return decide_E0(x.tail(), y.tail());
}

Rel rel_from_name(const std::string& name) {
    if (name == "e0") return Rel::E0;
    if (name == "e1") return Rel::E1;
    if (name == "e2") return Rel::E2;
    if (name == "e3") return Rel::E3;
    if (name == "etail") return Rel::Etail;
    if (name == "f") return Rel::F;
    if (name == "equal") return Rel::Equality;
    throw std::invalid_argument("unknown relation tag: " + name);
}

std::string rel_name(Rel r) {
    switch (r) {
        case Rel::E0: return "e0";
        case Rel::E1: return "e1";
        case Rel::E2: return "e2";
        case Rel::E3: return "e3";
        case Rel::Etail: return "etail";
        case Rel::F: return "f";
        case Rel::Equality: return "equal";
    }
    throw std::logic_error("bad Rel");
}

namespace {

bool related(const UPWord& a, const UPWord& b, Rel rel) {
    switch (rel) {
        case Rel::E0: return decide_E0(a, b);
        case Rel::E2: return decide_E2(a, b);
        case Rel::Etail: return decide_Etail(a, b);
        case Rel::F: return decide_F(a, b);
        case Rel::Equality: return a == b;
        default: throw std::invalid_argument("tuple_ok: relation needs sequence values");
    }
}

bool related(const OmegaSeq& a, const OmegaSeq& b, Rel rel) {
    switch (rel) {
        case Rel::E1: return decide_E1(a, b);
        case Rel::E3: return decide_E3(a, b);
        case Rel::Equality: return a == b;
        default: throw std::invalid_argument("tuple_ok: relation needs word values");
    }
}

template <class T>
bool tuple_ok_impl(const std::vector<T>& xs, Rel rel) {
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (related(xs[i], xs[j], rel)) return false;
    return true;
}

}  // namespace

bool tuple_ok(const std::vector<UPWord>& xs, Rel rel) { return tuple_ok_impl(xs, rel); }
bool tuple_ok(const std::vector<OmegaSeq>& xs, Rel rel) { return tuple_ok_impl(xs, rel); }

}  // namespace upw
