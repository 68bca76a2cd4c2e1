#include <doctest.h>

#include <random>

#include "upw/gen.hpp"
#include "upw/words.hpp"

using namespace upw;

namespace {

UPWord w(const std::string& literal, bool force3 = false) {
    return parse_word_literal(literal, force3);
}

// Test-side oracle: canonicalize an arbitrary evaluator by searching the
// least (preamble, period) pair that reproduces it on a long prefix.
UPWord canonical_by_search(const std::function<Symbol(std::uint64_t)>& at, int alphabet,
                           std::size_t max_pre, std::size_t max_per, std::uint64_t horizon) {
    for (std::size_t total = 1; total <= max_pre + max_per; ++total) {
        for (std::size_t per = 1; per <= std::min(total, max_per); ++per) {
            const std::size_t pre = total - per;
            if (pre > max_pre) continue;
            bool ok = true;
            for (std::uint64_t n = pre; n + per <= horizon && ok; ++n)
                ok = at(n) == at(n + per);
            if (!ok) continue;
            std::vector<Symbol> p(pre), q(per);
            for (std::size_t i = 0; i < pre; ++i) p[i] = at(i);
            for (std::size_t i = 0; i < per; ++i) q[i] = at(pre + i);
            return UPWord(alphabet, p, q);
        }
    }
    FAIL("canonical_by_search: no representation found");
    return UPWord::constant(0);
}

}  // namespace

TEST_CASE("tilde produces canonical purely periodic words") {
    const UPWord t01 = tilde(FiniteWord::from_digits("01"));
    for (std::uint64_t n = 0; n < 6; ++n) CHECK(t01.at(n) == (n % 2 == 0 ? 0 : 1));
    CHECK(t01.preamble_size() == 0);
    CHECK(t01.period() == std::vector<Symbol>{0, 1});

    CHECK(tilde(FiniteWord::from_digits("0")) == UPWord::constant(0));
    // Primitive-root extraction, cross-checked against the search oracle.
    const UPWord t0101 = tilde(FiniteWord::from_digits("0101"));
    const auto oracle = canonical_by_search([](std::uint64_t n) { return Symbol(n % 2); }, 2, 4,
                                            4, 40);
    CHECK(t0101 == oracle);
    CHECK(t0101 == t01);

    CHECK_THROWS_AS(tilde(FiniteWord(2, {})), std::invalid_argument);
}

TEST_CASE("word literals round-trip") {
    for (const std::string text : {"(0)", "(01)", "11(0)", "0(10)", "(012)", "1(20)"}) {
        const UPWord parsed = w(text);
        CHECK(parsed.literal() == text);
    }
    CHECK_THROWS_AS(w("()"), std::invalid_argument);
    CHECK_THROWS_AS(w("01"), std::invalid_argument);
    CHECK_THROWS_AS(w("0(3)"), std::invalid_argument);
    // Non-canonical literals parse to their canonical form.
    CHECK(w("0(0)") == w("(0)"));
    CHECK(w("(0101)") == w("(01)"));
}

TEST_CASE("switch overrides a finite prefix") {
    const UPWord x = UPWord::constant(0);
    CHECK(switch_word(FiniteWord(2, {}), x) == x);

    const UPWord s11 = switch_word(FiniteWord::from_digits("11"), x);
    CHECK(s11 == w("11(0)"));

    const UPWord s1 = switch_word(FiniteWord::from_digits("1"), tilde(FiniteWord::from_digits("01")));
    // 1,1,0,1,0,... : preamble 1, period 10 (checked index by index to 20)
    const auto oracle = canonical_by_search(
        [](std::uint64_t n) { return Symbol(n == 0 ? 1 : (n % 2 == 1 ? 1 : 0)); }, 2, 3, 3, 20);
    CHECK(s1 == oracle);
    CHECK(s1 == w("1(10)"));

    // Idempotent for fixed s.
    const FiniteWord s = FiniteWord::from_digits("0110");
    const UPWord once = switch_word(s, tilde(FiniteWord::from_digits("101")));
    CHECK(switch_word(s, once) == once);
}

TEST_CASE("shift drops a prefix") {
    const UPWord x = w("01(10)");
    CHECK(shift(x, 0) == x);
    CHECK(shift(x, 1) == w("1(10)"));
    for (std::uint64_t n = 0; n < 20; ++n) CHECK(shift(x, 3).at(n) == x.at(n + 3));
    // Composition law on random words.
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const UPWord r = random_upword(rng, 2, 4, 4);
        CHECK(shift(shift(r, 2), 3) == shift(r, 5));
    }
    // Beyond the preamble a shift is a pure rotation of the period.
    const UPWord rot = shift(w("(011)"), 1);
    CHECK(rot == w("(110)"));
}

TEST_CASE("interleave splices even and odd positions") {
    CHECK(interleave(UPWord::constant(0), UPWord::constant(2, 3)) == w("(02)"));
    const UPWord xx = interleave(w("(01)"), w("(01)"));
    for (std::uint64_t n = 0; n < 12; ++n) CHECK(xx.at(n) == w("(01)").at(n / 2));
    // 0~1 with 1~: 0,1,1,1,0,1,1,1
    const UPWord mix = interleave(w("(01)"), UPWord::constant(1));
    const Symbol expect[8] = {0, 1, 1, 1, 0, 1, 1, 1};
    for (std::uint64_t n = 0; n < 8; ++n) CHECK(mix.at(n) == expect[n]);
    CHECK(mix == w("(0111)"));
}

TEST_CASE("sym_diff_pattern marks disagreement positions") {
    const UPWord x = w("(01)");
    CHECK(sym_diff_pattern(x, x) == UPWord::constant(0));
    CHECK(sym_diff_pattern(UPWord::constant(0), UPWord::constant(1)) == UPWord::constant(1));
    CHECK(sym_diff_pattern(w("(01)"), UPWord::constant(1)) == w("(10)"));
}

TEST_CASE("canonicalization is sound on random raw pairs") {
    Rng rng(13);
    std::uniform_int_distribution<std::size_t> pre_len(0, 5);
    std::uniform_int_distribution<std::size_t> per_len(1, 6);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Symbol> pre(pre_len(rng)), per(per_len(rng));
        for (auto& s : pre) s = Symbol(bit(rng));
        for (auto& s : per) s = Symbol(bit(rng));
        const UPWord canonical(2, pre, per);
        const auto raw_at = [&](std::uint64_t n) {
            return n < pre.size() ? pre[n] : per[(n - pre.size()) % per.size()];
        };
        const std::uint64_t bound =
            3 * (pre.size() + per.size()) * (pre.size() + per.size());
        for (std::uint64_t n = 0; n <= bound; ++n) CHECK(canonical.at(n) == raw_at(n));
        // Equal words canonicalize identically: repeat the period and push
        // one period symbol into the preamble.
        std::vector<Symbol> pre2 = pre;
        pre2.push_back(per[0]);
        std::vector<Symbol> per2(per.begin() + 1, per.end());
        per2.push_back(per[0]);
        std::vector<Symbol> per_doubled = per;
        per_doubled.insert(per_doubled.end(), per.begin(), per.end());
        CHECK(UPWord(2, pre2, per2) == canonical);
        CHECK(UPWord(2, pre, per_doubled) == canonical);
    }
}

TEST_CASE("pairing is the Cantor bijection") {
    CHECK(pairing(0, 0) == 0);
    CHECK(pairing(1, 0) == 1);
    CHECK(pairing(0, 1) == 2);
    CHECK(pairing(2, 0) == 3);
    for (std::uint64_t i = 0; i <= 100; ++i)
        for (std::uint64_t j = 0; j <= 100; ++j)
            CHECK(unpair(pairing(i, j)) == std::make_pair(i, j));
    CHECK(grid_L({pairing(0, 0), pairing(2, 0)}) == 2);
}

TEST_CASE("grids read through the pairing") {
    const FiniteWord s = FiniteWord::from_digits("0110");
    CHECK(grid_at(s, 0, 0) == Symbol(0));
    CHECK(grid_at(s, 1, 0) == Symbol(1));
    CHECK(grid_at(s, 0, 1) == Symbol(1));
    CHECK(grid_at(s, 2, 0) == Symbol(0));
    CHECK(grid_at(s, 5, 5) == std::nullopt);
    CHECK(dom(4).size() == 4);
}

TEST_CASE("sequence literals and canonical trimming") {
    const OmegaSeq s = parse_seq_literal("[(1),11(0);(0)]");
    CHECK(s.head().size() == 2);
    CHECK(s.coord(0) == w("(1)"));
    CHECK(s.coord(5) == w("(0)"));
    // Trailing head entries equal to the tail are trimmed.
    const OmegaSeq t = parse_seq_literal("[(1),(0),(0);(0)]");
    CHECK(t.head().size() == 1);
    CHECK(t == parse_seq_literal("[(1);(0)]"));
    CHECK(OmegaSeq::zero().literal() == "[;(0)]");
}
