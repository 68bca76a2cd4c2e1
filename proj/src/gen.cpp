#include "upw/gen.hpp"

#include <set>

namespace upw {

FiniteWord random_finite_word(Rng& rng, int alphabet, std::size_t length) {
    std::uniform_int_distribution<int> sym(0, alphabet - 1);
    std::vector<Symbol> out(length);
    for (Symbol& s : out) s = static_cast<Symbol>(sym(rng));
    return FiniteWord(alphabet, std::move(out));
}

UPWord random_upword(Rng& rng, int alphabet, std::size_t max_preamble, std::size_t max_period) {
    std::uniform_int_distribution<std::size_t> pre_len(0, max_preamble);
    std::uniform_int_distribution<std::size_t> per_len(1, max_period);
    const FiniteWord pre = random_finite_word(rng, alphabet, pre_len(rng));
    const FiniteWord per = random_finite_word(rng, alphabet, per_len(rng));
    return UPWord(alphabet, pre.symbols(), per.symbols());
}

namespace {

BlockPair random_block_pair(Rng& rng, std::size_t max_block_len) {
    std::uniform_int_distribution<std::size_t> len(1, max_block_len);
    const std::size_t n = len(rng);
    std::uniform_int_distribution<int> bit(0, 1);
    std::vector<Symbol> v0(n), v1(n);
    v0[0] = 0;
    v1[0] = 1;
    for (std::size_t i = 1; i < n; ++i) {
        v0[i] = static_cast<Symbol>(bit(rng));
        v1[i] = static_cast<Symbol>(bit(rng));
    }
    return BlockPair{std::move(v0), std::move(v1)};
}

}  // namespace

E0Tree random_e0_tree(Rng& rng, std::size_t max_stem, std::size_t max_block_len) {
    std::uniform_int_distribution<std::size_t> stem_len(0, max_stem);
    std::uniform_int_distribution<std::size_t> explicit_count(0, 2);
    std::uniform_int_distribution<std::size_t> cycle_count(1, 3);
    const FiniteWord stem = random_finite_word(rng, 2, stem_len(rng));
    std::vector<BlockPair> explicit_blocks(explicit_count(rng));
    for (BlockPair& b : explicit_blocks) b = random_block_pair(rng, max_block_len);
    std::vector<BlockPair> cycle(cycle_count(rng));
    for (BlockPair& b : cycle) b = random_block_pair(rng, max_block_len);
    return E0Tree(stem.symbols(), std::move(explicit_blocks), std::move(cycle));
}

FiniteTree random_pruned_tree(Rng& rng, std::size_t depth) {
    std::uniform_int_distribution<int> kind(0, 2);  // 0: left, 1: right, 2: both
    std::set<FiniteWord> nodes;
    std::vector<FiniteWord> frontier{FiniteWord(2, {})};
    nodes.insert(frontier.front());
    for (std::size_t len = 0; len < depth; ++len) {
        std::vector<FiniteWord> next;
        for (const FiniteWord& w : frontier) {
            const int k = kind(rng);
            for (Symbol i : {0, 1}) {
                if (k == 2 || k == i) {
                    FiniteWord c = w.append(i);
                    nodes.insert(c);
                    next.push_back(std::move(c));
                }
            }
        }
        frontier = std::move(next);
    }
    return FiniteTree(depth, std::move(nodes));
}

UPWord random_alternating_word3(Rng& rng, std::size_t max_preamble, std::size_t max_period) {
    // Rejection-free: extend symbol by symbol avoiding the previous one and,
    // at the period seam, the wrap-around neighbours.
    std::uniform_int_distribution<std::size_t> pre_len(0, max_preamble);
    std::uniform_int_distribution<std::size_t> per_len(2, std::max<std::size_t>(2, max_period));
    std::uniform_int_distribution<int> pick(0, 1);
    const std::size_t np = pre_len(rng);
    const std::size_t kp = per_len(rng);
    std::vector<Symbol> all(np + kp);
    int prev = -1;
    for (std::size_t i = 0; i < all.size(); ++i) {
        int choices[2], c = 0;
        for (int s = 0; s < 3; ++s)
            if (s != prev) choices[c++] = s;
        all[i] = static_cast<Symbol>(choices[pick(rng)]);
        prev = all[i];
    }
    // Fix the wrap seam of the period: last period symbol vs first.
    if (all.back() == all[np]) {
        for (int s = 0; s < 3; ++s)
            if (s != all[np] && s != all[all.size() - 2]) {
                all.back() = static_cast<Symbol>(s);
                break;
            }
    }
    std::vector<Symbol> pre(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(np));
    std::vector<Symbol> per(all.begin() + static_cast<std::ptrdiff_t>(np), all.end());
    return UPWord(3, std::move(pre), std::move(per));
}

namespace {

bool alternating_ok(const UPWord& w) {
    const std::uint64_t bound = w.preamble_size() + 2 * w.period_size() + 2;
    for (std::uint64_t n = 0; n + 1 < bound; ++n)
        if (w.at(n) == w.at(n + 1)) return false;
    return true;
}

void enumerate_words(std::size_t len, std::vector<std::vector<Symbol>>& out) {
    out.clear();
    std::vector<Symbol> cur(len, 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = len;
        while (i > 0 && cur[i - 1] == 2) cur[--i] = 0;
        if (i == 0) break;
        ++cur[i - 1];
    }
}

}  // namespace

std::vector<UPWord> enumerate_alternating_words3(std::size_t max_preamble,
                                                 std::size_t max_period) {
    std::set<UPWord> seen;
    std::vector<UPWord> out;
    std::vector<std::vector<Symbol>> pres, pers;
    for (std::size_t np = 0; np <= max_preamble; ++np) {
        enumerate_words(np, pres);
        for (std::size_t kp = 1; kp <= max_period; ++kp) {
            enumerate_words(kp, pers);
            for (const auto& pre : pres) {
                for (const auto& per : pers) {
                    UPWord w(3, pre, per);
                    // Only canonical representatives exactly as written.
                    if (w.preamble().size() != np || w.period().size() != kp) continue;
                    if (!alternating_ok(w)) continue;
                    if (seen.insert(w).second) out.push_back(std::move(w));
                }
            }
        }
    }
    return out;
}

}  // namespace upw
