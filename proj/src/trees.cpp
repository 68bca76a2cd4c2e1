#include "upw/trees.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace upw {

// --- FiniteTree ------------------------------------------------------------

FiniteTree::FiniteTree(std::size_t depth, std::set<FiniteWord> nodes)
    : depth_(depth), nodes_(std::move(nodes)) {
    for (const FiniteWord& w : nodes_) {
        if (w.alphabet() != 2) throw std::invalid_argument("FiniteTree: alphabet-2 nodes only");
        if (w.size() > depth_) throw std::invalid_argument("FiniteTree: node longer than depth");
        if (!w.empty() && nodes_.count(w.prefix(w.size() - 1)) == 0)
            throw std::invalid_argument("FiniteTree: not prefix-closed");
    }
}

FiniteTree FiniteTree::full(std::size_t depth) {
    std::set<FiniteWord> nodes;
    std::vector<FiniteWord> frontier{FiniteWord(2, {})};
    nodes.insert(frontier.front());
    for (std::size_t len = 0; len < depth; ++len) {
        std::vector<FiniteWord> next;
        for (const FiniteWord& w : frontier)
            for (Symbol i : {0, 1}) {
                FiniteWord c = w.append(i);
                nodes.insert(c);
                next.push_back(std::move(c));
            }
        frontier = std::move(next);
    }
    return FiniteTree(depth, std::move(nodes));
}

std::vector<FiniteWord> FiniteTree::children(const FiniteWord& w) const {
    std::vector<FiniteWord> out;
    if (w.size() >= depth_) return out;
    for (Symbol i : {0, 1}) {
        FiniteWord c = w.append(i);
        if (contains(c)) out.push_back(std::move(c));
    }
    return out;
}

bool FiniteTree::is_split_node(const FiniteWord& w) const {
    return children(w).size() == 2;
}

bool FiniteTree::is_pruned() const {
    for (const FiniteWord& w : nodes_)
        if (w.size() < depth_ && children(w).empty()) return false;
    return true;
}

FiniteWord lambda_map(const FiniteTree& p, const FiniteWord& s) {
    if (p.empty()) throw TreeDepthError("lambda: empty tree");
    FiniteWord cur(2, {});
    for (std::size_t k = 0; k < s.size(); ++k) {
        // Minimal split node extending cur: follow forced children.
        FiniteWord t = cur;
        while (!p.is_split_node(t)) {
            const auto ch = p.children(t);
            if (ch.size() != 1)
                throw TreeDepthError("lambda: no split node within depth above " + t.digits());
            t = ch.front();
        }
        cur = t.append(s.at(k));
    }
    return cur;
}

FiniteTree xi_map(const FiniteTree& p, const FiniteWord& s) {
    const FiniteWord t = lambda_map(p, s);
    std::set<FiniteWord> nodes;
    for (const FiniteWord& u : p.nodes())
        if (u.is_prefix_of(t) || t.is_prefix_of(u)) nodes.insert(u);
    return FiniteTree(p.depth(), std::move(nodes));
}

std::set<FiniteWord> splits(const FiniteTree& p, std::size_t n) {
    std::set<FiniteWord> out;
    std::vector<FiniteWord> level{FiniteWord(2, {})};
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<FiniteWord> next;
        for (const FiniteWord& u : level)
            for (Symbol i : {0, 1}) next.push_back(u.append(i));
        level = std::move(next);
    }
    for (const FiniteWord& u : level) out.insert(lambda_map(p, u));
    if (out.size() != (std::size_t{1} << n))
        throw TreeDepthError("splits: n-splits not distinct (malformed tree)");
    return out;
}

// --- E0Tree -------------------------------------------------------------------

namespace {

void check_block(const BlockPair& b) {
    if (b.v0.size() != b.v1.size() || b.v0.empty())
        throw std::invalid_argument("E0Tree: sibling blocks must be nonempty, equal length");
    if (b.v0[0] != 0 || b.v1[0] != 1)
        throw std::invalid_argument("E0Tree: block v_i must start with i");
    for (Symbol s : b.v0)
        if (s > 1) throw std::invalid_argument("E0Tree: alphabet-2 blocks only");
    for (Symbol s : b.v1)
        if (s > 1) throw std::invalid_argument("E0Tree: alphabet-2 blocks only");
}

std::vector<BlockPair> primitive_cycle(std::vector<BlockPair> w) {
    const std::size_t k = w.size();
    for (std::size_t d = 1; d <= k / 2; ++d) {
        if (k % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < k && ok; ++i)
            if (!(w[i] == w[i % d])) ok = false;
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

E0Tree::E0Tree(std::vector<Symbol> stem, std::vector<BlockPair> explicit_blocks,
               std::vector<BlockPair> cycle_blocks)
    : stem_(std::move(stem)), explicit_(std::move(explicit_blocks)),
      cycle_(std::move(cycle_blocks)) {
    for (Symbol s : stem_)
        if (s > 1) throw std::invalid_argument("E0Tree: alphabet-2 stem only");
    if (cycle_.empty()) throw std::invalid_argument("E0Tree: cycle must be nonempty");
    for (const BlockPair& b : explicit_) check_block(b);
    for (const BlockPair& b : cycle_) check_block(b);
    // Canonical block sequence, mirroring UPWord canonicalization.
    cycle_ = primitive_cycle(std::move(cycle_));
    while (!explicit_.empty() && explicit_.back() == cycle_.back()) {
        explicit_.pop_back();
        std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
    }
}

E0Tree E0Tree::identity() {
    return E0Tree({}, {}, {BlockPair{{0}, {1}}});
}

FiniteWord E0Tree::phi(const FiniteWord& sigma) const {
    std::vector<Symbol> out = stem_;
    for (std::size_t n = 0; n < sigma.size(); ++n) {
        const auto& v = block(n).branch(sigma.at(n));
        out.insert(out.end(), v.begin(), v.end());
    }
    return FiniteWord(2, std::move(out));
}

std::uint64_t E0Tree::level_bound(std::int64_t n) const {
    if (n < -1) throw std::invalid_argument("level_bound: n >= -1 required");
    std::uint64_t len = stem_.size();
    for (std::int64_t k = 0; k <= n; ++k) len += block(static_cast<std::size_t>(k)).length();
    return len;
}

bool E0Tree::node(const FiniteWord& w) const {
    std::size_t pos = 0;
    for (; pos < w.size() && pos < stem_.size(); ++pos)
        if (w.at(pos) != stem_[pos]) return false;
    if (w.size() <= stem_.size()) return true;
    std::size_t level = 0;
    while (pos < w.size()) {
        const Symbol i = w.at(pos);
        const auto& v = block(level).branch(i);
        for (std::size_t j = 0; j < v.size() && pos + j < w.size(); ++j)
            if (w.at(pos + j) != v[j]) return false;
        pos += v.size();
        ++level;
    }
    return true;
}

E0Tree E0Tree::subtree(const FiniteWord& u) const {
    const std::size_t n = u.size();
    std::vector<Symbol> new_stem = phi(u).symbols();
    std::vector<BlockPair> new_explicit;
    std::vector<BlockPair> new_cycle = cycle_;
    if (n < explicit_.size()) {
        new_explicit.assign(explicit_.begin() + static_cast<std::ptrdiff_t>(n), explicit_.end());
    } else {
        const std::size_t shift = (n - explicit_.size()) % cycle_.size();
        std::rotate(new_cycle.begin(), new_cycle.begin() + static_cast<std::ptrdiff_t>(shift),
                    new_cycle.end());
    }
    return E0Tree(std::move(new_stem), std::move(new_explicit), std::move(new_cycle));
}

Json E0Tree::to_json() const {
    Json j;
    j["stem"] = FiniteWord(2, stem_).digits();
    auto blocks = [](const std::vector<BlockPair>& bs) {
        Json arr = Json::array();
        for (const BlockPair& b : bs)
            arr.push_back({FiniteWord(2, b.v0).digits(), FiniteWord(2, b.v1).digits()});
        return arr;
    };
    j["explicit"] = blocks(explicit_);
    j["cycle"] = blocks(cycle_);
    return j;
}

E0Tree E0Tree::from_json(const Json& j) {
    auto blocks = [](const Json& arr) {
        std::vector<BlockPair> out;
        for (const auto& b : arr)
            out.push_back(BlockPair{FiniteWord::from_digits(b.at(0).get<std::string>()).symbols(),
                                    FiniteWord::from_digits(b.at(1).get<std::string>()).symbols()});
        return out;
    };
    return E0Tree(FiniteWord::from_digits(j.at("stem").get<std::string>()).symbols(),
                  blocks(j.at("explicit")), blocks(j.at("cycle")));
}

UPWord e0_phi(const E0Tree& p, const UPWord& x) {
    if (x.alphabet() != 2) throw std::invalid_argument("e0_phi: alphabet-2 input required");
    const std::size_t n0 = std::max(p.explicit_blocks().size(), x.preamble_size());
    const std::uint64_t joint = lcm_u64(p.cycle_blocks().size(), x.period_size());
    std::vector<Symbol> pre = p.stem();
    for (std::size_t n = 0; n < n0; ++n) {
        const auto& v = p.block(n).branch(x.at(n));
        pre.insert(pre.end(), v.begin(), v.end());
    }
    std::vector<Symbol> per;
    for (std::uint64_t n = n0; n < n0 + joint; ++n) {
        const auto& v = p.block(static_cast<std::size_t>(n)).branch(x.at(n));
        per.insert(per.end(), v.begin(), v.end());
    }
    return UPWord(2, std::move(pre), std::move(per));
}

bool same_blocks(const E0Tree& a, const E0Tree& b) {
    return a.stem().size() == b.stem().size() && a.explicit_blocks() == b.explicit_blocks() &&
           a.cycle_blocks() == b.cycle_blocks();
}

std::vector<E0Tree> same_block_trees(const std::vector<BlockPair>& explicit_blocks,
                                     const std::vector<BlockPair>& cycle_blocks,
                                     const std::vector<FiniteWord>& stems) {
    if (stems.empty()) throw std::invalid_argument("same_block_trees: no stems");
    for (const FiniteWord& s : stems)
        if (s.size() != stems.front().size())
            throw std::invalid_argument("same_block_trees: stems must have equal length");
    std::vector<E0Tree> out;
    out.reserve(stems.size());
    for (const FiniteWord& s : stems)
        out.emplace_back(s.symbols(), explicit_blocks, cycle_blocks);
    return out;
}

// --- scheme containment ----------------------------------------------------------

namespace {

// Position of a deterministic walk through the body of an E0 scheme. In the
// block region the consumed symbol at offset 0 selects the block, so the
// walk of a fixed word is forced everywhere.
struct WalkState {
    bool in_stem;
    std::size_t stem_off;
    std::size_t level;
    std::size_t off;
    Symbol bit;

    friend auto operator<=>(const WalkState& a, const WalkState& b) = default;
};

WalkState initial_state(const E0Tree& outer) {
    if (outer.stem().empty()) return {false, 0, 0, 0, 0};
    return {true, 0, 0, 0, 0};
}

std::optional<WalkState> consume(const E0Tree& outer, WalkState st, Symbol c) {
    if (st.in_stem) {
        if (outer.stem()[st.stem_off] != c) return std::nullopt;
        ++st.stem_off;
        if (st.stem_off == outer.stem().size()) st = {false, 0, 0, 0, 0};
        return st;
    }
    const BlockPair& b = outer.block(st.level);
    if (st.off == 0) {
        st.bit = c;  // block start: either symbol selects its block
    } else if (b.branch(st.bit)[st.off] != c) {
        return std::nullopt;
    }
    ++st.off;
    if (st.off == b.length()) st = {false, 0, st.level + 1, 0, 0};
    return st;
}

bool at_block_start(const WalkState& st) { return !st.in_stem && st.off == 0; }

}  // namespace

bool e0_tree_contains(const E0Tree& outer, const E0Tree& inner, std::size_t level_horizon) {
    // Walk the inner stem (a single forced word).
    std::vector<WalkState> live{initial_state(outer)};
    for (Symbol c : inner.stem()) {
        auto next = consume(outer, live.front(), c);
        if (!next) return false;
        live.front() = *next;
    }
    // Then level by level: every inner branch continuation must stay inside.
    for (std::size_t lev = 0; lev < level_horizon; ++lev) {
        std::vector<WalkState> next_live;
        for (const WalkState& st : live) {
            for (Symbol i : {0, 1}) {
                WalkState cur = st;
                bool ok = true;
                for (Symbol c : inner.block(lev).branch(i)) {
                    // An inner split mid-stem or mid-block can only survive if
                    // the forced outer symbol matches; consume() decides.
                    auto next = consume(outer, cur, c);
                    if (!next) {
                        ok = false;
                        break;
                    }
                    cur = *next;
                }
                if (!ok) return false;
                next_live.push_back(cur);
            }
        }
        // States of all branches share the same position; at most the chosen
        // bit differs, so deduplication keeps the set at <= 2.
        std::sort(next_live.begin(), next_live.end());
        next_live.erase(std::unique(next_live.begin(), next_live.end()), next_live.end());
        live = std::move(next_live);
    }
    // Each inner split must sit at a position where both bits extend; the
    // per-symbol consume checks above enforce exactly that.
    (void)at_block_start;
    return true;
}

// --- prunes ------------------------------------------------------------------------

namespace {

std::vector<BlockPair> materialize_blocks(const E0Tree& t, std::size_t count) {
    std::vector<BlockPair> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(t.block(k));
    return out;
}

std::vector<Symbol> stem_suffix(const E0Tree& t, std::uint64_t from) {
    if (t.stem().size() < from)
        throw std::invalid_argument("prune: primed stem shorter than the copy point");
    return std::vector<Symbol>(t.stem().begin() + static_cast<std::ptrdiff_t>(from),
                               t.stem().end());
}

}  // namespace

std::pair<E0Tree, E0Tree> two_prune(const E0Tree& p, const E0Tree& q, const FiniteWord& u,
                                    const FiniteWord& v, const E0Tree& p_sub,
                                    const E0Tree& q_sub, std::size_t level_horizon) {
    const std::size_t n = u.size();
    if (n == 0 || v.size() != n) throw std::invalid_argument("2prune: |u| = |v| = n >= 1 required");
    if (u.at(n - 1) == v.at(n - 1))
        throw std::invalid_argument("2prune: u and v must differ in their last symbol");
    if (!same_blocks(p, q)) throw std::invalid_argument("2prune: (p, q) must share blocks");
    if (!same_blocks(p_sub, q_sub))
        throw std::invalid_argument("2prune: (p', q') must share blocks");
    if (!e0_tree_contains(p.subtree(u), p_sub, level_horizon))
        throw std::invalid_argument("2prune: p' is not below Xi(p, u) at the horizon");
    if (!e0_tree_contains(q.subtree(v), q_sub, level_horizon))
        throw std::invalid_argument("2prune: q' is not below Xi(q, v) at the horizon");

    const std::uint64_t cut = p.level_bound(static_cast<std::int64_t>(n) - 1);
    std::array<std::vector<Symbol>, 2> gamma;
    gamma[u.at(n - 1)] = stem_suffix(p_sub, cut);
    gamma[v.at(n - 1)] = stem_suffix(q_sub, cut);

    std::vector<BlockPair> blocks = materialize_blocks(p, n - 1);
    BlockPair merged = p.block(n - 1);
    merged.v0.insert(merged.v0.end(), gamma[0].begin(), gamma[0].end());
    merged.v1.insert(merged.v1.end(), gamma[1].begin(), gamma[1].end());
    blocks.push_back(std::move(merged));
    blocks.insert(blocks.end(), p_sub.explicit_blocks().begin(), p_sub.explicit_blocks().end());

    return {E0Tree(p.stem(), blocks, p_sub.cycle_blocks()),
            E0Tree(q.stem(), blocks, p_sub.cycle_blocks())};
}

std::array<E0Tree, 3> three_prune(const std::array<E0Tree, 3>& pqr,
                                  const std::array<FiniteWord, 3>& uvz,
                                  const std::array<E0Tree, 3>& primed,
                                  std::size_t level_horizon) {
    const std::size_t len = uvz[0].size();
    if (len == 0 || uvz[1].size() != len || uvz[2].size() != len)
        throw std::invalid_argument("3prune: strings must share length n+1 >= 1");
    const std::size_t n = len - 1;
    std::set<Symbol> last{uvz[0].at(n), uvz[1].at(n), uvz[2].at(n)};
    if (last != std::set<Symbol>{0, 1})
        throw std::invalid_argument("3prune: last symbols must cover {0, 1}");
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j)
            if (!same_blocks(pqr[i], pqr[j]) || !same_blocks(primed[i], primed[j]))
                throw std::invalid_argument("3prune: tuples must share blocks");
        if (!e0_tree_contains(pqr[i].subtree(uvz[i]), primed[i], level_horizon))
            throw std::invalid_argument("3prune: primed tree " + std::to_string(i) +
                                        " is not below its Xi at the horizon");
    }

    const std::uint64_t cut = pqr[0].level_bound(static_cast<std::int64_t>(n));
    std::array<std::optional<std::vector<Symbol>>, 2> gamma;
    for (int i = 0; i < 3; ++i) {
        const Symbol b = uvz[i].at(n);
        auto suffix = stem_suffix(primed[i], cut);
        if (gamma[b] && *gamma[b] != suffix)
            throw std::invalid_argument(
                "3prune: primed stems landing on the same side disagree beyond the copy point");
        gamma[b] = std::move(suffix);
    }

    std::vector<BlockPair> blocks = materialize_blocks(pqr[0], n);
    BlockPair merged = pqr[0].block(n);
    merged.v0.insert(merged.v0.end(), gamma[0]->begin(), gamma[0]->end());
    merged.v1.insert(merged.v1.end(), gamma[1]->begin(), gamma[1]->end());
    blocks.push_back(std::move(merged));
    blocks.insert(blocks.end(), primed[0].explicit_blocks().begin(),
                  primed[0].explicit_blocks().end());

    std::array<E0Tree, 3> out = {E0Tree(pqr[0].stem(), blocks, primed[0].cycle_blocks()),
                                 E0Tree(pqr[1].stem(), blocks, primed[0].cycle_blocks()),
                                 E0Tree(pqr[2].stem(), blocks, primed[0].cycle_blocks())};
    return out;
}

// --- E2 trees ------------------------------------------------------------------------

namespace {

void check_m(const std::vector<std::uint64_t>& m) {
    if (m.empty() || m[0] != 0) throw std::invalid_argument("E2: m[0] = 0 required");
    for (std::size_t i = 1; i < m.size(); ++i)
        if (m[i] <= m[i - 1]) throw std::invalid_argument("E2: m must be strictly increasing");
}

std::vector<FiniteWord> words_of_length(std::size_t k) {
    std::vector<FiniteWord> out{FiniteWord(2, {})};
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<FiniteWord> next;
        next.reserve(out.size() * 2);
        for (const FiniteWord& w : out)
            for (Symbol b : {0, 1}) next.push_back(w.append(b));
        out = std::move(next);
    }
    return out;
}

constexpr std::size_t kMaxTableLevels = 20;

}  // namespace

E2Tree::E2Tree(std::vector<std::uint64_t> m, std::map<FiniteWord, FiniteWord> g)
    : m_(std::move(m)), g_(std::move(g)) {
    check_m(m_);
    const std::size_t K = levels();
    if (K > kMaxTableLevels) throw std::invalid_argument("E2Tree: table depth too large");
    std::size_t expected = 0;
    for (std::size_t k = 0; k <= K; ++k) expected += std::size_t{1} << k;
    if (g_.size() != expected) throw std::invalid_argument("E2Tree: g-table incomplete");
    for (const auto& [s, gs] : g_) {
        if (s.size() > K) throw std::invalid_argument("E2Tree: g-table key longer than K");
        if (gs.size() != m_[s.size()]) throw std::invalid_argument("E2Tree: |g(s)| != m_{|s|}");
        if (!s.empty()) {
            const auto parent = g_.find(s.prefix(s.size() - 1));
            if (parent == g_.end() || !parent->second.is_prefix_of(gs))
                throw std::invalid_argument("E2Tree: g not prefix-monotone");
        }
    }
}

const FiniteWord& E2Tree::apply_g(const FiniteWord& s) const {
    const auto it = g_.find(s);
    if (it == g_.end()) throw std::invalid_argument("E2Tree: node beyond table depth");
    return it->second;
}

Json E2Tree::to_json() const {
    Json j;
    j["m"] = m_;
    Json table = Json::object();
    for (const auto& [s, gs] : g_) table[s.digits()] = gs.digits();
    j["g"] = std::move(table);
    return j;
}

E2Tree E2Tree::from_json(const Json& j) {
    std::vector<std::uint64_t> m = j.at("m").get<std::vector<std::uint64_t>>();
    std::map<FiniteWord, FiniteWord> g;
    for (const auto& [key, val] : j.at("g").items())
        g[FiniteWord::from_digits(key)] = FiniteWord::from_digits(val.get<std::string>());
    return E2Tree(std::move(m), std::move(g));
}

FiniteWord e2_phi(const E2Tree& t, const FiniteWord& x) {
    if (x.size() > t.levels()) throw std::invalid_argument("e2_phi: |x| > K");
    return t.apply_g(x);
}

E2Scheme::E2Scheme(std::vector<std::uint64_t> m, std::vector<BlockPair> blocks)
    : m_(std::move(m)), blocks_(std::move(blocks)) {
    check_m(m_);
    if (m_.size() != blocks_.size() + 1)
        throw std::invalid_argument("E2Scheme: one block pair per level required");
    for (std::size_t k = 1; k < m_.size(); ++k) {
        const BlockPair& b = blocks_[k - 1];
        if (b.v0.size() != b.v1.size() || b.v0.size() != m_[k] - m_[k - 1])
            throw std::invalid_argument("E2Scheme: block length must be m_k - m_{k-1}");
    }
}

FiniteWord E2Scheme::image(const FiniteWord& x) const {
    if (x.size() > levels()) throw std::invalid_argument("E2Scheme: |x| > K");
    std::vector<Symbol> out;
    out.reserve(static_cast<std::size_t>(m_[x.size()]));
    for (std::size_t k = 0; k < x.size(); ++k) {
        const auto& v = blocks_[k].branch(x.at(k));
        out.insert(out.end(), v.begin(), v.end());
    }
    return FiniteWord(2, std::move(out));
}

E2Tree E2Scheme::materialize() const {
    if (levels() > kMaxTableLevels)
        throw std::invalid_argument("E2Scheme: too deep to materialize as a table");
    std::map<FiniteWord, FiniteWord> g;
    for (std::size_t k = 0; k <= levels(); ++k)
        for (const FiniteWord& s : words_of_length(k)) g[s] = image(s);
    return E2Tree(m_, std::move(g));
}

E2Scheme greedy_e2_scheme(unsigned levels) {
    if (levels == 0) throw std::invalid_argument("greedy_e2_scheme: levels >= 1");
    std::vector<std::uint64_t> m{0};
    std::vector<BlockPair> blocks;
    for (unsigned k = 1; k <= levels; ++k) {
        const std::uint64_t start = std::max<std::uint64_t>(m.back(), std::uint64_t{1} << (k + 2));
        const Rational target(1, k);
        Rational sum;
        std::uint64_t j = start;
        while (true) {
            const Rational term = Rational::inv_succ(j);
            if (sum + term > target) break;  // gap < term < 2^{-(k+2)}
            sum += term;
            ++j;
        }
        const std::uint64_t mk = j;  // positions [start, j) were taken
        const std::size_t len = static_cast<std::size_t>(mk - m.back());
        std::vector<Symbol> c0(len, 0), c1(len, 0);
        for (std::uint64_t pos = start; pos < mk; ++pos)
            c1[static_cast<std::size_t>(pos - m.back())] = 1;
        blocks.push_back(BlockPair{std::move(c0), std::move(c1)});
        m.push_back(mk);
    }
    return E2Scheme(std::move(m), std::move(blocks));
}

E2Tree build_e2_tree(unsigned levels) {
    return greedy_e2_scheme(levels).materialize();
}

E2Scheme unit_e2_scheme(unsigned levels) {
    std::vector<std::uint64_t> m(levels + 1);
    for (unsigned k = 0; k <= levels; ++k) m[k] = k;
    std::vector<BlockPair> blocks(levels, BlockPair{{0}, {1}});
    return E2Scheme(std::move(m), std::move(blocks));
}

// --- E2 verification ---------------------------------------------------------------

namespace {

Rational window_delta(const FiniteWord& a, const FiniteWord& b, std::uint64_t lo,
                      std::uint64_t hi,
                      std::map<std::vector<std::uint64_t>, Rational>& memo) {
    std::vector<std::uint64_t> diffs;
    for (std::uint64_t k = lo; k < hi; ++k)
        if (a.at(static_cast<std::size_t>(k)) != b.at(static_cast<std::size_t>(k)))
            diffs.push_back(k);
    const auto it = memo.find(diffs);
    if (it != memo.end()) return it->second;
    Rational sum;
    for (std::uint64_t k : diffs) sum += Rational::inv_succ(k);
    memo.emplace(std::move(diffs), sum);
    return sum;
}

Rational harmonic_window(std::uint64_t lo, std::uint64_t hi) {
    Rational sum;
    for (std::uint64_t k = lo; k < hi; ++k) sum += Rational::inv_succ(k);
    return sum;
}

// Conditions 3 and 4 plus the per-level gap lemma for one g-table, claims
// prefixed to keep family certificates readable.
void append_tree_conditions(Certificate& cert, const std::vector<std::uint64_t>& m,
                            const std::map<FiniteWord, FiniteWord>& g,
                            const std::string& prefix) {
    std::map<std::vector<std::uint64_t>, Rational> memo;
    const std::size_t K = m.size() - 1;
    for (std::size_t k = 1; k <= K; ++k) {
        const Rational bound = Rational::pow2_neg(static_cast<unsigned>(k) + 1);
        const Rational target(1, static_cast<unsigned long>(k));
        const auto level = words_of_length(k);
        for (std::size_t a = 0; a < level.size(); ++a) {
            for (std::size_t b = a + 1; b < level.size(); ++b) {
                const FiniteWord& s = level[a];
                const FiniteWord& t = level[b];
                const Rational d =
                    window_delta(g.at(s), g.at(t), m[k - 1], m[k], memo);
                const std::string where =
                    " k=" + std::to_string(k) + " s=" + s.digits() + " t=" + t.digits();
                if (s.at(k - 1) == t.at(k - 1))
                    cert.check_lt(prefix + "cond3" + where, d, bound);
                else
                    cert.check_lt(prefix + "cond4" + where, Rational::abs(d - target), bound);
            }
        }
        cert.check_ge(prefix + "gap-lemma k=" + std::to_string(k),
                      harmonic_window(m[k - 1], m[k]),
                      Rational::pow2_neg(static_cast<unsigned>(k) + 1));
    }
}

Json m_to_json(const std::vector<std::uint64_t>& m) {
    Json j = Json::array();
    for (std::uint64_t v : m) j.push_back(v);
    return j;
}

}  // namespace

Certificate verify_e2_tree(const E2Tree& t) {
    Certificate cert("e2-tree-conditions");
    cert.set_input("m", m_to_json(t.m()));
    cert.set_param("levels", static_cast<std::int64_t>(t.levels()));
    cert.check_true("structure: lengths and prefix-monotonicity", true);
    append_tree_conditions(cert, t.m(), t.g_table(), "");
    return cert;
}

Certificate verify_e2_scheme(const E2Scheme& s) {
    Certificate cert("e2-scheme-conditions");
    cert.set_input("m_last", std::to_string(s.m().back()));
    cert.set_param("levels", static_cast<std::int64_t>(s.levels()));
    // Appended blocks depend only on the last input bit, so the all-pairs
    // sibling conditions collapse to one block comparison per level.
    std::map<std::vector<std::uint64_t>, Rational> memo;
    for (std::size_t k = 1; k <= s.levels(); ++k) {
        const Rational bound = Rational::pow2_neg(static_cast<unsigned>(k) + 1);
        const BlockPair& b = s.blocks()[k - 1];
        const FiniteWord w0(2, b.v0), w1(2, b.v1);
        Rational d;
        for (std::size_t j = 0; j < b.v0.size(); ++j)
            if (b.v0[j] != b.v1[j]) d += Rational::inv_succ(s.m()[k - 1] + j);
        cert.check_lt("cond3 (identical same-bit windows) k=" + std::to_string(k), Rational(0),
                      bound);
        cert.check_lt("cond4 k=" + std::to_string(k),
                      Rational::abs(d - Rational(1, static_cast<unsigned long>(k))), bound);
        cert.check_ge("gap-lemma k=" + std::to_string(k),
                      harmonic_window(s.m()[k - 1], s.m()[k]), bound);
    }
    return cert;
}

E2Tree E2TreeFamily::tree(std::size_t i) const {
    return E2Tree(m, g.at(i));
}

Json E2TreeFamily::to_json() const {
    Json j;
    j["m"] = m_to_json(m);
    Json arr = Json::array();
    for (const auto& table : g) {
        Json tj = Json::object();
        for (const auto& [s, gs] : table) tj[s.digits()] = gs.digits();
        arr.push_back(std::move(tj));
    }
    j["g"] = std::move(arr);
    return j;
}

E2TreeFamily E2TreeFamily::from_json(const Json& j) {
    E2TreeFamily f;
    f.m = j.at("m").get<std::vector<std::uint64_t>>();
    for (const auto& tj : j.at("g")) {
        std::map<FiniteWord, FiniteWord> table;
        for (const auto& [key, val] : tj.items())
            table[FiniteWord::from_digits(key)] = FiniteWord::from_digits(val.get<std::string>());
        f.g.push_back(std::move(table));
    }
    for (std::size_t i = 0; i < f.g.size(); ++i) f.tree(i);  // validate structure
    return f;
}

E2TreeFamily build_e2_family(unsigned levels, unsigned p) {
    if (p == 0) throw std::invalid_argument("build_e2_family: p >= 1");
    if (levels == 0) throw std::invalid_argument("build_e2_family: levels >= 1");
    // Shared difference blocks as in the greedy scheme, then per-tree flips
    // at one extra position each, so sibling windows across trees differ on
    // at most two positions of reciprocal value < 2^{-(k+2)}.
    std::vector<std::uint64_t> m{0};
    std::vector<std::vector<BlockPair>> per_tree(p);
    for (unsigned k = 1; k <= levels; ++k) {
        const std::uint64_t start = std::max<std::uint64_t>(m.back(), std::uint64_t{1} << (k + 2));
        const Rational target(1, k);
        Rational sum;
        std::uint64_t j = start;
        while (true) {
            const Rational term = Rational::inv_succ(j);
            if (sum + term > target) break;
            sum += term;
            ++j;
        }
        const std::uint64_t diff_end = j;
        const std::uint64_t mk = diff_end + (p - 1);
        const std::size_t len = static_cast<std::size_t>(mk - m.back());
        for (unsigned i = 0; i < p; ++i) {
            std::vector<Symbol> c0(len, 0), c1(len, 0);
            for (std::uint64_t pos = start; pos < diff_end; ++pos)
                c1[static_cast<std::size_t>(pos - m.back())] = 1;
            if (i > 0) {
                const std::size_t flip = static_cast<std::size_t>(diff_end - m.back()) + (i - 1);
                c0[flip] = 1;
                c1[flip] = 1;
            }
            per_tree[i].push_back(BlockPair{std::move(c0), std::move(c1)});
        }
        m.push_back(mk);
    }
    E2TreeFamily f;
    f.m = m;
    for (unsigned i = 0; i < p; ++i)
        f.g.push_back(E2Scheme(m, per_tree[i]).materialize().g_table());
    return f;
}

Certificate verify_e2_family(const E2TreeFamily& f) {
    Certificate cert("e2-family-conditions");
    cert.set_input("m", m_to_json(f.m));
    cert.set_param("levels", static_cast<std::int64_t>(f.levels()));
    cert.set_param("trees", static_cast<std::int64_t>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i)
        append_tree_conditions(cert, f.m, f.g[i], "tree" + std::to_string(i) + " ");
    // Cross condition 5.
    std::map<std::vector<std::uint64_t>, Rational> memo;
    const std::size_t K = f.levels();
    for (std::size_t k = 1; k <= K; ++k) {
        const Rational bound = Rational::pow2_neg(static_cast<unsigned>(k) + 1);
        for (const FiniteWord& s : words_of_length(k)) {
            for (std::size_t i = 0; i < f.size(); ++i) {
                for (std::size_t j2 = i + 1; j2 < f.size(); ++j2) {
                    const Rational d = window_delta(f.g[i].at(s), f.g[j2].at(s), f.m[k - 1],
                                                    f.m[k], memo);
                    cert.check_lt("cond5 k=" + std::to_string(k) + " s=" + s.digits() + " i=" +
                                      std::to_string(i) + " j=" + std::to_string(j2),
                                  d, bound);
                }
            }
        }
    }
    return cert;
}

}  // namespace upw
