#pragma once

// Perfect-tree combinatorics at finite stage: Sacks-style split queries on
// explicit finite trees, E0-trees given by ultimately periodic block
// schemes (with the prune operations), and E2-trees with exact-rational
// condition verification and constructive builders.

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "upw/certificate.hpp"
#include "upw/rational.hpp"
#include "upw/words.hpp"

namespace upw {

// --- explicit finite trees -------------------------------------------------

// Finite-stage truncation of a tree on 2: a prefix-closed set of words of
// length <= depth. May be empty (the degenerate value some constructions
// return); when nonempty it contains the empty word.
class FiniteTree {
public:
    FiniteTree() : depth_(0) {}
    FiniteTree(std::size_t depth, std::set<FiniteWord> nodes);

    static FiniteTree full(std::size_t depth);

    std::size_t depth() const { return depth_; }
    const std::set<FiniteWord>& nodes() const { return nodes_; }
    bool empty() const { return nodes_.empty(); }
    bool contains(const FiniteWord& w) const { return nodes_.count(w) > 0; }

    std::vector<FiniteWord> children(const FiniteWord& w) const;
    bool is_split_node(const FiniteWord& w) const;

    // Every node of length < depth has at least one child.
    bool is_pruned() const;

    friend bool operator==(const FiniteTree& a, const FiniteTree& b) = default;

private:
    std::size_t depth_;
    std::set<FiniteWord> nodes_;
};

struct TreeDepthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Lambda(p, s): follow minimal split nodes; throws TreeDepthError when the
// recursion does not resolve within the tree's depth.
FiniteWord lambda_map(const FiniteTree& p, const FiniteWord& s);

// Xi(p, s) = p restricted to Lambda(p, s).
FiniteTree xi_map(const FiniteTree& p, const FiniteWord& s);

// split^n(p): the 2^n n-splits, i.e. Lambda(p, u) for u of length n.
std::set<FiniteWord> splits(const FiniteTree& p, std::size_t n);

// --- E0-trees ----------------------------------------------------------------

// One level of an E0-tree: sibling blocks of equal length whose first
// symbols are 0 and 1 respectively.
struct BlockPair {
    std::vector<Symbol> v0;
    std::vector<Symbol> v1;

    const std::vector<Symbol>& branch(Symbol i) const { return i == 0 ? v0 : v1; }
    std::size_t length() const { return v0.size(); }
    friend bool operator==(const BlockPair& a, const BlockPair& b) = default;
    friend auto operator<=>(const BlockPair& a, const BlockPair& b) = default;
};

// E0-tree as a block scheme: stem, finitely many explicit block pairs, then
// a nonempty cycle of block pairs repeated forever. The cycle makes the
// scheme ultimately periodic, so the canonical branch map sends UPWords to
// UPWords. Canonical form mirrors UPWord canonicalization on the sequence
// of block pairs, so scheme equality is syntactic.
class E0Tree {
public:
    E0Tree() : E0Tree({}, {}, {BlockPair{{0}, {1}}}) {}
    E0Tree(std::vector<Symbol> stem, std::vector<BlockPair> explicit_blocks,
           std::vector<BlockPair> cycle_blocks);

    static E0Tree identity();  // stem empty, blocks (<0>, <1>)

    const std::vector<Symbol>& stem() const { return stem_; }
    const std::vector<BlockPair>& explicit_blocks() const { return explicit_; }
    const std::vector<BlockPair>& cycle_blocks() const { return cycle_; }

    const BlockPair& block(std::size_t n) const {
        return n < explicit_.size() ? explicit_[n]
                                    : cycle_[(n - explicit_.size()) % cycle_.size()];
    }

    // phi(sigma) = stem ^ v_0^{sigma(0)} ^ ... ^ v_{|sigma|-1}^{sigma(|sigma|-1)}
    FiniteWord phi(const FiniteWord& sigma) const;

    // L_n = |stem| + sum_{k<=n} |v_k|; n = -1 gives |stem|.
    std::uint64_t level_bound(std::int64_t n) const;

    bool node(const FiniteWord& w) const;

    // Xi(p, u) for |u| = n as a block scheme: stem phi(u), blocks from level n.
    E0Tree subtree(const FiniteWord& u) const;

    friend bool operator==(const E0Tree& a, const E0Tree& b) = default;

    Json to_json() const;
    static E0Tree from_json(const Json& j);

private:
    std::vector<Symbol> stem_;
    std::vector<BlockPair> explicit_;
    std::vector<BlockPair> cycle_;
};

// Canonical branch map: ultimately periodic output for ultimately periodic
// input; a reduction of E0 to E0 restricted to the branches of p.
UPWord e0_phi(const E0Tree& p, const UPWord& x);

// Shared-block invariant of pair/triple conditions: equal stem lengths and
// identical block sequences.
bool same_blocks(const E0Tree& a, const E0Tree& b);

// Trees differing only at the stem; all stems must have equal length.
std::vector<E0Tree> same_block_trees(const std::vector<BlockPair>& explicit_blocks,
                                     const std::vector<BlockPair>& cycle_blocks,
                                     const std::vector<FiniteWord>& stems);

// Scheme containment: every branch of `inner` through level `level_horizon`
// follows branches of `outer` (exact walk over the block machines).
bool e0_tree_contains(const E0Tree& outer, const E0Tree& inner, std::size_t level_horizon);

// 2prune: copy (p', q') below the level-n parts of (p, q) selected by u and
// v. Preconditions (|u| = |v| = n >= 1, u(n-1) != v(n-1), shared blocks,
// p' <= Xi(p,u) and q' <= Xi(q,v) at the horizon) are checked individually.
std::pair<E0Tree, E0Tree> two_prune(const E0Tree& p, const E0Tree& q, const FiniteWord& u,
                                    const FiniteWord& v, const E0Tree& p_sub,
                                    const E0Tree& q_sub, std::size_t level_horizon);

// 3prune: the unique condition (a, b, c) <=^{n+1} (p, q, r) with
// Xi(a,u) = p', Xi(b,v) = q', Xi(c,z) = r'. When two of u, v, z share their
// last bit, the corresponding primed stems must agree beyond the copy point
// (checked; reported as a precondition violation otherwise).
std::array<E0Tree, 3> three_prune(const std::array<E0Tree, 3>& pqr,
                                  const std::array<FiniteWord, 3>& uvz,
                                  const std::array<E0Tree, 3>& primed,
                                  std::size_t level_horizon);

// --- E2-trees -----------------------------------------------------------------

// Finite-horizon E2-tree: level boundaries m[0] = 0 < m[1] < ... < m[K] and
// the full table of g on all words of length <= K. Construction validates
// the structural invariants (lengths and prefix-monotonicity); the metric
// conditions are the verifier's business.
class E2Tree {
public:
    E2Tree(std::vector<std::uint64_t> m, std::map<FiniteWord, FiniteWord> g);

    std::size_t levels() const { return m_.size() - 1; }
    const std::vector<std::uint64_t>& m() const { return m_; }
    const std::map<FiniteWord, FiniteWord>& g_table() const { return g_; }
    const FiniteWord& apply_g(const FiniteWord& s) const;

    Json to_json() const;
    static E2Tree from_json(const Json& j);

    friend bool operator==(const E2Tree& a, const E2Tree& b) = default;

private:
    std::vector<std::uint64_t> m_;
    std::map<FiniteWord, FiniteWord> g_;
};

// g(x), length m[|x|]; |x| <= K.
FiniteWord e2_phi(const E2Tree& t, const FiniteWord& x);

// Sibling-independent E2 block scheme: g(s ^ i) = g(s) ^ c_i at every level,
// so the map is determined by one block pair per level. Because appended
// blocks depend only on the last input bit, the all-pairs sibling conditions
// reduce to per-level block conditions (same last bit gives identical
// windows, hence delta = 0; different last bit gives exactly the c0/c1
// difference). Supports depths far beyond what a full g-table can hold.
class E2Scheme {
public:
    E2Scheme(std::vector<std::uint64_t> m, std::vector<BlockPair> blocks);

    std::size_t levels() const { return blocks_.size(); }
    const std::vector<std::uint64_t>& m() const { return m_; }
    const std::vector<BlockPair>& blocks() const { return blocks_; }

    FiniteWord image(const FiniteWord& x) const;  // g(x)
    E2Tree materialize() const;                   // full table; small K only

private:
    std::vector<std::uint64_t> m_;
    std::vector<BlockPair> blocks_;  // level k stored at index k-1
};

// Greedy construction: child blocks all-zero vs flips on a position set
// whose reciprocal sum lies within 2^{-(k+2)} of 1/k, positions chosen from
// the first index with 1/(j+1) < 2^{-(k+2)} onward.
E2Scheme greedy_e2_scheme(unsigned levels);
E2Tree build_e2_tree(unsigned levels);

// The full-space scheme m_k = k with unit blocks <0>, <1>: condition 4 holds
// with error exactly 0. Supports very deep horizons.
E2Scheme unit_e2_scheme(unsigned levels);

Certificate verify_e2_tree(const E2Tree& t);
Certificate verify_e2_scheme(const E2Scheme& s);

struct E2TreeFamily {
    std::vector<std::uint64_t> m;
    std::vector<std::map<FiniteWord, FiniteWord>> g;  // one table per tree

    std::size_t levels() const { return m.size() - 1; }
    std::size_t size() const { return g.size(); }
    E2Tree tree(std::size_t i) const;

    Json to_json() const;
    static E2TreeFamily from_json(const Json& j);
};

E2TreeFamily build_e2_family(unsigned levels, unsigned p);
Certificate verify_e2_family(const E2TreeFamily& f);

}  // namespace upw
