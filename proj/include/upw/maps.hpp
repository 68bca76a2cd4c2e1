#pragma once

// The explicit continuous/Borel functions: the triple functions P, Q', Q'',
// Q, K and the totalized P' for E0; the interleave and block-code
// reductions; the threshold-scan function P for E2 with its
// surjectivity-witness machinery; the omega-Jonsson construction; the
// two-valued discontinuity gadget; the Galvin coloring.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>

#include "upw/certificate.hpp"
#include "upw/eqrel.hpp"
#include "upw/trees.hpp"
#include "upw/words.hpp"

namespace upw {

struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- the E0 triple functions -----------------------------------------------

// P(x, y, z): digit n records which pair agrees at the n-th disagreement
// front; exact ultimately periodic output via cycle detection on the
// (position phase, pair tag) state. Inputs must be pairwise E0-inequivalent
// (otherwise the front recursion stalls; reported as a domain error).
UPWord p_e0(const UPWord& x, const UPWord& y, const UPWord& z,
            std::uint64_t max_steps = 1u << 20);

// The table-built preimage triple through an E0-tree: for v with no two
// consecutive symbols equal, returns (Phi(0~), Phi(a), Phi(b)) with
// p_e0 of the result equal to v exactly.
std::array<UPWord, 3> p_e0_preimage(const UPWord& v, const E0Tree& p);

bool in_alternating_A(const UPWord& v);

// Q': blockwise substitution 0 -> 00, 1 -> 01, 2 -> 10 (injective).
UPWord q_prime(const UPWord& w);

// Q'': walk the tree of Q'-images of alternating words; emit the branch bit
// at binary-branching nodes, consume silently at unary nodes. Errors when
// the input provably leaves the image tree.
UPWord q_double_prime(const UPWord& u);

// Emitted bits along a finite node of the image tree (nullopt if the word
// is not a node).
std::optional<FiniteWord> q_image_emit(const FiniteWord& u);

// Minimal image-tree node whose emitted bits are exactly w.
FiniteWord q_encode(const FiniteWord& w);

// All image-tree nodes of the given length.
std::vector<FiniteWord> q_image_level(std::size_t length);

// Q = Q'' o Q' o P
UPWord q_e0(const UPWord& x, const UPWord& y, const UPWord& z);

// Totalization P': off-domain triples and eventually-2-free P-outputs map
// to the alternating word (01) read inside omega-3.
UPWord p_prime_e0(const UPWord& x, const UPWord& y, const UPWord& z);

// K = Q' o P'
UPWord k_e0(const UPWord& x, const UPWord& y, const UPWord& z);

// --- tail-equivalence reductions ----------------------------------------------

// x ⊕ 2~ : E_tail^2 to E_tail^3 restricted to alternating words.
UPWord oplus_reduction(const UPWord& x);

// x(0) ^ 2012102 ^ x(1) ^ 2012102 ^ ... : E_tail^2 to F.
UPWord block_reduction(const UPWord& x);

// --- P for E2 ---------------------------------------------------------------------

// Threshold sequence: the default 3^{m+2} or an explicit list.
class ThetaSeq {
public:
    static ThetaSeq paper();
    static ThetaSeq list(std::vector<Rational> values);
    static ThetaSeq parse(const std::string& spec);  // "paper" or "2,3,9/2"

    std::optional<Rational> at(std::size_t m) const;
    const std::string& spec() const { return spec_; }
    bool valid_growth(std::size_t levels) const;  // (1/2) theta_n + 3/2 <= theta_{n+1}

private:
    ThetaSeq() = default;
    bool paper_ = false;
    std::vector<Rational> values_;
    std::string spec_;
};

struct PE2Result {
    std::vector<Symbol> digits;
    std::vector<std::uint64_t> landmarks;  // L_0 = 0, L_1, ..., L_{#digits}
    std::uint64_t modulus = 0;             // digits depend only on inputs below this
};

using SymbolAt = std::function<std::optional<Symbol>(std::uint64_t)>;

PE2Result p_e2(const UPWord& x, const UPWord& y, const UPWord& z, const ThetaSeq& theta,
               std::size_t digit_count, std::uint64_t scan_cap = 1u << 22);
PE2Result p_e2(const FiniteWord& x, const FiniteWord& y, const FiniteWord& z,
               const ThetaSeq& theta, std::size_t digit_count,
               std::uint64_t scan_cap = 1u << 22);

// N_0 = 0 and N_{n+1} = min{ k : sum_{N_n <= i < k} (1/(i+1) - 2^-(i+2)) > theta_n }.
// Throws BudgetExhausted when a landmark exceeds the cap.
std::vector<std::uint64_t> e2_witness_landmarks(std::size_t count, const ThetaSeq& theta,
                                                std::uint64_t scan_cap);

// g-map view shared by E2Tree and E2Scheme consumers.
struct E2MapRef {
    std::size_t levels;
    std::vector<std::uint64_t> m;
    std::function<FiniteWord(const FiniteWord&)> image;

    static E2MapRef of(const E2Tree& t);
    static E2MapRef of(const E2Scheme& s);
};

struct E2WitnessResult {
    FiniteWord x, y, z;  // tree inputs, length = tree levels
    Certificate cert;
    std::size_t levels_certified = 0;
};

// The surjectivity-witness pipeline: builds x = 0~, y and z from the
// per-level sigma/tau patterns selected by v, certifies the defining
// inequalities and the landmark/digit induction on each level the data
// reaches, and reports budget exhaustion per level instead of guessing.
E2WitnessResult p_e2_witness(const FiniteWord& v, const E2MapRef& map, const ThetaSeq& theta,
                             std::uint64_t scan_cap = 1u << 22);

// --- discontinuity gadget ------------------------------------------------------------

// Two-valued composition g(x) = y1 when f(x) lies outside A, else y2.
template <class X, class Y>
std::function<Y(const X&)> two_valued_gadget(std::function<Y(const X&)> f,
                                             std::function<bool(const Y&)> in_a, Y y1, Y y2) {
    if (y1 == y2) throw std::invalid_argument("two_valued_gadget: y1 != y2 required");
    return [f = std::move(f), in_a = std::move(in_a), y1 = std::move(y1),
            y2 = std::move(y2)](const X& x) { return in_a(f(x)) ? y2 : y1; };
}

// --- omega-Jonsson machinery ---------------------------------------------------------

// Longest-common-prefix discrimination tree of a finite set of distinct
// words: sigma is a node iff the relevant cone still holds two elements.
FiniteTree psi(const std::vector<UPWord>& a);

// T-hat: { sigma ^ 0~, sigma ^ 1 ^ 0~ : sigma in T }, duplicates collapsed.
std::vector<UPWord> t_hat(const FiniteTree& t);

// The a_sigma recursion relative to an explicit finite set.
std::optional<FiniteWord> a_sigma(const std::vector<UPWord>& b, const FiniteWord& sigma);

struct JonssonResult {
    std::vector<UPWord> a;
    Certificate cert;
};

// Stage-by-stage realization of the choice construction with the countable
// dense set of all UPWords and the first-in-enumeration choice function.
JonssonResult jonsson_build(const FiniteTree& t, std::size_t stages);

// First canonical UPWord (by total size, then lexicographic fields)
// extending the given finite word.
UPWord first_upword_extending(const FiniteWord& w);

// --- Galvin coloring ------------------------------------------------------------------

std::uint64_t galvin_d(const UPWord& x, const UPWord& y);  // min{n : x(n) != y(n)}
Symbol galvin_coloring(const UPWord& x, const UPWord& y);  // x(d(x, y))

}  // namespace upw
