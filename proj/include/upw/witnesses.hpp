#pragma once

// Dense-open counterexample sets with exact membership checkers on
// ultimately periodic inputs, and the oracle-driven witness constructions
// refuting the Mycielski properties of E0, E1, E2 and E3.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "upw/certificate.hpp"
#include "upw/eqrel.hpp"
#include "upw/maps.hpp"
#include "upw/trees.hpp"
#include "upw/words.hpp"

namespace upw {

// --- E0: the triple set D and its relativizations ------------------------------

// (x, y, z) in D iff some n has x(n) != y(n), x(n) != z(n), y(n+1) != z(n+1).
// Exact: the predicate is eventually periodic in n, so one joint cycle
// beyond the preambles decides it.
bool in_D_e0(const UPWord& x, const UPWord& y, const UPWord& z);

// Same with the witness position required to satisfy n >= k.
bool in_D_e0_k(std::uint64_t k, const UPWord& x, const UPWord& y, const UPWord& z);

// The density-extension rule: append 00, 10, 11.
std::array<FiniteWord, 3> d_e0_density_extension(const FiniteWord& sigma, const FiniteWord& tau,
                                                 const FiniteWord& rho);

// Same-block trees from the given stems (length k), the canonical triple
// (Phi_p(010~), Phi_q(110~), Phi_r(1~)), and the exact check that it avoids
// D_k.
Certificate thm_8_2_check(const std::vector<BlockPair>& explicit_blocks,
                          const std::vector<BlockPair>& cycle_blocks,
                          const std::vector<FiniteWord>& stems);

// --- E1 -----------------------------------------------------------------------------

bool in_D_e1(const OmegaSeq& x, const OmegaSeq& y);  // some coordinate's first symbols differ

// Finite square constraint on omega(omega 2): rows 0..size-1 pinned to
// length-size binary words; everything beyond is unconstrained.
struct SquareGrid {
    std::vector<std::vector<Symbol>> rows;

    static SquareGrid zero(std::size_t n);
    std::size_t size() const { return rows.size(); }
    SquareGrid extended(std::size_t n) const;  // zero-padded to n x n

    OmegaSeq as_seq() const;  // rows continued by zeros, tail 0~
};

// Oracle view of a continuous map on omega(omega 2): answers finite
// queries and provides an honest continuity modulus. Implementations must
// be deterministic and re-entrant.
class SeqMapOracle {
public:
    virtual ~SeqMapOracle() = default;
    virtual std::string name() const = 0;
    virtual std::uint64_t pi(std::uint64_t m) const = 0;  // increasing enumeration of s
    // Output bit Phi(x)(coord)(pos) when the constraint determines it.
    virtual std::optional<Symbol> out_bit(const SquareGrid& in, std::uint64_t coord,
                                          std::uint64_t pos) const = 0;
    // Square size whose constraint determines coords < coords_bound at
    // positions < pos_bound.
    virtual std::size_t modulus(std::size_t coords_bound, std::size_t pos_bound) const = 0;
};

// The concrete interleaving map Phi(x)(n)(<i,j>) = x(n+i)(j): an s-keeping
// homeomorphism onto its image for s = omega.
std::unique_ptr<SeqMapOracle> skeeping_interleave();

// Negative control: copies its input except that output coordinate n leaks
// x(0)(n) into position 0, so agreement beyond a coordinate does not
// propagate to the image (the second s-keeping condition fails).
std::unique_ptr<SeqMapOracle> coordinate_leak_oracle();

struct E1WitnessResult {
    OmegaSeq x;
    SquareGrid grid;
    Certificate cert;
};

// The stage recursion of the E1 counterexample: plants one 1 per
// coordinate beyond the oracle's modulus while pinning the image's
// first-symbol column to Phi(0-bar)'s.
E1WitnessResult e1_witness(const SeqMapOracle& phi, std::size_t stages);

// --- E2 ---------------------------------------------------------------------------------

// (x, y) in D iff some all-differ window [i, j) has delta_i^j > 2.
bool in_D_e2(const UPWord& x, const UPWord& y);
bool in_D_e2_finite(const FiniteWord& x, const FiniteWord& y);

// D_n: the window start must satisfy i >= n and the threshold is 3.
bool in_D_e2_n(std::uint64_t n, const UPWord& x, const UPWord& y);
bool in_D_e2_n_finite(std::uint64_t n, const FiniteWord& x, const FiniteWord& y);

// Thm 15.1 shape: the image pair (Phi(0~ prefix), Phi(01~ prefix)) avoids D
// through the tree's horizon.
Certificate thm_15_1_check(const E2Tree& t);

// Thm 15.2 shape: cross-tree inequalities of the verified family and
// D_n-avoidance (threshold 3) of the (g0, g1) image pair for every n up to
// the horizon.
Certificate thm_15_2_check(const E2TreeFamily& f);

// --- E3 ----------------------------------------------------------------------------------

bool in_D_e3(const OmegaSeq& x, const OmegaSeq& y);  // coordinate-0 words differ

// Finitely supported element of the omega-product of the direct sum of Z2:
// finitely many nonzero rows, each of finite support.
struct GridGroupElem {
    std::map<std::uint64_t, std::vector<Symbol>> rows;  // trailing zeros trimmed

    static GridGroupElem grid_difference(const FiniteWord& s, const FiniteWord& t);
    Symbol at(std::uint64_t i, std::uint64_t j) const;
    GridGroupElem plus(const GridGroupElem& o) const;  // coordinatewise xor
    bool is_zero() const { return rows.empty(); }
    std::optional<std::uint64_t> max_row() const;

    friend bool operator==(const GridGroupElem& a, const GridGroupElem& b) = default;
};

// Coherent family of group elements indexed by equal-length grid words.
struct GridSystem {
    std::size_t horizon = 0;
    std::map<std::pair<FiniteWord, FiniteWord>, GridGroupElem> g;

    const GridGroupElem& at(const FiniteWord& s, const FiniteWord& t) const;
};

// Oracle view of a continuous map on omega(omega 2) constrained by grid
// words (partial grids under the Cantor coding).
class GridMapOracle {
public:
    virtual ~GridMapOracle() = default;
    virtual std::string name() const = 0;
    virtual std::optional<Symbol> out_bit(const FiniteWord& s, std::uint64_t coord,
                                          std::uint64_t pos) const = 0;
    // Grid-word length pinning output coordinate 0 at positions < bound.
    virtual std::size_t modulus_row0(std::size_t bound) const = 0;
};

struct GridInstance {
    std::unique_ptr<GridMapOracle> oracle;
    GridSystem system;
};

// Phi = identity, k_i = i, p_{m,i} = i, g_{s,t} = grid difference.
GridInstance identity_grid_instance(std::size_t horizon);

// Cocycle law, coherence, support bound and the pointwise translation
// property, checked exhaustively over the table's horizon.
Certificate grid_system_check(const GridSystem& gs);

struct E3WitnessResult {
    OmegaSeq x;
    FiniteWord grid_word;
    Certificate cert;
};

// The s_n recursion: plant 1s at codes <1, q> beyond the modulus while the
// image's coordinate 0 stays pinned to Phi(0-bar)(0).
E3WitnessResult e3_witness(const GridMapOracle& phi, std::size_t stages);

}  // namespace upw
