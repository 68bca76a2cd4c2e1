#pragma once

// Exact decision procedures for the five equivalence relations (E0, E1, E2,
// E3, tail equivalence and its S3 twist F) on ultimately periodic words and
// sequences, and the delta pseudo-metrics with exact rationals.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "upw/rational.hpp"
#include "upw/words.hpp"

namespace upw {

// x E0 y iff x(k) = y(k) for all large k.
bool decide_E0(const UPWord& x, const UPWord& y);

// delta_m^n(x, y) = sum of 1/(k+1) over m <= k < n with x(k) != y(k).
Rational delta_window(std::uint64_t m, std::uint64_t n, const UPWord& x, const UPWord& y);
Rational delta_window(std::uint64_t m, std::uint64_t n, const FiniteWord& x, const FiniteWord& y);

// delta_m^omega: infinite iff the difference pattern is eventually periodic
// nonzero (harmonic divergence); else the exact finite sum.
DeltaValue delta_total(std::uint64_t m, const UPWord& x, const UPWord& y);

// x E2 y iff delta(x, y) < infinity.
bool decide_E2(const UPWord& x, const UPWord& y);

// Tail equivalence: some shifts of x and y are literally equal.
//
// Decidability lemma. shift(x, n + |per_x|) = shift(x, n) for every
// n >= |pre_x|, so { shift(x, n) : n in omega } equals
// { shift(x, n) : n <= |pre_x| + |per_x| - 1 }; since canonical forms make
// equality of infinite words syntactic, searching r <= |pre_x| + |per_x| and
// s <= |pre_y| + |per_y| for shift(x, r) == shift(y, s) decides E_tail
// exactly. (unit-proved in the tests against brute-force shift search)
bool decide_Etail(const UPWord& x, const UPWord& y);

// Permutation of {0,1,2} as an array image.
using Perm3 = std::array<Symbol, 3>;
extern const std::array<Perm3, 6> kS3;

UPWord s3_act(const Perm3& g, const UPWord& x);

// x F y iff some p in S3 has (p . x) E_tail^3 y; alphabet-3 words.
bool decide_F(const UPWord& x, const UPWord& y);

// E1: all but finitely many coordinates literally equal.
bool decide_E1(const OmegaSeq& x, const OmegaSeq& y);

// E3: every coordinate E0-equivalent.
bool decide_E3(const OmegaSeq& x, const OmegaSeq& y);

enum class Rel { E0, E1, E2, E3, Etail, F, Equality };

Rel rel_from_name(const std::string& name);
std::string rel_name(Rel r);

// [X]^n_E membership: pairwise non-equivalence.
bool tuple_ok(const std::vector<UPWord>& xs, Rel rel);
bool tuple_ok(const std::vector<OmegaSeq>& xs, Rel rel);

}  // namespace upw
