#pragma once

// Seeded generators for words and trees. Every randomized pipeline in the
// toolkit draws from an explicit engine, so runs are reproducible from the
// seed alone.

#include <random>

#include "upw/trees.hpp"
#include "upw/words.hpp"

namespace upw {

using Rng = std::mt19937_64;

FiniteWord random_finite_word(Rng& rng, int alphabet, std::size_t length);

UPWord random_upword(Rng& rng, int alphabet, std::size_t max_preamble, std::size_t max_period);

// Stem length <= max_stem, at most two explicit levels, cycle of one to
// three block pairs with block length <= max_block_len.
E0Tree random_e0_tree(Rng& rng, std::size_t max_stem, std::size_t max_block_len);

// Pruned tree: every node of length < depth keeps at least one child.
FiniteTree random_pruned_tree(Rng& rng, std::size_t depth);

// A word in A = {w over 3 : no two consecutive symbols equal}, drawn with
// preamble length <= max_preamble and period length <= max_period.
UPWord random_alternating_word3(Rng& rng, std::size_t max_preamble, std::size_t max_period);

// All canonical UPWords in A with the given size bounds, in lexicographic
// (preamble, period) order by total size.
std::vector<UPWord> enumerate_alternating_words3(std::size_t max_preamble,
                                                 std::size_t max_period);

}  // namespace upw
