#pragma once

#include <utility>
#include <vector>

namespace algchar {

/// Strictly increasing index tuple (0-based generator indices).
using Tuple = std::vector<int>;

/// Sign of the shuffle merging I and J (both increasing, disjoint):
/// (-1)^{#inversions}.  Returns 0 when they intersect.
int shuffle_sign(const Tuple& i, const Tuple& j);

Tuple merge_tuples(const Tuple& i, const Tuple& j);

/// Sort an arbitrary index list; returns {sorted tuple, sign}, sign 0 when an
/// index repeats.
std::pair<Tuple, int> normalize_tuple(std::vector<int> idx);

/// All increasing k-tuples over {0..n-1} in lexicographic order.
std::vector<Tuple> increasing_tuples(int n, int k);

Tuple tuple_erase(const Tuple& t, int pos);

}  // namespace algchar
