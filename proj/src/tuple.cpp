#include "algchar/tuple.hpp"

#include <algorithm>

namespace algchar {

int shuffle_sign(const Tuple& i, const Tuple& j) {
  // Count pairs (a in i, b in j) with b < a; parity of that count is the
  // parity of the merge permutation.
  long inv = 0;
  for (int a : i)
    for (int b : j) {
      if (a == b) return 0;
      if (b < a) ++inv;
    }
  return inv % 2 ? -1 : 1;
}

Tuple merge_tuples(const Tuple& i, const Tuple& j) {
  Tuple out;
  out.reserve(i.size() + j.size());
  std::merge(i.begin(), i.end(), j.begin(), j.end(), std::back_inserter(out));
  return out;
}

std::pair<Tuple, int> normalize_tuple(std::vector<int> idx) {
  int sign = 1;
  for (std::size_t a = 1; a < idx.size(); ++a)
    for (std::size_t b = a; b > 0 && idx[b] < idx[b - 1]; --b) {
      std::swap(idx[b], idx[b - 1]);
      sign = -sign;
    }
  for (std::size_t a = 1; a < idx.size(); ++a)
    if (idx[a] == idx[a - 1]) return {{}, 0};
  return {std::move(idx), sign};
}

std::vector<Tuple> increasing_tuples(int n, int k) {
  std::vector<Tuple> out;
  if (k < 0 || k > n) return out;
  Tuple t(k);
  for (int i = 0; i < k; ++i) t[i] = i;
  while (true) {
    out.push_back(t);
    int i = k - 1;
    while (i >= 0 && t[i] == n - k + i) --i;
    if (i < 0) break;
    ++t[i];
    for (int j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
  }
  return out;
}

Tuple tuple_erase(const Tuple& t, int pos) {
  Tuple out;
  out.reserve(t.size() - 1);
  for (int a = 0; a < (int)t.size(); ++a)
    if (a != pos) out.push_back(t[a]);
  return out;
}

}  // namespace algchar
