#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace lrrc {

// Physical storage nodes are numbered 1..n (n <= 30 everywhere in this
// project); a set of them is a bitmask with node i at bit (i-1).
using NodeMask = std::uint32_t;

inline NodeMask node_bit(int node) { return NodeMask{1} << (node - 1); }
inline bool contains(NodeMask set, int node) { return (set & node_bit(node)) != 0; }
inline int set_size(NodeMask set) { return std::popcount(set); }
inline NodeMask full_mask(int n) { return (NodeMask{1} << n) - 1; }

inline std::vector<int> to_nodes(NodeMask set) {
  std::vector<int> out;
  for (int i = 1; set != 0; ++i, set >>= 1)
    if (set & 1) out.push_back(i);
  return out;
}

template <typename It>
NodeMask mask_of(It first, It last) {
  NodeMask m = 0;
  for (; first != last; ++first) m |= node_bit(*first);
  return m;
}

inline NodeMask mask_of(std::initializer_list<int> nodes) {
  return mask_of(nodes.begin(), nodes.end());
}

inline NodeMask mask_of(const std::vector<int>& nodes) {
  return mask_of(nodes.begin(), nodes.end());
}

// "1,3,5"; empty set prints as "-".
inline std::string mask_str(NodeMask set) {
  if (set == 0) return "-";
  std::string out;
  for (int node : to_nodes(set)) {
    if (!out.empty()) out += ',';
    out += std::to_string(node);
  }
  return out;
}

inline NodeMask mask_parse(const std::string& text) {
  if (text.empty() || text == "-") return 0;
  NodeMask m = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    m |= node_bit(std::stoi(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return m;
}

// Visits every k-subset of the given set, as masks.
template <typename Fn>
void for_each_subset_of_size(NodeMask set, int k, Fn&& fn) {
  std::vector<int> nodes = to_nodes(set);
  int n = static_cast<int>(nodes.size());
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    NodeMask m = 0;
    for (int i : idx) m |= node_bit(nodes[i]);
    fn(m);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace lrrc
