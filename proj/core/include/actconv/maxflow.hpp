#pragma once

#include <cstdint>
#include <vector>

namespace actconv {

/// Highest-label push-relabel with gap and global-relabel heuristics.
/// Integer capacities; only the flow value is computed (phase one).
class MaxFlow {
 public:
  explicit MaxFlow(int nodes);

  void add_edge(int from, int to, std::int64_t cap);
  void reserve_edges(int node, std::size_t count) { graph_[static_cast<std::size_t>(node)].reserve(count); }
  std::int64_t run(int source, int sink);

 private:
  struct Edge {
    int to;
    int rev;
    std::int64_t cap;
  };
  std::vector<std::vector<Edge>> graph_;
};

}  // namespace actconv
