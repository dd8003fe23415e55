#include "actconv/maxflow.hpp"

#include <algorithm>
#include <stdexcept>

namespace actconv {

MaxFlow::MaxFlow(int nodes) : graph_(static_cast<std::size_t>(nodes)) {
  if (nodes < 2) throw std::invalid_argument("MaxFlow: need at least two nodes");
}

void MaxFlow::add_edge(int from, int to, std::int64_t cap) {
  if (cap < 0) throw std::invalid_argument("MaxFlow: negative capacity");
  auto& gf = graph_[static_cast<std::size_t>(from)];
  auto& gt = graph_[static_cast<std::size_t>(to)];
  gf.push_back({to, static_cast<int>(gt.size()), cap});
  gt.push_back({from, static_cast<int>(gf.size()) - 1, 0});
}

std::int64_t MaxFlow::run(int source, int sink) {
  const int n = static_cast<int>(graph_.size());
  std::vector<int> height(n, 0);
  std::vector<std::int64_t> excess(n, 0);
  std::vector<std::size_t> cur(n, 0);
  std::vector<int> count(n + 1, 0);
  std::vector<std::vector<int>> bucket(n);
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(n));
  int highest = -1;

  auto activate = [&](int v) {
    if (v == source || v == sink || height[v] >= n) return;
    bucket[height[v]].push_back(v);
    highest = std::max(highest, height[v]);
  };

  // Exact distances to the sink in the residual graph.
  auto global_relabel = [&] {
    std::fill(height.begin(), height.end(), n);
    std::fill(count.begin(), count.end(), 0);
    for (auto& b : bucket) b.clear();
    highest = -1;
    height[sink] = 0;
    queue.clear();
    queue.push_back(sink);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int v = queue[qi];
      for (const Edge& e : graph_[v]) {
        const int u = e.to;
        if (u != source && height[u] == n && graph_[u][e.rev].cap > 0) {
          height[u] = height[v] + 1;
          queue.push_back(u);
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      if (height[v] < n) ++count[height[v]];
      cur[v] = 0;
      if (excess[v] > 0) activate(v);
    }
  };

  for (Edge& e : graph_[source]) {
    if (e.cap == 0) continue;
    const std::int64_t f = e.cap;
    e.cap = 0;
    graph_[e.to][e.rev].cap += f;
    excess[e.to] += f;
  }
  global_relabel();

  int relabels = 0;
  while (highest >= 0) {
    if (bucket[highest].empty()) {
      --highest;
      continue;
    }
    const int v = bucket[highest].back();
    bucket[highest].pop_back();
    if (height[v] != highest || excess[v] == 0) continue;

    while (excess[v] > 0) {
      if (cur[v] == graph_[v].size()) {
        const int old = height[v];
        int fresh = n;
        for (const Edge& e : graph_[v]) {
          if (e.cap > 0) fresh = std::min(fresh, height[e.to] + 1);
        }
        --count[old];
        if (count[old] == 0) {
          // Gap: nothing above `old` can reach the sink any more.
          for (int u = 0; u < n; ++u) {
            if (height[u] > old && height[u] < n) {
              --count[height[u]];
              height[u] = n;
            }
          }
          for (int h = old + 1; h < n; ++h) bucket[h].clear();
          height[v] = n;
          break;
        }
        height[v] = fresh;
        if (fresh >= n) break;
        ++count[fresh];
        cur[v] = 0;
        ++relabels;
        continue;
      }
      Edge& e = graph_[v][cur[v]];
      if (e.cap > 0 && height[v] == height[e.to] + 1) {
        const std::int64_t d = std::min(excess[v], e.cap);
        const bool was_idle = excess[e.to] == 0;
        e.cap -= d;
        graph_[e.to][e.rev].cap += d;
        excess[v] -= d;
        excess[e.to] += d;
        if (was_idle) activate(e.to);
      } else {
        ++cur[v];
      }
    }
    if (relabels > n) {
      relabels = 0;
      global_relabel();
    }
  }
  return excess[sink];
}

}  // namespace actconv
