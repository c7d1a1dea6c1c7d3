#include "lhg/analytics.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace lhg {

namespace {

struct Universe {
  std::vector<uint64_t> ids;
  std::unordered_map<uint64_t, size_t> index;

  explicit Universe(const GraphStore& store) {
    store.for_each_vertex([&](uint64_t u) {
      ids.push_back(u);
      store.for_each_neighbor(u, [&](uint64_t v, double) { ids.push_back(v); });
    });
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    index.reserve(ids.size());
    for (size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);
  }

  size_t at(uint64_t id) const { return index.at(id); }
  bool contains(uint64_t id) const { return index.count(id) > 0; }
  size_t size() const { return ids.size(); }
};

// Undirected neighbor lists over the universe, self-loops dropped,
// duplicates merged. Index-based.
std::vector<std::vector<size_t>> undirected_adjacency(const GraphStore& store,
                                                      const Universe& uni) {
  std::vector<std::vector<size_t>> adj(uni.size());
  for (size_t i = 0; i < uni.size(); ++i) {
    store.for_each_neighbor(uni.ids[i], [&](uint64_t v, double) {
      size_t j = uni.at(v);
      if (j == i) return;
      adj[i].push_back(j);
      adj[j].push_back(i);
    });
  }
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return adj;
}

template <typename T>
std::map<uint64_t, T> zip_results(const Universe& uni,
                                  const std::vector<T>& values) {
  std::map<uint64_t, T> out;
  for (size_t i = 0; i < uni.size(); ++i) {
    out.emplace_hint(out.end(), uni.ids[i], values[i]);
  }
  return out;
}

}  // namespace

std::vector<uint64_t> vertex_universe(const GraphStore& store) {
  return Universe(store).ids;
}

std::map<uint64_t, uint64_t> bfs(const GraphStore& store, uint64_t source) {
  Universe uni(store);
  if (!uni.contains(source)) {
    throw std::invalid_argument("bfs: unknown source vertex");
  }
  std::vector<uint64_t> level(uni.size(), kUnreachedLevel);
  std::queue<uint64_t> frontier;
  level[uni.at(source)] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    uint64_t u = frontier.front();
    frontier.pop();
    uint64_t next = level[uni.at(u)] + 1;
    store.for_each_neighbor(u, [&](uint64_t v, double) {
      uint64_t& lv = level[uni.at(v)];
      if (lv == kUnreachedLevel) {
        lv = next;
        frontier.push(v);
      }
    });
  }
  return zip_results(uni, level);
}

std::map<uint64_t, double> pagerank(const GraphStore& store, size_t iterations,
                                    double damping) {
  if (iterations < 1) {
    throw std::invalid_argument("pagerank: iterations must be >= 1");
  }
  if (!(damping > 0.0 && damping < 1.0)) {
    throw std::invalid_argument("pagerank: damping must be in (0, 1)");
  }
  Universe uni(store);
  size_t n = uni.size();
  if (n == 0) return {};
  std::vector<uint64_t> out_degree(n);
  for (size_t i = 0; i < n; ++i) out_degree[i] = store.degree(uni.ids[i]);
  double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> score(n, inv_n), next(n);
  for (size_t it = 0; it < iterations; ++it) {
    double dangling = 0.0;
    for (size_t i = 0; i < n; ++i) {
      if (out_degree[i] == 0) dangling += score[i];
    }
    std::fill(next.begin(), next.end(), 0.0);
    for (size_t i = 0; i < n; ++i) {
      if (out_degree[i] == 0) continue;
      double share = score[i] / static_cast<double>(out_degree[i]);
      store.for_each_neighbor(uni.ids[i], [&](uint64_t v, double) {
        next[uni.at(v)] += share;
      });
    }
    double base = (1.0 - damping) * inv_n + damping * dangling * inv_n;
    for (size_t i = 0; i < n; ++i) next[i] = base + damping * next[i];
    score.swap(next);
  }
  return zip_results(uni, score);
}

std::map<uint64_t, double> lcc(const GraphStore& store, unsigned parallelism) {
  Universe uni(store);
  auto adj = undirected_adjacency(store, uni);
  std::vector<double> coef(uni.size(), 0.0);
  auto worker = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const auto& nbrs = adj[i];
      size_t d = nbrs.size();
      if (d < 2) continue;
      size_t closed = 0;
      for (size_t a = 0; a < d; ++a) {
        for (size_t b = a + 1; b < d; ++b) {
          uint64_t x = uni.ids[nbrs[a]];
          uint64_t y = uni.ids[nbrs[b]];
          if (store.find_edge(x, y) || store.find_edge(y, x)) ++closed;
        }
      }
      coef[i] = 2.0 * static_cast<double>(closed) /
                (static_cast<double>(d) * static_cast<double>(d - 1));
    }
  };
  if (parallelism <= 1 || uni.size() < 2) {
    worker(0, uni.size());
  } else {
    size_t workers = std::min<size_t>(parallelism, uni.size());
    std::vector<std::thread> pool;
    size_t chunk = (uni.size() + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
      size_t begin = w * chunk;
      size_t end = std::min(uni.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  return zip_results(uni, coef);
}

std::map<uint64_t, uint64_t> wcc(const GraphStore& store) {
  Universe uni(store);
  auto adj = undirected_adjacency(store, uni);
  std::vector<uint64_t> label(uni.size(), kUnreachedLevel);
  std::vector<size_t> stack;
  for (size_t seed = 0; seed < uni.size(); ++seed) {
    if (label[seed] != kUnreachedLevel) continue;
    // Ascending seed order makes every label the component minimum.
    label[seed] = uni.ids[seed];
    stack.push_back(seed);
    while (!stack.empty()) {
      size_t i = stack.back();
      stack.pop_back();
      for (size_t j : adj[i]) {
        if (label[j] == kUnreachedLevel) {
          label[j] = uni.ids[seed];
          stack.push_back(j);
        }
      }
    }
  }
  return zip_results(uni, label);
}

std::map<uint64_t, double> sssp(const GraphStore& store, uint64_t source) {
  Universe uni(store);
  if (!uni.contains(source)) {
    throw std::invalid_argument("sssp: unknown source vertex");
  }
  std::vector<double> dist(uni.size(), kUnreachedDistance);
  using Entry = std::pair<double, uint64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  dist[uni.at(source)] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[uni.at(u)]) continue;
    store.for_each_neighbor(u, [&](uint64_t v, double w) {
      if (w < 0.0) {
        throw std::invalid_argument("sssp: negative edge weight");
      }
      double nd = d + w;
      double& dv = dist[uni.at(v)];
      if (nd < dv) {
        dv = nd;
        heap.emplace(nd, v);
      }
    });
  }
  return zip_results(uni, dist);
}

void write_results(std::ostream& os, const std::map<uint64_t, uint64_t>& r) {
  for (const auto& [v, x] : r) os << v << '\t' << x << '\n';
}

void write_results(std::ostream& os, const std::map<uint64_t, double>& r) {
  char buf[64];
  for (const auto& [v, x] : r) {
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    os << v << '\t' << buf << '\n';
  }
}

}  // namespace lhg
