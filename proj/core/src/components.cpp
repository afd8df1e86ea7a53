#include "cn4/components.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace cn4 {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Renumbers arbitrary labels by first appearance in vertex order.
Components canonical(const std::vector<std::uint32_t>& label) {
  Components c;
  c.id.assign(label.size(), kNone);
  std::vector<std::uint32_t> remap(label.size(), kNone);
  for (std::size_t v = 0; v < label.size(); ++v) {
    std::uint32_t& r = remap[label[v]];
    if (r == kNone) {
      r = static_cast<std::uint32_t>(c.sizes.size());
      c.sizes.push_back(0);
    }
    c.id[v] = r;
    ++c.sizes[r];
  }
  return c;
}

std::uint32_t find(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::size_t Components::largest() const {
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

Components weak_components(const Adjacency& g) {
  std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.neighbors(u)) {
      std::uint32_t a = find(parent, u), b = find(parent, v);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::uint32_t> label(n);
  for (std::uint32_t v = 0; v < n; ++v) label[v] = find(parent, v);
  return canonical(label);
}

Components strong_components(const Adjacency& g) {
  std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> index(n, kNone), low(n, 0), label(n, kNone);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  struct Frame {
    Vertex v;
    std::size_t next;
  };
  std::vector<Frame> call;
  std::uint32_t counter = 0, comp = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kNone) continue;
    call.push_back({root, g.offsets[root]});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      Vertex v = f.v;
      if (f.next < g.offsets[v + 1]) {
        Vertex w = g.targets[f.next++];
        if (index[w] == kNone) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, g.offsets[w]});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          label[w] = comp;
        } while (w != v);
        ++comp;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  return canonical(label);
}

Components strong_components_kosaraju(const Adjacency& g) {
  std::size_t n = g.vertex_count();
  std::vector<Vertex> order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  std::vector<std::pair<Vertex, std::size_t>> call;
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    call.push_back({root, g.offsets[root]});
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < g.offsets[v + 1]) {
        Vertex w = g.targets[next++];
        if (!seen[w]) {
          seen[w] = 1;
          call.push_back({w, g.offsets[w]});
        }
      } else {
        order.push_back(v);
        call.pop_back();
      }
    }
  }
  Adjacency t = transpose(g);
  std::vector<std::uint32_t> label(n, kNone);
  std::vector<Vertex> work;
  std::uint32_t comp = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (label[*it] != kNone) continue;
    label[*it] = comp;
    work.push_back(*it);
    while (!work.empty()) {
      Vertex v = work.back();
      work.pop_back();
      for (Vertex w : t.neighbors(v))
        if (label[w] == kNone) {
          label[w] = comp;
          work.push_back(w);
        }
    }
    ++comp;
  }
  return canonical(label);
}

Histogram size_distribution(const Components& c) {
  Histogram h;
  for (auto s : c.sizes) ++h[static_cast<std::int64_t>(s)];
  return h;
}

}  // namespace cn4
