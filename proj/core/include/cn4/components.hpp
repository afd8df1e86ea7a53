#pragma once

#include <cstdint>
#include <vector>

#include "cn4/adjacency.hpp"
#include "cn4/degree.hpp"

namespace cn4 {

// Component ids are numbered by each component's smallest vertex, in
// increasing order, so two algorithms agree byte for byte.
struct Components {
  std::vector<std::uint32_t> id;
  std::vector<std::size_t> sizes;  // indexed by component id

  std::size_t count() const { return sizes.size(); }
  std::size_t largest() const;
};

Components weak_components(const Adjacency& g);
// Iterative Tarjan.
Components strong_components(const Adjacency& g);
// Iterative Kosaraju; used to cross-check Tarjan.
Components strong_components_kosaraju(const Adjacency& g);

// size -> number of components of that size.
Histogram size_distribution(const Components& c);

}  // namespace cn4
