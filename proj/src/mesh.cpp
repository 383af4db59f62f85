#include "pampa/mesh.hpp"

namespace pampa {

Grid1D::Grid1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw ConfigError("grid needs at least two nodes");
  const std::size_t n = nodes_.size() - 1;
  sizes_.resize(n);
  centers_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    sizes_[j] = nodes_[j + 1] - nodes_[j];
    if (!(sizes_[j] > 0.0)) throw ConfigError("grid nodes must be strictly increasing");
    centers_[j] = (nodes_[j] + nodes_[j + 1]) / 2;
  }
}

Grid1D build_uniform_grid(double a, double b, int n) {
  if (!(a < b)) throw ConfigError("domain must satisfy a < b");
  if (n < 3) throw ConfigError("at least 3 cells are required");
  std::vector<double> nodes(n + 1);
  const double h = (b - a) / n;
  for (int j = 0; j <= n; ++j) nodes[j] = a + j * h;
  nodes[n] = b;
  return Grid1D(std::move(nodes));
}

BoundaryKind parse_boundary(std::string_view name) {
  if (name == "periodic") return BoundaryKind::periodic;
  if (name == "outflow") return BoundaryKind::outflow;
  if (name == "reflective") return BoundaryKind::reflective;
  throw ConfigError("unknown boundary condition '" + std::string(name) + "'");
}

std::string to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::periodic: return "periodic";
    case BoundaryKind::outflow: return "outflow";
    case BoundaryKind::reflective: return "reflective";
  }
  return "?";
}

GhostMap::GhostMap(BoundaryKind kind, int cells) : kind_(kind), cells_(cells) {}

GhostSource GhostMap::cell(int c) const {
  const int n = cells_;
  if (c >= 0 && c < n) return {c, false};
  switch (kind_) {
    case BoundaryKind::periodic: return {((c % n) + n) % n, false};
    case BoundaryKind::outflow: return {c < 0 ? 0 : n - 1, false};
    case BoundaryKind::reflective: return {c < 0 ? -1 - c : 2 * n - 1 - c, true};
  }
  return {0, false};
}

GhostSource GhostMap::node(int j) const {
  const int n = cells_;
  if (kind_ == BoundaryKind::periodic) return {((j % n) + n) % n, false};
  if (j >= 0 && j <= n) return {j, false};
  if (kind_ == BoundaryKind::outflow) return {j < 0 ? 0 : n, false};
  return {j < 0 ? -j : 2 * n - j, true};
}

}  // namespace pampa
