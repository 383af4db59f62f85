#ifndef PAMPA_MESH_HPP_
#define PAMPA_MESH_HPP_

#include "pampa/state.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pampa {

/// 1D grid: nodes x_0 < x_1 < ... < x_N, cells I_j = [x_j, x_{j+1}].
class Grid1D {
 public:
  explicit Grid1D(std::vector<double> nodes);

  int cells() const { return static_cast<int>(sizes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& cell_sizes() const { return sizes_; }
  const std::vector<double>& cell_centers() const { return centers_; }
  double dx(int cell) const { return sizes_[cell]; }
  double left() const { return nodes_.front(); }
  double right() const { return nodes_.back(); }
  double length() const { return right() - left(); }

 private:
  std::vector<double> nodes_;
  std::vector<double> sizes_;
  std::vector<double> centers_;
};

/// Uniform partition of [a, b] into n cells. Requires n >= 3.
Grid1D build_uniform_grid(double a, double b, int n);

enum class BoundaryKind { periodic, outflow, reflective };

BoundaryKind parse_boundary(std::string_view name);
std::string to_string(BoundaryKind kind);

/// Where an extended (possibly ghost) index takes its data from.
struct GhostSource {
  int index;     // interior index
  bool mirror;   // reflect velocity components
};

/// Index arithmetic for ghost cells and ghost nodes.
///
/// Cells are numbered 0..N-1, nodes 0..N. With periodic boundaries node N is
/// identified with node 0, so only N nodes carry independent data.
class GhostMap {
 public:
  GhostMap(BoundaryKind kind, int cells);

  BoundaryKind kind() const { return kind_; }
  int cells() const { return cells_; }
  /// Number of independent node values (N periodic, N+1 otherwise).
  int distinct_nodes() const { return kind_ == BoundaryKind::periodic ? cells_ : cells_ + 1; }

  GhostSource cell(int c) const;
  GhostSource node(int j) const;

 private:
  BoundaryKind kind_;
  int cells_;
};

/// Field data padded with `width` ghost layers on both sides.
/// Cell c lives at averages[c + width], node j at points[j + width].
template <class Sys>
struct ExtendedField {
  using StateT = State<Sys::dim>;
  int width = 0;
  std::vector<StateT> averages;  // cells -width .. N-1+width
  std::vector<StateT> points;    // nodes -width .. N+width
  std::vector<double> dx;        // per extended cell

  const StateT& avg(int c) const { return averages[c + width]; }
  const StateT& point(int j) const { return points[j + width]; }
  double size(int c) const { return dx[c + width]; }
};

/// Pads a field with ghost values. Periodic wraps, outflow repeats the
/// nearest interior value, reflective mirrors about the boundary node and
/// negates the normal velocity of the mirrored states.
template <class Sys>
ExtendedField<Sys> ghost_extend(const Sys& sys, const DofField<Sys>& field, const Grid1D& grid,
                                BoundaryKind bc, int width) {
  if (width < 1) throw ConfigError("ghost width must be at least 1");
  if (bc == BoundaryKind::reflective && !Sys::has_velocity)
    throw ConfigError("reflective boundaries need a system with a velocity component");
  const int n = grid.cells();
  const GhostMap map(bc, n);
  if (static_cast<int>(field.averages.size()) != n ||
      static_cast<int>(field.points.size()) != map.distinct_nodes())
    throw InvariantViolation("field size does not match grid");

  ExtendedField<Sys> ext;
  ext.width = width;
  ext.averages.resize(n + 2 * width);
  ext.dx.resize(n + 2 * width);
  ext.points.resize(n + 1 + 2 * width);
  for (int c = -width; c < n + width; ++c) {
    const GhostSource src = map.cell(c);
    const auto& u = field.averages[src.index];
    ext.averages[c + width] = src.mirror ? sys.reflect_conserved(u) : u;
    ext.dx[c + width] = grid.dx(src.index);
  }
  for (int j = -width; j <= n + width; ++j) {
    const GhostSource src = map.node(j);
    const auto& w = field.points[src.index];
    ext.points[j + width] = src.mirror ? sys.reflect_transformed(w) : w;
  }
  return ext;
}

}  // namespace pampa

#endif  // PAMPA_MESH_HPP_
