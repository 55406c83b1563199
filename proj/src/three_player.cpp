#include "procurement/three_player.hpp"

#include <algorithm>
#include <utility>

namespace procurement {

Cutpoints3 cutpoints3(double y, double z, const MarketConfig& cfg) {
  require_bid(y, cfg, "y");
  require_bid(z, cfg, "z");
  const double E = cfg.E;
  return {(y + z + 3.0 * E) / 5.0, 5.0 * y - 3.0 * E - z, 5.0 * z - 3.0 * E - y};
}

std::string to_string(CellTag tag) {
  static const char* names[] = {"O1", "O2", "O3", "O4", "O5"};
  return names[static_cast<int>(tag)];
}

std::string to_string(const OrderingCell& cell) {
  return to_string(cell.tag) + (cell.mirrored ? "'" : "");
}

OrderingCell ordering_cell(double y, double z, const MarketConfig& cfg) {
  const Cutpoints3 c = cutpoints3(y, z, cfg);
  double py = c.p_y, pz = c.p_z;
  const bool mirrored = z < y;
  if (mirrored) {
    std::swap(y, z);
    std::swap(py, pz);
  }
  enum Name { PY, PZ, Y, Z, T };
  std::array<std::pair<double, Name>, 5> pts{{{py, PY}, {pz, PZ}, {y, Y}, {z, Z}, {c.t, T}}};
  std::sort(pts.begin(), pts.end());
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const double scale = std::max({1.0, std::abs(pts[k].first), std::abs(pts[k - 1].first)});
    if (pts[k].first - pts[k - 1].first <= 1e-12 * scale) {
      throw BoundaryError("ordering_cell: coincident cutpoints at (y, z) = (" + std::to_string(y) +
                          ", " + std::to_string(z) + ")");
    }
  }
  std::array<Name, 5> order{};
  for (std::size_t k = 0; k < 5; ++k) order[k] = pts[k].second;

  using O = std::array<Name, 5>;
  if (order == O{PY, PZ, Y, Z, T}) return {CellTag::O1, mirrored};
  if (order == O{PY, Y, PZ, Z, T}) return {CellTag::O2, mirrored};
  if (order == O{PY, Y, T, Z, PZ}) return {CellTag::O3, mirrored};
  if (order == O{T, Y, Z, PY, PZ}) return {CellTag::O4, mirrored};
  if (order == O{T, Y, PY, Z, PZ}) return {CellTag::O5, mirrored};
  throw std::logic_error("ordering_cell: order outside the five admissible cells");
}

JumpRow jump_signs(const OrderingCell& cell) {
  JumpRow row{};
  switch (cell.tag) {
    case CellTag::O1: row = {0, -1, +1, 0, -1}; break;
    case CellTag::O2: row = {+1, -1, +1, -1, -1}; break;
    case CellTag::O3: row = {+1, -1, 0, 0, -1}; break;
    case CellTag::O4:
    case CellTag::O5: row = {-1, 0, 0, 0, 0}; break;
  }
  if (cell.mirrored) {
    std::swap(row.y, row.z);
    std::swap(row.p_y, row.p_z);
  }
  return row;
}

}  // namespace procurement
