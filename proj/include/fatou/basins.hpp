#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fatou/orbits.hpp"

namespace fatou {

struct Bounds {
  double xmin = -2.0, xmax = 2.0, ymin = -2.0, ymax = 2.0;
};

/// Where a cell's orbit first came within the trap radius of a cycle.
struct CellRecord {
  /// -1 when unresolved.
  int cycle_id = -1;
  /// Index of the cycle point the orbit is in step with at time zero:
  /// (entry - steps) mod period.  f shifts it by one.
  int phase = 0;
  /// Index of the cycle point whose trap disk was entered.
  int entry = 0;
  int steps = 0;

  bool resolved() const { return cycle_id >= 0; }
};

struct BasinOptions {
  /// Chordal radius of the trap disk around each cycle point.
  double trap_radius = 1e-6;
  int max_iterations = 500;
  /// 0 means FATOU_THREADS, or the hardware concurrency when unset.
  int threads = 0;
};

/// Attracting cycles reached by critical orbits, numbered by first
/// appearance in the portrait.
std::vector<std::vector<SpherePoint>> attracting_cycles(const CriticalPortrait& portrait);

/// Iterates x until it enters a trap disk or max_iterations runs out.
CellRecord classify_point(const RationalMap& f, const std::vector<std::vector<SpherePoint>>& cycles,
                          const SpherePoint& x, const BasinOptions& opts = {});

struct BasinGrid {
  Bounds bounds;
  int width = 0;
  int height = 0;
  std::vector<std::vector<SpherePoint>> cycles;
  BasinOptions options;
  /// Row-major, row 0 at the top (ymax).
  std::vector<CellRecord> cells;

  Complex cell_center(int col, int row) const;
  /// Cell containing z, or nullopt outside the bounds.
  std::optional<std::pair<int, int>> cell_of(Complex z) const;
  const CellRecord& at(int col, int row) const { return cells[static_cast<size_t>(row) * width + col]; }
};

/// Classifies every cell center; rows are shared out among threads.
///
/// Throws InvalidArgument when the portrait has no attracting cycle, when
/// trap disks overlap, or for empty bounds or resolution.
BasinGrid classify_grid(const RationalMap& f, const CriticalPortrait& portrait, const Bounds& bounds, int width,
                        int height, const BasinOptions& opts = {});

struct Component {
  int label = 0;
  int cycle_id = 0;
  int phase = 0;
  /// Center of the first cell discovered in row-major order.
  Complex representative;
  long pixel_count = 0;
};

struct ComponentLabeling {
  Bounds bounds;
  int width = 0;
  int height = 0;
  /// Row-major; -1 for unresolved cells.
  std::vector<int> labels;
  std::vector<Component> components;
};

/// 4-connected components of cells sharing (cycle_id, phase), labelled in
/// row-major discovery order.
ComponentLabeling label_components(const BasinGrid& grid);

/// Label of the cell containing z.  Throws InvalidArgument outside the
/// bounds or on an unresolved cell.
int component_of(const ComponentLabeling& labeling, Complex z);

using Rgb = std::array<std::uint8_t, 3>;
using Palette = std::function<Rgb(int cycle_id, int phase)>;

/// Fixed table of well-separated colours, walked in order of
/// (cycle_id, phase) across the grid's cycles.
Palette default_palette(const BasinGrid& grid);

/// Binary PPM: "P6\n<w> <h>\n255\n" then RGB triples, unresolved cells black.
std::string render_ppm(const BasinGrid& grid, const Palette& palette);
std::string render_ppm(const BasinGrid& grid);

/// FATOU_THREADS when set to a positive integer, else hardware concurrency.
int default_thread_count();

}  // namespace fatou
