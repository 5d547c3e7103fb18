#include "fatou/basins.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include "fatou/error.hpp"

namespace fatou {

namespace {

// Cycles closer than this are the same cycle seen from different critical
// points.
constexpr double kSameCycleTolerance = 1e-7;

bool same_cycle(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b) {
  if (a.size() != b.size()) return false;
  return std::any_of(b.begin(), b.end(), [&](const SpherePoint& p) { return chordal(a.front(), p) < kSameCycleTolerance; });
}

void check_traps(const std::vector<std::vector<SpherePoint>>& cycles, double radius) {
  std::vector<SpherePoint> all;
  for (const auto& c : cycles) all.insert(all.end(), c.begin(), c.end());
  for (size_t i = 0; i < all.size(); ++i) {
    for (size_t j = i + 1; j < all.size(); ++j) {
      if (chordal(all[i], all[j]) <= 2.0 * radius) {
        throw InvalidArgument("trap disks around " + all[i].to_string() + " and " + all[j].to_string() + " overlap");
      }
    }
  }
}

}  // namespace

int default_thread_count() {
  if (const char* env = std::getenv("FATOU_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::vector<SpherePoint>> attracting_cycles(const CriticalPortrait& portrait) {
  std::vector<std::vector<SpherePoint>> out;
  for (const auto& r : portrait.orbits) {
    if (!r.resolved) continue;
    if (r.cycle_class != CycleClass::superattracting && r.cycle_class != CycleClass::attracting) continue;
    if (std::none_of(out.begin(), out.end(), [&](const auto& c) { return same_cycle(c, r.cycle); })) {
      out.push_back(r.cycle);
    }
  }
  return out;
}

CellRecord classify_point(const RationalMap& f, const std::vector<std::vector<SpherePoint>>& cycles,
                          const SpherePoint& start, const BasinOptions& opts) {
  SpherePoint x = start;
  for (int n = 0; n <= opts.max_iterations; ++n) {
    for (size_t c = 0; c < cycles.size(); ++c) {
      const auto& cyc = cycles[c];
      for (size_t k = 0; k < cyc.size(); ++k) {
        if (chordal(x, cyc[k]) < opts.trap_radius) {
          const int period = static_cast<int>(cyc.size());
          CellRecord r;
          r.cycle_id = static_cast<int>(c);
          r.entry = static_cast<int>(k);
          r.steps = n;
          r.phase = ((r.entry - n) % period + period) % period;
          return r;
        }
      }
    }
    x = f(x);
  }
  return {};
}

Complex BasinGrid::cell_center(int col, int row) const {
  const double dx = (bounds.xmax - bounds.xmin) / width;
  const double dy = (bounds.ymax - bounds.ymin) / height;
  return {bounds.xmin + (col + 0.5) * dx, bounds.ymax - (row + 0.5) * dy};
}

namespace {

std::optional<std::pair<int, int>> locate(const Bounds& b, int width, int height, Complex z) {
  if (!(z.real() >= b.xmin && z.real() <= b.xmax && z.imag() >= b.ymin && z.imag() <= b.ymax)) return std::nullopt;
  const int col = std::min(width - 1, static_cast<int>((z.real() - b.xmin) / (b.xmax - b.xmin) * width));
  const int row = std::min(height - 1, static_cast<int>((b.ymax - z.imag()) / (b.ymax - b.ymin) * height));
  return std::make_pair(col, row);
}

}  // namespace

std::optional<std::pair<int, int>> BasinGrid::cell_of(Complex z) const { return locate(bounds, width, height, z); }

BasinGrid classify_grid(const RationalMap& f, const CriticalPortrait& portrait, const Bounds& bounds, int width,
                        int height, const BasinOptions& opts) {
  if (width < 1 || height < 1) throw InvalidArgument("grid resolution must be at least 1x1");
  if (!(bounds.xmax > bounds.xmin) || !(bounds.ymax > bounds.ymin)) throw InvalidArgument("grid bounds are empty");
  if (!(opts.trap_radius > 0.0)) throw InvalidArgument("trap radius must be positive");
  if (opts.max_iterations < 0) throw InvalidArgument("max iterations must be non-negative");

  BasinGrid grid;
  grid.bounds = bounds;
  grid.width = width;
  grid.height = height;
  grid.options = opts;
  grid.cycles = attracting_cycles(portrait);
  if (grid.cycles.empty()) throw InvalidArgument("no attracting cycle among the critical orbits");
  check_traps(grid.cycles, opts.trap_radius);
  grid.cells.resize(static_cast<size_t>(width) * height);

  const int threads = std::clamp(opts.threads > 0 ? opts.threads : default_thread_count(), 1, height);
  auto work = [&](int first_row) {
    for (int row = first_row; row < height; row += threads) {
      for (int col = 0; col < width; ++col) {
        grid.cells[static_cast<size_t>(row) * width + col] =
            classify_point(f, grid.cycles, SpherePoint(grid.cell_center(col, row)), opts);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
  return grid;
}

ComponentLabeling label_components(const BasinGrid& grid) {
  ComponentLabeling out;
  out.bounds = grid.bounds;
  out.width = grid.width;
  out.height = grid.height;
  out.labels.assign(grid.cells.size(), -1);
  std::vector<size_t> stack;
  for (size_t start = 0; start < grid.cells.size(); ++start) {
    const CellRecord& seed = grid.cells[start];
    if (!seed.resolved() || out.labels[start] >= 0) continue;
    Component comp;
    comp.label = static_cast<int>(out.components.size());
    comp.cycle_id = seed.cycle_id;
    comp.phase = seed.phase;
    comp.representative = grid.cell_center(static_cast<int>(start % grid.width), static_cast<int>(start / grid.width));
    out.labels[start] = comp.label;
    stack.push_back(start);
    while (!stack.empty()) {
      const size_t idx = stack.back();
      stack.pop_back();
      ++comp.pixel_count;
      const int col = static_cast<int>(idx % grid.width);
      const int row = static_cast<int>(idx / grid.width);
      const int nbr[4][2] = {{col - 1, row}, {col + 1, row}, {col, row - 1}, {col, row + 1}};
      for (const auto& n : nbr) {
        if (n[0] < 0 || n[0] >= grid.width || n[1] < 0 || n[1] >= grid.height) continue;
        const size_t j = static_cast<size_t>(n[1]) * grid.width + n[0];
        const CellRecord& c = grid.cells[j];
        if (out.labels[j] >= 0 || c.cycle_id != seed.cycle_id || c.phase != seed.phase) continue;
        out.labels[j] = comp.label;
        stack.push_back(j);
      }
    }
    out.components.push_back(comp);
  }
  return out;
}

int component_of(const ComponentLabeling& labeling, Complex z) {
  const auto cell = locate(labeling.bounds, labeling.width, labeling.height, z);
  if (!cell) throw InvalidArgument("point lies outside the grid bounds");
  const int label = labeling.labels[static_cast<size_t>(cell->second) * labeling.width + cell->first];
  if (label < 0) throw InvalidArgument("point lies in an unresolved cell");
  return label;
}

Palette default_palette(const BasinGrid& grid) {
  static constexpr Rgb kColors[] = {
      {230, 159, 0}, {86, 180, 233}, {0, 158, 115}, {240, 228, 66},  {0, 114, 178},
      {213, 94, 0},  {204, 121, 167}, {153, 153, 153}, {255, 255, 255}, {120, 60, 20},
  };
  std::vector<int> offset;
  int next = 0;
  for (const auto& c : grid.cycles) {
    offset.push_back(next);
    next += static_cast<int>(c.size());
  }
  return [offset](int cycle_id, int phase) -> Rgb {
    const int idx = offset[static_cast<size_t>(cycle_id)] + phase;
    return kColors[static_cast<size_t>(idx) % std::size(kColors)];
  };
}

std::string render_ppm(const BasinGrid& grid, const Palette& palette) {
  std::string out = "P6\n" + std::to_string(grid.width) + " " + std::to_string(grid.height) + "\n255\n";
  out.reserve(out.size() + grid.cells.size() * 3);
  for (const CellRecord& c : grid.cells) {
    const Rgb rgb = c.resolved() ? palette(c.cycle_id, c.phase) : Rgb{0, 0, 0};
    out.append(reinterpret_cast<const char*>(rgb.data()), 3);
  }
  return out;
}

std::string render_ppm(const BasinGrid& grid) { return render_ppm(grid, default_palette(grid)); }

}  // namespace fatou
