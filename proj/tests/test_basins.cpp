#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "fatou/basins.hpp"
#include "fatou/catalog.hpp"
#include "fatou/error.hpp"
#include "support.hpp"

using namespace fatou;
using fatou::testing::Rng;

namespace {

const RationalMap g = catalog::lookup("paper-g");
const CriticalPortrait portrait = critical_portrait(g);
const Bounds square{-3.0, 3.0, -3.0, 3.0};

int cycle_containing(const BasinGrid& grid, const SpherePoint& p) {
  for (size_t i = 0; i < grid.cycles.size(); ++i)
    for (const auto& q : grid.cycles[i])
      if (chordal(p, q) < 1e-9) return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST_CASE("attracting cycles of the cubic") {
  const auto cycles = attracting_cycles(portrait);
  REQUIRE(cycles.size() == 2);
  size_t sizes = cycles[0].size() + cycles[1].size();
  CHECK(sizes == 3);
}

TEST_CASE("classification of single points") {
  const auto cycles = attracting_cycles(portrait);
  const auto at_zero = classify_point(g, cycles, SpherePoint(0.0));
  REQUIRE(at_zero.resolved());
  CHECK(at_zero.steps == 0);
  CHECK(cycles[static_cast<size_t>(at_zero.cycle_id)].size() == 2);
  const auto at_minus_two = classify_point(g, cycles, SpherePoint(-2.0));
  CHECK(at_minus_two.cycle_id == at_zero.cycle_id);
  CHECK(at_minus_two.phase == (at_zero.phase + 1) % 2);
  const auto big = classify_point(g, cycles, SpherePoint(50.0));
  CHECK(cycles[static_cast<size_t>(big.cycle_id)].size() == 1);
  // the repelling fixed point 2 never resolves
  BasinOptions opts;
  opts.max_iterations = 50;
  CHECK_FALSE(classify_point(g, cycles, SpherePoint(2.0), opts).resolved());
}

TEST_CASE("grid geometry") {
  const BasinGrid grid = classify_grid(g, portrait, square, 6, 3);
  CHECK(grid.cells.size() == 18);
  CHECK(std::abs(grid.cell_center(0, 0) - Complex(-2.5, 2.0)) < 1e-12);
  CHECK(std::abs(grid.cell_center(5, 2) - Complex(2.5, -2.0)) < 1e-12);
  const auto c = grid.cell_of(Complex(2.9, -2.9));
  REQUIRE(c.has_value());
  CHECK(c->first == 5);
  CHECK(c->second == 2);
  CHECK_FALSE(grid.cell_of(Complex(3.5, 0.0)).has_value());
}

TEST_CASE("a one-cell grid centred on the critical point") {
  const BasinGrid grid = classify_grid(g, portrait, Bounds{-1.0, 1.0, -1.0, 1.0}, 1, 1);
  REQUIRE(grid.at(0, 0).resolved());
  CHECK(grid.at(0, 0).steps == 0);
  CHECK(grid.cycles[static_cast<size_t>(grid.at(0, 0).cycle_id)].size() == 2);
  const auto labels = label_components(grid);
  CHECK(labels.components.size() == 1);
  CHECK(component_of(labels, 0.0) == 0);
}

TEST_CASE("dynamics of the labelled grid") {
  const BasinGrid grid = classify_grid(g, portrait, square, 200, 200);
  const auto labels = label_components(grid);
  const int two_cycle = cycle_containing(grid, SpherePoint(0.0));
  const int at_inf = cycle_containing(grid, SpherePoint::infinity());
  REQUIRE(two_cycle >= 0);
  REQUIRE(at_inf >= 0);

  CHECK(component_of(labels, 0.0) != component_of(labels, -2.0));
  CHECK(labels.components[static_cast<size_t>(component_of(labels, 0.0))].cycle_id == two_cycle);

  // phase consistency: f moves every classified point one step along its cycle
  Rng rng(8);
  int checked = 0, agree = 0;
  for (int k = 0; k < 2000; ++k) {
    const int col = static_cast<int>(rng() % 200), row = static_cast<int>(rng() % 200);
    const CellRecord& c = grid.at(col, row);
    if (!c.resolved()) continue;
    const CellRecord img = classify_point(g, grid.cycles, g(SpherePoint(grid.cell_center(col, row))), grid.options);
    const int p = static_cast<int>(grid.cycles[static_cast<size_t>(c.cycle_id)].size());
    ++checked;
    agree += img.cycle_id == c.cycle_id && img.phase == (c.phase + 1) % p ? 1 : 0;
  }
  CHECK(checked > 1000);
  CHECK(agree >= 0.95 * checked);

  // the basin of infinity is forward invariant
  int inf_points = 0;
  for (int k = 0; k < 5000 && inf_points < 200; ++k) {
    const int col = static_cast<int>(rng() % 200), row = static_cast<int>(rng() % 200);
    if (grid.at(col, row).cycle_id != at_inf) continue;
    ++inf_points;
    const auto img = classify_point(g, grid.cycles, g(SpherePoint(grid.cell_center(col, row))), grid.options);
    CHECK(img.cycle_id == at_inf);
  }
  CHECK(inf_points == 200);

  // labels are 4-connected and constant in (cycle, phase)
  for (int row = 0; row < 200; ++row)
    for (int col = 0; col + 1 < 200; ++col) {
      const int a = labels.labels[static_cast<size_t>(row) * 200 + col];
      const int b = labels.labels[static_cast<size_t>(row) * 200 + col + 1];
      const CellRecord& x = grid.at(col, row);
      const CellRecord& y = grid.at(col + 1, row);
      if (x.resolved() && y.resolved() && x.cycle_id == y.cycle_id && x.phase == y.phase) CHECK(a == b);
      if (a == b && a >= 0) CHECK((x.cycle_id == y.cycle_id && x.phase == y.phase));
    }
}

TEST_CASE("component lookups outside the grid or on unresolved cells fail") {
  const BasinGrid grid = classify_grid(g, portrait, square, 20, 20);
  const auto labels = label_components(grid);
  CHECK_THROWS_AS(component_of(labels, Complex(4.0, 0.0)), InvalidArgument);
  BasinOptions opts;
  opts.max_iterations = 1;
  const BasinGrid shallow = classify_grid(g, portrait, Bounds{1.9, 2.1, -0.1, 0.1}, 3, 3, opts);
  CHECK_THROWS_AS(component_of(label_components(shallow), 2.0), InvalidArgument);
}

TEST_CASE("two basins of z^3 give two components") {
  const RationalMap f = normalize(Polynomial::monomial(3), Polynomial::constant(1.0));
  const BasinGrid grid = classify_grid(f, critical_portrait(f), Bounds{-2.0, 2.0, -2.0, 2.0}, 20, 20);
  CHECK(label_components(grid).components.size() == 2);
}

TEST_CASE("PPM output") {
  const BasinGrid grid = classify_grid(g, portrait, square, 2, 2);
  const std::string ppm = render_ppm(grid);
  const std::string header = "P6\n2 2\n255\n";
  REQUIRE(ppm.size() == header.size() + 12);
  CHECK(ppm.substr(0, header.size()) == header);

  // byte-identical across runs and thread counts
  BasinOptions one, many;
  one.threads = 1;
  many.threads = 7;
  const std::string a = render_ppm(classify_grid(g, portrait, square, 123, 77, one));
  const std::string b = render_ppm(classify_grid(g, portrait, square, 123, 77, many));
  const std::string c = render_ppm(classify_grid(g, portrait, square, 123, 77, many));
  CHECK(a == b);
  CHECK(b == c);

  // distinct (cycle, phase) pairs get distinct colours
  const auto pal = default_palette(grid);
  std::set<Rgb> colours{pal(0, 0), pal(0, 1), pal(1, 0)};
  CHECK(colours.size() == 3);
}

TEST_CASE("invalid grids") {
  CHECK_THROWS_AS(classify_grid(g, portrait, square, 0, 10), InvalidArgument);
  CHECK_THROWS_AS(classify_grid(g, portrait, Bounds{1.0, 1.0, 0.0, 1.0}, 10, 10), InvalidArgument);
  BasinOptions wide;
  wide.trap_radius = 1.5;
  CHECK_THROWS_AS(classify_grid(g, portrait, square, 10, 10, wide), InvalidArgument);
  // the Lattes map (z^2+1)^2 / (4z(z^2-1)) has no attracting cycle at all
  const Polynomial sq = Polynomial({1.0, 0.0, 1.0}).pow(2);
  const Polynomial den = Polynomial({0.0, -4.0, 0.0, 4.0});
  const RationalMap lattes = normalize(sq, den);
  const auto p = critical_portrait(lattes);
  CHECK(attracting_cycles(p).empty());
  CHECK_THROWS_AS(classify_grid(lattes, p, square, 4, 4), InvalidArgument);
}
