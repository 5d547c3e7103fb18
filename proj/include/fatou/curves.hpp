#pragma once

#include <vector>

#include "fatou/sphere.hpp"

namespace fatou {

/// Closed polyline in the plane; the last vertex connects back to the first
/// and the vertex order gives the orientation.
struct PolyCurve {
  std::vector<Complex> vertices;
};

/// n vertices on |z - center| = radius, counterclockwise unless ccw is false.
PolyCurve circle(Complex center, double radius, int n = 256, bool ccw = true);

/// Integer winding number of the curve around q, from signed edge
/// crossings of a horizontal ray.  q must not lie on the curve.
int winding_number(const PolyCurve& c, Complex q);

/// Euclidean distance from q to the nearest edge.
double distance_to_curve(const PolyCurve& c, Complex q);

/// Twice the signed area; positive for counterclockwise curves.
double signed_area2(const PolyCurve& c);

/// No two non-adjacent edges intersect and no vertex repeats.
bool is_simple(const PolyCurve& c);

/// Smallest distance between consecutive vertices.
double min_vertex_spacing(const PolyCurve& c);

}  // namespace fatou
