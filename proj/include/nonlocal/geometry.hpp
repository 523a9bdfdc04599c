#pragma once

#include <utility>
#include <vector>

namespace nonlocal {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 a);

// Simple counter-clockwise polygon approximating a ball around `center`.
struct Polygon {
    std::vector<Point2> vertices;  // CCW, at least 3
    Point2 center;
};

enum class Strategy { Ball, RegularNGon, Nocaps };

struct NeighborhoodSpec {
    Strategy strategy = Strategy::Ball;
    double horizon = 0.0;    // interaction radius delta
    int sides = 0;           // polygon side count (ignored for Ball)
    double rotation = 0.0;   // angle of the first vertex, RegularNGon only
};

// Inscribed regular n-gon of the ball of radius `horizon` around `center`,
// first vertex at angle `rotation`.
Polygon regular_polygon(Point2 center, double horizon, int sides, double rotation = 0.0);

// Inscribed polygon obtained by walking the circle of radius `horizon` over a
// uniform axis-aligned triangulation of pitch `grid_h` (squares split along the
// y = x + k*grid_h diagonals) and replacing each arc between consecutive
// edge crossings with its chord. All vertices lie on the circle.
Polygon nocaps_polygon(Point2 center, double horizon, double grid_h);

// Shoelace area; throws on degenerate input.
double polygon_area(const Polygon& p);

// Radius of the largest ball centered at p.center inscribed in p
// (minimum distance from the center to the boundary).
double inradius_centered(const Polygon& p);

// Area of the unit-disk circular segment with central angle theta: (theta - sin theta)/2.
double cap_area(double theta);

// polygon_area(p) / (pi * horizon^2), in (0, 1] for inscribed polygons.
double area_ratio(const Polygon& p, double horizon);

// (longest side / shortest side, horizon / inradius_centered).
std::pair<double, double> quasi_uniformity(const Polygon& p, double horizon);

// ---------------------------------------------------------------------------
// Interaction-neighborhood template centered at the origin, used for stencil
// assembly and pointwise membership. Either the disk of radius `radius` or a
// convex polygon cached as half-plane constraints.
// ---------------------------------------------------------------------------
class ConvexTemplate {
  public:
    static ConvexTemplate disk(double radius);
    static ConvexTemplate polygon(const Polygon& p);  // vertices taken relative to p.center
    static ConvexTemplate from_spec(const NeighborhoodSpec& nb);

    bool is_disk() const { return is_disk_; }
    double radius() const { return radius_; }

    bool contains(Point2 z) const;
    // Positive inside, negative outside; for polygons the exact value near
    // vertices is the half-plane bound, which is what the rim test needs.
    double inside_distance(Point2 z) const;

    // Exact area of the intersection with the axis-aligned box [x0,x1]x[y0,y1]
    // and the centroid of that region (centroid undefined when area == 0).
    double box_overlap(double x0, double x1, double y0, double y1, Point2* centroid) const;

  private:
    bool is_disk_ = true;
    double radius_ = 0.0;
    std::vector<Point2> verts_;
    std::vector<Point2> normals_;   // outward unit normals per edge
    std::vector<double> offsets_;   // support distances, z inside iff dot(n,z) <= offset
};

// Exact area of disk(radius) ∩ [x0,x1]x[y0,y1], disk centered at the origin.
double disk_box_overlap(double radius, double x0, double x1, double y0, double y1);

}  // namespace nonlocal
