#include "nonlocal/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nonlocal {

double norm(Point2 a) { return std::hypot(a.x, a.y); }

namespace {

void check_finite(Point2 p, const char* where)
{
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw std::invalid_argument(std::string(where) + ": non-finite coordinate");
}

double shoelace(const std::vector<Point2>& v)
{
    double a = 0.0;
    for (std::size_t i = 0, n = v.size(); i < n; ++i)
        a += cross(v[i], v[(i + 1) % n]);
    return 0.5 * a;
}

}  // namespace

Polygon regular_polygon(Point2 center, double horizon, int sides, double rotation)
{
    check_finite(center, "regular_polygon");
    if (sides < 3) throw std::invalid_argument("regular_polygon: need at least 3 sides");
    if (!(horizon > 0.0)) throw std::invalid_argument("regular_polygon: horizon must be positive");
    Polygon p;
    p.center = center;
    p.vertices.reserve(sides);
    for (int k = 0; k < sides; ++k) {
        double a = rotation + 2.0 * M_PI * k / sides;
        p.vertices.push_back({center.x + horizon * std::cos(a), center.y + horizon * std::sin(a)});
    }
    return p;
}

double polygon_area(const Polygon& p)
{
    if (p.vertices.size() < 3) throw std::invalid_argument("polygon_area: need at least 3 vertices");
    for (const Point2& v : p.vertices) check_finite(v, "polygon_area");
    double a = shoelace(p.vertices);
    if (!(a > 0.0)) throw std::invalid_argument("polygon_area: degenerate or clockwise polygon");
    return a;
}

double inradius_centered(const Polygon& p)
{
    const std::size_t n = p.vertices.size();
    if (n < 3) throw std::invalid_argument("inradius_centered: need at least 3 vertices");
    // the center must see every edge with positive orientation
    for (std::size_t i = 0; i < n; ++i) {
        Point2 a = p.vertices[i] - p.center;
        Point2 b = p.vertices[(i + 1) % n] - p.center;
        if (!(cross(a, b) > 0.0))
            throw std::invalid_argument("inradius_centered: center not interior to polygon");
    }
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        Point2 a = p.vertices[i] - p.center;
        Point2 b = p.vertices[(i + 1) % n] - p.center;
        Point2 e = b - a;
        double len2 = dot(e, e);
        double t = len2 > 0.0 ? std::clamp(-dot(a, e) / len2, 0.0, 1.0) : 0.0;
        Point2 q = a + t * e;
        r = std::min(r, norm(q));
    }
    return r;
}

double cap_area(double theta)
{
    if (!(theta >= 0.0 && theta <= 2.0 * M_PI))
        throw std::invalid_argument("cap_area: theta outside [0, 2*pi]");
    return 0.5 * (theta - std::sin(theta));
}

double area_ratio(const Polygon& p, double horizon)
{
    if (!(horizon > 0.0)) throw std::invalid_argument("area_ratio: horizon must be positive");
    return polygon_area(p) / (M_PI * horizon * horizon);
}

std::pair<double, double> quasi_uniformity(const Polygon& p, double horizon)
{
    const std::size_t n = p.vertices.size();
    if (n < 3) throw std::invalid_argument("quasi_uniformity: need at least 3 vertices");
    double hmin = std::numeric_limits<double>::infinity();
    double hmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double len = norm(p.vertices[(i + 1) % n] - p.vertices[i]);
        hmin = std::min(hmin, len);
        hmax = std::max(hmax, len);
    }
    if (!(hmin > 0.0)) throw std::invalid_argument("quasi_uniformity: zero-length side");
    return {hmax / hmin, horizon / inradius_centered(p)};
}

Polygon nocaps_polygon(Point2 center, double horizon, double grid_h)
{
    check_finite(center, "nocaps_polygon");
    if (!(horizon > 0.0) || !(grid_h > 0.0))
        throw std::invalid_argument("nocaps_polygon: horizon and grid_h must be positive");
    if (!(horizon > 2.0 * grid_h))
        throw std::invalid_argument("nocaps_polygon: need horizon > 2*grid_h");

    std::vector<Point2> pts;

    // vertical gridlines x = i*h
    {
        int i0 = static_cast<int>(std::ceil((center.x - horizon) / grid_h));
        int i1 = static_cast<int>(std::floor((center.x + horizon) / grid_h));
        for (int i = i0; i <= i1; ++i) {
            double dx = i * grid_h - center.x;
            double d2 = horizon * horizon - dx * dx;
            if (d2 < 0.0) continue;
            double s = std::sqrt(d2);
            pts.push_back({i * grid_h, center.y + s});
            if (s > 0.0) pts.push_back({i * grid_h, center.y - s});
        }
    }
    // horizontal gridlines y = j*h
    {
        int j0 = static_cast<int>(std::ceil((center.y - horizon) / grid_h));
        int j1 = static_cast<int>(std::floor((center.y + horizon) / grid_h));
        for (int j = j0; j <= j1; ++j) {
            double dy = j * grid_h - center.y;
            double d2 = horizon * horizon - dy * dy;
            if (d2 < 0.0) continue;
            double s = std::sqrt(d2);
            pts.push_back({center.x + s, j * grid_h});
            if (s > 0.0) pts.push_back({center.x - s, j * grid_h});
        }
    }
    // diagonals y = x + k*h (the fixed split orientation of every square)
    {
        double w = center.y - center.x;
        double span = horizon * std::sqrt(2.0);
        int k0 = static_cast<int>(std::ceil((w - span) / grid_h));
        int k1 = static_cast<int>(std::floor((w + span) / grid_h));
        for (int k = k0; k <= k1; ++k) {
            // p = (t, t + k*h); |p - center|^2 = horizon^2
            double b = center.x + (center.y - k * grid_h);
            double c = center.x * center.x + (center.y - k * grid_h) * (center.y - k * grid_h) -
                       horizon * horizon;
            double disc = b * b - 2.0 * c;
            if (disc < 0.0) continue;
            double s = std::sqrt(disc);
            for (double t : {0.5 * (b + s), 0.5 * (b - s)}) {
                pts.push_back({t, t + k * grid_h});
                if (s == 0.0) break;
            }
        }
    }

    std::sort(pts.begin(), pts.end(), [&](Point2 a, Point2 b) {
        return std::atan2(a.y - center.y, a.x - center.x) <
               std::atan2(b.y - center.y, b.x - center.x);
    });

    // drop coincident crossings (gridline meets a node the circle passes through)
    const double tol = 1e-12 * horizon;
    std::vector<Point2> verts;
    for (const Point2& p : pts) {
        if (verts.empty() || norm(p - verts.back()) > tol) verts.push_back(p);
    }
    if (verts.size() > 1 && norm(verts.front() - verts.back()) <= tol) verts.pop_back();
    if (verts.size() < 3)
        throw std::invalid_argument("nocaps_polygon: degenerate polygon, horizon too small");

    Polygon poly;
    poly.center = center;
    poly.vertices = std::move(verts);
    return poly;
}

// ---------------------------------------------------------------------------
// disk-box overlap
// ---------------------------------------------------------------------------

namespace {

// G(a, b) = integral_0^min(a,R) min(b, sqrt(R^2 - u^2)) du for a, b >= 0
double disk_quadrant_primitive(double R, double a, double b)
{
    a = std::min(a, R);
    if (a <= 0.0 || b <= 0.0) return 0.0;
    auto seg = [&](double u) {  // antiderivative of sqrt(R^2 - u^2)
        double s = std::sqrt(std::max(R * R - u * u, 0.0));
        return 0.5 * (u * s + R * R * std::asin(std::clamp(u / R, -1.0, 1.0)));
    };
    if (b >= R) return seg(a);
    double us = std::sqrt(std::max(R * R - b * b, 0.0));
    if (a <= us) return b * a;
    return b * us + seg(a) - seg(us);
}

double disk_signed_corner(double R, double x, double y)
{
    double s = 1.0;
    if (x < 0.0) { s = -s; x = -x; }
    if (y < 0.0) { s = -s; y = -y; }
    return s * disk_quadrant_primitive(R, x, y);
}

}  // namespace

double disk_box_overlap(double radius, double x0, double x1, double y0, double y1)
{
    if (!(radius > 0.0)) return 0.0;
    // fast paths: box entirely inside / outside the disk
    double fx = std::max(std::abs(x0), std::abs(x1));
    double fy = std::max(std::abs(y0), std::abs(y1));
    if (fx * fx + fy * fy <= radius * radius) return (x1 - x0) * (y1 - y0);
    double nx = (x0 > 0.0) ? x0 : (x1 < 0.0 ? -x1 : 0.0);
    double ny = (y0 > 0.0) ? y0 : (y1 < 0.0 ? -y1 : 0.0);
    if (nx * nx + ny * ny >= radius * radius) return 0.0;
    double a = disk_signed_corner(radius, x1, y1) - disk_signed_corner(radius, x0, y1) -
               disk_signed_corner(radius, x1, y0) + disk_signed_corner(radius, x0, y0);
    return std::max(a, 0.0);
}

// ---------------------------------------------------------------------------
// ConvexTemplate
// ---------------------------------------------------------------------------

ConvexTemplate ConvexTemplate::disk(double radius)
{
    if (!(radius > 0.0)) throw std::invalid_argument("ConvexTemplate::disk: radius must be positive");
    ConvexTemplate t;
    t.is_disk_ = true;
    t.radius_ = radius;
    return t;
}

ConvexTemplate ConvexTemplate::polygon(const Polygon& p)
{
    const std::size_t n = p.vertices.size();
    if (n < 3) throw std::invalid_argument("ConvexTemplate::polygon: need at least 3 vertices");
    ConvexTemplate t;
    t.is_disk_ = false;
    t.radius_ = 0.0;
    t.verts_.reserve(n);
    for (const Point2& v : p.vertices) {
        t.verts_.push_back(v - p.center);
        t.radius_ = std::max(t.radius_, norm(v - p.center));
    }
    t.normals_.reserve(n);
    t.offsets_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Point2 a = t.verts_[i];
        Point2 b = t.verts_[(i + 1) % n];
        Point2 e = b - a;
        double len = norm(e);
        if (!(len > 0.0)) throw std::invalid_argument("ConvexTemplate::polygon: zero-length edge");
        Point2 nrm{e.y / len, -e.x / len};  // outward for CCW
        t.normals_.push_back(nrm);
        t.offsets_.push_back(dot(nrm, a));
    }
    return t;
}

ConvexTemplate ConvexTemplate::from_spec(const NeighborhoodSpec& nb)
{
    if (!(nb.horizon > 0.0))
        throw std::invalid_argument("NeighborhoodSpec: horizon must be positive");
    switch (nb.strategy) {
        case Strategy::Ball:
            return disk(nb.horizon);
        case Strategy::RegularNGon:
            return polygon(regular_polygon({0.0, 0.0}, nb.horizon, nb.sides, nb.rotation));
        case Strategy::Nocaps:
            throw std::invalid_argument(
                "ConvexTemplate::from_spec: nocaps has no translation-invariant template; "
                "build the polygon explicitly");
    }
    throw std::invalid_argument("ConvexTemplate::from_spec: unknown strategy");
}

bool ConvexTemplate::contains(Point2 z) const
{
    if (is_disk_) return z.x * z.x + z.y * z.y < radius_ * radius_;
    for (std::size_t i = 0; i < normals_.size(); ++i)
        if (dot(normals_[i], z) >= offsets_[i]) return false;
    return true;
}

double ConvexTemplate::inside_distance(Point2 z) const
{
    if (is_disk_) return radius_ - norm(z);
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < normals_.size(); ++i)
        d = std::min(d, offsets_[i] - dot(normals_[i], z));
    return d;
}

double ConvexTemplate::box_overlap(double x0, double x1, double y0, double y1,
                                   Point2* centroid) const
{
    if (is_disk_) {
        double a = disk_box_overlap(radius_, x0, x1, y0, y1);
        if (centroid) *centroid = {0.5 * (x0 + x1), 0.5 * (y0 + y1)};
        return a;
    }
    // Sutherland-Hodgman: clip the box against each half-plane
    std::vector<Point2> poly = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    std::vector<Point2> next;
    for (std::size_t e = 0; e < normals_.size() && !poly.empty(); ++e) {
        next.clear();
        const Point2 nrm = normals_[e];
        const double off = offsets_[e];
        for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
            Point2 cur = poly[i];
            Point2 nxt = poly[(i + 1) % n];
            double dc = off - dot(nrm, cur);
            double dn = off - dot(nrm, nxt);
            if (dc >= 0.0) next.push_back(cur);
            if ((dc >= 0.0) != (dn >= 0.0)) {
                double t = dc / (dc - dn);
                next.push_back(cur + t * (nxt - cur));
            }
        }
        poly.swap(next);
    }
    if (poly.size() < 3) return 0.0;
    double a2 = 0.0;
    double cx = 0.0, cy = 0.0;
    for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
        const Point2& u = poly[i];
        const Point2& v = poly[(i + 1) % n];
        double c = cross(u, v);
        a2 += c;
        cx += (u.x + v.x) * c;
        cy += (u.y + v.y) * c;
    }
    double area = 0.5 * a2;
    if (!(area > 0.0)) return 0.0;
    if (centroid) *centroid = {cx / (3.0 * a2), cy / (3.0 * a2)};
    return area;
}

}  // namespace nonlocal
