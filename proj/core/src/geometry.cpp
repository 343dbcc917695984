#include "tlim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tlim/errors.hpp"

namespace tlim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double tol_for(double scale) { return 1e-9 * (1.0 + scale); }

}  // namespace

// ---------------------------------------------------------------------------
// Simplex

double Simplex::volume() const {
  const Vec3 a = v[1] - v[0], b = v[2] - v[0], c = v[3] - v[0];
  return std::abs(dot(a, cross(b, c))) / 6.0;
}

Vec3 Simplex::barycenter() const { return (v[0] + v[1] + v[2] + v[3]) / 4.0; }

std::array<Halfspace, 4> Simplex::faces() const {
  std::array<Halfspace, 4> f;
  const Vec3 bc = barycenter();
  for (int i = 0; i < 4; ++i) {
    const Vec3& p = v[(i + 1) % 4];
    const Vec3& q = v[(i + 2) % 4];
    const Vec3& r = v[(i + 3) % 4];
    Vec3 n = cross(q - p, r - p);
    const double nn = norm(n);
    if (nn <= 0) throw InvalidInput("degenerate simplex face");
    n = n / nn;
    if (dot(n, bc - p) > 0) n = -n;  // orient outward
    f[i] = {n, dot(n, p)};
  }
  return f;
}

double Simplex::enclosing_radius() const {
  double r = 0;
  for (const Vec3& p : v) r = std::max(r, norm(p));
  return r;
}

double Simplex::diameter() const {
  double d = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) d = std::max(d, distance(v[i], v[j]));
  return d;
}

double Aabb::volume() const {
  if (empty()) return 0;
  const Vec3 e = extent();
  return e.x * e.y * e.z;
}

// ---------------------------------------------------------------------------
// Polytope machinery

std::vector<Vec3> polytope_vertices(std::span<const Halfspace> faces) {
  std::vector<Vec3> verts;
  const std::size_t m = faces.size();
  double scale = 0;
  for (const auto& f : faces) scale = std::max(scale, std::abs(f.c));
  const double feas_tol = tol_for(scale);

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        const Vec3 &a = faces[i].n, &b = faces[j].n, &c = faces[k].n;
        const double det = dot(a, cross(b, c));
        if (std::abs(det) < 1e-10) continue;
        const Vec3 p = (cross(b, c) * faces[i].c + cross(c, a) * faces[j].c +
                        cross(a, b) * faces[k].c) /
                       det;
        bool ok = true;
        for (const auto& f : faces) {
          if (dot(f.n, p) > f.c + feas_tol * (1.0 + norm(p))) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        bool dup = false;
        for (const Vec3& q : verts) {
          if (norm2(p - q) < 1e-16 * (1.0 + norm2(p))) {
            dup = true;
            break;
          }
        }
        if (!dup) verts.push_back(p);
      }
  return verts;
}

double polytope_volume(std::span<const Halfspace> faces, std::span<const Vec3> verts) {
  if (verts.size() < 4) return 0;
  Vec3 centroid{};
  for (const Vec3& v : verts) centroid += v;
  centroid = centroid / static_cast<double>(verts.size());

  double scale = 0;
  for (const Vec3& v : verts) scale = std::max(scale, norm(v));
  const double on_tol = 1e-7 * (1.0 + scale);

  // Fan decomposition: each face polygon forms tetrahedra with the centroid.
  double vol = 0;
  for (const auto& f : faces) {
    std::vector<Vec3> on_face;
    for (const Vec3& v : verts)
      if (std::abs(dot(f.n, v) - f.c) <= on_tol) on_face.push_back(v);
    if (on_face.size() < 3) continue;

    // In-plane basis, vertices ordered by angle around the face centroid.
    Vec3 fc{};
    for (const Vec3& v : on_face) fc += v;
    fc = fc / static_cast<double>(on_face.size());
    Vec3 eu = std::abs(f.n.x) < 0.9 ? cross(f.n, Vec3{1, 0, 0}) : cross(f.n, Vec3{0, 1, 0});
    eu = normalized(eu);
    const Vec3 ev = cross(f.n, eu);
    std::sort(on_face.begin(), on_face.end(), [&](const Vec3& a, const Vec3& b) {
      return std::atan2(dot(a - fc, ev), dot(a - fc, eu)) <
             std::atan2(dot(b - fc, ev), dot(b - fc, eu));
    });
    double area2 = 0;  // twice the polygon area
    for (std::size_t i = 1; i + 1 < on_face.size(); ++i) {
      area2 += dot(f.n, cross(on_face[i] - on_face[0], on_face[i + 1] - on_face[0]));
    }
    const double h = f.c - dot(f.n, centroid);  // distance, unit normal
    vol += std::abs(area2) * 0.5 * h / 3.0;
  }
  return std::max(0.0, vol);
}

double convex_hull_volume(std::span<const Vec3> pts) {
  if (pts.size() < 4) return 0;
  double scale = 0;
  for (const Vec3& p : pts) scale = std::max(scale, norm(p));
  const double side_tol = 1e-9 * (1.0 + scale);

  // Supporting-plane enumeration over point triples; fine for small sets.
  std::vector<Halfspace> faces;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec3 nrm = cross(pts[j] - pts[i], pts[k] - pts[i]);
        const double nn = norm(nrm);
        if (nn < 1e-12 * (1.0 + scale * scale)) continue;
        nrm = nrm / nn;
        double c = dot(nrm, pts[i]);
        bool above = false, below = false;
        for (const Vec3& p : pts) {
          const double s = dot(nrm, p) - c;
          if (s > side_tol) above = true;
          if (s < -side_tol) below = true;
          if (above && below) break;
        }
        if (above && below) continue;
        if (above) {
          nrm = -nrm;
          c = -c;
        }
        bool dup = false;
        for (const auto& f : faces) {
          if (dot(f.n, nrm) > 1.0 - 1e-10 && std::abs(f.c - c) <= side_tol) {
            dup = true;
            break;
          }
        }
        if (!dup) faces.push_back({nrm, c});
      }
  if (faces.size() < 4) return 0;
  const auto verts = polytope_vertices(faces);
  return polytope_volume(faces, verts);
}

// ---------------------------------------------------------------------------
// Domain construction

Domain Domain::ball(const Vec3& center, double radius) {
  if (!(radius > 0)) throw InvalidInput("ball radius must be positive");
  Domain d;
  d.kind_ = Kind::Ball;
  d.data_ = BallData{center, radius};
  return d;
}

Domain Domain::box(const Vec3& lo, const Vec3& hi) {
  if (!(lo.x < hi.x && lo.y < hi.y && lo.z < hi.z))
    throw InvalidInput("box corners must satisfy lo < hi componentwise");
  Domain d;
  d.kind_ = Kind::Box;
  d.data_ = BoxData{lo, hi};
  return d;
}

Domain Domain::cube(const Vec3& center, double side) {
  const Vec3 h{side / 2, side / 2, side / 2};
  return box(center - h, center + h);
}

Domain Domain::polytope(std::vector<Halfspace> faces) {
  if (faces.size() < 4) throw InvalidInput("polytope needs at least 4 halfspaces");
  for (auto& f : faces) {
    const double nn = norm(f.n);
    if (nn < 1e-14) throw InvalidInput("polytope halfspace has zero normal");
    f.n = f.n / nn;
    f.c = f.c / nn;
  }
  // Drop duplicated planes so the face-fan volume never double counts.
  std::vector<Halfspace> uniq;
  for (const auto& f : faces) {
    bool dup = false;
    for (const auto& g : uniq)
      if (dot(f.n, g.n) > 1.0 - 1e-12 && std::abs(f.c - g.c) <= tol_for(std::abs(f.c))) {
        dup = true;
        break;
      }
    if (!dup) uniq.push_back(f);
  }
  // Necessary boundedness check: every axis direction must be blocked.
  for (int axis = 0; axis < 3; ++axis)
    for (double sgn : {-1.0, 1.0}) {
      const Vec3 dir = axis == 0 ? Vec3{sgn, 0, 0} : axis == 1 ? Vec3{0, sgn, 0} : Vec3{0, 0, sgn};
      bool blocked = false;
      for (const auto& f : uniq)
        if (dot(f.n, dir) > 1e-12) {
          blocked = true;
          break;
        }
      if (!blocked) throw InvalidInput("polytope is unbounded");
    }
  PolyData pd;
  pd.verts = polytope_vertices(uniq);
  pd.vol = polytope_volume(uniq, pd.verts);
  pd.faces = std::move(uniq);
  Domain d;
  d.kind_ = Kind::Polytope;
  d.data_ = std::move(pd);
  return d;
}

Domain Domain::simplex_image(const Simplex& base, const RigidMotion& g, double scale) {
  if (!(scale > 0)) throw InvalidInput("simplex scale must be positive");
  if (base.volume() <= 0) throw InvalidInput("degenerate base simplex");
  SimplexImageData sd;
  sd.base = base;
  sd.g = g;
  sd.scale = scale;
  const Mat3 R = to_matrix(g.q);
  for (int i = 0; i < 4; ++i) sd.world_v[i] = R * (base.v[i] * scale) + g.u;
  sd.world_f.reserve(4);
  for (const auto& f : base.faces()) {
    const Vec3 wn = R * f.n;
    sd.world_f.push_back({wn, scale * f.c + dot(wn, g.u)});
  }
  Domain d;
  d.kind_ = Kind::SimplexImage;
  d.data_ = std::move(sd);
  return d;
}

Domain Domain::make_union(std::vector<Domain> parts) {
  if (parts.empty()) throw InvalidInput("union of zero domains");
  if (parts.size() == 1) return parts[0];
  double vol = 0;
  for (const auto& p : parts) vol += p.volume();
  Domain d;
  d.kind_ = Kind::Union;
  d.data_ = PartsData{std::move(parts), vol};
  return d;
}

Domain Domain::difference(Domain outer, Domain inner) {
  const double vol = outer.volume() - inner.volume();
  if (vol < 0) throw InvalidInput("difference: inner volume exceeds outer");
  Domain d;
  d.kind_ = Kind::Difference;
  std::vector<Domain> parts;
  parts.push_back(std::move(outer));
  parts.push_back(std::move(inner));
  d.data_ = PartsData{std::move(parts), vol};
  return d;
}

Domain Domain::intersection(std::vector<Domain> parts) {
  if (parts.empty()) throw InvalidInput("intersection of zero domains");
  if (parts.size() == 1) return parts[0];

  const bool all_polytopal = std::all_of(parts.begin(), parts.end(), [](const Domain& p) {
    return p.kind() == Kind::Box || p.kind() == Kind::Polytope || p.kind() == Kind::SimplexImage;
  });
  if (all_polytopal) {
    std::vector<Halfspace> faces;
    for (const auto& p : parts) {
      if (p.kind() == Kind::Box) {
        const auto& b = std::get<BoxData>(p.data_);
        faces.push_back({{1, 0, 0}, b.hi.x});
        faces.push_back({{-1, 0, 0}, -b.lo.x});
        faces.push_back({{0, 1, 0}, b.hi.y});
        faces.push_back({{0, -1, 0}, -b.lo.y});
        faces.push_back({{0, 0, 1}, b.hi.z});
        faces.push_back({{0, 0, -1}, -b.lo.z});
      } else {
        for (const auto& f : p.faces()) faces.push_back(f);
      }
    }
    PolyData pd;
    for (auto& f : faces) {
      const double nn = norm(f.n);
      f.n = f.n / nn;
      f.c = f.c / nn;
    }
    pd.verts = polytope_vertices(faces);
    pd.vol = polytope_volume(faces, pd.verts);
    pd.faces = std::move(faces);
    Domain d;
    d.kind_ = Kind::Polytope;
    d.data_ = std::move(pd);
    return d;
  }

  // Predicate composite; volume by a fixed-seed Monte-Carlo estimate so the
  // value is a deterministic function of the inputs.
  Domain d;
  d.kind_ = Kind::Intersection;
  Aabb bb = parts[0].bounding_box();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const Aabb o = parts[i].bounding_box();
    bb.lo = {std::max(bb.lo.x, o.lo.x), std::max(bb.lo.y, o.lo.y), std::max(bb.lo.z, o.lo.z)};
    bb.hi = {std::min(bb.hi.x, o.hi.x), std::min(bb.hi.y, o.hi.y), std::min(bb.hi.z, o.hi.z)};
  }
  double vol = 0;
  if (!bb.empty()) {
    Rng rng(0x7c0ffee1d5eedULL);
    const std::size_t n = 200000;
    std::size_t hits = 0;
    for (std::size_t s = 0; s < n; ++s) {
      const Vec3 x = rng.uniform_box(bb.lo, bb.hi);
      bool in = true;
      for (const auto& p : parts)
        if (!p.contains(x)) {
          in = false;
          break;
        }
      hits += in;
    }
    vol = bb.volume() * static_cast<double>(hits) / static_cast<double>(n);
  }
  d.data_ = PartsData{std::move(parts), vol};
  return d;
}

// ---------------------------------------------------------------------------
// Predicates

bool Domain::contains(const Vec3& x) const {
  switch (kind_) {
    case Kind::Ball: {
      const auto& b = std::get<BallData>(data_);
      return norm2(x - b.center) < b.radius * b.radius;
    }
    case Kind::Box: {
      const auto& b = std::get<BoxData>(data_);
      return x.x > b.lo.x && x.x < b.hi.x && x.y > b.lo.y && x.y < b.hi.y && x.z > b.lo.z &&
             x.z < b.hi.z;
    }
    case Kind::Polytope: {
      for (const auto& f : std::get<PolyData>(data_).faces)
        if (dot(f.n, x) >= f.c) return false;
      return true;
    }
    case Kind::SimplexImage: {
      for (const auto& f : std::get<SimplexImageData>(data_).world_f)
        if (dot(f.n, x) >= f.c) return false;
      return true;
    }
    case Kind::Union: {
      for (const auto& p : std::get<PartsData>(data_).parts)
        if (p.contains(x)) return true;
      return false;
    }
    case Kind::Difference: {
      const auto& ps = std::get<PartsData>(data_).parts;
      return ps[0].contains(x) && ps[1].distance_outside(x) > 0;
    }
    case Kind::Intersection: {
      for (const auto& p : std::get<PartsData>(data_).parts)
        if (!p.contains(x)) return false;
      return true;
    }
  }
  return false;
}

bool Domain::ball_fits(const Vec3& c, double r) const {
  switch (kind_) {
    case Kind::Ball: {
      const auto& b = std::get<BallData>(data_);
      return norm(c - b.center) + r <= b.radius;
    }
    case Kind::Box: {
      const auto& b = std::get<BoxData>(data_);
      return c.x - b.lo.x >= r && b.hi.x - c.x >= r && c.y - b.lo.y >= r && b.hi.y - c.y >= r &&
             c.z - b.lo.z >= r && b.hi.z - c.z >= r;
    }
    case Kind::Polytope: {
      for (const auto& f : std::get<PolyData>(data_).faces)
        if (f.c - dot(f.n, c) < r) return false;
      return true;
    }
    case Kind::SimplexImage: {
      for (const auto& f : std::get<SimplexImageData>(data_).world_f)
        if (f.c - dot(f.n, c) < r) return false;
      return true;
    }
    case Kind::Union: {
      // Sufficient test: the ball fits in a single part. Exact for the
      // well-separated unions the energy models use.
      for (const auto& p : std::get<PartsData>(data_).parts)
        if (p.ball_fits(c, r)) return true;
      return false;
    }
    case Kind::Difference: {
      const auto& ps = std::get<PartsData>(data_).parts;
      return ps[0].ball_fits(c, r) && ps[1].distance_outside(c) >= r;
    }
    case Kind::Intersection: {
      for (const auto& p : std::get<PartsData>(data_).parts)
        if (!p.ball_fits(c, r)) return false;
      return true;
    }
  }
  return false;
}

double Domain::distance_to_boundary(const Vec3& x) const {
  switch (kind_) {
    case Kind::Ball: {
      const auto& b = std::get<BallData>(data_);
      return std::abs(b.radius - norm(x - b.center));
    }
    case Kind::Box: {
      const auto& b = std::get<BoxData>(data_);
      const double mx = std::max(std::max(b.lo.x - x.x, x.x - b.hi.x),
                                 std::max(std::max(b.lo.y - x.y, x.y - b.hi.y),
                                          std::max(b.lo.z - x.z, x.z - b.hi.z)));
      if (mx <= 0) return -mx;  // inside: min face margin
      const Vec3 e{std::max({b.lo.x - x.x, 0.0, x.x - b.hi.x}),
                   std::max({b.lo.y - x.y, 0.0, x.y - b.hi.y}),
                   std::max({b.lo.z - x.z, 0.0, x.z - b.hi.z})};
      return norm(e);
    }
    case Kind::Polytope:
    case Kind::SimplexImage: {
      const auto fs = faces();
      if (contains(x)) {
        double m = kInf;
        for (const auto& f : fs) m = std::min(m, f.c - dot(f.n, x));
        return m;
      }
      double m = kInf;
      for (const auto& f : fs) m = std::min(m, std::abs(dot(f.n, x) - f.c));
      return m;
    }
    case Kind::Union:
    case Kind::Difference: {
      double m = kInf;
      for (const auto& p : std::get<PartsData>(data_).parts)
        m = std::min(m, p.distance_to_boundary(x));
      return m;
    }
    case Kind::Intersection: {
      double m = kInf;
      for (const auto& p : std::get<PartsData>(data_).parts)
        m = std::min(m, p.distance_to_boundary(x));
      return m;
    }
  }
  return 0;
}

double Domain::distance_outside(const Vec3& x) const {
  switch (kind_) {
    case Kind::Ball: {
      const auto& b = std::get<BallData>(data_);
      return std::max(0.0, norm(x - b.center) - b.radius);
    }
    case Kind::Box: {
      const auto& b = std::get<BoxData>(data_);
      const Vec3 e{std::max({b.lo.x - x.x, 0.0, x.x - b.hi.x}),
                   std::max({b.lo.y - x.y, 0.0, x.y - b.hi.y}),
                   std::max({b.lo.z - x.z, 0.0, x.z - b.hi.z})};
      return norm(e);
    }
    case Kind::Polytope:
    case Kind::SimplexImage: {
      double m = 0;
      for (const auto& f : faces()) m = std::max(m, dot(f.n, x) - f.c);
      return m;
    }
    case Kind::Union: {
      double m = kInf;
      for (const auto& p : std::get<PartsData>(data_).parts)
        m = std::min(m, p.distance_outside(x));
      return m;
    }
    case Kind::Difference: {
      const auto& ps = std::get<PartsData>(data_).parts;
      if (contains(x)) return 0;
      // Lower bound: x is excluded either because it is outside the outer
      // shape or inside the removed one.
      const double d_out = ps[0].distance_outside(x);
      if (d_out > 0) return d_out;
      return 0;
    }
    case Kind::Intersection: {
      double m = 0;
      for (const auto& p : std::get<PartsData>(data_).parts)
        m = std::max(m, p.distance_outside(x));
      return m;
    }
  }
  return 0;
}

double Domain::volume() const {
  switch (kind_) {
    case Kind::Ball: {
      const double r = std::get<BallData>(data_).radius;
      return 4.0 * M_PI / 3.0 * r * r * r;
    }
    case Kind::Box: {
      const auto& b = std::get<BoxData>(data_);
      return (b.hi.x - b.lo.x) * (b.hi.y - b.lo.y) * (b.hi.z - b.lo.z);
    }
    case Kind::Polytope:
      return std::get<PolyData>(data_).vol;
    case Kind::SimplexImage: {
      const auto& s = std::get<SimplexImageData>(data_);
      return s.scale * s.scale * s.scale * s.base.volume();
    }
    case Kind::Union:
    case Kind::Difference:
    case Kind::Intersection:
      return std::get<PartsData>(data_).vol;
  }
  return 0;
}

Aabb Domain::bounding_box() const {
  switch (kind_) {
    case Kind::Ball: {
      const auto& b = std::get<BallData>(data_);
      const Vec3 r{b.radius, b.radius, b.radius};
      return {b.center - r, b.center + r};
    }
    case Kind::Box: {
      const auto& b = std::get<BoxData>(data_);
      return {b.lo, b.hi};
    }
    case Kind::Polytope: {
      const auto& verts = std::get<PolyData>(data_).verts;
      if (verts.empty()) return {{0, 0, 0}, {0, 0, 0}};
      Aabb bb{verts[0], verts[0]};
      for (const Vec3& v : verts) {
        bb.lo = {std::min(bb.lo.x, v.x), std::min(bb.lo.y, v.y), std::min(bb.lo.z, v.z)};
        bb.hi = {std::max(bb.hi.x, v.x), std::max(bb.hi.y, v.y), std::max(bb.hi.z, v.z)};
      }
      return bb;
    }
    case Kind::SimplexImage: {
      const auto& sv = std::get<SimplexImageData>(data_).world_v;
      Aabb bb{sv[0], sv[0]};
      for (const Vec3& v : sv) {
        bb.lo = {std::min(bb.lo.x, v.x), std::min(bb.lo.y, v.y), std::min(bb.lo.z, v.z)};
        bb.hi = {std::max(bb.hi.x, v.x), std::max(bb.hi.y, v.y), std::max(bb.hi.z, v.z)};
      }
      return bb;
    }
    case Kind::Union: {
      const auto& ps = std::get<PartsData>(data_).parts;
      Aabb bb = ps[0].bounding_box();
      for (std::size_t i = 1; i < ps.size(); ++i) {
        const Aabb o = ps[i].bounding_box();
        bb.lo = {std::min(bb.lo.x, o.lo.x), std::min(bb.lo.y, o.lo.y), std::min(bb.lo.z, o.lo.z)};
        bb.hi = {std::max(bb.hi.x, o.hi.x), std::max(bb.hi.y, o.hi.y), std::max(bb.hi.z, o.hi.z)};
      }
      return bb;
    }
    case Kind::Difference:
      return std::get<PartsData>(data_).parts[0].bounding_box();
    case Kind::Intersection: {
      const auto& ps = std::get<PartsData>(data_).parts;
      Aabb bb = ps[0].bounding_box();
      for (std::size_t i = 1; i < ps.size(); ++i) {
        const Aabb o = ps[i].bounding_box();
        bb.lo = {std::max(bb.lo.x, o.lo.x), std::max(bb.lo.y, o.lo.y), std::max(bb.lo.z, o.lo.z)};
        bb.hi = {std::min(bb.hi.x, o.hi.x), std::min(bb.hi.y, o.hi.y), std::min(bb.hi.z, o.hi.z)};
      }
      return bb;
    }
  }
  return {{0, 0, 0}, {0, 0, 0}};
}

double Domain::diameter() const {
  if (kind_ == Kind::Ball) return 2 * std::get<BallData>(data_).radius;
  const Aabb bb = bounding_box();
  return norm(bb.extent());
}

Domain Domain::translated(const Vec3& t) const {
  switch (kind_) {
    case Kind::Ball: {
      const auto& b = std::get<BallData>(data_);
      return ball(b.center + t, b.radius);
    }
    case Kind::Box: {
      const auto& b = std::get<BoxData>(data_);
      return box(b.lo + t, b.hi + t);
    }
    case Kind::Polytope: {
      std::vector<Halfspace> fs(std::get<PolyData>(data_).faces);
      for (auto& f : fs) f.c += dot(f.n, t);
      return polytope(std::move(fs));
    }
    case Kind::SimplexImage: {
      const auto& s = std::get<SimplexImageData>(data_);
      return simplex_image(s.base, {s.g.u + t, s.g.q}, s.scale);
    }
    case Kind::Union:
    case Kind::Intersection: {
      std::vector<Domain> parts;
      for (const auto& p : std::get<PartsData>(data_).parts) parts.push_back(p.translated(t));
      return kind_ == Kind::Union ? make_union(std::move(parts))
                                  : intersection(std::move(parts));
    }
    case Kind::Difference: {
      const auto& ps = std::get<PartsData>(data_).parts;
      return difference(ps[0].translated(t), ps[1].translated(t));
    }
  }
  throw InvalidInput("translated: unknown kind");
}

void Domain::collect_vertices(std::vector<Vec3>& out) const {
  switch (kind_) {
    case Kind::Ball:
      throw InvalidInput("balls have no vertex skeleton");
    case Kind::Box: {
      const auto& b = std::get<BoxData>(data_);
      for (double x : {b.lo.x, b.hi.x})
        for (double y : {b.lo.y, b.hi.y})
          for (double z : {b.lo.z, b.hi.z}) out.push_back({x, y, z});
      return;
    }
    case Kind::Polytope: {
      const auto& verts = std::get<PolyData>(data_).verts;
      out.insert(out.end(), verts.begin(), verts.end());
      return;
    }
    case Kind::SimplexImage: {
      const auto& sv = std::get<SimplexImageData>(data_).world_v;
      out.insert(out.end(), sv.begin(), sv.end());
      return;
    }
    case Kind::Union:
    case Kind::Difference:
    case Kind::Intersection:
      for (const auto& p : std::get<PartsData>(data_).parts) p.collect_vertices(out);
      return;
  }
}

const Vec3& Domain::ball_center() const { return std::get<BallData>(data_).center; }
double Domain::ball_radius() const { return std::get<BallData>(data_).radius; }

std::span<const Halfspace> Domain::faces() const {
  if (kind_ == Kind::Polytope) return std::get<PolyData>(data_).faces;
  if (kind_ == Kind::SimplexImage) return std::get<SimplexImageData>(data_).world_f;
  throw InvalidInput("faces(): domain is not polytopal");
}

const Simplex& Domain::simplex_base() const { return std::get<SimplexImageData>(data_).base; }
const RigidMotion& Domain::simplex_motion() const { return std::get<SimplexImageData>(data_).g; }
double Domain::simplex_scale() const { return std::get<SimplexImageData>(data_).scale; }

std::span<const Domain> Domain::parts() const { return std::get<PartsData>(data_).parts; }

std::string Domain::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Ball: {
      const auto& b = std::get<BallData>(data_);
      os << "ball(c=(" << b.center.x << "," << b.center.y << "," << b.center.z
         << "), r=" << b.radius << ")";
      break;
    }
    case Kind::Box: {
      const auto& b = std::get<BoxData>(data_);
      os << "box([" << b.lo.x << "," << b.hi.x << "]x[" << b.lo.y << "," << b.hi.y << "]x["
         << b.lo.z << "," << b.hi.z << "])";
      break;
    }
    case Kind::Polytope:
      os << "polytope(" << std::get<PolyData>(data_).faces.size() << " faces)";
      break;
    case Kind::SimplexImage:
      os << "simplex(scale=" << std::get<SimplexImageData>(data_).scale << ")";
      break;
    case Kind::Union:
      os << "union(" << std::get<PartsData>(data_).parts.size() << ")";
      break;
    case Kind::Difference:
      os << "difference";
      break;
    case Kind::Intersection:
      os << "intersection(" << std::get<PartsData>(data_).parts.size() << ")";
      break;
  }
  return os.str();
}

double checked_volume(const Domain& d) {
  const double v = d.volume();
  if (!(v > 0)) throw InvalidInput("domain has empty interior: " + d.describe());
  return v;
}

double regularized_volume(const Domain& d) {
  switch (d.kind()) {
    case Domain::Kind::Ball:
    case Domain::Kind::Box:
    case Domain::Kind::Polytope:
    case Domain::Kind::SimplexImage:
    case Domain::Kind::Intersection:
      // Convex (intersections of convex parts included): hull is the set itself.
      return d.volume();
    case Domain::Kind::Union: {
      std::vector<Vec3> verts;
      d.collect_vertices(verts);  // throws for curved parts
      return convex_hull_volume(verts);
    }
    case Domain::Kind::Difference:
      // conv(A \ B) is contained in conv(A); still an upper surrogate.
      return regularized_volume(d.parts()[0]);
  }
  throw InvalidInput("regularized_volume: unknown kind");
}

// ---------------------------------------------------------------------------
// Fisher boundary-layer regularity

RegularityReport fisher_regularity(const Domain& d, std::vector<double> t_grid,
                                   std::size_t samples, std::uint64_t seed) {
  if (t_grid.empty()) throw InvalidInput("fisher_regularity: empty t grid");
  for (double t : t_grid)
    if (t < 0 || t > 1) throw InvalidInput("fisher_regularity: t values must lie in [0,1]");
  constexpr std::size_t kMinSamples = 10000;
  if (samples < kMinSamples)
    throw AccuracyError("fisher_regularity: " + std::to_string(samples) +
                        " samples are too few for a meaningful layer estimate; need at least " +
                        std::to_string(kMinSamples));

  const double vol = checked_volume(d);
  const double s_scale = std::cbrt(vol);
  const Aabb box = d.bounding_box().inflated(s_scale);
  const double v_box = box.volume();

  std::vector<double> sorted_t(t_grid);
  std::sort(sorted_t.begin(), sorted_t.end());

  // One distance evaluation per sample; nested layer sets by construction.
  std::vector<std::size_t> first_bin_count(sorted_t.size() + 1, 0);
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const Vec3 x = rng.uniform_box(box.lo, box.hi);
    const double dist = d.distance_to_boundary(x);
    const auto it = std::lower_bound(sorted_t.begin(), sorted_t.end(), dist / s_scale);
    ++first_bin_count[static_cast<std::size_t>(it - sorted_t.begin())];
  }
  std::vector<std::size_t> cum(sorted_t.size(), 0);
  std::size_t acc = 0;
  for (std::size_t i = 0; i < sorted_t.size(); ++i) {
    acc += first_bin_count[i];
    cum[i] = acc;
  }

  RegularityReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.layers.reserve(t_grid.size());
  for (double t : t_grid) {
    const std::size_t idx =
        static_cast<std::size_t>(std::lower_bound(sorted_t.begin(), sorted_t.end(), t) -
                                 sorted_t.begin());
    const double p = static_cast<double>(cum[idx]) / static_cast<double>(samples);
    LayerSample ls;
    ls.t = t;
    ls.layer_volume = p * v_box;
    ls.stderr_ = v_box * std::sqrt(std::max(0.0, p * (1 - p) / static_cast<double>(samples)));
    ls.ratio = t > 0 ? ls.layer_volume / (vol * t) : 0.0;
    rep.layers.push_back(ls);
    rep.a_estimate = std::max(rep.a_estimate, ls.ratio);
  }
  rep.fisher_monotone = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Cone property

namespace {

std::vector<Vec3> lattice_directions() {
  std::vector<Vec3> dirs;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        dirs.push_back(normalized(Vec3{static_cast<double>(a), static_cast<double>(b),
                                       static_cast<double>(c)}));
      }
  return dirs;
}

std::vector<Vec3> fibonacci_directions(std::size_t n) {
  std::vector<Vec3> dirs;
  dirs.reserve(n);
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * M_PI * static_cast<double>(i) / golden;
    dirs.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return dirs;
}

// Crude inward direction from finite differences of the signed depth.
Vec3 estimate_inward(const Domain& d, const Vec3& x, double h) {
  auto depth = [&](const Vec3& p) {
    const double dist = d.distance_to_boundary(p);
    return d.contains(p) ? dist : -dist;
  };
  const Vec3 g{depth({x.x + h, x.y, x.z}) - depth({x.x - h, x.y, x.z}),
               depth({x.x, x.y + h, x.z}) - depth({x.x, x.y - h, x.z}),
               depth({x.x, x.y, x.z + h}) - depth({x.x, x.y, x.z - h})};
  const double n = norm(g);
  return n > 1e-12 ? g / n : Vec3{0, 0, 1};
}

}  // namespace

RegularityReport cone_property_check(const Domain& d, double eps, std::size_t samples,
                                     std::size_t directions, std::uint64_t seed) {
  if (!(eps > 0 && eps < 1)) throw InvalidInput("cone_property_check: need 0 < eps < 1");
  if (samples == 0) throw InvalidInput("cone_property_check: samples must be positive");

  const Aabb inner_box = d.bounding_box();
  const Aabb outer_box = inner_box.inflated(eps);
  const double grad_h = 1e-4 * (1.0 + d.diameter());

  std::vector<Vec3> candidates = lattice_directions();
  {
    const auto fib = fibonacci_directions(directions);
    candidates.insert(candidates.end(), fib.begin(), fib.end());
  }

  constexpr std::size_t kConeSamples = 64;
  const double cap = 1.0 - eps * eps;  // cone opening: dot(w, axis) > 1 - eps^2

  Rng rng(seed);

  // Cone axis a at point x: sampled y = x - s*w with w in the spherical cap
  // around a and s < eps, exactly the set in the definition.
  auto cone_ok = [&](const Vec3& x, const Vec3& axis, bool complement_side, Rng& crng) {
    Vec3 eu = std::abs(axis.x) < 0.9 ? cross(axis, Vec3{1, 0, 0}) : cross(axis, Vec3{0, 1, 0});
    eu = normalized(eu);
    const Vec3 ev = cross(axis, eu);
    for (std::size_t k = 0; k < kConeSamples; ++k) {
      const double c = 1.0 - eps * eps * crng.uniform();  // cos(theta), in (1-eps^2, 1]
      const double st = std::sqrt(std::max(0.0, 1.0 - c * c));
      const double phi = 2.0 * M_PI * crng.uniform();
      const Vec3 w = axis * c + (eu * std::cos(phi) + ev * std::sin(phi)) * st;
      const double s = eps * std::cbrt(crng.uniform()) * (1.0 - 1e-12);
      const Vec3 y = x - w * s;
      const bool inside = d.contains(y);
      if (complement_side ? inside : !inside) return false;
    }
    return true;
  };

  RegularityReport rep;
  rep.samples = samples;
  rep.seed = seed;

  const std::size_t n_in = samples / 2;
  const std::size_t n_out = samples - n_in;

  auto test_side = [&](bool complement_side, std::size_t want) {
    std::size_t got = 0, attempts = 0;
    const std::size_t max_attempts = 200 * want + 1000;
    const Aabb& box = complement_side ? outer_box : inner_box;
    while (got < want && attempts < max_attempts) {
      ++attempts;
      const Vec3 x = rng.uniform_box(box.lo, box.hi);
      if (complement_side ? d.contains(x) : !d.contains(x)) continue;
      ++got;

      Vec3 inward = estimate_inward(d, x, grad_h);
      if (complement_side) inward = -inward;

      bool pass = false;
      double best_frac = 0;
      Vec3 best_dir = inward;
      Rng crng(derive_seed(seed, 0x10000 + got + (complement_side ? 1u << 20 : 0)));

      auto try_axis = [&](const Vec3& axis) {
        if (cone_ok(x, axis, complement_side, crng)) {
          pass = true;
          return true;
        }
        return false;
      };
      if (!try_axis(inward)) {
        for (const Vec3& a : candidates)
          if (try_axis(a)) break;
      }
      if (!pass) {
        // Re-measure the best candidate fraction for the report.
        for (const Vec3& a : candidates) {
          std::size_t ok = 0;
          Rng mrng(derive_seed(seed, 0x20000 + got));
          Vec3 eu = std::abs(a.x) < 0.9 ? cross(a, Vec3{1, 0, 0}) : cross(a, Vec3{0, 1, 0});
          eu = normalized(eu);
          const Vec3 ev = cross(a, eu);
          for (std::size_t k = 0; k < kConeSamples; ++k) {
            const double c = 1.0 - eps * eps * mrng.uniform();
            const double st = std::sqrt(std::max(0.0, 1.0 - c * c));
            const double phi = 2.0 * M_PI * mrng.uniform();
            const Vec3 w = a * c + (eu * std::cos(phi) + ev * std::sin(phi)) * st;
            const double s = eps * std::cbrt(mrng.uniform()) * (1.0 - 1e-12);
            const bool inside = d.contains(x - w * s);
            ok += (complement_side ? !inside : inside);
          }
          const double frac = static_cast<double>(ok) / kConeSamples;
          if (frac > best_frac) {
            best_frac = frac;
            best_dir = a;
          }
        }
        rep.witnesses.push_back({x, complement_side, best_frac, best_dir});
      }
    }
  };

  test_side(false, n_in);
  test_side(true, n_out);

  rep.cone_pass = rep.witnesses.empty();
  rep.eps_estimate = rep.cone_pass ? eps : 0.0;
  return rep;
}

}  // namespace tlim
