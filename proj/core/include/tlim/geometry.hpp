#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tlim/motion.hpp"
#include "tlim/vec.hpp"

namespace tlim {

// Oriented halfspace { x : dot(n, x) <= c } with unit normal n.
struct Halfspace {
  Vec3 n;
  double c = 0;
};

struct Simplex {
  std::array<Vec3, 4> v;

  double volume() const;
  Vec3 barycenter() const;
  // Outward-oriented face planes (normals unit length).
  std::array<Halfspace, 4> faces() const;
  // Radius of the smallest origin-centered ball containing the simplex.
  double enclosing_radius() const;
  double diameter() const;
};

struct Aabb {
  Vec3 lo, hi;
  bool empty() const { return lo.x >= hi.x || lo.y >= hi.y || lo.z >= hi.z; }
  Vec3 extent() const { return hi - lo; }
  double volume() const;
  Aabb inflated(double pad) const {
    return {lo - Vec3{pad, pad, pad}, hi + Vec3{pad, pad, pad}};
  }
};

// Bounded open region of R^3. Primitive shapes are convex with exact
// predicates; union / difference / intersection composites exist for the
// handful of non-convex experiments and evaluate predicate-wise.
//
// Open-set semantics: contains() is strict, boundaries are excluded.
class Domain {
 public:
  enum class Kind { Ball, Box, Polytope, SimplexImage, Union, Difference, Intersection };

  static Domain ball(const Vec3& center, double radius);
  static Domain box(const Vec3& lo, const Vec3& hi);
  static Domain cube(const Vec3& center, double side);
  // Halfspace polytope; normals need not be unit (normalized on entry).
  static Domain polytope(std::vector<Halfspace> faces);
  // Image of `base` under x -> R(scale * x) + u.
  static Domain simplex_image(const Simplex& base, const RigidMotion& g, double scale);
  // Parts must have pairwise disjoint interiors (volume adds up).
  static Domain make_union(std::vector<Domain> parts);
  // outer \ closure(inner); inner must be contained in outer (volume subtracts).
  static Domain difference(Domain outer, Domain inner);
  // Polytopal parts merge into one exact polytope; other combinations keep a
  // predicate composite whose volume is a seeded Monte-Carlo estimate.
  static Domain intersection(std::vector<Domain> parts);

  Kind kind() const { return kind_; }
  bool contains(const Vec3& x) const;
  // Closed ball of radius r around c fits inside the domain.
  bool ball_fits(const Vec3& c, double r) const;
  // Distance to the topological boundary. Exact for balls and boxes and for
  // interior points of convex polytopes; for exterior points of polytopes it
  // is the min over face-plane distances (documented surrogate).
  double distance_to_boundary(const Vec3& x) const;
  // Lower bound for dist(x, closure(domain)); zero inside.
  double distance_outside(const Vec3& x) const;

  // Exact closed form for primitive shapes (0 if the interior is empty);
  // sum/difference for composites; Monte-Carlo for mixed intersections.
  double volume() const;
  bool empty() const { return volume() <= 0; }
  Aabb bounding_box() const;
  double diameter() const;

  Domain translated(const Vec3& t) const;

  // Vertices of the polytopal skeleton (box corners, polytope and simplex
  // vertices, recursively for composites). Throws for balls.
  void collect_vertices(std::vector<Vec3>& out) const;

  // Shape data accessors (valid only for the matching kind).
  const Vec3& ball_center() const;
  double ball_radius() const;
  std::span<const Halfspace> faces() const;  // Polytope and SimplexImage
  const Simplex& simplex_base() const;
  const RigidMotion& simplex_motion() const;
  double simplex_scale() const;
  std::span<const Domain> parts() const;  // composites

  std::string describe() const;

 private:
  Domain() = default;

  struct BallData {
    Vec3 center;
    double radius;
  };
  struct BoxData {
    Vec3 lo, hi;
  };
  struct PolyData {
    std::vector<Halfspace> faces;
    std::vector<Vec3> verts;
    double vol;
  };
  struct SimplexImageData {
    Simplex base;
    RigidMotion g;
    double scale;
    std::array<Vec3, 4> world_v;
    std::vector<Halfspace> world_f;
  };
  struct PartsData {
    std::vector<Domain> parts;
    double vol;  // composites cache their volume at construction
  };

  Kind kind_ = Kind::Ball;
  std::variant<BallData, BoxData, PolyData, SimplexImageData, PartsData> data_{BallData{{}, 1.0}};
};

// Like Domain::volume() but an explicitly empty interior is an error
// (degenerate halfspace systems et al).
double checked_volume(const Domain& d);

// Exact volume of the convex hull of a point set (supporting-plane
// enumeration; intended for small sets).
double convex_hull_volume(std::span<const Vec3> pts);

// Computable upper surrogate for the regularized volume |Omega|_r:
// the volume of the convex hull. Equals volume() for convex domains.
double regularized_volume(const Domain& d);

// Vertex enumeration / exact volume for a halfspace intersection.
std::vector<Vec3> polytope_vertices(std::span<const Halfspace> faces);
double polytope_volume(std::span<const Halfspace> faces, std::span<const Vec3> verts);

struct LayerSample {
  double t = 0;
  double layer_volume = 0;
  double stderr_ = 0;
  double ratio = 0;  // layer_volume / (|Omega| * t), 0 at t = 0
};

struct ConeWitness {
  Vec3 point;
  bool in_complement = false;
  double best_fraction = 0;  // largest in-set fraction over candidate cones
  Vec3 best_direction;
};

struct RegularityReport {
  double a_estimate = 0;
  double eps_estimate = 0;
  std::vector<LayerSample> layers;
  bool fisher_monotone = true;
  bool cone_pass = false;
  std::vector<ConeWitness> witnesses;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

// Monte-Carlo boundary-layer profile: for each t in t_grid estimates
// |{ x : d(x, boundary) <= |Omega|^{1/3} t }| over the bounding box
// inflated by |Omega|^{1/3}, and reports a_estimate = max layer/(|Omega| t).
RegularityReport fisher_regularity(const Domain& d, std::vector<double> t_grid,
                                   std::size_t samples, std::uint64_t seed);

// Searches candidate cone axes at points sampled in the domain and in its
// complement; a point passes when some axis keeps the whole sampled cone
// inside the respective set. Failing points are reported as witnesses.
RegularityReport cone_property_check(const Domain& d, double eps, std::size_t samples,
                                     std::size_t directions, std::uint64_t seed);

}  // namespace tlim
