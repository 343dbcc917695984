#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tlim/geometry.hpp"
#include "tlim/motion.hpp"

namespace tlim {

// Image of a domain under x -> R(ell x) + u. Supported for simplex-image and
// ball domains (the shapes the group experiments transform); volume scales
// by ell^3 exactly.
Domain act_domain(const RigidMotion& g, double ell, const Domain& d);

// The six Kuhn tetrahedra of the unit cube, k in 0..5. Each has volume 1/6;
// together they tile the cube, and with Z^3 translations all of R^3.
Simplex kuhn_simplex(int k);

// Kuhn tetrahedron 0 translated so the origin sits at its barycenter
// (the group experiments need an interior origin to rotate about).
const Simplex& reference_simplex();

struct TileIndex {
  std::array<long, 3> cell;
  int k = 0;
  bool operator==(const TileIndex&) const = default;
};

// Tiling of R^3 by Kuhn tetrahedra at scale ell, moved as a whole by g:
// tile (z, k) = { g(ell (x + z)) : x in Kuhn_k }.
class Tiling {
 public:
  Tiling(RigidMotion g, double ell);

  double ell() const { return ell_; }
  const RigidMotion& motion() const { return g_; }
  double tile_volume() const { return ell_ * ell_ * ell_ / 6.0; }

  // Index of the tile whose closure contains p (boundary ties resolved
  // deterministically by the coordinate sort).
  TileIndex locate(const Vec3& p) const;
  Domain tile(const TileIndex& idx) const;

 private:
  RigidMotion g_;
  double ell_;
  Mat3 rot_inv_;
};

// The lattice sets of the subaverage chain: Z = { z in Z^3 : the whole
// motion cell of ell-simplices anchored at z stays inside gbar * (L Delta) }
// and its boundary shell. Membership uses the sufficient ball criterion
// (radius ell * enclosing_radius + sqrt(3)), the shell the complementary
// necessary one, so the counts err on the conservative side of the chain
// inequality. Each interior point carries one unit cube of translation
// measure, hence n_interior <= |L Delta| and n_interior/|L Delta| -> 1.
struct BoundaryCount {
  double L = 0;
  double ell = 0;
  long n_interior = 0;
  long n_boundary = 0;
  RigidMotion gbar;

  double host_volume() const { return L * L * L / 6.0; }
  double coverage() const { return static_cast<double>(n_interior) / host_volume(); }
};

BoundaryCount interior_boundary_sets(double L, double ell, const RigidMotion& gbar);

// CSV rows with columns L, ell, n_interior, n_boundary.
std::string boundary_counts_csv(const std::vector<BoundaryCount>& rows);

}  // namespace tlim
