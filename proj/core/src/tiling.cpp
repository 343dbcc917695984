#include "tlim/tiling.hpp"

#include <algorithm>
#include <cmath>

#include "tlim/csv.hpp"
#include "tlim/errors.hpp"

namespace tlim {

namespace {

// Fixed enumeration of the 6 coordinate orders; permutation p means
// x[p[0]] >= x[p[1]] >= x[p[2]] inside the tetrahedron.
constexpr std::array<std::array<int, 3>, 6> kPerms{{{0, 1, 2},
                                                    {0, 2, 1},
                                                    {1, 0, 2},
                                                    {1, 2, 0},
                                                    {2, 0, 1},
                                                    {2, 1, 0}}};

Vec3 unit_axis(int i) { return {i == 0 ? 1.0 : 0.0, i == 1 ? 1.0 : 0.0, i == 2 ? 1.0 : 0.0}; }

}  // namespace

Simplex kuhn_simplex(int k) {
  if (k < 0 || k > 5) throw InvalidInput("kuhn_simplex: index must be in 0..5");
  const auto& p = kPerms[static_cast<std::size_t>(k)];
  Simplex s;
  s.v[0] = {0, 0, 0};
  s.v[1] = unit_axis(p[0]);
  s.v[2] = s.v[1] + unit_axis(p[1]);
  s.v[3] = s.v[2] + unit_axis(p[2]);
  return s;
}

const Simplex& reference_simplex() {
  static const Simplex ref = [] {
    Simplex s = kuhn_simplex(0);
    const Vec3 bc = s.barycenter();
    for (auto& v : s.v) v -= bc;
    return s;
  }();
  return ref;
}

Tiling::Tiling(RigidMotion g, double ell) : g_(g), ell_(ell) {
  if (!(ell > 0)) throw InvalidInput("tiling scale must be positive");
  rot_inv_ = to_matrix(g.q).transposed();
}

TileIndex Tiling::locate(const Vec3& p) const {
  const Vec3 q = (rot_inv_ * (p - g_.u)) / ell_;
  TileIndex idx;
  Vec3 frac;
  const double fx = std::floor(q.x), fy = std::floor(q.y), fz = std::floor(q.z);
  idx.cell = {static_cast<long>(fx), static_cast<long>(fy), static_cast<long>(fz)};
  frac = {q.x - fx, q.y - fy, q.z - fz};
  for (int k = 0; k < 6; ++k) {
    const auto& perm = kPerms[static_cast<std::size_t>(k)];
    if (frac[perm[0]] >= frac[perm[1]] && frac[perm[1]] >= frac[perm[2]]) {
      idx.k = k;
      return idx;
    }
  }
  idx.k = 0;  // unreachable: some order always holds
  return idx;
}

Domain Tiling::tile(const TileIndex& idx) const {
  // { g(ell(x + z)) } = R(ell x) + (R(ell z) + u)
  const Vec3 z{static_cast<double>(idx.cell[0]), static_cast<double>(idx.cell[1]),
               static_cast<double>(idx.cell[2])};
  RigidMotion m;
  m.q = g_.q;
  m.u = g_.u + rotate(g_.q, z * ell_);
  return Domain::simplex_image(kuhn_simplex(idx.k), m, ell_);
}

BoundaryCount interior_boundary_sets(double L, double ell, const RigidMotion& gbar) {
  if (!(ell > 0 && L > 0)) throw InvalidInput("interior_boundary_sets: need 0 < ell, 0 < L");
  if (ell > L) throw InvalidInput("interior_boundary_sets: need ell <= L");

  const Simplex& ref = reference_simplex();
  const Domain host = Domain::simplex_image(ref, gbar, L);
  const auto faces = host.faces();

  // R(ell Delta) + u + z stays in a ball of this radius around z, for every
  // rotation R and every translation u in the unit cube.
  const double r_crit = ell * ref.enclosing_radius() + std::sqrt(3.0);

  const Aabb bb = host.bounding_box().inflated(r_crit + 1.0);
  const long x0 = static_cast<long>(std::floor(bb.lo.x)), x1 = static_cast<long>(std::ceil(bb.hi.x));
  const long y0 = static_cast<long>(std::floor(bb.lo.y)), y1 = static_cast<long>(std::ceil(bb.hi.y));
  const long z0 = static_cast<long>(std::floor(bb.lo.z)), z1 = static_cast<long>(std::ceil(bb.hi.z));

  BoundaryCount out;
  out.L = L;
  out.ell = ell;
  out.gbar = gbar;

  for (long ix = x0; ix <= x1; ++ix)
    for (long iy = y0; iy <= y1; ++iy)
      for (long iz = z0; iz <= z1; ++iz) {
        const Vec3 z{static_cast<double>(ix), static_cast<double>(iy), static_cast<double>(iz)};
        double m_in = std::numeric_limits<double>::infinity();
        for (const auto& f : faces) m_in = std::min(m_in, f.c - dot(f.n, z));
        if (m_in >= r_crit) {
          ++out.n_interior;  // B(z, r_crit) inside the host: definitely interior
        } else if (m_in >= -r_crit) {
          ++out.n_boundary;  // may meet the host for some motion: shell
        }
      }
  return out;
}

std::string boundary_counts_csv(const std::vector<BoundaryCount>& rows) {
  CsvWriter csv({"L", "ell", "n_interior", "n_boundary"});
  for (const auto& r : rows) {
    csv.row({CsvWriter::cell(r.L), CsvWriter::cell(r.ell),
             CsvWriter::cell(static_cast<std::int64_t>(r.n_interior)),
             CsvWriter::cell(static_cast<std::int64_t>(r.n_boundary))});
  }
  return csv.text();
}

}  // namespace tlim
