#include <doctest.h>

#include <cmath>

#include "tlim/errors.hpp"
#include "tlim/motion.hpp"
#include "tlim/stats.hpp"
#include "tlim/tiling.hpp"

using namespace tlim;

TEST_CASE("sampled rotations are unit quaternions") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const RigidMotion g = sample_haar(rng);
    CHECK(std::abs(g.q.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("identity acts as the identity, exactly") {
  const Vec3 x{0.123, -4.56, 7.89};
  const Vec3 y = act(identity_motion(), x);
  CHECK(y.x == x.x);
  CHECK(y.y == x.y);
  CHECK(y.z == x.z);
}

TEST_CASE("inverse and composition properties on random motions") {
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    const RigidMotion g1 = sample_haar(rng);
    const RigidMotion g2 = sample_haar(rng);
    const Vec3 x{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    CHECK(distance(act(g1, act(inverse(g1), x)), x) <= 1e-10);
    CHECK(distance(act(g2, act(g1, x)), act(compose(g2, g1), x)) <= 1e-10);
  }
}

TEST_CASE("rotations preserve pairwise distances") {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const RigidMotion g = sample_haar(rng);
    const Vec3 a{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const Vec3 b{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    CHECK(std::abs(distance(act(g, a), act(g, b)) - distance(a, b)) <= 1e-10);
  }
}

TEST_CASE("rotation uniformity: mean image of e1 vanishes at the 3-sigma scale") {
  Rng rng(4);
  Vec3 acc{};
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) acc += rotate(sample_rotation(rng), {1, 0, 0});
  CHECK(norm(acc / static_cast<double>(n)) <= 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("translation coordinates pass a KS uniformity check at the 1% level") {
  Rng rng(5);
  const std::size_t n = 10000;
  std::vector<double> xs(n), ys(n), zs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RigidMotion g = sample_haar(rng);
    xs[i] = g.u.x;
    ys[i] = g.u.y;
    zs[i] = g.u.z;
  }
  const double crit = 1.6276 / std::sqrt(static_cast<double>(n));  // 1% asymptotic
  CHECK(ks_statistic_uniform01(xs) <= crit);
  CHECK(ks_statistic_uniform01(ys) <= crit);
  CHECK(ks_statistic_uniform01(zs) <= crit);
}

TEST_CASE("fixed seed reproduces the identical motion") {
  Rng a(777), b(777);
  for (int i = 0; i < 100; ++i) {
    const RigidMotion ga = sample_haar(a);
    const RigidMotion gb = sample_haar(b);
    CHECK(ga.u.x == gb.u.x);
    CHECK(ga.q.w == gb.q.w);
    CHECK(ga.q.z == gb.q.z);
  }
}

TEST_CASE("act_domain on the reference simplex") {
  const Domain ref = Domain::simplex_image(reference_simplex(), identity_motion(), 1.0);

  SUBCASE("identity at scale 1 changes nothing") {
    const Domain img = act_domain(identity_motion(), 1.0, ref);
    for (int i = 0; i < 4; ++i) {
      std::vector<Vec3> a, b;
      ref.collect_vertices(a);
      img.collect_vertices(b);
      CHECK(distance(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]) == 0.0);
    }
  }

  SUBCASE("pure translation shifts every vertex") {
    RigidMotion g;
    g.u = {1, 0, 0};
    const Domain img = act_domain(g, 1.0, ref);
    std::vector<Vec3> a, b;
    ref.collect_vertices(a);
    img.collect_vertices(b);
    for (std::size_t i = 0; i < 4; ++i) CHECK(distance(a[i] + Vec3{1, 0, 0}, b[i]) <= 1e-15);
  }

  SUBCASE("volume scales with the cube of the dilation") {
    Rng rng(6);
    for (int i = 0; i < 20; ++i) {
      const RigidMotion g = sample_haar(rng);
      CHECK(act_domain(g, 2.0, ref).volume() ==
            doctest::Approx(8.0 * ref.volume()).epsilon(1e-12));
    }
  }

  SUBCASE("composition of actions") {
    Rng rng(7);
    const RigidMotion g = sample_haar(rng);
    const Domain once = act_domain(g, 2.0, act_domain(sample_haar(rng), 3.0, ref));
    CHECK(once.volume() == doctest::Approx(216.0 * ref.volume()).epsilon(1e-12));
  }

  SUBCASE("only simplex-image and ball kinds transform") {
    CHECK_THROWS_AS(act_domain(identity_motion(), 2.0, Domain::box({0, 0, 0}, {1, 1, 1})),
                    InvalidInput);
  }
}

TEST_CASE("the six Kuhn tetrahedra tile the unit cube") {
  double total = 0;
  std::vector<Domain> tiles;
  for (int k = 0; k < 6; ++k) {
    const Simplex s = kuhn_simplex(k);
    CHECK(s.volume() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    total += s.volume();
    tiles.push_back(Domain::simplex_image(s, identity_motion(), 1.0));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));

  // interior disjointness + coverage: random cube points belong to exactly
  // one tile away from the measure-zero boundaries
  Rng rng(8);
  std::size_t boundary_hits = 0;
  for (int i = 0; i < 100000; ++i) {
    const Vec3 p{rng.uniform(), rng.uniform(), rng.uniform()};
    int count = 0;
    for (const auto& t : tiles) count += t.contains(p);
    if (count != 1) {
      ++boundary_hits;
      // must be within the tolerance band of a tile boundary
      double nearest = 1e9;
      for (const auto& t : tiles) nearest = std::min(nearest, t.distance_to_boundary(p));
      CHECK(nearest <= 1e-9);
    }
  }
  CHECK(boundary_hits <= 2);
}

TEST_CASE("tiling locate is consistent with tile membership") {
  Rng rng(9);
  const Tiling tiling(sample_haar(rng), 2.5);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 p{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const TileIndex idx = tiling.locate(p);
    const Domain tile = tiling.tile(idx);
    CHECK(tile.distance_outside(p) <= 1e-9);
    CHECK(tile.volume() == doctest::Approx(tiling.tile_volume()).epsilon(1e-12));
  }
}

TEST_CASE("reference simplex has the origin at its barycenter") {
  const Simplex& ref = reference_simplex();
  CHECK(norm(ref.barycenter()) <= 1e-15);
  CHECK(ref.volume() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(ref.enclosing_radius() == doctest::Approx(std::sqrt(14.0) / 4.0).epsilon(1e-12));
  // origin strictly inside
  const Domain d = Domain::simplex_image(ref, identity_motion(), 1.0);
  CHECK(d.contains({0, 0, 0}));
}

TEST_CASE("interior and boundary lattice sets") {
  SUBCASE("ell = L leaves no interior point") {
    const BoundaryCount bc = interior_boundary_sets(16, 16, identity_motion());
    CHECK(bc.n_interior == 0);
  }

  SUBCASE("interior count approaches |L Delta| at surface order") {
    // |n_interior - |L Delta|| <= C L^2 with a stable constant
    std::vector<double> ratios;
    for (double L : {16.0, 32.0, 64.0}) {
      const BoundaryCount bc = interior_boundary_sets(L, 1, identity_motion());
      const double deficit = std::abs(static_cast<double>(bc.n_interior) - bc.host_volume());
      ratios.push_back(deficit / (L * L));
      CHECK(bc.n_interior <= bc.host_volume() + 1e-9);  // disjoint unit cells
      CHECK(bc.n_interior + bc.n_boundary >= bc.host_volume() - 1e-9);  // covering
    }
    for (double r : ratios) CHECK(r <= 8.0);
    CHECK(ratios.back() <= 1.3 * ratios.front());
  }

  SUBCASE("boundary shell is uniformly of order L^2 ell") {
    Rng rng(10);
    for (double L : {8.0, 16.0, 32.0, 64.0})
      for (double ell : {1.0, 2.0, 4.0}) {
        const RigidMotion gbar = sample_haar(rng);
        const BoundaryCount bc = interior_boundary_sets(L, ell, gbar);
        CHECK(static_cast<double>(bc.n_boundary) / (L * L * ell) <= 20.0);
      }
  }

  SUBCASE("set definitions verified against direct motion sampling") {
    // For interior z every sampled placement of the moving tile must stay in
    // the host; points excluded from both sets must never meet it.
    const double L = 12, ell = 2;
    Rng rng(11);
    const RigidMotion gbar = sample_haar(rng);
    const Domain host = Domain::simplex_image(reference_simplex(), gbar, L);
    const auto faces = host.faces();
    const double rho = reference_simplex().enclosing_radius();
    const double r_crit = ell * rho + std::sqrt(3.0);

    const Aabb bb = host.bounding_box().inflated(r_crit + 1);
    for (int trial = 0; trial < 4000; ++trial) {
      const Vec3 z{std::floor(rng.uniform(bb.lo.x, bb.hi.x)),
                   std::floor(rng.uniform(bb.lo.y, bb.hi.y)),
                   std::floor(rng.uniform(bb.lo.z, bb.hi.z))};
      double m_in = 1e300;
      for (const auto& f : faces) m_in = std::min(m_in, f.c - dot(f.n, z));
      const bool interior = m_in >= r_crit;
      const bool outside_both = m_in < -r_crit;

      for (int s = 0; s < 20; ++s) {
        RigidMotion g = sample_haar(rng);
        g.u += z;
        const Domain tile =
            act_domain(g, ell, Domain::simplex_image(reference_simplex(), identity_motion(), 1));
        std::vector<Vec3> verts;
        tile.collect_vertices(verts);
        if (interior) {
          for (const Vec3& v : verts) CHECK(host.contains(v));
        }
        if (outside_both) {
          // no vertex (nor the tile center) may land inside the host
          for (const Vec3& v : verts) CHECK(!host.contains(v));
        }
      }
    }
  }
}

TEST_CASE("boundary count CSV export") {
  const BoundaryCount bc = interior_boundary_sets(8, 1, identity_motion());
  const std::string csv = boundary_counts_csv({bc});
  CHECK(csv.find("L,ell,n_interior,n_boundary\n") == 0);
  CHECK(csv.find('8') != std::string::npos);
}
