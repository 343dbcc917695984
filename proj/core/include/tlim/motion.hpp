#pragma once

#include <cmath>

#include "tlim/rng.hpp"
#include "tlim/vec.hpp"

namespace tlim {

// Unit quaternion, (w, x, y, z) convention.
struct Quat {
  double w = 1, x = 0, y = 0, z = 0;

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

  Quat normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }

  Quat conjugate() const { return {w, -x, -y, -z}; }

  Quat operator*(const Quat& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }
};

inline Vec3 rotate(const Quat& q, const Vec3& v) {
  // v' = v + 2 q_v x (q_v x v + w v)
  const Vec3 qv{q.x, q.y, q.z};
  const Vec3 t = cross(qv, v) * 2.0;
  return v + t * q.w + cross(qv, t);
}

inline Mat3 to_matrix(const Quat& q) {
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  return {{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
           2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
           2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}};
}

// Element g = (u, R) of R^3 x| SO(3); acts as x -> R x + u.
struct RigidMotion {
  Vec3 u{};
  Quat q{};
};

inline RigidMotion identity_motion() { return {}; }

inline Vec3 act(const RigidMotion& g, const Vec3& x) { return rotate(g.q, x) + g.u; }

// act(compose(g2, g1), x) == act(g2, act(g1, x))
inline RigidMotion compose(const RigidMotion& g2, const RigidMotion& g1) {
  return {g2.u + rotate(g2.q, g1.u), (g2.q * g1.q).normalized()};
}

inline RigidMotion inverse(const RigidMotion& g) {
  const Quat qi = g.q.conjugate();
  return {rotate(qi, -g.u), qi};
}

// Rotation part uniform on SO(3) (uniform unit quaternion from four
// normals); translation uniform on the unit-cube fundamental domain, which
// is the full translation story for Z^3-periodic energies.
inline Quat sample_rotation(Rng& rng) {
  Quat q;
  do {
    q = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
  } while (q.norm() < 1e-6);
  return q.normalized();
}

inline RigidMotion sample_haar(Rng& rng) {
  RigidMotion g;
  g.u = {rng.uniform(), rng.uniform(), rng.uniform()};
  g.q = sample_rotation(rng);
  return g;
}

// Haar sample with the translation drawn from an explicit box cell.
inline RigidMotion sample_haar_cell(const Vec3& lo, const Vec3& hi, Rng& rng) {
  RigidMotion g;
  g.u = rng.uniform_box(lo, hi);
  g.q = sample_rotation(rng);
  return g;
}

}  // namespace tlim
