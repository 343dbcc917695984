#include "tlim/models.hpp"

#include <cmath>

#include "tlim/errors.hpp"

namespace tlim {

double cell_energy(double r, double kappa_kin) {
  if (!(r > 0)) throw InvalidInput("cell_energy: ball radius must be positive");
  // ball self-energy 3/(5r), point-ball attraction -3/(2r)
  return kappa_kin / (r * r) - 0.9 / r;
}

double screening_potential(double r, const Vec3& x) {
  if (!(r > 0)) throw InvalidInput("screening_potential: ball radius must be positive");
  const double s = norm(x);
  if (s >= r) return 0.0;  // Newton: neutral cell has no exterior potential
  const double point = s > 0 ? 1.0 / s : std::numeric_limits<double>::infinity();
  const double ball = (3 * r * r - s * s) / (2 * r * r * r);
  return point - ball;
}

ScreenedCrystalModel::ScreenedCrystalModel(const ScreenedCrystalParams& p) : params_(p) {
  if (!(p.radius > 0 && p.radius <= 0.5))
    throw InvalidInput("screened crystal: radius must lie in (0, 1/2]");
  if (p.kinetic_const < 0) throw InvalidInput("screened crystal: kinetic_const must be >= 0");
  if (p.penalty < 0) throw InvalidInput("screened crystal: penalty must be >= 0");
  e_cell_ = cell_energy(p.radius, p.kinetic_const);
}

double ScreenedCrystalModel::stability_kappa() const {
  return std::abs(e_cell_) + params_.penalty + 1.0 / params_.radius + 1.0;
}

namespace {

// Deterministic displaced-ball search: does some ball of radius r fit inside
// d with center within distance 1 of z? Probes 26 directions and 8 radii.
bool dipole_fits(const Domain& d, const Vec3& z, double r) {
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const Vec3 dir = normalized(Vec3{static_cast<double>(a), static_cast<double>(b),
                                         static_cast<double>(c)});
        for (int step = 1; step <= 8; ++step) {
          const double delta = step / 8.0;
          if (d.ball_fits(z + dir * delta, r)) return true;
        }
      }
  return false;
}

}  // namespace

double ScreenedCrystalModel::evaluate(const Domain& d) const {
  const double r = params_.radius;
  const Aabb bb = d.bounding_box();
  if (bb.empty()) return 0.0;

  const long x0 = static_cast<long>(std::ceil(bb.lo.x)), x1 = static_cast<long>(std::floor(bb.hi.x));
  const long y0 = static_cast<long>(std::ceil(bb.lo.y)), y1 = static_cast<long>(std::floor(bb.hi.y));
  const long z0 = static_cast<long>(std::ceil(bb.lo.z)), z1 = static_cast<long>(std::floor(bb.hi.z));

  double energy = 0;
  for (long ix = x0; ix <= x1; ++ix)
    for (long iy = y0; iy <= y1; ++iy)
      for (long iz = z0; iz <= z1; ++iz) {
        const Vec3 site{static_cast<double>(ix), static_cast<double>(iy),
                        static_cast<double>(iz)};
        if (!d.contains(site)) continue;
        if (d.ball_fits(site, r)) {
          energy += e_cell_;  // screened cell, zero exterior potential
        } else if (dipole_fits(d, site, r)) {
          energy += params_.penalty;
        } else {
          energy += params_.penalty + 1.0 / r;  // unscreened surcharge
        }
      }
  return energy;
}

}  // namespace tlim
