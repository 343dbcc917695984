#include "tlim/motion.hpp"

#include "tlim/errors.hpp"
#include "tlim/geometry.hpp"
#include "tlim/tiling.hpp"

namespace tlim {

Domain act_domain(const RigidMotion& g, double ell, const Domain& d) {
  if (!(ell > 0)) throw InvalidInput("act_domain: scale must be positive");
  switch (d.kind()) {
    case Domain::Kind::SimplexImage: {
      // x -> R_g(ell (R0(s0 b) + u0)) + u_g  ==  (R_g R0)(ell s0 b) + offset
      const RigidMotion& g0 = d.simplex_motion();
      const double s0 = d.simplex_scale();
      RigidMotion composite;
      composite.q = (g.q * g0.q).normalized();
      composite.u = g.u + rotate(g.q, g0.u * ell);
      return Domain::simplex_image(d.simplex_base(), composite, ell * s0);
    }
    case Domain::Kind::Ball:
      return Domain::ball(act(g, d.ball_center() * ell), ell * d.ball_radius());
    default:
      throw InvalidInput("act_domain supports simplex-image and ball domains, got " +
                         d.describe());
  }
}

}  // namespace tlim
