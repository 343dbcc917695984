#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tlim/geometry.hpp"
#include "tlim/vec.hpp"

namespace tlim {

// Finite set of classical point charges (x_i, z_i), charges in units of the
// elementary charge, lengths dimensionless; energies come out in the
// matching Hartree-like units (z z' / |x - x'|).
struct ChargeConfiguration {
  std::vector<Vec3> positions;
  std::vector<double> charges;

  std::size_t size() const { return positions.size(); }
  double total_charge() const;
  double charge_square_sum() const;
  // Smallest pairwise distance (infinity for fewer than two particles).
  double min_separation() const;

  // Plain-text particle lines: "x y z charge".
  static ChargeConfiguration load(std::istream& in);
  static ChargeConfiguration load_file(const std::string& path);
  void save(std::ostream& out) const;
};

// Sum over pairs z_i z_j / |x_i - x_j|, direct O(N^2) summation.
// Coincident particles are an error naming the colliding pair.
double coulomb_energy(const ChargeConfiguration& c);

// delta(x) = min over Z^3 of |x - R|; exact via nearest rounding plus the
// 27-point neighborhood.
double nearest_nucleus_distance(const Vec3& x);

struct BaxterResult {
  double lhs = 0;  // full V(x_1..x_N): e-n attraction + e-e + n-n repulsion
  double rhs = 0;  // -(3/2 + sqrt 2) sum_i 1/delta(x_i)
  bool holds = false;
};

// Checks the one-body lower bound on the full Coulomb potential for
// electrons (charge -1) against unit nuclei at the given lattice sites.
BaxterResult baxter_check(const std::vector<Vec3>& electrons, const std::vector<Vec3>& nuclei);

struct GSCheckReport {
  double lhs = 0;
  double rhs_mean = 0;
  double rhs_stderr = 0;
  double implied_constant = 0;  // (lhs - rhs_mean) * ell / sum z_i^2
  std::size_t samples = 0;
  double ell = 0;
  std::uint64_t seed = 0;
  double c_ref = 0;
  bool holds = false;
};

struct GSOptions {
  double c_ref = 10.0;
  std::optional<Aabb> translation_cell;  // default: config box inflated by ell * R(simplex)
  unsigned threads = 1;
};

// Monte-Carlo check of the simplex-average screening bound: estimates the
// group average of the tile-restricted pair energy over translations x SO(3)
// and tests lhs >= rhs_mean - c_ref/ell * sum z_i^2 - 3 stderr. The
// translation integral is truncated to a cell outside which the integrand
// vanishes, with the Haar normalization carried by cell_volume / |ell tri|.
GSCheckReport graf_schenker_check(const ChargeConfiguration& c, const Domain& simplex,
                                  double ell, std::size_t samples, std::uint64_t seed,
                                  const GSOptions& opts = {});

}  // namespace tlim
