#pragma once

#include <memory>
#include <optional>
#include <string>

#include "tlim/geometry.hpp"

namespace tlim {

// Abstract energy functional Omega -> E(Omega). Implementations are pure
// (repeated evaluation identical) and normalize E = 0 on lattice-free
// degenerate domains.
class EnergyFunctional {
 public:
  virtual ~EnergyFunctional() = default;
  virtual double evaluate(const Domain& d) const = 0;
  virtual std::optional<double> known_limit() const { return std::nullopt; }
  virtual std::string name() const = 0;
};

// Kinetic plus electrostatic energy of one unit cell: a point nucleus with a
// uniform radial electron ball of radius r on top,
//   kappa_kin / r^2 + (3/(5r) - 3/(2r)) = kappa_kin / r^2 - 9/(10 r).
double cell_energy(double r, double kappa_kin);

// Potential at x of (unit point charge at 0) + (uniform charge -1 ball of
// radius r at 0): identically 0 for |x| >= r, closed form inside.
double screening_potential(double r, const Vec3& x);

struct ScreenedCrystalParams {
  double radius = 0.25;       // electron ball radius, in (0, 1/2]
  double kinetic_const = 1.0; // energy * length^2
  double penalty = 1.0;       // boundary-cell penalty, >= 0
};

// Crystal with unit nuclei on Z^3 where every interior nucleus carries its
// screening electron ball. Screened cells do not interact (zero exterior
// potential), so E is exactly additive and the energy density limit is
// cell_energy by construction. Nuclei whose ball does not fit get a finite
// penalty: `penalty` when a displaced ball (dipole) fits within distance 1,
// `penalty + 1/r` when not even that is possible.
class ScreenedCrystalModel final : public EnergyFunctional {
 public:
  explicit ScreenedCrystalModel(const ScreenedCrystalParams& p = {});

  double evaluate(const Domain& d) const override;
  std::optional<double> known_limit() const override { return e_cell_; }
  std::string name() const override { return "screened_crystal"; }

  const ScreenedCrystalParams& params() const { return params_; }
  double e_cell() const { return e_cell_; }
  // Constant for the stability bound E >= -kappa |Omega|.
  double stability_kappa() const;

 private:
  ScreenedCrystalParams params_;
  double e_cell_;
};

// E(Omega) = c |Omega|; the linear reference functional (spread-free).
class ScaledVolumeFunctional final : public EnergyFunctional {
 public:
  explicit ScaledVolumeFunctional(double c) : c_(c) {}
  double evaluate(const Domain& d) const override { return c_ * d.volume(); }
  std::optional<double> known_limit() const override { return c_; }
  std::string name() const override { return "scaled_volume"; }

 private:
  double c_;
};

// E(Omega) = -|Omega|^2; super-volume decay designed to violate stability.
class VolumeSquaredDeficitFunctional final : public EnergyFunctional {
 public:
  double evaluate(const Domain& d) const override {
    const double v = d.volume();
    return -v * v;
  }
  std::string name() const override { return "volume_squared_deficit"; }
};

}  // namespace tlim
