#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tlim/models.hpp"
#include "tlim/tiling.hpp"

namespace tlim {

struct AssumptionConfig {
  double kappa = 0;      // stability constant, energy per volume
  double alpha_c = 1.0;  // rate model alpha(l) = alpha_c / l
  double delta = 2.0;    // required boundary separation for nested pairs
  double tolerance = 1e-9;
};

// e_l(g) = E(g (l Delta)) / |l Delta|
double evaluate_e_ell(const EnergyFunctional& E, const Domain& simplex, double ell,
                      const RigidMotion& g);

struct EllStats {
  double ell = 0;
  double mean = 0, min = 0, max = 0, spread = 0, stderr_ = 0;
  std::uint64_t stream_seed = 0;
};

struct ConvergenceReport {
  std::vector<EllStats> per_ell;
  // Intercept of the variance-weighted fit mean_l = e_bar + slope / l
  // (first-order boundary correction), with its standard error.
  double e_bar = 0;
  double e_bar_stderr = 0;
  double slope = 0;
  // Exponent p of |mean_l - e_bar| ~ l^p over the grid (NaN when every gap
  // drowns in Monte-Carlo noise, e.g. for exactly linear functionals).
  double rate_exponent = 0;
  std::uint64_t seed = 0;
  std::size_t g_samples = 0;
};

ConvergenceReport run_simplex_convergence(const EnergyFunctional& E, const Domain& simplex,
                                          const std::vector<double>& ell_grid,
                                          std::size_t g_samples, std::uint64_t seed,
                                          unsigned threads = 1);

struct SubaverageResult {
  double lhs = 0;           // E(Omega)
  double rhs = 0;           // (1 - alpha) * tile_average - |Omega|_r * alpha
  double margin = 0;        // lhs - rhs
  double mc_stderr = 0;
  double tile_average = 0;  // |l tri|^{-1} \int E(Omega cap g l tri) dg
  double alpha_ell = 0;
  double reg_volume = 0;
  double c_needed = 0;      // minimal alpha_c certifying the bound at this l
  bool holds = false;       // lhs >= rhs - 3 stderr
};

SubaverageResult check_subaverage(const EnergyFunctional& E, const Domain& omega,
                                  const Domain& simplex, double ell, std::size_t samples,
                                  const AssumptionConfig& cfg, std::uint64_t seed,
                                  unsigned threads = 1);

struct ChainResult {
  double L = 0, ell = 0;
  double e_L_min = 0;
  double e_ell_avg = 0;
  double e_ell_stderr = 0;
  double coverage = 0;             // n_interior / |L Delta|
  double boundary_correction = 0;  // kappa * n_boundary / |L Delta|
  double alpha_ell = 0;
  double c_needed = 0;  // (e_ell_avg - e_L_min)_+ / (alpha + ell / L)
  BoundaryCount counts;

  bool holds_with(double C) const {
    return e_L_min >= e_ell_avg - C * (alpha_ell + ell / L) - 3 * e_ell_stderr;
  }
};

// Numerical form of the proof chain: min over sampled gbar of e_L versus the
// unit-cell Haar average of e_l, with the lattice boundary correction.
// The simplex domain must be the engine's reference simplex at unit scale.
ChainResult subaverage_chain(const EnergyFunctional& E, const Domain& simplex, double L,
                             double ell, std::size_t samples, const AssumptionConfig& cfg,
                             std::uint64_t seed, unsigned threads = 1);

struct LabeledDomain {
  std::string label;
  Domain domain;
};

struct AssumptionCheck {
  std::string name;  // A1 .. A5
  bool pass = false;
  double worst_margin = 0;
  std::string witness;       // label of the worst case (failures name it)
  double fitted_constant = 0;
};

struct AssumptionReport {
  std::vector<AssumptionCheck> checks;
  bool all_pass = false;
};

AssumptionReport check_assumptions(const EnergyFunctional& E,
                                   const std::vector<LabeledDomain>& corpus,
                                   const AssumptionConfig& cfg, std::uint64_t seed,
                                   std::size_t a5_samples = 500,
                                   const std::vector<double>& a5_ell_grid = {2, 4, 8},
                                   unsigned threads = 1);

enum class SequenceShape { Cube, Ball, Slab, Simplex };

struct DomainSequenceSpec {
  SequenceShape shape = SequenceShape::Cube;
  std::vector<double> sizes;  // cube side, ball radius, slab side, simplex scale
  Vec3 center{0.5, 0.5, 0.5}; // lattice-generic anchoring
};

std::string sequence_shape_name(SequenceShape s);

struct SequenceRow {
  double size = 0;
  double volume = 0;
  double diam_ratio = 0;  // |Omega|^{-1/3} diam(Omega)
  double energy_density = 0;
  double gap = 0;  // energy_density - e_ref (0 reference when e_ref absent)
  double fisher_a = 0;
  bool cone_pass = false;
};

struct SequenceResult {
  std::string family;
  std::vector<SequenceRow> rows;
  double e_extrapolated = 0;
  double e_stderr = 0;
  double rate_exponent = 0;
  bool diameter_bounded = false;  // no growth trend in |Omega|^{-1/3} diam
  bool regularity_ok = false;     // cone passes, Fisher constant trend bounded
};

struct GeneralDomainsReport {
  std::vector<SequenceResult> families;
  std::optional<double> e_ref;
};

GeneralDomainsReport run_general_domains(const EnergyFunctional& E,
                                         const std::vector<DomainSequenceSpec>& specs,
                                         std::optional<double> e_ref, std::uint64_t seed,
                                         unsigned threads = 1);

// Pairwise agreement of extrapolated limits within k-sigma combined error
// bars plus a relative floor.
bool limits_agree(double a, double sa, double b, double sb, double k_sigma,
                  double rel_floor);

}  // namespace tlim
