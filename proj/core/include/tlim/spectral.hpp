#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "tlim/rng.hpp"

namespace tlim {

// Eigenvalues pi^2 |n|^2 / (2 L^2), n in (Z_+)^3, of -Laplacian/2 with
// Dirichlet conditions on the cube of side L, sorted ascending.
struct BoxSpectrum {
  double L = 0;
  std::vector<double> eigenvalues;
};

// Enumerates every eigenvalue <= cutoff exactly.
BoxSpectrum dirichlet_spectrum(double L, double cutoff);

struct ThermoParams {
  double beta = 1;  // inverse temperature, > 0
  double mu = 0;    // chemical potential
};

// Grand-canonical free energy F = -(1/beta) sum_n log(1 + e^{-beta(e_n - mu)}).
// Errors out when the largest retained eigenvalue still contributes more
// than 1e-12 relatively (cutoff insufficiency), suggesting a cutoff.
double free_fermion_free_energy(const BoxSpectrum& s, const ThermoParams& p);

// Infinite-volume free-energy density of the free Fermi gas,
//   -(1/beta) (2 pi)^-3 \int log(1 + e^{-beta(p^2/2 - mu)}) d^3 p,
// by adaptive radial quadrature with absolute tolerance 1e-8.
double free_gas_limit_density(const ThermoParams& p);

// Determinantal state of distinct box modes (Pauli: triples must differ).
struct SlaterState {
  double L = 1;
  std::vector<std::array<int, 3>> orbitals;  // components >= 1
};

struct LtResult {
  double ratio = 0;             // T / int rho^{5/3}
  double kinetic = 0;           // T = sum pi^2 |n|^2 / L^2  (the -Delta form)
  double rho53_integral = 0;    // tensor-grid quadrature
  double particle_integral = 0; // int rho, should equal N
};

// Kinetic-to-density ratio of the Lieb-Thirring inequality on a Slater
// state; quadrature refined until the stated tolerance is met.
LtResult lieb_thirring_detail(const SlaterState& s, double tol = 1e-6);
double lieb_thirring_ratio(const SlaterState& s, double tol = 1e-6);

// (3/5)(6 pi^2)^{2/3}, the semiclassical kinetic constant used as the
// empirical threshold for box Slater states.
double semiclassical_lt_constant();

struct KatoResult {
  double ratio = 0;  // <1/|x|> / (2 sqrt<-Delta>)
  bool holds = false;
  double mean_inv_r = 0;   // 2 sqrt(2a/pi)
  double mean_kinetic = 0; // 3a
};

// Closed-form moments of the normalized Gaussian with width parameter a;
// the optimal-epsilon form of the uncertainty bound eps<-Delta> + 1/eps >= <1/|x|>.
KatoResult kato_check(double a);

// Density operator on C^{d1} x C^{d2} x C^{d3}, row-major (d1 d2 d3)^2 array.
struct TripartiteState {
  std::array<std::size_t, 3> dims{};
  std::vector<std::complex<double>> rho;

  std::size_t dim() const { return dims[0] * dims[1] * dims[2]; }
};

struct SsaResult {
  double lhs = 0;  // S_123 + S_2
  double rhs = 0;  // S_12 + S_23
  bool holds = false;
  double s123 = 0, s2 = 0, s12 = 0, s23 = 0;
};

// Strong subadditivity of the von Neumann entropy via partial traces and
// dense eigendecomposition; natural logarithm, eigenvalues below 1e-14
// dropped from x log x. Validates Hermiticity / positivity / unit trace.
SsaResult ssa_check(const TripartiteState& state);

// Hilbert-Schmidt random mixed state: partial trace of a Haar-random pure
// state on the doubled space.
TripartiteState random_mixed_tripartite(const std::array<std::size_t, 3>& dims, Rng& rng);

// rho1 (x) rho2 (x) rho3 from single-party density matrices (row-major d^2).
TripartiteState product_tripartite(const std::array<std::size_t, 3>& dims,
                                   const std::vector<std::complex<double>>& rho1,
                                   const std::vector<std::complex<double>>& rho2,
                                   const std::vector<std::complex<double>>& rho3);

std::vector<std::complex<double>> random_density_matrix(std::size_t d, Rng& rng);

}  // namespace tlim
