#include "tlim/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "tlim/errors.hpp"

namespace tlim {

namespace {

double log1p_exp(double a) {  // log(1 + e^a), overflow safe
  return a > 0 ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a));
}

}  // namespace

BoxSpectrum dirichlet_spectrum(double L, double cutoff) {
  if (!(L > 0)) throw InvalidInput("dirichlet_spectrum: box side must be positive");
  const double k = M_PI * M_PI / (2 * L * L);  // eigenvalue = k |n|^2
  if (cutoff < 3 * k)
    throw InvalidInput("dirichlet_spectrum: cutoff " + std::to_string(cutoff) +
                       " lies below the ground state " + std::to_string(3 * k) +
                       "; spectrum would be empty");
  const double m2 = cutoff / k;  // |n|^2 <= m2
  const int nmax = static_cast<int>(std::floor(std::sqrt(m2)));
  BoxSpectrum s;
  s.L = L;
  for (int n1 = 1; n1 <= nmax; ++n1)
    for (int n2 = 1; n1 * n1 + n2 * n2 <= m2 && n2 <= nmax; ++n2)
      for (int n3 = 1; n1 * n1 + n2 * n2 + n3 * n3 <= m2 && n3 <= nmax; ++n3)
        s.eigenvalues.push_back(k * (n1 * n1 + n2 * n2 + n3 * n3));
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

double free_fermion_free_energy(const BoxSpectrum& s, const ThermoParams& p) {
  if (!(p.beta > 0)) throw InvalidInput("free_fermion_free_energy: beta must be positive");
  if (s.eigenvalues.empty()) throw InvalidInput("free_fermion_free_energy: empty spectrum");

  double sum = 0;
  for (auto it = s.eigenvalues.rbegin(); it != s.eigenvalues.rend(); ++it)
    sum += log1p_exp(-p.beta * (*it - p.mu));  // ascending contributions: sum small terms first

  const double top = log1p_exp(-p.beta * (s.eigenvalues.back() - p.mu));
  if (top > 1e-12 * sum) {
    const double target = std::max(sum, 1e-300);
    const double suggested = p.mu + (27.7 - std::log(target)) / p.beta;
    throw AccuracyError(
        "free_fermion_free_energy: largest retained eigenvalue still contributes " +
        std::to_string(top / std::max(sum, 1e-300)) +
        " relatively; raise the cutoff to about " + std::to_string(1.2 * suggested));
  }
  return -sum / p.beta;
}

namespace {

double fermi_integrand(double p, double beta, double mu) {
  return log1p_exp(-beta * (p * p / 2 - mu)) * p * p;
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth, double beta, double mu) {
  const double m = (a + b) / 2;
  const double lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = fermi_integrand(lm, beta, mu), frm = fermi_integrand(rm, beta, mu);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth > 48) throw AccuracyError("free_gas_limit_density: quadrature did not converge");
  if (std::abs(left + right - whole) <= 15 * tol)
    return left + right + (left + right - whole) / 15;
  return adaptive_simpson(a, m, fa, flm, fm, left, tol / 2, depth + 1, beta, mu) +
         adaptive_simpson(m, b, fm, frm, fb, right, tol / 2, depth + 1, beta, mu);
}

}  // namespace

double free_gas_limit_density(const ThermoParams& p) {
  if (!(p.beta > 0)) throw InvalidInput("free_gas_limit_density: beta must be positive");
  const double pmax = std::sqrt(2 * std::max(p.mu, 0.0) + 140.0 / p.beta);
  const double prefac = 1.0 / (2 * M_PI * M_PI * p.beta);
  // absolute tolerance 1e-8 on the density; keep half for the tail cutoff
  const double tol = 0.5e-8 / prefac;
  const double fa = fermi_integrand(0, p.beta, p.mu);
  const double fb = fermi_integrand(pmax, p.beta, p.mu);
  const double fm = fermi_integrand(pmax / 2, p.beta, p.mu);
  const double whole = pmax / 6 * (fa + 4 * fm + fb);
  const double integral =
      adaptive_simpson(0, pmax, fa, fm, fb, whole, tol, 0, p.beta, p.mu);
  return -prefac * integral;
}

// ---------------------------------------------------------------------------
// Lieb-Thirring on box Slater states

namespace {

// Gauss-Legendre nodes/weights on [0,1] by Newton iteration.
void gauss_legendre_01(int m, std::vector<double>& x, std::vector<double>& w) {
  x.resize(static_cast<std::size_t>(m));
  w.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = t;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = m * (t * p1 - p0) / (t * t - 1);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1, p1 = t;
    for (int k = 2; k <= m; ++k) {
      const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = m * (t * p1 - p0) / (t * t - 1);
    x[static_cast<std::size_t>(i)] = (1 - t) / 2;  // map [-1,1] -> [0,1], descending t
    w[static_cast<std::size_t>(i)] = 1.0 / ((1 - t * t) * dp * dp);
  }
}

struct LtQuad {
  double rho53 = 0;
  double particle = 0;
};

LtQuad lt_quadrature(const SlaterState& s, int m) {
  std::vector<double> x, w;
  gauss_legendre_01(m, x, w);
  const std::size_t nodes = x.size();
  const std::size_t norb = s.orbitals.size();

  // phi[axis][orbital * nodes + node] = (2/L) sin^2(pi n x / L); the grid is
  // on [0,1] in scaled coordinates, so the Jacobian is L per axis.
  std::vector<std::vector<double>> phi(3, std::vector<double>(norb * nodes));
  for (int axis = 0; axis < 3; ++axis)
    for (std::size_t o = 0; o < norb; ++o) {
      const int n = s.orbitals[o][static_cast<std::size_t>(axis)];
      for (std::size_t i = 0; i < nodes; ++i) {
        const double sn = std::sin(M_PI * n * x[i]);
        phi[static_cast<std::size_t>(axis)][o * nodes + i] = (2.0 / s.L) * sn * sn;
      }
    }

  LtQuad q;
  std::vector<double> yz(norb);
  for (std::size_t j = 0; j < nodes; ++j) {
    for (std::size_t k = 0; k < nodes; ++k) {
      const double wjk = w[j] * w[k];
      for (std::size_t o = 0; o < norb; ++o)
        yz[o] = phi[1][o * nodes + j] * phi[2][o * nodes + k];
      for (std::size_t i = 0; i < nodes; ++i) {
        double rho = 0;
        for (std::size_t o = 0; o < norb; ++o) rho += phi[0][o * nodes + i] * yz[o];
        const double weight = w[i] * wjk;
        q.rho53 += weight * std::pow(rho, 5.0 / 3.0);
        q.particle += weight * rho;
      }
    }
  }
  const double jac = s.L * s.L * s.L;
  q.rho53 *= jac;
  q.particle *= jac;
  return q;
}

}  // namespace

LtResult lieb_thirring_detail(const SlaterState& s, double tol) {
  if (!(s.L > 0)) throw InvalidInput("lieb_thirring: box side must be positive");
  if (s.orbitals.empty()) throw InvalidInput("lieb_thirring: need at least one orbital");
  std::set<std::array<int, 3>> seen;
  for (const auto& n : s.orbitals) {
    if (n[0] < 1 || n[1] < 1 || n[2] < 1)
      throw InvalidInput("lieb_thirring: mode indices must be >= 1");
    if (!seen.insert(n).second)
      throw InvalidInput("lieb_thirring: duplicate orbital (" + std::to_string(n[0]) + "," +
                         std::to_string(n[1]) + "," + std::to_string(n[2]) +
                         ") violates the Pauli principle");
  }

  LtResult r;
  for (const auto& n : s.orbitals)
    r.kinetic += M_PI * M_PI *
                 (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]) / (s.L * s.L);

  int mmax = 1;
  for (const auto& n : s.orbitals) mmax = std::max({mmax, n[0], n[1], n[2]});
  int m = std::max(24, 8 * mmax);
  LtQuad prev = lt_quadrature(s, m);
  for (int iter = 0; iter < 6; ++iter) {
    const int m2 = m * 3 / 2;
    const LtQuad next = lt_quadrature(s, m2);
    if (std::abs(next.rho53 - prev.rho53) <= tol * std::max(1.0, std::abs(next.rho53))) {
      prev = next;
      break;
    }
    prev = next;
    m = m2;
    if (iter == 5)
      throw AccuracyError("lieb_thirring: tensor quadrature did not reach tolerance");
  }
  r.rho53_integral = prev.rho53;
  r.particle_integral = prev.particle;
  r.ratio = r.kinetic / r.rho53_integral;
  return r;
}

double lieb_thirring_ratio(const SlaterState& s, double tol) {
  return lieb_thirring_detail(s, tol).ratio;
}

double semiclassical_lt_constant() {
  return 0.6 * std::pow(6 * M_PI * M_PI, 2.0 / 3.0);
}

KatoResult kato_check(double a) {
  if (!(a > 0)) throw InvalidInput("kato_check: width parameter must be positive");
  KatoResult r;
  r.mean_inv_r = 2 * std::sqrt(2 * a / M_PI);
  r.mean_kinetic = 3 * a;
  r.ratio = r.mean_inv_r / (2 * std::sqrt(r.mean_kinetic));
  r.holds = r.ratio <= 1.0;
  return r;
}

// ---------------------------------------------------------------------------
// Strong subadditivity

namespace {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

double entropy_nat(const CMat& rho) {
  Eigen::SelfAdjointEigenSolver<CMat> es(rho, Eigen::EigenvaluesOnly);
  double s = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()[i];
    if (lam > 1e-14) s -= lam * std::log(lam);
  }
  return s;
}

}  // namespace

SsaResult ssa_check(const TripartiteState& state) {
  const std::size_t d1 = state.dims[0], d2 = state.dims[1], d3 = state.dims[2];
  const std::size_t d = d1 * d2 * d3;
  if (d == 0) throw InvalidInput("ssa_check: zero-dimensional factor");
  if (state.rho.size() != d * d)
    throw InvalidInput("ssa_check: density array has wrong size");

  CMat rho(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = state.rho[i * d + j];

  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12)
    throw InvalidInput("ssa_check: state is not Hermitian (deviation " + std::to_string(herm) +
                       ")");
  rho = (rho + rho.adjoint()) / 2.0;
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-10)
    throw InvalidInput("ssa_check: trace is " + std::to_string(tr) + ", expected 1");

  Eigen::SelfAdjointEigenSolver<CMat> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw InvalidInput("ssa_check: state has eigenvalue " +
                       std::to_string(es.eigenvalues().minCoeff()) +
                       " below the positivity tolerance");

  auto idx = [&](std::size_t i1, std::size_t i2, std::size_t i3) {
    return (i1 * d2 + i2) * d3 + i3;
  };

  CMat rho12 = CMat::Zero(static_cast<Eigen::Index>(d1 * d2), static_cast<Eigen::Index>(d1 * d2));
  CMat rho23 = CMat::Zero(static_cast<Eigen::Index>(d2 * d3), static_cast<Eigen::Index>(d2 * d3));
  CMat rho2 = CMat::Zero(static_cast<Eigen::Index>(d2), static_cast<Eigen::Index>(d2));

  for (std::size_t i1 = 0; i1 < d1; ++i1)
    for (std::size_t i2 = 0; i2 < d2; ++i2)
      for (std::size_t i3 = 0; i3 < d3; ++i3)
        for (std::size_t j1 = 0; j1 < d1; ++j1)
          for (std::size_t j2 = 0; j2 < d2; ++j2)
            for (std::size_t j3 = 0; j3 < d3; ++j3) {
              const Cplx v = rho(static_cast<Eigen::Index>(idx(i1, i2, i3)),
                                 static_cast<Eigen::Index>(idx(j1, j2, j3)));
              if (i3 == j3)
                rho12(static_cast<Eigen::Index>(i1 * d2 + i2),
                      static_cast<Eigen::Index>(j1 * d2 + j2)) += v;
              if (i1 == j1)
                rho23(static_cast<Eigen::Index>(i2 * d3 + i3),
                      static_cast<Eigen::Index>(j2 * d3 + j3)) += v;
              if (i1 == j1 && i3 == j3)
                rho2(static_cast<Eigen::Index>(i2), static_cast<Eigen::Index>(j2)) += v;
            }

  SsaResult r;
  r.s123 = entropy_nat(rho);
  r.s12 = entropy_nat(rho12);
  r.s23 = entropy_nat(rho23);
  r.s2 = entropy_nat(rho2);
  r.lhs = r.s123 + r.s2;
  r.rhs = r.s12 + r.s23;
  r.holds = r.lhs <= r.rhs + 1e-9;
  return r;
}

TripartiteState random_mixed_tripartite(const std::array<std::size_t, 3>& dims, Rng& rng) {
  const std::size_t d = dims[0] * dims[1] * dims[2];
  // Haar pure state on system x environment (same dimension), traced out.
  std::vector<Cplx> psi(d * d);
  double nrm2 = 0;
  for (auto& a : psi) {
    a = Cplx(rng.normal(), rng.normal());
    nrm2 += std::norm(a);
  }
  const double inv = 1.0 / nrm2;
  TripartiteState st;
  st.dims = dims;
  st.rho.assign(d * d, Cplx(0, 0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Cplx acc(0, 0);
      for (std::size_t e = 0; e < d; ++e) acc += psi[i * d + e] * std::conj(psi[j * d + e]);
      st.rho[i * d + j] = acc * inv;
    }
  return st;
}

std::vector<Cplx> random_density_matrix(std::size_t d, Rng& rng) {
  std::vector<Cplx> psi(d * d);
  double nrm2 = 0;
  for (auto& a : psi) {
    a = Cplx(rng.normal(), rng.normal());
    nrm2 += std::norm(a);
  }
  std::vector<Cplx> rho(d * d, Cplx(0, 0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Cplx acc(0, 0);
      for (std::size_t e = 0; e < d; ++e) acc += psi[i * d + e] * std::conj(psi[j * d + e]);
      rho[i * d + j] = acc / nrm2;
    }
  return rho;
}

TripartiteState product_tripartite(const std::array<std::size_t, 3>& dims,
                                   const std::vector<Cplx>& rho1, const std::vector<Cplx>& rho2,
                                   const std::vector<Cplx>& rho3) {
  const std::size_t d1 = dims[0], d2 = dims[1], d3 = dims[2];
  if (rho1.size() != d1 * d1 || rho2.size() != d2 * d2 || rho3.size() != d3 * d3)
    throw InvalidInput("product_tripartite: factor dimensions do not match");
  TripartiteState st;
  st.dims = dims;
  const std::size_t d = d1 * d2 * d3;
  st.rho.assign(d * d, Cplx(0, 0));
  for (std::size_t i1 = 0; i1 < d1; ++i1)
    for (std::size_t i2 = 0; i2 < d2; ++i2)
      for (std::size_t i3 = 0; i3 < d3; ++i3)
        for (std::size_t j1 = 0; j1 < d1; ++j1)
          for (std::size_t j2 = 0; j2 < d2; ++j2)
            for (std::size_t j3 = 0; j3 < d3; ++j3) {
              const std::size_t i = (i1 * d2 + i2) * d3 + i3;
              const std::size_t j = (j1 * d2 + j2) * d3 + j3;
              st.rho[i * d + j] =
                  rho1[i1 * d1 + j1] * rho2[i2 * d2 + j2] * rho3[i3 * d3 + j3];
            }
  return st;
}

}  // namespace tlim
