// Acceptance suite: executes every top-level criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tlim/electrostatics.hpp"
#include "tlim/limit_engine.hpp"
#include "tlim/runner.hpp"
#include "tlim/spectral.hpp"
#include "tlim/stats.hpp"

using namespace tlim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_seconds;  // 0 = no stated budget
  std::function<Outcome()> body;
};

Domain ref_simplex() {
  return Domain::simplex_image(reference_simplex(), identity_motion(), 1.0);
}

constexpr std::uint64_t kSeed = 20260809;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// --------------------------------------------------------------------------

Outcome baxter_suite() {
  std::vector<Vec3> nuclei;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c)
        nuclei.push_back({static_cast<double>(a), static_cast<double>(b),
                          static_cast<double>(c)});
  long violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Rng rng(derive_seed(kSeed, 0x1000 + static_cast<std::uint64_t>(trial)));
    std::vector<Vec3> electrons;
    while (electrons.size() < 20) {
      const Vec3 x{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
      if (nearest_nucleus_distance(x) < 1e-3) continue;
      electrons.push_back(x);
    }
    violations += !baxter_check(electrons, nuclei).holds;
  }
  return {violations == 0, "1000 configurations, " + std::to_string(violations) + " violations"};
}

Outcome gs_suite() {
  const Domain simplex = ref_simplex();
  const std::vector<double> ells{2, 4, 8};
  long violations = 0;
  std::vector<std::vector<double>> needed(ells.size());
  for (int i = 0; i < 100; ++i) {
    Rng rng(derive_seed(kSeed, 0x2000 + static_cast<std::uint64_t>(i)));
    ChargeConfiguration c;
    const int pairs = 1 + static_cast<int>(rng.index(10));  // N = 2..20
    while (static_cast<int>(c.positions.size()) < 2 * pairs) {
      const Vec3 p = rng.uniform_box({0, 0, 0}, {4, 4, 4});
      bool ok = true;
      for (const Vec3& q : c.positions)
        if (distance(p, q) < 1e-6) ok = false;
      if (!ok) continue;
      c.positions.push_back(p);
      c.charges.push_back(static_cast<int>(c.positions.size()) <= pairs ? 1.0 : -1.0);
    }
    for (std::size_t li = 0; li < ells.size(); ++li) {
      const GSCheckReport rep = graf_schenker_check(
          c, simplex, ells[li], 10000,
          derive_seed(kSeed, 0x3000 + (static_cast<std::uint64_t>(i) << 4) + li));
      violations += !rep.holds;
      needed[li].push_back(std::max(0.0, -rep.implied_constant));
    }
  }
  std::vector<double> means;
  for (auto& v : needed) means.push_back(sample_stats(v).mean);
  const bool trend_ok = means.back() <= std::max(1.5 * means.front(), means.front() + 0.5);
  return {violations == 0 && trend_ok,
          "100 configs x {2,4,8}, " + std::to_string(violations) +
              " violations; needed-constant means " + fmt(means[0]) + " / " + fmt(means[1]) +
              " / " + fmt(means[2])};
}

ConvergenceReport g_convergence;  // shared with the shape-independence criterion

Outcome crystal_limit() {
  const ScreenedCrystalModel model;
  g_convergence = run_simplex_convergence(model, ref_simplex(), {4, 8, 16, 32}, 50, kSeed);
  const double rel = std::abs(g_convergence.e_bar - model.e_cell()) / std::abs(model.e_cell());
  const bool rate_ok =
      g_convergence.rate_exponent > -1.3 && g_convergence.rate_exponent < -0.7;
  return {rel <= 0.01 && rate_ok,
          "e_bar " + fmt(g_convergence.e_bar) + " vs e_cell " + fmt(model.e_cell()) +
              " (rel " + fmt(rel) + "), rate exponent " + fmt(g_convergence.rate_exponent)};
}

Outcome shape_independence() {
  const ScreenedCrystalModel model;
  const GeneralDomainsReport rep = run_general_domains(
      model,
      {{SequenceShape::Cube, {4, 8, 16, 32}, {0.5, 0.5, 0.5}},
       {SequenceShape::Ball, {4, 8, 12, 16}, {0.5, 0.5, 0.5}}},
      std::nullopt, derive_seed(kSeed, 0x4000));

  struct Limit {
    std::string name;
    double e, se;
  };
  std::vector<Limit> limits;
  for (const auto& fam : rep.families)
    limits.push_back({fam.family, fam.e_extrapolated, fam.e_stderr});
  if (g_convergence.per_ell.empty()) {
    const ScreenedCrystalModel m2;
    g_convergence = run_simplex_convergence(m2, ref_simplex(), {4, 8, 16, 32}, 50, kSeed);
  }
  limits.push_back({"simplex", g_convergence.e_bar, g_convergence.e_bar_stderr});

  bool all = true;
  std::string detail;
  for (std::size_t i = 0; i < limits.size(); ++i) {
    detail += (i ? ", " : "") + limits[i].name + " " + fmt(limits[i].e);
    for (std::size_t j = i + 1; j < limits.size(); ++j)
      if (!limits_agree(limits[i].e, limits[i].se, limits[j].e, limits[j].se, 3.0, 0.01))
        all = false;
  }
  return {all, detail + " (3 sigma + 1% floor)"};
}

Outcome free_fermion_suite() {
  const ThermoParams p{1.0, 1.0};
  const double L = 12;
  const BoxSpectrum spec = dirichlet_spectrum(L, p.mu + 45.0 / p.beta);
  const double f_box = free_fermion_free_energy(spec, p) / (L * L * L);
  const double f_lim = free_gas_limit_density(p);
  const bool box_ok = std::abs(f_box - f_lim) <= 0.02 * std::abs(f_lim);

  const double f10 = free_gas_limit_density({1, 0});
  double scaling_dev = 0;
  for (double beta : {0.25, 2.0, 4.0})
    scaling_dev = std::max(scaling_dev, std::abs(free_gas_limit_density({beta, 0}) -
                                                 std::pow(beta, -2.5) * f10));
  const bool scaling_ok = scaling_dev <= 1e-8;

  double c_fit = 0;
  bool negative = true;
  for (double b : {0.25, 1.0, 4.0})
    for (double m : {-1.0, 0.0, 1.0, 4.0}) {
      const double f = free_gas_limit_density({b, m});
      negative = negative && f < 0;
      c_fit = std::max(c_fit, -f / (1 + std::pow(b, -2.5) + std::pow(std::max(0.0, m), 2.5)));
    }
  const bool bound_ok = negative && c_fit <= 2.0;

  return {box_ok && scaling_ok && bound_ok,
          "box density " + fmt(f_box) + " vs " + fmt(f_lim) + " (gap " +
              fmt(std::abs(f_box / f_lim - 1)) + "), scaling dev " + fmt(scaling_dev) +
              ", fitted C " + fmt(c_fit)};
}

Outcome lieb_thirring_suite() {
  const double k_cl = semiclassical_lt_constant();
  double worst = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 50; ++s) {
    Rng rng(derive_seed(kSeed, 0x5000 + static_cast<std::uint64_t>(s)));
    SlaterState state;
    state.L = rng.uniform(1.0, 10.0);
    const int n = 1 + static_cast<int>(rng.index(20));
    std::set<std::array<int, 3>> seen;
    while (static_cast<int>(seen.size()) < n)
      seen.insert({1 + static_cast<int>(rng.index(4)), 1 + static_cast<int>(rng.index(4)),
                   1 + static_cast<int>(rng.index(4))});
    state.orbitals.assign(seen.begin(), seen.end());
    worst = std::min(worst, lieb_thirring_ratio(state, 1e-6));
  }
  return {worst >= k_cl,
          "50 Slater states (N <= 20), min ratio " + fmt(worst) + " vs semiclassical " +
              fmt(k_cl)};
}

Outcome kato_suite() {
  const double expected = std::sqrt(2.0 / (3.0 * M_PI));
  const double base = kato_check(1.0).ratio;
  double dev = 0;
  for (double a : {1e-2, 0.1, 1.0, 10.0, 1e2})
    dev = std::max(dev, std::abs(kato_check(a).ratio - base));
  const bool ok = std::abs(base - expected) <= 1e-8 && dev <= 1e-12;
  return {ok, "ratio " + fmt(base) + " (target sqrt(2/(3pi)) = " + fmt(expected) +
                  "), width spread " + fmt(dev)};
}

Outcome ssa_suite() {
  long violations = 0;
  long idx = 0;
  for (const auto dims : {std::array<std::size_t, 3>{2, 2, 2}, std::array<std::size_t, 3>{2, 3, 2}}) {
    for (int s = 0; s < 1000; ++s, ++idx) {
      Rng rng(derive_seed(kSeed, 0x6000 + static_cast<std::uint64_t>(idx)));
      violations += !ssa_check(random_mixed_tripartite(dims, rng)).holds;
    }
  }
  double worst_eq = 0;
  for (int s = 0; s < 32; ++s) {
    Rng rng(derive_seed(kSeed, 0x7000 + static_cast<std::uint64_t>(s)));
    const std::array<std::size_t, 3> dims = s % 2 ? std::array<std::size_t, 3>{2, 3, 2}
                                                  : std::array<std::size_t, 3>{2, 2, 2};
    const SsaResult r = ssa_check(product_tripartite(
        dims, random_density_matrix(dims[0], rng), random_density_matrix(dims[1], rng),
        random_density_matrix(dims[2], rng)));
    worst_eq = std::max(worst_eq, std::abs(r.lhs - r.rhs));
  }
  return {violations == 0 && worst_eq <= 1e-10,
          "2000 random states, " + std::to_string(violations) +
              " violations; product-state equality deviation " + fmt(worst_eq)};
}

Outcome boundary_counting() {
  Rng rng(derive_seed(kSeed, 0x8000));
  const RigidMotion gbar = sample_haar(rng);
  double worst_shell = 0;
  std::vector<double> ls, gaps;
  for (double L : {8.0, 16.0, 32.0, 64.0})
    for (double ell : {1.0, 2.0, 4.0}) {
      const BoundaryCount bc = interior_boundary_sets(L, ell, gbar);
      worst_shell = std::max(worst_shell,
                             static_cast<double>(bc.n_boundary) / (L * L * ell));
      if (ell == 1.0 && L >= 16.0) {
        ls.push_back(L);
        gaps.push_back(1.0 - bc.coverage());
      }
    }
  const double slope = log_log_slope(ls, gaps, 1e-12);
  const bool shell_ok = worst_shell <= 20.0;
  const bool rate_ok = slope > -1.3 && slope < -0.7;
  return {shell_ok && rate_ok, "max shell density " + fmt(worst_shell) +
                                   " (cap 20); coverage-gap exponent " + fmt(slope)};
}

Outcome assumption_suite() {
  // crystal passes on the full corpus
  const ParseResult good = parse_config(
      "[assumptions]\nseed = 77\ncube_sides = 4 8 16 32\nball_radii = 4 8 16\n"
      "simplex_scales = 4 8 16 32\nsamples = 500\nell_grid = 2 4 8\n");
  const ParseResult bad = parse_config(
      "[assumptions]\nadversarial = true\nseed = 77\ncube_sides = 4 8 16\nball_radii = 4\n"
      "simplex_scales = 4\nsamples = 50\nell_grid = 2\n");
  if (!good.config || !bad.config) return {false, "internal config error"};

  const fs::path tmp = fs::temp_directory_path() / "tlim_acceptance";
  fs::create_directories(tmp);
  RunOptions opts;
  opts.out_dir = tmp.string();

  const RunResult crystal = run(*good.config, opts);
  const bool crystal_ok = crystal.exit_code == 0;

  const RunResult adv = run(*bad.config, opts);
  bool a2_named = false;
  for (const auto& f : adv.failures) a2_named |= f == "A2";
  const bool adversarial_ok = adv.exit_code == 1 && a2_named;

  // byte-identical artifacts for any thread count
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  RunOptions t1 = opts, t4 = opts;
  t1.threads_override = 1;
  t4.threads_override = 4;
  const RunResult r1 = run(*good.config, t1);
  const std::string bytes1 = slurp(r1.artifacts[0]);
  const RunResult r4 = run(*good.config, t4);
  const std::string bytes4 = slurp(r4.artifacts[0]);
  const bool deterministic = !bytes1.empty() && bytes1 == bytes4;

  fs::remove_all(tmp);
  return {crystal_ok && adversarial_ok && deterministic,
          std::string("crystal A1-A5 ") + (crystal_ok ? "pass" : "FAIL") +
              "; adversarial exits 1 naming A2 " + (adversarial_ok ? "yes" : "NO") +
              "; thread-count-invariant bytes " + (deterministic ? "yes" : "NO")};
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"01-baxter-suite", 10, baxter_suite},
      {"02-graf-schenker-suite", 300, gs_suite},
      {"03-screened-crystal-limit", 120, crystal_limit},
      {"04-shape-independence", 0, shape_independence},
      {"05-free-fermion-gas", 60, free_fermion_suite},
      {"06-lieb-thirring", 60, lieb_thirring_suite},
      {"07-kato", 0, kato_suite},
      {"08-strong-subadditivity", 0, ssa_suite},
      {"09-boundary-counting", 0, boundary_counting},
      {"10-assumption-suite", 0, assumption_suite},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = out.pass;
    std::string timing = fmt(secs) + " s";
    if (c.budget_seconds > 0) {
      timing += " < " + fmt(c.budget_seconds) + " s";
      if (secs >= c.budget_seconds) pass = false;
    }
    failures += !pass;
    std::printf("%s  %-28s %s  [%s]\n", pass ? "PASS" : "FAIL", c.name.c_str(),
                out.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
