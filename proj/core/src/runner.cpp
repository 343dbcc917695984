#include "tlim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "tlim/csv.hpp"
#include "tlim/electrostatics.hpp"
#include "tlim/errors.hpp"
#include "tlim/limit_engine.hpp"
#include "tlim/spectral.hpp"
#include "tlim/stats.hpp"
#include "tlim/tiling.hpp"

namespace tlim {

namespace {

using C = CsvWriter;

struct RunContext {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string prefix;  // output path prefix
  RunResult* result = nullptr;

  void write(const CsvWriter& csv, const std::string& suffix) const {
    const std::string path = prefix + suffix;
    csv.write(path);
    result->artifacts.push_back(path);
  }
  void fail(const std::string& name) const { result->failures.push_back(name); }
};

Domain reference_simplex_domain() {
  return Domain::simplex_image(reference_simplex(), identity_motion(), 1.0);
}

// Random neutral configuration of +-1 charges in [0, box]^3 with the
// minimum-separation guard.
ChargeConfiguration random_neutral_config(int max_charges, double box, Rng& rng) {
  const int pairs = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(max_charges / 2)));
  const int n = 2 * pairs;
  ChargeConfiguration c;
  constexpr double kGuard = 1e-6;
  while (static_cast<int>(c.positions.size()) < n) {
    const Vec3 p = rng.uniform_box({0, 0, 0}, {box, box, box});
    bool ok = true;
    for (const Vec3& q : c.positions)
      if (distance(p, q) < kGuard) {
        ok = false;
        break;
      }
    if (!ok) continue;
    c.positions.push_back(p);
    c.charges.push_back(static_cast<int>(c.positions.size()) <= pairs ? 1.0 : -1.0);
  }
  return c;
}

// ---------------------------------------------------------------------------

void run_baxter(const BaxterParams& p, const RunContext& ctx) {
  std::vector<Vec3> nuclei;
  const long hw = static_cast<long>(std::floor(p.box_halfwidth));
  for (long x = -hw; x <= hw; ++x)
    for (long y = -hw; y <= hw; ++y)
      for (long z = -hw; z <= hw; ++z)
        nuclei.push_back({static_cast<double>(x), static_cast<double>(y),
                          static_cast<double>(z)});

  CsvWriter csv({"trial", "n_electrons", "lhs", "rhs", "margin", "holds"});
  long violations = 0;
  for (long t = 0; t < p.trials; ++t) {
    Rng rng(derive_seed(ctx.seed, static_cast<std::uint64_t>(t)));
    std::vector<Vec3> electrons;
    while (static_cast<int>(electrons.size()) < p.electrons) {
      const Vec3 x = rng.uniform_box({-p.box_halfwidth, -p.box_halfwidth, -p.box_halfwidth},
                                     {p.box_halfwidth, p.box_halfwidth, p.box_halfwidth});
      if (nearest_nucleus_distance(x) < p.min_separation) continue;
      bool ok = true;
      for (const Vec3& q : electrons)
        if (distance(x, q) < 1e-6) {
          ok = false;
          break;
        }
      if (ok) electrons.push_back(x);
    }
    const BaxterResult r = baxter_check(electrons, nuclei);
    violations += !r.holds;
    csv.row({C::cell(t), C::cell(static_cast<std::int64_t>(electrons.size())), C::cell(r.lhs),
             C::cell(r.rhs), C::cell(r.lhs - r.rhs), C::cell(r.holds)});
  }
  ctx.write(csv, ".csv");
  std::ostringstream os;
  os << "baxter: " << p.trials << " trials, " << violations << " violations";
  ctx.result->summary += os.str() + "\n";
  if (violations > 0) ctx.fail("baxter-violations");
}

void run_gs(const GsParams& p, const RunContext& ctx) {
  const Domain simplex = reference_simplex_domain();
  CsvWriter csv({"config", "ell", "n_charges", "lhs", "rhs_mean", "rhs_stderr",
                 "implied_constant", "c_needed", "holds"});
  long violations = 0;
  std::vector<std::vector<double>> c_needed_per_ell(p.ell_grid.size());
  for (long i = 0; i < p.configs; ++i) {
    Rng rng(derive_seed(ctx.seed, 0xC0000000ULL + static_cast<std::uint64_t>(i)));
    const ChargeConfiguration cfg = random_neutral_config(p.max_charges, p.box_side, rng);
    for (std::size_t li = 0; li < p.ell_grid.size(); ++li) {
      const double ell = p.ell_grid[li];
      GSOptions opts;
      opts.c_ref = p.c_ref;
      opts.threads = ctx.threads;
      const GSCheckReport rep = graf_schenker_check(
          cfg, simplex, ell, static_cast<std::size_t>(p.samples),
          derive_seed(ctx.seed, (static_cast<std::uint64_t>(i) << 8) + li), opts);
      const double c_needed = std::max(0.0, -rep.implied_constant);
      c_needed_per_ell[li].push_back(c_needed);
      violations += !rep.holds;
      csv.row({C::cell(i), C::cell(ell), C::cell(static_cast<std::int64_t>(cfg.size())),
               C::cell(rep.lhs), C::cell(rep.rhs_mean), C::cell(rep.rhs_stderr),
               C::cell(rep.implied_constant), C::cell(c_needed), C::cell(rep.holds)});
    }
  }
  ctx.write(csv, ".csv");

  CsvWriter sum({"ell", "mean_c_needed", "stderr_c_needed"});
  std::vector<double> means;
  for (std::size_t li = 0; li < p.ell_grid.size(); ++li) {
    const SampleStats st = sample_stats(c_needed_per_ell[li]);
    means.push_back(st.mean);
    sum.row({C::cell(p.ell_grid[li]), C::cell(st.mean), C::cell(st.stderr_)});
  }
  ctx.write(sum, "_summary.csv");

  // No growth trend of the implied constant in ell.
  const bool trend_ok = means.back() <= std::max(1.5 * means.front(), means.front() + 0.5);
  std::ostringstream os;
  os << "graf-schenker: " << p.configs << " configs x " << p.ell_grid.size() << " scales, "
     << violations << " violations; mean needed constant first/last " << means.front() << "/"
     << means.back();
  ctx.result->summary += os.str() + "\n";
  if (violations > 0) ctx.fail("gs-violations");
  if (!trend_ok) ctx.fail("gs-constant-growth");
}

void run_regularity(const RegularityParams& p, const RunContext& ctx) {
  CsvWriter layers({"domain", "t", "layer_volume", "stderr", "ratio"});
  CsvWriter sum({"domain", "a_estimate", "eps", "cone_pass", "n_witnesses", "witness_x",
                 "witness_y", "witness_z"});
  int idx = 0;
  for (const auto& spec : p.domains) {
    const Domain d = spec.build();
    const std::string label = d.describe();
    const RegularityReport fisher =
        fisher_regularity(d, p.t_grid, static_cast<std::size_t>(p.samples),
                          derive_seed(ctx.seed, static_cast<std::uint64_t>(idx)));
    for (const auto& l : fisher.layers)
      layers.row({C::cell(label), C::cell(l.t), C::cell(l.layer_volume), C::cell(l.stderr_),
                  C::cell(l.ratio)});
    const RegularityReport cone = cone_property_check(
        d, p.eps, static_cast<std::size_t>(p.cone_samples),
        static_cast<std::size_t>(p.directions),
        derive_seed(ctx.seed, 0x1000 + static_cast<std::uint64_t>(idx)));
    const Vec3 w = cone.witnesses.empty() ? Vec3{0, 0, 0} : cone.witnesses.front().point;
    sum.row({C::cell(label), C::cell(fisher.a_estimate), C::cell(p.eps),
             C::cell(cone.cone_pass), C::cell(static_cast<std::int64_t>(cone.witnesses.size())),
             C::cell(w.x), C::cell(w.y), C::cell(w.z)});
    if (!cone.cone_pass) ctx.fail("cone-property:" + label);
    std::ostringstream os;
    os << label << ": a_estimate " << fisher.a_estimate << ", cone "
       << (cone.cone_pass ? "pass" : "FAIL");
    ctx.result->summary += os.str() + "\n";
    ++idx;
  }
  ctx.write(layers, "_layers.csv");
  ctx.write(sum, ".csv");
}

void run_spectral(const SpectralParams& p, const RunContext& ctx) {
  CsvWriter csv({"check", "value", "reference", "tolerance", "pass"});
  auto check = [&](const std::string& name, double value, double ref, double tol) {
    const bool pass = std::abs(value - ref) <= tol;
    csv.row({C::cell(name), C::cell(value), C::cell(ref), C::cell(tol), C::cell(pass)});
    if (!pass) ctx.fail(name);
    return pass;
  };
  auto check_ge = [&](const std::string& name, double value, double threshold) {
    const bool pass = value >= threshold;
    csv.row({C::cell(name), C::cell(value), C::cell(threshold), C::cell(0.0), C::cell(pass)});
    if (!pass) ctx.fail(name);
    return pass;
  };

  // finite box versus infinite-volume density
  const ThermoParams tp{p.beta, p.mu};
  const double cutoff = p.mu + 45.0 / p.beta;
  const BoxSpectrum spec = dirichlet_spectrum(p.box_side, cutoff);
  const double f_box =
      free_fermion_free_energy(spec, tp) / (p.box_side * p.box_side * p.box_side);
  const double f_limit = free_gas_limit_density(tp);
  check("box-vs-limit-density", f_box, f_limit, 0.02 * std::abs(f_limit));

  // scaling identity f(beta, 0) = beta^{-5/2} f(1, 0)
  const double f10 = free_gas_limit_density({1, 0});
  for (double beta : {2.0, 4.0}) {
    const double lhs = free_gas_limit_density({beta, 0});
    check("gas-scaling-beta-" + format_double(beta), lhs, std::pow(beta, -2.5) * f10, 1e-8);
  }

  // stability-shaped lower bound with one fitted constant
  const std::vector<double> betas{0.25, 1, 4};
  const std::vector<double> mus{-1, 0, 1, 4};
  double c_fit = 0;
  for (double b : betas)
    for (double m : mus) {
      const double f = free_gas_limit_density({b, m});
      const double bound = 1 + std::pow(b, -2.5) + std::pow(std::max(0.0, m), 2.5);
      c_fit = std::max(c_fit, -f / bound);
    }
  check_ge("gas-bound-constant-cap", 2.0, c_fit);
  CsvWriter grid({"beta", "mu", "f", "bound_with_fitted_c", "holds"});
  for (double b : betas)
    for (double m : mus) {
      const double f = free_gas_limit_density({b, m});
      const double bound = -c_fit * (1 + std::pow(b, -2.5) + std::pow(std::max(0.0, m), 2.5));
      grid.row({C::cell(b), C::cell(m), C::cell(f), C::cell(bound), C::cell(f >= bound)});
      if (f < bound) ctx.fail("gas-bound-at-beta-" + format_double(b));
    }
  ctx.write(grid, "_gas_bound.csv");

  // Lieb-Thirring ratio on random Slater states
  const double k_cl = semiclassical_lt_constant();
  double worst_ratio = std::numeric_limits<double>::infinity();
  double worst_lt2 = std::numeric_limits<double>::infinity();
  for (long s = 0; s < p.lt_states; ++s) {
    Rng rng(derive_seed(ctx.seed, 0x17000 + static_cast<std::uint64_t>(s)));
    SlaterState state;
    state.L = rng.uniform(1.0, 10.0);
    const int n = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(p.lt_max_particles)));
    std::set<std::array<int, 3>> seen;
    while (static_cast<int>(seen.size()) < n) {
      seen.insert({1 + static_cast<int>(rng.index(4)), 1 + static_cast<int>(rng.index(4)),
                   1 + static_cast<int>(rng.index(4))});
    }
    state.orbitals.assign(seen.begin(), seen.end());
    const LtResult lt = lieb_thirring_detail(state);
    worst_ratio = std::min(worst_ratio, lt.ratio);
    const double n53 = std::pow(static_cast<double>(state.orbitals.size()), 5.0 / 3.0);
    worst_lt2 = std::min(worst_lt2, lt.kinetic / (n53 / (state.L * state.L)));
    if (std::abs(lt.particle_integral - static_cast<double>(state.orbitals.size())) > 1e-8)
      ctx.fail("lt-particle-normalization");
  }
  check_ge("lieb-thirring-vs-semiclassical", worst_ratio, k_cl);
  check_ge("lt2-fock-corollary", worst_lt2, k_cl);

  // Kato ratio and its width independence
  const double kato_ref = std::sqrt(2.0 / (3.0 * M_PI));
  check("kato-ratio", kato_check(1.0).ratio, kato_ref, 1e-8);
  double max_dev = 0;
  for (double a : {0.01, 0.5, 1.0, 7.0, 100.0})
    max_dev = std::max(max_dev, std::abs(kato_check(a).ratio - kato_check(1.0).ratio));
  check("kato-width-independence", max_dev, 0.0, 1e-12);

  ctx.write(csv, ".csv");
  std::ostringstream os;
  os << "spectral: box density " << f_box << " vs limit " << f_limit << "; worst LT ratio "
     << worst_ratio << " (threshold " << k_cl << "); fitted gas bound constant " << c_fit;
  ctx.result->summary += os.str() + "\n";
}

void run_ssa(const SsaParams& p, const RunContext& ctx) {
  CsvWriter csv({"state", "d1", "d2", "d3", "lhs", "rhs", "margin", "holds"});
  long violations = 0;
  long idx = 0;
  for (const auto& dims : p.dims) {
    const std::array<std::size_t, 3> d{static_cast<std::size_t>(dims[0]),
                                       static_cast<std::size_t>(dims[1]),
                                       static_cast<std::size_t>(dims[2])};
    for (long s = 0; s < p.states; ++s, ++idx) {
      Rng rng(derive_seed(ctx.seed, static_cast<std::uint64_t>(idx)));
      const SsaResult r = ssa_check(random_mixed_tripartite(d, rng));
      violations += !r.holds;
      csv.row({C::cell(idx), C::cell(dims[0]), C::cell(dims[1]), C::cell(dims[2]),
               C::cell(r.lhs), C::cell(r.rhs), C::cell(r.rhs - r.lhs), C::cell(r.holds)});
    }
  }
  // product states achieve equality
  double worst_eq = 0;
  for (long s = 0; s < std::min<long>(p.states, 32); ++s) {
    Rng rng(derive_seed(ctx.seed, 0xE000 + static_cast<std::uint64_t>(s)));
    const auto& dims = p.dims[static_cast<std::size_t>(s) % p.dims.size()];
    const std::array<std::size_t, 3> d{static_cast<std::size_t>(dims[0]),
                                       static_cast<std::size_t>(dims[1]),
                                       static_cast<std::size_t>(dims[2])};
    const SsaResult r = ssa_check(product_tripartite(
        d, random_density_matrix(d[0], rng), random_density_matrix(d[1], rng),
        random_density_matrix(d[2], rng)));
    worst_eq = std::max(worst_eq, std::abs(r.lhs - r.rhs));
  }
  ctx.write(csv, ".csv");
  std::ostringstream os;
  os << "ssa: " << idx << " random states, " << violations
     << " violations; product equality deviation " << worst_eq;
  ctx.result->summary += os.str() + "\n";
  if (violations > 0) ctx.fail("ssa-violations");
  if (worst_eq > 1e-10) ctx.fail("ssa-product-equality");
}

void run_converge(const ConvergeParams& p, const RunContext& ctx) {
  const ScreenedCrystalModel model(p.model);
  const Domain simplex = reference_simplex_domain();
  const ConvergenceReport rep =
      run_simplex_convergence(model, simplex, p.ell_grid, static_cast<std::size_t>(p.g_samples),
                              ctx.seed, ctx.threads);

  CsvWriter csv({"ell", "mean", "min", "max", "spread", "stderr", "g_samples"});
  for (const auto& es : rep.per_ell)
    csv.row({C::cell(es.ell), C::cell(es.mean), C::cell(es.min), C::cell(es.max),
             C::cell(es.spread), C::cell(es.stderr_), C::cell(rep.g_samples)});
  ctx.write(csv, ".csv");

  const double known = model.e_cell();
  const double rel_err = std::abs(rep.e_bar - known) / std::abs(known);
  CsvWriter sum({"e_bar", "e_bar_stderr", "slope", "rate_exponent", "known_limit",
                 "rel_error", "seed"});
  sum.row({C::cell(rep.e_bar), C::cell(rep.e_bar_stderr), C::cell(rep.slope),
           C::cell(rep.rate_exponent), C::cell(known), C::cell(rel_err), C::cell(ctx.seed)});
  ctx.write(sum, "_summary.csv");

  if (rel_err > p.tol_rel) ctx.fail("converge-limit-error");
  if (!(rep.rate_exponent > -1.3 && rep.rate_exponent < -0.7)) ctx.fail("converge-rate-exponent");
  // Uniform-convergence proxy: spreads must shrink along the grid.
  int inversions = 0;
  for (std::size_t i = 1; i < rep.per_ell.size(); ++i)
    if (rep.per_ell[i].spread > rep.per_ell[i - 1].spread) ++inversions;
  if (!(rep.per_ell.back().spread < rep.per_ell.front().spread && inversions <= 1))
    ctx.fail("converge-spread-trend");

  std::ostringstream os;
  os << "converge: e_bar " << rep.e_bar << " vs e_cell " << known << " (rel err " << rel_err
     << "), rate exponent " << rep.rate_exponent;
  ctx.result->summary += os.str() + "\n";
}

std::vector<LabeledDomain> build_corpus(const AssumptionsParams& p, std::uint64_t seed) {
  std::vector<LabeledDomain> corpus;
  for (double s : p.cube_sides)
    corpus.push_back({"cube side " + format_double(s), Domain::cube({0.5, 0.5, 0.5}, s)});
  for (double r : p.ball_radii)
    corpus.push_back({"ball radius " + format_double(r), Domain::ball({0.5, 0.5, 0.5}, r)});
  Rng rng(derive_seed(seed, 0x51));
  const RigidMotion g = sample_haar(rng);
  for (double s : p.simplex_scales)
    corpus.push_back({"simplex scale " + format_double(s),
                      act_domain(g, s, reference_simplex_domain())});
  return corpus;
}

void run_assumptions(const AssumptionsParams& p, const RunContext& ctx) {
  const std::vector<LabeledDomain> corpus = build_corpus(p, ctx.seed);
  const ScreenedCrystalModel crystal(p.model);
  const VolumeSquaredDeficitFunctional adversarial;
  const EnergyFunctional& model =
      p.adversarial ? static_cast<const EnergyFunctional&>(adversarial)
                    : static_cast<const EnergyFunctional&>(crystal);

  AssumptionConfig cfg;
  cfg.kappa = crystal.stability_kappa();
  cfg.alpha_c = 1.0;
  cfg.delta = 2.0;

  const AssumptionReport rep =
      check_assumptions(model, corpus, cfg, ctx.seed, static_cast<std::size_t>(p.samples),
                        p.ell_grid, ctx.threads);

  CsvWriter csv({"assumption", "pass", "worst_margin", "witness", "fitted_constant"});
  for (const auto& c : rep.checks) {
    csv.row({C::cell(c.name), C::cell(c.pass), C::cell(c.worst_margin), C::cell(c.witness),
             C::cell(c.fitted_constant)});
    if (!c.pass) ctx.fail(c.name);
    std::ostringstream os;
    os << c.name << ": " << (c.pass ? "pass" : "FAIL (witness: " + c.witness + ")")
       << ", worst margin " << c.worst_margin;
    ctx.result->summary += os.str() + "\n";
  }
  ctx.write(csv, ".csv");
}

void run_general(const GeneralDomainsParams& p, const RunContext& ctx) {
  const ScreenedCrystalModel model(p.model);
  std::optional<double> e_ref = p.e_ref;
  if (!e_ref) e_ref = model.known_limit();

  std::vector<DomainSequenceSpec> specs;
  for (const auto& s : p.sequences) {
    DomainSequenceSpec spec;
    if (s.shape == "cube") spec.shape = SequenceShape::Cube;
    else if (s.shape == "ball") spec.shape = SequenceShape::Ball;
    else if (s.shape == "slab") spec.shape = SequenceShape::Slab;
    else spec.shape = SequenceShape::Simplex;
    spec.sizes = s.sizes;
    spec.center = s.center;
    specs.push_back(spec);
  }

  const GeneralDomainsReport rep =
      run_general_domains(model, specs, e_ref, ctx.seed, ctx.threads);

  CsvWriter csv({"family", "size", "volume", "diam_ratio", "energy_density", "gap",
                 "fisher_a", "cone_pass"});
  CsvWriter sum({"family", "e_extrapolated", "e_stderr", "rate_exponent", "diameter_bounded",
                 "regularity_ok"});
  for (const auto& fam : rep.families) {
    for (const auto& r : fam.rows)
      csv.row({C::cell(fam.family), C::cell(r.size), C::cell(r.volume), C::cell(r.diam_ratio),
               C::cell(r.energy_density), C::cell(r.gap), C::cell(r.fisher_a),
               C::cell(r.cone_pass)});
    sum.row({C::cell(fam.family), C::cell(fam.e_extrapolated), C::cell(fam.e_stderr),
             C::cell(fam.rate_exponent), C::cell(fam.diameter_bounded),
             C::cell(fam.regularity_ok)});
    std::ostringstream os;
    os << fam.family << ": e " << fam.e_extrapolated << " +- " << fam.e_stderr
       << (fam.diameter_bounded ? "" : " [diameter condition FLAGGED]")
       << (fam.regularity_ok ? "" : " [regularity FLAGGED]");
    ctx.result->summary += os.str() + "\n";
  }
  ctx.write(csv, ".csv");
  ctx.write(sum, "_summary.csv");

  // Shape independence among the families that satisfy the diameter
  // condition: extrapolated limits must agree within combined error bars.
  for (std::size_t i = 0; i < rep.families.size(); ++i)
    for (std::size_t j = i + 1; j < rep.families.size(); ++j) {
      const auto& a = rep.families[i];
      const auto& b = rep.families[j];
      if (!a.diameter_bounded || !b.diameter_bounded) continue;
      if (!limits_agree(a.e_extrapolated, a.e_stderr, b.e_extrapolated, b.e_stderr, 3.0, 0.01))
        ctx.fail("shape-disagreement:" + a.family + "-vs-" + b.family);
    }
}

void run_chain(const ChainParams& p, const RunContext& ctx) {
  const ScreenedCrystalModel model(p.model);
  const Domain simplex = reference_simplex_domain();
  AssumptionConfig cfg;
  cfg.kappa = model.stability_kappa();
  cfg.alpha_c = 1.0;

  CsvWriter csv({"L", "ell", "e_L_min", "e_ell_avg", "e_ell_stderr", "coverage",
                 "boundary_correction", "alpha_ell", "c_needed", "n_interior", "n_boundary"});
  std::vector<ChainResult> results;
  std::uint64_t run_idx = 0;
  for (double L : p.big_grid)
    for (double ell : p.ell_grid) {
      if (ell > L / 4) continue;
      const ChainResult r =
          subaverage_chain(model, simplex, L, ell, static_cast<std::size_t>(p.samples), cfg,
                           derive_seed(ctx.seed, run_idx++), ctx.threads);
      results.push_back(r);
      csv.row({C::cell(L), C::cell(ell), C::cell(r.e_L_min), C::cell(r.e_ell_avg),
               C::cell(r.e_ell_stderr), C::cell(r.coverage), C::cell(r.boundary_correction),
               C::cell(r.alpha_ell), C::cell(r.c_needed),
               C::cell(static_cast<std::int64_t>(r.counts.n_interior)),
               C::cell(static_cast<std::int64_t>(r.counts.n_boundary))});
    }
  ctx.write(csv, ".csv");

  double c_fit = 0;
  for (const auto& r : results) c_fit = std::max(c_fit, r.c_needed);
  bool all_hold = true;
  for (const auto& r : results) all_hold = all_hold && r.holds_with(c_fit);
  if (!all_hold) ctx.fail("chain-inequality");
  if (!(c_fit < 100 * (1 + cfg.kappa))) ctx.fail("chain-constant-unbounded");

  // Boundary correction must scale like ell / L.
  std::vector<double> x, y;
  for (const auto& r : results) {
    x.push_back(r.ell / r.L);
    y.push_back(r.boundary_correction);
  }
  const double slope = log_log_slope(x, y, 1e-15);
  if (!(slope > 0.6 && slope < 1.4)) ctx.fail("chain-correction-scaling");

  std::ostringstream os;
  os << "chain: " << results.size() << " (L, ell) pairs, fitted C " << c_fit
     << ", correction scaling exponent " << slope;
  ctx.result->summary += os.str() + "\n";
}

}  // namespace

RunResult run(const ExperimentConfig& config, const RunOptions& options) {
  RunResult result;
  RunContext ctx;
  ctx.seed = options.seed_override.value_or(config.seed);
  ctx.threads = options.threads_override.value_or(config.threads);
  ctx.result = &result;

  std::string name = config.out.empty() ? command_name(config.kind) : config.out;
  if (options.out_dir) name = *options.out_dir + "/" + name;
  ctx.prefix = name;

  try {
    switch (config.kind) {
      case CommandKind::VerifyBaxter:
        run_baxter(std::get<BaxterParams>(config.params), ctx);
        break;
      case CommandKind::VerifyGs:
        run_gs(std::get<GsParams>(config.params), ctx);
        break;
      case CommandKind::Regularity:
        run_regularity(std::get<RegularityParams>(config.params), ctx);
        break;
      case CommandKind::SpectralSuite:
        run_spectral(std::get<SpectralParams>(config.params), ctx);
        break;
      case CommandKind::Ssa:
        run_ssa(std::get<SsaParams>(config.params), ctx);
        break;
      case CommandKind::Converge:
        run_converge(std::get<ConvergeParams>(config.params), ctx);
        break;
      case CommandKind::Assumptions:
        run_assumptions(std::get<AssumptionsParams>(config.params), ctx);
        break;
      case CommandKind::GeneralDomains:
        run_general(std::get<GeneralDomainsParams>(config.params), ctx);
        break;
      case CommandKind::Chain:
        run_chain(std::get<ChainParams>(config.params), ctx);
        break;
    }
  } catch (const IoError& e) {
    result.exit_code = 3;
    result.summary += std::string("I/O error: ") + e.what() + "\n";
    return result;
  }

  result.exit_code = result.failures.empty() ? 0 : 1;
  return result;
}

}  // namespace tlim
