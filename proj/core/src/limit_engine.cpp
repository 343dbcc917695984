#include "tlim/limit_engine.hpp"

#include <algorithm>
#include <cmath>

#include "tlim/errors.hpp"
#include "tlim/parallel.hpp"
#include "tlim/stats.hpp"

namespace tlim {

namespace {

double simplex_domain_volume(const Domain& simplex) {
  if (simplex.kind() != Domain::Kind::SimplexImage)
    throw InvalidInput("limit engine: reference set must be a simplex domain");
  return simplex.volume();
}

bool is_reference_simplex(const Domain& simplex) {
  if (simplex.kind() != Domain::Kind::SimplexImage) return false;
  if (std::abs(simplex.simplex_scale() - 1.0) > 1e-12) return false;
  const RigidMotion& g = simplex.simplex_motion();
  if (norm(g.u) > 1e-12 || std::abs(g.q.w - 1) > 1e-12) return false;
  const Simplex& ref = reference_simplex();
  for (int i = 0; i < 4; ++i)
    if (distance(simplex.simplex_base().v[i], ref.v[i]) > 1e-12) return false;
  return true;
}

// Max distance of a point of the simplex domain from its anchor; the tile
// g(ell D) reaches at most ell * this from the translation u.
double domain_reach(const Domain& simplex) {
  const Simplex& base = simplex.simplex_base();
  const RigidMotion& g0 = simplex.simplex_motion();
  const double s0 = simplex.simplex_scale();
  double r = 0;
  for (const Vec3& v : base.v) r = std::max(r, norm(rotate(g0.q, v * s0) + g0.u));
  return r;
}

}  // namespace

double evaluate_e_ell(const EnergyFunctional& E, const Domain& simplex, double ell,
                      const RigidMotion& g) {
  if (!(ell > 0)) throw InvalidInput("evaluate_e_ell: need ell > 0");
  const double vol = ell * ell * ell * simplex_domain_volume(simplex);
  return E.evaluate(act_domain(g, ell, simplex)) / vol;
}

ConvergenceReport run_simplex_convergence(const EnergyFunctional& E, const Domain& simplex,
                                          const std::vector<double>& ell_grid,
                                          std::size_t g_samples, std::uint64_t seed,
                                          unsigned threads) {
  if (ell_grid.empty()) throw InvalidInput("run_simplex_convergence: empty ell grid");
  if (!std::is_sorted(ell_grid.begin(), ell_grid.end()))
    throw InvalidInput("run_simplex_convergence: ell grid must be increasing");
  if (g_samples < 2) throw InvalidInput("run_simplex_convergence: need at least 2 g samples");

  ConvergenceReport rep;
  rep.seed = seed;
  rep.g_samples = g_samples;

  for (std::size_t li = 0; li < ell_grid.size(); ++li) {
    const double ell = ell_grid[li];
    std::vector<double> vals(g_samples);
    parallel_for(g_samples, threads, [&](std::size_t si) {
      Rng rng(derive_seed(seed, (li << 32) + si));
      const RigidMotion g = sample_haar(rng);
      vals[si] = evaluate_e_ell(E, simplex, ell, g);
    });
    const SampleStats st = sample_stats(vals);
    EllStats es;
    es.ell = ell;
    es.mean = st.mean;
    es.min = st.min;
    es.max = st.max;
    es.spread = st.spread();
    es.stderr_ = st.stderr_;
    es.stream_seed = derive_seed(seed, li << 32);
    rep.per_ell.push_back(es);
  }

  // Extrapolation model a + b/l; variance weighting concentrates the
  // intercept on the large-l points where the means are sharp.
  std::vector<double> x, y, w;
  for (const auto& es : rep.per_ell) {
    x.push_back(1.0 / es.ell);
    y.push_back(es.mean);
    w.push_back(1.0 / (es.stderr_ * es.stderr_ + 1e-24));
  }
  const LineFit fit = fit_line(x, y, w);
  rep.e_bar = fit.a;
  rep.e_bar_stderr = fit.sigma_a;
  rep.slope = fit.b;

  std::vector<double> lx, gy;
  for (const auto& es : rep.per_ell) {
    const double gap = std::abs(es.mean - rep.e_bar);
    if (gap > 3 * es.stderr_ + 1e-14) {
      lx.push_back(es.ell);
      gy.push_back(gap);
    }
  }
  rep.rate_exponent = log_log_slope(lx, gy);
  return rep;
}

SubaverageResult check_subaverage(const EnergyFunctional& E, const Domain& omega,
                                  const Domain& simplex, double ell, std::size_t samples,
                                  const AssumptionConfig& cfg, std::uint64_t seed,
                                  unsigned threads) {
  if (!(ell > 0)) throw InvalidInput("check_subaverage: need ell > 0");
  if (!(ell <= omega.diameter()))
    throw InvalidInput("check_subaverage: tile scale exceeds the host diameter");
  if (samples < 10) throw InvalidInput("check_subaverage: need at least 10 samples");

  const double tile_vol = ell * ell * ell * simplex_domain_volume(simplex);
  const double reach = ell * domain_reach(simplex);
  const Aabb cell = omega.bounding_box().inflated(reach);
  const double cell_vol = cell.volume();

  std::vector<double> vals(samples);
  parallel_for(samples, threads, [&](std::size_t si) {
    Rng rng(derive_seed(seed, si));
    const RigidMotion g = sample_haar_cell(cell.lo, cell.hi, rng);
    const Domain tile = act_domain(g, ell, simplex);
    std::vector<Domain> parts;
    parts.push_back(omega);
    parts.push_back(tile);
    vals[si] = E.evaluate(Domain::intersection(std::move(parts)));
  });

  const SampleStats st = sample_stats(vals);
  const double alpha = cfg.alpha_c / ell;

  SubaverageResult r;
  r.lhs = E.evaluate(omega);
  r.tile_average = cell_vol * st.mean / tile_vol;
  r.mc_stderr = std::abs(1 - alpha) * cell_vol * st.stderr_ / tile_vol;
  r.alpha_ell = alpha;
  r.reg_volume = regularized_volume(omega);
  r.rhs = (1 - alpha) * r.tile_average - r.reg_volume * alpha;
  r.margin = r.lhs - r.rhs;
  r.holds = r.lhs >= r.rhs - 3 * r.mc_stderr;
  const double denom = r.tile_average + r.reg_volume;
  r.c_needed = denom > 0 ? std::max(0.0, ell * (r.tile_average - r.lhs) / denom)
                         : std::numeric_limits<double>::infinity();
  return r;
}

ChainResult subaverage_chain(const EnergyFunctional& E, const Domain& simplex, double L,
                             double ell, std::size_t samples, const AssumptionConfig& cfg,
                             std::uint64_t seed, unsigned threads) {
  if (!(ell > 0 && L > 0)) throw InvalidInput("subaverage_chain: need positive L, ell");
  if (ell > L / 4) throw InvalidInput("subaverage_chain: need ell <= L/4");
  if (!is_reference_simplex(simplex))
    throw InvalidInput("subaverage_chain: the reference set must be the unit reference simplex");

  ChainResult r;
  r.L = L;
  r.ell = ell;

  // Deterministic sweep of reference motions for e_L.
  constexpr std::size_t kGbarSamples = 8;
  RigidMotion gbar_min;
  r.e_L_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kGbarSamples; ++i) {
    Rng rng(derive_seed(seed, 0xA0000000ULL + i));
    const RigidMotion gbar = sample_haar(rng);
    const double eL = evaluate_e_ell(E, simplex, L, gbar);
    if (eL < r.e_L_min) {
      r.e_L_min = eL;
      gbar_min = gbar;
    }
  }

  std::vector<double> vals(samples);
  parallel_for(samples, threads, [&](std::size_t si) {
    Rng rng(derive_seed(seed, si));
    const RigidMotion g = sample_haar(rng);
    vals[si] = evaluate_e_ell(E, simplex, ell, g);
  });
  const SampleStats st = sample_stats(vals);
  r.e_ell_avg = st.mean;
  r.e_ell_stderr = st.stderr_;

  r.counts = interior_boundary_sets(L, ell, gbar_min);
  r.coverage = r.counts.coverage();
  r.boundary_correction =
      cfg.kappa * static_cast<double>(r.counts.n_boundary) / r.counts.host_volume();
  r.alpha_ell = cfg.alpha_c / ell;
  r.c_needed = std::max(0.0, (r.e_ell_avg - r.e_L_min) / (r.alpha_ell + ell / L));
  return r;
}

// ---------------------------------------------------------------------------
// Assumption suite

AssumptionReport check_assumptions(const EnergyFunctional& E,
                                   const std::vector<LabeledDomain>& corpus,
                                   const AssumptionConfig& cfg, std::uint64_t seed,
                                   std::size_t a5_samples,
                                   const std::vector<double>& a5_ell_grid, unsigned threads) {
  if (corpus.empty()) throw InvalidInput("check_assumptions: empty domain corpus");
  AssumptionReport rep;

  {  // A1: lattice-free domains must evaluate to exactly zero.
    AssumptionCheck c;
    c.name = "A1";
    const std::vector<LabeledDomain> probes = {
        {"ball r=0.2 off-lattice", Domain::ball({0.5, 0.5, 0.5}, 0.2)},
        {"ball r=0.3 off-lattice", Domain::ball({3.7, 1.6, -2.2}, 0.3)},
    };
    c.pass = true;
    for (const auto& p : probes) {
      const double e = std::abs(E.evaluate(p.domain));
      if (e > c.worst_margin) {
        c.worst_margin = e;
        c.witness = p.label;
      }
      if (e > 1e-12) c.pass = false;
    }
    rep.checks.push_back(c);
  }

  {  // A2: E >= -kappa |Omega| on the corpus.
    AssumptionCheck c;
    c.name = "A2";
    c.pass = true;
    c.worst_margin = std::numeric_limits<double>::infinity();
    c.fitted_constant = cfg.kappa;
    for (const auto& d : corpus) {
      const double vol = d.domain.volume();
      const double margin = E.evaluate(d.domain) + cfg.kappa * vol;
      if (margin < c.worst_margin) {
        c.worst_margin = margin;
        c.witness = d.label;
      }
      if (margin < -cfg.tolerance * (1 + cfg.kappa * vol)) c.pass = false;
    }
    rep.checks.push_back(c);
  }

  {  // A3: integer translations leave E unchanged.
    AssumptionCheck c;
    c.name = "A3";
    c.pass = true;
    Rng rng(derive_seed(seed, 0x33));
    std::vector<Vec3> shifts = {{1, 0, 0}, {0, -2, 3}, {5, 5, -5}};
    for (int i = 0; i < 2; ++i)
      shifts.push_back({std::floor(rng.uniform(-10, 10)), std::floor(rng.uniform(-10, 10)),
                        std::floor(rng.uniform(-10, 10))});
    for (const auto& d : corpus) {
      const double e0 = E.evaluate(d.domain);
      for (const Vec3& z : shifts) {
        const double diff = std::abs(E.evaluate(d.domain.translated(z)) - e0);
        if (diff > c.worst_margin) {
          c.worst_margin = diff;
          c.witness = d.label;
        }
        if (diff > 1e-12 * (1 + std::abs(e0))) c.pass = false;
      }
    }
    rep.checks.push_back(c);
  }

  {  // A4: nested pairs with boundary separation > delta.
    AssumptionCheck c;
    c.name = "A4";
    c.pass = true;
    const double shrink = 2 * (cfg.delta + 0.5);  // per-side gap delta + 0.5
    std::vector<double> eps_rel;
    for (const auto& d : corpus) {
      Domain inner = d.domain;
      bool have_pair = false;
      if (d.domain.kind() == Domain::Kind::Box) {
        const Aabb bb = d.domain.bounding_box();
        const Vec3 e = bb.extent();
        if (std::min({e.x, e.y, e.z}) > shrink + 1) {
          const Vec3 h{shrink / 2, shrink / 2, shrink / 2};
          inner = Domain::box(bb.lo + h, bb.hi - h);
          have_pair = true;
        }
      } else if (d.domain.kind() == Domain::Kind::Ball) {
        if (d.domain.ball_radius() > shrink / 2 + 1) {
          inner = Domain::ball(d.domain.ball_center(), d.domain.ball_radius() - shrink / 2);
          have_pair = true;
        }
      }
      if (!have_pair) continue;
      const double vol = d.domain.volume();
      const double eps_n = std::max(
          0.0, E.evaluate(d.domain) - E.evaluate(inner) - cfg.kappa * (vol - inner.volume()));
      eps_rel.push_back(eps_n / vol);
      if (eps_n / vol > c.worst_margin) {
        c.worst_margin = eps_n / vol;
        c.witness = d.label;
      }
      c.fitted_constant = std::max(c.fitted_constant, eps_n / vol * std::cbrt(vol));
    }
    // Vanishing-rate test: the relative excess must not grow along the corpus.
    if (eps_rel.size() >= 2)
      c.pass = eps_rel.back() <= std::max(0.75 * eps_rel.front(), cfg.tolerance);
    else
      c.pass = c.worst_margin <= cfg.tolerance;
    rep.checks.push_back(c);
  }

  {  // A5: subaverage bound with alpha(l) = alpha_c / l on a medium host.
    AssumptionCheck c;
    c.name = "A5";
    c.pass = true;
    // Hosts: the largest corpus entries that admit the smallest tile.
    std::vector<const LabeledDomain*> hosts;
    for (const auto& d : corpus)
      if (d.domain.diameter() >= 2 * a5_ell_grid.back()) hosts.push_back(&d);
    if (hosts.size() > 2) hosts.erase(hosts.begin(), hosts.end() - 2);
    const Domain simplex = Domain::simplex_image(reference_simplex(), identity_motion(), 1.0);
    std::uint64_t run = 0;
    for (const auto* h : hosts) {
      for (double ell : a5_ell_grid) {
        if (ell > h->domain.diameter()) continue;
        const SubaverageResult r = check_subaverage(E, h->domain, simplex, ell, a5_samples,
                                                    cfg, derive_seed(seed, 0x55AA + run++),
                                                    threads);
        c.fitted_constant = std::max(c.fitted_constant, r.c_needed);
        if (r.margin < c.worst_margin || run == 1) {
          c.worst_margin = r.margin;
          if (!r.holds) c.witness = h->label + " ell=" + std::to_string(ell);
        }
        if (!r.holds) c.pass = false;
      }
    }
    rep.checks.push_back(c);
  }

  rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                             [](const AssumptionCheck& c) { return c.pass; });
  return rep;
}

// ---------------------------------------------------------------------------
// General domain sequences

std::string sequence_shape_name(SequenceShape s) {
  switch (s) {
    case SequenceShape::Cube: return "cube";
    case SequenceShape::Ball: return "ball";
    case SequenceShape::Slab: return "slab";
    case SequenceShape::Simplex: return "simplex";
  }
  return "?";
}

GeneralDomainsReport run_general_domains(const EnergyFunctional& E,
                                         const std::vector<DomainSequenceSpec>& specs,
                                         std::optional<double> e_ref, std::uint64_t seed,
                                         unsigned threads) {
  (void)threads;
  GeneralDomainsReport rep;
  rep.e_ref = e_ref;

  std::uint64_t family_tag = 0;
  for (const auto& spec : specs) {
    if (spec.sizes.empty()) throw InvalidInput("run_general_domains: empty size list");
    if (!std::is_sorted(spec.sizes.begin(), spec.sizes.end()))
      throw InvalidInput("run_general_domains: sizes must be increasing");
    SequenceResult res;
    res.family = sequence_shape_name(spec.shape);

    // One lattice-generic motion per simplex family, fixed by the seed.
    Rng motion_rng(derive_seed(seed, 0xF00 + family_tag));
    const RigidMotion generic = sample_haar(motion_rng);
    ++family_tag;

    for (double size : spec.sizes) {
      Domain d = [&] {
        switch (spec.shape) {
          case SequenceShape::Cube:
            return Domain::cube(spec.center, size);
          case SequenceShape::Ball:
            return Domain::ball(spec.center, size);
          case SequenceShape::Slab: {
            const Vec3 h{size / 2, size / 2, 0.5};
            return Domain::box(spec.center - h, spec.center + h);
          }
          case SequenceShape::Simplex:
            return act_domain(generic, size,
                              Domain::simplex_image(reference_simplex(), identity_motion(), 1.0));
        }
        throw InvalidInput("unknown sequence shape");
      }();

      SequenceRow row;
      row.size = size;
      row.volume = d.volume();
      row.diam_ratio = d.diameter() / std::cbrt(row.volume);
      row.energy_density = E.evaluate(d) / row.volume;
      row.gap = e_ref ? row.energy_density - *e_ref : 0.0;

      const RegularityReport fr =
          fisher_regularity(d, {0.2, 0.5, 1.0}, 20000, derive_seed(seed, family_tag * 131 +
                                                                            std::uint64_t(size)));
      row.fisher_a = fr.a_estimate;
      const RegularityReport cr = cone_property_check(
          d, 0.1, 400, 16, derive_seed(seed, family_tag * 137 + std::uint64_t(size)));
      row.cone_pass = cr.cone_pass;
      res.rows.push_back(row);
    }

    // Diameter condition: |Omega|^{-1/3} diam must stay bounded along the
    // sequence; a growth trend flags the family.
    const double ratio_first = res.rows.front().diam_ratio;
    const double ratio_last = res.rows.back().diam_ratio;
    res.diameter_bounded = ratio_last <= 1.3 * ratio_first + 1e-9 && ratio_last <= 5.0;

    const double a_first = res.rows.front().fisher_a;
    const double a_last = res.rows.back().fisher_a;
    const bool cones = std::all_of(res.rows.begin(), res.rows.end(),
                                   [](const SequenceRow& r) { return r.cone_pass; });
    res.regularity_ok = cones && a_last <= 1.3 * a_first + 0.5;

    std::vector<double> x, y;
    for (const auto& r : res.rows) {
      x.push_back(1.0 / std::cbrt(r.volume));
      y.push_back(r.energy_density);
    }
    const LineFit fit = fit_line(x, y);
    res.e_extrapolated = fit.a;
    res.e_stderr = fit.sigma_a;

    if (e_ref) {
      std::vector<double> sz, gaps;
      for (const auto& r : res.rows) {
        sz.push_back(std::cbrt(r.volume));
        gaps.push_back(r.gap);
      }
      res.rate_exponent = log_log_slope(sz, gaps, 1e-12);
    } else {
      res.rate_exponent = std::numeric_limits<double>::quiet_NaN();
    }
    rep.families.push_back(std::move(res));
  }
  return rep;
}

bool limits_agree(double a, double sa, double b, double sb, double k_sigma, double rel_floor) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= k_sigma * (sa + sb) + rel_floor * scale;
}

}  // namespace tlim
