#include <doctest.h>

#include <cmath>

#include "tlim/errors.hpp"
#include "tlim/limit_engine.hpp"

using namespace tlim;

namespace {

Domain ref_simplex() {
  return Domain::simplex_image(reference_simplex(), identity_motion(), 1.0);
}

AssumptionConfig crystal_cfg(const ScreenedCrystalModel& m) {
  AssumptionConfig cfg;
  cfg.kappa = m.stability_kappa();
  cfg.alpha_c = 1.0;
  return cfg;
}

}  // namespace

TEST_CASE("e_ell evaluation") {
  const ScreenedCrystalModel m;
  const Domain simplex = ref_simplex();

  SUBCASE("small tiles that dodge the lattice score zero") {
    RigidMotion g;
    g.u = {0.4, 0.3, 0.2};
    CHECK(evaluate_e_ell(m, simplex, 0.3, g) == 0.0);
  }

  SUBCASE("integer translations leave e_ell unchanged") {
    Rng rng(73);
    for (int i = 0; i < 10; ++i) {
      const RigidMotion g = sample_haar(rng);
      RigidMotion shifted = g;
      shifted.u += Vec3{2, -1, 3};
      const double a = evaluate_e_ell(m, simplex, 4.0, g);
      const double b = evaluate_e_ell(m, simplex, 4.0, shifted);
      CHECK(std::abs(a - b) <= 1e-12 * (1 + std::abs(a)));
    }
  }

  SUBCASE("at ell = 16 every sample sits within the boundary band of e_cell") {
    Rng rng(79);
    for (int i = 0; i < 30; ++i) {
      const double e = evaluate_e_ell(m, simplex, 16.0, sample_haar(rng));
      CHECK(std::abs(e - m.e_cell()) <= 70.0 / 16.0);
    }
  }
}

TEST_CASE("simplex convergence on the exactly linear functional") {
  const ScaledVolumeFunctional lin(3.25);
  const ConvergenceReport rep =
      run_simplex_convergence(lin, ref_simplex(), {2, 4, 8}, 10, 7);
  for (const auto& es : rep.per_ell) {
    CHECK(es.mean == doctest::Approx(3.25).epsilon(1e-12));
    CHECK(es.spread <= 1e-12);
  }
  CHECK(rep.e_bar == doctest::Approx(3.25).epsilon(1e-9));
  CHECK(std::isnan(rep.rate_exponent));  // every gap is noise-level
}

TEST_CASE("simplex convergence reaches the known screened-crystal limit") {
  const ScreenedCrystalModel m;
  const ConvergenceReport rep =
      run_simplex_convergence(m, ref_simplex(), {4, 8, 16}, 30, 11);
  // coarse grid in the unit suite; the acceptance run uses ell up to 32
  CHECK(std::abs(rep.e_bar - m.e_cell()) / std::abs(m.e_cell()) <= 0.05);
  CHECK(rep.per_ell.back().spread < rep.per_ell.front().spread);
}

TEST_CASE("schedule independence: identical reports for any thread count") {
  const ScreenedCrystalModel m;
  const ConvergenceReport a =
      run_simplex_convergence(m, ref_simplex(), {2, 4, 8}, 12, 99, 1);
  const ConvergenceReport b =
      run_simplex_convergence(m, ref_simplex(), {2, 4, 8}, 12, 99, 3);
  for (std::size_t i = 0; i < a.per_ell.size(); ++i) {
    CHECK(a.per_ell[i].mean == b.per_ell[i].mean);
    CHECK(a.per_ell[i].min == b.per_ell[i].min);
    CHECK(a.per_ell[i].max == b.per_ell[i].max);
  }
  CHECK(a.e_bar == b.e_bar);
}

TEST_CASE("subaverage bound") {
  const Domain simplex = ref_simplex();

  SUBCASE("the zero functional reduces to the regularized-volume slack") {
    const ScaledVolumeFunctional zero(0.0);
    AssumptionConfig cfg;
    cfg.alpha_c = 1.0;
    const Domain omega = Domain::cube({0.5, 0.5, 0.5}, 8.0);
    const SubaverageResult r = check_subaverage(zero, omega, simplex, 4.0, 200, cfg, 3);
    CHECK(r.lhs == 0.0);
    CHECK(r.tile_average == 0.0);
    CHECK(r.rhs == doctest::Approx(-omega.volume() * 0.25).epsilon(1e-12));
    CHECK(r.holds);
    CHECK(r.margin > 0);
  }

  SUBCASE("screened crystal on a cube host") {
    const ScreenedCrystalModel m;
    const AssumptionConfig cfg = crystal_cfg(m);
    const Domain omega = Domain::cube({0.5, 0.5, 0.5}, 16.0);
    const SubaverageResult r = check_subaverage(m, omega, simplex, 4.0, 1000, cfg, 5);
    CHECK(r.holds);
    CHECK(r.margin > 0);
  }

  SUBCASE("raising alpha lowers the right-hand side monotonically") {
    const ScreenedCrystalModel m;
    AssumptionConfig cfg = crystal_cfg(m);
    const Domain omega = Domain::cube({0.5, 0.5, 0.5}, 12.0);
    const SubaverageResult r1 = check_subaverage(m, omega, simplex, 4.0, 400, cfg, 5);
    cfg.alpha_c = 2.0;
    const SubaverageResult r2 = check_subaverage(m, omega, simplex, 4.0, 400, cfg, 5);
    CHECK(r2.rhs < r1.rhs);
    CHECK(r2.margin > r1.margin);
  }

  SUBCASE("ball host evaluates predicate-wise") {
    const ScreenedCrystalModel m;
    const AssumptionConfig cfg = crystal_cfg(m);
    const Domain omega = Domain::ball({0.5, 0.5, 0.5}, 7.0);
    const SubaverageResult r = check_subaverage(m, omega, simplex, 2.0, 400, cfg, 7);
    CHECK(r.holds);
  }
}

TEST_CASE("subaverage chain") {
  const Domain simplex = ref_simplex();

  SUBCASE("constant functional: equality up to Monte-Carlo error") {
    const ScaledVolumeFunctional lin(-2.5);
    AssumptionConfig cfg;
    cfg.kappa = 2.5;
    const ChainResult r = subaverage_chain(lin, simplex, 16, 2, 200, cfg, 13);
    CHECK(r.e_L_min == doctest::Approx(-2.5).epsilon(1e-12));
    CHECK(r.e_ell_avg == doctest::Approx(-2.5).epsilon(1e-12));
    CHECK(r.c_needed <= 1e-9);
    CHECK(r.holds_with(0.0));
  }

  SUBCASE("screened crystal: chain inequality with a bounded constant") {
    const ScreenedCrystalModel m;
    const AssumptionConfig cfg = crystal_cfg(m);
    std::vector<ChainResult> results;
    for (double ell : {2.0, 4.0, 8.0})
      results.push_back(subaverage_chain(m, simplex, 32, ell, 500, cfg, 17));
    double c_fit = 0;
    for (const auto& r : results) c_fit = std::max(c_fit, r.c_needed);
    for (const auto& r : results) CHECK(r.holds_with(c_fit));
    CHECK(c_fit < 100 * (1 + cfg.kappa));
    // boundary corrections grow with ell at fixed L
    CHECK(results[0].boundary_correction < results[2].boundary_correction);
    // coverage approaches one as ell shrinks
    CHECK(results[0].coverage > results[2].coverage);
    CHECK(results[0].coverage > 0.5);
  }

  SUBCASE("scale separation is enforced") {
    const ScaledVolumeFunctional lin(1.0);
    AssumptionConfig cfg;
    CHECK_THROWS_AS(subaverage_chain(lin, simplex, 16, 8, 100, cfg, 1), InvalidInput);
  }
}

TEST_CASE("assumption suite") {
  Rng rng(83);
  std::vector<LabeledDomain> corpus;
  for (double s : {4.0, 8.0, 16.0})
    corpus.push_back({"cube " + std::to_string(s), Domain::cube({0.5, 0.5, 0.5}, s)});
  for (double r : {4.0, 8.0})
    corpus.push_back({"ball " + std::to_string(r), Domain::ball({0.5, 0.5, 0.5}, r)});
  const RigidMotion g = sample_haar(rng);
  for (double s : {4.0, 8.0})
    corpus.push_back({"simplex " + std::to_string(s), act_domain(g, s, ref_simplex())});

  SUBCASE("screened crystal passes A1-A5") {
    const ScreenedCrystalModel m;
    const AssumptionReport rep =
        check_assumptions(m, corpus, crystal_cfg(m), 19, 300, {2, 4});
    for (const auto& c : rep.checks) {
      INFO(c.name, " witness=", c.witness, " margin=", c.worst_margin);
      CHECK(c.pass);
    }
    CHECK(rep.all_pass);
  }

  SUBCASE("the super-volume deficit functional fails stability with a witness") {
    const VolumeSquaredDeficitFunctional adv;
    AssumptionConfig cfg;
    cfg.kappa = 50.0;
    const AssumptionReport rep = check_assumptions(adv, corpus, cfg, 23, 100, {2});
    bool a2_failed = false;
    for (const auto& c : rep.checks)
      if (c.name == "A2") {
        a2_failed = !c.pass;
        CHECK(!c.witness.empty());
        CHECK(c.worst_margin < 0);
      }
    CHECK(a2_failed);
    CHECK(!rep.all_pass);
  }
}

TEST_CASE("general domain sequences") {
  const ScreenedCrystalModel m;

  SUBCASE("half-integer cubes hit the cell energy exactly") {
    const GeneralDomainsReport rep = run_general_domains(
        m, {{SequenceShape::Cube, {4, 8, 16}, {0.5, 0.5, 0.5}}}, m.known_limit(), 29);
    const SequenceResult& fam = rep.families.front();
    for (const auto& row : fam.rows) CHECK(std::abs(row.gap) <= 1e-12);
    CHECK(fam.e_extrapolated == doctest::Approx(m.e_cell()).epsilon(1e-9));
    CHECK(fam.diameter_bounded);
    CHECK(fam.regularity_ok);
  }

  SUBCASE("balls converge toward the same limit") {
    const GeneralDomainsReport rep = run_general_domains(
        m, {{SequenceShape::Ball, {4, 8, 12}, {0.5, 0.5, 0.5}}}, m.known_limit(), 31);
    const SequenceResult& fam = rep.families.front();
    CHECK(fam.diameter_bounded);
    CHECK(fam.regularity_ok);
    CHECK(std::abs(fam.e_extrapolated - m.e_cell()) <= 0.05 * std::abs(m.e_cell()));
    // gaps shrink with the radius
    CHECK(std::abs(fam.rows.back().gap) < std::abs(fam.rows.front().gap));
  }

  SUBCASE("degenerate slabs trip the diameter condition") {
    const GeneralDomainsReport rep = run_general_domains(
        m, {{SequenceShape::Slab, {8, 16, 32}, {0.5, 0.5, 0.5}}}, m.known_limit(), 37);
    const SequenceResult& fam = rep.families.front();
    CHECK(!fam.diameter_bounded);
    // ratio grows like n^{1/3}
    CHECK(fam.rows.back().diam_ratio > fam.rows.front().diam_ratio * 1.3);
  }
}

TEST_CASE("limits_agree is symmetric with floor and error bars") {
  CHECK(limits_agree(10.0, 0.1, 10.2, 0.1, 3.0, 0.0));
  CHECK(!limits_agree(10.0, 0.01, 10.2, 0.01, 3.0, 0.0));
  CHECK(limits_agree(10.0, 0.0, 10.05, 0.0, 3.0, 0.01));
}
