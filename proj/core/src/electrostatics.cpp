#include "tlim/electrostatics.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "tlim/csv.hpp"
#include "tlim/errors.hpp"
#include "tlim/motion.hpp"
#include "tlim/parallel.hpp"
#include "tlim/stats.hpp"

namespace tlim {

namespace {
constexpr double kCoincidence = 1e-12;
}

double ChargeConfiguration::total_charge() const {
  double s = 0;
  for (double z : charges) s += z;
  return s;
}

double ChargeConfiguration::charge_square_sum() const {
  double s = 0;
  for (double z : charges) s += z * z;
  return s;
}

double ChargeConfiguration::min_separation() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions.size(); ++i)
    for (std::size_t j = i + 1; j < positions.size(); ++j)
      m = std::min(m, distance(positions[i], positions[j]));
  return m;
}

ChargeConfiguration ChargeConfiguration::load(std::istream& in) {
  ChargeConfiguration c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    double x, y, z, q;
    if (!(ls >> x)) continue;  // blank line
    if (!(ls >> y >> z >> q))
      throw InvalidInput("charge file line " + std::to_string(lineno) +
                         ": expected \"x y z charge\"");
    c.positions.push_back({x, y, z});
    c.charges.push_back(q);
  }
  return c;
}

ChargeConfiguration ChargeConfiguration::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open charge file: " + path);
  return load(in);
}

void ChargeConfiguration::save(std::ostream& out) const {
  for (std::size_t i = 0; i < positions.size(); ++i) {
    out << format_double(positions[i].x) << ' ' << format_double(positions[i].y) << ' '
        << format_double(positions[i].z) << ' ' << format_double(charges[i]) << '\n';
  }
}

double coulomb_energy(const ChargeConfiguration& c) {
  if (c.positions.size() != c.charges.size())
    throw InvalidInput("charge configuration: positions/charges size mismatch");
  double e = 0;
  for (std::size_t i = 0; i < c.positions.size(); ++i)
    for (std::size_t j = i + 1; j < c.positions.size(); ++j) {
      const double d = distance(c.positions[i], c.positions[j]);
      if (d < kCoincidence)
        throw InvalidInput("coulomb_energy: particles " + std::to_string(i) + " and " +
                           std::to_string(j) + " coincide");
      e += c.charges[i] * c.charges[j] / d;
    }
  return e;
}

double nearest_nucleus_distance(const Vec3& x) {
  const double rx = std::nearbyint(x.x), ry = std::nearbyint(x.y), rz = std::nearbyint(x.z);
  double best = std::numeric_limits<double>::infinity();
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) {
        const Vec3 r{rx + a, ry + b, rz + c};
        best = std::min(best, norm2(x - r));
      }
  return std::sqrt(best);
}

BaxterResult baxter_check(const std::vector<Vec3>& electrons, const std::vector<Vec3>& nuclei) {
  double lhs = 0;

  for (std::size_t i = 0; i < electrons.size(); ++i) {
    for (std::size_t j = i + 1; j < electrons.size(); ++j) {
      const double d = distance(electrons[i], electrons[j]);
      if (d < kCoincidence)
        throw InvalidInput("baxter_check: electrons " + std::to_string(i) + " and " +
                           std::to_string(j) + " coincide");
      lhs += 1.0 / d;
    }
    for (std::size_t k = 0; k < nuclei.size(); ++k) {
      const double d = distance(electrons[i], nuclei[k]);
      if (d < kCoincidence)
        throw InvalidInput("baxter_check: electron " + std::to_string(i) +
                           " sits on nucleus " + std::to_string(k) + " (both sides singular)");
      lhs -= 1.0 / d;
    }
  }
  for (std::size_t k = 0; k < nuclei.size(); ++k)
    for (std::size_t l = k + 1; l < nuclei.size(); ++l) lhs += 1.0 / distance(nuclei[k], nuclei[l]);

  const double baxter_c = 1.5 + std::sqrt(2.0);
  double rhs = 0;
  for (const Vec3& x : electrons) rhs -= baxter_c / nearest_nucleus_distance(x);

  return {lhs, rhs, lhs >= rhs};
}

GSCheckReport graf_schenker_check(const ChargeConfiguration& c, const Domain& simplex,
                                  double ell, std::size_t samples, std::uint64_t seed,
                                  const GSOptions& opts) {
  if (simplex.kind() != Domain::Kind::SimplexImage)
    throw InvalidInput("graf_schenker_check: reference set must be a simplex domain");
  if (!(ell > 0)) throw InvalidInput("graf_schenker_check: need ell > 0");
  if (samples < 1000)
    throw InvalidInput("graf_schenker_check: need at least 1000 Monte-Carlo samples");

  const std::size_t n = c.size();
  const double lhs = n >= 2 ? coulomb_energy(c) : 0.0;
  const double zsq = c.charge_square_sum();

  // Effective simplex of the tile g * (ell * simplex): base faces at
  // combined scale, rotated per sample.
  const Simplex& base = simplex.simplex_base();
  const double s0 = simplex.simplex_scale();
  const RigidMotion& g0 = simplex.simplex_motion();
  const auto base_faces = base.faces();
  const double tile_scale = ell * s0;
  const double tile_vol = tile_scale * tile_scale * tile_scale * base.volume();
  double enclosing = 0;
  for (const Vec3& v : base.v)
    enclosing = std::max(enclosing, norm(rotate(g0.q, v * s0) + g0.u));
  const double reach = ell * enclosing;

  // Translation cell: u must land within `reach` of some particle for the
  // tile to contain it, so the integrand vanishes outside this box.
  Aabb needed{{0, 0, 0}, {0, 0, 0}};
  if (n > 0) {
    needed = {c.positions[0], c.positions[0]};
    for (const Vec3& p : c.positions) {
      needed.lo = {std::min(needed.lo.x, p.x), std::min(needed.lo.y, p.y),
                   std::min(needed.lo.z, p.z)};
      needed.hi = {std::max(needed.hi.x, p.x), std::max(needed.hi.y, p.y),
                   std::max(needed.hi.z, p.z)};
    }
    needed = needed.inflated(reach);
  }
  Aabb cell = needed;
  if (opts.translation_cell) {
    cell = *opts.translation_cell;
    const bool covers = cell.lo.x <= needed.lo.x && cell.lo.y <= needed.lo.y &&
                        cell.lo.z <= needed.lo.z && cell.hi.x >= needed.hi.x &&
                        cell.hi.y >= needed.hi.y && cell.hi.z >= needed.hi.z;
    if (!covers)
      throw InvalidInput(
          "graf_schenker_check: configuration larger than the translation cell; need at least "
          "[" + format_double(needed.lo.x) + "," + format_double(needed.hi.x) + "] x [" +
          format_double(needed.lo.y) + "," + format_double(needed.hi.y) + "] x [" +
          format_double(needed.lo.z) + "," + format_double(needed.hi.z) + "]");
  }

  // Pair table reused by every sample.
  std::vector<double> pair_coef;  // z_i z_j / |x_i - x_j| for i < j
  pair_coef.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(c.positions[i], c.positions[j]);
      if (d < kCoincidence)
        throw InvalidInput("graf_schenker_check: particles " + std::to_string(i) + " and " +
                           std::to_string(j) + " coincide");
      pair_coef.push_back(c.charges[i] * c.charges[j] / d);
    }

  std::vector<double> f(samples, 0.0);
  const RigidMotion g0_local = g0;  // copy for capture
  parallel_for(samples, opts.threads, [&](std::size_t idx) {
    Rng rng(derive_seed(seed, idx));
    RigidMotion g = sample_haar_cell(cell.lo, cell.hi, rng);
    // World faces of g(ell * simplex_domain): n_w = R_g R_0 n, offset
    // accumulates both motions.
    const Mat3 R = to_matrix((g.q * g0_local.q).normalized());
    const Vec3 off = g.u + rotate(g.q, g0_local.u * ell);
    std::array<Vec3, 4> wn;
    std::array<double, 4> wc;
    for (int k = 0; k < 4; ++k) {
      wn[k] = R * base_faces[static_cast<std::size_t>(k)].n;
      wc[k] = tile_scale * base_faces[static_cast<std::size_t>(k)].c + dot(wn[k], off);
    }
    std::vector<bool> in(n);
    std::size_t n_in = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3& p = c.positions[i];
      bool inside = true;
      for (int k = 0; k < 4; ++k)
        if (dot(wn[k], p) >= wc[k]) {
          inside = false;
          break;
        }
      in[i] = inside;
      n_in += inside;
    }
    if (n_in < 2) return;
    double sum = 0;
    std::size_t pair_idx = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++pair_idx)
        if (in[i] && in[j]) sum += pair_coef[pair_idx];
    f[idx] = sum;
  });

  const SampleStats st = sample_stats(f);
  const double haar_factor = cell.volume() / tile_vol;

  GSCheckReport rep;
  rep.lhs = lhs;
  rep.rhs_mean = haar_factor * st.mean;
  rep.rhs_stderr = haar_factor * st.stderr_;
  rep.implied_constant = zsq > 0 ? (lhs - rep.rhs_mean) * ell / zsq : 0.0;
  rep.samples = samples;
  rep.ell = ell;
  rep.seed = seed;
  rep.c_ref = opts.c_ref;
  rep.holds = lhs >= rep.rhs_mean - opts.c_ref / ell * zsq - 3.0 * rep.rhs_stderr;
  return rep;
}

}  // namespace tlim
