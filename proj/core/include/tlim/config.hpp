#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tlim/geometry.hpp"
#include "tlim/models.hpp"

namespace tlim {

enum class CommandKind {
  VerifyGs,
  VerifyBaxter,
  Regularity,
  SpectralSuite,
  Ssa,
  Converge,
  Assumptions,
  GeneralDomains,
  Chain,
};

std::string command_name(CommandKind k);

// A [domain] block; buildable into a Domain.
struct DomainSpec {
  enum class Tag { Ball, Box, Cube, Polytope, Simplex } tag = Tag::Ball;
  Vec3 a{};                      // center / lo
  Vec3 b{};                      // hi (box)
  double s = 1;                  // radius / side / scale
  Quat rot{};                    // simplex rotation
  std::vector<Halfspace> faces;  // polytope

  Domain build() const;
};

// A [sequence] block of the general-domains command.
struct SequenceSpecCfg {
  std::string shape = "cube";  // cube | ball | slab | simplex
  std::vector<double> sizes;
  Vec3 center{0.5, 0.5, 0.5};
};

struct BaxterParams {
  long trials = 1000;
  int electrons = 20;
  double box_halfwidth = 3;
  double min_separation = 1e-3;
};

struct GsParams {
  long configs = 100;
  int max_charges = 20;
  std::vector<double> ell_grid{2, 4, 8};
  long samples = 10000;
  double c_ref = 10;
  double box_side = 4;
};

struct RegularityParams {
  std::vector<double> t_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  long samples = 100000;
  double eps = 0.1;
  long directions = 32;
  long cone_samples = 2000;
  std::vector<DomainSpec> domains;
};

struct SpectralParams {
  double box_side = 12;
  double beta = 1;
  double mu = 1;
  long lt_states = 50;
  int lt_max_particles = 20;
};

struct SsaParams {
  long states = 1000;
  std::vector<std::array<long, 3>> dims{{2, 2, 2}, {2, 3, 2}};
};

struct ConvergeParams {
  std::vector<double> ell_grid{4, 8, 16, 32};
  long g_samples = 50;
  double tol_rel = 0.01;
  ScreenedCrystalParams model;
};

struct AssumptionsParams {
  bool adversarial = false;
  std::vector<double> cube_sides{4, 8, 16, 32};
  std::vector<double> ball_radii{4, 8, 16};
  std::vector<double> simplex_scales{4, 8, 16, 32};
  long samples = 500;
  std::vector<double> ell_grid{2, 4, 8};
  ScreenedCrystalParams model;
};

struct GeneralDomainsParams {
  std::optional<double> e_ref;  // defaults to the model's known limit
  std::vector<SequenceSpecCfg> sequences;
  ScreenedCrystalParams model;
};

struct ChainParams {
  std::vector<double> big_grid{16, 32, 64};
  std::vector<double> ell_grid{2, 4, 8};
  long samples = 2000;
  ScreenedCrystalParams model;
};

using CommandParams =
    std::variant<BaxterParams, GsParams, RegularityParams, SpectralParams, SsaParams,
                 ConvergeParams, AssumptionsParams, GeneralDomainsParams, ChainParams>;

struct ExperimentConfig {
  CommandKind kind = CommandKind::Converge;
  std::uint64_t seed = 1;
  std::string out;  // artifact path prefix; defaults to the command name
  unsigned threads = 1;
  CommandParams params{ConvergeParams{}};
};

struct ParseResult {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> errors;  // every problem found, not just the first
};

// Line-oriented "key = value" blocks; the first block names the command.
ParseResult parse_config(std::string_view text);
ParseResult parse_config_file(const std::string& path);

// Canonical text with every effective value spelled out;
// parse(serialize(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& c);

}  // namespace tlim
