#include "tlim/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "tlim/csv.hpp"
#include "tlim/errors.hpp"

namespace tlim {

std::string command_name(CommandKind k) {
  switch (k) {
    case CommandKind::VerifyGs: return "verify-gs";
    case CommandKind::VerifyBaxter: return "verify-baxter";
    case CommandKind::Regularity: return "regularity";
    case CommandKind::SpectralSuite: return "spectral-suite";
    case CommandKind::Ssa: return "ssa";
    case CommandKind::Converge: return "converge";
    case CommandKind::Assumptions: return "assumptions";
    case CommandKind::GeneralDomains: return "general-domains";
    case CommandKind::Chain: return "chain";
  }
  return "?";
}

Domain DomainSpec::build() const {
  switch (tag) {
    case Tag::Ball: return Domain::ball(a, s);
    case Tag::Box: return Domain::box(a, b);
    case Tag::Cube: return Domain::cube(a, s);
    case Tag::Polytope: return Domain::polytope(faces);
    case Tag::Simplex: {
      Simplex base;
      base.v = {Vec3{0, 0, 0} - Vec3{0.75, 0.5, 0.25}, Vec3{1, 0, 0} - Vec3{0.75, 0.5, 0.25},
                Vec3{1, 1, 0} - Vec3{0.75, 0.5, 0.25}, Vec3{1, 1, 1} - Vec3{0.75, 0.5, 0.25}};
      return Domain::simplex_image(base, {a, rot.normalized()}, s);
    }
  }
  throw InvalidInput("unknown domain tag");
}

namespace {

struct Entry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

struct Block {
  std::string name;
  std::size_t line = 0;
  std::vector<Entry> entries;
};

std::string trim(std::string s) {
  const auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

std::vector<Block> tokenize(std::string_view text, std::vector<std::string>& errors) {
  std::vector<Block> blocks;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back("line " + std::to_string(lineno) + ": malformed block header '" + line +
                         "'");
        continue;
      }
      blocks.push_back({trim(line.substr(1, line.size() - 2)), lineno, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                       line + "'");
      continue;
    }
    if (blocks.empty()) {
      errors.push_back("line " + std::to_string(lineno) + ": key outside of any [block]");
      continue;
    }
    blocks.back().entries.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno});
  }
  return blocks;
}

bool parse_double(std::string_view s, double& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  const auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e;
}

bool parse_int(std::string_view s, long& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  const auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e;
}

// Per-block field reader: range checks, consumed-key tracking, and full
// error accumulation.
class Fields {
 public:
  Fields(const Block& block, std::vector<std::string>& errors)
      : block_(block), errors_(errors) {}

  std::string where(const Entry& e) const {
    return "line " + std::to_string(e.line) + " [" + block_.name + "] " + e.key;
  }

  const Entry* find(const std::string& key) {
    const Entry* found = nullptr;
    for (const auto& e : block_.entries)
      if (e.key == key) {
        if (found)
          errors_.push_back(where(e) + ": duplicate key");
        found = &e;
      }
    if (found) used_.push_back(key);
    return found;
  }

  std::vector<const Entry*> find_all(const std::string& key) {
    std::vector<const Entry*> out;
    for (const auto& e : block_.entries)
      if (e.key == key) out.push_back(&e);
    if (!out.empty()) used_.push_back(key);
    return out;
  }

  void real(const std::string& key, double& slot, double lo, double hi) {
    if (const Entry* e = find(key)) {
      double v;
      if (!parse_double(e->value, v))
        errors_.push_back(where(*e) + ": not a number: '" + e->value + "'");
      else if (v < lo || v > hi)
        errors_.push_back(where(*e) + ": value " + e->value + " out of range [" +
                          format_double(lo) + ", " + format_double(hi) + "]");
      else
        slot = v;
    }
  }

  void integer(const std::string& key, long& slot, long lo, long hi) {
    if (const Entry* e = find(key)) {
      long v;
      if (!parse_int(e->value, v))
        errors_.push_back(where(*e) + ": not an integer: '" + e->value + "'");
      else if (v < lo || v > hi)
        errors_.push_back(where(*e) + ": value " + e->value + " out of range [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
      else
        slot = v;
    }
  }

  void integer(const std::string& key, int& slot, long lo, long hi) {
    long v = slot;
    integer(key, v, lo, hi);
    slot = static_cast<int>(v);
  }

  void seed(const std::string& key, std::uint64_t& slot) {
    if (const Entry* e = find(key)) {
      std::uint64_t v;
      const char* b = e->value.data();
      const char* end = b + e->value.size();
      const auto res = std::from_chars(b, end, v);
      if (res.ec != std::errc() || res.ptr != end)
        errors_.push_back(where(*e) + ": not an unsigned integer: '" + e->value + "'");
      else
        slot = v;
    }
  }

  void text(const std::string& key, std::string& slot) {
    if (const Entry* e = find(key)) slot = e->value;
  }

  void boolean(const std::string& key, bool& slot) {
    if (const Entry* e = find(key)) {
      if (e->value == "true" || e->value == "1")
        slot = true;
      else if (e->value == "false" || e->value == "0")
        slot = false;
      else
        errors_.push_back(where(*e) + ": expected true/false, got '" + e->value + "'");
    }
  }

  void real_list(const std::string& key, std::vector<double>& slot, double lo, double hi,
                 std::size_t min_count = 1) {
    if (const Entry* e = find(key)) {
      std::vector<double> vals;
      std::istringstream ss(e->value);
      std::string tok;
      bool ok = true;
      while (ss >> tok) {
        double v;
        if (!parse_double(tok, v)) {
          errors_.push_back(where(*e) + ": not a number: '" + tok + "'");
          ok = false;
          break;
        }
        if (v < lo || v > hi) {
          errors_.push_back(where(*e) + ": value " + tok + " out of range [" +
                            format_double(lo) + ", " + format_double(hi) + "]");
          ok = false;
          break;
        }
        vals.push_back(v);
      }
      if (ok && vals.size() < min_count)
        errors_.push_back(where(*e) + ": needs at least " + std::to_string(min_count) +
                          " value(s)");
      else if (ok)
        slot = std::move(vals);
    }
  }

  bool vec3(const std::string& key, Vec3& slot) {
    if (const Entry* e = find(key)) {
      std::vector<double> vals;
      std::istringstream ss(e->value);
      std::string tok;
      while (ss >> tok) {
        double v;
        if (!parse_double(tok, v)) {
          errors_.push_back(where(*e) + ": not a number: '" + tok + "'");
          return false;
        }
        vals.push_back(v);
      }
      if (vals.size() != 3) {
        errors_.push_back(where(*e) + ": expected 3 numbers");
        return false;
      }
      slot = {vals[0], vals[1], vals[2]};
      return true;
    }
    return false;
  }

  void finish() {
    for (const auto& e : block_.entries) {
      if (std::find(used_.begin(), used_.end(), e.key) == used_.end())
        errors_.push_back(where(e) + ": unknown key");
    }
  }

 private:
  const Block& block_;
  std::vector<std::string>& errors_;
  std::vector<std::string> used_;
};

void parse_model_block(const Block& b, ScreenedCrystalParams& m,
                       std::vector<std::string>& errors) {
  Fields f(b, errors);
  f.real("radius", m.radius, 1e-6, 0.5);
  f.real("kinetic_const", m.kinetic_const, 0, 1e9);
  f.real("penalty", m.penalty, 0, 1e9);
  f.finish();
}

void parse_domain_block(const Block& b, std::vector<DomainSpec>& out,
                        std::vector<std::string>& errors) {
  Fields f(b, errors);
  DomainSpec spec;
  std::string shape = "ball";
  f.text("shape", shape);
  if (shape == "ball") {
    spec.tag = DomainSpec::Tag::Ball;
    f.vec3("center", spec.a);
    spec.s = 1;
    f.real("radius", spec.s, 1e-9, 1e9);
  } else if (shape == "box") {
    spec.tag = DomainSpec::Tag::Box;
    spec.a = {0, 0, 0};
    spec.b = {1, 1, 1};
    f.vec3("lo", spec.a);
    f.vec3("hi", spec.b);
  } else if (shape == "cube") {
    spec.tag = DomainSpec::Tag::Cube;
    f.vec3("center", spec.a);
    spec.s = 1;
    f.real("side", spec.s, 1e-9, 1e9);
  } else if (shape == "polytope") {
    spec.tag = DomainSpec::Tag::Polytope;
    for (const Entry* e : f.find_all("face")) {
      std::istringstream ss(e->value);
      std::vector<double> vals;
      std::string tok;
      bool ok = true;
      while (ss >> tok) {
        double v;
        if (!parse_double(tok, v)) {
          errors.push_back(f.where(*e) + ": not a number: '" + tok + "'");
          ok = false;
          break;
        }
        vals.push_back(v);
      }
      if (ok && vals.size() != 4) {
        errors.push_back(f.where(*e) + ": expected 'nx ny nz c'");
        ok = false;
      }
      if (ok) spec.faces.push_back({{vals[0], vals[1], vals[2]}, vals[3]});
    }
    if (spec.faces.size() < 4)
      errors.push_back("line " + std::to_string(b.line) +
                       " [domain]: polytope needs at least 4 'face =' lines");
  } else if (shape == "simplex") {
    spec.tag = DomainSpec::Tag::Simplex;
    spec.s = 1;
    f.real("scale", spec.s, 1e-9, 1e9);
    f.vec3("translate", spec.a);
    if (const Entry* e = f.find("rotate")) {
      std::istringstream ss(e->value);
      std::vector<double> vals;
      std::string tok;
      while (ss >> tok) {
        double v;
        if (!parse_double(tok, v)) break;
        vals.push_back(v);
      }
      if (vals.size() != 4)
        errors.push_back(f.where(*e) + ": expected 4 quaternion components 'w x y z'");
      else
        spec.rot = Quat{vals[0], vals[1], vals[2], vals[3]};
    }
  } else {
    errors.push_back("line " + std::to_string(b.line) + " [domain]: unknown shape '" + shape +
                     "' (ball | box | cube | polytope | simplex)");
    f.finish();
    return;
  }
  f.finish();
  out.push_back(std::move(spec));
}

void parse_sequence_block(const Block& b, std::vector<SequenceSpecCfg>& out,
                          std::vector<std::string>& errors) {
  Fields f(b, errors);
  SequenceSpecCfg seq;
  f.text("shape", seq.shape);
  if (seq.shape != "cube" && seq.shape != "ball" && seq.shape != "slab" &&
      seq.shape != "simplex")
    errors.push_back("line " + std::to_string(b.line) + " [sequence]: unknown shape '" +
                     seq.shape + "' (cube | ball | slab | simplex)");
  f.real_list("sizes", seq.sizes, 1e-9, 1e9, 1);
  f.vec3("center", seq.center);
  f.finish();
  if (seq.sizes.empty())
    errors.push_back("line " + std::to_string(b.line) + " [sequence]: missing 'sizes ='");
  else
    out.push_back(std::move(seq));
}

}  // namespace

ParseResult parse_config(std::string_view text) {
  ParseResult result;
  auto& errors = result.errors;
  const std::vector<Block> blocks = tokenize(text, errors);
  if (blocks.empty()) {
    errors.push_back("no [command] block found");
    return result;
  }

  ExperimentConfig cfg;
  const Block& head = blocks.front();
  bool kind_ok = true;
  if (head.name == "verify-gs") {
    cfg.kind = CommandKind::VerifyGs;
    cfg.params = GsParams{};
  } else if (head.name == "verify-baxter") {
    cfg.kind = CommandKind::VerifyBaxter;
    cfg.params = BaxterParams{};
  } else if (head.name == "regularity") {
    cfg.kind = CommandKind::Regularity;
    cfg.params = RegularityParams{};
  } else if (head.name == "spectral-suite") {
    cfg.kind = CommandKind::SpectralSuite;
    cfg.params = SpectralParams{};
  } else if (head.name == "ssa") {
    cfg.kind = CommandKind::Ssa;
    cfg.params = SsaParams{};
  } else if (head.name == "converge") {
    cfg.kind = CommandKind::Converge;
    cfg.params = ConvergeParams{};
  } else if (head.name == "assumptions") {
    cfg.kind = CommandKind::Assumptions;
    cfg.params = AssumptionsParams{};
  } else if (head.name == "general-domains") {
    cfg.kind = CommandKind::GeneralDomains;
    cfg.params = GeneralDomainsParams{};
  } else if (head.name == "chain") {
    cfg.kind = CommandKind::Chain;
    cfg.params = ChainParams{};
  } else {
    errors.push_back("line " + std::to_string(head.line) + ": unknown command '" + head.name +
                     "'");
    kind_ok = false;
  }
  if (!kind_ok) return result;

  Fields f(head, errors);
  f.seed("seed", cfg.seed);
  f.text("out", cfg.out);
  long threads = 1;
  f.integer("threads", threads, 0, 1024);
  cfg.threads = static_cast<unsigned>(threads);

  bool allow_model = false, allow_domains = false, allow_sequences = false;

  switch (cfg.kind) {
    case CommandKind::VerifyBaxter: {
      auto& p = std::get<BaxterParams>(cfg.params);
      f.integer("trials", p.trials, 1, 100000000);
      f.integer("electrons", p.electrons, 1, 64);
      f.real("box_halfwidth", p.box_halfwidth, 0.5, 100);
      f.real("min_separation", p.min_separation, 1e-9, 0.4);
      break;
    }
    case CommandKind::VerifyGs: {
      auto& p = std::get<GsParams>(cfg.params);
      f.integer("configs", p.configs, 1, 1000000);
      f.integer("max_charges", p.max_charges, 2, 64);
      f.real_list("ell_grid", p.ell_grid, 1e-6, 1e6);
      f.integer("samples", p.samples, 1000, 100000000);
      f.real("c_ref", p.c_ref, 0, 1e6);
      f.real("box_side", p.box_side, 0.1, 1e3);
      break;
    }
    case CommandKind::Regularity: {
      auto& p = std::get<RegularityParams>(cfg.params);
      f.real_list("t_grid", p.t_grid, 0, 1);
      f.integer("samples", p.samples, 10000, 1000000000);
      f.real("eps", p.eps, 1e-6, 0.999999);
      f.integer("directions", p.directions, 0, 100000);
      f.integer("cone_samples", p.cone_samples, 1, 100000000);
      allow_domains = true;
      break;
    }
    case CommandKind::SpectralSuite: {
      auto& p = std::get<SpectralParams>(cfg.params);
      f.real("box_side", p.box_side, 0.1, 1e3);
      f.real("beta", p.beta, 1e-6, 1e6);
      f.real("mu", p.mu, -1e6, 1e6);
      f.integer("lt_states", p.lt_states, 1, 100000);
      f.integer("lt_max_particles", p.lt_max_particles, 1, 64);
      break;
    }
    case CommandKind::Ssa: {
      auto& p = std::get<SsaParams>(cfg.params);
      f.integer("states", p.states, 1, 100000000);
      const auto dim_entries = f.find_all("dims");
      if (!dim_entries.empty()) {
        p.dims.clear();
        for (const Entry* e : dim_entries) {
          std::istringstream ss(e->value);
          std::vector<long> vals;
          std::string tok;
          bool ok = true;
          while (ss >> tok) {
            long v;
            if (!parse_int(tok, v) || v < 1 || v > 16) {
              errors.push_back(f.where(*e) + ": dims must be integers in [1,16], got '" + tok +
                               "'");
              ok = false;
              break;
            }
            vals.push_back(v);
          }
          if (ok && vals.size() != 3) {
            errors.push_back(f.where(*e) + ": expected 3 dimensions");
            ok = false;
          }
          if (ok) p.dims.push_back({vals[0], vals[1], vals[2]});
        }
      }
      break;
    }
    case CommandKind::Converge: {
      auto& p = std::get<ConvergeParams>(cfg.params);
      f.real_list("ell_grid", p.ell_grid, 1e-6, 1e6, 2);
      f.integer("g_samples", p.g_samples, 2, 1000000);
      f.real("tol_rel", p.tol_rel, 0, 1);
      allow_model = true;
      break;
    }
    case CommandKind::Assumptions: {
      auto& p = std::get<AssumptionsParams>(cfg.params);
      f.boolean("adversarial", p.adversarial);
      f.real_list("cube_sides", p.cube_sides, 1, 1e6);
      f.real_list("ball_radii", p.ball_radii, 1, 1e6);
      f.real_list("simplex_scales", p.simplex_scales, 1, 1e6);
      f.integer("samples", p.samples, 10, 100000000);
      f.real_list("ell_grid", p.ell_grid, 1e-6, 1e6);
      allow_model = true;
      break;
    }
    case CommandKind::GeneralDomains: {
      auto& p = std::get<GeneralDomainsParams>(cfg.params);
      if (const Entry* e = f.find("e_ref")) {
        double v;
        if (!parse_double(e->value, v))
          errors.push_back(f.where(*e) + ": not a number: '" + e->value + "'");
        else
          p.e_ref = v;
      }
      allow_model = true;
      allow_sequences = true;
      break;
    }
    case CommandKind::Chain: {
      auto& p = std::get<ChainParams>(cfg.params);
      f.real_list("big_grid", p.big_grid, 1, 1e6);
      f.real_list("ell_grid", p.ell_grid, 0.25, 1e6);
      f.integer("samples", p.samples, 10, 100000000);
      allow_model = true;
      break;
    }
  }
  f.finish();

  for (std::size_t i = 1; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    if (b.name == "model" && allow_model) {
      ScreenedCrystalParams* m = nullptr;
      if (auto* p = std::get_if<ConvergeParams>(&cfg.params)) m = &p->model;
      if (auto* p = std::get_if<AssumptionsParams>(&cfg.params)) m = &p->model;
      if (auto* p = std::get_if<GeneralDomainsParams>(&cfg.params)) m = &p->model;
      if (auto* p = std::get_if<ChainParams>(&cfg.params)) m = &p->model;
      parse_model_block(b, *m, errors);
    } else if (b.name == "domain" && allow_domains) {
      parse_domain_block(b, std::get<RegularityParams>(cfg.params).domains, errors);
    } else if (b.name == "sequence" && allow_sequences) {
      parse_sequence_block(b, std::get<GeneralDomainsParams>(cfg.params).sequences, errors);
    } else {
      errors.push_back("line " + std::to_string(b.line) + ": block [" + b.name +
                       "] is not valid for command '" + command_name(cfg.kind) + "'");
    }
  }

  if (cfg.kind == CommandKind::Regularity &&
      std::get<RegularityParams>(cfg.params).domains.empty())
    errors.push_back("regularity: needs at least one [domain] block");
  if (cfg.kind == CommandKind::GeneralDomains &&
      std::get<GeneralDomainsParams>(cfg.params).sequences.empty()) {
    // default corpus: the cube and ball families
    auto& p = std::get<GeneralDomainsParams>(cfg.params);
    p.sequences.push_back({"cube", {4, 8, 16, 32}, {0.5, 0.5, 0.5}});
    p.sequences.push_back({"ball", {4, 8, 12, 16}, {0.5, 0.5, 0.5}});
  }
  if (cfg.kind == CommandKind::Chain) {
    const auto& p = std::get<ChainParams>(cfg.params);
    bool any = false;
    for (double L : p.big_grid)
      for (double ell : p.ell_grid)
        if (ell <= L / 4) any = true;
    if (!any) errors.push_back("chain: no (L, ell) pair satisfies ell <= L/4");
  }

  if (errors.empty()) result.config = std::move(cfg);
  return result;
}

ParseResult parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParseResult r;
    r.errors.push_back("cannot open config file: " + path);
    return r;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += format_double(v[i]);
  }
  return s;
}

std::string vec3_str(const Vec3& v) {
  return format_double(v.x) + " " + format_double(v.y) + " " + format_double(v.z);
}

void emit_model(std::ostringstream& os, const ScreenedCrystalParams& m) {
  os << "\n[model]\n";
  os << "radius = " << format_double(m.radius) << "\n";
  os << "kinetic_const = " << format_double(m.kinetic_const) << "\n";
  os << "penalty = " << format_double(m.penalty) << "\n";
}

}  // namespace

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[" << command_name(c.kind) << "]\n";
  os << "seed = " << c.seed << "\n";
  if (!c.out.empty()) os << "out = " << c.out << "\n";
  os << "threads = " << c.threads << "\n";

  switch (c.kind) {
    case CommandKind::VerifyBaxter: {
      const auto& p = std::get<BaxterParams>(c.params);
      os << "trials = " << p.trials << "\n";
      os << "electrons = " << p.electrons << "\n";
      os << "box_halfwidth = " << format_double(p.box_halfwidth) << "\n";
      os << "min_separation = " << format_double(p.min_separation) << "\n";
      break;
    }
    case CommandKind::VerifyGs: {
      const auto& p = std::get<GsParams>(c.params);
      os << "configs = " << p.configs << "\n";
      os << "max_charges = " << p.max_charges << "\n";
      os << "ell_grid = " << join(p.ell_grid) << "\n";
      os << "samples = " << p.samples << "\n";
      os << "c_ref = " << format_double(p.c_ref) << "\n";
      os << "box_side = " << format_double(p.box_side) << "\n";
      break;
    }
    case CommandKind::Regularity: {
      const auto& p = std::get<RegularityParams>(c.params);
      os << "t_grid = " << join(p.t_grid) << "\n";
      os << "samples = " << p.samples << "\n";
      os << "eps = " << format_double(p.eps) << "\n";
      os << "directions = " << p.directions << "\n";
      os << "cone_samples = " << p.cone_samples << "\n";
      for (const auto& d : p.domains) {
        os << "\n[domain]\n";
        switch (d.tag) {
          case DomainSpec::Tag::Ball:
            os << "shape = ball\ncenter = " << vec3_str(d.a)
               << "\nradius = " << format_double(d.s) << "\n";
            break;
          case DomainSpec::Tag::Box:
            os << "shape = box\nlo = " << vec3_str(d.a) << "\nhi = " << vec3_str(d.b) << "\n";
            break;
          case DomainSpec::Tag::Cube:
            os << "shape = cube\ncenter = " << vec3_str(d.a)
               << "\nside = " << format_double(d.s) << "\n";
            break;
          case DomainSpec::Tag::Polytope:
            os << "shape = polytope\n";
            for (const auto& fc : d.faces)
              os << "face = " << vec3_str(fc.n) << " " << format_double(fc.c) << "\n";
            break;
          case DomainSpec::Tag::Simplex:
            os << "shape = simplex\nscale = " << format_double(d.s)
               << "\ntranslate = " << vec3_str(d.a) << "\nrotate = " << format_double(d.rot.w)
               << " " << format_double(d.rot.x) << " " << format_double(d.rot.y) << " "
               << format_double(d.rot.z) << "\n";
            break;
        }
      }
      break;
    }
    case CommandKind::SpectralSuite: {
      const auto& p = std::get<SpectralParams>(c.params);
      os << "box_side = " << format_double(p.box_side) << "\n";
      os << "beta = " << format_double(p.beta) << "\n";
      os << "mu = " << format_double(p.mu) << "\n";
      os << "lt_states = " << p.lt_states << "\n";
      os << "lt_max_particles = " << p.lt_max_particles << "\n";
      break;
    }
    case CommandKind::Ssa: {
      const auto& p = std::get<SsaParams>(c.params);
      os << "states = " << p.states << "\n";
      for (const auto& d : p.dims)
        os << "dims = " << d[0] << " " << d[1] << " " << d[2] << "\n";
      break;
    }
    case CommandKind::Converge: {
      const auto& p = std::get<ConvergeParams>(c.params);
      os << "ell_grid = " << join(p.ell_grid) << "\n";
      os << "g_samples = " << p.g_samples << "\n";
      os << "tol_rel = " << format_double(p.tol_rel) << "\n";
      emit_model(os, p.model);
      break;
    }
    case CommandKind::Assumptions: {
      const auto& p = std::get<AssumptionsParams>(c.params);
      os << "adversarial = " << (p.adversarial ? "true" : "false") << "\n";
      os << "cube_sides = " << join(p.cube_sides) << "\n";
      os << "ball_radii = " << join(p.ball_radii) << "\n";
      os << "simplex_scales = " << join(p.simplex_scales) << "\n";
      os << "samples = " << p.samples << "\n";
      os << "ell_grid = " << join(p.ell_grid) << "\n";
      emit_model(os, p.model);
      break;
    }
    case CommandKind::GeneralDomains: {
      const auto& p = std::get<GeneralDomainsParams>(c.params);
      if (p.e_ref) os << "e_ref = " << format_double(*p.e_ref) << "\n";
      for (const auto& s : p.sequences) {
        os << "\n[sequence]\n";
        os << "shape = " << s.shape << "\n";
        os << "sizes = " << join(s.sizes) << "\n";
        os << "center = " << vec3_str(s.center) << "\n";
      }
      emit_model(os, p.model);
      break;
    }
    case CommandKind::Chain: {
      const auto& p = std::get<ChainParams>(c.params);
      os << "big_grid = " << join(p.big_grid) << "\n";
      os << "ell_grid = " << join(p.ell_grid) << "\n";
      os << "samples = " << p.samples << "\n";
      emit_model(os, p.model);
      break;
    }
  }
  return os.str();
}

}  // namespace tlim
