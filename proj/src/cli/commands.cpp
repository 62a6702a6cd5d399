#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "bnfkit/arith/diophantine.hpp"
#include "bnfkit/bnf/report.hpp"
#include "bnfkit/brick/brick.hpp"
#include "bnfkit/brick/rng.hpp"
#include "bnfkit/cli/cli.hpp"
#include "bnfkit/dynamics/families.hpp"
#include "bnfkit/dynamics/stability.hpp"
#include "bnfkit/genericity/bad_volume.hpp"
#include "bnfkit/genericity/bnf_map.hpp"
#include "bnfkit/genericity/rescale.hpp"
#include "bnfkit/polyalg/conversion.hpp"
#include "bnfkit/polyalg/json_io.hpp"
#include "bnfkit/polyalg/text_format.hpp"
#include "config.hpp"

#ifndef BNFKIT_VERSION
#define BNFKIT_VERSION "0.0.0"
#endif

namespace bnfkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Context {
  std::string command;
  fs::path config_dir;
  std::uint64_t seed = 1;
  int jobs = 1;
  fs::path out_dir;
  json resolved;
  std::vector<fs::path> written;
};

// ---------------------------------------------------------------------------
// Hamiltonian specification

struct Prepared {
  GradedPolynomial h;
  bool diagonalized = false;
  double residual = 0.0;
};

GradedPolynomial load_hamiltonian(Section s, const Context& ctx) {
  const int given = s.has("family") + s.has("terms") + s.has("file");
  if (given != 1) s.fail("family", "give exactly one of family, terms, file");
  GradedPolynomial h;
  if (s.has("family")) {
    const std::string name = s.string("family");
    FamilyParams defaults;
    try {
      defaults = family_defaults(name);
    } catch (const DomainError&) {
      std::string names;
      for (const auto& f : builtin_family_names()) names += (names.empty() ? "" : ", ") + f;
      s.fail("family", "unknown family '" + name + "' (known: " + names + ")");
    }
    Section params = s.sub("params");
    FamilyParams chosen;
    for (const auto& [k, v] : defaults) chosen[k] = params.number(k, v);
    params.finish();
    try {
      h = builtin_family(name, chosen);
    } catch (const DomainError& e) {
      throw ConfigError(s.path() + ".params: " + e.what());
    }
  } else {
    std::string text;
    if (s.has("terms")) {
      text = s.string("terms");
    } else {
      const fs::path file = ctx.config_dir / s.string("file");
      std::ifstream in(file);
      if (!in) s.fail("file", "cannot open " + file.string());
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    const std::int64_t dof = s.integer("dof", 0);
    try {
      h = dof > 0 ? parse_canonical_text(text, static_cast<int>(dof)) : parse_canonical_text(text);
    } catch (const Error& e) {
      s.fail(s.has("terms") ? "terms" : "file", e.what());
    }
  }
  s.finish();
  return h;
}

// Brings the quadratic part to ω·I by a linear symplectic change of
// variables when it is not diagonal already.
Prepared prepare(const GradedPolynomial& h) {
  Prepared p{h, false, 0.0};
  try {
    diagonal_frequency(h);
    return p;
  } catch (const PreconditionError&) {
  }
  const GradedPolynomial h2 = h.homogeneous_part(2);
  const QuadraticDiagonalization d = diagonalize_quadratic(h2);
  const GradedPolynomial moved = compose_linear(h, d.transform);
  const GradedPolynomial target = ActionPolynomial::linear(d.omega.values()).lift();
  const GradedPolynomial residual = moved.homogeneous_part(2) - target;
  for (const auto& [e, c] : residual.terms()) p.residual = std::max(p.residual, abs(c));
  p.h = moved - moved.homogeneous_part(2) + target;
  p.diagonalized = true;
  return p;
}

Section hamiltonian_section(const toml::table& root, Context& ctx) {
  const toml::node* n = root.get("hamiltonian");
  if (!n) throw ConfigError("hamiltonian: required table is missing");
  if (!n->is_table()) throw ConfigError("hamiltonian: expected a table");
  return Section(n->as_table(), "hamiltonian", ctx.resolved["hamiltonian"]);
}

// ---------------------------------------------------------------------------
// Output

json envelope(const Context& ctx, const std::string& schema) {
  return json{{"schema", schema}, {"tool", version_string()}, {"config", ctx.resolved}};
}

void write_file(Context& ctx, const std::string& name, const std::string& content) {
  fs::create_directories(ctx.out_dir);
  const fs::path path = ctx.out_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
  ctx.written.push_back(path);
}

void write_json(Context& ctx, const std::string& name, const json& j) { write_file(ctx, name, j.dump(2) + "\n"); }

// Independent uniform coefficients in [-scale, scale] for P_1..P_m.
ActionList<double> random_actions(SplitMix64& rng, int n, int m, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  ActionList<double> p;
  for (int k = 1; k <= m; ++k) {
    std::vector<double> c;
    for (std::size_t i = 0; i < homogeneous_exponents(n, k).size(); ++i) c.push_back(u(rng));
    p.push_back(ActionPolynomial::from_coefficient_vector(n, k, c));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Commands

void cmd_bnf(const toml::table& root, Section s, Context& ctx) {
  const int m = static_cast<int>(s.integer("m"));
  if (m < 1) s.fail("m", "must be >= 1");
  const int trunc = static_cast<int>(s.integer("trunc", 0));
  if (trunc != 0 && trunc < 2 * m) s.fail("trunc", "must be 0 (default 2m+2) or >= 2m");
  const int precision = static_cast<int>(s.integer("precision", 0));
  if (precision != 0 && precision < 17) s.fail("precision", "must be 0 (double) or >= 17 decimal digits");
  const bool generators = s.boolean("generators", false);
  s.finish();
  const Prepared p = prepare(load_hamiltonian(hamiltonian_section(root, ctx), ctx));
  NormalFormResult nf;
  if (precision > 0) {
    ScopedPrecision guard(static_cast<unsigned>(precision));
    nf = to_double_result(normalize(convert_polynomial<ExtendedReal>(p.h), m, {trunc}));
  } else {
    nf = normalize(p.h, m, {trunc});
  }
  json j = envelope(ctx, "bnfkit.cli.bnf/1");
  j["diagonalized"] = p.diagonalized;
  j["diagonalization_residual"] = p.residual;
  j["result"] = normal_form_to_json(nf, generators);
  write_json(ctx, "bnf.json", j);
}

void cmd_dioph(const toml::table& root, Section s, Context& ctx) {
  const double tau = s.number("tau", 1.0);
  if (!(tau >= 0.0)) s.fail("tau", "must be >= 0");
  const int k_max = static_cast<int>(s.integer("k_max", 50));
  if (k_max < 1 || k_max > 100000) s.fail("k_max", "must lie in [1, 100000]");
  std::vector<double> omega;
  if (s.has("omega")) {
    omega = s.numbers("omega");
    if (omega.empty() || omega.size() > static_cast<std::size_t>(kMaxDof)) s.fail("omega", "needs 1..4 entries");
  }
  s.finish();
  if (omega.empty()) {
    if (!root.contains("hamiltonian")) s.fail("omega", "give omega or a [hamiltonian] table");
    omega = diagonal_frequency(prepare(load_hamiltonian(hamiltonian_section(root, ctx), ctx)).h).values();
  }
  json j = envelope(ctx, "bnfkit.cli.dioph/1");
  j["result"] = diophantine_to_json(diophantine_gamma(Frequency(omega), tau, k_max, ctx.jobs));
  write_json(ctx, "dioph.json", j);
}

void cmd_sample(const toml::table&, Section s, Context& ctx) {
  const int n = static_cast<int>(s.integer("n"));
  if (n < 1 || n > kMaxDof) s.fail("n", "must lie in [1, 4]");
  const int m = static_cast<int>(s.integer("m"));
  if (m < 1 || m > 30) s.fail("m", "must lie in [1, 30]");
  s.finish();
  json j = envelope(ctx, "bnfkit.cli.sample/1");
  j["result"] = brick_to_json(sample_brick(n, m, ctx.seed));
  write_json(ctx, "sample.json", j);
}

void cmd_bnfmap(const toml::table& root, Section s, Context& ctx) {
  const int m = static_cast<int>(s.integer("m"));
  if (m < 1 || m > 8) s.fail("m", "must lie in [1, 8]");
  const int cases = static_cast<int>(s.integer("cases", 5));
  if (cases < 1) s.fail("cases", "must be >= 1");
  const double scale = s.number("scale", 0.05);
  if (!(scale > 0.0)) s.fail("scale", "must be positive");
  const double fd_step = s.number("fd_step", 1e-4);
  if (!(fd_step > 0.0)) s.fail("fd_step", "must be positive");
  const int precision = static_cast<int>(s.integer("precision", 0));
  if (precision != 0 && precision < 17) s.fail("precision", "must be 0 (double) or >= 17 decimal digits");
  s.finish();
  const Prepared p = prepare(load_hamiltonian(hamiltonian_section(root, ctx), ctx));
  const int n = p.h.dof();
  json rows = json::array();
  bool all_lower = true;
  double max_translation = 0.0, max_det = 0.0;
  for (int c = 0; c < cases; ++c) {
    SplitMix64 rng = substream(ctx.seed, static_cast<std::uint64_t>(c));
    const ActionList<double> p0 = random_actions(rng, n, m, scale);
    json tri = json::array();
    for (int jdeg = 1; jdeg <= m; ++jdeg) {
      const ActionPolynomial repl = random_actions(rng, n, m, scale)[static_cast<std::size_t>(jdeg - 1)];
      const auto r = triangularity_check(p.h, m, p0, jdeg, repl);
      all_lower = all_lower && r.lower_unchanged;
      max_translation = std::max(max_translation, r.translation_deviation);
      tri.push_back({{"j", jdeg}, {"lower_unchanged", r.lower_unchanged},
                     {"translation_deviation", r.translation_deviation}});
    }
    JacobianReport jr;
    if (precision > 0) {
      ScopedPrecision guard(static_cast<unsigned>(precision));
      ActionList<ExtendedReal> pe;
      for (const auto& q : p0) pe.push_back(convert_polynomial<ExtendedReal>(q));
      jr = jacobian_unit_check(convert_polynomial<ExtendedReal>(p.h), m, pe, fd_step, ctx.jobs);
    } else {
      jr = jacobian_unit_check(p.h, m, p0, fd_step, ctx.jobs);
    }
    max_det = std::max({max_det, std::abs(jr.determinant - 1.0), std::abs(jr.determinant_half - 1.0)});
    json pj = json::array();
    for (const auto& q : p0) pj.push_back(action_polynomial_to_json(q));
    rows.push_back({{"case", c}, {"P", pj}, {"triangularity", tri}, {"jacobian", jacobian_to_json(jr)}});
  }
  json j = envelope(ctx, "bnfkit.cli.bnfmap/1");
  j["diagonalized"] = p.diagonalized;
  j["cases"] = rows;
  j["summary"] = {{"all_lower_unchanged", all_lower},
                  {"max_translation_deviation", max_translation},
                  {"max_abs_det_minus_one", max_det}};
  write_json(ctx, "bnfmap.json", j);
}

void cmd_rescale(const toml::table& root, Section s, Context& ctx) {
  const double domain = s.number("s", 0.5);
  require_range(s, "s", domain, 0.0, 1.0);
  const double r_m = s.number("r_m", 1.0);
  require_range(s, "r_m", r_m, 0.0, 1.0, true);
  int m = 0;
  if (s.has("m")) {
    m = static_cast<int>(s.integer("m"));
    if (m < 1) s.fail("m", "must be >= 1");
  } else {
    if (!(r_m < 1.0)) s.fail("m", "give m, or r_m < 1 to derive it from the order schedule");
    const double c = s.number("c", 1.0), a = s.number("a", 1.0);
    if (!(c > 0.0)) s.fail("c", "must be positive");
    if (!(a > 0.0)) s.fail("a", "must be positive");
    m = order_schedule(r_m, c, a);
    ctx.resolved["rescale"]["m_derived"] = m;
  }
  double s_m = 0.0;
  if (s.has("s_m")) {
    s_m = s.number("s_m");
    require_range(s, "s_m", s_m, 0.0, domain, true);
  } else {
    if (!s.has("gamma")) s.fail("s_m", "give s_m, or gamma (and tau) for the radius schedule");
    const double gamma = s.number("gamma"), tau = s.number("tau", 1.0);
    if (!(gamma > 0.0)) s.fail("gamma", "must be positive");
    if (!(tau > 0.0)) s.fail("tau", "must be positive");
    s_m = radius_schedule(gamma, tau, m, domain);
    ctx.resolved["rescale"]["s_m_derived"] = s_m;
  }
  s.finish();
  const Prepared p = prepare(load_hamiltonian(hamiltonian_section(root, ctx), ctx));
  const NormalFormResult nf = normalize(p.h, m);
  const RescaleContext rc = make_rescale_context(p.h.dof(), m, s_m, r_m, domain);
  const RescaledHamiltonian r = rescale(nf, s_m, domain);
  json norms = json::array();
  for (int k = 1; k <= m; ++k)
    norms.push_back({{"k", k},
                     {"before", bombieri_norm(nf.invariants[static_cast<std::size_t>(k - 1)], k)},
                     {"after", bombieri_norm(r.integrable.homogeneous_part(k), k)},
                     {"factor", std::pow(s_m, 2 * k - 2)}});
  json j = envelope(ctx, "bnfkit.cli.rescale/1");
  j["diagonalized"] = p.diagonalized;
  j["context"] = {{"s_m", rc.s_m}, {"r_m", rc.r_m}, {"m", rc.m}, {"D_m", rc.d_m}};
  j["integrable"] = action_polynomial_to_json(r.integrable);
  j["bombieri_norms"] = norms;
  j["remainder_sup_bound_at_r_m"] = r.remainder.is_zero() ? 0.0 : sup_norm_bound(r.remainder, r_m);
  j["hamiltonian_text"] = to_canonical_text(r.hamiltonian);
  write_json(ctx, "rescale.json", j);
}

void cmd_badvol(const toml::table&, Section s, Context& ctx) {
  const int n = static_cast<int>(s.integer("n"));
  if (n < 1 || n > kMaxDof) s.fail("n", "must lie in [1, 4]");
  std::vector<ActionPolynomial::Term> terms;
  json resolved_terms = json::array();
  if (const toml::node* t = s.node("terms")) {
    const toml::array* arr = t->as_array();
    if (!arr) s.fail("terms", "expected an array of {l = [...], c = ...} tables");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string at = "terms[" + std::to_string(i) + "]";
      const toml::table* tt = arr->get(i)->as_table();
      if (!tt) s.fail(at, "expected a table");
      json entry;
      Section e(tt, s.path() + "." + at, entry);
      const auto l = e.integers("l");
      const double c = e.number("c");
      e.finish();
      if (static_cast<int>(l.size()) != n) e.fail("l", "needs n entries");
      std::vector<int> slots;
      for (auto v : l) {
        if (v < 0 || v > 60) e.fail("l", "exponents must lie in [0, 60]");
        slots.push_back(static_cast<int>(v));
      }
      terms.emplace_back(Exponent::from(slots), c);
      resolved_terms.push_back(entry);
    }
  }
  ctx.resolved["badvol"]["terms"] = resolved_terms;
  const double rho = s.number("rho");
  require_range(s, "rho", rho, 0.0, 1.0);
  std::vector<double> eps;
  if (s.has("eps")) {
    eps = s.numbers("eps");
  } else {
    const double lo = s.number("eps_min", 1e-6), hi = s.number("eps_max", 1e-3);
    const int count = static_cast<int>(s.integer("eps_points", 7));
    if (!(lo > 0.0 && hi > lo)) s.fail("eps_max", "need 0 < eps_min < eps_max");
    if (count < 2) s.fail("eps_points", "must be >= 2");
    for (int i = 0; i < count; ++i) eps.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  }
  if (eps.empty()) s.fail("eps", "must not be empty");
  for (std::size_t i = 0; i < eps.size(); ++i)
    if (!(eps[i] > 0.0)) s.fail("eps", "entry [" + std::to_string(i) + "] must be positive");
  VolumeOptions opt;
  opt.samples = static_cast<int>(s.integer("samples", 20000));
  if (opt.samples < 1) s.fail("samples", "must be >= 1");
  opt.grid = static_cast<int>(s.integer("grid", 41));
  if (opt.grid < 1 || opt.grid > 2001) s.fail("grid", "must lie in [1, 2001]");
  s.finish();
  opt.seed = ctx.seed;
  opt.jobs = ctx.jobs;
  const auto rows = volume_sweep(ActionPolynomial(n, terms), rho, eps, opt);
  std::ostringstream csv;
  csv << "eps,rho,samples,bad_fraction,ci_low,ci_high\n";
  for (const auto& r : rows)
    csv << format_double(r.eps) << ',' << format_double(r.rho) << ',' << r.samples << ','
        << format_double(r.bad_fraction) << ',' << format_double(r.ci_low) << ',' << format_double(r.ci_high)
        << '\n';
  write_file(ctx, "badvol.csv", csv.str());
  const PowerLawFit fit = fit_volume_power_law(rows);
  json j = envelope(ctx, "bnfkit.cli.badvol/1");
  j["ball_volume"] = ball_volume(n, rho);
  j["fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"slope_stderr", fit.slope_stderr},
              {"points", fit.points}};
  write_json(ctx, "badvol.config.json", j);
}

void cmd_drift(const toml::table& root, Section s, Context& ctx) {
  const double rho = s.number("rho");
  require_range(s, "rho", rho, 0.0, 1.0);
  const int random_dirs = static_cast<int>(s.integer("random_directions", 0));
  if (random_dirs < 0) s.fail("random_directions", "must be >= 0");
  const int direction = static_cast<int>(s.integer("direction", 0));
  IntegrateOptions opt;
  opt.dt = s.number("dt", 1e-2);
  if (!(opt.dt > 0.0)) s.fail("dt", "must be positive");
  opt.t_max = s.number("t_max");
  if (!(opt.t_max >= opt.dt)) s.fail("t_max", "must be >= dt");
  opt.record_stride = static_cast<int>(s.integer("record_stride", 1));
  if (opt.record_stride < 1) s.fail("record_stride", "must be >= 1");
  opt.escape_radius = s.number("escape_radius", 2.0);
  if (!(opt.escape_radius > 0.0)) s.fail("escape_radius", "must be positive");
  s.finish();
  const GradedPolynomial h = load_hamiltonian(hamiltonian_section(root, ctx), ctx);
  const auto pts = initial_conditions(h.dof(), rho, random_dirs, ctx.seed);
  if (direction < 0 || direction >= static_cast<int>(pts.size()))
    s.fail("direction", "must lie in [0, " + std::to_string(pts.size() - 1) + "]");
  const TrajectoryRecord rec = integrate(h, pts[static_cast<std::size_t>(direction)], opt);
  std::ostringstream csv;
  write_trajectory_csv(csv, rec);
  write_file(ctx, "drift.csv", csv.str());
  const Drift d = action_drift(rec);
  json j = envelope(ctx, "bnfkit.cli.drift/1");
  j["scheme"] = rec.scheme_id;
  j["summary"] = {{"max_drift", d.max_drift}, {"time", d.time}, {"escaped", rec.escaped},
                  {"records", rec.size()}};
  write_json(ctx, "drift.config.json", j);
}

void cmd_scaling(const toml::table& root, Section s, Context& ctx) {
  const std::vector<double> rhos = s.numbers("rhos");
  if (rhos.empty()) s.fail("rhos", "must not be empty");
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    if (!(rhos[i] > 0.0 && rhos[i] < 1.0)) s.fail("rhos", "entry [" + std::to_string(i) + "] must lie in (0, 1)");
    if (i > 0 && !(rhos[i] < rhos[i - 1])) s.fail("rhos", "must be strictly decreasing");
  }
  ScalingOptions opt;
  opt.c = s.number("C", 1.5);
  if (!(opt.c > 1.0)) s.fail("C", "must exceed 1");
  opt.t_max = s.number("t_max");
  opt.dt = s.number("dt", 1e-2);
  if (!(opt.dt > 0.0)) s.fail("dt", "must be positive");
  if (!(opt.t_max >= opt.dt)) s.fail("t_max", "must be >= dt");
  opt.random_directions = static_cast<int>(s.integer("random_directions", 2));
  if (opt.random_directions < 0) s.fail("random_directions", "must be >= 0");
  const int seeds = static_cast<int>(s.integer("seeds", 1));
  if (seeds < 1) s.fail("seeds", "must be >= 1");
  opt.escape_radius = s.number("escape_radius", 2.0);
  if (!(opt.escape_radius > 0.0)) s.fail("escape_radius", "must be positive");
  s.finish();
  opt.seeds.clear();
  for (int i = 0; i < seeds; ++i) opt.seeds.push_back(ctx.seed + static_cast<std::uint64_t>(i));
  opt.jobs = ctx.jobs;
  const GradedPolynomial h = load_hamiltonian(hamiltonian_section(root, ctx), ctx);
  const StabilityCurve curve = scaling_experiment(h, rhos, opt);
  std::ostringstream csv;
  write_curve_csv(csv, curve);
  write_file(ctx, "scaling.csv", csv.str());
  write_json(ctx, "scaling.config.json", envelope(ctx, "bnfkit.cli.scaling/1"));
  json fit = fit_to_json(curve);
  fit["tool"] = version_string();
  fit["config"] = ctx.resolved;
  write_json(ctx, "scaling_fit.json", fit);
}

using Handler = std::function<void(const toml::table&, Section, Context&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"bnf", cmd_bnf},         {"dioph", cmd_dioph}, {"sample", cmd_sample},   {"bnfmap", cmd_bnfmap},
      {"rescale", cmd_rescale}, {"badvol", cmd_badvol}, {"drift", cmd_drift}, {"scaling", cmd_scaling}};
  return h;
}

// Key names per section, used to reject typos in sections the current
// command does not read. The command's own section is validated in full.
const std::map<std::string, std::set<std::string>>& section_keys() {
  static const std::map<std::string, std::set<std::string>> k{
      {"hamiltonian", {"family", "params", "terms", "file", "dof"}},
      {"bnf", {"m", "trunc", "precision", "generators"}},
      {"dioph", {"omega", "tau", "k_max"}},
      {"sample", {"n", "m"}},
      {"bnfmap", {"m", "cases", "scale", "fd_step", "precision"}},
      {"rescale", {"m", "s", "s_m", "r_m", "gamma", "tau", "c", "a"}},
      {"badvol", {"n", "terms", "rho", "eps", "eps_min", "eps_max", "eps_points", "samples", "grid"}},
      {"drift", {"rho", "direction", "random_directions", "dt", "t_max", "record_stride", "escape_radius"}},
      {"scaling", {"rhos", "C", "t_max", "dt", "random_directions", "seeds", "escape_radius"}}};
  return k;
}

}  // namespace

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : handlers()) out.push_back(k);
  return out;
}

std::string version_string() { return std::string("bnfkit ") + BNFKIT_VERSION; }

std::vector<fs::path> run(const std::string& command, const fs::path& config, const Overrides& overrides) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) throw ConfigError("unknown command '" + command + "'");
  toml::table root;
  try {
    root = toml::parse_file(config.string());
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << config.string() << ":" << e.source().begin.line << ": " << e.description();
    throw ConfigError(msg.str());
  }
  Context ctx;
  ctx.command = command;
  ctx.config_dir = config.parent_path();
  ctx.out_dir = overrides.out_dir;
  ctx.resolved = json::object();
  ctx.resolved["command"] = command;

  // Every key of the file must belong to the schema: unknown top-level keys
  // are rejected here, and each command section rejects its own.
  for (const auto& [k, v] : root) {
    const std::string key(k.str());
    if (key == "seed" || key == "jobs") continue;
    const auto schema = section_keys().find(key);
    if (schema == section_keys().end()) throw ConfigError(key + ": unknown key");
    if (!v.is_table()) throw ConfigError(key + ": expected a table");
    for (const auto& [sk, sv] : *v.as_table())
      if (!schema->second.count(std::string(sk.str())))
        throw ConfigError(key + "." + std::string(sk.str()) + ": unknown key");
  }
  Section top(&root, "", ctx.resolved);
  const std::int64_t seed = top.integer("seed", 1);
  if (seed < 0) top.fail("seed", "must be >= 0");
  const std::int64_t jobs = top.integer("jobs", 1);
  if (jobs < 1) top.fail("jobs", "must be >= 1");
  ctx.seed = overrides.seed.value_or(static_cast<std::uint64_t>(seed));
  ctx.jobs = overrides.jobs.value_or(static_cast<int>(jobs));
  if (ctx.jobs < 1) throw ConfigError("--jobs: must be >= 1");
  ctx.resolved["seed"] = ctx.seed;
  ctx.resolved["jobs"] = ctx.jobs;

  const toml::node* own = root.get(command);
  it->second(root, Section(own ? own->as_table() : nullptr, command, ctx.resolved[command]), ctx);
  return ctx.written;
}

}  // namespace bnfkit::cli
