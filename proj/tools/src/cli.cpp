#include "hycoalg/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hycoalg/expr.hpp"
#include "hycoalg/io.hpp"
#include "hycoalg/systems.hpp"

namespace hycoalg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string command;
  std::string system;
  std::string system_file;
  std::vector<std::string> params;
  std::string init;
  std::string mode;
  std::optional<double> dt_max, event_tol, zeno_dt_min, horizon;
  std::optional<std::size_t> max_jumps;
  std::optional<std::size_t> interior_samples, guard_samples;
  std::uint64_t seed = 1;
  std::string out;
  std::string source;
  std::string target = "bouncing-ball";
  double phi_scale = 1.0;
  std::string manifest;
};

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ValidationError(what + ": '" + text + "' is not a number");
  return v;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError("--param expects k=v, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    out[key] = parse_number(item.substr(eq + 1), "parameter '" + key + "'");
  }
  return out;
}

Vec parse_init(const std::string& csv, std::size_t dim) {
  std::vector<double> vals;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    const auto piece = csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    vals.push_back(parse_number(piece, "--init"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (vals.size() != dim) {
    throw ValidationError("--init has " + std::to_string(vals.size()) + " entries, the system has dimension " +
                          std::to_string(dim));
  }
  return Eigen::Map<const Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

/// A registry system or a JSON-described one.
struct Resolved {
  std::string name;
  std::map<std::string, double> params;
  std::shared_ptr<const HCoalgebra> coalgebra;
  std::optional<BuiltSystem> built;
  TaggedPoint init;
};

Resolved resolve(const Options& o, const std::string& name) {
  Resolved r;
  const auto given = parse_params(o.params);
  std::vector<double> default_init;
  Mode default_mode;
  if (!o.system_file.empty() && o.command != "transfer") {
    auto loaded = expr::load_system_file(o.system_file, given);
    r.name = loaded.name;
    r.params = loaded.params;
    r.coalgebra = loaded.coalgebra;
    default_init = loaded.default_init;
    default_mode = loaded.default_mode;
  } else {
    if (name.empty()) throw ValidationError("no system given (use --system or --system-file)");
    r.built = build_system(name, given);
    r.name = r.built->name;
    r.params = r.built->params;
    r.coalgebra = r.built->coalgebra;
    default_init = r.built->default_init;
    default_mode = r.built->default_mode;
  }
  r.init.mode = o.mode.empty() ? default_mode : o.mode;
  if (!o.init.empty()) {
    r.init.x = parse_init(o.init, r.coalgebra->state().dim());
  } else if (!default_init.empty()) {
    r.init.x = Eigen::Map<const Vec>(default_init.data(), static_cast<Eigen::Index>(default_init.size()));
  } else {
    throw ValidationError("no initial state given (use --init)");
  }
  return r;
}

SimConfig apply_sim_flags(SimConfig cfg, const Options& o) {
  if (o.dt_max) cfg.dt_max = *o.dt_max;
  if (o.event_tol) cfg.event_tol = *o.event_tol;
  if (o.zeno_dt_min) cfg.zeno_dt_min = *o.zeno_dt_min;
  if (o.horizon) cfg.horizon = *o.horizon;
  if (o.max_jumps) cfg.max_jumps = *o.max_jumps;
  cfg.validate();
  return cfg;
}

json sim_json(const SimConfig& c) {
  return {{"dt_max", c.dt_max},         {"event_tol", c.event_tol}, {"time_tol", c.time_tol},
          {"zeno_dt_min", c.zeno_dt_min}, {"max_jumps", c.max_jumps}, {"horizon", c.horizon}};
}

/// The recorded command line without --out and --seed; replay supplies both.
std::vector<std::string> replayable_args(const std::vector<std::string>& argv) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (a == "--out" || a == "--seed") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0 || a.rfind("--seed=", 0) == 0) continue;
    out.push_back(a);
  }
  return out;
}

/// Collects files for --out and writes them with a manifest at the end.
class Outputs {
 public:
  explicit Outputs(std::string dir) : dir_(std::move(dir)) {}

  void add(const std::string& name, std::string content) { files_.emplace_back(name, std::move(content)); }

  void write(const std::vector<std::string>& argv, const Options& o, const json& system, const json& config) {
    if (dir_.empty()) return;
    json names = json::array();
    for (const auto& [name, content] : files_) {
      io::write_atomic(fs::path(dir_) / name, content);
      names.push_back(name);
    }
    json manifest = {{"tool", "hycoalg"},   {"version", kVersion}, {"command", o.command},
                     {"argv", replayable_args(argv)}, {"system", system},    {"config", config},
                     {"seed", o.seed},      {"outputs", names}};
    io::write_atomic(fs::path(dir_) / "manifest.json", io::dump(manifest));
  }

 private:
  std::string dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

std::optional<double> first_jump_time(const HybridExecution& exe) {
  if (exe.intervals.size() < 2) return std::nullopt;
  return exe.intervals.front().end();
}

/// Configuration-space and (h, hdot)-space columns with the certificate
/// components along an execution of the ball or a Lagrangian system.
std::string plot_csv(const BuiltSystem& b, const HybridExecution& exe) {
  std::size_t n = 1;
  std::function<Vec(const Vec&)> theta, phi;
  std::function<double(const Vec&)> wc, wd;
  if (b.ball) {
    const BouncingBall ball = *b.ball;
    theta = [](const Vec& x) { return x.head(1); };
    phi = [](const Vec& x) { return x; };
    wc = [ball](const Vec& x) { return ball.V_c(x); };
    wd = [ball](const Vec& x) { return ball.V_d(x); };
  } else {
    auto sys = std::make_shared<const LagrangianImpactSystem>(*b.lagrangian);
    n = sys->n();
    auto cand = std::make_shared<const LyapunovCandidate>(sys->direct_certificate());
    theta = [sys](const Vec& x) { return sys->theta(x); };
    phi = [sys](const Vec& x) { return sys->Phi(x); };
    wc = [cand](const Vec& x) { return cand->V_c(x); };
    wd = [cand](const Vec& x) { return cand->vd(LagrangianImpactSystem::kMode, x); };
  }
  std::string out = "j,t";
  for (std::size_t i = 1; i <= n; ++i) out += ",theta_" + std::to_string(i);
  out += ",h,hdot,W_c,W_d\n";
  for (std::size_t j = 0; j < exe.intervals.size(); ++j) {
    for (const auto& s : exe.intervals[j].samples) {
      const Vec th = theta(s.x), y = phi(s.x);
      out += std::to_string(j) + "," + io::format_double(s.t);
      for (Eigen::Index i = 0; i < th.size(); ++i) out += "," + io::format_double(th[i]);
      out += "," + io::format_double(y[0]) + "," + io::format_double(y[1]) + "," + io::format_double(wc(s.x)) + "," +
             io::format_double(wd(s.x)) + "\n";
    }
  }
  return out;
}

json system_json(const Resolved& r) { return {{"name", r.name}, {"params", r.params}}; }

int cmd_simulate(const Options& o, const std::vector<std::string>& argv, std::ostream& out) {
  const Resolved r = resolve(o, o.system);
  const SimConfig cfg = apply_sim_flags(r.built ? r.built->certificate_config.sim : SimConfig{}, o);

  SimulationResult sim;
  if (r.name == "switching-pair" && r.built) {
    Rng rng(o.seed);
    std::uniform_real_distribution<double> dwell(0.1, 1.0);
    SwitchingSignal signal;
    double t = 0.0;
    Mode m = r.init.mode;
    while (true) {
      t += dwell(rng);
      if (t >= cfg.horizon) break;
      m = m == "A1" ? "A2" : "A1";
      signal.times.push_back(t);
      signal.modes.push_back(m);
    }
    sim = simulate_switching(*r.coalgebra, r.init, signal, cfg);
  } else {
    sim = simulate(*r.coalgebra, r.init, cfg);
  }

  const auto& exe = sim.execution;
  const auto fj = first_jump_time(exe);
  json summary = {{"system", system_json(r)},
                  {"init", io::to_json(r.init)},
                  {"jumps", exe.jumps()},
                  {"end_time", exe.end_time()},
                  {"flow_time", exe.flow_time()},
                  {"truncation", to_string(exe.truncation)},
                  {"first_jump_time", fj ? json(*fj) : json(nullptr)},
                  {"zeno", io::to_json(sim.zeno)},
                  {"warnings", sim.warnings}};
  out << io::dump(summary);

  Outputs files(o.out);
  files.add("trace.csv", io::trace_csv(exe));
  files.add("zeno.json", io::dump(summary));
  if (r.built && (r.built->ball || r.built->lagrangian)) files.add("plot.csv", plot_csv(*r.built, exe));
  files.write(argv, o, system_json(r), {{"sim", sim_json(cfg)}});
  return kPass;
}

CertificateConfig certificate_config(const BuiltSystem& b, const Options& o) {
  CertificateConfig cfg = b.certificate_config;
  cfg.seed = o.seed;
  cfg.sim = apply_sim_flags(cfg.sim, o);
  if (o.interior_samples) cfg.interior_samples = *o.interior_samples;
  if (o.guard_samples) cfg.guard_samples = *o.guard_samples;
  return cfg;
}

int cmd_check(const Options& o, const std::vector<std::string>& argv, std::ostream& out) {
  const Resolved r = resolve(o, o.system);
  if (!r.built || !r.built->certificate) throw ValidationError("system '" + r.name + "' has no built-in certificate");
  const auto& cand = *r.built->certificate;
  const CertificateConfig cfg = certificate_config(*r.built, o);
  const CertificateReport report = check_certificate(*r.coalgebra, cand, cfg);

  json summary = {{"system", system_json(r)},
                  {"certificate", cand.name},
                  {"measurement_object", cand.target.name},
                  {"pass", report.pass},
                  {"failing", report.failing()},
                  {"report", io::to_json(report)}};
  out << io::dump(summary);

  Outputs files(o.out);
  files.add("certificate.json", io::dump(summary));
  files.write(argv, o, system_json(r),
              {{"sim", sim_json(cfg.sim)},
               {"interior_samples", cfg.interior_samples},
               {"guard_samples", cfg.guard_samples}});
  return report.pass ? kPass : kCheckFail;
}

int cmd_zeno_bound(const Options& o, const std::vector<std::string>& argv, std::ostream& out) {
  const Resolved r = resolve(o, o.system);
  if (!r.built || !(r.built->ball || r.built->lagrangian)) {
    throw ValidationError("system '" + r.name + "' has no Zeno certificate");
  }
  const BuiltSystem& b = *r.built;
  ZenoBoundConfig zc;
  zc.sim = apply_sim_flags(zc.sim, o);
  LyapunovCandidate cand;
  double c = 0.0, lambda = 0.0, upsilon0 = 0.0;
  if (b.ball) {
    cand = b.ball->certificate();
    c = b.ball->c();
    lambda = b.ball->lambda();
    upsilon0 = b.ball->upsilon(r.init.x);
  } else {
    const auto& lag = *b.lagrangian;
    cand = lag.direct_certificate();
    c = lag.c();
    lambda = lag.lambda();
    upsilon0 = ball_upsilon(lag.kappa(), lag.Phi(r.init.x));
    zc.also_check_Vd_flow = false;
  }
  zc.certificate = certificate_config(b, o);

  const ZenoBoundResult res = compute_zeno_bound(*r.coalgebra, cand, c, lambda, r.init, zc);

  json summary = {{"system", system_json(r)},
                  {"init", io::to_json(r.init)},
                  {"bound", res.bound},
                  {"observed", res.observed},
                  {"observed_flow_time", res.observed_flow_time},
                  {"tau0", res.tau0},
                  {"upsilon0", upsilon0},
                  {"c", res.c},
                  {"lambda", res.lambda},
                  {"zeno_flagged", res.zeno_flagged},
                  {"jumps", res.simulation.execution.jumps()},
                  {"W_monotone", res.W_monotone},
                  {"max_flow_rate", res.max_flow_rate},
                  {"max_jump_increase", res.max_jump_increase},
                  {"verdict", res.verdict},
                  {"pass", res.pass}};
  out << io::dump(summary);

  Outputs files(o.out);
  json full = summary;
  full["zeno"] = io::to_json(res.simulation.zeno);
  full["certificate"] = io::to_json(res.certificate);
  files.add("zeno_bound.json", io::dump(full));
  files.add("trace.csv", io::trace_csv(res.simulation.execution));
  std::string wcsv = "j,t,W\n";
  for (const auto& s : res.W_trace) {
    wcsv += std::to_string(s.j) + "," + io::format_double(s.t) + "," + io::format_double(s.W) + "\n";
  }
  files.add("W.csv", wcsv);
  files.add("plot.csv", plot_csv(b, res.simulation.execution));
  files.write(argv, o, system_json(r), {{"sim", sim_json(zc.sim)}, {"also_check_Vd_flow", zc.also_check_Vd_flow}});
  return res.pass ? kPass : kCheckFail;
}

int cmd_transfer(const Options& o, const std::vector<std::string>& argv, std::ostream& out) {
  const std::string source = o.source.empty() ? o.system : o.source;
  const Resolved r = resolve(o, source);
  if (!r.built || !r.built->lagrangian) {
    throw ValidationError("transfer source must be a Lagrangian impact system (e.g. bowl), got '" + r.name + "'");
  }
  if (o.target != "bouncing-ball") {
    throw ValidationError("transfer target must be 'bouncing-ball', got '" + o.target + "'");
  }
  const LagrangianImpactSystem& lag = *r.built->lagrangian;
  const BouncingBall ball = lag.target_ball();
  const SimulationMorphism phi = lag.to_ball(ball, o.phi_scale);

  CertificateConfig cfg = certificate_config(*r.built, o);
  const CheckSamples samples = draw_samples(*r.coalgebra, cfg);
  const MorphismCheck mc = check_simulation_morphism(phi, samples, cfg.tol);

  CertificateConfig target_cfg = ball.certificate_config(o.seed);
  target_cfg.sim = apply_sim_flags(target_cfg.sim, o);
  const CertificateReport target_report = check_certificate(*ball.coalgebra(), ball.certificate(), target_cfg);

  json head = {{"source", system_json(r)},
               {"target", {{"name", "bouncing-ball"}, {"params", {{"g", ball.g()}, {"lambda", ball.lambda()}, {"c", ball.c()}}}}},
               {"phi_scale", o.phi_scale},
               {"morphism", io::to_json(mc)},
               {"target_certificate", {{"pass", target_report.pass}, {"failing", target_report.failing()}}}};

  TransferReport tr;
  try {
    tr = transfer_certificate(phi, ball.certificate(), mc, target_report, samples.interior);
  } catch (const PrerequisiteError&) {
    Outputs files(o.out);
    head["refused"] = true;
    files.add("transfer.json", io::dump(head));
    files.write(argv, o, system_json(r), {{"sim", sim_json(cfg.sim)}});
    throw;
  }

  const CertificateReport pulled = check_certificate(*r.coalgebra, tr.pulled, samples, cfg);
  const CertificateReport direct = check_certificate(*r.coalgebra, lag.direct_certificate(), samples, cfg);
  double max_diff = 0.0;
  for (const auto& c : pulled.checks) {
    if (const CheckResult* d = direct.find(c.name)) max_diff = std::max(max_diff, std::abs(c.worst_margin - d->worst_margin));
  }

  json summary = head;
  summary["refused"] = false;
  summary["kernel_dimension"] = tr.kernel_dimension;
  summary["injective_on_samples"] = tr.injective_on_samples;
  summary["set_stability"] = tr.set_stability;
  summary["stability_set"] = tr.stability_set;
  summary["transferred_certificate"] = io::to_json(pulled);
  summary["direct_vs_transfer_max_margin_difference"] = max_diff;
  summary["pass"] = pulled.pass;
  out << io::dump(summary);

  Outputs files(o.out);
  files.add("transfer.json", io::dump(summary));
  files.write(argv, o, system_json(r), {{"sim", sim_json(cfg.sim)}});
  return pulled.pass ? kPass : kCheckFail;
}

int cmd_registry(const Options& o, const std::vector<std::string>& argv, std::ostream& out) {
  const std::string text = io::dump(registry_schema());
  out << text;
  Outputs files(o.out);
  files.add("registry.json", text);
  files.write(argv, o, nullptr, nullptr);
  return kPass;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--system", o.system, "Registry system name");
  sub->add_option("--system-file", o.system_file, "JSON system description");
  sub->add_option("--param", o.params, "Parameter override k=v (repeatable)");
  sub->add_option("--init", o.init, "Initial continuous state, comma separated");
  sub->add_option("--mode", o.mode, "Initial mode");
  sub->add_option("--dt-max", o.dt_max, "Integrator step");
  sub->add_option("--event-tol", o.event_tol, "Guard residual tolerance");
  sub->add_option("--zeno-dt-min", o.zeno_dt_min, "Inter-jump duration that counts as Zeno");
  sub->add_option("--max-jumps", o.max_jumps, "Jump budget");
  sub->add_option("--horizon", o.horizon, "Time horizon");
  sub->add_option("--seed", o.seed, "Sampling seed (HYCOALG_SEED overrides)");
  sub->add_option("--out", o.out, "Output directory");
  sub->add_option("--interior-samples", o.interior_samples, "Interior samples for certificate checks");
  sub->add_option("--guard-samples", o.guard_samples, "Guard samples for certificate checks");
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool honor_env);

int cmd_replay(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream in(o.manifest);
  if (!in) throw ValidationError("cannot open manifest " + o.manifest);
  json m;
  try {
    m = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!m.contains("argv") || !m.contains("seed")) throw ValidationError("manifest lacks argv or seed");
  auto args = m.at("argv").get<std::vector<std::string>>();
  if (!args.empty() && args.front() == "replay") throw ValidationError("manifest records a replay");
  args.push_back("--seed");
  args.push_back(std::to_string(m.at("seed").get<std::uint64_t>()));
  if (!o.out.empty()) {
    args.push_back("--out");
    args.push_back(o.out);
  }
  return dispatch(args, out, err, false);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool honor_env) {
  Options o;
  CLI::App app{"Hybrid-system coalgebra toolkit", "hycoalg"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto* sim = app.add_subcommand("simulate", "Simulate a system and write its trace");
  auto* check = app.add_subcommand("check", "Check the system's built-in Lyapunov certificate");
  auto* zeno = app.add_subcommand("zeno-bound", "Bound the total flow time of a Zeno execution");
  auto* transfer = app.add_subcommand("transfer", "Pull a certificate back along a simulation morphism");
  auto* reg = app.add_subcommand("registry", "Print the registry with parameter schemas");
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  for (auto* s : {sim, check, zeno, transfer}) add_common(s, o);
  transfer->add_option("--source", o.source, "Source system (registry name)");
  transfer->add_option("--target", o.target, "Target system (registry name)");
  transfer->add_option("--phi-scale", o.phi_scale, "Scale applied to the morphism's continuous part");
  reg->add_option("--out", o.out, "Output directory");
  replay->add_option("manifest", o.manifest, "manifest.json")->required();
  replay->add_option("--out", o.out, "Output directory (defaults to no files)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kSpecError;
  }

  const auto* chosen = app.get_subcommands().front();
  o.command = chosen->get_name();
  if (honor_env) {
    if (const char* env = std::getenv("HYCOALG_SEED"); env && *env) {
      const std::string text(env);
      if (text.find_first_not_of("0123456789") != std::string::npos) {
        throw ValidationError("HYCOALG_SEED must be a nonnegative integer, got '" + text + "'");
      }
      o.seed = std::stoull(text);
    }
  }

  if (chosen == sim) return cmd_simulate(o, args, out);
  if (chosen == check) return cmd_check(o, args, out);
  if (chosen == zeno) return cmd_zeno_bound(o, args, out);
  if (chosen == transfer) return cmd_transfer(o, args, out);
  if (chosen == reg) return cmd_registry(o, args, out);
  return cmd_replay(o, out, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err, true);
  } catch (const PrerequisiteError& e) {
    err << "refused: " << e.what() << "\n";
    return kPrerequisite;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kSpecError;
  } catch (const EncodingError& e) {
    err << "error: " << e.what() << "\n";
    return kSpecError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSpecError;
  } catch (const SimulationError& e) {
    err << "simulation error at t=" << e.time() << ": " << e.what() << "\n";
    return kSimulationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSimulationError;
  }
}

}  // namespace hycoalg::cli
