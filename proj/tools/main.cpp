// kerrcat command-line front end. Talks to the library only through kerrcat.h.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "kerrcat.h"

using kcli::ConfigError;
using kcli::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

// Failure of a library call outside a per-row context.
struct NumericError : std::runtime_error {
  kc_status status;
  NumericError(kc_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(kc_status s, const std::string& context) {
  if (s == KC_OK) return;
  const std::string msg = context + ": " + kc_status_name(s) + " (" + kc_last_error() + ")";
  if (s == KC_ERR_INVALID_ARGUMENT || s == KC_ERR_INVALID_DIMENSION || s == KC_ERR_IO) throw ConfigError(msg);
  throw NumericError(s, msg);
}

struct Point {
  kc_params params;
  double kappa = 0.0;
  double n_th = 0.0;
};

struct Row {
  std::vector<double> values;
  std::vector<std::string> texts;  // empty entry: numeric cell
  int error = 0;

  void number(double v) {
    values.push_back(v);
    texts.emplace_back();
  }
  void text(const std::string& t) {
    values.push_back(kNaN);
    texts.push_back(t);
  }
  // First failure wins; the cell is still emitted as NaN.
  bool ok(kc_status s) {
    if (s != KC_OK && error == 0) error = static_cast<int>(s);
    return s == KC_OK;
  }
};

struct Context {
  std::string subcommand;
  Json config;
  std::vector<kcli::Axis> axes;
  Point base;
  unsigned threads = 1;
  std::string out;
  std::string format;
};

unsigned resolve_threads(int flag, const Json& config) {
  if (flag > 0) return static_cast<unsigned>(flag);
  if (const char* env = std::getenv("KERRCAT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1) throw ConfigError("KERRCAT_THREADS must be a positive integer");
    return static_cast<unsigned>(n);
  }
  const int from_config = kcli::get_int(config, "threads", 0);
  if (from_config < 0) throw ConfigError("threads must be >= 0");
  if (from_config > 0) return static_cast<unsigned>(from_config);
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i < count on a small pool; results are indexed, so the
// output order never depends on scheduling.
void parallel_rows(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  for (auto& t : pool) t.join();
}

void set_param(Point& p, const std::string& name, double v) {
  if (name == "delta") p.params.delta = v;
  else if (name == "eps2") p.params.eps2 = v;
  else if (name == "eps4") p.params.eps4 = v;
  else if (name == "kerr") p.params.kerr = v;
  else if (name == "kappa") p.kappa = v;
  else if (name == "n_th") p.n_th = v;
  else throw ConfigError("unknown parameter '" + name + "'");
}

std::vector<Point> grid_points(const Context& ctx) {
  std::vector<Point> points{ctx.base};
  for (const auto& axis : ctx.axes) {
    std::vector<Point> next;
    for (const auto& p : points)
      for (double v : axis.values()) {
        Point q = p;
        set_param(q, axis.name, v);
        next.push_back(q);
      }
    points = std::move(next);
  }
  return points;
}

Json metadata(const Context& ctx) {
  Json config = ctx.config;
  config.erase("threads");
  config.erase("out");
  config.erase("format");
  Json m = Json::object();
  m["subcommand"] = ctx.subcommand;
  m["version"] = kc_version();
  m["config"] = config;
  return m;
}

kc_table* make_table(const std::vector<std::string>& columns) {
  std::vector<const char*> names;
  for (const auto& c : columns) names.push_back(c.c_str());
  kc_table* table = nullptr;
  check(kc_table_new(names.data(), static_cast<int>(names.size()), &table), "table");
  return table;
}

// Evaluates `eval` over the grid, writes the table, and returns the exit code.
int run_sweep(const Context& ctx, const std::vector<std::string>& columns, const std::function<void(const Point&, Row&)>& eval,
              Json meta) {
  const auto points = grid_points(ctx);
  std::vector<Row> rows(points.size());
  parallel_rows(points.size(), ctx.threads, [&](std::size_t i) { eval(points[i], rows[i]); });

  kc_table* table = make_table(columns);
  int exit_code = kExitOk;
  try {
    for (const auto& row : rows) {
      if (row.values.size() != columns.size()) throw std::logic_error("row width mismatch");
      std::vector<const char*> texts;
      for (const auto& t : row.texts) texts.push_back(t.empty() ? nullptr : t.c_str());
      check(kc_table_add_row(table, row.values.data(), texts.data(), row.error), "row");
      if (row.error != 0) exit_code = kExitNumeric;
    }
    check(kc_table_write(table, ctx.out.c_str(), ctx.format.c_str(), meta.dump().c_str()), "write " + ctx.out);
  } catch (...) {
    kc_table_free(table);
    throw;
  }
  kc_table_free(table);
  return exit_code;
}

std::vector<std::string> param_columns(bool dissipative = false) {
  std::vector<std::string> c{"delta", "eps2", "eps4", "kerr"};
  if (dissipative) {
    c.push_back("kappa");
    c.push_back("n_th");
  }
  return c;
}

void push_params(Row& row, const Point& p, bool dissipative = false) {
  row.number(p.params.delta);
  row.number(p.params.eps2);
  row.number(p.params.eps4);
  row.number(p.params.kerr);
  if (dissipative) {
    row.number(p.kappa);
    row.number(p.n_th);
  }
}

// Zero crossings of the top-pair splitting along a lone delta axis.
void add_zero_metadata(const Context& ctx, Json& meta, const char* key) {
  if (ctx.axes.size() != 1 || ctx.axes[0].name != "delta") return;
  const auto grid = ctx.axes[0].values();
  std::size_t count = 0;
  std::vector<double> zeros(grid.size() * 2);
  const kc_status s = kc_splitting_zeros(&ctx.base.params, grid.data(), grid.size(), ctx.threads, nullptr,
                                         zeros.data(), zeros.size(), &count);
  if (s != KC_OK) {
    meta[key] = nullptr;
    return;
  }
  zeros.resize(std::min(count, zeros.size()));
  meta[key] = zeros;
}

// ---- subcommands ------------------------------------------------------------

int cmd_spectrum(const Context& ctx) {
  kcli::check_keys(ctx.config, "spectrum", {"levels"});
  const int levels = kcli::get_int(ctx.config, "spectrum.levels", 6);
  if (levels < 1) throw ConfigError("spectrum.levels must be >= 1");
  auto columns = param_columns();
  columns.push_back("dim");
  for (int i = 0; i < levels; ++i) columns.push_back("e_" + std::to_string(i));
  for (int i = 0; i < levels; ++i) columns.push_back("parity_" + std::to_string(i));

  Json meta = metadata(ctx);
  add_zero_metadata(ctx, meta, "crossings");
  return run_sweep(ctx, columns, [&](const Point& p, Row& row) {
    push_params(row, p);
    int dim = 0;
    row.ok(kc_resolved_dim(&p.params, &dim));
    row.number(dim);
    std::vector<double> e(levels, kNaN);
    std::vector<int> parity(levels, 0);
    kc_eigensystem* es = nullptr;
    if (row.ok(kc_eigensystem_new(&p.params, &es))) {
      if (levels > kc_eigensystem_dim(es)) row.ok(KC_ERR_INSUFFICIENT_DIMENSION);
      else row.ok(kc_eigensystem_levels(es, levels, e.data(), parity.data()));
    }
    kc_eigensystem_free(es);
    for (double v : e) row.number(v);
    for (int v : parity) row.number(row.error ? kNaN : v);
  }, meta);
}

int cmd_splitting(const Context& ctx) {
  auto columns = param_columns();
  for (const char* c : {"abs_de", "de_signed", "de_wkb", "n_ebk", "barrier", "area", "phase"}) columns.push_back(c);
  Json meta = metadata(ctx);
  add_zero_metadata(ctx, meta, "zeros");
  return run_sweep(ctx, columns, [&](const Point& p, Row& row) {
    push_params(row, p);
    double de = kNaN, wkb = kNaN;
    if (!row.ok(kc_tunnel_splitting(&p.params, &de))) de = kNaN;
    if (!row.ok(kc_wkb_splitting(p.params.delta, p.params.eps2, p.params.kerr, &wkb))) wkb = kNaN;
    kc_ebk ebk{};
    kc_geometry g{};
    const bool ebk_ok = row.ok(kc_ebk_count(p.params.delta, p.params.eps2, p.params.kerr, &ebk));
    const bool g_ok = row.ok(kc_metapotential_geometry(p.params.delta, p.params.eps2, p.params.kerr, &g));
    row.number(std::abs(de));
    row.number(de);
    row.number(wkb);
    row.number(ebk_ok ? ebk.n : kNaN);
    row.number(g_ok ? g.barrier_height : kNaN);
    row.number(g_ok ? g.separatrix_area : kNaN);
    row.text(g_ok ? kc_phase_name(g.phase) : "none");
  }, meta);
}

int cmd_wkb(const Context& ctx) {
  auto columns = param_columns();
  for (const char* c : {"de_wkb", "de_signed", "ratio"}) columns.push_back(c);
  return run_sweep(ctx, columns, [&](const Point& p, Row& row) {
    push_params(row, p);
    double de = kNaN, wkb = kNaN;
    if (!row.ok(kc_wkb_splitting(p.params.delta, p.params.eps2, p.params.kerr, &wkb))) wkb = kNaN;
    if (!row.ok(kc_tunnel_splitting(&p.params, &de))) de = kNaN;
    row.number(wkb);
    row.number(de);
    // Both vanish together at the cancellation points.
    row.number(de != 0.0 ? wkb / de : (wkb == 0.0 ? 1.0 : kNaN));
  }, metadata(ctx));
}

int cmd_ebk(const Context& ctx) {
  auto columns = param_columns();
  for (const char* c : {"phase", "n_ebk", "n_area", "excited_count", "excited_count_area", "in_well_pairs", "boundary"})
    columns.push_back(c);
  return run_sweep(ctx, columns, [&](const Point& p, Row& row) {
    push_params(row, p);
    kc_ebk e{};
    const bool ok = row.ok(kc_ebk_count(p.params.delta, p.params.eps2, p.params.kerr, &e));
    row.text(ok ? kc_phase_name(e.phase) : "none");
    row.number(ok ? e.n : kNaN);
    row.number(ok ? e.n_area : kNaN);
    row.number(ok ? e.excited_count : kNaN);
    row.number(ok ? e.excited_count_area : kNaN);
    row.number(ok ? e.in_well_pairs : kNaN);
    row.number(ok ? e.boundary : kNaN);
  }, metadata(ctx));
}

int cmd_geometry(const Context& ctx) {
  auto columns = param_columns();
  for (const char* c : {"phase", "node_distance", "saddle_distance", "node_depth", "saddle_depth", "barrier", "area"})
    columns.push_back(c);
  return run_sweep(ctx, columns, [&](const Point& p, Row& row) {
    push_params(row, p);
    kc_geometry g{};
    const bool ok = row.ok(kc_metapotential_geometry(p.params.delta, p.params.eps2, p.params.kerr, &g));
    row.text(ok ? kc_phase_name(g.phase) : "none");
    for (double v : {g.node_distance, g.saddle_distance, g.node_depth, g.saddle_depth, g.barrier_height,
                     g.separatrix_area})
      row.number(ok ? v : kNaN);
  }, metadata(ctx));
}

int cmd_wigner(const Context& ctx) {
  if (!ctx.axes.empty()) throw ConfigError("wigner does not take swept axes");
  kcli::check_keys(ctx.config, "wigner", {"state", "index", "nx", "np", "half_width"});
  const std::string state = kcli::get_string(ctx.config, "wigner.state", "eigen");
  kc_state_kind kind;
  if (state == "eigen") kind = KC_STATE_EIGEN;
  else if (state == "right") kind = KC_STATE_RIGHT;
  else if (state == "left") kind = KC_STATE_LEFT;
  else throw ConfigError("wigner.state must be eigen, right or left");
  const int index = kcli::get_int(ctx.config, "wigner.index", 0);
  const int nx = kcli::get_int(ctx.config, "wigner.nx", 201);
  const int np = kcli::get_int(ctx.config, "wigner.np", 201);
  const double half_width = kcli::get_number(ctx.config, "wigner.half_width", 0.0);
  if (index < 0 || nx < 2 || np < 2 || half_width < 0.0) throw ConfigError("invalid wigner grid settings");

  kc_wigner* w = nullptr;
  check(kc_wigner_new(&ctx.base.params, kind, index, nx, np, half_width, ctx.threads, &w), "wigner");
  Json meta = metadata(ctx);
  double norm = 0, purity = 0, wmin = 0, wmax = 0;
  kc_wigner_stats(w, &norm, &purity, &wmin, &wmax);
  meta["normalization"] = norm;
  meta["purity"] = purity;
  meta["min"] = wmin;
  meta["max"] = wmax;
  const kc_status s = kc_wigner_write(w, ctx.out.c_str(), ctx.format.c_str(), meta.dump().c_str());
  kc_wigner_free(w);
  check(s, "write " + ctx.out);
  return kExitOk;
}

kc_lindblad lindblad_config(const Context& ctx, const Point& p) {
  const Json& c = ctx.config;
  kc_lindblad cfg = kc_lindblad_default();
  cfg.params = p.params;
  cfg.kappa = p.kappa;
  cfg.n_th = p.n_th;
  cfg.t_final = kcli::get_number(c, "lindblad.t_final", 1e6);
  cfg.dt = kcli::get_number(c, "lindblad.dt", 0.0);
  cfg.sample_dt = kcli::get_number(c, "lindblad.sample_dt", 0.0);
  cfg.fock_n = kcli::get_int(c, "lindblad.fock_n", 0);
  cfg.well_pairs = kcli::get_int(c, "lindblad.well_pairs", 0);
  const std::string initial = kcli::get_string(c, "lindblad.initial", "right_well");
  if (initial == "right_well") cfg.initial = KC_INIT_RIGHT_WELL;
  else if (initial == "left_well") cfg.initial = KC_INIT_LEFT_WELL;
  else if (initial == "vacuum") cfg.initial = KC_INIT_VACUUM;
  else if (initial == "fock") cfg.initial = KC_INIT_FOCK;
  else throw ConfigError("lindblad.initial must be right_well, left_well, vacuum or fock");
  const std::string method = kcli::get_string(c, "lindblad.method", "auto");
  if (method == "auto") cfg.method = KC_METHOD_AUTO;
  else if (method == "rk4") cfg.method = KC_METHOD_RK4;
  else if (method == "propagator") cfg.method = KC_METHOD_PROPAGATOR;
  else throw ConfigError("lindblad.method must be auto, rk4 or propagator");
  if (cfg.t_final <= 0.0 || cfg.dt < 0.0 || cfg.sample_dt < 0.0 || cfg.fock_n < 0 || cfg.well_pairs < 0)
    throw ConfigError("invalid lindblad settings");
  return cfg;
}

int cmd_lindblad(const Context& ctx) {
  const std::string mode = kcli::get_string(ctx.config, "lindblad.mode", "tx");
  if (mode == "trajectory") {
    if (!ctx.axes.empty()) throw ConfigError("trajectory mode does not take swept axes");
    const kc_lindblad cfg = lindblad_config(ctx, ctx.base);
    kc_trajectory* tr = nullptr;
    check(kc_evolve(&cfg, &tr), "evolve");
    const kc_status s = kc_trajectory_write(tr, ctx.out.c_str(), ctx.format.c_str(), metadata(ctx).dump().c_str());
    kc_trajectory_free(tr);
    check(s, "write " + ctx.out);
    return kExitOk;
  }
  if (mode != "tx") throw ConfigError("lindblad.mode must be tx or trajectory");
  if (ctx.base.kappa <= 0.0 && std::none_of(ctx.axes.begin(), ctx.axes.end(), [](auto& a) { return a.name == "kappa"; }))
    throw ConfigError("T_X needs lindblad.kappa > 0");
  lindblad_config(ctx, ctx.base);  // surface config errors before the sweep

  auto columns = param_columns(true);
  for (const char* c : {"t_x", "lower_bound", "fit_points", "s_final", "t_end"}) columns.push_back(c);
  return run_sweep(ctx, columns, [&](const Point& p, Row& row) {
    push_params(row, p, true);
    const kc_lindblad cfg = lindblad_config(ctx, p);
    kc_tx_result r{kNaN, 0, 0, kNaN, kNaN};
    if (!row.ok(kc_tx_lifetime(&cfg, &r))) r = kc_tx_result{kNaN, 0, 0, kNaN, kNaN};
    // An unresolved decay reports a finite lower bound, or NaN with an error code.
    if (!std::isfinite(r.t_x) && row.error == 0) {
      row.ok(KC_ERR_NO_CONVERGENCE);
      r.t_x = kNaN;
    }
    row.number(r.t_x);
    row.number(r.lower_bound);
    row.number(r.fit_points);
    row.number(r.s_final);
    row.number(r.t_end);
  }, metadata(ctx));
}

int cmd_rabi(const Context& ctx) {
  kcli::check_keys(ctx.config, "rabi", {"t_stop", "t_count", "cells_out"});
  if (ctx.axes.size() != 1) throw ConfigError("rabi needs exactly one axis (delta or eps2)");
  const auto& axis = ctx.axes[0];
  if (axis.name != "delta" && axis.name != "eps2") throw ConfigError("rabi axis must be delta or eps2");
  const double t_stop = kcli::get_number(ctx.config, "rabi.t_stop", 100.0);
  const int t_count = kcli::get_int(ctx.config, "rabi.t_count", 401);
  if (t_stop <= 0.0 || t_count < 6) throw ConfigError("rabi needs t_stop > 0 and t_count >= 6");
  std::vector<double> times(t_count);
  for (int i = 0; i < t_count; ++i) times[i] = t_stop * i / (t_count - 1);
  const auto values = axis.values();
  kc_lindblad cfg = lindblad_config(ctx, ctx.base);
  cfg.t_final = t_stop;

  kc_table* cells = nullptr;
  kc_table* fits = nullptr;
  check(kc_rabi_map(&cfg, axis.name.c_str(), values.data(), values.size(), times.data(), times.size(), ctx.threads,
                    &cells, &fits),
        "rabi map");
  const Json meta = metadata(ctx);
  kc_status s = kc_table_write(fits, ctx.out.c_str(), ctx.format.c_str(), meta.dump().c_str());
  const std::string cells_out = kcli::get_string(ctx.config, "rabi.cells_out", "");
  if (s == KC_OK && !cells_out.empty())
    s = kc_table_write(cells, cells_out.c_str(), ctx.format.c_str(), meta.dump().c_str());
  kc_table_free(cells);
  kc_table_free(fits);
  check(s, "write");
  return kExitOk;
}

int cmd_calibrate(const Context& ctx) {
  if (!ctx.axes.empty()) throw ConfigError("calibrate does not take swept axes");
  kcli::check_keys(ctx.config, "calibrate", {"omega_x", "eps_x", "kerr"});
  if (!kcli::has(ctx.config, "calibrate.omega_x") || !kcli::has(ctx.config, "calibrate.eps_x"))
    throw ConfigError("calibrate needs calibrate.omega_x and calibrate.eps_x");
  const double omega_x = kcli::get_number(ctx.config, "calibrate.omega_x", 0.0);
  const double eps_x = kcli::get_number(ctx.config, "calibrate.eps_x", 0.0);
  const double kerr = kcli::get_number(ctx.config, "calibrate.kerr", ctx.base.params.kerr);
  kc_calibration c{};
  check(kc_calibrate(omega_x, eps_x, kerr, &c), "calibrate");
  return run_sweep(ctx, {"omega_x", "eps_x", "kerr", "alpha0_sq", "eps2"}, [&](const Point&, Row& row) {
    for (double v : {omega_x, eps_x, kerr, c.alpha0_sq, c.eps2}) row.number(v);
  }, metadata(ctx));
}

struct Subcommand {
  const char* name;
  int (*run)(const Context&);
  std::vector<std::string> axes;
};

const std::vector<Subcommand>& subcommands() {
  static const std::vector<Subcommand> table{
      {"spectrum", cmd_spectrum, {"delta", "eps2", "eps4"}},
      {"splitting", cmd_splitting, {"delta", "eps2", "kerr"}},
      {"wkb", cmd_wkb, {"delta", "eps2", "kerr"}},
      {"ebk", cmd_ebk, {"delta", "eps2", "kerr"}},
      {"geometry", cmd_geometry, {"delta", "eps2", "kerr"}},
      {"wigner", cmd_wigner, {}},
      {"lindblad", cmd_lindblad, {"delta", "eps2", "eps4", "kappa", "n_th"}},
      {"rabi", cmd_rabi, {"delta", "eps2"}},
      {"calibrate", cmd_calibrate, {}},
  };
  return table;
}

int run(int argc, char** argv) {
  CLI::App app{"kerrcat: squeeze-driven Kerr oscillator analysis"};
  std::string subcommand, config_path, out, format;
  std::vector<std::string> sets;
  int threads = 0;
  std::string names;
  for (const auto& s : subcommands()) names += (names.empty() ? "" : "|") + std::string(s.name);
  app.add_option("subcommand", subcommand, names)->required();
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--set", sets, "override a config key, e.g. params.delta=2")->take_all();
  app.add_option("--out", out, "output path");
  app.add_option("--format", format, "csv or json");
  app.add_option("--threads", threads, "worker threads (default: KERRCAT_THREADS or all cores)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const auto it = std::find_if(subcommands().begin(), subcommands().end(),
                               [&](const Subcommand& s) { return subcommand == s.name; });
  if (it == subcommands().end()) throw ConfigError("unknown subcommand '" + subcommand + "' (expected " + names + ")");

  Context ctx;
  ctx.subcommand = subcommand;
  ctx.config = kcli::load_config(config_path);
  for (const auto& s : sets) kcli::apply_override(ctx.config, s);
  kcli::check_keys(ctx.config, "",
                   {"params", "axes", "seed", "threads", "out", "format", "spectrum", "lindblad", "wigner", "rabi",
                    "calibrate"});
  kcli::check_keys(ctx.config, "params", {"delta", "kerr", "eps2", "eps4", "dim"});
  kcli::check_keys(ctx.config, "lindblad",
                   {"kappa", "n_th", "t_final", "dt", "sample_dt", "initial", "fock_n", "well_pairs", "method", "mode"});
  kcli::get_int(ctx.config, "seed", 0);

  ctx.out = out.empty() ? kcli::get_string(ctx.config, "out", "") : out;
  ctx.format = format.empty() ? kcli::get_string(ctx.config, "format", "csv") : format;
  if (ctx.out.empty()) throw ConfigError("no output path (--out)");
  if (ctx.format != "csv" && ctx.format != "json") throw ConfigError("--format must be csv or json");
  ctx.threads = resolve_threads(threads, ctx.config);

  Point& b = ctx.base;
  b.params = kc_params_default();
  b.params.delta = kcli::get_number(ctx.config, "params.delta", 0.0);
  b.params.kerr = kcli::get_number(ctx.config, "params.kerr", 1.0);
  b.params.eps2 = kcli::get_number(ctx.config, "params.eps2", 0.0);
  b.params.eps4 = kcli::get_number(ctx.config, "params.eps4", 0.0);
  b.params.dim = kcli::get_int(ctx.config, "params.dim", 0);
  b.kappa = kcli::get_number(ctx.config, "lindblad.kappa", 0.0);
  b.n_th = kcli::get_number(ctx.config, "lindblad.n_th", 0.0);
  if (b.kappa < 0.0 || b.n_th < 0.0) throw ConfigError("kappa and n_th must be >= 0");
  int dim = 0;
  check(kc_resolved_dim(&b.params, &dim), "params");
  ctx.axes = kcli::parse_axes(ctx.config, it->axes);
  for (const auto& p : grid_points(ctx)) check(kc_resolved_dim(&p.params, &dim), "swept params");

  return it->run(ctx);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "kerrcat: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "kerrcat: numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "kerrcat: " << e.what() << "\n";
    return kExitNumeric;
  }
}
