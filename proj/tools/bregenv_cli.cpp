// Command-line front end over the C API.
//
//   bregenv_cli envelope --kernel bs --theta abs:0.5 --side right --point 3 --gamma 1
//   bregenv_cli sweep --kernel fd --point 0.1 --gammas 1e-3:1e3:logsteps=13
//   bregenv_cli figures --out figs

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bregenv/bregenv.h"
#include "json.hpp"

namespace {

using ojson = nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kNotConverged = 3, kInternal = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown for library failures that abort the whole command.
struct ApiError : std::runtime_error {
  ApiError(bregenv_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  bregenv_status status;
};

int exit_code_for(bregenv_status s) {
  switch (s) {
  case BREGENV_OK:
  case BREGENV_E_DOMAIN:
    return kOk;
  case BREGENV_E_PARAMETER:
  case BREGENV_E_DIMENSION:
  case BREGENV_E_INVALID_SET:
  case BREGENV_E_CONVEXITY:
  case BREGENV_E_PARSE:
  case BREGENV_E_NULL_ARGUMENT:
    return kUsage;
  case BREGENV_E_INFEASIBLE:
    return kInfeasible;
  case BREGENV_E_SOLVER_FAILURE:
  case BREGENV_E_NOT_CONVERGED:
  case BREGENV_E_UNBOUNDED:
    return kNotConverged;
  case BREGENV_E_INTERNAL:
    return kInternal;
  }
  return kInternal;
}

void check(bregenv_status s) {
  if (s != BREGENV_OK) {
    throw ApiError(s, std::string(bregenv_status_string(s)) + ": " + bregenv_last_error());
  }
}

// ---- parsing ---------------------------------------------------------------

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double number(const std::string& token) {
  std::string t = trim(token);
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw UsageError("not a number: '" + token + "'");
  }
  return v;
}

std::vector<double> number_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) out.push_back(number(tok));
  if (out.empty()) throw UsageError("empty list");
  return out;
}

// lo:hi:step, inclusive of hi up to rounding.
std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw UsageError("grid needs lo <= hi and step > 0");
  }
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (n > 10000000) throw UsageError("grid too large");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
  return g;
}

std::vector<double> parse_grid(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw UsageError("grid must be lo:hi:step, got '" + s + "'");
  return linear_grid(number(parts[0]), number(parts[1]), number(parts[2]));
}

// "lo:hi:logsteps=N" or a comma list; must be positive and ascending.
std::vector<double> parse_gammas(const std::string& s) {
  std::vector<double> g;
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    const std::string key = "logsteps=";
    if (parts.size() != 3 || trim(parts[2]).rfind(key, 0) != 0) {
      throw UsageError("gamma grid must be lo:hi:logsteps=N, got '" + s + "'");
    }
    const double n = number(trim(parts[2]).substr(key.size()));
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e6) throw UsageError("logsteps must be a positive integer");
    g.resize(static_cast<std::size_t>(n));
    check(bregenv_log_gamma_grid(number(parts[0]), number(parts[1]), g.size(), g.data()));
  } else {
    g = number_list(s);
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0.0)) throw UsageError("gamma values must be positive");
    if (i && !(g[i] > g[i - 1])) throw UsageError("gamma values must be ascending");
  }
  return g;
}

// ---- handles ---------------------------------------------------------------

template <class T, void (*Destroy)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Destroy(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};

using Kernel = Handle<bregenv_kernel, bregenv_kernel_destroy>;
using Objective = Handle<bregenv_objective, bregenv_objective_destroy>;
using Set = Handle<bregenv_set, bregenv_set_destroy>;
using Sweep = Handle<bregenv_sweep, bregenv_sweep_destroy>;
using Trajectory = Handle<bregenv_trajectory, bregenv_trajectory_destroy>;

// ---- output ----------------------------------------------------------------

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Cells are numbers or text; numbers are written with 12 significant digits.
struct Cell {
  bool numeric = false;
  bool integer = false;
  double num = 0.0;
  std::string text;
  Cell(double v) : numeric(true), num(v) {}
  Cell(int v) : numeric(true), integer(true), num(v) {}
  Cell(std::string s) : text(std::move(s)) {}
  Cell(const char* s) : text(s) {}
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> footer;  // CSV comment lines
  ojson extra = ojson::object();    // merged into the JSON document
};

ojson json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(fmt(v));
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << (row[i].numeric ? fmt(row[i].num) : row[i].text);
    }
    os << '\n';
  }
  for (const auto& line : t.footer) os << "# " << line << '\n';
}

void write_json(std::ostream& os, const Table& t) {
  ojson doc = ojson::object();
  if (!t.name.empty()) doc["name"] = t.name;
  ojson rows = ojson::array();
  for (const auto& row : t.rows) {
    ojson r = ojson::object();
    std::vector<std::string> nonfinite;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (c.numeric) {
        r[t.columns[i]] = c.integer ? ojson(static_cast<long long>(c.num)) : json_number(c.num);
        if (!std::isfinite(c.num)) nonfinite.push_back(t.columns[i] + "=" + fmt(c.num));
      } else {
        r[t.columns[i]] = c.text;
      }
    }
    // Non-finite numbers become null; say why unless the row already does.
    if (!nonfinite.empty() && (!r.contains("reason") || r["reason"] == "")) {
      std::string why;
      for (const auto& s : nonfinite) why += (why.empty() ? "" : ";") + s;
      r["reason"] = why;
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  for (auto it = t.extra.begin(); it != t.extra.end(); ++it) doc[it.key()] = it.value();
  os << doc.dump(2) << '\n';
}

void emit(const Table& t, const std::string& format, const std::string& path) {
  std::ostringstream buf;
  if (format == "json") write_json(buf, t);
  else write_csv(buf, t);
  if (path.empty() || path == "-") {
    std::cout << buf.str();
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file '" + path + "'");
  out << buf.str();
}

std::vector<std::string> coord_columns(const std::string& base, std::size_t n) {
  if (n == 1) return {base};
  std::vector<std::string> c;
  for (std::size_t j = 0; j < n; ++j) c.push_back(base + "_" + std::to_string(j + 1));
  return c;
}

void append(std::vector<std::string>& a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
}

void append_coords(std::vector<Cell>& row, const std::vector<double>& v) {
  for (double x : v) row.emplace_back(x);
}

void append_nan(std::vector<Cell>& row, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) row.emplace_back(std::nan(""));
}

// Order-preserving parallel map; every slot is written by exactly one worker.
template <class R>
std::vector<R> parallel_map(std::size_t n, const std::function<R(std::size_t)>& fn) {
  std::vector<R> out(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(hw, n);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

// ---- configuration -----------------------------------------------------------

struct Config {
  std::string kernel = "energy";
  std::string theta = "abs:0.5";
  std::string side = "left";
  double gamma = 1.0;
  std::string gammas;
  std::string point;
  std::string grid;
  std::string set;
  std::string format = "csv";
  std::string out;
  double tol = 1e-10;
  int max_iter = 200;
  bool numeric_only = false;
};

struct Context {
  Kernel kernel;
  Objective theta;
  bregenv_options opts{};
};

void open(Context& ctx, const Config& cfg) {
  check(bregenv_kernel_create(cfg.kernel.c_str(), ctx.kernel.out()));
  check(bregenv_objective_parse(cfg.theta.c_str(), ctx.theta.out()));
  bregenv_default_options(&ctx.opts);
  ctx.opts.tol = cfg.tol;
  ctx.opts.max_iter = cfg.max_iter;
  ctx.opts.allow_closed_form = cfg.numeric_only ? 0 : 1;
}

bregenv_side side_of(const std::string& s) {
  if (s == "left") return BREGENV_LEFT;
  if (s == "right") return BREGENV_RIGHT;
  throw UsageError("side must be left|right, got '" + s + "'");
}

std::vector<double> gammas_of(const Config& cfg) {
  if (!cfg.gammas.empty()) return parse_gammas(cfg.gammas);
  if (!(cfg.gamma > 0.0)) throw UsageError("gamma must be positive");
  return {cfg.gamma};
}

// Points: --grid gives 1-D points, --point one (possibly multi-dimensional) point.
std::vector<std::vector<double>> points_of(const Config& cfg) {
  if (!cfg.grid.empty() && !cfg.point.empty()) throw UsageError("use --point or --grid, not both");
  if (!cfg.grid.empty()) {
    std::vector<std::vector<double>> pts;
    for (double v : parse_grid(cfg.grid)) pts.push_back({v});
    return pts;
  }
  if (cfg.point.empty()) throw UsageError("--point or --grid is required");
  return {number_list(cfg.point)};
}

struct RowResult {
  std::vector<Cell> cells;
  bregenv_status status = BREGENV_OK;
};

int worst_exit(const std::vector<RowResult>& rows) {
  int code = kOk;
  for (const auto& r : rows) code = std::max(code, exit_code_for(r.status));
  return code;
}

std::string reason_of(bregenv_status s) {
  return std::string(bregenv_status_string(s)) + ": " + bregenv_last_error();
}

// ---- commands ----------------------------------------------------------------

int cmd_envelope(const Config& cfg, bool want_gradient) {
  Context ctx;
  open(ctx, cfg);
  const bregenv_side side = side_of(cfg.side);
  const auto points = points_of(cfg);
  const auto gammas = gammas_of(cfg);
  const std::size_t n = points.front().size();

  Table t;
  append(t.columns, coord_columns("point", n));
  append(t.columns, {"gamma", "side", "value"});
  append(t.columns, coord_columns("prox", n));
  if (want_gradient) append(t.columns, coord_columns("gradient", n));
  append(t.columns, {"branch", "residual", "iterations", "reason"});

  const std::size_t total = points.size() * gammas.size();
  const auto rows = parallel_map<RowResult>(total, [&](std::size_t idx) {
    const auto& p = points[idx / gammas.size()];
    const double g = gammas[idx % gammas.size()];
    RowResult r;
    append_coords(r.cells, p);
    r.cells.emplace_back(g);
    r.cells.emplace_back(cfg.side);
    std::vector<double> prox(n), grad(n);
    bregenv_envelope_info info{};
    r.status = bregenv_envelope(ctx.kernel.get(), ctx.theta.get(), side, g, p.data(), n,
                                &ctx.opts, prox.data(), want_gradient ? grad.data() : nullptr,
                                &info);
    if (r.status != BREGENV_OK) {
      r.cells.emplace_back(std::nan(""));
      append_nan(r.cells, want_gradient ? 2 * n : n);
      r.cells.emplace_back("");
      r.cells.emplace_back(std::nan(""));
      r.cells.emplace_back(0);
      r.cells.emplace_back(reason_of(r.status));
      return r;
    }
    r.cells.emplace_back(info.value);
    if (info.has_prox) append_coords(r.cells, prox);
    else append_nan(r.cells, n);
    if (want_gradient) {
      if (info.has_gradient) append_coords(r.cells, grad);
      else append_nan(r.cells, n);
    }
    r.cells.emplace_back(info.has_prox ? bregenv_branch_string(info.branch) : "");
    r.cells.emplace_back(info.residual);
    r.cells.emplace_back(info.iterations);
    r.cells.emplace_back(bregenv_reason_string(info.reason));
    return r;
  });
  for (const auto& r : rows) t.rows.push_back(r.cells);
  emit(t, cfg.format, cfg.out);
  return worst_exit(rows);
}

int cmd_project(const Config& cfg) {
  if (cfg.set.empty()) throw UsageError("--set is required");
  Context ctx;
  open(ctx, cfg);
  Set set;
  check(bregenv_set_parse(cfg.set.c_str(), set.out()));
  const auto points = points_of(cfg);
  const std::size_t n = points.front().size();

  std::vector<std::pair<std::string, bregenv_projection>> modes;
  if (cfg.side == "left" || cfg.side == "all") modes.emplace_back("left", BREGENV_PROJECT_LEFT);
  if (cfg.side == "right" || cfg.side == "all") modes.emplace_back("right", BREGENV_PROJECT_RIGHT);
  if (cfg.side == "orthogonal" || cfg.side == "all") {
    modes.emplace_back("orthogonal", BREGENV_PROJECT_ORTHOGONAL);
  }
  if (modes.empty()) throw UsageError("project --side must be left|right|orthogonal|all");

  Table t;
  append(t.columns, coord_columns("point", n));
  t.columns.push_back("mode");
  append(t.columns, coord_columns("projection", n));
  t.columns.push_back("reason");
  const std::size_t total = points.size() * modes.size();
  const auto rows = parallel_map<RowResult>(total, [&](std::size_t idx) {
    const auto& p = points[idx / modes.size()];
    const auto& mode = modes[idx % modes.size()];
    RowResult r;
    append_coords(r.cells, p);
    r.cells.emplace_back(mode.first);
    std::vector<double> q(n);
    r.status = bregenv_project(ctx.kernel.get(), set.get(), mode.second, p.data(), n, cfg.tol,
                               q.data());
    if (r.status == BREGENV_OK) {
      append_coords(r.cells, q);
      r.cells.emplace_back("");
    } else {
      append_nan(r.cells, n);
      r.cells.emplace_back(reason_of(r.status));
    }
    return r;
  });
  for (const auto& r : rows) t.rows.push_back(r.cells);
  emit(t, cfg.format, cfg.out);
  return worst_exit(rows);
}

int cmd_sweep(const Config& cfg) {
  Context ctx;
  open(ctx, cfg);
  const bregenv_side side = side_of(cfg.side);
  if (!cfg.grid.empty()) throw UsageError("sweep takes a single --point");
  const auto point = points_of(cfg).front();
  const auto gammas = cfg.gammas.empty() ? parse_gammas("1e-6:1e6:logsteps=25") : gammas_of(cfg);
  const std::size_t n = point.size();

  Sweep sweep;
  check(bregenv_sweep_run(ctx.kernel.get(), ctx.theta.get(), side, point.data(), n,
                          gammas.data(), gammas.size(), &ctx.opts, sweep.out()));
  Table t;
  append(t.columns, coord_columns("point", n));
  append(t.columns, {"gamma", "side"});
  append(t.columns, coord_columns("prox", n));
  append(t.columns, {"theta_at_prox", "bregman_term", "scaled_term", "envelope", "branch",
                     "residual", "iterations"});
  for (std::size_t i = 0; i < bregenv_sweep_size(sweep.get()); ++i) {
    bregenv_sweep_row row{};
    std::vector<double> prox(n);
    check(bregenv_sweep_record(sweep.get(), i, &row, prox.data()));
    std::vector<Cell> cells;
    append_coords(cells, point);
    cells.emplace_back(row.gamma);
    cells.emplace_back(cfg.side);
    append_coords(cells, prox);
    for (double v : {row.theta_at_prox, row.bregman_term, row.scaled_term, row.envelope}) {
      cells.emplace_back(v);
    }
    cells.emplace_back(bregenv_branch_string(row.branch));
    cells.emplace_back(row.residual);
    cells.emplace_back(row.iterations);
    t.rows.push_back(std::move(cells));
  }

  ojson checks = ojson::array();
  t.footer.push_back("limit_report properties_hold=" +
                     std::to_string(bregenv_sweep_properties_hold(sweep.get())));
  t.footer.push_back("check,kind,passed,available,gap,tolerance,trend_decreasing");
  for (std::size_t i = 0; i < bregenv_sweep_check_count(sweep.get()); ++i) {
    bregenv_limit_check c{};
    check(bregenv_sweep_check(sweep.get(), i, &c));
    const char* kind = c.property ? "property" : "limit";
    t.footer.push_back(std::string(c.name) + "," + kind + "," + std::to_string(c.passed) + "," +
                       std::to_string(c.available) + "," + fmt(c.gap) + "," + fmt(c.tolerance) +
                       "," + std::to_string(c.trend_decreasing));
    checks.push_back({{"check", c.name},
                      {"kind", kind},
                      {"passed", c.passed != 0},
                      {"available", c.available != 0},
                      {"gap", json_number(c.gap)},
                      {"tolerance", json_number(c.tolerance)},
                      {"trend_decreasing", c.trend_decreasing != 0}});
  }
  t.extra["limit_report"] = {{"properties_hold", bregenv_sweep_properties_hold(sweep.get()) != 0},
                             {"checks", checks}};
  emit(t, cfg.format, cfg.out);
  return kOk;
}

int cmd_solve(const Config& cfg) {
  Context ctx;
  open(ctx, cfg);
  if (!cfg.grid.empty()) throw UsageError("solve takes a single --point");
  const auto x0 = points_of(cfg).front();
  const std::size_t n = x0.size();
  Trajectory traj;
  check(bregenv_proximal_point(ctx.kernel.get(), ctx.theta.get(), cfg.gamma, x0.data(), n,
                               cfg.max_iter, cfg.tol, &ctx.opts, traj.out()));
  Table t;
  t.columns.push_back("iteration");
  append(t.columns, coord_columns("x", n));
  std::vector<double> x(n);
  for (std::size_t i = 0; i < bregenv_trajectory_length(traj.get()); ++i) {
    check(bregenv_trajectory_point(traj.get(), i, x.data()));
    std::vector<Cell> cells{Cell(static_cast<int>(i))};
    append_coords(cells, x);
    t.rows.push_back(std::move(cells));
  }
  const bool converged = bregenv_trajectory_converged(traj.get()) != 0;
  const double step = bregenv_trajectory_step_residual(traj.get());
  const std::string cert = bregenv_trajectory_certificate(traj.get());
  t.footer.push_back("converged=" + std::to_string(converged ? 1 : 0) + " step_residual=" +
                     fmt(step) + " certificate=" + cert);
  t.extra["converged"] = converged;
  t.extra["step_residual"] = json_number(step);
  t.extra["certificate"] = cert;
  emit(t, cfg.format, cfg.out);
  if (!converged) {
    std::cerr << "not converged after " << cfg.max_iter << " iterations\n";
    return kNotConverged;
  }
  return kOk;
}

// ---- figure data ---------------------------------------------------------------

struct EnvelopeFigure {
  std::string file;
  std::string kernel;
  bregenv_side side;
  double lo, hi, surface_step, curve_step;
};

const std::vector<double>& curve_gammas() {
  static const std::vector<double> g{2.0, 1.0, 0.5, 0.25, 0.1};
  return g;
}

std::vector<double> surface_gammas() { return linear_grid(0.05, 3.0, 0.05); }

double envelope_value(const Context& ctx, bregenv_side side, double g, double p) {
  bregenv_envelope_info info{};
  const bregenv_status s = bregenv_envelope(ctx.kernel.get(), ctx.theta.get(), side, g, &p, 1,
                                            &ctx.opts, nullptr, nullptr, &info);
  return s == BREGENV_OK ? info.value : std::nan("");
}

double theta_value(const Context& ctx, double p) {
  double v = 0.0;
  return bregenv_objective_value(ctx.theta.get(), &p, 1, &v) == BREGENV_OK ? v : std::nan("");
}

Table surface_table(const std::string& name, const std::vector<double>& points,
                    const std::vector<double>& gammas,
                    const std::function<double(double, double)>& value) {
  Table t;
  t.name = name;
  t.columns = {"point", "gamma", "value"};
  const auto vals = parallel_map<double>(points.size() * gammas.size(), [&](std::size_t idx) {
    return value(points[idx / gammas.size()], gammas[idx % gammas.size()]);
  });
  for (std::size_t idx = 0; idx < vals.size(); ++idx) {
    t.rows.push_back({Cell(points[idx / gammas.size()]), Cell(gammas[idx % gammas.size()]),
                      Cell(vals[idx])});
  }
  return t;
}

void write_panel(const Table& t, const std::filesystem::path& dir, const std::string& format) {
  emit(t, format, (dir / (t.name + (format == "json" ? ".json" : ".csv"))).string());
}

int cmd_figures(const Config& cfg) {
  const std::filesystem::path dir = cfg.out.empty() ? "figures" : cfg.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create directory '" + dir.string() + "'");

  Config base = cfg;
  base.theta = "abs:0.5";

  // Distance term and its scaled version along the left prox (energy kernel).
  {
    base.kernel = "energy";
    Context ctx;
    open(ctx, base);
    const auto ys = linear_grid(-2.0, 3.0, 0.05);
    const auto gs = surface_gammas();
    auto term = [&](double y, double g) {
      double p = 0.0, d = 0.0;
      if (bregenv_prox(ctx.kernel.get(), ctx.theta.get(), BREGENV_LEFT, g, &y, 1, &ctx.opts, &p,
                       nullptr) != BREGENV_OK ||
          bregenv_bregman_distance(ctx.kernel.get(), &p, &y, 1, &d) != BREGENV_OK) {
        return std::nan("");
      }
      return d;
    };
    write_panel(surface_table("fig1_bregman_term", ys, gs, term), dir, cfg.format);
    write_panel(surface_table("fig1_scaled_term", ys, gs,
                              [&](double y, double g) { return term(y, g) / g; }),
                dir, cfg.format);
  }

  const std::vector<EnvelopeFigure> figs{
      {"fig2_energy", "energy", BREGENV_LEFT, -2.0, 3.0, 0.05, 0.01},
      {"fig3_bs_left", "bs", BREGENV_LEFT, 0.02, 3.0, 0.02, 0.01},
      {"fig4_bs_right", "bs", BREGENV_RIGHT, 0.0, 3.0, 0.02, 0.01},
      {"fig5_fd_left", "fd", BREGENV_LEFT, 0.01, 0.99, 0.01, 0.005},
      {"fig6_fd_right", "fd", BREGENV_RIGHT, 0.0, 1.0, 0.01, 0.005},
  };
  for (const auto& f : figs) {
    base.kernel = f.kernel;
    Context ctx;
    open(ctx, base);
    auto env = [&](double p, double g) { return envelope_value(ctx, f.side, g, p); };
    write_panel(surface_table(f.file + "_surface", linear_grid(f.lo, f.hi, f.surface_step),
                              surface_gammas(), env),
                dir, cfg.format);

    Table curves;
    curves.name = f.file + "_curves";
    curves.columns = {"point", "theta"};
    for (double g : curve_gammas()) curves.columns.push_back("gamma_" + fmt(g));
    const auto ps = linear_grid(f.lo, f.hi, f.curve_step);
    const std::size_t m = curve_gammas().size();
    const auto vals = parallel_map<std::vector<double>>(ps.size(), [&](std::size_t i) {
      std::vector<double> row{theta_value(ctx, ps[i])};
      for (std::size_t j = 0; j < m; ++j) row.push_back(env(ps[i], curve_gammas()[j]));
      return row;
    });
    for (std::size_t i = 0; i < ps.size(); ++i) {
      std::vector<Cell> cells{Cell(ps[i])};
      for (double v : vals[i]) cells.emplace_back(v);
      curves.rows.push_back(std::move(cells));
    }
    write_panel(curves, dir, cfg.format);
  }
  return kOk;
}

void add_common(CLI::App* sub, Config& cfg, bool gamma_grid) {
  sub->add_option("--kernel", cfg.kernel, "energy | bs | fd")->capture_default_str();
  sub->add_option("--theta", cfg.theta, "abs:<c> | ind:<a>,<b> | quad:<a>,<c>, comma-joined per coordinate")
      ->capture_default_str();
  sub->add_option("--side", cfg.side, "left | right")->capture_default_str();
  sub->add_option("--gamma", cfg.gamma, "prox parameter")->capture_default_str();
  if (gamma_grid) {
    sub->add_option("--gammas", cfg.gammas, "lo:hi:logsteps=N or a comma list");
  }
  sub->add_option("--point", cfg.point, "comma-separated coordinates");
  sub->add_option("--grid", cfg.grid, "lo:hi:step (one-dimensional points)");
  sub->add_option("--format", cfg.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", cfg.out, "output file (default stdout)");
  sub->add_option("--tol", cfg.tol, "solver tolerance")->capture_default_str();
  sub->add_option("--max-iter", cfg.max_iter, "solver iteration budget")->capture_default_str();
  sub->add_flag("--numeric", cfg.numeric_only, "skip closed forms");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bregman-Moreau envelopes, proximity operators and projectors"};
  app.require_subcommand(1);
  Config cfg;

  auto* envelope = app.add_subcommand("envelope", "envelope values and gradients on a grid");
  add_common(envelope, cfg, true);
  auto* prox = app.add_subcommand("prox", "proximity operator on a grid");
  add_common(prox, cfg, true);
  auto* project = app.add_subcommand("project", "Bregman and orthogonal projections");
  add_common(project, cfg, false);
  project->add_option("--set", cfg.set, "box:<lo>,<hi>;... | hyp:<a1>,<a2>,...=<b>")->required();
  auto* sweep = app.add_subcommand("sweep", "gamma sweep with limit report");
  add_common(sweep, cfg, true);
  auto* solve = app.add_subcommand("solve", "proximal-point iteration");
  add_common(solve, cfg, false);
  auto* figures = app.add_subcommand("figures", "regenerate the figure datasets");
  figures->add_option("--out", cfg.out, "output directory")->capture_default_str();
  figures->add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  // "project" defaults to all three projections.
  if (project->parsed() && project->count("--side") == 0) cfg.side = "all";
  // "solve" defaults to a tighter step tolerance and a larger budget.
  if (solve->parsed()) {
    if (solve->count("--tol") == 0) cfg.tol = 1e-12;
    if (solve->count("--max-iter") == 0) cfg.max_iter = 1000;
  }

  try {
    if (envelope->parsed()) return cmd_envelope(cfg, true);
    if (prox->parsed()) return cmd_envelope(cfg, false);
    if (project->parsed()) return cmd_project(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    if (solve->parsed()) return cmd_solve(cfg);
    if (figures->parsed()) return cmd_figures(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return std::max<int>(exit_code_for(e.status), kUsage);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
