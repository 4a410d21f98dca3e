#include "hyper/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hyper/core.hpp"
#include "hyper/expression.hpp"
#include "hyper/functions.hpp"
#include "hyper/network.hpp"
#include "hyper/polar.hpp"
#include "hyper/svg.hpp"
#include "json.hpp"

namespace hyper::cli {

namespace fs = std::filesystem;

namespace {

/// Failure that maps directly to an exit code.
struct Exit {
  int code;
  std::string message;
};

struct ScanOptions {
  std::vector<double> box{-3.0, 3.0, -3.0, 3.0};
  std::vector<std::size_t> grid{31, 31};
};

Box to_box(const std::vector<double>& b) { return {b[0], b[1], b[2], b[3]}; }
Grid to_grid(const std::vector<std::size_t>& g) { return {g[0], g[1]}; }

void add_scan_options(CLI::App* cmd, ScanOptions& opts) {
  cmd->add_option("--box", opts.box, "x_min x_max y_min y_max")->expected(4)->capture_default_str();
  cmd->add_option("--grid", opts.grid, "points along x and y")->expected(2)->capture_default_str();
}

PlaneFunction lookup(const std::string& name) {
  auto f = find_function(name);
  if (!f) {
    std::string names;
    for (const auto& n : catalog_names()) names += (names.empty() ? "" : ", ") + n;
    throw Exit{kUsageError, "unknown function '" + name + "' (known: " + names + ")"};
  }
  return *f;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kUsageError, "cannot read " + path.string()};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Exit{kUsageError, "cannot write " + path.string()};
  out << content;
  if (!out) throw Exit{kUsageError, "failed writing " + path.string()};
}

// eval ----------------------------------------------------------------------

int cmd_eval(const std::string& expr, std::ostream& out) {
  const HyperbolicNumber z = evaluate_expression(expr);
  out << to_string(z) << '\n' << to_string(to_idempotent(z)) << '\n';
  return kSuccess;
}

// check ---------------------------------------------------------------------

struct CheckOptions {
  std::string function;
  ScanOptions scan;
  double step = kDefaultFirstStep;
  double tol = kDefaultHoloTol;
  double wave_step = kDefaultSecondStep;
  std::string csv;
};

int cmd_check(const CheckOptions& o, std::ostream& out) {
  const PlaneFunction f = lookup(o.function);
  const Box box = to_box(o.scan.box);
  const Grid grid = to_grid(o.scan.grid);
  const GcrScanSummary scan = gcr_scan(f, box, grid, o.step, o.tol);
  const WaveScanSummary wave = wave_scan(f, box, grid, o.wave_step);
  const bool hyperbolic = f.kind() == FunctionKind::Hyperbolic;

  out << "function: " << f.name() << " (" << to_string(f.kind()) << ", "
      << (hyperbolic ? "GCR: u_x = v_y, u_y = v_x" : "CR: u_x = v_y, u_y = -v_x") << ")\n"
      << "box: [" << format_real(box.x_min) << ", " << format_real(box.x_max) << "] x ["
      << format_real(box.y_min) << ", " << format_real(box.y_max) << "]\n"
      << "grid: " << grid.nx << " x " << grid.ny << "\n"
      << "step: " << format_real(o.step) << "  tol: " << format_real(o.tol) << "\n"
      << "max |r1|: " << format_real(scan.max_abs_r1) << "\n"
      << "max |r2|: " << format_real(scan.max_abs_r2) << "\n"
      << "holomorphic fraction: " << format_real(scan.fraction_holomorphic) << "\n"
      << (hyperbolic ? "max wave residual" : "max Laplace residual") << " (u, v): "
      << format_real(wave.max_abs_u) << ", " << format_real(wave.max_abs_v) << "\n";
  const bool pass = scan.fraction_holomorphic == 1.0;
  out << "verdict: " << (pass ? "holomorphic" : "not holomorphic") << "\n";

  if (!o.csv.empty()) {
    std::ostringstream csv;
    write_scan_csv(csv, scan);
    write_file(o.csv, csv.str());
  }
  return pass ? kSuccess : kCheckFailed;
}

// scan-bounds ---------------------------------------------------------------

int cmd_scan_bounds(const std::string& name, const ScanOptions& o, std::ostream& out) {
  const PlaneFunction f = lookup(name);
  const BoundsReport r = bounds_scan(f, to_box(o.box), to_grid(o.grid));
  out << "function: " << f.name() << "\n"
      << "box: [" << format_real(r.box.x_min) << ", " << format_real(r.box.x_max) << "] x ["
      << format_real(r.box.y_min) << ", " << format_real(r.box.y_max) << "]\n"
      << "grid: " << r.grid.nx << " x " << r.grid.ny << "\n"
      << "u range: [" << format_real(r.u_range.min) << ", " << format_real(r.u_range.max) << "]\n"
      << "v range: [" << format_real(r.v_range.min) << ", " << format_real(r.v_range.max) << "]\n"
      << "sup max(|u|, |v|): " << format_real(r.sup_abs) << "\n";
  return kSuccess;
}

// polar ---------------------------------------------------------------------

int cmd_polar(double x, double y, double tol, std::ostream& out) {
  const HyperbolicNumber z{x, y};
  out << "z: " << to_string(z) << "\n";
  const Quadrant q = quadrant_of(z, tol);
  out << "quadrant: " << to_string(q) << "\n";
  if (q == Quadrant::NullCone) {
    const ElementClass c = classify(z, tol);
    out << "class: " << to_string(c)
        << (c.kind == ElementKind::Zero ? ", zero" : ", divisor of zero") << "\n"
        << "modulus: " << format_real(modulus(z)) << "\n";
    return kSuccess;
  }
  const PolarForm p = to_polar(z, tol);
  out << "rho: " << format_real(p.rho) << "\n"
      << "theta: " << format_real(p.theta) << "\n"
      << "reconstructed: " << to_string(from_polar(p)) << "\n";
  return kSuccess;
}

// train ---------------------------------------------------------------------

struct TrainOptions {
  std::string config;
  std::optional<double> lr;
  std::optional<std::size_t> epochs;
  std::optional<std::uint64_t> seed;
  std::string checkpoint;
  std::string history;
};

int cmd_train(const TrainOptions& o, std::ostream& out) {
  const fs::path config_path(o.config);
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(read_file(config_path));
  } catch (const nlohmann::json::exception& e) {
    throw Exit{kUsageError, "bad config " + o.config + ": " + e.what()};
  }

  std::vector<std::size_t> dims;
  std::string activation_name;
  std::uint64_t seed = 0;
  std::size_t epochs = 0;
  double lr = 0.0;
  std::string dataset_name;
  try {
    dims = config.at("dims").get<std::vector<std::size_t>>();
    activation_name = config.at("activation").get<std::string>();
    seed = config.value("seed", std::uint64_t{0});
    epochs = config.at("epochs").get<std::size_t>();
    lr = config.at("lr").get<double>();
    dataset_name = config.at("dataset").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Exit{kUsageError, "bad config " + o.config + ": " + e.what()};
  }
  if (const char* env = std::getenv("HYPERLIB_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw Exit{kUsageError, "HYPERLIB_SEED must be an unsigned integer"};
    seed = v;
  }
  if (o.seed) seed = *o.seed;
  if (o.lr) lr = *o.lr;
  if (o.epochs) epochs = *o.epochs;

  const auto activation = parse_activation(activation_name);
  if (!activation) throw Exit{kUsageError, "unknown activation '" + activation_name + "'"};
  if (epochs == 0 || !(lr > 0)) throw Exit{kUsageError, "epochs must be >= 1 and lr > 0"};

  const fs::path base = config_path.parent_path();
  const fs::path dataset_path = base / dataset_name;
  std::ifstream data_in(dataset_path);
  if (!data_in) throw Exit{kUsageError, "cannot read dataset " + dataset_path.string()};
  const Dataset data = read_dataset_csv(data_in);

  HyperbolicNetwork net = init(dims, *activation, seed);
  if (data.input_dim() != net.input_dim() || data.target_dim() != net.output_dim()) {
    throw Exit{kUsageError, "dataset shape does not match dims"};
  }
  const TrainReport report = train_sgd(net, data, epochs, lr);

  const std::string stem = config_path.stem().string();
  const fs::path checkpoint = o.checkpoint.empty() ? fs::path(stem + "_checkpoint.json")
                                                   : fs::path(o.checkpoint);
  const fs::path history = o.history.empty() ? fs::path(stem + "_loss.csv") : fs::path(o.history);
  write_file(checkpoint, checkpoint_json(net));
  std::ostringstream hist;
  write_loss_history_csv(hist, report);
  write_file(history, hist.str());

  out << "dims:";
  for (auto d : dims) out << ' ' << d;
  out << "\nactivation: " << to_string(*activation) << "\n"
      << "seed: " << seed << "\n"
      << "epochs: " << report.epochs << "\n"
      << "lr: " << format_real(lr) << "\n"
      << "initial loss: " << format_real(report.loss_history.front()) << "\n"
      << "final loss: " << format_real(report.final_loss) << "\n"
      << "checkpoint: " << checkpoint.string() << "\n"
      << "history: " << history.string() << "\n";
  return kSuccess;
}

// boundary ------------------------------------------------------------------

struct BoundaryOptions {
  std::string checkpoint;
  ScanOptions scan;
  double threshold = 0.5;
  std::string out;
};

int cmd_boundary(const BoundaryOptions& o, std::ostream& out) {
  HyperbolicNetwork net;
  try {
    net = parse_checkpoint(read_file(o.checkpoint));
  } catch (const Exit&) {
    throw;
  } catch (const std::exception& e) {
    throw Exit{kUsageError, e.what()};
  }
  const auto points = decision_boundary(net, to_box(o.scan.box), to_grid(o.scan.grid), o.threshold);
  std::ostringstream csv;
  write_boundary_csv(csv, points);
  if (o.out.empty()) {
    out << csv.str();
  } else {
    write_file(o.out, csv.str());
  }
  return kSuccess;
}

// plot ----------------------------------------------------------------------

struct PlotOptions {
  std::string source;
  ScanOptions scan{{-3.0, 3.0, -3.0, 3.0}, {61, 61}};
  std::string out;
};

std::string plot_function(const PlaneFunction& f, const ScanOptions& o) {
  const Lattice lattice(to_box(o.box), to_grid(o.grid));
  Panel u{f.name() + ": u(x, y)", {}};
  Panel v{f.name() + ": v(x, y)", {}};
  for (std::size_t k = 0; k < lattice.size(); ++k) {
    const PlaneValue w = f(lattice.at(k));
    if (!std::isfinite(w.u) || !std::isfinite(w.v)) {
      throw NonFiniteSample(lattice.at(k).x, lattice.at(k).y);
    }
    u.values.push_back(w.u);
    v.values.push_back(w.v);
  }
  const std::vector<Panel> panels{std::move(u), std::move(v)};
  return render_heatmaps(lattice, panels);
}

std::string plot_boundary(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Exit{kUsageError, "cannot read " + path.string()};
  const auto points = read_boundary_csv(in);
  std::set<double> xs;
  std::set<double> ys;
  for (const auto& p : points) {
    xs.insert(p.x);
    ys.insert(p.y);
  }
  if (xs.size() < 2 || ys.size() < 2 || xs.size() * ys.size() != points.size()) {
    throw Exit{kUsageError, "boundary CSV is not a full lattice"};
  }
  const Lattice lattice({*xs.begin(), *xs.rbegin(), *ys.begin(), *ys.rbegin()},
                        {xs.size(), ys.size()});
  // Place each row by rank so the file order does not matter.
  std::map<double, std::size_t> xi;
  std::map<double, std::size_t> yi;
  for (double x : xs) xi.emplace(x, xi.size());
  for (double y : ys) yi.emplace(y, yi.size());
  Panel u{"label_u", std::vector<double>(points.size(), 0.0)};
  Panel v{"label_v", std::vector<double>(points.size(), 0.0)};
  for (const auto& p : points) {
    const std::size_t k = yi.at(p.y) * xs.size() + xi.at(p.x);
    u.values[k] = p.label_u;
    v.values[k] = p.label_v;
  }
  const std::vector<Panel> panels{std::move(u), std::move(v)};
  return render_label_maps(lattice, panels);
}

int cmd_plot(const PlotOptions& o, std::ostream& out) {
  std::string svg;
  if (auto f = find_function(o.source)) {
    svg = plot_function(*f, o.scan);
  } else if (fs::exists(o.source)) {
    svg = plot_boundary(o.source);
  } else {
    lookup(o.source);  // reports the catalog
  }
  if (o.out.empty()) {
    out << svg;
  } else {
    write_file(o.out, svg);
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperbolic number algebra, holomorphy checks and hyperbolic networks",
               "hyperlib"};
  app.require_subcommand(1);

  std::string expr;
  auto* eval = app.add_subcommand("eval", "evaluate an expression such as (1+1h)*(1-1h)");
  eval->add_option("expr", expr, "expression")->required();

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "scan the holomorphy conditions over a grid");
  check_cmd->add_option("function", check.function, "catalog function")->required();
  add_scan_options(check_cmd, check.scan);
  check_cmd->add_option("--step", check.step, "first-derivative step")->capture_default_str();
  check_cmd->add_option("--tol", check.tol, "holomorphy tolerance")->capture_default_str();
  check_cmd->add_option("--wave-step", check.wave_step, "second-derivative step")
      ->capture_default_str();
  check_cmd->add_option("--csv", check.csv, "write x,y,u,v,r1,r2 per lattice point");

  std::string bounds_fn;
  ScanOptions bounds;
  auto* bounds_cmd = app.add_subcommand("scan-bounds", "lattice min/max of u and v");
  bounds_cmd->add_option("function", bounds_fn, "catalog function")->required();
  add_scan_options(bounds_cmd, bounds);

  std::vector<double> polar_xy;
  double polar_tol = kDefaultZeroTol;
  auto* polar_cmd = app.add_subcommand("polar", "hyperbolic polar form of x + yh");
  polar_cmd->add_option("xy", polar_xy, "x y")->expected(2)->required();
  polar_cmd->add_option("--tol", polar_tol, "null-cone tolerance")->capture_default_str();

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "train a hyperbolic network from a JSON config");
  train_cmd->add_option("config", train.config, "config file")->required();
  train_cmd->add_option("--lr", train.lr, "override the learning rate");
  train_cmd->add_option("--epochs", train.epochs, "override the epoch count");
  train_cmd->add_option("--seed", train.seed, "override the seed");
  train_cmd->add_option("--checkpoint", train.checkpoint, "checkpoint output path");
  train_cmd->add_option("--history", train.history, "loss history CSV output path");

  BoundaryOptions boundary;
  auto* boundary_cmd = app.add_subcommand("boundary", "export decision-boundary labels as CSV");
  boundary_cmd->add_option("checkpoint", boundary.checkpoint, "checkpoint file")->required();
  add_scan_options(boundary_cmd, boundary.scan);
  boundary_cmd->add_option("--threshold", boundary.threshold, "label threshold")
      ->capture_default_str();
  boundary_cmd->add_option("--out", boundary.out, "output CSV (default: stdout)");

  PlotOptions plot;
  auto* plot_cmd = app.add_subcommand("plot", "SVG heatmap of a function or boundary CSV");
  plot_cmd->add_option("source", plot.source, "catalog function or boundary CSV")->required();
  add_scan_options(plot_cmd, plot.scan);
  plot_cmd->add_option("--out", plot.out, "output SVG (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*eval) return cmd_eval(expr, out);
    if (*check_cmd) return cmd_check(check, out);
    if (*bounds_cmd) return cmd_scan_bounds(bounds_fn, bounds, out);
    if (*polar_cmd) return cmd_polar(polar_xy[0], polar_xy[1], polar_tol, out);
    if (*train_cmd) return cmd_train(train, out);
    if (*boundary_cmd) return cmd_boundary(boundary, out);
    if (*plot_cmd) return cmd_plot(plot, out);
  } catch (const Exit& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DivisionByZeroDivisor& e) {
    err << "error: " << e.what() << '\n';
    return kAlgebraError;
  } catch (const NonFiniteLoss& e) {
    err << "error: " << e.what() << '\n';
    return kNumericDivergence;
  } catch (const Overflow& e) {
    err << "error: " << e.what() << '\n';
    return kNumericDivergence;
  } catch (const NonFiniteValue& e) {
    err << "error: " << e.what() << '\n';
    return kNumericDivergence;
  } catch (const NonFiniteSample& e) {
    err << "error: " << e.what() << '\n';
    return kNumericDivergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace hyper::cli
