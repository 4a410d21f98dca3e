#include "hyper/functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "hyper/core.hpp"
#include "hyper/errors.hpp"
#include "hyper/polar.hpp"

namespace hyper {

namespace {

constexpr double kBelowOne = 1.0 - 0x1p-53;
constexpr double kAboveZero = std::numeric_limits<double>::denorm_min();

bool finite(PlaneValue w) { return std::isfinite(w.u) && std::isfinite(w.v); }

PlaneValue sample(const PlaneFunction& f, double x, double y, Point at) {
  const PlaneValue w = f(x, y);
  if (!finite(w)) throw NonFiniteSample(at.x, at.y);
  return w;
}

void require_positive_step(double step) {
  if (!(step > 0) || !std::isfinite(step)) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
}

}  // namespace

const char* to_string(FunctionKind kind) {
  return kind == FunctionKind::Hyperbolic ? "hyperbolic" : "complex";
}

PlaneFunction::PlaneFunction(std::string name, FunctionKind kind, Eval eval)
    : name_(std::move(name)), kind_(kind), eval_(std::move(eval)) {}

double logistic(double t) {
  if (t >= 0) return std::min(1.0 / (1.0 + std::exp(-t)), kBelowOne);
  const double e = std::exp(t);
  return std::max(e / (1.0 + e), kAboveZero);
}

double logistic_derivative(double t) {
  const double s = logistic(t);
  return s * (1.0 - s);
}

PlaneFunction holo_counterexample() {
  return {"holo", FunctionKind::Hyperbolic, [](double x, double y) -> PlaneValue {
            const double s = logistic(x + y);
            return {s, s};
          }};
}

PlaneFunction lift_real(std::function<double(double)> r, std::string name) {
  return {std::move(name), FunctionKind::Hyperbolic,
          [r = std::move(r)](double x, double y) -> PlaneValue {
            const double s = r(x + y);
            return {s, s};
          }};
}

PlaneFunction logistic_idempotent() {
  return {"idem-logistic", FunctionKind::Hyperbolic, [](double x, double y) -> PlaneValue {
            const double sx = logistic(x + y);
            const double se = logistic(x - y);
            return {0.5 * (sx + se), 0.5 * (sx - se)};
          }};
}

PlaneFunction split_logistic() {
  return {"split-logistic", FunctionKind::Hyperbolic, [](double x, double y) -> PlaneValue {
            return {logistic(x), logistic(y)};
          }};
}

PlaneFunction hyperbolic_exp_fn() {
  return {"exp", FunctionKind::Hyperbolic, [](double x, double y) -> PlaneValue {
            try {
              const HyperbolicNumber w = exp(HyperbolicNumber{x, y});
              return {w.x(), w.y()};
            } catch (const Overflow&) {
              constexpr double inf = std::numeric_limits<double>::infinity();
              return {inf, inf};
            }
          }};
}

PlaneFunction complex_split_logistic() {
  return {"complex-split", FunctionKind::Complex, [](double x, double y) -> PlaneValue {
            return {logistic(x), logistic(y)};
          }};
}

PlaneFunction complex_identity() {
  return {"complex-id", FunctionKind::Complex,
          [](double x, double y) -> PlaneValue { return {x, y}; }};
}

PlaneFunction complex_conjugate() {
  return {"complex-conj", FunctionKind::Complex,
          [](double x, double y) -> PlaneValue { return {x, -y}; }};
}

std::optional<PlaneFunction> find_function(std::string_view name) {
  if (name == "exp") return hyperbolic_exp_fn();
  if (name == "holo") return holo_counterexample();
  if (name == "idem-logistic") return logistic_idempotent();
  if (name == "split-logistic") return split_logistic();
  if (name == "complex-split") return complex_split_logistic();
  if (name == "complex-id") return complex_identity();
  if (name == "complex-conj") return complex_conjugate();
  return std::nullopt;
}

std::vector<std::string> catalog_names() {
  return {"exp",           "holo",       "idem-logistic", "split-logistic",
          "complex-split", "complex-id", "complex-conj"};
}

GcrReport gcr_check(const PlaneFunction& f, Point p, double step, double tol) {
  require_positive_step(step);
  const PlaneValue center = sample(f, p.x, p.y, p);
  const PlaneValue xp = sample(f, p.x + step, p.y, p);
  const PlaneValue xm = sample(f, p.x - step, p.y, p);
  const PlaneValue yp = sample(f, p.x, p.y + step, p);
  const PlaneValue ym = sample(f, p.x, p.y - step, p);

  const double inv = 1.0 / (2.0 * step);
  Partials d;
  d.u_x = (xp.u - xm.u) * inv;
  d.v_x = (xp.v - xm.v) * inv;
  d.u_y = (yp.u - ym.u) * inv;
  d.v_y = (yp.v - ym.v) * inv;

  GcrReport report;
  report.point = p;
  report.value = center;
  report.partials = d;
  report.step = step;
  report.r1 = d.u_x - d.v_y;
  report.r2 = f.kind() == FunctionKind::Hyperbolic ? d.u_y - d.v_x : d.u_y + d.v_x;

  const double grad = std::max({std::abs(d.u_x), std::abs(d.u_y), std::abs(d.v_x),
                                std::abs(d.v_y)});
  report.holomorphic =
      std::max(std::abs(report.r1), std::abs(report.r2)) <= tol * (1.0 + grad);
  return report;
}

WaveResidual wave_residual(const PlaneFunction& f, Point p, double step) {
  require_positive_step(step);
  const PlaneValue c = sample(f, p.x, p.y, p);
  const PlaneValue xp = sample(f, p.x + step, p.y, p);
  const PlaneValue xm = sample(f, p.x - step, p.y, p);
  const PlaneValue yp = sample(f, p.x, p.y + step, p);
  const PlaneValue ym = sample(f, p.x, p.y - step, p);

  const double inv = 1.0 / (step * step);
  const double u_xx = (xp.u - 2.0 * c.u + xm.u) * inv;
  const double u_yy = (yp.u - 2.0 * c.u + ym.u) * inv;
  const double v_xx = (xp.v - 2.0 * c.v + xm.v) * inv;
  const double v_yy = (yp.v - 2.0 * c.v + ym.v) * inv;
  if (f.kind() == FunctionKind::Hyperbolic) return {u_xx - u_yy, v_xx - v_yy};
  return {u_xx + u_yy, v_xx + v_yy};
}

Lattice::Lattice(Box box, Grid grid) : box_(box), grid_(grid) {
  if (grid.nx < 2 || grid.ny < 2) {
    throw std::invalid_argument("lattice needs at least 2 points per axis");
  }
  const bool finite_box = std::isfinite(box.x_min) && std::isfinite(box.x_max) &&
                          std::isfinite(box.y_min) && std::isfinite(box.y_max);
  if (!finite_box || !(box.x_min < box.x_max) || !(box.y_min < box.y_max)) {
    throw std::invalid_argument("lattice box must be finite with min < max");
  }
}

double Lattice::x(std::size_t i) const {
  if (i + 1 == grid_.nx) return box_.x_max;
  return box_.x_min + (box_.x_max - box_.x_min) * static_cast<double>(i) /
                          static_cast<double>(grid_.nx - 1);
}

double Lattice::y(std::size_t j) const {
  if (j + 1 == grid_.ny) return box_.y_max;
  return box_.y_min + (box_.y_max - box_.y_min) * static_cast<double>(j) /
                          static_cast<double>(grid_.ny - 1);
}

Point Lattice::at(std::size_t index) const {
  return {x(index % grid_.nx), y(index / grid_.nx)};
}

GcrScanSummary gcr_scan(const PlaneFunction& f, Box box, Grid grid, double step,
                        double tol) {
  const Lattice lattice(box, grid);
  GcrScanSummary summary;
  summary.reports.reserve(lattice.size());
  std::size_t holomorphic = 0;
  for (std::size_t k = 0; k < lattice.size(); ++k) {
    GcrReport r = gcr_check(f, lattice.at(k), step, tol);
    summary.max_abs_r1 = std::max(summary.max_abs_r1, std::abs(r.r1));
    summary.max_abs_r2 = std::max(summary.max_abs_r2, std::abs(r.r2));
    if (r.holomorphic) ++holomorphic;
    summary.reports.push_back(r);
  }
  summary.fraction_holomorphic =
      static_cast<double>(holomorphic) / static_cast<double>(lattice.size());
  return summary;
}

WaveScanSummary wave_scan(const PlaneFunction& f, Box box, Grid grid, double step) {
  const Lattice lattice(box, grid);
  WaveScanSummary summary;
  for (std::size_t k = 0; k < lattice.size(); ++k) {
    const WaveResidual r = wave_residual(f, lattice.at(k), step);
    summary.max_abs_u = std::max(summary.max_abs_u, std::abs(r.u));
    summary.max_abs_v = std::max(summary.max_abs_v, std::abs(r.v));
  }
  return summary;
}

BoundsReport bounds_scan(const PlaneFunction& f, Box box, Grid grid) {
  const Lattice lattice(box, grid);
  BoundsReport report;
  report.box = box;
  report.grid = grid;
  for (std::size_t k = 0; k < lattice.size(); ++k) {
    const Point p = lattice.at(k);
    const PlaneValue w = sample(f, p.x, p.y, p);
    if (k == 0) {
      report.u_range = {w.u, w.u};
      report.v_range = {w.v, w.v};
    }
    report.u_range.min = std::min(report.u_range.min, w.u);
    report.u_range.max = std::max(report.u_range.max, w.u);
    report.v_range.min = std::min(report.v_range.min, w.v);
    report.v_range.max = std::max(report.v_range.max, w.v);
    report.sup_abs = std::max({report.sup_abs, std::abs(w.u), std::abs(w.v)});
  }
  return report;
}

std::string format_csv_real(double v) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
  return std::string(buf, static_cast<std::size_t>(n));
}

void write_scan_csv(std::ostream& out, const GcrScanSummary& scan) {
  out << "x,y,u,v,r1,r2\n";
  for (const GcrReport& r : scan.reports) {
    out << format_csv_real(r.point.x) << ',' << format_csv_real(r.point.y) << ','
        << format_csv_real(r.value.u) << ',' << format_csv_real(r.value.v) << ','
        << format_csv_real(r.r1) << ',' << format_csv_real(r.r2) << '\n';
  }
}

}  // namespace hyper
