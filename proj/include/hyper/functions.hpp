#pragma once

/**
 * @file functions.hpp
 * @brief Activation catalog and numerical holomorphy verification.
 *
 * A plane function maps (x, y) to (u, v), read either as a hyperbolic
 * function w = u + h v or a complex function w = u + i v. Holomorphy is
 * checked with central differences against
 *
 *   hyperbolic (GCR):  u_x = v_y,  u_y =  v_x   =>  u_xx - u_yy = 0
 *   complex    (CR):   u_x = v_y,  u_y = -v_x   =>  u_xx + u_yy = 0
 *
 * Lattices over a box are traversed row-major: y index outer, x index inner,
 * both edges inclusive.
 */

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyper {

enum class FunctionKind { Hyperbolic, Complex };

const char* to_string(FunctionKind kind);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct PlaneValue {
  double u = 0.0;
  double v = 0.0;
};

class PlaneFunction {
 public:
  using Eval = std::function<PlaneValue(double x, double y)>;

  PlaneFunction(std::string name, FunctionKind kind, Eval eval);

  PlaneValue operator()(double x, double y) const { return eval_(x, y); }
  PlaneValue operator()(Point p) const { return eval_(p.x, p.y); }

  const std::string& name() const { return name_; }
  FunctionKind kind() const { return kind_; }

 private:
  std::string name_;
  FunctionKind kind_;
  Eval eval_;
};

/// Logistic sigma(t) = 1 / (1 + e^{-t}), evaluated without overflow for any t.
///
/// The result always lies strictly inside (0, 1): where the correctly rounded
/// value would be 1.0 or 0.0 the neighbouring double (1 - 2^-53, or the
/// smallest subnormal) is returned instead. Both are faithful roundings of
/// the true value.
double logistic(double t);

/// sigma'(t) = sigma(t) (1 - sigma(t)).
double logistic_derivative(double t);

/// u = v = 1 / (1 + e^{-x} e^{-y}): bounded, non-constant, holomorphic.
PlaneFunction holo_counterexample();

/// r(x + y)(1 + h), i.e. u = v = r(x + y).
PlaneFunction lift_real(std::function<double(double)> r, std::string name = "lift");

/// 1 / (1 + e^{-z}) evaluated through the idempotent decomposition:
/// sigma(xi) n1 + sigma(eta) n2.
PlaneFunction logistic_idempotent();

/// sigma(x) + h sigma(y). Not holomorphic.
PlaneFunction split_logistic();

/// e^z = e^x (cosh y + h sinh y). Holomorphic, unbounded.
/// Samples past the overflow threshold evaluate to infinity.
PlaneFunction hyperbolic_exp_fn();

/// Complex split activation sigma(x) + i sigma(y).
PlaneFunction complex_split_logistic();

/// Complex f(z) = z.
PlaneFunction complex_identity();

/// Complex f(z) = zbar.
PlaneFunction complex_conjugate();

/// Catalog lookup by CLI name: exp, holo, idem-logistic, split-logistic,
/// complex-split, complex-id, complex-conj.
std::optional<PlaneFunction> find_function(std::string_view name);
std::vector<std::string> catalog_names();

inline constexpr double kDefaultFirstStep = 1e-5;
inline constexpr double kDefaultSecondStep = 1e-4;
inline constexpr double kDefaultHoloTol = 1e-6;

struct Partials {
  double u_x = 0.0;
  double u_y = 0.0;
  double v_x = 0.0;
  double v_y = 0.0;
};

struct GcrReport {
  Point point;
  PlaneValue value;
  Partials partials;
  double r1 = 0.0;  // u_x - v_y
  double r2 = 0.0;  // u_y - v_x (hyperbolic) or u_y + v_x (complex)
  double step = 0.0;
  bool holomorphic = false;
};

/// Central-difference GCR / CR residuals at p. The point counts as
/// holomorphic when max(|r1|, |r2|) <= tol * (1 + max |partial|).
/// Throws NonFiniteSample if any stencil sample is not finite.
GcrReport gcr_check(const PlaneFunction& f, Point p, double step = kDefaultFirstStep,
                    double tol = kDefaultHoloTol);

struct WaveResidual {
  double u = 0.0;
  double v = 0.0;
};

/// Second-difference residual of u_xx - u_yy (hyperbolic, wave equation) or
/// u_xx + u_yy (complex, Laplace equation), and likewise for v.
WaveResidual wave_residual(const PlaneFunction& f, Point p, double step = kDefaultSecondStep);

struct Box {
  double x_min = -3.0;
  double x_max = 3.0;
  double y_min = -3.0;
  double y_max = 3.0;
};

struct Grid {
  std::size_t nx = 31;
  std::size_t ny = 31;
};

/// Inclusive lattice over a box. Throws std::invalid_argument for fewer than
/// two points per axis or an empty / non-finite box.
class Lattice {
 public:
  Lattice(Box box, Grid grid);

  double x(std::size_t i) const;
  double y(std::size_t j) const;
  std::size_t size() const { return grid_.nx * grid_.ny; }
  const Box& box() const { return box_; }
  const Grid& grid() const { return grid_; }

  /// Row-major: index = j * nx + i.
  Point at(std::size_t index) const;

 private:
  Box box_;
  Grid grid_;
};

struct GcrScanSummary {
  double max_abs_r1 = 0.0;
  double max_abs_r2 = 0.0;
  double fraction_holomorphic = 0.0;
  std::vector<GcrReport> reports;  // row-major lattice order
};

GcrScanSummary gcr_scan(const PlaneFunction& f, Box box, Grid grid,
                        double step = kDefaultFirstStep, double tol = kDefaultHoloTol);

struct WaveScanSummary {
  double max_abs_u = 0.0;
  double max_abs_v = 0.0;
};

WaveScanSummary wave_scan(const PlaneFunction& f, Box box, Grid grid,
                          double step = kDefaultSecondStep);

struct Range {
  double min = 0.0;
  double max = 0.0;
};

struct BoundsReport {
  Box box;
  Grid grid;
  Range u_range;
  Range v_range;
  double sup_abs = 0.0;  // max over the lattice of max(|u|, |v|)
};

BoundsReport bounds_scan(const PlaneFunction& f, Box box, Grid grid);

/// "%.17g"
std::string format_csv_real(double v);

/// Header `x,y,u,v,r1,r2`, one row per lattice point.
void write_scan_csv(std::ostream& out, const GcrScanSummary& scan);

}  // namespace hyper
