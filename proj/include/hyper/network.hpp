#pragma once

/**
 * @file network.hpp
 * @brief Feed-forward networks over hyperbolic numbers.
 *
 * Each layer computes s = W a + b in hyperbolic arithmetic and applies an
 * activation to every component of s. Training is full-batch gradient
 * descent on the componentwise squared error, with every hyperbolic
 * parameter treated as two real parameters.
 *
 * Because multiplication is diagonal in the idempotent basis, a network whose
 * activations act diagonally there splits into two independent real networks
 * (the xi channel and the eta channel). `decouple` builds that pair; it is
 * the oracle for both forward evaluation and training.
 */

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyper/core.hpp"
#include "hyper/functions.hpp"

namespace hyper {

enum class Activation {
  HoloLift,            // sigma(x + y)(1 + h)
  IdempotentLogistic,  // sigma(xi) n1 + sigma(eta) n2
  SplitLogistic,       // sigma(x) + h sigma(y)
  Identity,
};

/// Names used in checkpoints and configs: holo, idem-logistic,
/// split-logistic, identity.
const char* to_string(Activation a);
std::optional<Activation> parse_activation(std::string_view name);

HyperbolicNumber activate(Activation a, HyperbolicNumber s);

/// Transposed Jacobian of the activation at `s` applied to `grad_out`.
HyperbolicNumber activation_backward(Activation a, HyperbolicNumber s,
                                     HyperbolicNumber grad_out);

struct HyperbolicLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<HyperbolicNumber> weights;  // outputs x inputs, row-major
  std::vector<HyperbolicNumber> biases;   // outputs
  Activation activation = Activation::Identity;

  HyperbolicNumber& weight(std::size_t o, std::size_t i) { return weights[o * inputs + i]; }
  HyperbolicNumber weight(std::size_t o, std::size_t i) const { return weights[o * inputs + i]; }
};

struct HyperbolicNetwork {
  std::vector<HyperbolicLayer> layers;
  std::uint64_t seed = 0;

  std::size_t input_dim() const { return layers.front().inputs; }
  std::size_t output_dim() const { return layers.back().outputs; }
  std::vector<std::size_t> dims() const;
  /// Number of real parameters (two per hyperbolic weight or bias).
  std::size_t parameter_count() const;
};

/// Weights are drawn from std::mt19937_64(seed); each real component is
/// lo + (hi - lo) * ((g() >> 11) * 2^-53) with hi = -lo = 1 / sqrt(fan_in),
/// visiting layers in order, weights row-major, x before y. Biases are zero.
/// Throws InvalidDims unless dims has at least two entries, all >= 1.
HyperbolicNetwork init(std::span<const std::size_t> dims, Activation activation,
                       std::uint64_t seed);

/// Throws DimensionMismatch if input.size() != net.input_dim().
std::vector<HyperbolicNumber> forward(const HyperbolicNetwork& net,
                                      std::span<const HyperbolicNumber> input);

/// Flat real parameter vector: per layer, weights row-major as (x, y) pairs,
/// then biases as (x, y) pairs.
std::vector<double> flatten_parameters(const HyperbolicNetwork& net);

/// Inverse of flatten_parameters. Throws DimensionMismatch on a size mismatch
/// and NonFiniteValue on non-finite entries.
void assign_parameters(HyperbolicNetwork& net, std::span<const double> params);

struct Sample {
  std::vector<HyperbolicNumber> input;
  std::vector<HyperbolicNumber> target;
};

class Dataset {
 public:
  Dataset() = default;
  /// Throws DimensionMismatch if samples disagree on input or target size,
  /// and InvalidDims for empty input or target vectors.
  explicit Dataset(std::vector<Sample> samples);

  const std::vector<Sample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  std::size_t input_dim() const;
  std::size_t target_dim() const;

 private:
  std::vector<Sample> samples_;
};

/// Mean over components of (du^2 + dv^2). Not the indefinite modulus.
double loss_mse(std::span<const HyperbolicNumber> pred,
                std::span<const HyperbolicNumber> target);

/// Mean of loss_mse over the dataset.
double dataset_loss(const HyperbolicNetwork& net, const Dataset& data);

struct LossGradient {
  double loss = 0.0;
  std::vector<double> gradient;  // flatten_parameters layout
};

/// Backpropagation of dataset_loss.
LossGradient loss_gradient(const HyperbolicNetwork& net, const Dataset& data);

struct TrainReport {
  std::vector<double> loss_history;  // loss before each epoch's update
  double final_loss = 0.0;           // loss after the last update
  std::size_t epochs = 0;
};

/// Full-batch gradient descent, in place. Throws std::invalid_argument for
/// epochs == 0 or lr <= 0, NonFiniteLoss when training diverges.
TrainReport train_sgd(HyperbolicNetwork& net, const Dataset& data, std::size_t epochs,
                      double lr);

inline constexpr std::size_t kMaxGradientCheckParameters = 50;

/// Gradient entries are compared as |bp - fd| / max(|bp|, |fd|, floor)
/// where fd is a central difference of dataset_loss; the floor keeps
/// vanishing entries from dividing rounding noise by zero.
inline constexpr double kGradientCheckFloor = 1e-4;

/// Max relative error between backprop and finite differences over every
/// real parameter. Throws std::invalid_argument for nets above
/// kMaxGradientCheckParameters.
double gradient_check(const HyperbolicNetwork& net, const Dataset& data, double step);

// Real-valued networks produced by decouple().

enum class RealActivation {
  Identity,
  Logistic,       // sigma(t)
  TwiceLogistic,  // 2 sigma(t)
  Zero,           // t -> 0
};

const char* to_string(RealActivation a);

struct RealLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;  // outputs x inputs, row-major
  std::vector<double> biases;
  RealActivation activation = RealActivation::Identity;
};

struct RealNetwork {
  std::vector<RealLayer> layers;

  std::vector<double> forward(std::span<const double> input) const;
};

struct RealSample {
  std::vector<double> input;
  std::vector<double> target;
};

/// Mean over samples of the mean squared component error.
double real_dataset_loss(const RealNetwork& net, std::span<const RealSample> data);

/// Full-batch gradient descent on real_dataset_loss; returns the loss before
/// each update followed by the final loss as the last element.
std::vector<double> train_real_sgd(RealNetwork& net, std::span<const RealSample> data,
                                   std::size_t epochs, double lr);

struct DecoupledNetwork {
  RealNetwork xi;
  RealNetwork eta;

  /// Runs both channels on the idempotent coordinates of the input and
  /// recombines through from_idempotent.
  std::vector<HyperbolicNumber> forward(std::span<const HyperbolicNumber> input) const;
};

/// Per-activation channel maps: Identity -> (t, t); IdempotentLogistic ->
/// (sigma, sigma); HoloLift -> (2 sigma, 0), so the eta channel of a HoloLift
/// layer is identically zero. SplitLogistic mixes the channels and throws
/// NotDecoupleable.
DecoupledNetwork decouple(const HyperbolicNetwork& net);

/// Splits a dataset into its xi-channel and eta-channel real datasets.
std::pair<std::vector<RealSample>, std::vector<RealSample>> decouple(const Dataset& data);

/// Trains both channels with the same lr. Since |dz|^2 = (dxi^2 + deta^2) / 2
/// the reported losses are (L_xi + L_eta) / 2, which matches train_sgd on
/// the hyperbolic network.
TrainReport train_decoupled(DecoupledNetwork& net, const Dataset& data, std::size_t epochs,
                            double lr);

struct BoundaryPoint {
  double x = 0.0;
  double y = 0.0;
  double u = 0.0;
  double v = 0.0;
  int label_u = 0;  // sign(u - threshold)
  int label_v = 0;  // sign(v - threshold)
};

/// Evaluates a 1-in/1-out network on every lattice point z = x + h y
/// (row-major). Throws DimensionMismatch for other shapes.
std::vector<BoundaryPoint> decision_boundary(const HyperbolicNetwork& net, Box box,
                                             Grid grid, double threshold);

// Files.

/// Header `x,y,u,v,label_u,label_v`.
void write_boundary_csv(std::ostream& out, std::span<const BoundaryPoint> points);
std::vector<BoundaryPoint> read_boundary_csv(std::istream& in);

/// Header `x1,y1,...,xn,yn,tu1,tv1,...,tum,tvm`; the 1-in/1-out form may use
/// `x,y,tu,tv`. Throws std::runtime_error on malformed input.
Dataset read_dataset_csv(std::istream& in);
void write_dataset_csv(std::ostream& out, const Dataset& data);

/// {"dims": [...], "activation": "...", "seed": n, "parameters": [...]} with
/// parameters in flatten_parameters order.
std::string checkpoint_json(const HyperbolicNetwork& net);
HyperbolicNetwork parse_checkpoint(std::string_view json);

/// Header `epoch,loss`.
void write_loss_history_csv(std::ostream& out, const TrainReport& report);

}  // namespace hyper
