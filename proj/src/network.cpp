#include "hyper/network.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hyper/errors.hpp"

namespace hyper {

namespace {

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

const char* to_string(Activation a) {
  switch (a) {
    case Activation::HoloLift: return "holo";
    case Activation::IdempotentLogistic: return "idem-logistic";
    case Activation::SplitLogistic: return "split-logistic";
    case Activation::Identity: return "identity";
  }
  return "?";
}

std::optional<Activation> parse_activation(std::string_view name) {
  for (Activation a : {Activation::HoloLift, Activation::IdempotentLogistic,
                       Activation::SplitLogistic, Activation::Identity}) {
    if (name == to_string(a)) return a;
  }
  return std::nullopt;
}

HyperbolicNumber activate(Activation a, HyperbolicNumber s) {
  static const PlaneFunction holo = holo_counterexample();
  static const PlaneFunction idem = logistic_idempotent();
  static const PlaneFunction split = split_logistic();
  PlaneValue w;
  switch (a) {
    case Activation::HoloLift: w = holo(s.x(), s.y()); break;
    case Activation::IdempotentLogistic: w = idem(s.x(), s.y()); break;
    case Activation::SplitLogistic: w = split(s.x(), s.y()); break;
    case Activation::Identity: return s;
  }
  return {w.u, w.v};
}

HyperbolicNumber activation_backward(Activation a, HyperbolicNumber s,
                                     HyperbolicNumber grad_out) {
  const double gu = grad_out.x();
  const double gv = grad_out.y();
  switch (a) {
    case Activation::HoloLift: {
      // u = v = sigma(x + y): every partial equals sigma'(x + y).
      const double d = logistic_derivative(s.x() + s.y()) * (gu + gv);
      return {d, d};
    }
    case Activation::IdempotentLogistic: {
      // Jacobian [[p, q], [q, p]] with p, q = (sigma'(xi) +- sigma'(eta)) / 2.
      const double a_xi = logistic_derivative(s.x() + s.y());
      const double a_eta = logistic_derivative(s.x() - s.y());
      const double p = 0.5 * (a_xi + a_eta);
      const double q = 0.5 * (a_xi - a_eta);
      return {p * gu + q * gv, q * gu + p * gv};
    }
    case Activation::SplitLogistic:
      return {logistic_derivative(s.x()) * gu, logistic_derivative(s.y()) * gv};
    case Activation::Identity:
      return grad_out;
  }
  return grad_out;
}

std::vector<std::size_t> HyperbolicNetwork::dims() const {
  std::vector<std::size_t> d;
  if (layers.empty()) return d;
  d.push_back(layers.front().inputs);
  for (const auto& layer : layers) d.push_back(layer.outputs);
  return d;
}

std::size_t HyperbolicNetwork::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers) n += 2 * (layer.weights.size() + layer.biases.size());
  return n;
}

HyperbolicNetwork init(std::span<const std::size_t> dims, Activation activation,
                       std::uint64_t seed) {
  if (dims.size() < 2) throw InvalidDims("a network needs at least an input and an output size");
  if (std::any_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 0; })) {
    throw InvalidDims("layer sizes must be at least 1");
  }
  std::mt19937_64 gen(seed);
  const auto uniform = [&gen](double lo, double hi) {
    const double unit = static_cast<double>(gen() >> 11) * 0x1p-53;
    return lo + (hi - lo) * unit;
  };

  HyperbolicNetwork net;
  net.seed = seed;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    HyperbolicLayer layer;
    layer.inputs = dims[l];
    layer.outputs = dims[l + 1];
    layer.activation = activation;
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.inputs));
    layer.weights.reserve(layer.inputs * layer.outputs);
    for (std::size_t k = 0; k < layer.inputs * layer.outputs; ++k) {
      const double x = uniform(-bound, bound);
      const double y = uniform(-bound, bound);
      layer.weights.emplace_back(x, y);
    }
    layer.biases.assign(layer.outputs, HyperbolicNumber{});
    net.layers.push_back(std::move(layer));
  }
  return net;
}

namespace {

// Pre-activations and inputs of every layer, kept for backpropagation.
struct Trace {
  std::vector<std::vector<HyperbolicNumber>> inputs;
  std::vector<std::vector<HyperbolicNumber>> pre;
  std::vector<HyperbolicNumber> output;
};

Trace run(const HyperbolicNetwork& net, std::span<const HyperbolicNumber> input) {
  if (net.layers.empty()) throw InvalidDims("network has no layers");
  if (input.size() != net.input_dim()) throw DimensionMismatch(net.input_dim(), input.size());
  Trace t;
  std::vector<HyperbolicNumber> a(input.begin(), input.end());
  for (const auto& layer : net.layers) {
    std::vector<HyperbolicNumber> s(layer.biases);
    for (std::size_t o = 0; o < layer.outputs; ++o) {
      for (std::size_t i = 0; i < layer.inputs; ++i) s[o] = s[o] + layer.weight(o, i) * a[i];
    }
    std::vector<HyperbolicNumber> next(layer.outputs);
    for (std::size_t o = 0; o < layer.outputs; ++o) next[o] = activate(layer.activation, s[o]);
    t.inputs.push_back(std::move(a));
    t.pre.push_back(std::move(s));
    a = std::move(next);
  }
  t.output = std::move(a);
  return t;
}

}  // namespace

std::vector<HyperbolicNumber> forward(const HyperbolicNetwork& net,
                                      std::span<const HyperbolicNumber> input) {
  return run(net, input).output;
}

std::vector<double> flatten_parameters(const HyperbolicNetwork& net) {
  std::vector<double> p;
  p.reserve(net.parameter_count());
  for (const auto& layer : net.layers) {
    for (const auto& w : layer.weights) {
      p.push_back(w.x());
      p.push_back(w.y());
    }
    for (const auto& b : layer.biases) {
      p.push_back(b.x());
      p.push_back(b.y());
    }
  }
  return p;
}

void assign_parameters(HyperbolicNetwork& net, std::span<const double> params) {
  if (params.size() != net.parameter_count()) {
    throw DimensionMismatch(net.parameter_count(), params.size());
  }
  std::size_t k = 0;
  for (auto& layer : net.layers) {
    for (auto& w : layer.weights) {
      w = {params[k], params[k + 1]};
      k += 2;
    }
    for (auto& b : layer.biases) {
      b = {params[k], params[k + 1]};
      k += 2;
    }
  }
}

Dataset::Dataset(std::vector<Sample> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) return;
  const std::size_t in = samples_.front().input.size();
  const std::size_t out = samples_.front().target.size();
  if (in == 0 || out == 0) throw InvalidDims("samples need non-empty inputs and targets");
  for (const auto& s : samples_) {
    if (s.input.size() != in) throw DimensionMismatch(in, s.input.size());
    if (s.target.size() != out) throw DimensionMismatch(out, s.target.size());
  }
}

std::size_t Dataset::input_dim() const {
  return samples_.empty() ? 0 : samples_.front().input.size();
}

std::size_t Dataset::target_dim() const {
  return samples_.empty() ? 0 : samples_.front().target.size();
}

double loss_mse(std::span<const HyperbolicNumber> pred,
                std::span<const HyperbolicNumber> target) {
  if (pred.size() != target.size()) throw DimensionMismatch(target.size(), pred.size());
  if (pred.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < pred.size(); ++k) {
    const double du = pred[k].x() - target[k].x();
    const double dv = pred[k].y() - target[k].y();
    sum += du * du + dv * dv;
  }
  return sum / static_cast<double>(pred.size());
}

double dataset_loss(const HyperbolicNetwork& net, const Dataset& data) {
  if (data.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& s : data.samples()) sum += loss_mse(forward(net, s.input), s.target);
  return sum / static_cast<double>(data.size());
}

LossGradient loss_gradient(const HyperbolicNetwork& net, const Dataset& data) {
  LossGradient result;
  result.gradient.assign(net.parameter_count(), 0.0);
  if (data.empty()) return result;

  // Offsets of each layer's block in the flat layout.
  std::vector<std::size_t> offset;
  std::size_t acc = 0;
  for (const auto& layer : net.layers) {
    offset.push_back(acc);
    acc += 2 * (layer.weights.size() + layer.biases.size());
  }

  const double n = static_cast<double>(data.size());
  for (const auto& sample : data.samples()) {
    const Trace t = run(net, sample.input);
    if (sample.target.size() != t.output.size()) {
      throw DimensionMismatch(t.output.size(), sample.target.size());
    }
    const double m = static_cast<double>(t.output.size());
    result.loss += loss_mse(t.output, sample.target) / n;

    std::vector<HyperbolicNumber> grad(t.output.size());
    for (std::size_t k = 0; k < grad.size(); ++k) {
      grad[k] = scale(2.0 / (n * m), t.output[k] - sample.target[k]);
    }

    for (std::size_t l = net.layers.size(); l-- > 0;) {
      const HyperbolicLayer& layer = net.layers[l];
      const auto& a = t.inputs[l];
      std::vector<HyperbolicNumber> grad_in(layer.inputs);
      double* g = result.gradient.data() + offset[l];
      double* gb = g + 2 * layer.weights.size();
      for (std::size_t o = 0; o < layer.outputs; ++o) {
        const HyperbolicNumber gs = activation_backward(layer.activation, t.pre[l][o], grad[o]);
        // s = w a is symmetric in w and a: dL/dw = gs * a, dL/da = gs * w.
        for (std::size_t i = 0; i < layer.inputs; ++i) {
          const HyperbolicNumber gw = gs * a[i];
          g[2 * (o * layer.inputs + i)] += gw.x();
          g[2 * (o * layer.inputs + i) + 1] += gw.y();
          grad_in[i] = grad_in[i] + gs * layer.weight(o, i);
        }
        gb[2 * o] += gs.x();
        gb[2 * o + 1] += gs.y();
      }
      grad = std::move(grad_in);
    }
  }
  return result;
}

TrainReport train_sgd(HyperbolicNetwork& net, const Dataset& data, std::size_t epochs,
                      double lr) {
  if (epochs == 0) throw std::invalid_argument("epochs must be at least 1");
  if (!(lr > 0) || !std::isfinite(lr)) throw std::invalid_argument("lr must be positive");

  TrainReport report;
  report.epochs = epochs;
  report.loss_history.reserve(epochs);
  std::vector<double> params = flatten_parameters(net);
  for (std::size_t e = 0; e < epochs; ++e) {
    LossGradient lg;
    try {
      lg = loss_gradient(net, data);
    } catch (const NonFiniteValue&) {
      throw NonFiniteLoss(e);
    }
    if (!std::isfinite(lg.loss) || !all_finite(lg.gradient)) throw NonFiniteLoss(e);
    report.loss_history.push_back(lg.loss);
    for (std::size_t k = 0; k < params.size(); ++k) params[k] -= lr * lg.gradient[k];
    if (!all_finite(params)) throw NonFiniteLoss(e);
    assign_parameters(net, params);
  }
  try {
    report.final_loss = dataset_loss(net, data);
  } catch (const NonFiniteValue&) {
    throw NonFiniteLoss(epochs);
  }
  if (!std::isfinite(report.final_loss)) throw NonFiniteLoss(epochs);
  return report;
}

double gradient_check(const HyperbolicNetwork& net, const Dataset& data, double step) {
  if (net.parameter_count() > kMaxGradientCheckParameters) {
    throw std::invalid_argument("gradient_check is limited to small networks");
  }
  if (!(step > 0)) throw std::invalid_argument("step must be positive");
  const std::vector<double> analytic = loss_gradient(net, data).gradient;
  const std::vector<double> base = flatten_parameters(net);

  HyperbolicNetwork probe = net;
  std::vector<double> p = base;
  double worst = 0.0;
  for (std::size_t k = 0; k < base.size(); ++k) {
    p[k] = base[k] + step;
    assign_parameters(probe, p);
    const double up = dataset_loss(probe, data);
    p[k] = base[k] - step;
    assign_parameters(probe, p);
    const double down = dataset_loss(probe, data);
    p[k] = base[k];

    const double numeric = (up - down) / (2.0 * step);
    const double denom =
        std::max({std::abs(analytic[k]), std::abs(numeric), kGradientCheckFloor});
    worst = std::max(worst, std::abs(analytic[k] - numeric) / denom);
  }
  return worst;
}

// Real networks.

const char* to_string(RealActivation a) {
  switch (a) {
    case RealActivation::Identity: return "identity";
    case RealActivation::Logistic: return "logistic";
    case RealActivation::TwiceLogistic: return "twice-logistic";
    case RealActivation::Zero: return "zero";
  }
  return "?";
}

namespace {

double real_activate(RealActivation a, double t) {
  switch (a) {
    case RealActivation::Identity: return t;
    case RealActivation::Logistic: return logistic(t);
    case RealActivation::TwiceLogistic: return 2.0 * logistic(t);
    case RealActivation::Zero: return 0.0;
  }
  return t;
}

double real_activate_derivative(RealActivation a, double t) {
  switch (a) {
    case RealActivation::Identity: return 1.0;
    case RealActivation::Logistic: return logistic_derivative(t);
    case RealActivation::TwiceLogistic: return 2.0 * logistic_derivative(t);
    case RealActivation::Zero: return 0.0;
  }
  return 1.0;
}

struct RealTrace {
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> pre;
  std::vector<double> output;
};

RealTrace real_run(const RealNetwork& net, std::span<const double> input) {
  if (net.layers.empty()) throw InvalidDims("network has no layers");
  if (input.size() != net.layers.front().inputs) {
    throw DimensionMismatch(net.layers.front().inputs, input.size());
  }
  RealTrace t;
  std::vector<double> a(input.begin(), input.end());
  for (const auto& layer : net.layers) {
    std::vector<double> s(layer.biases);
    for (std::size_t o = 0; o < layer.outputs; ++o) {
      for (std::size_t i = 0; i < layer.inputs; ++i) {
        s[o] += layer.weights[o * layer.inputs + i] * a[i];
      }
    }
    std::vector<double> next(layer.outputs);
    for (std::size_t o = 0; o < layer.outputs; ++o) next[o] = real_activate(layer.activation, s[o]);
    t.inputs.push_back(std::move(a));
    t.pre.push_back(std::move(s));
    a = std::move(next);
  }
  t.output = std::move(a);
  return t;
}

double real_sample_loss(std::span<const double> pred, std::span<const double> target) {
  double sum = 0.0;
  for (std::size_t k = 0; k < pred.size(); ++k) {
    const double d = pred[k] - target[k];
    sum += d * d;
  }
  return sum / static_cast<double>(pred.size());
}

}  // namespace

std::vector<double> RealNetwork::forward(std::span<const double> input) const {
  return real_run(*this, input).output;
}

double real_dataset_loss(const RealNetwork& net, std::span<const RealSample> data) {
  if (data.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& s : data) {
    const auto out = net.forward(s.input);
    if (out.size() != s.target.size()) throw DimensionMismatch(out.size(), s.target.size());
    sum += real_sample_loss(out, s.target);
  }
  return sum / static_cast<double>(data.size());
}

std::vector<double> train_real_sgd(RealNetwork& net, std::span<const RealSample> data,
                                   std::size_t epochs, double lr) {
  if (epochs == 0) throw std::invalid_argument("epochs must be at least 1");
  std::vector<double> history;
  const double n = static_cast<double>(data.size());
  for (std::size_t e = 0; e < epochs; ++e) {
    std::vector<std::vector<double>> gw(net.layers.size());
    std::vector<std::vector<double>> gb(net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      gw[l].assign(net.layers[l].weights.size(), 0.0);
      gb[l].assign(net.layers[l].biases.size(), 0.0);
    }
    double loss = 0.0;
    for (const auto& s : data) {
      const RealTrace t = real_run(net, s.input);
      loss += real_sample_loss(t.output, s.target) / n;
      const double m = static_cast<double>(t.output.size());
      std::vector<double> g(t.output.size());
      for (std::size_t k = 0; k < g.size(); ++k) g[k] = 2.0 * (t.output[k] - s.target[k]) / (n * m);
      for (std::size_t l = net.layers.size(); l-- > 0;) {
        const RealLayer& layer = net.layers[l];
        std::vector<double> g_in(layer.inputs, 0.0);
        for (std::size_t o = 0; o < layer.outputs; ++o) {
          const double gs = g[o] * real_activate_derivative(layer.activation, t.pre[l][o]);
          for (std::size_t i = 0; i < layer.inputs; ++i) {
            gw[l][o * layer.inputs + i] += gs * t.inputs[l][i];
            g_in[i] += gs * layer.weights[o * layer.inputs + i];
          }
          gb[l][o] += gs;
        }
        g = std::move(g_in);
      }
    }
    if (!std::isfinite(loss)) throw NonFiniteLoss(e);
    history.push_back(loss);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      for (std::size_t k = 0; k < gw[l].size(); ++k) net.layers[l].weights[k] -= lr * gw[l][k];
      for (std::size_t k = 0; k < gb[l].size(); ++k) net.layers[l].biases[k] -= lr * gb[l][k];
    }
  }
  history.push_back(real_dataset_loss(net, data));
  return history;
}

std::vector<HyperbolicNumber> DecoupledNetwork::forward(
    std::span<const HyperbolicNumber> input) const {
  std::vector<double> xi_in;
  std::vector<double> eta_in;
  for (const auto& z : input) {
    const auto c = to_idempotent(z);
    xi_in.push_back(c.xi);
    eta_in.push_back(c.eta);
  }
  const auto xi_out = xi.forward(xi_in);
  const auto eta_out = eta.forward(eta_in);
  std::vector<HyperbolicNumber> out;
  out.reserve(xi_out.size());
  for (std::size_t k = 0; k < xi_out.size(); ++k) {
    out.push_back(from_idempotent({xi_out[k], eta_out[k]}));
  }
  return out;
}

DecoupledNetwork decouple(const HyperbolicNetwork& net) {
  DecoupledNetwork d;
  for (const auto& layer : net.layers) {
    RealActivation act_xi = RealActivation::Identity;
    RealActivation act_eta = RealActivation::Identity;
    switch (layer.activation) {
      case Activation::Identity: break;
      case Activation::IdempotentLogistic:
        act_xi = act_eta = RealActivation::Logistic;
        break;
      case Activation::HoloLift:
        // u = v = sigma(xi): xi_out = u + v = 2 sigma(xi), eta_out = u - v = 0.
        act_xi = RealActivation::TwiceLogistic;
        act_eta = RealActivation::Zero;
        break;
      case Activation::SplitLogistic:
        throw NotDecoupleable("split-logistic mixes the xi and eta channels");
    }
    RealLayer lx{layer.inputs, layer.outputs, {}, {}, act_xi};
    RealLayer le{layer.inputs, layer.outputs, {}, {}, act_eta};
    for (const auto& w : layer.weights) {
      const auto c = to_idempotent(w);
      lx.weights.push_back(c.xi);
      le.weights.push_back(c.eta);
    }
    for (const auto& b : layer.biases) {
      const auto c = to_idempotent(b);
      lx.biases.push_back(c.xi);
      le.biases.push_back(c.eta);
    }
    d.xi.layers.push_back(std::move(lx));
    d.eta.layers.push_back(std::move(le));
  }
  return d;
}

std::pair<std::vector<RealSample>, std::vector<RealSample>> decouple(const Dataset& data) {
  std::vector<RealSample> xi;
  std::vector<RealSample> eta;
  for (const auto& s : data.samples()) {
    RealSample sx;
    RealSample se;
    for (const auto& z : s.input) {
      const auto c = to_idempotent(z);
      sx.input.push_back(c.xi);
      se.input.push_back(c.eta);
    }
    for (const auto& z : s.target) {
      const auto c = to_idempotent(z);
      sx.target.push_back(c.xi);
      se.target.push_back(c.eta);
    }
    xi.push_back(std::move(sx));
    eta.push_back(std::move(se));
  }
  return {std::move(xi), std::move(eta)};
}

TrainReport train_decoupled(DecoupledNetwork& net, const Dataset& data, std::size_t epochs,
                            double lr) {
  if (!(lr > 0)) throw std::invalid_argument("lr must be positive");
  const auto [xi_data, eta_data] = decouple(data);
  const auto hx = train_real_sgd(net.xi, xi_data, epochs, lr);
  const auto he = train_real_sgd(net.eta, eta_data, epochs, lr);
  TrainReport report;
  report.epochs = epochs;
  for (std::size_t e = 0; e < epochs; ++e) report.loss_history.push_back(0.5 * (hx[e] + he[e]));
  report.final_loss = 0.5 * (hx.back() + he.back());
  return report;
}

std::vector<BoundaryPoint> decision_boundary(const HyperbolicNetwork& net, Box box, Grid grid,
                                             double threshold) {
  if (net.layers.empty()) throw InvalidDims("network has no layers");
  if (net.output_dim() != 1) throw DimensionMismatch(1, net.output_dim());
  if (net.input_dim() != 1) throw DimensionMismatch(1, net.input_dim());
  const Lattice lattice(box, grid);
  const auto sign = [](double d) { return (d > 0) - (d < 0); };
  std::vector<BoundaryPoint> points;
  points.reserve(lattice.size());
  for (std::size_t k = 0; k < lattice.size(); ++k) {
    const Point p = lattice.at(k);
    const HyperbolicNumber z{p.x, p.y};
    const HyperbolicNumber w = forward(net, std::span(&z, 1)).front();
    points.push_back({p.x, p.y, w.x(), w.y(), sign(w.x() - threshold), sign(w.y() - threshold)});
  }
  return points;
}

}  // namespace hyper
