#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyper/errors.hpp"
#include "hyper/network.hpp"
#include "json.hpp"

namespace hyper {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
  if (cell.empty()) throw std::runtime_error("empty CSV cell on line " + std::to_string(line_no));
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size()) {
    throw std::runtime_error("bad number '" + cell + "' on line " + std::to_string(line_no));
  }
  return v;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("dataset CSV is empty");
  const auto header = split_csv_line(line);

  // Inputs are x/y pairs, targets tu/tv pairs, inputs first.
  std::size_t inputs = 0;
  std::size_t targets = 0;
  for (std::size_t c = 0; c < header.size(); c += 2) {
    if (c + 1 >= header.size()) throw std::runtime_error("dataset header has an odd column count");
    const std::string& a = header[c];
    const std::string& b = header[c + 1];
    if (a.rfind("tu", 0) == 0 && b.rfind("tv", 0) == 0 && a.substr(2) == b.substr(2)) {
      ++targets;
    } else if (targets == 0 && a.rfind('x', 0) == 0 && b.rfind('y', 0) == 0 &&
               a.substr(1) == b.substr(1)) {
      ++inputs;
    } else {
      throw std::runtime_error("unexpected dataset columns '" + a + "," + b + "'");
    }
  }
  if (inputs == 0 || targets == 0) {
    throw std::runtime_error("dataset header needs x,y input and tu,tv target columns");
  }

  std::vector<Sample> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error("wrong column count on line " + std::to_string(line_no));
    }
    Sample s;
    try {
      for (std::size_t k = 0; k < inputs; ++k) {
        s.input.emplace_back(parse_cell(cells[2 * k], line_no), parse_cell(cells[2 * k + 1], line_no));
      }
      for (std::size_t k = 0; k < targets; ++k) {
        const std::size_t c = 2 * (inputs + k);
        s.target.emplace_back(parse_cell(cells[c], line_no), parse_cell(cells[c + 1], line_no));
      }
    } catch (const NonFiniteValue&) {
      throw std::runtime_error("non-finite value on line " + std::to_string(line_no));
    }
    samples.push_back(std::move(s));
  }
  if (samples.empty()) throw std::runtime_error("dataset has no samples");
  return Dataset(std::move(samples));
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  const std::size_t n = data.input_dim();
  const std::size_t m = data.target_dim();
  std::string header;
  for (std::size_t k = 1; k <= n; ++k) {
    header += "x" + std::to_string(k) + ",y" + std::to_string(k) + ",";
  }
  for (std::size_t k = 1; k <= m; ++k) {
    header += "tu" + std::to_string(k) + ",tv" + std::to_string(k) + (k == m ? "" : ",");
  }
  out << header << '\n';
  for (const auto& s : data.samples()) {
    bool first = true;
    for (const auto* group : {&s.input, &s.target}) {
      for (const auto& z : *group) {
        out << (first ? "" : ",") << format_csv_real(z.x()) << ',' << format_csv_real(z.y());
        first = false;
      }
    }
    out << '\n';
  }
}

void write_boundary_csv(std::ostream& out, std::span<const BoundaryPoint> points) {
  out << "x,y,u,v,label_u,label_v\n";
  for (const auto& p : points) {
    out << format_csv_real(p.x) << ',' << format_csv_real(p.y) << ',' << format_csv_real(p.u)
        << ',' << format_csv_real(p.v) << ',' << p.label_u << ',' << p.label_v << '\n';
  }
}

std::vector<BoundaryPoint> read_boundary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("boundary CSV is empty");
  const std::vector<std::string> expected{"x", "y", "u", "v", "label_u", "label_v"};
  if (split_csv_line(line) != expected) {
    throw std::runtime_error("boundary CSV header must be x,y,u,v,label_u,label_v");
  }
  std::vector<BoundaryPoint> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != expected.size()) {
      throw std::runtime_error("wrong column count on line " + std::to_string(line_no));
    }
    BoundaryPoint p;
    p.x = parse_cell(cells[0], line_no);
    p.y = parse_cell(cells[1], line_no);
    p.u = parse_cell(cells[2], line_no);
    p.v = parse_cell(cells[3], line_no);
    p.label_u = static_cast<int>(parse_cell(cells[4], line_no));
    p.label_v = static_cast<int>(parse_cell(cells[5], line_no));
    points.push_back(p);
  }
  return points;
}

std::string checkpoint_json(const HyperbolicNetwork& net) {
  nlohmann::ordered_json j;
  j["dims"] = net.dims();
  j["activation"] = net.layers.empty() ? "identity" : to_string(net.layers.front().activation);
  bool mixed = false;
  for (const auto& layer : net.layers) mixed |= layer.activation != net.layers.front().activation;
  if (mixed) {
    auto& acts = j["layer_activations"] = nlohmann::ordered_json::array();
    for (const auto& layer : net.layers) acts.push_back(to_string(layer.activation));
  }
  j["seed"] = net.seed;
  j["parameters"] = flatten_parameters(net);
  return j.dump(2) + "\n";
}

HyperbolicNetwork parse_checkpoint(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const auto dims = j.at("dims").get<std::vector<std::size_t>>();
    const auto name = j.at("activation").get<std::string>();
    const auto activation = parse_activation(name);
    if (!activation) throw std::runtime_error("unknown activation '" + name + "'");
    HyperbolicNetwork net = init(dims, *activation, j.value("seed", std::uint64_t{0}));
    if (j.contains("layer_activations")) {
      const auto names = j.at("layer_activations").get<std::vector<std::string>>();
      if (names.size() != net.layers.size()) {
        throw std::runtime_error("layer_activations does not match dims");
      }
      for (std::size_t l = 0; l < names.size(); ++l) {
        const auto a = parse_activation(names[l]);
        if (!a) throw std::runtime_error("unknown activation '" + names[l] + "'");
        net.layers[l].activation = *a;
      }
    }
    assign_parameters(net, j.at("parameters").get<std::vector<double>>());
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("bad checkpoint: ") + e.what());
  }
}

void write_loss_history_csv(std::ostream& out, const TrainReport& report) {
  out << "epoch,loss\n";
  for (std::size_t e = 0; e < report.loss_history.size(); ++e) {
    out << e << ',' << format_csv_real(report.loss_history[e]) << '\n';
  }
  out << report.epochs << ',' << format_csv_real(report.final_loss) << '\n';
}

}  // namespace hyper
