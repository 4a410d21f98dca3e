#pragma once

// Reads the sampled cells back out of an emitted SVG and performs a
// structural well-formedness check (balanced elements, quoted attributes,
// a single <svg> root in the SVG namespace).

#include <cstddef>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace hyper::test {

struct SvgCell {
  std::string panel;
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

inline std::vector<SvgCell> svg_cells(const std::string& svg) {
  static const std::regex group(R"re(<g class="[a-z]+" data-panel="([^"]*)">)re");
  static const std::regex cell(R"re(data-x="([^"]+)" data-y="([^"]+)" data-value="([^"]+)")re");
  std::vector<SvgCell> cells;
  std::string panel;
  std::size_t pos = 0;
  while (pos < svg.size()) {
    const std::size_t end = svg.find('\n', pos);
    const std::string line = svg.substr(pos, end == std::string::npos ? end : end - pos);
    std::smatch m;
    if (std::regex_search(line, m, group)) panel = m[1];
    if (std::regex_search(line, m, cell)) {
      cells.push_back({panel, std::stod(m[1]), std::stod(m[2]), std::stod(m[3])});
    }
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return cells;
}

inline std::optional<SvgCell> svg_cell_at(const std::vector<SvgCell>& cells,
                                          const std::string& panel_prefix, double x, double y) {
  for (const auto& c : cells) {
    if (c.panel.rfind(panel_prefix, 0) == 0 && c.x == x && c.y == y) return c;
  }
  return std::nullopt;
}

/// True when every element is closed in order and the root is
/// <svg xmlns="http://www.w3.org/2000/svg" ...>.
inline bool svg_well_formed(const std::string& svg) {
  std::vector<std::string> stack;
  std::size_t roots = 0;
  std::size_t pos = 0;
  bool saw_root_ns = false;
  while ((pos = svg.find('<', pos)) != std::string::npos) {
    const std::size_t close = svg.find('>', pos);
    if (close == std::string::npos) return false;
    std::string tag = svg.substr(pos + 1, close - pos - 1);
    pos = close + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (tag[0] == '/') {
      const std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
      continue;
    }
    // Attribute values must be quoted and contain no raw '<'.
    std::size_t quotes = 0;
    for (char c : tag) {
      if (c == '"') ++quotes;
      if (c == '<') return false;
    }
    if (quotes % 2 != 0) return false;
    const bool self_closing = tag.back() == '/';
    const std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
    if (stack.empty()) {
      ++roots;
      if (name != "svg") return false;
      saw_root_ns = tag.find("xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos;
    }
    if (!self_closing) stack.push_back(name);
  }
  return stack.empty() && roots == 1 && saw_root_ns;
}

}  // namespace hyper::test
