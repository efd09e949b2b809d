#include "periodic_spectra/examples.hpp"

#include <charconv>

#include "periodic_spectra/error.hpp"

namespace periodic_spectra {

FundamentalGraph square_lattice() {
  return build_graph(2, {{"x1", 0.0}, {"x2", 0.0}, {"x3", 0.0}, {"x4", 0.0}},
                     {{"x1", "x4", {0, 0}},
                      {"x4", "x2", {0, 0}},
                      {"x2", "x3", {0, 0}},
                      {"x3", "x1", {0, 0}},
                      {"x4", "x1", {0, 1}},
                      {"x2", "x4", {1, 0}},
                      {"x3", "x2", {0, -1}},
                      {"x1", "x3", {-1, 0}}});
}

FundamentalGraph kagome_lattice() {
  return build_graph(2, {{"x1", 0.0}, {"x2", 0.0}, {"x3", 0.0}},
                     {{"x1", "x2", {0, 0}},
                      {"x2", "x3", {0, 0}},
                      {"x3", "x1", {0, 0}},
                      {"x2", "x1", {0, 1}},
                      {"x3", "x2", {1, -1}},
                      {"x1", "x3", {-1, 0}}});
}

FundamentalGraph gp_graph(int p) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "p must be >= 1");
  return build_graph(1, {{"x", 0.0}}, {{"x", "x", {1}}, {"x", "x", {p}}});
}

FundamentalGraph z_line() { return build_graph(1, {{"x", 0.0}}, {{"x", "x", {1}}}); }

FundamentalGraph builtin_example(std::string_view name, int p) {
  if (name == "square") return square_lattice();
  if (name == "kagome") return kagome_lattice();
  if (name == "zline") return z_line();
  if (name == "gp") return gp_graph(p);
  if (name.size() > 1 && name[0] == 'g') {
    int value = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), value);
    if (ec == std::errc() && ptr == name.data() + name.size()) return gp_graph(value);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown example '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() { return {"square", "kagome", "gp", "zline"}; }

}  // namespace periodic_spectra
