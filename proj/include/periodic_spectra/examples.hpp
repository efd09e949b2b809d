#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "periodic_spectra/graph.hpp"

namespace periodic_spectra {

/// Square lattice: 4 vertices, 8 edges, 4-regular.
FundamentalGraph square_lattice();
/// Kagome lattice: 3 vertices, 6 edges, 4-regular.
FundamentalGraph kagome_lattice();
/// One vertex with two loops of indices 1 and p.
FundamentalGraph gp_graph(int p);
/// The integer line: one vertex, one loop of index 1.
FundamentalGraph z_line();

/// "square", "kagome", "zline", "gp" (with p) or "g<p>" such as "g3".
FundamentalGraph builtin_example(std::string_view name, int p = 2);
std::vector<std::string> builtin_names();

}  // namespace periodic_spectra
