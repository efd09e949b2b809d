#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "periodic_spectra/expansions.hpp"
#include "periodic_spectra/fourier.hpp"
#include "periodic_spectra/graph.hpp"
#include "periodic_spectra/spectral.hpp"
#include "periodic_spectra/traces.hpp"

namespace periodic_spectra {

using Json = nlohmann::json;

Json graph_to_json(const FundamentalGraph& g);
/// Throws ParseError for malformed documents, plus the build_graph errors.
FundamentalGraph graph_from_json(const Json& doc);
FundamentalGraph load_graph(const std::string& path);

Json polynomial_to_json(const RealPolynomial& p);
Json polynomial_to_json(const IntPolynomial& p);
RealPolynomial polynomial_from_json(const Json& doc, int dimension);

Json trace_series_to_json(const TraceSeries& s);
/// Columns m1..md, coefficient.
std::string trace_series_to_csv(const TraceSeries& s);

/// Columns k1..kd, lambda1..lambda_nu.
std::string band_structure_to_csv(const BandStructure& b);
Json band_summary_to_json(const BandStructure& b, const std::optional<BandwidthReport>& bound = std::nullopt);

Json series_approx_to_json(const SeriesApprox& s);
Json cycle_class_to_json(const CycleClass& c);

/// Fixed 17 significant digits.
std::string format_csv_number(double x);

}  // namespace periodic_spectra
