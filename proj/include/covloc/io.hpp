#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "covloc/analysis.hpp"
#include "covloc/catalog.hpp"
#include "covloc/gram.hpp"
#include "covloc/observable.hpp"
#include "covloc/phase_matrix.hpp"
#include "covloc/torus.hpp"

namespace covloc::io {

using nlohmann::json;

// Arc sets: [[start, end], ...] radian pairs (end = start + length, so a
// wrap-around arc serializes with end > 2*pi and the full circle as
// [0, 2*pi]).
json to_json(const ArcSet& x);
ArcSet arcset_from_json(const json& j);

// Matrices: {"window": [lo, hi], "entries": [[[re, im], ...], ...]}.
json to_json(const PhaseMatrix& c);
PhaseMatrix phase_matrix_from_json(const json& j);

// {"window": [lo, hi], "dimension": d, "vectors": [[[re, im], ...], ...]}.
json to_json(const VectorSequence& v);
VectorSequence vector_sequence_from_json(const json& j);

// {"window": [lo, hi], "amplitudes": [[re, im], ...]}.
json to_json(const StateVector& psi);
StateVector state_from_json(const json& j);

json to_json(const EffectMatrix& e);
json to_json(const ValidationReport& rep);
json to_json(const GaugePhases& g);
json to_json(const CMatrix& m);

// {"family": "parity"|"pv"|"trivial"|"random_gram", "window": [lo, hi], ...}.
CatalogSpec catalog_spec_from_json(const json& j);

json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const json& j);

// CSV emitters; all numbers printed with 17 significant digits.
void write_samples_csv(std::ostream& out, const std::vector<double>& angles);
void write_density_csv(std::ostream& out, const std::vector<double>& thetas,
                       const std::vector<double>& values);

std::string format_double(double v); // 17 significant digits

} // namespace covloc::io
