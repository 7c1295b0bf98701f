#include "covloc/io.hpp"

#include <cstdio>
#include <fstream>

namespace covloc::io {

namespace {

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw parse_error("expected complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

IndexWindow window_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
        !j[1].is_number_integer())
        throw parse_error("expected window as [lo, hi] integers");
    try {
        return IndexWindow(j[0].get<int>(), j[1].get<int>());
    } catch (const input_error& e) {
        throw parse_error(e.what());
    }
}

json window_to_json(const IndexWindow& w) { return json::array({w.lo, w.hi}); }

CMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw parse_error("expected matrix as array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw parse_error("expected nonempty matrix rows");
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw parse_error("ragged matrix rows");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
    }
    return m;
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

const json& require_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw parse_error(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

} // namespace

json to_json(const ArcSet& x) {
    json arr = json::array();
    for (const Arc& arc : x.arcs())
        arr.push_back(json::array({arc.start, arc.end()}));
    return arr;
}

ArcSet arcset_from_json(const json& j) {
    if (!j.is_array()) throw parse_error("expected arc set as array of [start, end] pairs");
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(j.size());
    for (const json& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw parse_error("expected arc as [start, end] pair of numbers");
        pairs.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    try {
        return normalize_arcs(pairs);
    } catch (const input_error& e) {
        throw parse_error(e.what());
    }
}

json to_json(const PhaseMatrix& c) {
    return json{{"window", window_to_json(c.window())},
                {"entries", matrix_to_json(c.entries())}};
}

PhaseMatrix phase_matrix_from_json(const json& j) {
    const IndexWindow w = window_from_json(require_field(j, "window"));
    CMatrix m = matrix_from_json(require_field(j, "entries"));
    try {
        return PhaseMatrix(w, std::move(m));
    } catch (const input_error& e) {
        throw parse_error(e.what());
    }
}

json to_json(const VectorSequence& v) {
    json vecs = json::array();
    for (const auto& h : v.vectors()) {
        json one = json::array();
        for (const cplx& z : h) one.push_back(complex_to_json(z));
        vecs.push_back(std::move(one));
    }
    return json{{"window", window_to_json(v.window())},
                {"dimension", v.dimension()},
                {"vectors", std::move(vecs)}};
}

VectorSequence vector_sequence_from_json(const json& j) {
    const IndexWindow w = window_from_json(require_field(j, "window"));
    const json& jd = require_field(j, "dimension");
    if (!jd.is_number_integer()) throw parse_error("dimension must be an integer");
    const json& jv = require_field(j, "vectors");
    if (!jv.is_array()) throw parse_error("vectors must be an array");
    std::vector<std::vector<cplx>> vectors;
    vectors.reserve(jv.size());
    for (const json& one : jv) {
        if (!one.is_array()) throw parse_error("each vector must be an array");
        std::vector<cplx> h;
        h.reserve(one.size());
        for (const json& z : one) h.push_back(complex_from_json(z));
        vectors.push_back(std::move(h));
    }
    try {
        return VectorSequence(w, jd.get<int>(), std::move(vectors));
    } catch (const input_error& e) {
        throw parse_error(e.what());
    }
}

json to_json(const StateVector& psi) {
    json amps = json::array();
    for (const cplx& z : psi.amplitudes()) amps.push_back(complex_to_json(z));
    return json{{"window", window_to_json(psi.window())},
                {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const json& j) {
    const IndexWindow w = window_from_json(require_field(j, "window"));
    const json& ja = require_field(j, "amplitudes");
    if (!ja.is_array()) throw parse_error("amplitudes must be an array");
    std::vector<cplx> amps;
    amps.reserve(ja.size());
    for (const json& z : ja) amps.push_back(complex_from_json(z));
    try {
        return StateVector(w, std::move(amps));
    } catch (const input_error& e) {
        throw parse_error(e.what());
    }
}

json to_json(const EffectMatrix& e) {
    return json{{"window", window_to_json(e.window)},
                {"arcs", to_json(e.arc_set)},
                {"entries", matrix_to_json(e.entries)}};
}

json to_json(const ValidationReport& rep) {
    return json{{"diag_deviation", rep.diag_deviation},
                {"hermitian_deviation", rep.hermitian_deviation},
                {"max_modulus", rep.max_modulus},
                {"min_eigenvalue", rep.min_eigenvalue},
                {"is_valid", rep.is_valid}};
}

json to_json(const GaugePhases& g) {
    json phases = json::array();
    for (const cplx& z : g.phases) phases.push_back(complex_to_json(z));
    return json{{"window", window_to_json(g.window)}, {"phases", std::move(phases)}};
}

json to_json(const CMatrix& m) { return matrix_to_json(m); }

CatalogSpec catalog_spec_from_json(const json& j) {
    CatalogSpec spec;
    const json& fam = require_field(j, "family");
    if (!fam.is_string()) throw parse_error("family must be a string");
    const std::string name = fam.get<std::string>();
    spec.window = window_from_json(require_field(j, "window"));
    if (name == "parity") {
        spec.family = CatalogFamily::parity;
        const json& xi = require_field(j, "xi");
        if (!xi.is_number()) throw parse_error("xi must be a number");
        spec.xi = xi.get<double>();
        if (!(spec.xi >= -1.0 && spec.xi <= 1.0))
            throw parse_error("xi must lie in [-1, 1]");
    } else if (name == "pv") {
        spec.family = CatalogFamily::pv;
        const json& ph = require_field(j, "phases");
        if (!ph.is_array()) throw parse_error("phases must be an array");
        for (const json& u : ph) {
            if (!u.is_number()) throw parse_error("phases must be numbers");
            spec.phases.push_back(u.get<double>());
        }
        if (spec.phases.size() != static_cast<std::size_t>(spec.window.dim()))
            throw parse_error("need one phase per window index");
    } else if (name == "trivial") {
        spec.family = CatalogFamily::trivial;
    } else if (name == "random_gram") {
        spec.family = CatalogFamily::random_gram;
        const json& d = require_field(j, "dimension");
        if (!d.is_number_integer() || d.get<int>() < 1)
            throw parse_error("dimension must be a positive integer");
        spec.dimension = d.get<int>();
        const json& s = require_field(j, "seed");
        if (!s.is_number_integer()) throw parse_error("seed must be an integer");
        spec.seed = s.get<std::uint64_t>();
    } else {
        throw parse_error("unknown catalog family \"" + name + "\"");
    }
    return spec;
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid JSON in ") + path.string() + ": " + e.what());
    }
}

void save_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open file for writing: " + path.string());
    out << j.dump(2) << '\n';
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_samples_csv(std::ostream& out, const std::vector<double>& angles) {
    for (double a : angles) out << format_double(a) << '\n';
}

void write_density_csv(std::ostream& out, const std::vector<double>& thetas,
                       const std::vector<double>& values) {
    out << "theta,density\n";
    for (std::size_t i = 0; i < thetas.size(); ++i)
        out << format_double(thetas[i]) << ',' << format_double(values[i]) << '\n';
}

} // namespace covloc::io
