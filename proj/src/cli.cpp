#include "covloc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "covloc/analysis.hpp"
#include "covloc/catalog.hpp"
#include "covloc/gram.hpp"
#include "covloc/io.hpp"
#include "covloc/observable.hpp"
#include "covloc/phase_matrix.hpp"

namespace covloc::cli {

namespace {

using io::json;

struct RunConfig {
    std::string out_path;
    std::string format = "csv"; // density/sample output
    std::string method = "spectral";
    std::string window_spec;    // "LO:HI" override
    double tol_psd = 1e-10;
    double tol_zero = 1e-9;
    double tol = 1e-8;          // check tolerances (equiv); pv uses 1e-12
    std::uint64_t seed = 0;
    std::size_t grid = std::size_t{1} << 14;
    int margin = -1;            // default: dim / 4
    int minor_order = 0;        // 0 = skip minor check
    int kmax = 3;
    std::size_t count = 1;
};

std::optional<IndexWindow> parse_window_spec(const std::string& spec) {
    if (spec.empty()) return std::nullopt;
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw parse_error("--window expects LO:HI");
    try {
        const int lo = std::stoi(spec.substr(0, colon));
        const int hi = std::stoi(spec.substr(colon + 1));
        return IndexWindow(lo, hi);
    } catch (const input_error&) {
        throw parse_error("--window expects LO:HI with LO <= HI");
    } catch (const std::exception&) {
        throw parse_error("--window expects integer LO:HI");
    }
}

PhaseMatrix load_matrix(const std::string& path, const RunConfig& cfg) {
    PhaseMatrix c = io::phase_matrix_from_json(io::load_json_file(path));
    if (const auto w = parse_window_spec(cfg.window_spec)) return restrict_window(c, *w);
    return c;
}

StateVector load_state(const std::string& path) {
    return io::state_from_json(io::load_json_file(path));
}

void emit(const json& j, const RunConfig& cfg, std::ostream& out) {
    if (!cfg.out_path.empty())
        io::save_json_file(cfg.out_path, j);
    else
        out << j.dump(2) << '\n';
}

void emit_text(const std::string& text, const RunConfig& cfg, std::ostream& out) {
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path);
        if (!f) throw parse_error("cannot open file for writing: " + cfg.out_path);
        f << text;
    } else {
        out << text;
    }
}

void add_common_flags(CLI::App* app, RunConfig& cfg) {
    app->add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
    app->add_option("--window", cfg.window_spec, "Restrict loaded matrices to LO:HI");
    app->add_option("--tol-psd", cfg.tol_psd, "Positive semidefiniteness tolerance")
        ->check(CLI::PositiveNumber);
}

int cmd_validate(const std::string& path, const RunConfig& cfg, std::ostream& out) {
    const PhaseMatrix c = load_matrix(path, cfg);
    Tolerances tol;
    tol.psd = cfg.tol_psd;
    const ValidationReport rep = validate(c, tol);
    json j = io::to_json(rep);
    bool ok = rep.is_valid;
    if (cfg.minor_order > 0) {
        const MinorCheckResult minors = principal_minor_check(c, cfg.minor_order, cfg.tol_psd);
        j["minor_check"] = {{"pass", minors.pass},
                            {"max_order", cfg.minor_order}};
        if (!minors.pass) {
            j["minor_check"]["violating_indices"] = minors.violating_indices;
            j["minor_check"]["violating_det"] = minors.violating_det;
        }
        ok = ok && minors.pass;
    }
    emit(j, cfg, out);
    return ok ? 0 : 1;
}

int cmd_gram(const std::string& path, const RunConfig& cfg, std::ostream& out) {
    VectorSequence v = io::vector_sequence_from_json(io::load_json_file(path));
    if (const auto w = parse_window_spec(cfg.window_spec)) {
        if (!v.window().contains(*w))
            throw input_error("--window not contained in the sequence window");
        std::vector<std::vector<cplx>> sub(v.vectors().begin() + v.window().offset(w->lo),
                                           v.vectors().begin() + v.window().offset(w->hi) + 1);
        v = VectorSequence(*w, v.dimension(), std::move(sub));
    }
    emit(io::to_json(gram(v)), cfg, out);
    return 0;
}

int cmd_factorize(const std::string& path, const RunConfig& cfg, std::ostream& out) {
    const PhaseMatrix c = load_matrix(path, cfg);
    Tolerances tol;
    tol.psd = cfg.tol_psd;
    const VectorSequence v = cfg.method == "paper" ? factorize_constructive(c, cfg.tol_psd)
                                                   : factorize_spectral(c, tol);
    const double roundtrip = max_abs_diff(gram_entries(v), c.entries());
    json report{{"method", cfg.method}, {"max_roundtrip_error", roundtrip}};
    if (cfg.out_path.empty()) {
        report["vectors"] = io::to_json(v);
        out << report.dump(2) << '\n';
    } else {
        io::save_json_file(cfg.out_path, io::to_json(v));
        out << report.dump(2) << '\n';
    }
    return 0;
}

int cmd_effect(const std::string& matrix_path, const std::string& arcs_path,
               const RunConfig& cfg, std::ostream& out) {
    const PhaseMatrix c = load_matrix(matrix_path, cfg);
    const ArcSet x = io::arcset_from_json(io::load_json_file(arcs_path));
    Tolerances tol;
    tol.psd = cfg.tol_psd;
    emit(io::to_json(effect_matrix(c, x, tol)), cfg, out);
    return 0;
}

int cmd_prob(const std::string& matrix_path, const std::string& state_path,
             const std::string& arcs_path, const RunConfig& cfg, std::ostream& out) {
    const PhaseMatrix c = load_matrix(matrix_path, cfg);
    const StateVector psi = load_state(state_path);
    const ArcSet x = io::arcset_from_json(io::load_json_file(arcs_path));
    Tolerances tol;
    tol.psd = cfg.tol_psd;
    const double raw = probability(c, psi, x, tol);
    // raw values are kept internally; the reporting boundary clamps
    const double clamped = std::clamp(raw, 0.0, 1.0);
    emit_text(io::format_double(clamped) + "\n", cfg, out);
    return 0;
}

int cmd_density(const std::string& matrix_path, const std::string& state_path,
                const RunConfig& cfg, std::ostream& out) {
    const PhaseMatrix c = load_matrix(matrix_path, cfg);
    const StateVector psi = load_state(state_path);
    std::vector<double> thetas(cfg.grid), values(cfg.grid);
    const double h = two_pi / static_cast<double>(cfg.grid);
    for (std::size_t j = 0; j < cfg.grid; ++j) {
        thetas[j] = static_cast<double>(j) * h;
        values[j] = density(c, psi, thetas[j]);
    }
    if (cfg.format == "json") {
        emit(json{{"theta", thetas}, {"density", values}}, cfg, out);
    } else {
        std::ostringstream csv;
        io::write_density_csv(csv, thetas, values);
        emit_text(csv.str(), cfg, out);
    }
    return 0;
}

int cmd_sample(const std::string& matrix_path, const std::string& state_path,
               const RunConfig& cfg, std::ostream& out) {
    const PhaseMatrix c = load_matrix(matrix_path, cfg);
    const StateVector psi = load_state(state_path);
    const std::vector<double> draws = sample(c, psi, cfg.count, cfg.seed, cfg.grid);
    if (cfg.format == "json") {
        emit(json(draws), cfg, out);
    } else {
        std::ostringstream csv;
        io::write_samples_csv(csv, draws);
        emit_text(csv.str(), cfg, out);
    }
    return 0;
}

int cmd_check_commute(const std::string& path, const std::string& arcs_path,
                      const std::string& arcs2_path, const RunConfig& cfg,
                      std::ostream& out) {
    const PhaseMatrix c = load_matrix(path, cfg);
    const CommutativityReport rep = check_commutative_criterion(c);
    json witnesses = json::array();
    for (const CommutativityViolation& v : rep.witnesses)
        witnesses.push_back(json{{"n", v.n},
                                 {"m", v.m},
                                 {"k", v.k},
                                 {"lhs", {v.lhs.real(), v.lhs.imag()}},
                                 {"rhs", {v.rhs.real(), v.rhs.imag()}}});
    // Brute-force commutator oracle alongside the algebraic criterion;
    // defaults to the probe pair X = [0, pi), Y = [0, pi/2).
    const ArcSet x = arcs_path.empty()
                         ? ArcSet::interval(0.0, pi)
                         : io::arcset_from_json(io::load_json_file(arcs_path));
    const ArcSet y = arcs2_path.empty()
                         ? ArcSet::interval(0.0, pi / 2.0)
                         : io::arcset_from_json(io::load_json_file(arcs2_path));
    const int margin = cfg.margin >= 0 ? cfg.margin : default_margin(c.window());
    emit(json{{"test", "commute"},
              {"pass", rep.commutative},
              {"max_violation", rep.max_violation},
              {"witnesses", witnesses},
              {"commutator_norm", commutator_norm(c, x, y, margin)},
              {"margin", margin}},
         cfg, out);
    return rep.commutative ? 0 : 1;
}

int cmd_check_pv(const std::string& path, const RunConfig& cfg, std::ostream& out) {
    const PhaseMatrix c = load_matrix(path, cfg);
    const bool pv = check_projection_valued(c, 1e-12);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < c.entries().rows(); ++i)
        for (std::size_t j = 0; j < c.entries().cols(); ++j)
            max_dev = std::max(max_dev, std::abs(1.0 - std::abs(c.entries()(i, j))));
    emit(json{{"test", "pv"}, {"pass", pv}, {"max_violation", max_dev}}, cfg, out);
    return pv ? 0 : 1;
}

int cmd_check_equiv(const std::string& path1, const std::string& path2,
                    const RunConfig& cfg, std::ostream& out) {
    const PhaseMatrix c1 = load_matrix(path1, cfg);
    const PhaseMatrix c2 = load_matrix(path2, cfg);
    const auto phases = check_equivalent(c1, c2, cfg.tol, cfg.tol_zero);
    json j{{"test", "equiv"}, {"pass", phases.has_value()}};
    if (phases) j["phases"] = io::to_json(*phases)["phases"];
    emit(j, cfg, out);
    return phases ? 0 : 1;
}

int cmd_check_moments(const std::string& path, const RunConfig& cfg, std::ostream& out) {
    const PhaseMatrix c = load_matrix(path, cfg);
    json cyclic = json::array();
    for (int k = -cfg.kmax; k <= cfg.kmax; ++k) {
        if (std::abs(k) >= c.window().dim()) continue;
        cyclic.push_back(json{{"k", k}, {"entries", io::to_json(cyclic_moment(c, k))}});
    }
    const CMatrix e1 = first_phase_moment(c);
    const CMatrix e2 = second_phase_moment(c);
    // Reconstruction identity c_{n,m} = i (m - n) E1_{n,m} off the diagonal.
    double recon_err = 0.0;
    for (std::size_t i = 0; i < e1.rows(); ++i)
        for (std::size_t j = 0; j < e1.cols(); ++j) {
            if (i == j) continue;
            const double q = static_cast<double>(j) - static_cast<double>(i);
            recon_err = std::max(recon_err,
                                 std::abs(cplx{0.0, q} * e1(i, j) - c.entries()(i, j)));
        }
    const bool pass = recon_err <= 1e-10;
    emit(json{{"test", "moments"},
              {"pass", pass},
              {"max_violation", recon_err},
              {"cyclic", cyclic},
              {"first_moment", io::to_json(e1)},
              {"second_moment", io::to_json(e2)}},
         cfg, out);
    return pass ? 0 : 1;
}

int cmd_catalog(const std::string& spec_path, const RunConfig& cfg, bool seed_given,
                std::ostream& out) {
    CatalogSpec spec = io::catalog_spec_from_json(io::load_json_file(spec_path));
    if (seed_given) spec.seed = cfg.seed;
    if (const auto w = parse_window_spec(cfg.window_spec)) {
        spec.window = *w;
        if (spec.family == CatalogFamily::pv &&
            spec.phases.size() != static_cast<std::size_t>(w->dim()))
            throw parse_error("--window incompatible with pv phase count");
    }
    emit(io::to_json(spec.build()), cfg, out);
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Covariant localization and phase observables on the circle", "covloc"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string matrix_path, matrix2_path, state_path, arcs_path, arcs2_path, vectors_path,
        spec_path;

    const auto power_of_two = CLI::Validator(
        [](std::string& s) -> std::string {
            const unsigned long v = std::stoul(s);
            if (v < 1024 || (v & (v - 1)) != 0)
                return "grid must be a power of two >= 1024";
            return {};
        },
        "POW2");

    CLI::App* validate_cmd = app.add_subcommand("validate", "Check phase-matrix conditions");
    validate_cmd->add_option("matrix", matrix_path, "Phase matrix JSON file")->required();
    validate_cmd->add_option("--minor-order", cfg.minor_order,
                             "Also check principal minors up to this order")
        ->check(CLI::Range(1, 6));
    add_common_flags(validate_cmd, cfg);

    CLI::App* gram_cmd = app.add_subcommand("gram", "Gram matrix of a unit-vector sequence");
    gram_cmd->add_option("vectors", vectors_path, "Vector sequence JSON file")->required();
    add_common_flags(gram_cmd, cfg);

    CLI::App* fact_cmd = app.add_subcommand("factorize", "Factor a phase matrix into vectors");
    fact_cmd->add_option("matrix", matrix_path)->required();
    fact_cmd->add_option("--method", cfg.method, "spectral | paper")
        ->check(CLI::IsMember({"spectral", "paper"}));
    add_common_flags(fact_cmd, cfg);

    CLI::App* effect_cmd = app.add_subcommand("effect", "Effect operator E(X)");
    effect_cmd->add_option("matrix", matrix_path)->required();
    effect_cmd->add_option("--arcs", arcs_path, "Arc set JSON file")->required();
    add_common_flags(effect_cmd, cfg);

    CLI::App* prob_cmd = app.add_subcommand("prob", "Outcome probability <psi|E(X)|psi>");
    prob_cmd->add_option("matrix", matrix_path)->required();
    prob_cmd->add_option("--state", state_path)->required();
    prob_cmd->add_option("--arcs", arcs_path)->required();
    add_common_flags(prob_cmd, cfg);

    CLI::App* density_cmd = app.add_subcommand("density", "Outcome density grid");
    density_cmd->add_option("matrix", matrix_path)->required();
    density_cmd->add_option("--state", state_path)->required();
    density_cmd->add_option("--grid", cfg.grid)->check(power_of_two);
    density_cmd->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
    add_common_flags(density_cmd, cfg);

    CLI::App* sample_cmd = app.add_subcommand("sample", "Born-rule samples");
    sample_cmd->add_option("matrix", matrix_path)->required();
    sample_cmd->add_option("--state", state_path)->required();
    sample_cmd->add_option("--count", cfg.count)->required()->check(CLI::PositiveNumber);
    sample_cmd->add_option("--seed", cfg.seed);
    sample_cmd->add_option("--grid", cfg.grid)->check(power_of_two);
    sample_cmd->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
    add_common_flags(sample_cmd, cfg);

    CLI::App* check_cmd = app.add_subcommand("check", "Classification tests");
    check_cmd->require_subcommand(1);
    CLI::App* commute_cmd =
        check_cmd->add_subcommand("commute", "Product criterion + commutator oracle");
    commute_cmd->add_option("matrix", matrix_path)->required();
    commute_cmd->add_option("--arcs", arcs_path, "Oracle set X (default [0, pi))");
    commute_cmd->add_option("--arcs2", arcs2_path, "Oracle set Y (default [0, pi/2))");
    commute_cmd->add_option("--margin", cfg.margin,
                            "Central-block margin for the oracle (default dim/4)")
        ->check(CLI::NonNegativeNumber);
    add_common_flags(commute_cmd, cfg);
    CLI::App* pv_cmd = check_cmd->add_subcommand("pv", "Projection-valuedness");
    pv_cmd->add_option("matrix", matrix_path)->required();
    add_common_flags(pv_cmd, cfg);
    CLI::App* equiv_cmd = check_cmd->add_subcommand("equiv", "Gauge equivalence");
    equiv_cmd->add_option("matrix", matrix_path)->required();
    equiv_cmd->add_option("matrix2", matrix2_path)->required();
    equiv_cmd->add_option("--tol", cfg.tol)->check(CLI::PositiveNumber);
    equiv_cmd->add_option("--tol-zero", cfg.tol_zero)->check(CLI::PositiveNumber);
    add_common_flags(equiv_cmd, cfg);
    CLI::App* moments_cmd = check_cmd->add_subcommand("moments", "Moment operators");
    moments_cmd->add_option("matrix", matrix_path)->required();
    moments_cmd->add_option("--kmax", cfg.kmax)->check(CLI::Range(0, 64));
    add_common_flags(moments_cmd, cfg);

    CLI::App* catalog_cmd = app.add_subcommand("catalog", "Generate a named matrix family");
    catalog_cmd->add_option("spec", spec_path, "Catalog spec JSON file")->required();
    CLI::Option* catalog_seed = catalog_cmd->add_option(
        "--seed", cfg.seed, "Override the seed in the spec file");
    add_common_flags(catalog_cmd, cfg);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (*validate_cmd) return cmd_validate(matrix_path, cfg, out);
        if (*gram_cmd) return cmd_gram(vectors_path, cfg, out);
        if (*fact_cmd) return cmd_factorize(matrix_path, cfg, out);
        if (*effect_cmd) return cmd_effect(matrix_path, arcs_path, cfg, out);
        if (*prob_cmd) return cmd_prob(matrix_path, state_path, arcs_path, cfg, out);
        if (*density_cmd) return cmd_density(matrix_path, state_path, cfg, out);
        if (*sample_cmd) return cmd_sample(matrix_path, state_path, cfg, out);
        if (*commute_cmd)
            return cmd_check_commute(matrix_path, arcs_path, arcs2_path, cfg, out);
        if (*pv_cmd) return cmd_check_pv(matrix_path, cfg, out);
        if (*equiv_cmd) return cmd_check_equiv(matrix_path, matrix2_path, cfg, out);
        if (*moments_cmd) return cmd_check_moments(matrix_path, cfg, out);
        if (*catalog_cmd)
            return cmd_catalog(spec_path, cfg, catalog_seed->count() > 0, out);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << "no command selected\n";
    return 2;
}

} // namespace covloc::cli
