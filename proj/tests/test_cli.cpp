#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "covloc/catalog.hpp"
#include "covloc/cli.hpp"
#include "covloc/io.hpp"

using namespace covloc;
using covloc::io::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Scratch directory shared by the cases in this binary.
const fs::path& scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "covloc_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream f(p);
    f << text;
    return p;
}

fs::path write_json(const std::string& name, const json& j) {
    return write_file(name, j.dump(2));
}

} // namespace

TEST_CASE("catalog -> validate -> check pipeline never hits a usage error") {
    const std::vector<json> specs = {
        json{{"family", "parity"}, {"xi", 0.5}, {"window", {-4, 4}}},
        json{{"family", "parity"}, {"xi", 1.0}, {"window", {-4, 4}}},
        json{{"family", "trivial"}, {"window", {0, 5}}},
        json{{"family", "random_gram"}, {"dimension", 3}, {"seed", 5}, {"window", {-3, 3}}},
        json{{"family", "pv"},
             {"phases", {0.1, 0.9, 2.2, 4.0, 5.5}},
             {"window", {0, 4}}},
    };
    int i = 0;
    for (const json& spec : specs) {
        const fs::path spec_path = write_json("spec" + std::to_string(i) + ".json", spec);
        const fs::path matrix_path = scratch() / ("mat" + std::to_string(i) + ".json");
        const CliResult cat = run_cli({"catalog", spec_path.string(), "--out", matrix_path.string()});
        CHECK(cat.code == 0);

        const CliResult val = run_cli({"validate", matrix_path.string()});
        CHECK(val.code == 0);
        CHECK(json::parse(val.out)["is_valid"] == true);

        for (const std::string check : {"commute", "pv"}) {
            const CliResult chk = run_cli({"check", check, matrix_path.string()});
            CHECK(chk.code != 2);
        }
        ++i;
    }
}

TEST_CASE("validate: corrupted JSON exits 2, non-PSD exits 1 with report") {
    const fs::path bad = write_file("corrupt.json", "{ not json ]");
    CHECK(run_cli({"validate", bad.string()}).code == 2);

    const json nonpsd{{"window", {0, 1}},
                      {"entries",
                       {{{1.0, 0.0}, {1.2, 0.0}}, {{1.2, 0.0}, {1.0, 0.0}}}}};
    const fs::path p = write_json("nonpsd.json", nonpsd);
    const CliResult res = run_cli({"validate", p.string()});
    CHECK(res.code == 1);
    const json rep = json::parse(res.out);
    CHECK(rep["is_valid"] == false);
    CHECK(rep["min_eigenvalue"].get<double>() < 0.0);
}

TEST_CASE("validate --minor-order flags the order-3 violation") {
    const json m{{"window", {0, 2}},
                 {"entries",
                  {{{1.0, 0.0}, {0.9, 0.0}, {-0.9, 0.0}},
                   {{0.9, 0.0}, {1.0, 0.0}, {0.9, 0.0}},
                   {{-0.9, 0.0}, {0.9, 0.0}, {1.0, 0.0}}}}};
    const fs::path p = write_json("minor3.json", m);
    const CliResult res = run_cli({"validate", p.string(), "--minor-order", "3"});
    CHECK(res.code == 1);
    const json rep = json::parse(res.out);
    CHECK(rep["minor_check"]["pass"] == false);
    CHECK(rep["minor_check"]["violating_indices"] == json::array({0, 1, 2}));
}

TEST_CASE("prob: trivial and cardioid cases") {
    const fs::path trivial = scratch() / "trivial.json";
    io::save_json_file(trivial, io::to_json(trivial_phase_matrix(IndexWindow(0, 1))));
    const fs::path ones = scratch() / "ones.json";
    io::save_json_file(ones, io::to_json(parity_matrix(1.0, IndexWindow(0, 1))));

    const json state{{"window", {0, 1}},
                     {"amplitudes",
                      {{1.0 / std::sqrt(2.0), 0.0}, {1.0 / std::sqrt(2.0), 0.0}}}};
    const fs::path psi = write_json("state01.json", state);
    const fs::path arcs = write_json("halfarc.json", json::array({{0.0, pi}}));

    for (const fs::path& m : {trivial, ones}) {
        const CliResult res =
            run_cli({"prob", m.string(), "--state", psi.string(), "--arcs", arcs.string()});
        CHECK(res.code == 0);
        CHECK(std::stod(res.out) == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("density CSV grid integrates to 1") {
    const fs::path m = scratch() / "dens_mat.json";
    io::save_json_file(m, io::to_json(random_gram_matrix(IndexWindow(-3, 3), 4, 307)));
    const fs::path psi = scratch() / "dens_state.json";
    io::save_json_file(psi, io::to_json(random_state(IndexWindow(-3, 3), 311)));

    const CliResult res = run_cli(
        {"density", m.string(), "--state", psi.string(), "--grid", "4096"});
    CHECK(res.code == 0);

    std::istringstream lines(res.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "theta,density");
    double sum = 0.0;
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        const auto comma = line.find(',');
        sum += std::stod(line.substr(comma + 1));
        ++rows;
    }
    CHECK(rows == 4096);
    CHECK(sum * (two_pi / 4096.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("sample: deterministic per seed, rejects a bad grid") {
    const fs::path m = scratch() / "sample_mat.json";
    io::save_json_file(m, io::to_json(trivial_phase_matrix(IndexWindow(0, 2))));
    const fs::path psi = scratch() / "sample_state.json";
    io::save_json_file(psi, io::to_json(random_state(IndexWindow(0, 2), 313)));

    const std::vector<std::string> args{"sample", m.string(), "--state", psi.string(),
                                        "--count", "50", "--seed", "9"};
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 50);

    std::vector<std::string> bad = args;
    bad.push_back("--grid");
    bad.push_back("1000"); // not a power of two
    CHECK(run_cli(bad).code == 2);
}

TEST_CASE("factorize: spectral and paper methods round-trip the same matrix") {
    const fs::path m = scratch() / "fact_mat.json";
    io::save_json_file(m, io::to_json(random_gram_matrix(IndexWindow(-4, 4), 5, 317)));

    const fs::path vs = scratch() / "vec_spectral.json";
    const fs::path vp = scratch() / "vec_paper.json";
    const CliResult rs = run_cli({"factorize", m.string(), "--method", "spectral",
                                  "--out", vs.string()});
    const CliResult rp = run_cli({"factorize", m.string(), "--method", "paper",
                                  "--out", vp.string()});
    CHECK(rs.code == 0);
    CHECK(rp.code == 0);
    CHECK(json::parse(rs.out)["max_roundtrip_error"].get<double>() <= 1e-8);
    CHECK(json::parse(rp.out)["max_roundtrip_error"].get<double>() <= 1e-8);

    // gram of either factorization reproduces the input matrix
    const fs::path g = scratch() / "regram.json";
    CHECK(run_cli({"gram", vs.string(), "--out", g.string()}).code == 0);
    const PhaseMatrix original = io::phase_matrix_from_json(io::load_json_file(m));
    const PhaseMatrix regram = io::phase_matrix_from_json(io::load_json_file(g));
    CHECK(max_abs_diff(original.entries(), regram.entries()) <= 1e-8);
}

TEST_CASE("gram of the standard basis is the identity matrix") {
    json vectors = json::array();
    for (int i = 0; i < 3; ++i) {
        json v = json::array();
        for (int k = 0; k < 3; ++k) v.push_back({i == k ? 1.0 : 0.0, 0.0});
        vectors.push_back(v);
    }
    const fs::path p = write_json("basis_vecs.json",
                                  json{{"window", {0, 2}}, {"dimension", 3},
                                       {"vectors", vectors}});
    const CliResult res = run_cli({"gram", p.string()});
    CHECK(res.code == 0);
    const PhaseMatrix c = io::phase_matrix_from_json(json::parse(res.out));
    CHECK(max_abs_diff(c.entries(), CMatrix::identity(3)) == 0.0);
}

TEST_CASE("check pv / commute / equiv exit codes and reports") {
    const fs::path pv1 = scratch() / "pv1.json";
    io::save_json_file(pv1, io::to_json(parity_matrix(1.0, IndexWindow(-3, 3))));
    CHECK(run_cli({"check", "pv", pv1.string()}).code == 0);

    const fs::path par = scratch() / "par05.json";
    io::save_json_file(par, io::to_json(parity_matrix(0.5, IndexWindow(-3, 3))));
    const CliResult pv_fail = run_cli({"check", "pv", par.string()});
    CHECK(pv_fail.code == 1);
    CHECK(json::parse(pv_fail.out)["max_violation"].get<double>() == doctest::Approx(0.5));

    CHECK(run_cli({"check", "commute", par.string()}).code == 0);

    const fs::path rnd = scratch() / "rnd.json";
    io::save_json_file(rnd, io::to_json(random_gram_matrix(IndexWindow(-3, 3), 7, 331)));
    const CliResult commute_fail = run_cli({"check", "commute", rnd.string()});
    CHECK(commute_fail.code == 1);
    CHECK(!json::parse(commute_fail.out)["witnesses"].empty());

    // gauge transform z_n = i^n is detected with phases emitted
    const PhaseMatrix c = io::phase_matrix_from_json(io::load_json_file(rnd));
    const IndexWindow w = c.window();
    CMatrix t(c.entries().rows(), c.entries().cols());
    for (int n = w.lo; n <= w.hi; ++n)
        for (int m = w.lo; m <= w.hi; ++m)
            t(w.offset(n), w.offset(m)) =
                std::polar(1.0, pi / 2.0 * (m - n)) * c.at(n, m);
    const fs::path rnd2 = scratch() / "rnd_gauge.json";
    io::save_json_file(rnd2, io::to_json(PhaseMatrix(w, t)));
    const CliResult equiv = run_cli({"check", "equiv", rnd.string(), rnd2.string()});
    CHECK(equiv.code == 0);
    CHECK(json::parse(equiv.out)["phases"].size() == 7);

    CHECK(run_cli({"check", "equiv", rnd.string(), par.string()}).code == 1);
}

TEST_CASE("check commute reports the commutator oracle with --margin") {
    const fs::path m = scratch() / "commute_oracle.json";
    io::save_json_file(m, io::to_json(parity_matrix(0.5, IndexWindow(-8, 8))));
    const CliResult res = run_cli({"check", "commute", m.string(), "--margin", "4"});
    CHECK(res.code == 0);
    const json rep = json::parse(res.out);
    CHECK(rep["margin"] == 4);
    // the acceptance probe pair at this window and margin
    CHECK(rep["commutator_norm"].get<double>() == doctest::Approx(3.816e-3).epsilon(1e-3));
}

TEST_CASE("catalog --seed overrides the spec seed deterministically") {
    const fs::path spec = write_json(
        "seeded_spec.json",
        json{{"family", "random_gram"}, {"dimension", 3}, {"seed", 1}, {"window", {0, 4}}});
    const CliResult a = run_cli({"catalog", spec.string(), "--seed", "77"});
    const CliResult b = run_cli({"catalog", spec.string(), "--seed", "77"});
    const CliResult c = run_cli({"catalog", spec.string()});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
}

TEST_CASE("check moments emits cyclic and phase moments") {
    const fs::path m = scratch() / "mom.json";
    io::save_json_file(m, io::to_json(parity_matrix(0.5, IndexWindow(-3, 3))));
    const CliResult res = run_cli({"check", "moments", m.string(), "--kmax", "2"});
    CHECK(res.code == 0);
    const json rep = json::parse(res.out);
    CHECK(rep["pass"] == true);
    CHECK(rep["cyclic"].size() == 5); // k = -2 .. 2
    CHECK(rep["first_moment"].size() == 7);
}

TEST_CASE("window override restricts loaded matrices") {
    const fs::path m = scratch() / "window_mat.json";
    io::save_json_file(m, io::to_json(parity_matrix(0.5, IndexWindow(-6, 6))));
    const CliResult res = run_cli({"validate", m.string(), "--window", "0:4"});
    CHECK(res.code == 0);

    // window not contained -> domain failure (exit 1)
    CHECK(run_cli({"validate", m.string(), "--window", "0:9"}).code == 1);
    // malformed window -> usage failure (exit 2)
    CHECK(run_cli({"validate", m.string(), "--window", "abc"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"validate"}).code == 2);             // missing argument
    CHECK(run_cli({"validate", "x.json", "--nope"}).code == 2);
    const CliResult help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("validate") != std::string::npos);
}

TEST_CASE("prob rejects mismatched windows with exit 1") {
    const fs::path m = scratch() / "mismatch_mat.json";
    io::save_json_file(m, io::to_json(trivial_phase_matrix(IndexWindow(0, 3))));
    const fs::path psi = scratch() / "mismatch_state.json";
    io::save_json_file(psi, io::to_json(StateVector::basis(IndexWindow(0, 5), 1)));
    const fs::path arcs = write_json("mismatch_arcs.json", json::array({{0.0, 1.0}}));
    const CliResult res =
        run_cli({"prob", m.string(), "--state", psi.string(), "--arcs", arcs.string()});
    CHECK(res.code == 1);
}
