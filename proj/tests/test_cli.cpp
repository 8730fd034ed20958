#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>

#include <json.hpp>

#include "kronsum/matrix_io.hpp"
#include "kronsum/preserver.hpp"
#include "support.hpp"

using kronsum::Matrix;
using nlohmann::json;
using testsup::run_cli;

TEST_CASE("usage errors") {
    CHECK(run_cli("").status == 2);
    CHECK(run_cli("frobnicate").status == 2);
    CHECK(run_cli("verify-left").status == 2);               // missing required arguments
    CHECK(run_cli("suite --no-such-flag").status == 2);
    CHECK(run_cli("--help").status == 0);
    CHECK(run_cli("suite --help").status == 0);
}

TEST_CASE("verify-left") {
    const auto id_path = testsup::temp_path("id6");
    kronsum::save_matrix(id_path, Matrix::identity(6));
    const auto pass = run_cli("verify-left " + id_path.string() + " --m 2 --n 3");
    CHECK(pass.status == 0);
    CHECK(pass.output.find("preserves") != std::string::npos);

    const auto doubled_path = testsup::temp_path("doubled");
    kronsum::save_matrix(doubled_path, kronsum::Complex(2.0) * Matrix::identity(6));
    const auto fail = run_cli("verify-left " + doubled_path.string() + " --m 2 --n 3");
    CHECK(fail.status == 1);
    CHECK(fail.output.find("fails") != std::string::npos);

    // structured report with residuals
    const auto as_json = run_cli("verify-left " + doubled_path.string() + " --m 2 --n 3 --json");
    CHECK(as_json.status == 1);
    const json report = json::parse(as_json.output);
    CHECK(report.at("pass") == false);
    CHECK(report.at("condition") == false);
    CHECK(report.at("oracle") == false);
    // residual_2 = 6 I2 - 3 I2 dominates residual_1 = 4 I3 - 2 I3
    CHECK(report.at("max_defect").get<double>() == doctest::Approx(3.0));
    const Matrix residual = kronsum::matrix_from_json(report.at("residual_1"));
    CHECK(residual.rows() == 3);

    // emitted JSON is stable under a parse/serialize round trip
    const std::string body = as_json.output.substr(0, as_json.output.find('\n'));
    CHECK(json::parse(body).dump() == body);

    const auto bad_path = testsup::temp_path("bad");
    testsup::write_file(bad_path, "{\"rows\": 2}\n");
    CHECK(run_cli("verify-left " + bad_path.string() + " --m 2 --n 3").status == 2);

    // dimensions that do not match the file are input errors
    CHECK(run_cli("verify-left " + id_path.string() + " --m 2 --n 2").status == 2);
    CHECK(run_cli("verify-left /no/such/file --m 2 --n 3").status == 2);

    std::filesystem::remove(id_path);
    std::filesystem::remove(doubled_path);
    std::filesystem::remove(bad_path);
}

TEST_CASE("synthesize") {
    const auto out0 = testsup::temp_path("synth0");
    CHECK(run_cli("synthesize --m 2 --n 3 --r 0 --out " + out0.string()).status == 0);
    CHECK(kronsum::load_matrix(out0) == Matrix::identity(6));

    const auto out2 = testsup::temp_path("synth2");
    CHECK(run_cli("synthesize --m 2 --n 3 --r 2 --seed 7 --out " + out2.string()).status == 0);
    CHECK(run_cli("verify-left " + out2.string() + " --m 2 --n 3").status == 0);
    const Matrix p = kronsum::load_matrix(out2);
    CHECK(kronsum::check_left_mult(p, kronsum::BlockDims(2, 3)).holds_oracle);

    // determinism: the same seed produces byte-identical files
    const auto out2b = testsup::temp_path("synth2b");
    CHECK(run_cli("synthesize --m 2 --n 3 --r 2 --seed 7 --out " + out2b.string()).status == 0);
    CHECK(testsup::read_file(out2) == testsup::read_file(out2b));

    // without --out the matrix goes to stdout
    const auto to_stdout = run_cli("synthesize --m 2 --n 3 --r 2 --seed 7");
    CHECK(to_stdout.status == 0);
    CHECK(kronsum::matrix_from_json(json::parse(to_stdout.output)) == p);

    CHECK(run_cli("synthesize --m 2 --n 3 --r 2 --out /nonexistent-dir/p.json").status == 2);

    std::filesystem::remove(out0);
    std::filesystem::remove(out2);
    std::filesystem::remove(out2b);
}

TEST_CASE("suite") {
    const auto quick = run_cli("suite --trials 2 --dims 2x2 --seed 42");
    CHECK(quick.status == 0);
    CHECK(quick.output.find("suite: PASS") != std::string::npos);

    // determinism across runs
    const auto again = run_cli("suite --trials 2 --dims 2x2 --seed 42");
    CHECK(again.output == quick.output);

    const auto as_json = run_cli("suite --trials 2 --dims 2x2 --seed 42 --json");
    CHECK(as_json.status == 0);
    const std::string body = as_json.output.substr(0, as_json.output.find('\n'));
    const json report = json::parse(body);
    CHECK(report.at("pass") == true);
    CHECK(json::parse(body).dump() == body);
    for (const auto& record : report.at("records")) {
        CHECK(record.at("trials") == 2);
        CHECK(record.at("failures") == 0);
    }

    const auto vacuous = run_cli("suite --trials 0 --dims 2x2 --json");
    CHECK(vacuous.status == 0);
    const json empty = json::parse(vacuous.output);
    CHECK(empty.at("pass") == true);
    CHECK(empty.at("records")[0].at("trials") == 0);

    CHECK(run_cli("suite --dims 2y2").status == 2);
    CHECK(run_cli("suite --mutate bogus --trials 1 --dims 2x2").status == 2);

    // the injected bug flips the commutator criterion and must be caught,
    // with the failing property named in the report
    const auto mutated = run_cli("suite --trials 2 --dims 2x2 --mutate negate-commutator");
    CHECK(mutated.status == 1);
    CHECK(mutated.output.find("FAIL") != std::string::npos);
    CHECK(mutated.output.find("lemma-commutator-agreement") != std::string::npos);
}
