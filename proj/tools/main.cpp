#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kronsum/kron.hpp"
#include "kronsum/matrix.hpp"
#include "kronsum/matrix_io.hpp"
#include "kronsum/preserver.hpp"
#include "kronsum/random.hpp"
#include "kronsum/suite.hpp"

namespace {

int cmd_verify_left(const std::string& path, std::size_t m, std::size_t n, double tol,
                    bool as_json) {
    const kronsum::Matrix p = kronsum::load_matrix(path);
    const kronsum::BlockDims dims(m, n);
    if (p.rows() != dims.product() || p.cols() != dims.product()) {
        throw kronsum::FormatError("matrix in '" + path + "' is " + std::to_string(p.rows()) +
                                   "x" + std::to_string(p.cols()) + ", expected " +
                                   std::to_string(dims.product()) + "x" +
                                   std::to_string(dims.product()));
    }
    const kronsum::PreserverReport report = kronsum::check_left_mult(p, dims, tol);
    const bool pass = report.holds_condition && report.holds_oracle;
    if (as_json) {
        nlohmann::json out{{"condition", report.holds_condition},
                           {"oracle", report.holds_oracle},
                           {"pass", pass},
                           {"max_defect", report.max_defect},
                           {"residual_1", kronsum::matrix_to_json(report.residual_1)},
                           {"residual_2", kronsum::matrix_to_json(report.residual_2)}};
        std::cout << out.dump() << '\n';
    } else {
        std::cout << "condition: " << (report.holds_condition ? "holds" : "fails") << '\n'
                  << "oracle: " << (report.holds_oracle ? "holds" : "fails") << '\n'
                  << "max_defect: " << report.max_defect << '\n'
                  << "verdict: " << (pass ? "preserves" : "does not preserve") << '\n';
    }
    return pass ? 0 : 1;
}

int cmd_synthesize(std::size_t m, std::size_t n, std::size_t r, std::uint64_t seed,
                   const std::string& out_path) {
    const kronsum::BlockDims dims(m, n);
    const kronsum::Matrix p = kronsum::synth_left_mult_preserver(dims, r, seed);
    if (!kronsum::oracle_preserves_trace(kronsum::left_multiplication(p), dims, 1e-9)) {
        std::cerr << "synthesized matrix failed its own verification\n";
        return 1;
    }
    if (out_path.empty()) {
        std::cout << kronsum::matrix_to_json(p).dump() << '\n';
    } else {
        kronsum::save_matrix(out_path, p);
    }
    return 0;
}

int cmd_suite(const kronsum::SuiteOptions& options, bool as_json) {
    const kronsum::SuiteReport report = kronsum::run_suite(options);
    if (as_json) {
        std::cout << kronsum::suite_report_to_json(report).dump() << '\n';
    } else {
        std::cout << kronsum::format_suite_report(report);
    }
    return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kronecker trace-preservation toolkit"};
    app.require_subcommand(1);
    int rc = 0;

    auto* verify = app.add_subcommand(
        "verify-left", "Check whether left multiplication by a matrix preserves the trace");
    std::string verify_path;
    std::size_t verify_m = 0;
    std::size_t verify_n = 0;
    double verify_tol = 1e-9;
    bool verify_json = false;
    verify->add_option("matrix", verify_path, "JSON matrix file")->required();
    verify->add_option("--m", verify_m, "row block count")->required();
    verify->add_option("--n", verify_n, "column block size")->required();
    verify->add_option("--tol", verify_tol, "residual tolerance");
    verify->add_flag("--json", verify_json, "emit a JSON report");
    verify->callback(
        [&] { rc = cmd_verify_left(verify_path, verify_m, verify_n, verify_tol, verify_json); });

    auto* synth = app.add_subcommand("synthesize",
                                     "Produce a trace-preserving left-multiplication matrix");
    std::size_t synth_m = 0;
    std::size_t synth_n = 0;
    std::size_t synth_r = 1;
    std::uint64_t synth_seed = 42;
    std::string synth_out;
    synth->add_option("--m", synth_m, "row block count")->required();
    synth->add_option("--n", synth_n, "column block size")->required();
    synth->add_option("--r", synth_r, "number of traceless Kronecker terms");
    synth->add_option("--seed", synth_seed, "sampling seed");
    synth->add_option("--out", synth_out, "output file (stdout when omitted)");
    synth->callback([&] { rc = cmd_synthesize(synth_m, synth_n, synth_r, synth_seed, synth_out); });

    auto* suite = app.add_subcommand("suite", "Run the randomized property census");
    kronsum::SuiteOptions options;
    std::vector<std::string> suite_dims;
    std::string suite_mutation = "none";
    bool suite_json = false;
    suite->add_option("--seed", options.seed, "master seed");
    suite->add_option("--trials", options.trials, "trials per property and dims");
    suite->add_option("--dims", suite_dims, "block dims like 2x3 (repeatable)");
    suite->add_option("--tol", options.tol, "verdict tolerance");
    suite->add_flag("--json", suite_json, "emit a JSON report");
    suite->add_option("--mutate", suite_mutation)->group("");
    suite->callback([&] {
        if (!suite_dims.empty()) {
            options.dims = kronsum::parse_dims_list(suite_dims);
        }
        options.mutation = kronsum::mutation_from_name(suite_mutation);
        rc = cmd_suite(options, suite_json);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const kronsum::FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
