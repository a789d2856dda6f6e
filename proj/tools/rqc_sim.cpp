// Copyright 2026 The rqc-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// rqc-sim: command-line front end over the C API.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rqc/rqc.h"

namespace {

struct Common {
    std::uint64_t seed = RQC_DEFAULT_SEED;
    int threads = 0;
    std::string format = "csv";
    std::string output = "-";
    std::string summary;
};

int fail(rqc_status status) {
    std::fprintf(stderr, "rqc-sim: %s: %s\n", rqc_status_string(status), rqc_last_error());
    return 2;
}

// Writes the table, then the JSON summary. A CSV table written to a file
// gets its summary next to it unless --summary names another path.
int finish(rqc_status status, rqc_report* const* out, const Common& c) {
    rqc_report* report = *out;
    if (status != RQC_OK) return fail(status);
    const rqc_format format = c.format == "json" ? RQC_FORMAT_JSON : RQC_FORMAT_CSV;
    std::string summary = c.summary;
    if (summary.empty() && format == RQC_FORMAT_CSV && !c.output.empty() && c.output != "-")
        summary = c.output + ".summary.json";
    status = rqc_report_write(report, format, c.output.c_str());
    if (status == RQC_OK && !summary.empty()) status = rqc_report_write_summary(report, summary.c_str());
    rqc_report_free(report);
    return status == RQC_OK ? 0 : fail(status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulations of relational quantum computing from maximally mixed qubits"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--seed", common.seed, "Random seed")->capture_default_str();
    app.add_option("--threads", common.threads, "Worker threads (0: RQC_SIM_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--output,-o", common.output, "Output path, '-' for standard output")->capture_default_str();
    app.add_option("--summary", common.summary, "Also write the JSON summary to this path");

    rqc_walk_config walk;
    rqc_walk_config_default(&walk);
    auto* walk_cmd = app.add_subcommand("walk", "Monte Carlo of the growth random walk against its closed forms");
    walk_cmd->add_option("--target-n", walk.target_n, "Absorbing target N")->required()->check(CLI::PositiveNumber);
    walk_cmd->add_option("--trials", walk.trials, "Independent walks")->capture_default_str();
    walk_cmd->add_option("--start-k", walk.start_k, "Starting register size")->capture_default_str();
    walk_cmd->add_option("--max-steps", walk.max_steps, "Step cap per walk (0: 10 N^2)")->capture_default_str();

    rqc_growth_quantum_config gq;
    rqc_growth_quantum_config_default(&gq);
    auto* gq_cmd = app.add_subcommand("growth-quantum", "Density-matrix check of one growth step");
    gq_cmd->add_option("--k", gq.k, "Size K of the symmetric register")->required();
    gq_cmd->add_option("--measurements", gq.measurements, "Random-pair s/t measurements")->capture_default_str();
    gq_cmd->add_option("--discard-trials", gq.discard_trials, "Singlet-discard partner draws")->capture_default_str();

    rqc_localize_config lz;
    rqc_localize_config_default(&lz);
    auto* lz_cmd = app.add_subcommand("localize", "Monte Carlo of relative localization");
    lz_cmd->add_option("--n", lz.n, "Computation qubits per source")->required();
    lz_cmd->add_option("--m", lz.m, "Cross-pair s/t measurements")->required();
    lz_cmd->add_option("--trials", lz.trials, "Independent runs")->capture_default_str();

    rqc_tiny_exact_config te;
    rqc_tiny_exact_config_default(&te);
    std::string twirl = "cubature";
    std::string outcomes;
    auto* te_cmd = app.add_subcommand("tiny-exact", "Exact density-matrix localization against the Bayesian ensemble");
    te_cmd->add_option("--n", te.n, "Computation qubits per source")->required();
    te_cmd->add_option("--m", te.m, "Cross-pair s/t measurements")->required();
    te_cmd->add_option("--twirl", twirl, "Twirl average")->check(CLI::IsMember({"cubature", "haar"}))
        ->capture_default_str();
    te_cmd->add_option("--theta-nodes", te.theta_nodes, "Quadrature nodes in theta")->capture_default_str();
    te_cmd->add_option("--haar-samples", te.haar_samples, "Samples for the Haar twirl")->capture_default_str();
    te_cmd->add_option("--outcomes", outcomes, "Report a single outcome string, e.g. TTS");

    std::vector<int> sweep_n{4, 8, 16, 32};
    std::vector<double> sweep_eps{0.2, 0.1, 0.05};
    rqc_sweep_config sw;
    rqc_sweep_config_default(&sw);
    auto* sw_cmd = app.add_subcommand("sweep", "Scaling of the required M with N and epsilon");
    sw_cmd->add_option("--n", sweep_n, "Comma-separated N values")->delimiter(',')->capture_default_str();
    sw_cmd->add_option("--eps", sweep_eps, "Comma-separated epsilon values")->delimiter(',')->capture_default_str();
    sw_cmd->add_option("--trials", sw.trials, "Trials per row")->capture_default_str();

    rqc_end_to_end_config ee;
    rqc_end_to_end_config_default(&ee);
    auto* ee_cmd = app.add_subcommand("end-to-end", "Grow two sources, then localize");
    ee_cmd->add_option("--n", ee.n, "Computation qubits per source")->required();
    ee_cmd->add_option("--m", ee.m, "Cross-pair s/t measurements")->required();
    ee_cmd->add_option("--measurements-per-step", ee.measurements_per_step, "s/t measurements per walk step")
        ->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    rqc_report* report = nullptr;
    if (*walk_cmd) {
        walk.seed = common.seed;
        walk.threads = common.threads;
        return finish(rqc_walk(&walk, &report), &report, common);
    }
    if (*gq_cmd) {
        gq.seed = common.seed;
        return finish(rqc_growth_quantum(&gq, &report), &report, common);
    }
    if (*lz_cmd) {
        lz.seed = common.seed;
        lz.threads = common.threads;
        return finish(rqc_localize(&lz, &report), &report, common);
    }
    if (*te_cmd) {
        te.seed = common.seed;
        te.twirl = twirl == "haar" ? RQC_TWIRL_HAAR : RQC_TWIRL_CUBATURE;
        te.outcomes = outcomes.c_str();
        return finish(rqc_tiny_exact(&te, &report), &report, common);
    }
    if (*sw_cmd) {
        sw.n_values = sweep_n.data();
        sw.n_count = sweep_n.size();
        sw.epsilon_values = sweep_eps.data();
        sw.epsilon_count = sweep_eps.size();
        sw.seed = common.seed;
        sw.threads = common.threads;
        return finish(rqc_sweep(&sw, &report), &report, common);
    }
    if (*ee_cmd) {
        ee.seed = common.seed;
        return finish(rqc_end_to_end(&ee, &report), &report, common);
    }
    if (*verify_cmd) {
        rqc_verify_config vc;
        rqc_verify_config_default(&vc);
        vc.seed = common.seed;
        vc.threads = common.threads;
        int passed = 0;
        const rqc_status status = rqc_verify(&vc, &report, &passed);
        const int code = finish(status, &report, common);
        if (code != 0) return code;
        if (!passed) std::fprintf(stderr, "rqc-sim: verify: invariant failures\n");
        return passed ? 0 : 1;
    }
    return 2;
}
