// Copyright 2026-present the uqsd project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success, 1 infeasible instance,
// 2 input/validation error, 3 solver did not converge.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uqsd/decompose.hpp"
#include "uqsd/discriminate.hpp"
#include "uqsd/io.hpp"
#include "uqsd/model.hpp"
#include "uqsd/sdp.hpp"
#include "uqsd/simulate.hpp"

namespace {

using namespace uqsd;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInput = 2;
constexpr int kExitNoConverge = 3;

struct CommonOptions {
    std::string input_path;
    std::string output_path;
    std::string format = "text";
    std::string povm_path;
    std::string ranks;
    double tol_rank = -1.0;
    double tol_psd = -1.0;
    double gap_tol = -1.0;
    std::uint64_t seed = 0;
    std::size_t trials = 100000;
    std::size_t max_iter = 0;
    std::size_t dim = 0;
    std::size_t m = 0;
    bool normalize_priors = false;

    Tolerances tolerances() const {
        Tolerances t;
        if (tol_rank > 0.0) t.rank_abs = tol_rank;
        if (tol_psd > 0.0) t.psd = tol_psd;
        if (gap_tol > 0.0) t.solver_gap = gap_tol;
        return t;
    }

    SolverConfig solver_config() const {
        SolverConfig cfg;
        cfg.gap_tol = tolerances().solver_gap;
        if (max_iter > 0) cfg.max_outer = max_iter;
        return cfg;
    }
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool needs_input) {
    if (needs_input) {
        cmd->add_option("input", opt.input_path, "instance file (json)")->required();
    }
    cmd->add_option("--tol-rank", opt.tol_rank, "absolute rank cutoff");
    cmd->add_option("--tol-psd", opt.tol_psd, "PSD slack tolerance");
    cmd->add_option("--gap-tol", opt.gap_tol, "solver duality-gap tolerance");
    cmd->add_option("--seed", opt.seed, "random seed (default 0)");
    cmd->add_option("--trials", opt.trials, "simulation trials");
    cmd->add_option("--max-iter", opt.max_iter, "solver outer-iteration cap");
    cmd->add_flag("--normalize-priors", opt.normalize_priors,
                  "rescale priors to sum 1 instead of rejecting");
    cmd->add_option("--output,-o", opt.output_path, "file for matrix output");
    cmd->add_option("--format", opt.format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << content;
}

void print_report(const JsonValue& report, const CommonOptions& opt) {
    if (opt.format == "json") {
        std::cout << render_json(report);
    } else {
        std::cout << render_text(report);
    }
}

JsonValue tolerances_json(const Tolerances& t) {
    JsonValue j = JsonValue::object();
    j.set("rank_abs", t.rank_abs);
    j.set("rank_rel", t.rank_rel);
    j.set("psd", t.psd);
    j.set("intersect", t.intersect);
    j.set("solver_gap", t.solver_gap);
    j.set("verify", t.verify);
    return j;
}

JsonValue report_header(const char* command, const Tolerances& tol) {
    JsonValue j = JsonValue::object();
    j.set("version", kReportVersion);
    j.set("command", command);
    j.set("tolerances", tolerances_json(tol));
    return j;
}

JsonValue doubles_json(const std::vector<double>& xs) {
    JsonValue arr = JsonValue::array();
    for (double x : xs) {
        arr.push(x);
    }
    return arr;
}

int run_decompose(const CommonOptions& opt) {
    const Tolerances tol = opt.tolerances();
    const ParsedInput input = parse_instance(read_file(opt.input_path), tol,
                                             opt.normalize_priors);
    const CoreSplit split = core_split(input.instance, tol);

    JsonValue report = report_header("decompose", tol);
    report.set("dim", input.instance.dim);
    report.set("num_states", input.instance.num_states());
    JsonValue per_state = JsonValue::array();
    std::size_t core_dims = support(split.core0, tol).dim();
    for (std::size_t i = 0; i < split.num_states(); ++i) {
        JsonValue s = JsonValue::object();
        s.set("index", i);
        s.set("mix_dim", split.mix_spaces[i].dim());
        s.set("core_trace", split.cores[i].trace_value);
        s.set("residue_trace", split.residues[i].trace_value);
        per_state.push(std::move(s));
        core_dims += support(split.cores[i], tol).dim();
    }
    report.set("per_state", std::move(per_state));
    report.set("core0_trace", split.core0.trace_value);

    std::vector<Subspace> supports;
    for (const InstanceEntry& e : input.instance.entries) {
        supports.push_back(support(e.state, tol));
    }
    report.set("support_sum_dim", sum(supports).dim());
    report.set("core_dims_total", core_dims);
    print_report(report, opt);

    if (!opt.output_path.empty()) {
        JsonValue out = JsonValue::object();
        out.set("version", kReportVersion);
        out.set("dim", input.instance.dim);
        JsonValue cores = JsonValue::array();
        JsonValue residues = JsonValue::array();
        for (std::size_t i = 0; i < split.num_states(); ++i) {
            cores.push(matrix_to_json(split.cores[i].matrix));
            residues.push(matrix_to_json(split.residues[i].matrix));
        }
        out.set("cores", std::move(cores));
        out.set("residues", std::move(residues));
        out.set("core0", matrix_to_json(split.core0.matrix));
        write_file(opt.output_path, render_json(out));
    }
    return kExitOk;
}

int run_check(const CommonOptions& opt) {
    const Tolerances tol = opt.tolerances();
    const ParsedInput input = parse_instance(read_file(opt.input_path), tol,
                                             opt.normalize_priors);
    const CoreSplit split = core_split(input.instance, tol);
    const Feasibility feas = feasible(split, tol);

    JsonValue report = report_header("check", tol);
    report.set("feasible", feas.all);
    JsonValue per_state = JsonValue::array();
    for (std::size_t i = 0; i < feas.discriminable.size(); ++i) {
        JsonValue s = JsonValue::object();
        s.set("index", i);
        s.set("core_trace", feas.core_traces[i]);
        s.set("discriminable", static_cast<bool>(feas.discriminable[i]));
        per_state.push(std::move(s));
    }
    report.set("per_state", std::move(per_state));
    print_report(report, opt);
    return feas.all ? kExitOk : kExitInfeasible;
}

int run_bound(const CommonOptions& opt) {
    const Tolerances tol = opt.tolerances();
    const ParsedInput input = parse_instance(read_file(opt.input_path), tol,
                                             opt.normalize_priors);
    const CoreSplit split = core_split(input.instance, tol);
    const Feasibility feas = feasible(split, tol);

    JsonValue report = report_header("bound", tol);
    report.set("upper_bound", upper_bound(split, input.instance.priors()));
    report.set("core_traces", doubles_json(feas.core_traces));
    print_report(report, opt);
    return kExitOk;
}

JsonValue solve_report_body(const OptimizeReport& r, const Tolerances& tol,
                            const char* command) {
    JsonValue report = report_header(command, tol);
    report.set("feasible", r.feasible);
    report.set("converged", r.converged);
    if (r.problem.has_value()) {
        JsonValue blocks = JsonValue::array();
        for (std::size_t b : r.problem->block_sizes) {
            blocks.push(b);
        }
        report.set("block_sizes", std::move(blocks));
    }
    report.set("gammas", doubles_json(r.gammas));
    report.set("P", r.total_p);
    report.set("upper_bound", r.upper_bound_value);
    report.set("core_traces", doubles_json(r.core_traces));
    JsonValue certs = JsonValue::object();
    certs.set("min_eig_slack", r.cert_min_eig_slack);
    certs.set("min_eig_gamma", r.cert_min_eig_gamma);
    report.set("certificates", std::move(certs));
    return report;
}

int run_solve(const CommonOptions& opt) {
    const Tolerances tol = opt.tolerances();
    const ParsedInput input = parse_instance(read_file(opt.input_path), tol,
                                             opt.normalize_priors);
    const OptimizeReport r = optimize(input.instance, opt.solver_config(), tol);
    JsonValue report = solve_report_body(r, tol, "solve");
    print_report(report, opt);
    if (!r.feasible) return kExitInfeasible;
    if (!r.converged) return kExitNoConverge;
    return kExitOk;
}

JsonValue verification_json(const PovmVerification& v) {
    JsonValue j = JsonValue::object();
    j.set("max_cross_trace", v.max_cross_trace);
    j.set("max_core0_trace", v.max_core0_trace);
    j.set("max_core_cross_trace", v.max_core_cross_trace);
    j.set("min_operator_eig", v.min_operator_eig);
    j.set("completeness_residual", v.completeness_residual);
    j.set("successes", doubles_json(v.successes));
    j.set("unambiguous", v.unambiguous);
    return j;
}

int run_synth(const CommonOptions& opt) {
    const Tolerances tol = opt.tolerances();
    const ParsedInput input = parse_instance(read_file(opt.input_path), tol,
                                             opt.normalize_priors);
    const OptimizeReport r = optimize(input.instance, opt.solver_config(), tol);
    if (!r.feasible) {
        JsonValue report = solve_report_body(r, tol, "synth");
        print_report(report, opt);
        return kExitInfeasible;
    }
    const POVM povm =
        synthesize_povm(input.instance, r.split, r.ensembles, *r.solution, tol);
    const PovmVerification v = verify_povm(input.instance, r.split, povm, tol);

    JsonValue report = solve_report_body(r, tol, "synth");
    report.set("verification", verification_json(v));
    print_report(report, opt);
    if (!opt.output_path.empty()) {
        write_file(opt.output_path, render_json(povm_to_json(povm)));
    }
    if (!r.converged) return kExitNoConverge;
    return kExitOk;
}

int run_simulate(const CommonOptions& opt) {
    const Tolerances tol = opt.tolerances();
    const ParsedInput input = parse_instance(read_file(opt.input_path), tol,
                                             opt.normalize_priors);
    POVM povm;
    const char* source = "file";
    if (!opt.povm_path.empty()) {
        povm = parse_povm(read_file(opt.povm_path), input.instance.dim);
    } else {
        source = "synthesized";
        const OptimizeReport r = optimize(input.instance, opt.solver_config(), tol);
        if (!r.feasible) {
            JsonValue report = solve_report_body(r, tol, "simulate");
            print_report(report, opt);
            return kExitInfeasible;
        }
        povm = synthesize_povm(input.instance, r.split, r.ensembles, *r.solution, tol);
    }

    const SimReport sim = run_simulation(input.instance, povm, opt.trials, opt.seed);
    JsonValue report = report_header("simulate", tol);
    report.set("povm_source", source);
    report.set("seed", sim.seed);
    report.set("trials", sim.trials);
    report.set("predicted_success", sim.predicted_success);
    report.set("empirical_success", sim.empirical_success);
    report.set("misidentifications", sim.misidentifications);
    JsonValue counts = JsonValue::array();
    for (const auto& row : sim.counts) {
        JsonValue r2 = JsonValue::array();
        for (std::uint64_t c : row) {
            r2.push(c);
        }
        counts.push(std::move(r2));
    }
    report.set("counts", std::move(counts));
    print_report(report, opt);
    return kExitOk;
}

int run_gen(const CommonOptions& opt) {
    std::vector<std::size_t> ranks;
    std::stringstream ss(opt.ranks);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) continue;
        ranks.push_back(static_cast<std::size_t>(std::stoul(part)));
    }
    const DiscriminationInstance inst = random_instance(opt.dim, opt.m, ranks, opt.seed);
    const std::string text = render_json(instance_to_json(inst));
    if (!opt.output_path.empty()) {
        write_file(opt.output_path, text);
    } else {
        std::cout << text;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unambiguous discrimination of mixed quantum states"};
    app.require_subcommand(1);

    CommonOptions opt;
    CLI::App* decompose_cmd =
        app.add_subcommand("decompose", "split states into cores and shared parts");
    add_common_flags(decompose_cmd, opt, true);
    CLI::App* check_cmd =
        app.add_subcommand("check", "decide whether the states are discriminable");
    add_common_flags(check_cmd, opt, true);
    CLI::App* bound_cmd =
        app.add_subcommand("bound", "closed-form cap on the success probability");
    add_common_flags(bound_cmd, opt, true);
    CLI::App* solve_cmd =
        app.add_subcommand("solve", "optimal success probability via the Gram SDP");
    add_common_flags(solve_cmd, opt, true);
    CLI::App* synth_cmd =
        app.add_subcommand("synth", "solve and synthesize the measurement");
    add_common_flags(synth_cmd, opt, true);
    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "Monte Carlo check of a measurement");
    add_common_flags(simulate_cmd, opt, true);
    simulate_cmd->add_option("--povm", opt.povm_path,
                             "measurement file (synthesized when absent)");
    CLI::App* gen_cmd = app.add_subcommand("gen", "write a seeded random instance");
    add_common_flags(gen_cmd, opt, false);
    gen_cmd->add_option("--dim", opt.dim, "ambient dimension")->required();
    gen_cmd->add_option("--m", opt.m, "number of states")->required();
    gen_cmd->add_option("--ranks", opt.ranks, "comma-separated state ranks")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (decompose_cmd->parsed()) return run_decompose(opt);
        if (check_cmd->parsed()) return run_check(opt);
        if (bound_cmd->parsed()) return run_bound(opt);
        if (solve_cmd->parsed()) return run_solve(opt);
        if (synth_cmd->parsed()) return run_synth(opt);
        if (simulate_cmd->parsed()) return run_simulate(opt);
        if (gen_cmd->parsed()) return run_gen(opt);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
