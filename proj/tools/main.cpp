// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace twocoin::cli;

struct CommonOpts {
    std::string format = "json";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& common) {
    cmd->add_option("--format", common.format, "Report format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    cmd->add_option("--out", common.out, "Write the report to a file instead of stdout");
}

void add_schedule_opts(CLI::App* cmd, ScheduleChoice& choice) {
    cmd->add_option("--graph", choice.graph, "Graph family: cycle or complete")
        ->check(CLI::IsMember({"cycle", "complete"}))
        ->capture_default_str();
    cmd->add_option("--preset", choice.preset, "Cycle schedule preset (cycle8)")
        ->capture_default_str();
    cmd->add_option("--n", choice.n, "Complete graph: number of vertices");
    cmd->add_option("--target", choice.target, "Complete graph: target vertex y");
}

std::uint64_t auto_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int emit(const nlohmann::json& report, const CommonOpts& common) {
    const std::string text = render_report(report, common.format);
    if (common.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(common.out);
        if (!f) {
            std::cerr << "error: cannot write " << common.out << "\n";
            return kExitInternal;
        }
        f << text;
    }
    return report_exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twocoin: two-coin quantum-walk state transfer toolkit"};
    app.require_subcommand(1);

    TransferConfig transfer;
    SampleConfig sample;
    TomographyConfig tomo;
    CompileConfig compile;
    SearchConfig search;
    CommonOpts common_transfer, common_sample, common_tomo, common_compile,
        common_search;
    bool seed_given_transfer = false, seed_given_sample = false, seed_given_tomo = false;

    auto* cmd_transfer = app.add_subcommand(
        "transfer", "Run a transfer schedule and report exact distributions");
    add_schedule_opts(cmd_transfer, transfer.schedule);
    cmd_transfer->add_option("--payload", transfer.payload,
                             "Payload: bell, ghz, w or a coefficient list")
        ->required();
    cmd_transfer->add_option("--shots", transfer.shots,
                             "Also sample the final state (0 = skip)")
        ->capture_default_str();
    cmd_transfer->add_option("--seed", transfer.seed, "Sampling seed")
        ->trigger_on_parse()
        ->each([&](const std::string&) { seed_given_transfer = true; });
    add_common(cmd_transfer, common_transfer);

    auto* cmd_sample = app.add_subcommand(
        "sample", "Sample final-state marginals and compare with theory");
    add_schedule_opts(cmd_sample, sample.schedule);
    cmd_sample->add_option("--payload", sample.payload, "Payload spec")->required();
    cmd_sample->add_option("--shots", sample.shots, "Shots per register")
        ->capture_default_str();
    cmd_sample->add_option("--seed", sample.seed, "Sampling seed")
        ->trigger_on_parse()
        ->each([&](const std::string&) { seed_given_sample = true; });
    add_common(cmd_sample, common_sample);

    auto* cmd_tomo = app.add_subcommand(
        "tomography", "Reconstruct the transferred payload qubit");
    add_schedule_opts(cmd_tomo, tomo.schedule);
    cmd_tomo->add_option("--payload", tomo.payload, "Single-qubit payload")
        ->capture_default_str();
    cmd_tomo->add_option("--shots", tomo.shots, "Shots per run and basis")
        ->capture_default_str();
    cmd_tomo->add_option("--runs", tomo.runs, "Independent runs per basis")
        ->capture_default_str();
    cmd_tomo->add_option("--seed", tomo.seed, "Sampling seed")
        ->trigger_on_parse()
        ->each([&](const std::string&) { seed_given_tomo = true; });
    cmd_tomo->add_flag("--exact", tomo.exact,
                       "Use exact Born expectations instead of sampling");
    cmd_tomo->add_option("--fixture", tomo.fixtures,
                         "Recorded-run CSV (repeatable; replaces sampling)");
    cmd_tomo->add_option("--target-round", tomo.target_round,
                         "Round the target matrix to this many decimals "
                         "(default: 4 with fixtures, else none)");
    add_common(cmd_tomo, common_tomo);

    auto* cmd_compile = app.add_subcommand(
        "compile", "Lower a protocol (or payload preparation) to gates");
    add_schedule_opts(cmd_compile, compile.schedule);
    cmd_compile->add_flag("--simplify", compile.schedule.simplify,
                          "Drop provably idle steps first");
    cmd_compile->add_option("--payload", compile.payload_circuit,
                            "Emit a payload-preparation circuit instead "
                            "(bell, ghz, w, single:t,p,l)");
    cmd_compile->add_option("--couple", compile.coupling,
                            "Coupling map: JSON file, line:N or star:N");
    cmd_compile->add_option("--measure", compile.measure,
                            "Append measurements: none, all, position, coin1, coin2");
    cmd_compile->add_option("--qasm", compile.qasm_out,
                            "Write OpenQASM 2.0 here (otherwise embedded in the report)");
    add_common(cmd_compile, common_compile);

    auto* cmd_search = app.add_subcommand(
        "search", "Exhaustively search cycle schedules with perfect transfer");
    cmd_search->add_option("--l", search.l, "Cycle length (<= 12)")->required();
    cmd_search->add_option("--source", search.source, "Source vertex")->required();
    cmd_search->add_option("--target", search.target, "Target vertex")->required();
    cmd_search->add_option("--max-steps", search.max_steps, "Longest schedule (<= 12)")
        ->required();
    add_common(cmd_search, common_search);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cmd_transfer) {
            if (!seed_given_transfer) transfer.seed = auto_seed();
            return emit(run_transfer(transfer), common_transfer);
        }
        if (*cmd_sample) {
            if (!seed_given_sample) sample.seed = auto_seed();
            return emit(run_sample(sample), common_sample);
        }
        if (*cmd_tomo) {
            if (!seed_given_tomo) tomo.seed = auto_seed();
            return emit(run_tomography(tomo), common_tomo);
        }
        if (*cmd_compile) return emit(run_compile(compile), common_compile);
        if (*cmd_search) return emit(run_search(search), common_search);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
