// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "twocoin/hilbert.hpp"

namespace twocoin::cli {

inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerification = 3;

/// Bad arguments or config values; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/*
 * Payload mini-language: the presets bell, ghz and w, or a comma-separated
 * complex coefficient list in a+bi form ("0.5,0.866", "0.7-0.1i,0,0,0.7").
 * Lists are normalized; deviations beyond 1e-6 are flagged in the report.
 */
CoinStateSpec parse_payload(const std::string& text, int expected_dim,
                            bool* normalized_warning = nullptr);

struct ScheduleChoice {
    std::string graph = "cycle";   // cycle | complete
    std::string preset = "cycle8"; // cycle graphs: named preset
    int n = 0;                     // complete graphs: vertex count
    int target = 0;                // complete graphs: target vertex
    bool simplify = false;
};

struct TransferConfig {
    ScheduleChoice schedule;
    std::string payload;
    long long shots = 0;  // 0: skip sampling
    std::uint64_t seed = 0;
};

struct SampleConfig {
    ScheduleChoice schedule;
    std::string payload;
    long long shots = 8192;
    std::uint64_t seed = 0;
};

struct TomographyConfig {
    ScheduleChoice schedule;
    std::string payload = "0.5,0.86602540378443865";
    long long shots = 8192;
    int runs = 10;
    std::uint64_t seed = 0;
    bool exact = false;
    std::vector<std::string> fixtures;  // non-empty: fixture mode
    int target_round = -1;  // decimals for the target matrix; -1: resolve default
};

struct CompileConfig {
    ScheduleChoice schedule;
    std::string payload_circuit;  // non-empty: emit a preparation circuit instead
    std::string coupling;         // "", "line:N", "star:N" or a JSON file path
    std::string measure;          // none | all | position | coin1 | coin2
    std::string qasm_out;         // optional path; otherwise QASM is embedded
};

struct SearchConfig {
    int l = 8;
    int source = 0;
    int target = 5;
    int max_steps = 7;
};

nlohmann::json run_transfer(const TransferConfig&);
nlohmann::json run_sample(const SampleConfig&);
nlohmann::json run_tomography(const TomographyConfig&);
nlohmann::json run_compile(const CompileConfig&);
nlohmann::json run_search(const SearchConfig&);

// Envelope: tool id/version + echoed config + result payload.
nlohmann::json make_report(const std::string& command, nlohmann::json config,
                           nlohmann::json result);

// json: the report itself; text/csv: per-command tabular renderings.
std::string render_report(const nlohmann::json& report, const std::string& format);

// Exit code implied by a finished report (verification verdicts).
int report_exit_code(const nlohmann::json& report);

}  // namespace twocoin::cli
