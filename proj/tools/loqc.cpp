// Copyright 2026 The loqc Authors
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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "loqc/assets.hpp"
#include "loqc/dilation.hpp"
#include "loqc/io.hpp"
#include "loqc/kernels.hpp"
#include "loqc/metrics.hpp"
#include "loqc/optimize.hpp"
#include "loqc/qec.hpp"
#include "loqc/reck.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace loqc;

namespace {

struct CommonFlags {
    std::string format = "json";
    std::string out_dir;
    std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--format", flags.format, "Report format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", flags.out_dir, "Directory for output artifacts");
    cmd->add_option("--seed", flags.seed, "Random seed where applicable");
}

json base_report(const std::string& command, const CommonFlags& flags) {
    json j;
    j["command"] = command;
    j["tool_version"] = kToolVersion;
    j["seed"] = flags.seed;
    j["kernel_isa"] = kernels::isa_name(kernels::active_isa());
    return j;
}

void emit_report(const json& report, const CommonFlags& flags,
                 const std::string& text_summary) {
    if (flags.format == "text")
        std::cout << text_summary;
    else
        std::cout << report.dump(2) << "\n";
    if (!flags.out_dir.empty()) {
        fs::create_directories(flags.out_dir);
        atomic_write(fs::path(flags.out_dir) / "report.json", report.dump(2) + "\n");
    }
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json scheme_json(const MeasurementScheme& s) {
    return json{{"ancilla_modes", s.ancilla_modes},
                {"ancilla_input", s.ancilla_input},
                {"herald_pattern", s.herald_pattern}};
}

// ---------------------------------------------------------------------------

int cmd_verify_appendix(const CommonFlags& flags, const std::string& matrix_path,
                        const std::string& emit_block_path) {
    const auto t0 = std::chrono::steady_clock::now();
    ModeTransform nine =
        matrix_path.empty() ? assets::appendix_matrix()
                            : ModeTransform(load_matrix_file(matrix_path).matrix);
    const AppendixVerification v = verify_appendix(nine);

    constexpr double kExpectedP = 0.00974276;
    const bool fidelity_ok = v.best.fidelity >= 1.0 - 1e-6;
    const bool probability_ok = std::abs(v.best.success_probability - kExpectedP) <= 1e-4;

    json j = base_report("verify-appendix", flags);
    j["config"] = {{"matrix", matrix_path.empty() ? "bundled" : matrix_path},
                   {"emit_block", emit_block_path}};
    j["fidelity"] = v.best.fidelity;
    j["success_probability"] = v.best.success_probability;
    j["expected_success_probability"] = kExpectedP;
    j["singular_values_active_block"] = v.singular_values;
    j["knill_combination_probability"] = kKnillCombinationProbability;
    j["gain_over_knill_combination"] =
        v.best.success_probability / kKnillCombinationProbability;
    // Resolved configuration; columns reported 1-based.
    json resolved;
    resolved["active_columns_V_A_VR_VL"] = {v.active_columns[0] + 1, v.active_columns[1] + 1,
                                            v.active_columns[2] + 1};
    resolved["spectator_columns_H_A_HL_HR"] = {v.spectator_columns[0] + 1,
                                               v.spectator_columns[1] + 1,
                                               v.spectator_columns[2] + 1};
    resolved["scheme"] = scheme_json(v.scheme);
    resolved["configurations_tested"] = v.configurations_tested;
    j["resolved"] = resolved;
    j["checks"] = {{"fidelity_ok", fidelity_ok}, {"probability_ok", probability_ok}};
    j["wall_time_s"] = elapsed_s(t0);

    if (!emit_block_path.empty()) {
        save_matrix_file(MatrixFile::wrap(v.active_block, "appendix_active_block",
                                          "active 6x6 block (V_A, VR_A1, VL_A1, anc1..3)"),
                         emit_block_path);
        j["emitted_block"] = emit_block_path;
    }

    std::ostringstream text;
    text << "verify-appendix\n"
         << "  fidelity             " << format_double(v.best.fidelity) << "\n"
         << "  success probability  " << format_double(v.best.success_probability)
         << "  (expected " << kExpectedP << ")\n"
         << "  singular values      ";
    for (double s : v.singular_values) text << format_double(s) << " ";
    text << "\n  checks               " << (fidelity_ok && probability_ok ? "PASS" : "FAIL")
         << "\n";
    emit_report(j, flags, text.str());
    return fidelity_ok && probability_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_optimize(const CommonFlags& flags, OptimizationConfig cfg) {
    cfg.seed = flags.seed;
    const OptimizationResult res = run_cycles(cfg);

    json j = base_report("optimize", flags);
    j["config"] = {
        {"space", cfg.space == OptimizationConfig::Space::reduced6 ? "reduced" : "full"},
        {"cycles", cfg.cycles},
        {"seed", cfg.seed},
        {"fidelity_threshold", cfg.fidelity_threshold},
        {"threads", cfg.threads},
    };
    j["successful_cycles"] = res.distribution.size();
    j["any_success"] = res.any_success;
    if (res.any_success) {
        j["best"] = {{"fidelity", res.best_metrics.fidelity},
                     {"success_probability", res.best_metrics.success_probability}};
    }
    j["wall_time_s"] = res.wall_time_s;

    if (!flags.out_dir.empty()) {
        fs::create_directories(flags.out_dir);
        std::ostringstream csv;
        csv << "cycle_rank,fidelity,success_probability\n";
        for (std::size_t k = 0; k < res.distribution.size(); ++k) {
            const CycleOutcome& o = res.distribution[k];
            csv << (k + 1) << "," << format_double(o.fidelity) << ","
                << format_double(o.success_probability) << "\n";
        }
        atomic_write(fs::path(flags.out_dir) / "distribution.csv", csv.str());
        j["distribution_csv"] = (fs::path(flags.out_dir) / "distribution.csv").string();
        if (res.any_success) {
            std::ostringstream label;
            label << "optimize_best_seed" << cfg.seed << "_cycles" << cfg.cycles;
            save_matrix_file(MatrixFile::wrap(res.best_matrix.matrix, label.str(),
                                              "two-stage search result"),
                             fs::path(flags.out_dir) / "best_matrix.json");
            j["best_matrix_file"] = (fs::path(flags.out_dir) / "best_matrix.json").string();
        }
    }

    std::ostringstream text;
    text << "optimize: " << res.distribution.size() << "/" << cfg.cycles
         << " cycles reached the fidelity threshold\n";
    if (res.any_success)
        text << "  best F " << format_double(res.best_metrics.fidelity) << ", best P "
             << format_double(res.best_metrics.success_probability) << "\n";
    text << "  wall time " << res.wall_time_s << " s\n";
    emit_report(j, flags, text.str());
    return res.any_success ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_compile(const CommonFlags& flags, const std::string& in_path,
                const std::string& netlist_path, double snap_tol) {
    const auto t0 = std::chrono::steady_clock::now();
    const MatrixFile in = load_matrix_file(in_path);
    ModeTransform m(in.matrix);

    const std::vector<double> sv_before = singular_values(m);
    bool rescaled = false;
    if (sv_before.front() > 1.0) {
        m = ModeTransform(m.matrix / sv_before.front());
        rescaled = true;
    }
    m = clean_singular_values(m, snap_tol);

    const ModeTransform u = dilate(m);
    const Netlist netlist = reck_decompose(u);
    const double roundtrip = (recompose(netlist).matrix - u.matrix).norm();
    const bool roundtrip_ok = roundtrip < 1e-10;

    save_netlist(netlist, netlist_path);

    json j = base_report("compile", flags);
    j["config"] = {{"in", in_path}, {"out", netlist_path}, {"sv_snap_tol", snap_tol}};
    j["input_modes"] = in.mode_count;
    j["singular_values_input"] = sv_before;
    j["rescaled_by_sigma_max"] = rescaled;
    j["unitary_modes"] = u.mode_count();
    j["vacuum_modes_added"] = u.mode_count() - in.mode_count;
    j["beamsplitters"] = netlist.beamsplitter_count();
    j["elements"] = netlist.elements.size();
    j["recompose_frobenius_error"] = roundtrip;
    j["wall_time_s"] = elapsed_s(t0);

    std::ostringstream text;
    text << "compile: " << in.mode_count << " -> " << u.mode_count() << " modes, "
         << netlist.beamsplitter_count() << " beamsplitters, round-trip error "
         << format_double(roundtrip) << "\n";
    emit_report(j, flags, text.str());
    return roundtrip_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

cplx parse_amplitude(const std::string& text) {
    std::istringstream is(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    is >> re;
    if (is >> comma && comma == ',') is >> im;
    return {re, im};
}

int cmd_qec(const CommonFlags& flags, const std::string& error_name, const std::string& alpha_s,
            const std::string& beta_s, bool all, bool sample) {
    const auto t0 = std::chrono::steady_clock::now();
    const cplx alpha = parse_amplitude(alpha_s);
    const cplx beta = parse_amplitude(beta_s);
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-9)
        throw CLI::ValidationError("--alpha/--beta", "|alpha|^2 + |beta|^2 must equal 1");

    auto error_of = [](const std::string& s) {
        if (s == "I") return qec::ErrorKind::none;
        if (s == "XA") return qec::ErrorKind::x_a;
        if (s == "XA1") return qec::ErrorKind::x_a1;
        if (s == "XAXA1") return qec::ErrorKind::x_a_x_a1;
        throw CLI::ValidationError("--error", "must be one of I, XA, XA1, XAXA1");
    };

    json j = base_report("qec", flags);
    j["config"] = {{"error", error_name}, {"alpha", {alpha.real(), alpha.imag()}},
                   {"beta", {beta.real(), beta.imag()}},  {"all", all},
                   {"sample", sample}};
    std::ostringstream text;
    bool ok = true;

    auto run_one = [&](qec::ErrorKind e, cplx a, cplx b) {
        const qec::RoundTrip rt = qec::qec_round_trip(a, b, e);
        json row = {{"error", qec::name(e)},
                    {"syndrome", qec::name(rt.syndrome)},
                    {"recovery", qec::name(rt.recovery)},
                    {"fidelity", rt.fidelity}};
        const auto table = qec::syndrome_table();
        const auto& expect = *std::find_if(table.begin(), table.end(),
                                           [&](const auto& r) { return r.error == e; });
        const bool row_ok = rt.syndrome == expect.syndrome && rt.recovery == expect.recovery &&
                            rt.fidelity > 1.0 - 1e-12;
        row["ok"] = row_ok;
        ok = ok && row_ok;
        j["rows"].push_back(row);
        text << "  " << qec::name(e) << ": syndrome " << qec::name(rt.syndrome) << ", recovery "
             << qec::name(rt.recovery) << ", fidelity " << format_double(rt.fidelity)
             << (row_ok ? "" : "  <-- MISMATCH") << "\n";
    };

    text << "qec round trip\n";
    if (all) {
        // The provided state plus a seeded sweep of random information states.
        std::mt19937_64 rng(flags.seed);
        std::normal_distribution<double> g(0.0, 1.0);
        std::vector<std::pair<cplx, cplx>> states = {{alpha, beta}};
        for (int k = 0; k < 20; ++k) {
            cplx a(g(rng), g(rng)), b(g(rng), g(rng));
            const double n = std::sqrt(std::norm(a) + std::norm(b));
            states.emplace_back(a / n, b / n);
        }
        for (const auto& e : {qec::ErrorKind::none, qec::ErrorKind::x_a, qec::ErrorKind::x_a1,
                              qec::ErrorKind::x_a_x_a1})
            for (const auto& [a, b] : states) run_one(e, a, b);
    } else if (sample) {
        std::mt19937_64 rng(flags.seed);
        const qec::HyperState sent =
            qec::apply_channel(qec::encode(alpha, beta), error_of(error_name));
        const qec::DecodeOutcome out = qec::decode_and_measure_sampled(sent, rng);
        j["sampled_syndrome"] = qec::name(out.syndrome);
        text << "  sampled syndrome: " << qec::name(out.syndrome) << "\n";
        run_one(error_of(error_name), alpha, beta);
    } else {
        run_one(error_of(error_name), alpha, beta);
    }

    j["all_ok"] = ok;
    j["wall_time_s"] = elapsed_s(t0);
    emit_report(j, flags, text.str());
    return ok ? 0 : 1;
}

int cmd_sdc(const CommonFlags& flags, const std::string& message, bool all) {
    const auto t0 = std::chrono::steady_clock::now();
    auto decode_message = [](int m) {
        const int out = qec::superdense_roundtrip(m);
        return std::pair<int, bool>(out, out == m);
    };
    auto to_bits = [](int m) { return std::string{char('0' + (m >> 1)), char('0' + (m & 1))}; };

    json j = base_report("sdc", flags);
    j["config"] = {{"message", message}, {"all", all}};
    bool ok = true;
    std::ostringstream text;
    text << "superdense coding round trip\n";

    std::vector<int> messages;
    if (all) {
        messages = {0, 1, 2, 3};
    } else {
        if (message.size() != 2 || (message[0] != '0' && message[0] != '1') ||
            (message[1] != '0' && message[1] != '1'))
            throw CLI::ValidationError("--message", "must be one of 00, 01, 10, 11");
        messages = {(message[0] - '0') * 2 + (message[1] - '0')};
    }
    for (int m : messages) {
        const auto [decoded, good] = decode_message(m);
        ok = ok && good;
        j["rows"].push_back({{"sent", to_bits(m)}, {"decoded", to_bits(decoded)}, {"ok", good}});
        text << "  " << to_bits(m) << " -> " << to_bits(decoded) << (good ? "" : "  <-- MISMATCH")
             << "\n";
    }
    j["all_ok"] = ok;
    j["wall_time_s"] = elapsed_s(t0);
    emit_report(j, flags, text.str());
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Postselected linear-optical gate simulation, optimization, and compilation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI file");

    CommonFlags va_flags, opt_flags, comp_flags, qec_flags, sdc_flags;

    auto* va = app.add_subcommand("verify-appendix",
                                  "Resolve and score the bundled 9-mode encoder");
    std::string va_matrix, va_emit;
    add_common(va, va_flags);
    va->add_option("--matrix", va_matrix, "Override the bundled matrix with a file");
    va->add_option("--emit-block", va_emit, "Write the active 6x6 block to this path");

    auto* opt = app.add_subcommand("optimize", "Two-stage search for encoder matrices");
    OptimizationConfig cfg;
    std::string space = "reduced";
    add_common(opt, opt_flags);
    opt->add_option("--cycles", cfg.cycles, "Independent optimization cycles")
        ->check(CLI::PositiveNumber);
    opt->add_option("--space", space, "Search space: reduced (6x6) or full (9x9)")
        ->check(CLI::IsMember({"reduced", "full"}));
    opt->add_option("--fidelity-threshold", cfg.fidelity_threshold,
                    "Stage-1 success / stage-2 constraint threshold");
    opt->add_option("--threads", cfg.threads, "Worker threads (0 = LOQC_THREADS or hardware)");
    opt->add_option("--stage1-max-iters", cfg.stage1_max_iters, "Stage-1 iteration cap");
    opt->add_option("--stage2-max-iters", cfg.stage2_max_iters, "Stage-2 iteration cap");

    auto* comp = app.add_subcommand("compile", "Dilate a matrix and factor it into a netlist");
    std::string comp_in, comp_out = "netlist.json";
    double snap_tol = 5e-3;
    add_common(comp, comp_flags);
    comp->add_option("--in", comp_in, "Input matrix file")->required();
    comp->add_option("--netlist", comp_out, "Output netlist path");
    comp->add_option("--sv-snap-tol", snap_tol,
                     "Treat singular values within this of 1 as exactly 1");

    auto* qc = app.add_subcommand("qec", "Error-correction round trip at the logical level");
    std::string qec_error = "I", qec_alpha = "0.6", qec_beta = "0.8";
    bool qec_all = false, qec_sample = false;
    add_common(qc, qec_flags);
    qc->add_option("--error", qec_error, "Channel error: I, XA, XA1, XAXA1");
    qc->add_option("--alpha", qec_alpha, "Information amplitude alpha (re[,im])");
    qc->add_option("--beta", qec_beta, "Information amplitude beta (re[,im])");
    qc->add_flag("--all", qec_all, "Sweep all errors and 20 random states");
    qc->add_flag("--sample", qec_sample, "Born-rule sampling of the analysis outcome");

    auto* sd = app.add_subcommand("sdc", "Superdense coding round trip");
    std::string sdc_message = "00";
    bool sdc_all = false;
    add_common(sd, sdc_flags);
    sd->add_option("--message", sdc_message, "Two classical bits: 00, 01, 10, 11");
    sd->add_flag("--all", sdc_all, "Round-trip all four messages");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (va->parsed()) return cmd_verify_appendix(va_flags, va_matrix, va_emit);
        if (opt->parsed()) {
            cfg.space = (space == "reduced") ? OptimizationConfig::Space::reduced6
                                             : OptimizationConfig::Space::full9;
            return cmd_optimize(opt_flags, cfg);
        }
        if (comp->parsed()) return cmd_compile(comp_flags, comp_in, comp_out, snap_tol);
        if (qc->parsed())
            return cmd_qec(qec_flags, qec_error, qec_alpha, qec_beta, qec_all, qec_sample);
        if (sd->parsed()) return cmd_sdc(sdc_flags, sdc_message, sdc_all);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
