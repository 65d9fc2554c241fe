#pragma once

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "noonqec/comms.hpp"
#include "noonqec/kl.hpp"
#include "noonqec/prep.hpp"

namespace noonqec::cli {

using ordered_json = nlohmann::ordered_json;

inline ordered_json code_to_json(const Code& code) {
    ordered_json j;
    j["label"] = code.label();
    j["d"] = code.dim();
    j["mode_count"] = code.mode_count();
    if (code.total_photons())
        j["total_photons"] = *code.total_photons();
    else
        j["total_photons"] = nullptr;
    if (auto b = code.block_structure())
        j["block_structure"] = {{"blocks", b->blocks}, {"modes_per_block", b->modes_per_block}};
    else
        j["block_structure"] = nullptr;
    ordered_json words = ordered_json::array();
    for (const auto& w : code.codewords()) {
        ordered_json terms = ordered_json::array();
        for (const auto& [s, a] : w.amplitudes()) {
            ordered_json term;
            term["n"] = s.occupations();
            term["re"] = a.real();
            term["im"] = a.imag();
            terms.push_back(std::move(term));
        }
        words.push_back(std::move(terms));
    }
    j["codewords"] = std::move(words);
    return j;
}

inline Code code_from_json(const ordered_json& j) {
    if (!j.contains("codewords") || !j["codewords"].is_array() || j["codewords"].empty())
        throw std::invalid_argument("code file: missing codewords");
    std::string label = j.value("label", std::string("custom"));
    std::vector<SparseState> words;
    for (const auto& terms : j["codewords"]) {
        std::optional<SparseState> w;
        for (const auto& term : terms) {
            std::vector<int> occ = term.at("n").get<std::vector<int>>();
            if (!w) w.emplace(static_cast<int>(occ.size()));
            w->add(FockState(std::move(occ)),
                   {term.at("re").get<double>(), term.at("im").get<double>()});
        }
        if (!w) throw std::invalid_argument("code file: empty codeword");
        words.push_back(std::move(*w));
    }
    std::optional<BlockStructure> blocks;
    if (j.contains("block_structure") && j["block_structure"].is_object())
        blocks = BlockStructure{j["block_structure"].at("blocks").get<int>(),
                                j["block_structure"].at("modes_per_block").get<int>()};
    return Code::make(std::move(label), std::move(words), blocks);
}

inline std::string code_to_text(const Code& code) {
    std::string out = "# code " + code.label() + " d=" + std::to_string(code.dim()) +
                      " modes=" + std::to_string(code.mode_count()) + " photons=";
    out += code.total_photons() ? std::to_string(*code.total_photons()) : std::string("-");
    out += '\n';
    for (int k = 0; k < code.dim(); ++k) {
        out += "# codeword " + std::to_string(k) + '\n';
        out += to_text(code.codeword(k));
    }
    return out;
}

inline ordered_json report_to_json(const KlReport& report) {
    ordered_json j;
    j["code_label"] = report.code_label;
    j["gamma"] = report.gamma;
    j["max_weight"] = report.max_weight;
    j["correctable_weight"] = report.max_correctable_weight;
    j["degenerate"] = report.degenerate;
    ordered_json violations = ordered_json::array();
    for (const auto& v : report.violations) {
        ordered_json item;
        item["pattern_i"] = v.pattern_i.losses;
        item["pattern_j"] = v.pattern_j.losses;
        item["kind"] = to_string(v.kind);
        item["magnitude"] = v.magnitude;
        violations.push_back(std::move(item));
    }
    j["violations"] = std::move(violations);
    return j;
}

struct CodeSelector {
    std::string label;
    int N = 2;
    int d = 2;
    std::string file;
};

inline Code resolve_code(const CodeSelector& sel) {
    if (!sel.file.empty()) {
        std::ifstream in(sel.file);
        if (!in) throw std::invalid_argument("cannot open code file: " + sel.file);
        ordered_json j = ordered_json::parse(in);
        return code_from_json(j);
    }
    if (sel.label == "noon") return noon_code(sel.N, sel.d);
    if (sel.label == "noon-alt") return noon_code_alternative(sel.N, sel.d);
    if (sel.label.empty()) throw std::invalid_argument("no code selected (--code or --code-file)");
    return reference_code(sel.label);
}

inline std::vector<double> linspace(double lo, double hi, int steps) {
    std::vector<double> grid;
    grid.reserve(steps);
    if (steps == 1) {
        grid.push_back(lo);
        return grid;
    }
    for (int i = 0; i < steps; ++i) grid.push_back(lo + (hi - lo) * i / (steps - 1));
    return grid;
}

// Full command surface. Exit status: 0 success, 1 the verified code fails
// the Knill-Laflamme check at the requested weight, 2 usage error. Output
// for a given flag set is byte-identical across runs.
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
    CLI::App app{"NOON-state photon-loss code construction and verification"};
    app.require_subcommand(1);

    CodeSelector sel;
    std::function<int()> action;

    auto add_code_flags = [&sel](CLI::App* cmd) {
        cmd->add_option("--code", sel.label,
                        "code label: noon | noon-alt | a reference-code label");
        cmd->add_option("--N", sel.N, "photons per block (noon/noon-alt)")->check(CLI::Range(1, 8));
        cmd->add_option("--d", sel.d, "logical dimension (noon/noon-alt)")->check(CLI::Range(2, 8));
        cmd->add_option("--code-file", sel.file, "JSON code file (dump-code --format json shape)");
    };

    // list-codes
    auto* list_cmd = app.add_subcommand("list-codes", "catalog of built-in reference codes");
    list_cmd->callback([&] {
        action = [&]() {
            out << "label d modes photons\n";
            for (const auto& label : reference_code_labels()) {
                Code code = reference_code(label);
                out << label << ' ' << code.dim() << ' ' << code.mode_count() << ' ';
                if (code.total_photons())
                    out << *code.total_photons();
                else
                    out << '-';
                out << '\n';
            }
            return 0;
        };
    });

    // verify
    double gamma = 0.9, tol = 1e-9;
    int max_loss = 1;
    auto* verify_cmd = app.add_subcommand("verify", "Knill-Laflamme check up to a loss weight");
    add_code_flags(verify_cmd);
    verify_cmd->add_option("--max-loss", max_loss, "largest loss weight to verify")
        ->check(CLI::Range(0, 16));
    verify_cmd->add_option("--gamma", gamma, "damping parameter")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    verify_cmd->add_option("--tol", tol, "violation tolerance (relative to no-loss norm)")
        ->capture_default_str();
    verify_cmd->callback([&] {
        action = [&]() {
            Code code = resolve_code(sel);
            KlReport report = kl_verify(code, max_loss, gamma, tol);
            out << report_to_json(report).dump(2) << '\n';
            return report.max_correctable_weight >= max_loss ? 0 : 1;
        };
    });

    // dump-code
    std::string format = "text";
    auto* dump_cmd = app.add_subcommand("dump-code", "print codeword amplitude tables");
    add_code_flags(dump_cmd);
    dump_cmd->add_option("--format", format, "text | json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    dump_cmd->callback([&] {
        action = [&]() {
            Code code = resolve_code(sel);
            if (format == "json")
                out << code_to_json(code).dump(2) << '\n';
            else
                out << code_to_text(code);
            return 0;
        };
    });

    // fidelity-sweep
    double gamma_min = 0.6, gamma_max = 1.0;
    int steps = 81;
    std::vector<int> Ns{2, 3, 4, 5};
    auto* fid_cmd = app.add_subcommand("fidelity-sweep", "worst-case fidelity vs gamma (CSV)");
    fid_cmd->add_option("--gamma-min", gamma_min)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    fid_cmd->add_option("--gamma-max", gamma_max)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    fid_cmd->add_option("--steps", steps)->check(CLI::Range(1, 100000))->capture_default_str();
    fid_cmd->add_option("--N", Ns, "photons per block, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    fid_cmd->callback([&] {
        action = [&]() {
            out << to_csv(fidelity_sweep(linspace(gamma_min, gamma_max, steps), Ns));
            return 0;
        };
    });

    // comm-sweep
    double L = 1000.0, L_att = 22.0, L0_min = 0.1, L0_max = 10.0;
    int L0_steps = 100;
    std::vector<int> comm_Ns{2, 3, 4, 10};
    auto* comm_cmd =
        app.add_subcommand("comm-sweep", "one-way scheme success probability vs L0 (CSV)");
    comm_cmd->add_option("--L", L, "total distance, km")->capture_default_str();
    comm_cmd->add_option("--L-att", L_att, "attenuation length, km")->capture_default_str();
    comm_cmd->add_option("--L0-min", L0_min)->capture_default_str();
    comm_cmd->add_option("--L0-max", L0_max)->capture_default_str();
    comm_cmd->add_option("--steps", L0_steps)->check(CLI::Range(1, 100000))->capture_default_str();
    comm_cmd->add_option("--N", comm_Ns, "photons per block, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    comm_cmd->callback([&] {
        action = [&]() {
            out << to_csv(psucc_sweep(linspace(L0_min, L0_max, L0_steps), comm_Ns, L, L_att));
            return 0;
        };
    });

    // cost-table
    double cL = 1000.0, cL_att = 22.0, cL0_min = 0.05, cL0_max = 2.0;
    int cL0_steps = 40;
    std::vector<int> cost_Ns{1, 3, 4, 5};
    std::vector<int> cost_ds{2, 3, 4};
    auto* cost_cmd = app.add_subcommand("cost-table", "spatial cost function sweep (CSV)");
    cost_cmd->add_option("--L", cL, "total distance, km")->capture_default_str();
    cost_cmd->add_option("--L-att", cL_att, "attenuation length, km")->capture_default_str();
    cost_cmd->add_option("--L0-min", cL0_min)->capture_default_str();
    cost_cmd->add_option("--L0-max", cL0_max)->capture_default_str();
    cost_cmd->add_option("--steps", cL0_steps)->check(CLI::Range(1, 100000))->capture_default_str();
    cost_cmd->add_option("--N", cost_Ns, "photons per block, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    cost_cmd->add_option("--d", cost_ds, "logical dimensions, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    cost_cmd->callback([&] {
        action = [&]() {
            out << to_csv(
                cost_sweep(linspace(cL0_min, cL0_max, cL0_steps), cost_Ns, cost_ds, cL, cL_att));
            return 0;
        };
    });

    // prep-sim
    double t = 0.5;
    auto* prep_cmd =
        app.add_subcommand("prep-sim", "heralded logical-qubit preparation for the (2,2) code");
    prep_cmd->add_option("--t", t, "beam splitter transmittance")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    prep_cmd->callback([&] {
        action = [&]() {
            PrepResult result = prep_logical_qubit(t);
            Code alt = noon_code_alternative(2, 2);
            SparseState target = combine(
                {{result.c0, alt.codeword(0)}, {result.c1, alt.codeword(1)}});
            double fid = std::norm(inner_product(target, result.output_state));
            ordered_json j;
            j["t"] = t;
            j["c0"] = result.c0.real();
            j["c1"] = result.c1.real();
            j["success_probability"] = result.success_probability;
            j["fidelity_to_target"] = fid;
            out << j.dump(2) << '\n';
            return 0;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace noonqec::cli
