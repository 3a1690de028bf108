// Copyright 2026 The qi-lab Authors
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

// qi_lab: single-point reports, region scans, boundary searches and
// self-validation for Gaussian quantum illumination receivers.
//
// Exit codes: 0 ok, 1 validation failure, 2 usage or input error.

#include <CLI11.hpp>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <limits>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "qi/detection.h"
#include "qi/fock.h"
#include "qi/receivers.h"
#include "qi/scan.h"
#include "qi/validate.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flags shared by every subcommand that describes a scenario.
struct ScenarioFlags {
    std::optional<double> kappa, n_s, n_b, k_modes, gain, pc_mu, pc_nu;
    std::string receivers;
    std::string spec_path;
    std::string out_path;
    std::string format;

    void add_to(CLI::App *cmd, bool with_point) {
        if (with_point) {
            cmd->add_option("--kappa", kappa, "target reflectivity");
            cmd->add_option("--ns", n_s, "mean signal photons per mode");
        }
        cmd->add_option("--nb", n_b, "mean background photons per mode");
        cmd->add_option("--k", k_modes, "number of mode pairs K");
        cmd->add_option("--receivers", receivers, "comma-separated subset of dhd,opa,pc,ci");
        cmd->add_option("--gain", gain, "OPA gain G");
        cmd->add_option("--pc-mu", pc_mu, "phase-conjugate mu");
        cmd->add_option("--pc-nu", pc_nu, "phase-conjugate nu");
        cmd->add_option("--out", out_path, "output file (default stdout)");
    }

    // Spec file first, then flags on top.
    qi::SweepSpec sweep_spec(const std::vector<std::string> &settings) const {
        qi::SweepSpec spec;
        if (!spec_path.empty()) {
            spec = qi::load_sweep_spec(spec_path);
        }
        std::vector<std::string> problems;
        const auto set = [&](std::string_view key, const std::string &value) {
            if (auto err = qi::apply_setting(spec, key, value)) {
                problems.push_back(*err);
            }
        };
        const auto num = [](double v) { return fmt::format("{:.17g}", v); };
        if (n_b) set("nb", num(*n_b));
        if (k_modes) set("k", num(*k_modes));
        if (gain) set("gain", num(*gain));
        if (pc_mu) set("pc_mu", num(*pc_mu));
        if (pc_nu) set("pc_nu", num(*pc_nu));
        if (!receivers.empty()) set("receivers", receivers);
        for (const auto &kv : settings) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                problems.push_back(fmt::format("--set {}: expected key=value", kv));
                continue;
            }
            set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        for (auto &p : spec.problems()) {
            problems.push_back(std::move(p));
        }
        if (!problems.empty()) {
            throw qi::SpecError(std::move(problems));
        }
        return spec;
    }
};

class Output {
   public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw UsageError(fmt::format("cannot write '{}'", path));
            }
        }
    }
    std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }

   private:
    std::ofstream file_;
};

nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json receiver_report(qi::Receiver r, const qi::QiScenario &s, const qi::SweepSpec &spec) {
    nlohmann::json j;
    j["receiver"] = qi::receiver_name(r);
    if (r == qi::Receiver::kCi) {
        const auto c = qi::ci_chernoff(s.n_s, s.n_b, s.kappa, s.k_modes, spec.ci_convention);
        j["Q"] = c.q_value;
        j["s_star"] = c.s_star;
        j["exponent"] = c.exponent;
        j["P_E_log"] = std::log(0.5) - c.exponent;
        j["P_E"] = 0.5 * std::exp(-c.exponent);
        j["SNR"] = c.snr;
        j["SNR_dB"] = number_or_null(qi::snr_db(c.snr));
        j["dim"] = c.dim;
        j["trace_deficit"] = c.trace_deficit;
        return j;
    }
    const auto absent = qi::engine_moments(r, s, qi::Hypothesis::kAbsent);
    const auto present = qi::engine_moments(r, s, qi::Hypothesis::kPresent);
    const auto stats = qi::DetectionStats::from_moments(absent, present, s.k_modes);
    j["R0"] = absent.mean;
    j["R1"] = present.mean;
    j["dR0"] = absent.variance;
    j["dR1"] = present.variance;
    const double value = qi::snr(stats);
    j["SNR"] = value;
    j["SNR_dB"] = number_or_null(qi::snr_db(value));
    if (stats.dr0 + stats.dr1 > 0) {
        const double thr = qi::optimal_threshold(stats);
        const auto e = qi::error_probabilities(stats);
        j["R_Th"] = thr;
        j["P_1_given_0"] = e.false_alarm;
        j["P_0_given_1"] = e.miss;
        j["P_E"] = e.total;
        j["P_E_log"] = e.log_total;
    }
    try {
        j["SNR_formula"] = qi::closed_form_snr(r, s);
    } catch (const std::domain_error &) {
        j["SNR_formula"] = nullptr;
    }
    return j;
}

int cmd_snr(const ScenarioFlags &flags, const std::vector<std::string> &settings) {
    auto spec = flags.sweep_spec(settings);
    if (flags.receivers.empty()) {
        spec.receivers = {qi::kAllReceivers.begin(), qi::kAllReceivers.end()};
    }
    auto s = spec.scenario(flags.kappa.value_or(0.01), flags.n_s.value_or(0.01));
    s.validate();
    Output out(flags.out_path);
    auto reports = nlohmann::json::array();
    for (auto r : spec.receivers) {
        reports.push_back(receiver_report(r, s, spec));
    }
    if (flags.format == "csv") {
        out.stream() << "receiver,R0,R1,dR0,dR1,R_Th,P_1_given_0,P_0_given_1,P_E_log,SNR,SNR_dB\n";
        for (const auto &j : reports) {
            std::string row = j["receiver"].get<std::string>();
            for (const char *key : {"R0", "R1", "dR0", "dR1", "R_Th", "P_1_given_0", "P_0_given_1", "P_E_log", "SNR", "SNR_dB"}) {
                row += ",";
                if (j.contains(key) && j[key].is_number()) {
                    row += fmt::format("{:.17g}", j[key].get<double>());
                }
            }
            out.stream() << row << '\n';
        }
    } else if (flags.format.empty() || flags.format == "json") {
        nlohmann::json doc = {{"scenario",
                               {{"kappa", s.kappa},
                                {"n_s", s.n_s},
                                {"n_b", s.n_b},
                                {"k", s.k_modes},
                                {"gain", s.opa_gain},
                                {"pc_mu", s.pc_mu},
                                {"pc_nu", s.pc_nu}}},
                              {"receivers", reports}};
        out.stream() << doc.dump(2) << '\n';
    } else {
        throw UsageError("snr supports --format csv|json");
    }
    return kExitOk;
}

int cmd_scan(const ScenarioFlags &flags, const std::vector<std::string> &settings) {
    const auto spec = flags.sweep_spec(settings);
    const auto cells = qi::run_scan(spec);
    Output out(flags.out_path);
    if (flags.format.empty() || flags.format == "csv") {
        qi::write_csv(out.stream(), cells);
    } else if (flags.format == "json") {
        qi::write_json(out.stream(), cells);
    } else if (flags.format == "svg") {
        qi::write_svg(out.stream(), spec, cells);
    } else {
        throw UsageError("scan supports --format csv|json|svg");
    }
    return kExitOk;
}

struct BoundaryFlags {
    std::string a = "dhd";
    std::string b = "pc";
    std::string vary = "kappa";
    double lo = 1e-4;
    double hi = 1e-1;
    std::string scale = "log";
    std::size_t points = 200;
};

int cmd_boundary(const ScenarioFlags &flags, const BoundaryFlags &bf, const std::vector<std::string> &settings) {
    auto spec = flags.sweep_spec(settings);
    qi::BoundaryQuery q;
    const auto a = qi::parse_receiver(bf.a);
    const auto b = qi::parse_receiver_list(bf.b);
    if (!a || !b) {
        throw UsageError("--a and --b take receiver names (dhd, opa, pc, ci)");
    }
    q.a = *a;
    q.b = *b;
    if (bf.vary == "kappa") {
        q.variable = qi::ScanVariable::kKappa;
        q.fixed = flags.n_s.value_or(0.01);
    } else if (bf.vary == "ns") {
        q.variable = qi::ScanVariable::kNs;
        q.fixed = flags.kappa.value_or(0.01);
    } else {
        throw UsageError("--vary must be kappa or ns");
    }
    q.lo = bf.lo;
    q.hi = bf.hi;
    q.scale = bf.scale == "linear" ? qi::AxisScale::kLinear : qi::AxisScale::kLog;
    q.prescan_points = bf.points;
    spec.scenario(q.variable == qi::ScanVariable::kKappa ? q.lo : q.fixed,
                  q.variable == qi::ScanVariable::kKappa ? q.fixed : q.lo)
        .validate();
    const qi::SnrEvaluator evaluator(spec);
    const auto crossings = qi::find_boundaries(evaluator, q);

    Output out(flags.out_path);
    if (flags.format == "csv") {
        out.stream() << "value,a_gains\n";
        for (const auto &c : crossings) {
            out.stream() << fmt::format("{:.17g},{}\n", c.value, c.a_gains ? 1 : 0);
        }
        return kExitOk;
    }
    if (!flags.format.empty() && flags.format != "json") {
        throw UsageError("boundary supports --format csv|json");
    }
    auto list = nlohmann::json::array();
    for (const auto &c : crossings) {
        list.push_back({{"value", c.value}, {"a_gains", c.a_gains}});
    }
    std::string bs;
    for (auto r : q.b) {
        bs += (bs.empty() ? "" : ",") + std::string(qi::receiver_name(r));
    }
    nlohmann::json doc = {{"a", qi::receiver_name(q.a)},
                          {"b", bs},
                          {"vary", bf.vary},
                          {"fixed", q.fixed},
                          {"lo", q.lo},
                          {"hi", q.hi},
                          {"crossings", list}};
    if (crossings.empty()) {
        doc["result"] = "no boundary in range";
    }
    out.stream() << doc.dump(2) << '\n';
    return kExitOk;
}

int cmd_validate(const std::vector<std::string> &suites, const std::string &receivers, double perturbation,
                 const std::string &out_path) {
    qi::ValidationOptions options;
    options.suites = suites;
    options.formula_perturbation = perturbation;
    if (!receivers.empty()) {
        const auto list = qi::parse_receiver_list(receivers);
        if (!list) {
            throw UsageError("--receivers takes a comma-separated subset of dhd,opa,pc,ci");
        }
        options.receivers = *list;
    }
    const auto report = qi::run_validation(options);
    for (const auto &s : report.suites) {
        for (const auto &c : s.cases) {
            if (!c.passed) {
                std::cerr << fmt::format("FAIL {}: {}: expected {:.17g}, got {:.17g}, tolerance {:g}\n", s.name, c.name,
                                         c.expected, c.actual, c.tolerance);
            }
        }
    }
    Output out(out_path);
    out.stream() << report.to_json().dump(2) << '\n';
    return report.passed() ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Gaussian quantum illumination receiver lab"};
    app.require_subcommand(1);

    ScenarioFlags snr_flags, scan_flags, boundary_flags;
    std::vector<std::string> snr_set, scan_set, boundary_set;
    BoundaryFlags bf;
    std::vector<std::string> suites;
    std::string validate_receivers;
    std::string validate_out;
    double perturbation = 0;

    auto *snr_cmd = app.add_subcommand("snr", "report moments, threshold, error probabilities and SNR at one point");
    snr_flags.add_to(snr_cmd, true);
    snr_cmd->add_option("--spec", snr_flags.spec_path, "sweep spec supplying fixed parameters");
    snr_cmd->add_option("--format", snr_flags.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    snr_cmd->add_option("--set", snr_set, "extra key=value spec setting");

    auto *scan_cmd = app.add_subcommand("scan", "best receiver over a kappa x N_S grid");
    scan_flags.add_to(scan_cmd, false);
    scan_cmd->add_option("--spec", scan_flags.spec_path, "sweep spec file");
    scan_cmd->add_option("--format", scan_flags.format, "csv|json|svg")->check(CLI::IsMember({"csv", "json", "svg"}));
    scan_cmd->add_option("--set", scan_set, "extra key=value spec setting");

    auto *boundary_cmd = app.add_subcommand("boundary", "where two receivers give the same SNR");
    boundary_flags.add_to(boundary_cmd, true);
    boundary_cmd->add_option("--spec", boundary_flags.spec_path, "sweep spec supplying fixed parameters");
    boundary_cmd->add_option("--format", boundary_flags.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    boundary_cmd->add_option("--set", boundary_set, "extra key=value spec setting");
    boundary_cmd->add_option("--a", bf.a, "receiver a");
    boundary_cmd->add_option("--b", bf.b, "receiver b, or a list compared by its best member");
    boundary_cmd->add_option("--vary", bf.vary, "kappa|ns")->check(CLI::IsMember({"kappa", "ns"}));
    boundary_cmd->add_option("--lo", bf.lo, "lower end of the search interval");
    boundary_cmd->add_option("--hi", bf.hi, "upper end of the search interval");
    boundary_cmd->add_option("--scale", bf.scale, "log|linear")->check(CLI::IsMember({"log", "linear"}));
    boundary_cmd->add_option("--points", bf.points, "prescan points")->check(CLI::Range(2, 100000));

    auto *validate_cmd = app.add_subcommand("validate", "run the self-consistency suites");
    validate_cmd->add_option("--suite", suites, "formula|oracle|erfc|channel (repeatable)")
        ->check(CLI::IsMember(qi::kValidationSuites));
    validate_cmd->add_option("--receivers", validate_receivers, "receivers for formula/oracle suites");
    validate_cmd->add_option("--perturb", perturbation, "relative perturbation of the closed forms (test hook)");
    validate_cmd->add_option("--out", validate_out, "JSON summary file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (snr_cmd->parsed()) return cmd_snr(snr_flags, snr_set);
        if (scan_cmd->parsed()) return cmd_scan(scan_flags, scan_set);
        if (boundary_cmd->parsed()) return cmd_boundary(boundary_flags, bf, boundary_set);
        if (validate_cmd->parsed()) return cmd_validate(suites, validate_receivers, perturbation, validate_out);
    } catch (const qi::SpecError &e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}
