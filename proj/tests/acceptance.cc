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

// Acceptance checks. Prints one PASS/FAIL line per criterion; `--criterion N`
// runs a single one. Exit status is nonzero when any selected criterion fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qi/detection.h"
#include "qi/fock.h"
#include "qi/receivers.h"
#include "qi/scan.h"

#ifndef QI_RECIPES_DIR
#define QI_RECIPES_DIR "recipes"
#endif

namespace {

using namespace qi;

struct Outcome {
    bool pass = false;
    std::string detail;
    std::vector<std::string> info;
};

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

bool in_range(double v, double lo, double hi) {
    return v >= lo && v <= hi;
}

Outcome criterion1() {
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<QiScenario> grid;
    for (int i = 0; i < 1000; i++) {
        QiScenario s;
        s.kappa = std::pow(10, -5 + 5 * u(rng));
        s.n_s = std::pow(10, -4 + 4 * u(rng));
        s.n_b = std::pow(10, -1 + 3 * u(rng));
        s.k_modes = 1e7;
        grid.push_back(s);
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome out{true, "", {}};
    for (auto r : kQuantumReceivers) {
        double worst = 0;
        for (const auto &s : grid) {
            worst = std::max(worst, rel_err(snr(engine_stats(r, s)), closed_form_snr(r, s)));
        }
        const bool ok = worst <= 1e-9;
        out.pass = out.pass && ok;
        out.detail += fmt::format("{}{} max rel {:.2e}{}", out.detail.empty() ? "" : "; ", receiver_name(r), worst,
                                  ok ? "" : " (>1e-9)");
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.pass = out.pass && secs < 5;
    out.detail += fmt::format("; {:.2f}s (<5s)", secs);
    return out;
}

Outcome criterion2() {
    QiScenario s;
    s.kappa = 0.3;
    s.n_s = 0.1;
    s.n_b = 0.5;
    const auto start = std::chrono::steady_clock::now();
    double worst = 0;
    for (auto r : kQuantumReceivers) {
        const auto op = receiver_operator(r, s);
        for (auto h : {Hypothesis::kAbsent, Hypothesis::kPresent}) {
            const auto engine = moments(op, receiver_state(r, s, h));
            const auto fock = fock_oracle_moments(op, s, h, 25);
            // A zero mean (PC under H0) is compared absolutely.
            worst = std::max(worst, std::abs(fock.mean - engine.mean) / std::max(std::abs(engine.mean), 1.0));
            worst = std::max(worst, rel_err(fock.variance, engine.variance));
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst <= 1e-6 && secs < 60,
            fmt::format("6 (receiver, hypothesis) pairs, max rel {:.2e} (<=1e-6), {:.2f}s (<60s)", worst, secs),
            {}};
}

Outcome criterion3() {
    QiScenario s;  // kappa = 0.01, N_S = 0.01, N_B = 30, K = 1e7
    const double v = closed_form_snr(Receiver::kDhd, s);
    const double engine = snr(engine_stats(Receiver::kDhd, s));
    return {in_range(v, 96, 144) && in_range(engine, 96, 144),
            fmt::format("dHD SNR {:.4f} (engine {:.4f}), {:.2f} dB; band [96, 144]", v, engine, snr_db(v)),
            {}};
}

std::vector<BoundaryCrossing> crossings(double n_b, double n_s, Receiver a, std::vector<Receiver> b, double lo,
                                        double hi) {
    SweepSpec spec;
    spec.n_b = n_b;
    const SnrEvaluator ev(spec);
    BoundaryQuery q;
    q.a = a;
    q.b = std::move(b);
    q.fixed = n_s;
    q.lo = lo;
    q.hi = hi;
    return find_boundaries(ev, q);
}

Outcome criterion4() {
    const auto start = std::chrono::steady_clock::now();
    const auto c30 = crossings(30, 0.01, Receiver::kDhd, {Receiver::kPc}, 1e-5, 0.1);
    const auto c100 = crossings(100, 0.01, Receiver::kDhd, {Receiver::kPc}, 1e-5, 0.1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok30 = c30.size() == 1 && in_range(c30[0].value, 0.0007, 0.0011);
    const bool ok100 = c100.size() == 1 && in_range(c100[0].value, 0.0002, 0.0004);
    const auto show = [](const std::vector<BoundaryCrossing> &c) {
        return c.size() == 1 ? fmt::format("{:.6g}", c[0].value) : fmt::format("{} crossings", c.size());
    };
    return {ok30 && ok100 && secs < 10,
            fmt::format("N_B=30 kappa*={} in [0.0007, 0.0011]: {}; N_B=100 kappa*={} in [0.0002, 0.0004]: {}; "
                        "{:.2f}s (<10s)",
                        show(c30), ok30 ? "yes" : "no", show(c100), ok100 ? "yes" : "no", secs),
            {}};
}

// Upper edge of the interval where `a` is best: last crossing where a loses.
std::optional<double> window_upper_edge(const std::vector<BoundaryCrossing> &c) {
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        if (!it->a_gains) {
            return it->value;
        }
    }
    return std::nullopt;
}

Outcome criterion5() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<Receiver> qi_set = {Receiver::kDhd, Receiver::kOpa, Receiver::kPc};
    const auto ci = crossings(30, 0.01, Receiver::kCi, qi_set, 1e-4, 1.0);
    std::optional<double> overtake;
    for (const auto &c : ci) {
        if (c.a_gains) {
            overtake = c.value;
        }
    }
    const bool ok_a = ci.size() == 1 && overtake && in_range(*overtake, 0.10, 0.15);

    const std::vector<Receiver> others = {Receiver::kOpa, Receiver::kPc, Receiver::kCi};
    const auto edge = window_upper_edge(crossings(30, 0.0001, Receiver::kDhd, others, 1e-5, 1.0));
    const bool ok_b = edge && in_range(*edge, 0.017, 0.027);
    const auto edge_1e3 = window_upper_edge(crossings(30, 0.001, Receiver::kDhd, others, 1e-5, 1.0));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Outcome out;
    out.pass = ok_a && ok_b && secs < 300;
    out.detail = fmt::format(
        "(a) N_S=0.01 CI overtakes at kappa*={} in [0.10, 0.15]: {}; (b) N_S=0.0001 dHD window edge={} in "
        "[0.017, 0.027]: {}; {:.1f}s (<300s)",
        overtake ? fmt::format("{:.6g}", *overtake) : "none", ok_a ? "yes" : "no",
        edge ? fmt::format("{:.6g}", *edge) : "none", ok_b ? "yes" : "no", secs);
    out.info.push_back(fmt::format("N_S=0.001 dHD window edge = {}",
                                   edge_1e3 ? fmt::format("{:.6g}", *edge_1e3) : "none"));
    return out;
}

Outcome criterion6() {
    double worst = 0;
    for (double kappa : {0.5, 0.2}) {
        for (double n_s : {0.1, 1.0}) {
            const auto r = ci_chernoff(n_s, 0, kappa, 1, CiConvention::kExponent);
            worst = std::max(worst, rel_err(-std::log(r.q_value), kappa * n_s));
        }
    }
    return {worst <= 1e-6, fmt::format("N_B=0, 4 points, max rel |-ln Q - kappa N_S| {:.2e} (<=1e-6)", worst), {}};
}

Outcome criterion7() {
    double worst_balance = 0;
    double worst_pe = 0;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<QiScenario> points = {QiScenario{}};
    for (int i = 0; i < 200; i++) {
        QiScenario s;
        s.kappa = std::pow(10, -4 + 3 * u(rng));
        s.n_s = std::pow(10, -3 + 2 * u(rng));
        s.n_b = std::pow(10, 2 * u(rng));
        s.k_modes = std::pow(10, 3 + 4 * u(rng));
        points.push_back(s);
    }
    for (const auto &s : points) {
        for (auto r : kQuantumReceivers) {
            const auto st = engine_stats(r, s);
            if (snr(st) == 0) {
                continue;
            }
            const auto e = error_probabilities(st);
            worst_balance = std::max(worst_balance, rel_err(e.false_alarm, e.miss));
            worst_pe = std::max(worst_pe, rel_err(e.total, 0.5 * std::erfc(std::sqrt(snr(st)))));
        }
    }
    const double exact = 0.5 * std::erfc(10.0);
    const double approx_gap = rel_err(approx_error_from_snr(100), exact);
    const bool ok = worst_balance <= 1e-9 && worst_pe <= 1e-12 && approx_gap <= 0.01;
    return {ok,
            fmt::format("max rel |P(1|0)-P(0|1)| {:.2e} (<=1e-9); max rel |P_E - erfc form| {:.2e} (<=1e-12); "
                        "asymptotic form at SNR=100 off by {:.3f}% (<=1%)",
                        worst_balance, worst_pe, 100 * approx_gap),
            {}};
}

struct RegionSummary {
    std::set<Receiver> labels;
    std::size_t regions = 0;
    std::size_t dhd_cells = 0;
};

RegionSummary summarize(const SweepSpec &spec) {
    const auto cells = run_scan(spec);
    RegionSummary s;
    std::vector<int> labels(cells.size());
    for (std::size_t ix = 0; ix < spec.kappa.points; ix++) {
        for (std::size_t iy = 0; iy < spec.n_s.points; iy++) {
            const auto &c = cells[ix * spec.n_s.points + iy];
            labels[ix + spec.kappa.points * iy] = static_cast<int>(c.best);
            s.labels.insert(c.best);
            s.dhd_cells += c.best == Receiver::kDhd ? 1 : 0;
        }
    }
    s.regions = region_polygons(labels, spec.kappa.points, spec.n_s.points).size();
    return s;
}

std::string label_list(const std::set<Receiver> &labels) {
    std::string out;
    for (auto r : labels) {
        out += (out.empty() ? "" : ",") + std::string(receiver_name(r));
    }
    return "{" + out + "}";
}

Outcome criterion8() {
    const auto a = summarize(load_sweep_spec(std::string(QI_RECIPES_DIR) + "/fig3a.spec"));
    const auto b = summarize(load_sweep_spec(std::string(QI_RECIPES_DIR) + "/fig3b.spec"));
    const std::set<Receiver> expected = {Receiver::kDhd, Receiver::kOpa, Receiver::kPc};
    const bool three = a.labels == expected && a.regions == 3;
    const bool grows = b.dhd_cells > a.dhd_cells;
    return {three && grows,
            fmt::format("(a) best-receiver labels {} in {} region(s), need {{dhd,opa,pc}} in 3: {}; dHD cells {} -> {} "
                        "(N_B 30 -> 100) grows: {}",
                        label_list(a.labels), a.regions, three ? "yes" : "no", a.dhd_cells, b.dhd_cells,
                        grows ? "yes" : "no"),
            {}};
}

Outcome criterion9() {
    auto spec = load_sweep_spec(std::string(QI_RECIPES_DIR) + "/fig3a.spec");
    std::ostringstream a, b;
    write_csv(a, run_scan(spec, 1));
    write_csv(b, run_scan(spec, 4));
    auto ci_spec = spec;
    ci_spec.receivers = {Receiver::kDhd, Receiver::kPc, Receiver::kCi};
    ci_spec.kappa.points = 6;
    ci_spec.n_s.points = 4;
    std::ostringstream c, d;
    write_csv(c, run_scan(ci_spec, 1));
    write_csv(d, run_scan(ci_spec, 3));
    const bool same = a.str() == b.str() && c.str() == d.str();
    return {same,
            fmt::format("fig3a grid ({} bytes) and a CI grid ({} bytes) byte-identical across thread counts: {}",
                        a.str().size(), c.str().size(), same ? "yes" : "no"),
            {}};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria = {
    {"formula/engine equivalence", criterion1},
    {"Fock-oracle equivalence", criterion2},
    {"dHD SNR anchor", criterion3},
    {"PC/dHD crossover", criterion4},
    {"CI boundary and dHD window", criterion5},
    {"Chernoff pure-state limit", criterion6},
    {"decision-theory identities", criterion7},
    {"region-map reproduction", criterion8},
    {"scan determinism", criterion9},
};

}  // namespace

int main(int argc, char **argv) {
    std::vector<std::size_t> selected;
    for (int i = 1; i < argc; i++) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            const int n = std::atoi(argv[++i]);
            if (n < 1 || n > static_cast<int>(kCriteria.size())) {
                std::cerr << "criterion must be 1.." << kCriteria.size() << '\n';
                return 2;
            }
            selected.push_back(static_cast<std::size_t>(n));
        } else {
            std::cerr << "usage: acceptance [--criterion N]...\n";
            return 2;
        }
    }
    if (selected.empty()) {
        for (std::size_t n = 1; n <= kCriteria.size(); n++) {
            selected.push_back(n);
        }
    }
    int failures = 0;
    for (auto n : selected) {
        const auto &[name, run] = kCriteria[n - 1];
        Outcome o;
        try {
            o = run();
        } catch (const std::exception &e) {
            o = {false, fmt::format("exception: {}", e.what()), {}};
        }
        std::cout << fmt::format("[{}] {}. {}: {}\n", o.pass ? "PASS" : "FAIL", n, name, o.detail);
        for (const auto &line : o.info) {
            std::cout << "       info: " << line << '\n';
        }
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
