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

#include "qi/scan.h"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

namespace qi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view text) {
    double v = 0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::optional<std::size_t> parse_count(std::string_view text) {
    std::size_t v = 0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return v;
}

std::optional<AxisScale> parse_scale(std::string_view text) {
    if (text == "linear") {
        return AxisScale::kLinear;
    }
    if (text == "log") {
        return AxisScale::kLog;
    }
    return std::nullopt;
}

void check_axis(const Axis &axis, std::string_view name, double lower, std::optional<double> upper,
                std::vector<std::string> &out) {
    if (axis.points < 2) {
        out.push_back(fmt::format("{}_points: must be >= 2 (got {})", name, axis.points));
    }
    if (!(axis.min < axis.max)) {
        out.push_back(fmt::format("{}_min/{}_max: need min < max (got {} >= {})", name, name, axis.min, axis.max));
    }
    if (axis.scale == AxisScale::kLog && !(axis.min > 0)) {
        out.push_back(fmt::format("{}_min: log axis requires min > 0 (got {})", name, axis.min));
    }
    if (axis.min < lower) {
        out.push_back(fmt::format("{}_min: must be >= {} (got {})", name, lower, axis.min));
    }
    if (upper && axis.max > *upper) {
        out.push_back(fmt::format("{}_max: must be <= {} (got {})", name, *upper, axis.max));
    }
}

}  // namespace

std::vector<double> Axis::values() const {
    std::vector<double> v(points);
    for (std::size_t i = 0; i < points; i++) {
        const double f = points > 1 ? static_cast<double>(i) / static_cast<double>(points - 1) : 0.0;
        if (scale == AxisScale::kLog) {
            v[i] = std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
        } else {
            v[i] = min + f * (max - min);
        }
    }
    if (points > 1) {
        v.front() = min;
        v.back() = max;
    }
    return v;
}

std::vector<std::string> SweepSpec::problems() const {
    std::vector<std::string> out;
    check_axis(kappa, "kappa", 0, 1.0, out);
    check_axis(n_s, "ns", 0, std::nullopt, out);
    if (!(n_b >= 0)) {
        out.push_back(fmt::format("nb: must be >= 0 (got {})", n_b));
    }
    if (!(k_modes >= 1)) {
        out.push_back(fmt::format("k: must be >= 1 (got {})", k_modes));
    }
    if (!(opa_gain > 1)) {
        out.push_back(fmt::format("gain: must be > 1 (got {})", opa_gain));
    }
    if (!(std::abs(pc_mu * pc_mu - pc_nu * pc_nu - 1) <= 1e-12)) {
        out.push_back(fmt::format("pc_mu/pc_nu: need mu^2 - nu^2 = 1 (got {}, {})", pc_mu, pc_nu));
    } else if (snr_source == SnrSource::kClosedForm &&
               std::find(receivers.begin(), receivers.end(), Receiver::kPc) != receivers.end() &&
               (std::abs(pc_mu - std::sqrt(2.0)) > 1e-12 || std::abs(pc_nu - 1) > 1e-12)) {
        out.push_back("pc_mu/pc_nu: the closed-form PC SNR needs mu = sqrt(2), nu = 1; use snr_source = engine");
    }
    if (receivers.empty()) {
        out.push_back("receivers: at least one receiver is required");
    }
    return out;
}

QiScenario SweepSpec::scenario(double kappa_value, double n_s_value) const {
    QiScenario s;
    s.kappa = kappa_value;
    s.n_s = n_s_value;
    s.n_b = n_b;
    s.k_modes = k_modes;
    s.opa_gain = opa_gain;
    s.pc_mu = pc_mu;
    s.pc_nu = pc_nu;
    return s;
}

SpecError::SpecError(std::vector<std::string> problems)
    : std::runtime_error([&] {
          std::string msg = "invalid sweep spec:";
          for (const auto &p : problems) {
              msg += "\n  " + p;
          }
          return msg;
      }()),
      problems_(std::move(problems)) {}

std::optional<std::vector<Receiver>> parse_receiver_list(std::string_view text) {
    std::vector<Receiver> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        const auto r = parse_receiver(item);
        if (!r) {
            return std::nullopt;
        }
        if (std::find(out.begin(), out.end(), *r) == out.end()) {
            out.push_back(*r);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    if (out.empty()) {
        return std::nullopt;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::string> apply_setting(SweepSpec &spec, std::string_view key, std::string_view value) {
    const auto bad = [&](std::string_view what) { return fmt::format("{}: {} (got '{}')", key, what, value); };
    const auto number = [&](double &field) -> std::optional<std::string> {
        if (auto v = parse_double(value)) {
            field = *v;
            return std::nullopt;
        }
        return bad("expected a number");
    };
    const auto count = [&](std::size_t &field) -> std::optional<std::string> {
        if (auto v = parse_count(value)) {
            field = *v;
            return std::nullopt;
        }
        return bad("expected a non-negative integer");
    };
    const auto scale = [&](AxisScale &field) -> std::optional<std::string> {
        if (auto v = parse_scale(value)) {
            field = *v;
            return std::nullopt;
        }
        return bad("expected 'linear' or 'log'");
    };

    if (key == "kappa_min") return number(spec.kappa.min);
    if (key == "kappa_max") return number(spec.kappa.max);
    if (key == "kappa_points") return count(spec.kappa.points);
    if (key == "kappa_scale") return scale(spec.kappa.scale);
    if (key == "ns_min") return number(spec.n_s.min);
    if (key == "ns_max") return number(spec.n_s.max);
    if (key == "ns_points") return count(spec.n_s.points);
    if (key == "ns_scale") return scale(spec.n_s.scale);
    if (key == "nb") return number(spec.n_b);
    if (key == "k") return number(spec.k_modes);
    if (key == "gain") return number(spec.opa_gain);
    if (key == "pc_mu") return number(spec.pc_mu);
    if (key == "pc_nu") return number(spec.pc_nu);
    if (key == "receivers") {
        if (auto v = parse_receiver_list(value)) {
            spec.receivers = *v;
            return std::nullopt;
        }
        return bad("expected a comma-separated subset of dhd,opa,pc,ci");
    }
    if (key == "ci_convention") {
        if (value == "erfc") {
            spec.ci_convention = CiConvention::kErfcEquivalent;
        } else if (value == "exponent") {
            spec.ci_convention = CiConvention::kExponent;
        } else {
            return bad("expected 'erfc' or 'exponent'");
        }
        return std::nullopt;
    }
    if (key == "snr_source") {
        if (value == "closed_form") {
            spec.snr_source = SnrSource::kClosedForm;
        } else if (value == "engine") {
            spec.snr_source = SnrSource::kEngine;
        } else {
            return bad("expected 'closed_form' or 'engine'");
        }
        return std::nullopt;
    }
    return fmt::format("{}: unknown key", key);
}

SweepSpec parse_sweep_spec(std::string_view text, SweepSpec base) {
    std::vector<std::string> problems;
    std::size_t line_no = 0;
    while (!text.empty()) {
        line_no++;
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            problems.push_back(fmt::format("line {}: expected 'key = value'", line_no));
            continue;
        }
        if (auto err = apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)))) {
            problems.push_back(fmt::format("line {}: {}", line_no, *err));
        }
    }
    for (auto &p : base.problems()) {
        problems.push_back(std::move(p));
    }
    if (!problems.empty()) {
        throw SpecError(std::move(problems));
    }
    return base;
}

SweepSpec load_sweep_spec(const std::string &path, SweepSpec base) {
    std::ifstream in(path);
    if (!in) {
        throw SpecError({fmt::format("cannot read spec file '{}'", path)});
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_sweep_spec(buf.str(), std::move(base));
}

SnrEvaluator::SnrEvaluator(SweepSpec spec) : spec_(std::move(spec)) {}

double SnrEvaluator::ci_snr(double kappa, double n_s) const {
    const auto key = std::make_tuple(n_s, spec_.n_b, kappa);
    double q = 0;
    bool cached = false;
    {
        std::lock_guard lock(mutex_);
        if (auto it = ci_q_.find(key); it != ci_q_.end()) {
            q = it->second;
            cached = true;
        }
    }
    if (!cached) {
        q = ci_chernoff(n_s, spec_.n_b, kappa, 1, CiConvention::kExponent).q_value;
        std::lock_guard lock(mutex_);
        ci_q_.emplace(key, q);
    }
    const double exponent = -spec_.k_modes * std::log(q);
    if (spec_.ci_convention == CiConvention::kExponent) {
        return exponent;
    }
    return snr_from_log_error(std::log(0.5) - exponent);
}

double SnrEvaluator::snr(Receiver receiver, double kappa, double n_s) const {
    if (receiver == Receiver::kCi) {
        return ci_snr(kappa, n_s);
    }
    const auto scenario = spec_.scenario(kappa, n_s);
    if (spec_.snr_source == SnrSource::kClosedForm) {
        return closed_form_snr(receiver, scenario);
    }
    return qi::snr(engine_stats(receiver, scenario));
}

RegionCell classify(double kappa, double n_s, const std::array<std::optional<double>, 4> &snr) {
    RegionCell cell;
    cell.kappa = kappa;
    cell.n_s = n_s;
    cell.snr = snr;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < snr.size(); i++) {
        if (snr[i] && (!best || *snr[i] > *snr[*best])) {
            best = i;
        }
    }
    if (!best) {
        throw std::invalid_argument("classify needs at least one SNR");
    }
    double second = -kInf;
    for (std::size_t i = 0; i < snr.size(); i++) {
        if (i != *best && snr[i]) {
            second = std::max(second, *snr[i]);
        }
    }
    const double top = *snr[*best];
    cell.best = static_cast<Receiver>(*best);
    if (second == -kInf || top == second) {
        cell.margin = 1;
    } else if (second > 0) {
        cell.margin = top / second;
    } else {
        cell.margin = kInf;
    }
    return cell;
}

unsigned thread_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("QI_LAB_THREADS")) {
        if (auto cap = parse_count(env); cap && *cap > 0) {
            n = std::min<unsigned>(n, static_cast<unsigned>(std::min<std::size_t>(*cap, 1024)));
        }
    }
    return n;
}

std::vector<RegionCell> run_scan(const SweepSpec &spec, unsigned threads) {
    if (auto problems = spec.problems(); !problems.empty()) {
        throw SpecError(std::move(problems));
    }
    const auto kappas = spec.kappa.values();
    const auto nss = spec.n_s.values();
    const std::size_t total = kappas.size() * nss.size();
    std::vector<RegionCell> cells(total);
    const SnrEvaluator evaluator(spec);

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    const auto work = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            try {
                const double kappa = kappas[idx / nss.size()];
                const double n_s = nss[idx % nss.size()];
                std::array<std::optional<double>, 4> snr;
                for (auto r : spec.receivers) {
                    snr[static_cast<std::size_t>(r)] = evaluator.snr(r, kappa, n_s);
                }
                cells[idx] = classify(kappa, n_s, snr);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = total;
            }
        }
    };

    const unsigned n = std::max(1u, std::min<unsigned>(threads == 0 ? thread_count() : threads,
                                                       static_cast<unsigned>(std::max<std::size_t>(total, 1))));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < n; t++) {
            pool.emplace_back(work);
        }
        work();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return cells;
}

void write_csv(std::ostream &out, const std::vector<RegionCell> &cells) {
    out << kCsvHeader << '\n';
    for (const auto &c : cells) {
        std::string row = fmt::format("{:.17g},{:.17g}", c.kappa, c.n_s);
        for (const auto &v : c.snr) {
            row += v ? fmt::format(",{:.17g}", *v) : std::string(",");
        }
        row += fmt::format(",{},{:.17g}\n", receiver_name(c.best), c.margin);
        out << row;
    }
}

void write_json(std::ostream &out, const std::vector<RegionCell> &cells) {
    auto rows = nlohmann::json::array();
    for (const auto &c : cells) {
        nlohmann::json snr = nlohmann::json::object();
        for (auto r : kAllReceivers) {
            if (const auto &v = c.snr[static_cast<std::size_t>(r)]) {
                snr[std::string(receiver_name(r))] = *v;
            }
        }
        rows.push_back({{"kappa", c.kappa},
                        {"n_s", c.n_s},
                        {"snr", snr},
                        {"best", receiver_name(c.best)},
                        {"margin", std::isfinite(c.margin) ? nlohmann::json(c.margin) : nlohmann::json(nullptr)}});
    }
    out << rows.dump(2) << '\n';
}

std::vector<BoundaryCrossing> find_boundaries(const SnrEvaluator &evaluator, const BoundaryQuery &query) {
    if (query.b.empty()) {
        throw std::invalid_argument("boundary search needs at least one competitor");
    }
    if (query.prescan_points < 2 || !(query.lo < query.hi) || (query.scale == AxisScale::kLog && !(query.lo > 0))) {
        throw std::invalid_argument("invalid boundary search interval");
    }
    const auto diff = [&](double x) {
        const double kappa = query.variable == ScanVariable::kKappa ? x : query.fixed;
        const double n_s = query.variable == ScanVariable::kKappa ? query.fixed : x;
        double other = -kInf;
        for (auto r : query.b) {
            other = std::max(other, evaluator.snr(r, kappa, n_s));
        }
        return evaluator.snr(query.a, kappa, n_s) - other;
    };
    const auto midpoint = [&](double a, double b) {
        return query.scale == AxisScale::kLog ? std::sqrt(a * b) : 0.5 * (a + b);
    };

    const auto grid = Axis{query.lo, query.hi, query.prescan_points, query.scale}.values();
    std::vector<BoundaryCrossing> out;
    std::optional<std::pair<double, double>> last;  // last point with a nonzero difference
    for (double x : grid) {
        const double f = diff(x);
        if (f == 0 || std::isnan(f)) {
            continue;
        }
        if (last && (last->second < 0) != (f < 0)) {
            double a = last->first;
            double b = x;
            double fa = last->second;
            for (int iter = 0; iter < 200 && b - a > query.rel_tol * std::abs(midpoint(a, b)); iter++) {
                const double m = midpoint(a, b);
                const double fm = diff(m);
                if (fm == 0) {
                    a = b = m;
                    break;
                }
                if ((fm < 0) == (fa < 0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out.push_back({midpoint(a, b), f > 0});
        }
        last = {x, f};
    }
    return out;
}

}  // namespace qi
