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

#ifndef QI_SCAN_H
#define QI_SCAN_H

#include <array>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "qi/fock.h"
#include "qi/gaussian_state.h"
#include "qi/receivers.h"

namespace qi {

enum class AxisScale { kLinear, kLog };

struct Axis {
    double min = 0;
    double max = 1;
    std::size_t points = 2;
    AxisScale scale = AxisScale::kLinear;

    std::vector<double> values() const;
};

/// Where the quantum receivers' SNR comes from during a sweep.
enum class SnrSource { kClosedForm, kEngine };

/// Grid definition plus fixed scenario parameters. The defaults describe the
/// N_B = 30 region map over the small-reflectivity window.
struct SweepSpec {
    Axis kappa{1e-4, 1e-1, 61, AxisScale::kLog};
    Axis n_s{1e-4, 2e-2, 41, AxisScale::kLog};
    double n_b = 30;
    double k_modes = 1e7;
    double opa_gain = 1 + 7.4e-5;
    double pc_mu = 1.4142135623730951;
    double pc_nu = 1;
    std::vector<Receiver> receivers = {Receiver::kDhd, Receiver::kOpa, Receiver::kPc};
    CiConvention ci_convention = CiConvention::kErfcEquivalent;
    SnrSource snr_source = SnrSource::kClosedForm;

    /// Every violated constraint, one message per field; empty when valid.
    std::vector<std::string> problems() const;
    QiScenario scenario(double kappa, double n_s) const;
};

/// Spec rejected; carries all problems found, not just the first.
class SpecError : public std::runtime_error {
   public:
    explicit SpecError(std::vector<std::string> problems);
    const std::vector<std::string> &problems() const { return problems_; }

   private:
    std::vector<std::string> problems_;
};

/// Sets one `key = value` entry. Returns an error message, or nothing on success.
std::optional<std::string> apply_setting(SweepSpec &spec, std::string_view key, std::string_view value);

/// Parses the flat spec grammar: one `key = value` per line, `#` starts a
/// comment, blank lines ignored. Keys not given keep the values of `base`.
/// Throws SpecError listing every bad line and every violated field.
SweepSpec parse_sweep_spec(std::string_view text, SweepSpec base = {});
SweepSpec load_sweep_spec(const std::string &path, SweepSpec base = {});

/// Comma-separated receiver list such as "dhd,pc,ci".
std::optional<std::vector<Receiver>> parse_receiver_list(std::string_view text);

struct RegionCell {
    double kappa = 0;
    double n_s = 0;
    std::array<std::optional<double>, 4> snr;  // indexed by Receiver
    Receiver best = Receiver::kDhd;
    double margin = 1;  // best / second best; infinite when the runner-up is 0
};

/// SNR^(K) of any receiver for a spec's fixed parameters. Classical
/// illumination results are cached per (N_S, N_B, kappa); the cache is
/// thread-safe.
class SnrEvaluator {
   public:
    explicit SnrEvaluator(SweepSpec spec);

    double snr(Receiver receiver, double kappa, double n_s) const;
    const SweepSpec &spec() const { return spec_; }

   private:
    double ci_snr(double kappa, double n_s) const;

    SweepSpec spec_;
    mutable std::mutex mutex_;
    mutable std::map<std::tuple<double, double, double>, double> ci_q_;
};

/// Builds a cell from per-receiver SNRs; ties go to the earlier receiver in
/// dhd, opa, pc, ci order.
RegionCell classify(double kappa, double n_s, const std::array<std::optional<double>, 4> &snr);

/// Worker count: hardware concurrency, capped by QI_LAB_THREADS when set.
unsigned thread_count();

/// Evaluates every grid point; rows are kappa-major regardless of threads.
std::vector<RegionCell> run_scan(const SweepSpec &spec, unsigned threads = 0);

inline constexpr std::string_view kCsvHeader = "kappa,n_s,snr_dhd,snr_opa,snr_pc,snr_ci,best,margin";

void write_csv(std::ostream &out, const std::vector<RegionCell> &cells);
void write_json(std::ostream &out, const std::vector<RegionCell> &cells);

/// Heatmap of the best receiver over the grid: one filled polygon per
/// 4-connected region plus a legend.
void write_svg(std::ostream &out, const SweepSpec &spec, const std::vector<RegionCell> &cells);

/// Outer boundary of each 4-connected region of equal labels on an nx by ny
/// grid (label index i + nx * j), as closed vertex lists in cell-corner
/// coordinates, largest area first.
struct RegionPolygon {
    int label = 0;
    std::size_t cells = 0;
    std::vector<std::pair<int, int>> vertices;
};
std::vector<RegionPolygon> region_polygons(const std::vector<int> &labels, std::size_t nx, std::size_t ny);

enum class ScanVariable { kKappa, kNs };

struct BoundaryQuery {
    Receiver a = Receiver::kDhd;
    std::vector<Receiver> b = {Receiver::kPc};  // SNR_b is the max over this list
    ScanVariable variable = ScanVariable::kKappa;
    double fixed = 0.01;  // value of the other variable
    double lo = 1e-4;
    double hi = 1e-1;
    AxisScale scale = AxisScale::kLog;
    std::size_t prescan_points = 200;
    double rel_tol = 1e-4;
};

struct BoundaryCrossing {
    double value = 0;
    bool a_gains = false;  // SNR_a - SNR_b goes from negative to positive
};

/// All sign changes of SNR_a - SNR_b found on the prescan grid, each refined
/// by bisection. Empty when there is no boundary in range.
std::vector<BoundaryCrossing> find_boundaries(const SnrEvaluator &evaluator, const BoundaryQuery &query);

}  // namespace qi

#endif
