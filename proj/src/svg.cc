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

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qi/scan.h"

namespace qi {

namespace {

using Vertex = std::pair<int, int>;

struct Edge {
    Vertex from;
    Vertex to;
};

// Twice the signed area of a closed vertex list.
long long twice_area(const std::vector<Vertex> &poly) {
    long long a = 0;
    for (std::size_t k = 0; k < poly.size(); k++) {
        const auto &p = poly[k];
        const auto &q = poly[(k + 1) % poly.size()];
        a += static_cast<long long>(p.first) * q.second - static_cast<long long>(q.first) * p.second;
    }
    return a;
}

// Drops vertices in the middle of straight runs.
std::vector<Vertex> simplify(const std::vector<Vertex> &loop) {
    std::vector<Vertex> out;
    const std::size_t n = loop.size();
    for (std::size_t k = 0; k < n; k++) {
        const auto &prev = loop[(k + n - 1) % n];
        const auto &cur = loop[k];
        const auto &next = loop[(k + 1) % n];
        const long long cross = static_cast<long long>(cur.first - prev.first) * (next.second - cur.second) -
                                static_cast<long long>(cur.second - prev.second) * (next.first - cur.first);
        if (cross != 0) {
            out.push_back(cur);
        }
    }
    return out;
}

const char *receiver_color(Receiver r) {
    switch (r) {
        case Receiver::kDhd:
            return "#4c72b0";
        case Receiver::kOpa:
            return "#dd8452";
        case Receiver::kPc:
            return "#55a868";
        case Receiver::kCi:
            return "#c44e52";
    }
    return "#999999";
}

}  // namespace

std::vector<RegionPolygon> region_polygons(const std::vector<int> &labels, std::size_t nx, std::size_t ny) {
    if (labels.size() != nx * ny) {
        throw std::invalid_argument("label grid has the wrong size");
    }
    const auto at = [&](long i, long j) -> std::optional<int> {
        if (i < 0 || j < 0 || i >= static_cast<long>(nx) || j >= static_cast<long>(ny)) {
            return std::nullopt;
        }
        return labels[static_cast<std::size_t>(i) + nx * static_cast<std::size_t>(j)];
    };

    std::vector<int> component(labels.size(), -1);
    std::vector<RegionPolygon> out;
    for (std::size_t seed = 0; seed < labels.size(); seed++) {
        if (component[seed] >= 0) {
            continue;
        }
        const int id = static_cast<int>(out.size());
        const int label = labels[seed];
        std::vector<std::size_t> stack = {seed};
        std::vector<std::size_t> members;
        component[seed] = id;
        while (!stack.empty()) {
            const std::size_t c = stack.back();
            stack.pop_back();
            members.push_back(c);
            const long i = static_cast<long>(c % nx);
            const long j = static_cast<long>(c / nx);
            const long di[] = {1, -1, 0, 0};
            const long dj[] = {0, 0, 1, -1};
            for (int k = 0; k < 4; k++) {
                const auto v = at(i + di[k], j + dj[k]);
                const std::size_t nb = static_cast<std::size_t>(i + di[k]) + nx * static_cast<std::size_t>(j + dj[k]);
                if (v && *v == label && component[nb] < 0) {
                    component[nb] = id;
                    stack.push_back(nb);
                }
            }
        }

        // Counter-clockwise boundary edges (region on the left).
        std::multimap<Vertex, Vertex> edges;
        const auto inside = [&](long i, long j) {
            return at(i, j).has_value() && component[static_cast<std::size_t>(i) + nx * static_cast<std::size_t>(j)] == id;
        };
        for (std::size_t c : members) {
            const int i = static_cast<int>(c % nx);
            const int j = static_cast<int>(c / nx);
            if (!inside(i, j - 1)) edges.emplace(Vertex{i, j}, Vertex{i + 1, j});
            if (!inside(i + 1, j)) edges.emplace(Vertex{i + 1, j}, Vertex{i + 1, j + 1});
            if (!inside(i, j + 1)) edges.emplace(Vertex{i + 1, j + 1}, Vertex{i, j + 1});
            if (!inside(i - 1, j)) edges.emplace(Vertex{i, j + 1}, Vertex{i, j});
        }

        // Chain edges into loops; at a pinch vertex take the leftmost turn.
        std::vector<Vertex> best_loop;
        long long best_area = 0;
        while (!edges.empty()) {
            auto it = edges.begin();
            const Vertex start = it->first;
            Vertex cur = it->second;
            int dx = cur.first - start.first;
            int dy = cur.second - start.second;
            edges.erase(it);
            std::vector<Vertex> loop = {start};
            while (cur != start) {
                loop.push_back(cur);
                auto [lo, hi] = edges.equal_range(cur);
                if (lo == hi) {
                    throw std::logic_error("open region boundary");
                }
                auto chosen = lo;
                int chosen_rank = 3;
                for (auto e = lo; e != hi; ++e) {
                    const int ex = e->second.first - cur.first;
                    const int ey = e->second.second - cur.second;
                    const int rank = (ex == -dy && ey == dx) ? 0 : (ex == dx && ey == dy) ? 1 : 2;
                    if (rank < chosen_rank) {
                        chosen = e;
                        chosen_rank = rank;
                    }
                }
                const Vertex next = chosen->second;
                dx = next.first - cur.first;
                dy = next.second - cur.second;
                edges.erase(chosen);
                cur = next;
            }
            const long long area = twice_area(loop);
            if (area > best_area) {
                best_area = area;
                best_loop = std::move(loop);
            }
        }
        out.push_back({label, members.size(), simplify(best_loop)});
    }
    std::stable_sort(out.begin(), out.end(), [](const RegionPolygon &a, const RegionPolygon &b) {
        return twice_area(a.vertices) > twice_area(b.vertices);
    });
    return out;
}

void write_svg(std::ostream &out, const SweepSpec &spec, const std::vector<RegionCell> &cells) {
    const std::size_t nx = spec.kappa.points;
    const std::size_t ny = spec.n_s.points;
    if (cells.size() != nx * ny) {
        throw std::invalid_argument("cell count does not match the spec grid");
    }
    // Cells arrive kappa-major: index = ix * ny + iy.
    std::vector<int> labels(nx * ny);
    for (std::size_t ix = 0; ix < nx; ix++) {
        for (std::size_t iy = 0; iy < ny; iy++) {
            labels[ix + nx * iy] = static_cast<int>(cells[ix * ny + iy].best);
        }
    }
    const auto polygons = region_polygons(labels, nx, ny);

    const double left = 70;
    const double top = 20;
    const double width = 480;
    const double height = 360;
    const double sx = width / static_cast<double>(nx);
    const double sy = height / static_cast<double>(ny);
    const auto axis_label = [](const Axis &a) {
        return fmt::format("{:g} .. {:g} ({})", a.min, a.max, a.scale == AxisScale::kLog ? "log" : "linear");
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:g}\" height=\"{:g}\" viewBox=\"0 0 {:g} {:g}\">\n",
                       left + width + 130, top + height + 60, left + width + 130, top + height + 60);
    out << fmt::format("  <title>best receiver, N_B = {:g}, K = {:g}</title>\n", spec.n_b, spec.k_modes);
    out << "  <g id=\"regions\" stroke=\"#222222\" stroke-width=\"1\">\n";
    for (const auto &poly : polygons) {
        std::string points;
        for (const auto &[i, j] : poly.vertices) {
            points += fmt::format("{}{:.2f},{:.2f}", points.empty() ? "" : " ", left + i * sx,
                                  top + height - j * sy);
        }
        const auto r = static_cast<Receiver>(poly.label);
        out << fmt::format("    <polygon class=\"{}\" fill=\"{}\" points=\"{}\"/>\n", receiver_name(r),
                           receiver_color(r), points);
    }
    out << "  </g>\n";
    out << fmt::format("  <rect x=\"{:g}\" y=\"{:g}\" width=\"{:g}\" height=\"{:g}\" fill=\"none\" stroke=\"#000000\"/>\n",
                       left, top, width, height);
    out << fmt::format("  <text x=\"{:g}\" y=\"{:g}\" text-anchor=\"middle\" font-size=\"12\">kappa: {}</text>\n",
                       left + width / 2, top + height + 30, axis_label(spec.kappa));
    out << fmt::format(
        "  <text x=\"15\" y=\"{:g}\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 15 {:g})\">N_S: "
        "{}</text>\n",
        top + height / 2, top + height / 2, axis_label(spec.n_s));
    out << "  <g id=\"legend\" font-size=\"12\">\n";
    double ly = top + 10;
    for (auto r : spec.receivers) {
        out << fmt::format("    <rect x=\"{:g}\" y=\"{:g}\" width=\"14\" height=\"14\" fill=\"{}\"/>\n",
                           left + width + 20, ly, receiver_color(r));
        out << fmt::format("    <text x=\"{:g}\" y=\"{:g}\">{}</text>\n", left + width + 40, ly + 12, receiver_name(r));
        ly += 22;
    }
    out << "  </g>\n</svg>\n";
}

}  // namespace qi
