#pragma once

#include <array>
#include <string>
#include <vector>

namespace gridflux::grid {

enum class BusKind { Slack, PQ };

/// Network node. Injections are per-unit, generation positive.
struct Bus {
    int id = 0;
    BusKind kind = BusKind::PQ;
    double p_inj = 0.0;
    double q_inj = 0.0;
    double vm_ref = 1.0;  // slack only
    double va_ref = 0.0;  // slack only, radians
};

/// Series branch; no shunt susceptance, no tap ratio.
struct Line {
    int from_bus = 0;
    int to_bus = 0;
    double r = 0.0;  // per-unit
    double x = 0.0;  // per-unit
};

/// Immutable per-unit network. base_kv is metadata only; every electrical
/// quantity in this project is per-unit.
struct Grid {
    std::vector<Bus> buses;
    std::vector<Line> lines;
    double base_kv = 1.0;
    std::string family_tag;
    // Slack source impedance; exposed as global features only, never part of
    // the admittance matrix.
    double slack_src_r = 0.0;
    double slack_src_x = 0.0;

    int size() const { return static_cast<int>(buses.size()); }
    int slack_index() const;

    /// Checks every structural invariant: one slack, dense zero-based ids,
    /// finite injections, nonzero line impedances, no duplicate pairs,
    /// connectivity. Throws std::invalid_argument with a diagnostic.
    void validate() const;
};

/// Y = G + jB, dense row-major N x N.
struct AdmittanceMatrix {
    int n = 0;
    std::vector<double> g;
    std::vector<double> b;

    double g_at(int i, int j) const { return g[static_cast<std::size_t>(i) * n + j]; }
    double b_at(int i, int j) const { return b[static_cast<std::size_t>(i) * n + j]; }
};

/// Network features in the layout the models consume.
struct FeatureSet {
    std::vector<std::array<double, 3>> node;    // [p_inj, q_inj, hop_to_slack]
    std::vector<std::array<double, 2>> edge;    // [r, x] per line
    std::array<double, 4> global{};             // [slack vm_ref, va_ref, src r, src x]
};

/// Assembles the bus admittance matrix from series line parameters.
/// Rejects zero-impedance lines with a diagnostic naming the line.
AdmittanceMatrix build_ybus(const Grid& grid);

/// Breadth-first hop count from the slack bus. Throws naming the unreachable
/// buses when the grid is disconnected.
std::vector<int> hop_distances(const Grid& grid);

/// Pure function Grid -> FeatureSet, ordering matching bus/line indices.
FeatureSet extract_features(const Grid& grid);

}  // namespace gridflux::grid
