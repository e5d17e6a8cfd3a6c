#include "gridflux/grid.hpp"

#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gridflux::grid {

int Grid::slack_index() const {
    int found = -1;
    for (int i = 0; i < size(); ++i) {
        if (buses[static_cast<std::size_t>(i)].kind == BusKind::Slack) {
            if (found >= 0) throw std::invalid_argument("grid has more than one slack bus");
            found = i;
        }
    }
    if (found < 0) throw std::invalid_argument("grid has no slack bus");
    return found;
}

void Grid::validate() const {
    if (buses.empty()) throw std::invalid_argument("grid has no buses");
    (void)slack_index();
    for (int i = 0; i < size(); ++i) {
        const Bus& bus = buses[static_cast<std::size_t>(i)];
        if (bus.id != i)
            throw std::invalid_argument("bus ids must be dense 0..N-1; bus at position " +
                                        std::to_string(i) + " has id " + std::to_string(bus.id));
        if (!std::isfinite(bus.p_inj) || !std::isfinite(bus.q_inj))
            throw std::invalid_argument("non-finite injection at bus " + std::to_string(i));
    }
    std::set<std::pair<int, int>> seen;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const Line& line = lines[k];
        if (line.from_bus < 0 || line.from_bus >= size() || line.to_bus < 0 ||
            line.to_bus >= size())
            throw std::invalid_argument("line " + std::to_string(k) + " references missing bus");
        if (line.from_bus == line.to_bus)
            throw std::invalid_argument("line " + std::to_string(k) + " is a self-loop");
        if (line.r < 0.0)
            throw std::invalid_argument("line " + std::to_string(k) + " has negative resistance");
        if (line.r == 0.0 && line.x == 0.0)
            throw std::invalid_argument("line " + std::to_string(k) + " (" +
                                        std::to_string(line.from_bus) + "-" +
                                        std::to_string(line.to_bus) + ") has zero impedance");
        auto key = std::minmax(line.from_bus, line.to_bus);
        if (!seen.insert({key.first, key.second}).second)
            throw std::invalid_argument("duplicate line between buses " +
                                        std::to_string(key.first) + " and " +
                                        std::to_string(key.second));
    }
    (void)hop_distances(*this);  // throws when disconnected
}

AdmittanceMatrix build_ybus(const Grid& grid) {
    const int n = grid.size();
    AdmittanceMatrix y;
    y.n = n;
    y.g.assign(static_cast<std::size_t>(n) * n, 0.0);
    y.b.assign(static_cast<std::size_t>(n) * n, 0.0);

    for (std::size_t k = 0; k < grid.lines.size(); ++k) {
        const Line& line = grid.lines[k];
        double den = line.r * line.r + line.x * line.x;
        if (den == 0.0)
            throw std::invalid_argument("line " + std::to_string(k) + " (" +
                                        std::to_string(line.from_bus) + "-" +
                                        std::to_string(line.to_bus) + ") has zero impedance");
        double gl = line.r / den;
        double bl = -line.x / den;
        auto at = [n](std::vector<double>& m, int i, int j) -> double& {
            return m[static_cast<std::size_t>(i) * n + j];
        };
        int i = line.from_bus, j = line.to_bus;
        at(y.g, i, j) -= gl;
        at(y.g, j, i) -= gl;
        at(y.b, i, j) -= bl;
        at(y.b, j, i) -= bl;
        at(y.g, i, i) += gl;
        at(y.g, j, j) += gl;
        at(y.b, i, i) += bl;
        at(y.b, j, j) += bl;
    }
    return y;
}

std::vector<int> hop_distances(const Grid& grid) {
    const int n = grid.size();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const Line& line : grid.lines) {
        adj[static_cast<std::size_t>(line.from_bus)].push_back(line.to_bus);
        adj[static_cast<std::size_t>(line.to_bus)].push_back(line.from_bus);
    }
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::deque<int> queue;
    int slack = grid.slack_index();
    dist[static_cast<std::size_t>(slack)] = 0;
    queue.push_back(slack);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    std::ostringstream unreachable;
    bool any = false;
    for (int i = 0; i < n; ++i) {
        if (dist[static_cast<std::size_t>(i)] < 0) {
            unreachable << (any ? ", " : "") << i;
            any = true;
        }
    }
    if (any)
        throw std::invalid_argument("grid is disconnected; buses unreachable from slack: " +
                                    unreachable.str());
    return dist;
}

FeatureSet extract_features(const Grid& grid) {
    FeatureSet f;
    std::vector<int> hops = hop_distances(grid);
    f.node.reserve(grid.buses.size());
    for (int i = 0; i < grid.size(); ++i) {
        const Bus& bus = grid.buses[static_cast<std::size_t>(i)];
        f.node.push_back({bus.p_inj, bus.q_inj, static_cast<double>(hops[static_cast<std::size_t>(i)])});
    }
    f.edge.reserve(grid.lines.size());
    for (const Line& line : grid.lines) f.edge.push_back({line.r, line.x});
    const Bus& slack = grid.buses[static_cast<std::size_t>(grid.slack_index())];
    f.global = {slack.vm_ref, slack.va_ref, grid.slack_src_r, grid.slack_src_x};
    return f;
}

}  // namespace gridflux::grid
