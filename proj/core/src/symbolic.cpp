#include "shadowing/symbolic.hpp"

#include <cmath>
#include <cstdint>
#include <map>

#include "shadowing/errors.hpp"

namespace shadowing {

namespace {

long edge_of(const pt& p) { return std::llround(p.x.real()); }

void validate_graph(const graph_data& g) {
    if (g.vertices <= 0) throw input_error("graph needs at least one vertex");
    if (g.edges.empty()) throw input_error("graph needs at least one edge");
    for (const auto& [t, h] : g.edges)
        if (t < 0 || t >= g.vertices || h < 0 || h >= g.vertices)
            throw input_error("graph edge endpoint out of range");
}

} // namespace

std::shared_ptr<const mv_system> make_graph_system(graph_data g) {
    validate_graph(g);
    auto data = std::make_shared<const graph_data>(std::move(g));
    auto sys = std::make_shared<mv_system>();
    sys->family = system_family::graph;
    sys->name = "graph";
    sys->X0 = space::discrete(data->vertices);
    sys->X1 = space::discrete(static_cast<long>(data->edges.size()));
    sys->graph = data;
    sys->iota = [data](const pt& p) {
        return make_pt(static_cast<double>(data->edges.at(edge_of(p)).first));
    };
    sys->sigma = [data](const pt& p) {
        return make_pt(static_cast<double>(data->edges.at(edge_of(p)).second));
    };
    sys->in_X1 = [data](const pt& p, double tol) {
        long e = edge_of(p);
        return std::abs(p.x.real() - static_cast<double>(e)) <= tol && e >= 0 &&
               e < static_cast<long>(data->edges.size());
    };
    sys->local_invert = [data](const pt& seed, const pt& target) {
        long t = std::llround(target.x.real());
        long s = edge_of(seed);
        if (s >= 0 && s < static_cast<long>(data->edges.size()) &&
            data->edges[static_cast<std::size_t>(s)].second == t)
            return make_pt(static_cast<double>(s));
        for (long e = 0; e < static_cast<long>(data->edges.size()); ++e)
            if (data->edges[static_cast<std::size_t>(e)].second == t)
                return make_pt(static_cast<double>(e));
        throw input_error("no graph edge maps onto the requested vertex");
    };
    return sys;
}

higher_block_result higher_block(const std::shared_ptr<const mv_system>& graph_sys, int n) {
    if (!graph_sys || graph_sys->family != system_family::graph)
        throw input_error("higher_block needs a graph system");
    if (n < 1) throw input_error("block length must be >= 1");
    const graph_data& g = *graph_sys->graph;

    // Enumerate all edge walks of length n-1 (new vertices) and n (new edges).
    std::vector<std::vector<long>> walks_nm1, walks_n;
    std::vector<std::vector<long>> frontier{{}};
    for (int step = 0; step < n; ++step) {
        if (step == n - 1) walks_nm1 = frontier;
        std::vector<std::vector<long>> next;
        for (const auto& w : frontier) {
            for (long e = 0; e < static_cast<long>(g.edges.size()); ++e) {
                if (!w.empty() &&
                    g.edges[static_cast<std::size_t>(w.back())].second !=
                        g.edges[static_cast<std::size_t>(e)].first)
                    continue;
                auto ext = w;
                ext.push_back(e);
                next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
    }
    walks_n = frontier;
    if (n == 1) {
        // New vertices are the 0-walks based at each vertex: the vertices.
        walks_nm1.clear();
        for (long v = 0; v < g.vertices; ++v) walks_nm1.push_back({-1 - v});
    }

    std::map<std::vector<long>, long> vertex_id;
    for (long i = 0; i < static_cast<long>(walks_nm1.size()); ++i)
        vertex_id[walks_nm1[static_cast<std::size_t>(i)]] = i;

    auto prefix_key = [&](const std::vector<long>& w) {
        if (n == 1) return std::vector<long>{-1 - g.edges[static_cast<std::size_t>(w[0])].first};
        return std::vector<long>(w.begin(), w.end() - 1);
    };
    auto suffix_key = [&](const std::vector<long>& w) {
        if (n == 1) return std::vector<long>{-1 - g.edges[static_cast<std::size_t>(w[0])].second};
        return std::vector<long>(w.begin() + 1, w.end());
    };

    graph_data blocked;
    blocked.vertices = static_cast<long>(walks_nm1.size());
    for (const auto& w : walks_n)
        blocked.edges.emplace_back(vertex_id.at(prefix_key(w)), vertex_id.at(suffix_key(w)));

    higher_block_result out;
    out.system = make_graph_system(std::move(blocked));
    out.blocks = walks_n;

    auto blocks = std::make_shared<const std::vector<std::vector<long>>>(out.blocks);
    auto verts = std::make_shared<const std::vector<std::vector<long>>>(walks_nm1);
    auto gdata = graph_sys->graph;
    int block_n = n;

    hsc proj;
    proj.src = out.system;
    proj.dst = graph_sys;
    proj.h1 = [blocks](const pt& p) {
        return make_pt(static_cast<double>((*blocks).at(edge_of(p)).front()));
    };
    proj.h0 = [verts, gdata, block_n](const pt& p) {
        const auto& w = (*verts).at(edge_of(p));
        if (block_n == 1) return make_pt(static_cast<double>(-1 - w[0]));
        return make_pt(static_cast<double>(gdata->edges[static_cast<std::size_t>(w[0])].first));
    };
    auto src = out.system;
    auto dst = graph_sys;
    auto h0 = proj.h0, h1 = proj.h1;
    proj.G = [src, dst, h0, h1](const pt& x, double) { return dst->sigma(h1(x)); };
    proj.H = [src, dst, h0, h1](const pt& x, double) { return dst->iota(h1(x)); };
    proj.name = "block projection";
    out.projection = std::move(proj);
    return out;
}

std::vector<std::vector<long>> enumerate_periodic(const graph_data& g, int n) {
    validate_graph(g);
    if (n < 1) throw input_error("period must be >= 1");
    std::vector<std::vector<long>> out;
    std::vector<long> walk;
    auto dfs = [&](auto&& self, int depth) -> void {
        if (depth == n) {
            if (g.edges[static_cast<std::size_t>(walk.back())].second ==
                g.edges[static_cast<std::size_t>(walk.front())].first)
                out.push_back(walk);
            return;
        }
        for (long e = 0; e < static_cast<long>(g.edges.size()); ++e) {
            if (!walk.empty() &&
                g.edges[static_cast<std::size_t>(walk.back())].second !=
                    g.edges[static_cast<std::size_t>(e)].first)
                continue;
            walk.push_back(e);
            self(self, depth + 1);
            walk.pop_back();
        }
    };
    dfs(dfs, 0);
    return out;
}

int markov_partition::symbol(double lift) const {
    if (pieces < 2) throw input_error("partition needs at least two pieces");
    double u = circle_reduce(lift);
    double scaled = u * pieces;
    double nearest = std::round(scaled);
    if (std::abs(scaled - nearest) < boundary_guard * pieces)
        throw input_error("point lies within the boundary guard of the partition");
    return static_cast<int>(std::floor(scaled));
}

std::vector<int> code_orbit(const mv_system& sys, const orbit_seg& o,
                            double boundary_guard) {
    if (sys.X1.kind() != space_kind::circle)
        throw input_error("itineraries are defined for circle systems");
    if (sys.degree < 2) throw input_error("itineraries need an expanding degree >= 2");
    markov_partition part{sys.degree, boundary_guard};
    std::vector<int> out;
    out.reserve(o.points.size());
    for (const auto& p : o.points) out.push_back(part.symbol(p.x.real()));
    return out;
}

double decode_symbols(int d, const std::vector<int>& preperiod,
                      const std::vector<int>& period) {
    if (d < 2) throw input_error("base must be >= 2");
    if (period.empty() && preperiod.empty()) throw input_error("no digits to decode");
    if (preperiod.size() + period.size() > 18)
        throw input_error("digit strings capped at 18 digits for exact decoding");
    for (int s : preperiod)
        if (s < 0 || s >= d) throw input_error("digit out of range for the base");
    for (int s : period)
        if (s < 0 || s >= d) throw input_error("digit out of range for the base");

    __int128 dp = 1;
    __int128 A = 0;
    for (int s : preperiod) {
        A = A * d + s;
        dp *= d;
    }
    if (period.empty())
        return static_cast<double>(A) / static_cast<double>(dp);
    __int128 dq = 1;
    __int128 B = 0;
    for (int s : period) {
        B = B * d + s;
        dq *= d;
    }
    // x = (A (d^q - 1) + B) / (d^p (d^q - 1))
    __int128 num = A * (dq - 1) + B;
    __int128 den = dp * (dq - 1);
    return static_cast<double>(num) / static_cast<double>(den);
}

} // namespace shadowing
