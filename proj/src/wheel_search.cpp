#include "wheel_search.hpp"

#include <algorithm>
#include <array>

#include "wheelep/algorithms.hpp"

namespace wheelep::detail {

namespace {

Edge key(Vertex a, Vertex b) { return {std::min(a, b), std::max(a, b)}; }

// Interior of the kernel edge a-b read from a towards b.
std::vector<Vertex> interior(const std::map<Edge, std::vector<Vertex>>& paths, Vertex a, Vertex b) {
    auto it = paths.find(key(a, b));
    if (it == paths.end()) return {};
    std::vector<Vertex> p = it->second;
    if (a > b) std::reverse(p.begin(), p.end());
    return p;
}

int attachments(const Graph& g, VertexSet hub, VertexSet cycle) {
    return (g.neighbors(hub) & cycle).size();
}

// Enumerates inclusion-minimal connected T inside `region` with at least t
// neighbours on `cycle`, |T| <= max_size. Rooted at `root` when given,
// otherwise at min(T).
class HubEnumerator {
public:
    HubEnumerator(const Graph& g, VertexSet region, VertexSet cycle, int t, int max_size,
                  const std::function<bool(VertexSet)>& visit, DeadlinePoll& poll)
        : g_(g), region_(region), cycle_(cycle), t_(t), max_size_(max_size), visit_(visit), poll_(poll) {}

    bool run(std::optional<Vertex> root) {
        if (root) return grow(VertexSet::singleton(*root), VertexSet{});
        for (Vertex r : region_) {
            if (!grow(VertexSet::singleton(r), region_.below(r))) return false;
        }
        return true;
    }

private:
    bool minimal(VertexSet s) const {
        if (s.size() == 1) return true;
        for (Vertex w : s) {
            VertexSet rest = s;
            rest.erase(w);
            if (attachments(g_, rest, cycle_) >= t_ && is_connected(g_, rest)) return false;
        }
        return true;
    }

    bool grow(VertexSet s, VertexSet forbidden) {
        poll_();
        if (attachments(g_, s, cycle_) >= t_) {
            return minimal(s) ? visit_(s) : true;
        }
        if (s.size() >= max_size_) return true;
        const VertexSet cand = (g_.neighbors(s) & region_) - forbidden;
        VertexSet excluded = forbidden;
        for (Vertex v : cand) {
            VertexSet next = s;
            next.insert(v);
            if (!grow(next, excluded)) return false;
            excluded.insert(v);
        }
        return true;
    }

    const Graph& g_;
    VertexSet region_, cycle_;
    int t_, max_size_;
    const std::function<bool(VertexSet)>& visit_;
    DeadlinePoll& poll_;
};

VertexSet shrink_hub(const Graph& g, VertexSet hub, VertexSet cycle, int t) {
    std::vector<Vertex> order = hub.to_vector();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        VertexSet rest = hub;
        rest.erase(*it);
        if (!rest.empty() && attachments(g, rest, cycle) >= t && is_connected(g, rest)) hub = rest;
    }
    return hub;
}

}  // namespace

Kernel reduce_to_kernel(const Graph& g, VertexSet mask, bool track_paths) {
    Kernel k;
    mask &= g.vertices();
    std::array<VertexSet, kMaxVertices> adj{};
    for (Vertex v : mask) adj[v] = g.neighbors(v) & mask;
    VertexSet alive = mask;
    bool changed = true;
    while (changed) {
        changed = false;
        for (Vertex v : alive) {
            const int d = adj[v].size();
            if (d > 2) continue;
            changed = true;
            alive.erase(v);
            for (Vertex w : adj[v]) adj[w].erase(v);
            if (d == 2) {
                const Vertex a = adj[v].first();
                VertexSet rest = adj[v];
                rest.erase(a);
                const Vertex b = rest.first();
                if (track_paths) {
                    std::vector<Vertex> through = interior(k.paths, a, v);
                    through.push_back(v);
                    for (Vertex x : interior(k.paths, v, b)) through.push_back(x);
                    if (!adj[a].contains(b)) {
                        if (a > b) std::reverse(through.begin(), through.end());
                        k.paths[key(a, b)] = std::move(through);
                    }
                    k.paths.erase(key(a, v));
                    k.paths.erase(key(v, b));
                }
                adj[a].insert(b);
                adj[b].insert(a);
            } else if (track_paths && d == 1) {
                k.paths.erase(key(v, adj[v].first()));
            }
            adj[v] = VertexSet{};
        }
    }
    k.alive = alive;
    k.graph = Graph(g.order());
    for (Vertex v : alive) {
        for (Vertex w : adj[v]) {
            if (v < w) k.graph.add_edge(v, w);
        }
    }
    return k;
}

bool for_each_cycle(const Graph& g, VertexSet mask, int max_len,
                    const std::function<bool(const std::vector<Vertex>&, VertexSet)>& visit,
                    DeadlinePoll& poll) {
    std::vector<Vertex> path;
    std::array<int, kMaxVertices> dist{};
    for (Vertex s : mask) {
        // Cycles whose smallest vertex is s, oriented so path[1] < path.back().
        const VertexSet allowed = mask - mask.below(s);
        dist.fill(-1);
        {
            std::array<int, kMaxVertices> queue{};
            int head = 0, tail = 0;
            dist[s] = 0;
            queue[tail++] = s;
            while (head < tail) {
                const Vertex u = queue[head++];
                for (Vertex w : g.neighbors(u) & allowed) {
                    if (dist[w] < 0) {
                        dist[w] = dist[u] + 1;
                        queue[tail++] = w;
                    }
                }
            }
        }
        path.assign(1, s);
        VertexSet on_path = VertexSet::singleton(s);
        std::function<bool(Vertex)> extend = [&](Vertex u) -> bool {
            poll();
            const int len = static_cast<int>(path.size());
            if (len >= 3 && g.has_edge(u, s) && path[1] < u) {
                if (!visit(path, on_path)) return false;
            }
            if (len >= max_len) return true;
            for (Vertex w : (g.neighbors(u) & allowed) - on_path) {
                if (dist[w] < 0 || len + dist[w] > max_len) continue;
                path.push_back(w);
                on_path.insert(w);
                const bool go = extend(w);
                path.pop_back();
                on_path.erase(w);
                if (!go) return false;
            }
            return true;
        };
        if (!extend(s)) return false;
    }
    return true;
}

bool for_each_wheel_set(const Graph& g, VertexSet mask, int t, int max_size, std::optional<Vertex> must,
                        const std::function<bool(VertexSet)>& visit, const Deadline& deadline) {
    DeadlinePoll poll(deadline);
    if (must && !mask.contains(*must)) return true;
    return for_each_cycle(
        g, mask, max_size - 1,
        [&](const std::vector<Vertex>&, VertexSet cycle) {
            const VertexSet rest = mask - cycle;
            const bool on_cycle = must && cycle.contains(*must);
            const std::function<bool(VertexSet)> emit = [&](VertexSet hub) { return visit(cycle | hub); };
            for (VertexSet comp : components(g, rest)) {
                if (must && !on_cycle && !comp.contains(*must)) continue;
                if (attachments(g, comp, cycle) < t) continue;
                HubEnumerator hubs(g, comp, cycle, t, max_size - cycle.size(), emit, poll);
                std::optional<Vertex> root;
                if (must && !on_cycle) root = must;
                if (!hubs.run(root)) return false;
            }
            return true;
        },
        poll);
}

std::optional<WheelWitness> find_wheel_witness(const Graph& g, VertexSet mask, int t,
                                               std::optional<int> budget, const Deadline& deadline) {
    DeadlinePoll poll(deadline);
    std::optional<WheelWitness> found;
    if (mask.size() < t + 1 || (budget && *budget < t + 1)) return found;
    const int max_len = budget ? *budget - 1 : mask.size() - 1;
    for_each_cycle(
        g, mask, max_len,
        [&](const std::vector<Vertex>& cycle, VertexSet cycle_set) {
            for (VertexSet comp : components(g, mask - cycle_set)) {
                if (attachments(g, comp, cycle_set) < t) continue;
                if (!budget) {
                    found = WheelWitness{cycle, shrink_hub(g, comp, cycle_set, t)};
                    return false;
                }
                const std::function<bool(VertexSet)> take = [&](VertexSet hub) {
                    found = WheelWitness{cycle, hub};
                    return false;
                };
                HubEnumerator hubs(g, comp, cycle_set, t, *budget - cycle_set.size(), take, poll);
                if (!hubs.run(std::nullopt)) return false;
            }
            return true;
        },
        poll);
    return found;
}

Model witness_to_model(const Graph& g, const WheelWitness& w, int t) {
    const int len = static_cast<int>(w.cycle.size());
    const VertexSet touched = g.neighbors(w.hub);
    std::vector<int> picks;
    for (int i = 0; i < len && static_cast<int>(picks.size()) < t; ++i) {
        if (touched.contains(w.cycle[i])) picks.push_back(i);
    }
    Model m;
    m.branch_sets.resize(static_cast<std::size_t>(t) + 1);
    m.branch_sets[WheelPattern::hub] = w.hub;
    for (int a = 0; a < t; ++a) {
        const int begin = picks[a];
        const int end = a + 1 < t ? picks[a + 1] : picks[0] + len;
        for (int i = begin; i < end; ++i) m.branch_sets[a + 1].insert(w.cycle[i % len]);
    }
    return m;
}

std::optional<Model> find_wheel_in(const Graph& g, VertexSet mask, int t, std::optional<int> budget,
                                   const Deadline& deadline) {
    if (budget) {
        auto w = find_wheel_witness(g, mask, t, budget, deadline);
        if (!w) return std::nullopt;
        return witness_to_model(g, *w, t);
    }
    const Kernel k = reduce_to_kernel(g, mask, true);
    if (k.alive.size() < t + 1) return std::nullopt;
    auto w = find_wheel_witness(k.graph, k.alive, t, std::nullopt, deadline);
    if (!w) return std::nullopt;
    Model m = witness_to_model(k.graph, *w, t);
    // Lift: the interior of a suppressed path joins the branch set of its
    // first endpoint whenever both endpoints lie in the model.
    std::array<int, kMaxVertices> owner{};
    owner.fill(-1);
    for (std::size_t x = 0; x < m.branch_sets.size(); ++x)
        for (Vertex v : m.branch_sets[x]) owner[v] = static_cast<int>(x);
    for (const auto& [edge, path] : k.paths) {
        const auto [a, b] = edge;
        if (owner[a] < 0 || owner[b] < 0) continue;
        for (Vertex v : path) m.branch_sets[owner[a]].insert(v);
    }
    return m;
}

bool wheel_minor_free(const Graph& g, VertexSet mask, int t, const Deadline& deadline) {
    const Kernel k = reduce_to_kernel(g, mask, false);
    if (k.alive.size() < t + 1) return true;
    if (t == 3) return false;
    return !find_wheel_witness(k.graph, k.alive, t, std::nullopt, deadline);
}

}  // namespace wheelep::detail
