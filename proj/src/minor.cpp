#include "wheelep/minor.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "wheel_search.hpp"
#include "wheelep/algorithms.hpp"

namespace wheelep {

namespace {

class GenericSearch {
public:
    GenericSearch(const Graph& g, const Graph& h, const Deadline& deadline)
        : g_(g), h_(h), poll_(deadline), sets_(static_cast<std::size_t>(h.order())) {
        // Placement order: max degree first, then most placed neighbours.
        std::vector<bool> placed(static_cast<std::size_t>(h.order()), false);
        for (int i = 0; i < h.order(); ++i) {
            Vertex pick = -1;
            int pick_links = -1;
            for (Vertex x = 0; x < h.order(); ++x) {
                if (placed[x]) continue;
                int links = 0;
                for (Vertex y : h.neighbors(x)) links += placed[y] ? 1 : 0;
                if (pick < 0 || links > pick_links || (links == pick_links && h.degree(x) > h.degree(pick))) {
                    pick = x;
                    pick_links = links;
                }
            }
            placed[pick] = true;
            position_.push_back(pick);
        }
        rank_.assign(static_cast<std::size_t>(h.order()), 0);
        for (int i = 0; i < h.order(); ++i) rank_[position_[i]] = i;
    }

    std::optional<Model> run() {
        if (h_.order() > g_.order() || h_.size() > g_.size()) return std::nullopt;
        if (h_.order() == 0) return Model{};
        if (!place(0, g_.vertices())) return std::nullopt;
        return Model{sets_};
    }

private:
    // Pattern neighbours of x that are placed before index i.
    std::vector<Vertex> placed_neighbors(Vertex x, int i) const {
        std::vector<Vertex> out;
        for (Vertex y : h_.neighbors(x))
            if (rank_[y] < i) out.push_back(y);
        return out;
    }

    bool place(int i, VertexSet pool) {
        if (i == h_.order()) return true;
        const Vertex x = position_[i];
        const auto required = placed_neighbors(x, i);
        const int reserve = h_.order() - i - 1;
        if (required.empty()) {
            for (Vertex r : pool) {
                if (!grow(i, x, required, VertexSet::singleton(r), pool.below(r), pool, reserve)) continue;
                return true;
            }
            return false;
        }
        const VertexSet anchor = g_.neighbors(sets_[required.front()]) & pool;
        for (Vertex r : anchor) {
            if (grow(i, x, required, VertexSet::singleton(r), anchor.below(r), pool, reserve)) return true;
        }
        return false;
    }

    bool grow(int i, Vertex x, const std::vector<Vertex>& required, VertexSet s, VertexSet forbidden,
              VertexSet pool, int reserve) {
        poll_();
        const VertexSet touch = g_.neighbors(s);
        bool linked = true;
        for (Vertex y : required) linked = linked && touch.intersects(sets_[y]);
        if (linked) {
            sets_[x] = s;
            const VertexSet rest = pool - s;
            if (feasible(i + 1, rest) && place(i + 1, rest)) return true;
        }
        if ((pool - s).size() <= reserve) return false;
        const VertexSet cand = (touch & pool) - forbidden;
        VertexSet excluded = forbidden;
        for (Vertex v : cand) {
            VertexSet next = s;
            next.insert(v);
            if (grow(i, x, required, next, excluded, pool, reserve)) return true;
            excluded.insert(v);
        }
        return false;
    }

    // Each unplaced pattern vertex needs one component of the pool touching
    // all of its placed neighbours.
    bool feasible(int i, VertexSet pool) const {
        if (pool.size() < h_.order() - i) return false;
        if (i == h_.order()) return true;
        const auto comps = components(g_, pool);
        for (int j = i; j < h_.order(); ++j) {
            const auto req = placed_neighbors(position_[j], i);
            bool ok = false;
            for (VertexSet c : comps) {
                const VertexSet touch = g_.neighbors(c);
                bool all = true;
                for (Vertex y : req) all = all && touch.intersects(sets_[y]);
                if (all) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
        return true;
    }

    const Graph& g_;
    const Graph& h_;
    DeadlinePoll poll_;
    std::vector<Vertex> position_;
    std::vector<int> rank_;
    std::vector<VertexSet> sets_;
};

}  // namespace

Graph complete_graph(int n) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

std::optional<Model> find_minor_model(const Graph& g, const Graph& h, const Deadline& deadline) {
    GenericSearch search(g, h, deadline);
    auto m = search.run();
    if (m && !verify_model(g, h, *m)) throw std::logic_error("find_minor_model produced an invalid model");
    return m;
}

std::optional<Model> find_wheel_model(const Graph& g, int t, std::optional<int> budget, const Deadline& deadline) {
    const WheelPattern pattern(t);
    auto m = detail::find_wheel_in(g, g.vertices(), t, budget, deadline);
    if (m) {
        if (auto check = verify_model(g, pattern.graph(), *m); !check) {
            throw std::logic_error("find_wheel_model produced an invalid model: " + check.witness);
        }
        if (budget && m->size() > *budget) throw std::logic_error("find_wheel_model exceeded its budget");
    }
    return m;
}

namespace {

// Peels minimum-degree vertices and keeps the prefix of maximum density.
VertexSet densest_region(const Graph& g) {
    VertexSet alive = g.vertices();
    VertexSet best = alive;
    double best_density = -1.0;
    int edges = g.size();
    while (!alive.empty()) {
        const double density = static_cast<double>(edges) / alive.size();
        if (density > best_density) {
            best_density = density;
            best = alive;
        }
        Vertex pick = alive.first();
        for (Vertex v : alive)
            if ((g.neighbors(v) & alive).size() < (g.neighbors(pick) & alive).size()) pick = v;
        edges -= (g.neighbors(pick) & alive).size();
        alive.erase(pick);
    }
    return best;
}

// Seeds t branch sets greedily from `first`, then links each non-adjacent
// pair by a shortest path through unused vertices.
std::optional<Model> greedy_clique(const Graph& g, VertexSet region, Vertex first, int t) {
    std::vector<VertexSet> sets{VertexSet::singleton(first)};
    VertexSet used = sets.front();
    while (static_cast<int>(sets.size()) < t) {
        Vertex pick = -1;
        int score = -1;
        for (Vertex v : region - used) {
            int s = 0;
            for (VertexSet b : sets) s += g.neighbors(v).intersects(b) ? 1 : 0;
            s = s * kMaxVertices + (g.neighbors(v) & region).size();
            if (s > score) {
                score = s;
                pick = v;
            }
        }
        if (pick < 0) return std::nullopt;
        sets.push_back(VertexSet::singleton(pick));
        used.insert(pick);
    }
    for (int i = 0; i < t; ++i) {
        for (int j = i + 1; j < t; ++j) {
            if (g.neighbors(sets[i]).intersects(sets[j])) continue;
            const VertexSet free = g.vertices() - used;
            const auto path = shortest_path(g, sets[i], g.neighbors(sets[j]) & free, free | sets[i]);
            if (path.empty()) return std::nullopt;
            for (Vertex v : path) {
                sets[i].insert(v);
                used.insert(v);
            }
        }
    }
    return Model{sets};
}

}  // namespace

std::optional<Model> small_clique_model(const Graph& g, int t, const Deadline& deadline) {
    if (t < 0) throw std::invalid_argument("small_clique_model: t must be >= 0");
    const Graph clique = complete_graph(t);
    if (t == 0) return Model{};
    if (g.order() < t) return std::nullopt;
    const VertexSet region = densest_region(g);
    std::optional<Model> best;
    for (Vertex first : region) {
        deadline.check();
        auto m = greedy_clique(g, region, first, t);
        if (m && verify_model(g, clique, *m) && (!best || m->size() < best->size())) best = m;
    }
    if (!best) {
        // Exact fallback: dense region first, then the whole graph.
        std::vector<Vertex> origin;
        const Graph sub = g.induced(region, &origin);
        if (auto m = find_minor_model(sub, clique, deadline)) {
            Model lifted;
            for (VertexSet s : m->branch_sets) {
                VertexSet mapped;
                for (Vertex v : s) mapped.insert(origin[v]);
                lifted.branch_sets.push_back(mapped);
            }
            best = lifted;
        } else if (region != g.vertices()) {
            best = find_minor_model(g, clique, deadline);
        }
    }
    if (best && !verify_model(g, clique, *best)) throw std::logic_error("small_clique_model: invalid model");
    return best;
}

}  // namespace wheelep
