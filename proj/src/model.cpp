#include "wheelep/model.hpp"

#include <algorithm>
#include <stdexcept>

#include "wheelep/algorithms.hpp"

namespace wheelep {

VertexSet Model::vertex_set() const {
    VertexSet all;
    for (VertexSet s : branch_sets) all |= s;
    return all;
}

ModelCheck verify_model(const Graph& g, const Graph& h, const Model& m) {
    using F = ModelCheck::Failure;
    auto fail = [](F f, std::string w) { return ModelCheck{f, std::move(w)}; };
    if (static_cast<int>(m.branch_sets.size()) != h.order()) {
        return fail(F::wrong_arity, "model has " + std::to_string(m.branch_sets.size()) +
                                        " branch sets for a pattern of order " +
                                        std::to_string(h.order()));
    }
    for (Vertex x = 0; x < h.order(); ++x) {
        const VertexSet s = m.branch_sets[x];
        if (s.empty()) return fail(F::empty_set, "branch set " + std::to_string(x) + " is empty");
        if (!s.subset_of(g.vertices())) {
            return fail(F::out_of_range, "branch set " + std::to_string(x) + " leaves the host");
        }
    }
    for (Vertex x = 0; x < h.order(); ++x) {
        for (Vertex y = x + 1; y < h.order(); ++y) {
            const VertexSet both = m.branch_sets[x] & m.branch_sets[y];
            if (!both.empty()) {
                return fail(F::overlap, "branch sets " + std::to_string(x) + " and " +
                                            std::to_string(y) + " share vertex " +
                                            std::to_string(both.first()));
            }
        }
    }
    for (Vertex x = 0; x < h.order(); ++x) {
        if (!is_connected(g, m.branch_sets[x])) {
            return fail(F::disconnected, "branch set " + std::to_string(x) + " is disconnected");
        }
    }
    for (auto [x, y] : h.edges()) {
        if (!g.neighbors(m.branch_sets[x]).intersects(m.branch_sets[y])) {
            return fail(F::missing_link, "no edge between branch sets " + std::to_string(x) +
                                             " and " + std::to_string(y));
        }
    }
    return {};
}

WheelPattern::WheelPattern(int t) : t_(t) {
    if (t < 3) throw std::invalid_argument("wheel needs t >= 3, got " + std::to_string(t));
    if (t + 1 > kMaxVertices) throw std::length_error("wheel too large");
    graph_ = Graph(t + 1);
    for (Vertex i = 1; i <= t; ++i) {
        graph_.add_edge(hub, i);
        graph_.add_edge(i, i == t ? 1 : i + 1);
    }
}

std::optional<int> as_wheel(const Graph& h, std::vector<Vertex>* relabel) {
    const int n = h.order();
    if (n < 4 || h.size() != 2 * (n - 1)) return std::nullopt;
    for (Vertex c = 0; c < n; ++c) {
        if (h.degree(c) != n - 1) continue;
        VertexSet rim = h.vertices();
        rim.erase(c);
        bool cycle = is_connected(h, rim);
        for (Vertex v : rim) cycle = cycle && (h.neighbors(v) & rim).size() == 2;
        if (!cycle) continue;
        if (relabel) {
            relabel->assign(1, c);
            Vertex prev = -1;
            Vertex cur = rim.first();
            while (static_cast<int>(relabel->size()) < n) {
                relabel->push_back(cur);
                const VertexSet nb = h.neighbors(cur) & rim;
                Vertex next = -1;
                for (Vertex w : nb) {
                    if (w != prev && std::find(relabel->begin() + 1, relabel->end(), w) == relabel->end()) {
                        next = w;
                        break;
                    }
                }
                prev = cur;
                cur = next;
            }
        }
        return n - 1;
    }
    return std::nullopt;
}

nlohmann::json to_json(const Model& m) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t x = 0; x < m.branch_sets.size(); ++x) {
        j[std::to_string(x)] = m.branch_sets[x].to_vector();
    }
    return j;
}

Model model_from_json(const nlohmann::json& j) {
    Model m;
    m.branch_sets.resize(j.size());
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto x = std::stoul(it.key());
        if (x >= m.branch_sets.size()) throw std::invalid_argument("model json: bad pattern vertex " + it.key());
        for (int v : it.value()) {
            if (v < 0 || v >= kMaxVertices) throw std::invalid_argument("model json: bad vertex");
            m.branch_sets[x].insert(v);
        }
    }
    return m;
}

}  // namespace wheelep
