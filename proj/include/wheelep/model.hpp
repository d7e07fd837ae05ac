#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wheelep/graph.hpp"

namespace wheelep {

/// An H-model: branch_sets[x] is the connected vertex set of G standing in
/// for pattern vertex x.
struct Model {
    std::vector<VertexSet> branch_sets;

    /// V(M), the union of all branch sets.
    VertexSet vertex_set() const;
    /// |V(M)|
    int size() const { return vertex_set().size(); }

    friend bool operator==(const Model&, const Model&) = default;
};

struct ModelCheck {
    enum class Failure { none, wrong_arity, empty_set, out_of_range, overlap, disconnected, missing_link };

    Failure failure = Failure::none;
    /// Human-readable falsifying witness, empty when valid.
    std::string witness;

    bool valid() const { return failure == Failure::none; }
    explicit operator bool() const { return valid(); }
};

/// Checks disjointness, connectivity and edge linkage of `m` as an
/// `h`-model in `g`.
ModelCheck verify_model(const Graph& g, const Graph& h, const Model& m);

/// Hub + rim wheel pattern W_t (t >= 3). Vertex 0 is the hub; rim vertices
/// 1..t are joined i ~ i+1 and t ~ 1.
class WheelPattern {
public:
    static constexpr Vertex hub = 0;

    explicit WheelPattern(int t);

    int t() const { return t_; }
    const Graph& graph() const { return graph_; }

private:
    int t_;
    Graph graph_;
};

/// Recognises a wheel pattern under any labelling. On success, returns t and
/// fills `relabel` with the h-vertex playing each standard WheelPattern vertex.
std::optional<int> as_wheel(const Graph& h, std::vector<Vertex>* relabel = nullptr);

/// {"0": [sorted vertices], "1": [...], ...}
nlohmann::json to_json(const Model& m);
Model model_from_json(const nlohmann::json& j);

}  // namespace wheelep
