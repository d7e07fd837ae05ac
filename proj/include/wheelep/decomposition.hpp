#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wheelep/graph.hpp"
#include "wheelep/menger.hpp"
#include "wheelep/model.hpp"
#include "wheelep/packing.hpp"

namespace wheelep {

/// The nondecreasing function g used to derive c1 and p. Arguments are
/// rounded up to an integer before evaluation.
struct GFunction {
    std::string name;
    std::function<double(double)> eval;
    /// Stand-in for an uncomputed function; reports carry this flag.
    bool placeholder = false;

    /// g(x) = x^2 + x + 2, flagged as placeholder.
    static GFunction standard();
    /// g(x) = x + 1
    static GFunction successor();
    /// g(x) = a x + b
    static GFunction affine(double a, double b);
    static GFunction by_name(const std::string& name);
};

struct ConstantsLedger {
    int t = 3;
    double phi = 1.0;
    double phi_prime = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    std::string g_name;
    bool g_placeholder = false;
    std::int64_t c1 = 0;
    std::int64_t p = 0;
    std::int64_t c2 = 0;
    double sigma = 0.0;
    double gamma = 0.0;
    /// Constants set directly instead of derived from g; the derivation
    /// invariants are not expected to hold.
    bool toy = false;

    BoundingFunction f() const { return BoundingFunction(gamma); }
};

/// Evaluates c1 = g(2 t phi^2), p = g(2 c1 phi^2), c2 = 4p,
/// sigma = max{3 phi' c2, 2 c2 + t p, (2 t^2 p + 1)(c2 + 2 c1 phi^2)},
/// gamma = sigma (beta + log2 alpha).
/// Throws std::invalid_argument on t < 3, phi or phi' < 1, a g that is not
/// increasing past the identity or not nondecreasing on probed points, a
/// broken t < c1 < p < c2 chain, or gamma <= 0; std::overflow_error when a
/// constant leaves the exactly representable integer range.
ConstantsLedger build_ledger(int t, double phi, double phi_prime, double alpha, double beta, const GFunction& g);

/// Directly specified constants for desk-scale runs. sigma defaults to the
/// formula value; gamma is derived from sigma as usual (falling back to
/// sigma when beta + log2 alpha <= 0).
ConstantsLedger toy_ledger(int t, std::int64_t c1, std::int64_t p, std::int64_t c2, double phi = 1.0,
                           double phi_prime = 1.0, std::optional<double> sigma = std::nullopt);

/// Failed derivation invariants, empty when all hold.
std::vector<std::string> ledger_violations(const ConstantsLedger& l);

nlohmann::json to_json(const ConstantsLedger& l);

enum class PieceKind { cycle, path, rest };

/// Cycle pieces list their vertices in cyclic order, path pieces from one
/// end to the other. Piece ids number cycles first, then paths, then rest.
struct PieceDecomposition {
    std::vector<std::vector<Vertex>> cycles;
    std::vector<std::vector<Vertex>> paths;
    std::vector<VertexSet> rest;

    int piece_count() const { return static_cast<int>(cycles.size() + paths.size() + rest.size()); }
    PieceKind kind(int piece) const;
    VertexSet vertices(int piece) const;
    /// Piece id of every vertex of an n-vertex host.
    std::vector<int> piece_of(int n) const;

    friend bool operator==(const PieceDecomposition&, const PieceDecomposition&) = default;
};

/// Greedy inclusion-maximal cycles with length in [c1, c2] (for each vertex in
/// ascending order, a shortest qualifying cycle through it), then paths with
/// exactly p edges in the remainder, then the components left over.
PieceDecomposition decompose(const Graph& g, const ConstantsLedger& ledger);

struct DecompositionCheck {
    std::vector<std::string> failures;
    /// Checks skipped because a vertex set was too large for exhaustive search.
    std::vector<std::string> skipped;

    bool ok() const { return failures.empty(); }
};

/// Independent validation of every decomposition invariant. Maximality and
/// rest-piece path bounds use subset dynamic programming over vertex sets of
/// at most `exhaustive_limit` vertices.
DecompositionCheck check_decomposition(const Graph& g, const PieceDecomposition& d, const ConstantsLedger& ledger,
                                       int exhaustive_limit = 22);

using PiecePair = std::pair<int, int>;

struct LabeledEdge {
    int a = 0;
    int b = 0;
    /// Rest-piece id for star edges added on behalf of a noncentral piece.
    std::optional<int> label;

    friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

/// H_s and H_b over central pieces. Edges are piece-id pairs with a < b.
struct AuxiliaryGraphs {
    std::vector<int> central;
    std::vector<PiecePair> touch;
    std::vector<LabeledEdge> hs_edges;
    std::vector<PiecePair> hb_edges;
    /// Star centre chosen for each processed noncentral piece.
    std::map<int, int> star_center;
    /// Noncentral pieces in processing order with their Z_R sets.
    std::vector<std::pair<int, std::vector<int>>> processed;

    /// Index of a piece in `central`, or -1.
    int central_index(int piece) const;
    /// H_s / H_b as graphs on central indices 0..|central|-1.
    Graph hs_graph() const;
    Graph hb_graph() const;

    friend bool operator==(const AuxiliaryGraphs&, const AuxiliaryGraphs&) = default;
};

/// Touching central pairs seed both graphs; then each noncentral rest piece
/// R (ascending id) that touches two central pieces not yet adjacent in H_b
/// turns Z_R into a clique of H_b and adds to H_s the R-labelled star from the
/// piece of Z_R with most new H_b edges (ties to the smaller id).
AuxiliaryGraphs build_auxiliary(const Graph& g, const PieceDecomposition& d, double phi);

/// Structural checks: H_s within H_b, vertex set, rest pieces never touch,
/// label stars, and clique closure. Empty when all hold.
std::vector<std::string> check_auxiliary(const Graph& g, const PieceDecomposition& d, const AuxiliaryGraphs& aux,
                                         double phi);

struct LiftResult {
    Model model;
    /// |V(M_s)|, the number of H_s vertices of the source model.
    int ms_size = 0;
    int ms_edges = 0;
    /// Path interior vertices added while realising M_s edges.
    int path_vertices = 0;
};

/// Realises a W_t model of H_s (branch sets over central indices) as a W_t
/// model of G. Throws std::invalid_argument for an invalid source model and
/// std::logic_error if a required linking edge or path is missing.
LiftResult lift_model(const Graph& g, const PieceDecomposition& d, const AuxiliaryGraphs& aux, const Model& ms,
                      int t);

struct ClaimsReport {
    double avg_degree_hs = 0.0;
    double avg_degree_hb = 0.0;
    bool degree_ratio_holds = true;         // avg(H_b) <= phi avg(H_s)
    std::vector<int> low_degree_central_rest;  // central rest pieces with H_s degree < 2 phi
    bool hs_within_hb = true;
    /// Rest pieces carrying a W_t model, with the model as witness.
    std::vector<std::pair<int, Model>> rest_with_wheel;
    /// Small-model audit: models of size <= sigma log2 n.
    int small_model_budget = 0;
    bool small_model_checked = false;
    std::string small_model_skip_reason;
    std::optional<Model> small_model;
    bool g_placeholder = false;

    bool all_pass() const {
        return degree_ratio_holds && low_degree_central_rest.empty() && hs_within_hb && rest_with_wheel.empty() &&
               (!small_model_checked || !small_model);
    }
};

ClaimsReport audit_claims(const Graph& g, const PieceDecomposition& d, const AuxiliaryGraphs& aux,
                          const ConstantsLedger& ledger, int small_model_max_n = 40);

struct NeighborSeparation {
    int neighbor = 0;
    VertexSet region;  // V(K) + V(K') + V(R_{K,K'})
    std::vector<int> via;  // R_{K,K'}
    PathsAndSeparator menger;
    bool below_q = false;
    bool separator_verified = false;
};

struct SeparatorReport {
    int piece = 0;
    int q = 0;
    std::vector<NeighborSeparation> per_neighbor;
    VertexSet x;
    VertexSet j;
    double x_bound = 0.0;  // 2 q phi^2
    bool x_within_bound = false;
    bool all_below_q = false;
    bool j_separated = false;
};

/// Per H_b neighbour K' of K, a minimum K-K' separator in G_{K'}; their union
/// X and the part J of G - X meeting K. Throws PreconditionError unless K is
/// a central cycle or path piece.
SeparatorReport separator_audit(const Graph& g, const PieceDecomposition& d, const AuxiliaryGraphs& aux,
                                const ConstantsLedger& ledger, int piece);

/// {cycles, paths, rest, central, hs: [[a, b, label|null]], hb: [[a, b]]}
nlohmann::json to_json(const PieceDecomposition& d, const AuxiliaryGraphs& aux);
nlohmann::json to_json(const ClaimsReport& r);
nlohmann::json to_json(const SeparatorReport& r);
/// Graphviz text for H_s (edge labels are rest-piece ids) and H_b.
std::string hs_to_dot(const AuxiliaryGraphs& aux);
std::string hb_to_dot(const AuxiliaryGraphs& aux);

}  // namespace wheelep
