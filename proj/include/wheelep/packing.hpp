#pragma once

#include <optional>
#include <vector>

#include "wheelep/deadline.hpp"
#include "wheelep/graph.hpp"
#include "wheelep/model.hpp"

namespace wheelep {

/// f(k) = gamma * k * log2(k + 1); f(0) = 0.
class BoundingFunction {
public:
    explicit BoundingFunction(double gamma);

    double gamma() const { return gamma_; }
    double operator()(long k) const;

private:
    double gamma_;
};

/// Pairwise vertex-disjoint models.
struct Packing {
    std::vector<Model> models;
    int value = 0;
    /// The search stopped at the requested cap; value is a lower bound.
    bool capped = false;
};

struct Transversal {
    VertexSet hitting_set;
    int value = 0;
};

/// Maximum number of pairwise disjoint h-models (nu_H).
///
/// Branch and bound: take the smallest vertex u of a model in the current
/// graph, then either some packed model uses u (branch over candidate model
/// sets containing u) or u is deleted. With `cap`, stops once cap models are
/// packed and sets `capped`.
Packing nu_exact(const Graph& g, const Graph& h, std::optional<int> cap = std::nullopt,
                 const Deadline& deadline = {});

/// Minimum h-transversal (tau_H), by iterative deepening on |X| over a lazily
/// grown list of inclusion-minimal models that X must hit.
Transversal tau_exact(const Graph& g, const Graph& h, const Deadline& deadline = {});

/// Independent re-checks with the generic minor engine: a packing must be
/// valid pairwise-disjoint models; G - X must have no h-model.
bool certify_packing(const Graph& g, const Graph& h, const Packing& p);
bool certify_transversal(const Graph& g, const Graph& h, const Transversal& x,
                         const Deadline& deadline = {});

struct EpReport {
    int n = 0;
    int m = 0;
    int t = 0;
    int nu = 0;
    int tau = 0;
    double bound = 0.0;
    double gamma = 0.0;
    bool satisfied = false;
    Packing packing;
    Transversal transversal;
    double runtime_ms = 0.0;
};

/// nu, tau for W_t and the comparison tau <= f(nu). Throws std::logic_error
/// if weak duality nu <= tau ever fails.
EpReport ep_check(const Graph& g, int t, const BoundingFunction& f, const Deadline& deadline = {});

/// tau > f(nu) with a 1e-9 slack against rounding in f.
bool violates(int nu, int tau, const BoundingFunction& f);

struct Violation {
    Graph graph;
    int nu = 0;
    int tau = 0;
    double bound = 0.0;
};

/// Locally minor-minimal violator of tau_{W_t} <= f(nu_{W_t}) reached from g,
/// or nullopt if g satisfies the bound. Ops are tried delete-vertex,
/// delete-edge, contract-edge in ascending id order; the first one that keeps
/// the violation without raising nu is taken and the scan restarts.
std::optional<Violation> minimize_candidate(const Graph& g, int t, const BoundingFunction& f,
                                            const Deadline& deadline = {});

/// True iff no single minor operation of v.graph still violates with nu no
/// larger than v.nu.
bool locally_minimal(const Violation& v, int t, const BoundingFunction& f, const Deadline& deadline = {});

struct CeilingReport {
    int k = 0;
    int c = 0;
    int treewidth = 0;
    Transversal transversal;
    double f_k_minus_1 = 0.0;
    int residual_treewidth = 0;        // tw(G - X)
    bool transversal_within_f = false;  // |X| <= f(k-1)
    bool residual_within_c = false;     // tw(G - X) <= c
    bool additive_holds = false;        // tw(G) <= c + |X|
    bool ceiling_holds = false;         // tw(G) <= f(k-1) + c
};

/// Numerical replay of the treewidth ceiling for (k * W_t)-minor-free graphs.
/// Throws PreconditionError if g packs k disjoint W_t-models or k < 1.
CeilingReport ceiling_check(const Graph& g, int t, int k, const BoundingFunction& f, int c,
                            int treewidth_cap = 16);

/// f(k) + (q k - 1)(c + 1), the bounding function inherited by a minor of
/// the pattern with q components. Throws std::invalid_argument unless
/// q >= 1, c >= 0 and k >= 0.
double monotone_bound(const BoundingFunction& f, int q, int c, int k);

}  // namespace wheelep
