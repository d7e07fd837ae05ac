#include "wheelep/packing.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "wheel_search.hpp"
#include "wheelep/algorithms.hpp"
#include "wheelep/errors.hpp"
#include "wheelep/minor.hpp"
#include "wheelep/treewidth.hpp"

namespace wheelep {

namespace {

constexpr double kSlack = 1e-9;

// Model-set oracle for one pattern on one host graph. All masks are host
// vertex sets; returned models use host ids.
class Family {
public:
    virtual ~Family() = default;

    virtual bool has_model(VertexSet mask) const = 0;
    virtual std::optional<Model> find(VertexSet mask) const = 0;
    // Supersets of every inclusion-minimal model set that contains u and has
    // at most max_size vertices; each emitted set contains a model.
    virtual bool for_each_candidate(VertexSet mask, Vertex u, int max_size,
                                    const std::function<bool(VertexSet)>& visit) const = 0;
    // Lower bound on |V(M)| for any model in the host.
    virtual int min_model_size() const = 0;
    // A subset carrying every minimal model set.
    virtual VertexSet reduce(VertexSet mask) const = 0;
    // Packing and covering numbers add up over components.
    virtual bool additive() const = 0;

    VertexSet minimal_set(VertexSet s) const {
        for (Vertex v : s) {
            if (has_model(s - VertexSet::singleton(v))) s.erase(v);
        }
        return s;
    }
};

class WheelFamily final : public Family {
public:
    WheelFamily(const Graph& g, int t, const Deadline& deadline, std::vector<Vertex> relabel = {})
        : g_(g), t_(t), deadline_(deadline), relabel_(std::move(relabel)) {
        const VertexSet core = two_core(g, g.vertices());
        if (detail::wheel_minor_free(g, core, t, deadline)) {
            min_size_ = g.order() + 1;
            return;
        }
        int b = t + 1;
        if (auto gi = girth(g)) b = std::max(b, *gi + 1);
        while (!detail::find_wheel_witness(g, core, t, b, deadline)) ++b;
        min_size_ = b;
    }

    bool has_model(VertexSet mask) const override { return !detail::wheel_minor_free(g_, mask, t_, deadline_); }
    std::optional<Model> find(VertexSet mask) const override {
        auto m = detail::find_wheel_in(g_, mask, t_, std::nullopt, deadline_);
        if (m && !relabel_.empty()) {
            Model mapped;
            mapped.branch_sets.resize(m->branch_sets.size());
            for (std::size_t i = 0; i < relabel_.size(); ++i) mapped.branch_sets[relabel_[i]] = m->branch_sets[i];
            m = std::move(mapped);
        }
        return m;
    }
    bool for_each_candidate(VertexSet mask, Vertex u, int max_size,
                            const std::function<bool(VertexSet)>& visit) const override {
        return detail::for_each_wheel_set(g_, mask, t_, max_size, u, visit, deadline_);
    }
    int min_model_size() const override { return min_size_; }
    VertexSet reduce(VertexSet mask) const override { return two_core(g_, mask); }
    bool additive() const override { return true; }

private:
    const Graph& g_;
    int t_;
    const Deadline& deadline_;
    std::vector<Vertex> relabel_;
    int min_size_ = 0;
};

class GenericFamily final : public Family {
public:
    GenericFamily(const Graph& g, const Graph& h, const Deadline& deadline)
        : g_(g), h_(h), deadline_(deadline), connected_(is_connected(h, h.vertices())) {
        min_degree_ = h.order() == 0 ? 0 : kMaxVertices;
        for (Vertex x : h.vertices()) min_degree_ = std::min(min_degree_, h.degree(x));
    }

    bool has_model(VertexSet mask) const override {
        auto it = cache_.find(mask.bits());
        if (it != cache_.end()) return it->second;
        const bool found = find(mask).has_value();
        cache_.emplace(mask.bits(), found);
        return found;
    }

    std::optional<Model> find(VertexSet mask) const override {
        if (mask.size() < h_.order()) return std::nullopt;
        std::vector<Vertex> origin;
        const Graph sub = g_.induced(mask, &origin);
        auto m = find_minor_model(sub, h_, deadline_);
        if (!m) return std::nullopt;
        for (VertexSet& s : m->branch_sets) {
            VertexSet mapped;
            for (Vertex v : s) mapped.insert(origin[v]);
            s = mapped;
        }
        return m;
    }

    bool for_each_candidate(VertexSet mask, Vertex u, int max_size,
                            const std::function<bool(VertexSet)>& visit) const override {
        if (!mask.contains(u)) return true;
        if (connected_) return grow(mask, VertexSet::singleton(u), VertexSet::singleton(u), max_size, visit);
        // Disconnected patterns: plain subset enumeration around u.
        const std::vector<Vertex> others = (mask - VertexSet::singleton(u)).to_vector();
        std::function<bool(std::size_t, VertexSet)> rec = [&](std::size_t i, VertexSet s) {
            if (s.size() >= h_.order() && has_model(s)) return visit(s);
            if (i == others.size() || s.size() >= max_size) return true;
            if (!rec(i + 1, s | VertexSet::singleton(others[i]))) return false;
            return rec(i + 1, s);
        };
        return rec(0, VertexSet::singleton(u));
    }

    int min_model_size() const override { return std::max(1, h_.order()); }
    VertexSet reduce(VertexSet mask) const override {
        return min_degree_ >= 2 ? two_core(g_, mask) : mask;
    }
    bool additive() const override { return connected_; }

private:
    // Connected sets containing the seed, each generated once; growth stops
    // at the first set holding a model.
    bool grow(VertexSet mask, VertexSet s, VertexSet banned, int max_size,
              const std::function<bool(VertexSet)>& visit) const {
        deadline_.check();
        if (s.size() >= h_.order() && has_model(s)) return visit(s);
        if (s.size() >= max_size) return true;
        VertexSet frontier = (g_.neighbors(s) & mask) - banned;
        for (Vertex v : frontier) {
            if (!grow(mask, s | VertexSet::singleton(v), banned | frontier.below(v) | VertexSet::singleton(v),
                      max_size, visit)) {
                return false;
            }
            banned.insert(v);
        }
        return true;
    }

    const Graph& g_;
    const Graph& h_;
    const Deadline& deadline_;
    bool connected_;
    int min_degree_ = 0;
    mutable std::unordered_map<std::uint64_t, bool> cache_;
};

std::unique_ptr<Family> make_family(const Graph& g, const Graph& h, const Deadline& deadline) {
    std::vector<Vertex> relabel;
    if (auto t = as_wheel(h, &relabel)) return std::make_unique<WheelFamily>(g, *t, deadline, std::move(relabel));
    return std::make_unique<GenericFamily>(g, h, deadline);
}

// Maximum packing of model sets, as a list of pairwise disjoint vertex sets.
class PackingSearch {
public:
    PackingSearch(const Graph& g, const Family& family, const Deadline& deadline)
        : graph_(g), family_(family), deadline_(deadline), s_min_(family.min_model_size()) {}

    std::vector<VertexSet> solve(VertexSet mask, int cap) {
        deadline_.check();
        if (cap <= 0) return {};
        mask = family_.reduce(mask);
        if (mask.size() < s_min_) return {};
        if (family_.additive()) {
            const auto comps = components(graph_, mask);
            if (comps.size() > 1) {
                std::vector<VertexSet> total;
                for (VertexSet c : comps) {
                    auto part = solve(c, cap - static_cast<int>(total.size()));
                    total.insert(total.end(), part.begin(), part.end());
                    if (static_cast<int>(total.size()) >= cap) break;
                }
                return total;
            }
        }
        auto hit = memo_.find(mask.bits());
        if (hit != memo_.end()) {
            const auto& [sets, exact] = hit->second;
            if (exact || static_cast<int>(sets.size()) >= cap) {
                return {sets.begin(), sets.begin() + std::min<std::ptrdiff_t>(cap, sets.size())};
            }
        }
        auto result = branch(mask, cap);
        const bool exact = static_cast<int>(result.size()) < cap;
        memo_[mask.bits()] = {result, exact};
        return result;
    }

private:
    int upper_bound(VertexSet mask) const {
        int ub = 0;
        for (VertexSet c : components(graph_, mask)) ub += c.size() / s_min_;
        return ub;
    }

    std::vector<VertexSet> branch(VertexSet mask, int cap) {
        auto model = family_.find(mask);
        if (!model) return {};
        cap = std::min(cap, upper_bound(mask));
        std::vector<VertexSet> best{model->vertex_set()};
        if (static_cast<int>(best.size()) >= cap) return best;
        const Vertex u = model->vertex_set().first();

        std::unordered_set<std::uint64_t> tried;
        family_.for_each_candidate(mask, u, mask.size() - s_min_, [&](VertexSet s) {
            const int need = static_cast<int>(best.size());
            if (s.size() > mask.size() - need * s_min_) return true;
            if (!tried.insert(s.bits()).second) return true;
            auto rest = solve(mask - s, cap - 1);
            if (1 + static_cast<int>(rest.size()) > need) {
                best.assign(1, s);
                best.insert(best.end(), rest.begin(), rest.end());
            }
            return static_cast<int>(best.size()) < cap;
        });
        if (static_cast<int>(best.size()) >= cap) return best;

        const VertexSet without = mask - VertexSet::singleton(u);
        if (upper_bound(family_.reduce(without)) > static_cast<int>(best.size())) {
            auto alt = solve(without, cap);
            if (alt.size() > best.size()) best = std::move(alt);
        }
        return best;
    }

    const Graph& graph_;
    const Family& family_;
    const Deadline& deadline_;
    int s_min_;
    std::unordered_map<std::uint64_t, std::pair<std::vector<VertexSet>, bool>> memo_;
};

// Implicit hitting set over lazily collected minimal model sets.
class TransversalSearch {
public:
    TransversalSearch(const Family& family, const Deadline& deadline) : family_(family), poll_(deadline) {}

    VertexSet solve(VertexSet mask, int lower) {
        constraints_.clear();
        auto first = family_.find(mask);
        if (!first) return {};
        constraints_.push_back(family_.minimal_set(first->vertex_set()));
        int s = std::max({lower, 1, disjoint_count(VertexSet{}, VertexSet{})});
        mask_ = mask;
        for (;; ++s) {
            if (dfs(VertexSet{}, VertexSet{}, s)) return solution_;
        }
    }

private:
    int disjoint_count(VertexSet x, VertexSet forbidden) const {
        VertexSet used;
        int count = 0;
        for (VertexSet c : constraints_) {
            if (c.intersects(x)) continue;
            const VertexSet open = c - forbidden;
            if (!open.intersects(used)) {
                used |= open;
                ++count;
            }
        }
        return count;
    }

    bool dfs(VertexSet x, VertexSet forbidden, int s) {
        poll_();
        for (;;) {
            const VertexSet* pick = nullptr;
            for (const VertexSet& c : constraints_) {
                if (c.intersects(x)) continue;
                if (!pick || (c - forbidden).size() < (*pick - forbidden).size()) pick = &c;
            }
            if (!pick) {
                auto m = family_.find(mask_ - x);
                if (!m) {
                    solution_ = x;
                    return true;
                }
                constraints_.push_back(family_.minimal_set(m->vertex_set()));
                continue;
            }
            if (x.size() >= s) return false;
            const VertexSet open = *pick - forbidden;
            if (open.empty()) return false;
            if (x.size() + disjoint_count(x, forbidden) > s) return false;
            VertexSet banned = forbidden;
            for (Vertex v : open) {
                if (dfs(x | VertexSet::singleton(v), banned, s)) return true;
                banned.insert(v);
            }
            return false;
        }
    }

    const Family& family_;
    DeadlinePoll poll_;
    VertexSet mask_;
    std::vector<VertexSet> constraints_;
    VertexSet solution_;
};

Model realize(const Graph& g, const Graph& h, const Family& family, VertexSet s) {
    auto m = family.find(s);
    if (!m) throw std::logic_error("packing: model set lost its model");
    if (!verify_model(g, h, *m)) throw std::logic_error("packing: realized model failed verification");
    return *m;
}

Packing nu_with(const Graph& g, const Graph& h, const Family& family, std::optional<int> cap,
                const Deadline& deadline) {
    Packing p;
    if (cap && *cap <= 0) {
        p.capped = true;
        return p;
    }
    PackingSearch search(g, family, deadline);
    const int limit = cap.value_or(g.order() + 1);
    for (VertexSet s : search.solve(g.vertices(), limit)) p.models.push_back(realize(g, h, family, s));
    p.value = static_cast<int>(p.models.size());
    p.capped = cap && p.value >= *cap;
    return p;
}

Transversal tau_with(const Graph& g, const Family& family, int lower, const Deadline& deadline) {
    Transversal x;
    const VertexSet core = family.reduce(g.vertices());
    std::vector<VertexSet> parts;
    if (family.additive()) {
        parts = components(g, core);
    } else {
        parts.push_back(core);
    }
    if (parts.size() > 1) lower = 0;
    for (VertexSet part : parts) {
        TransversalSearch search(family, deadline);
        x.hitting_set |= search.solve(part, lower);
    }
    x.value = x.hitting_set.size();
    return x;
}

}  // namespace

BoundingFunction::BoundingFunction(double gamma) : gamma_(gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("bounding function: gamma must be positive");
}

double BoundingFunction::operator()(long k) const {
    if (k <= 0) return 0.0;
    const double kd = static_cast<double>(k);
    return gamma_ * kd * std::log2(kd + 1.0);
}

Packing nu_exact(const Graph& g, const Graph& h, std::optional<int> cap, const Deadline& deadline) {
    auto family = make_family(g, h, deadline);
    return nu_with(g, h, *family, cap, deadline);
}

Transversal tau_exact(const Graph& g, const Graph& h, const Deadline& deadline) {
    auto family = make_family(g, h, deadline);
    return tau_with(g, *family, 0, deadline);
}

bool certify_packing(const Graph& g, const Graph& h, const Packing& p) {
    if (p.value != static_cast<int>(p.models.size())) return false;
    VertexSet used;
    for (const Model& m : p.models) {
        if (!verify_model(g, h, m)) return false;
        const VertexSet s = m.vertex_set();
        if (s.intersects(used)) return false;
        used |= s;
    }
    return true;
}

bool certify_transversal(const Graph& g, const Graph& h, const Transversal& x, const Deadline& deadline) {
    if (x.value != x.hitting_set.size()) return false;
    if (!x.hitting_set.subset_of(g.vertices())) return false;
    return !find_minor_model(g.induced(g.vertices() - x.hitting_set), h, deadline).has_value();
}

bool violates(int nu, int tau, const BoundingFunction& f) { return tau > f(nu) + kSlack; }

EpReport ep_check(const Graph& g, int t, const BoundingFunction& f, const Deadline& deadline) {
    const auto start = std::chrono::steady_clock::now();
    const Graph h = WheelPattern(t).graph();
    EpReport r;
    r.n = g.order();
    r.m = g.size();
    r.t = t;
    r.gamma = f.gamma();
    WheelFamily family(g, t, deadline);
    r.packing = nu_with(g, h, family, std::nullopt, deadline);
    r.transversal = tau_with(g, family, r.packing.value, deadline);
    r.nu = r.packing.value;
    r.tau = r.transversal.value;
    if (r.nu > r.tau) throw std::logic_error("ep_check: weak duality violated");
    r.bound = f(r.nu);
    r.satisfied = !violates(r.nu, r.tau, f);
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

namespace {

struct NuTau {
    int nu = 0;
    int tau = 0;
};

// nu and tau of g, or nullopt once nu exceeds nu_limit.
std::optional<NuTau> measure(const Graph& g, int t, std::optional<int> nu_limit, const Deadline& deadline) {
    const Graph h = WheelPattern(t).graph();
    WheelFamily family(g, t, deadline);
    std::optional<int> cap;
    if (nu_limit) cap = *nu_limit + 1;
    const Packing p = nu_with(g, h, family, cap, deadline);
    if (nu_limit && p.value > *nu_limit) return std::nullopt;
    const Transversal x = tau_with(g, family, p.value, deadline);
    return NuTau{p.value, x.value};
}

}  // namespace

std::optional<Violation> minimize_candidate(const Graph& g, int t, const BoundingFunction& f,
                                            const Deadline& deadline) {
    auto now = measure(g, t, std::nullopt, deadline);
    if (!violates(now->nu, now->tau, f)) return std::nullopt;
    Graph cur = g;
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (const MinorOp& op : all_minor_ops(cur)) {
            Graph next = apply_minor_op(cur, op);
            auto m = measure(next, t, now->nu, deadline);
            if (!m || !violates(m->nu, m->tau, f)) continue;
            cur = std::move(next);
            now = m;
            progressed = true;
            break;
        }
    }
    return Violation{cur, now->nu, now->tau, f(now->nu)};
}

bool locally_minimal(const Violation& v, int t, const BoundingFunction& f, const Deadline& deadline) {
    if (!violates(v.nu, v.tau, f)) return false;
    for (const MinorOp& op : all_minor_ops(v.graph)) {
        auto m = measure(apply_minor_op(v.graph, op), t, v.nu, deadline);
        if (m && violates(m->nu, m->tau, f)) return false;
    }
    return true;
}

CeilingReport ceiling_check(const Graph& g, int t, int k, const BoundingFunction& f, int c, int treewidth_cap) {
    if (k < 1) throw PreconditionError("ceiling_check: k must be at least 1");
    const Graph h = WheelPattern(t).graph();
    const Packing p = nu_exact(g, h, k);
    if (p.value >= k) throw PreconditionError("ceiling_check: graph packs k disjoint wheel models");
    CeilingReport r;
    r.k = k;
    r.c = c;
    r.treewidth = treewidth_exact(g, treewidth_cap);
    r.transversal = tau_exact(g, h);
    r.f_k_minus_1 = f(k - 1);
    r.residual_treewidth = treewidth_exact(g.induced(g.vertices() - r.transversal.hitting_set), treewidth_cap);
    r.transversal_within_f = r.transversal.value <= r.f_k_minus_1 + kSlack;
    r.residual_within_c = r.residual_treewidth <= c;
    r.additive_holds = r.treewidth <= c + r.transversal.value;
    r.ceiling_holds = r.treewidth <= r.f_k_minus_1 + c + kSlack;
    return r;
}

double monotone_bound(const BoundingFunction& f, int q, int c, int k) {
    if (q < 1 || c < 0 || k < 0) throw std::invalid_argument("monotone_bound: need q >= 1, c >= 0, k >= 0");
    return f(k) + static_cast<double>(q * k - 1) * (c + 1);
}

}  // namespace wheelep
