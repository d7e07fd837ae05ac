// wheelep: command-line front end for the packing/covering workbench.
//
//   wheelep detect    --gen wheel:t=4 --t 4
//   wheelep ep        --gen rrg:n=24,d=3,g=6 --seed 1 --count 20 --csv out.csv
//   wheelep decompose --gen grid:r=5 --ledger c1=4,p=3,c2=16 --json d.json --dot d.dot
//   wheelep minimize  --gen complete:n=6 --gamma 0.1
//
// Exit codes: 0 found / satisfied, 1 not found / violated, 2 usage or input
// error, 3 deadline exceeded.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wheelep/decomposition.hpp"
#include "wheelep/errors.hpp"
#include "wheelep/graph_io.hpp"
#include "wheelep/instances.hpp"
#include "wheelep/minor.hpp"
#include "wheelep/packing.hpp"
#include "wheelep/report.hpp"

using namespace wheelep;
using nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kNegative = 1, kUsage = 2, kDeadline = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string input;
    std::vector<std::string> gens;
    std::string format;
    int t = 3;
    double gamma = 1.0;
    std::string ledger;
    int max_n = kMaxVertices;
    std::optional<double> deadline;
    std::string json_path;
    std::string csv_path;
    std::string dot_path;
    std::optional<std::uint64_t> seed;
    int count = 1;
    int jobs = 1;
    std::optional<int> budget;
};

struct Instance {
    int index = 0;
    std::string family;
    std::string source;
    Graph graph{0};
};

std::string family_key(const FamilySpec& spec) {
    std::string s = spec.to_string();
    const auto at = s.find(",seed=");
    if (at != std::string::npos) {
        const auto end = s.find(',', at + 1);
        s.erase(at, end == std::string::npos ? std::string::npos : end - at);
    }
    return s;
}

std::vector<Instance> load_instances(const RunConfig& cfg) {
    if (!cfg.gens.empty() && !cfg.input.empty()) throw UsageError("give either --input or --gen, not both");
    if (cfg.count < 1) throw UsageError("--count must be positive");
    if (cfg.max_n < 1) throw UsageError("--max-n must be positive");
    std::vector<Instance> out;
    if (!cfg.gens.empty()) {
        for (const std::string& text : cfg.gens) {
            const FamilySpec base = parse_family_spec(text);
            const int copies = base.seeded() ? cfg.count : 1;
            std::uint64_t seed0 = 0;
            if (cfg.seed) {
                seed0 = *cfg.seed;
            } else if (const auto* g = std::get_if<GnpSpec>(&base.params)) {
                seed0 = g->seed;
            } else if (const auto* r = std::get_if<RrgSpec>(&base.params)) {
                seed0 = r->seed;
            }
            for (int i = 0; i < copies; ++i) {
                const FamilySpec spec = base.seeded() && (cfg.seed || cfg.count > 1) ? base.with_seed(seed0 + i) : base;
                Instance inst;
                inst.index = static_cast<int>(out.size());
                inst.family = family_key(spec);
                inst.source = spec.to_string();
                inst.graph = generate(spec);
                out.push_back(std::move(inst));
            }
        }
    } else {
        const bool from_stdin = cfg.input.empty() || cfg.input == "-";
        GraphFormat format = from_stdin ? GraphFormat::graph6 : format_for_path(cfg.input);
        if (cfg.format == "graph6") format = GraphFormat::graph6;
        if (cfg.format == "edgelist") format = GraphFormat::edgelist;
        std::vector<Graph> graphs;
        if (from_stdin) {
            graphs = read_graphs(std::cin, format);
        } else {
            std::ifstream in(cfg.input);
            if (!in) throw UsageError("cannot open " + cfg.input);
            graphs = read_graphs(in, format);
        }
        const std::string label = from_stdin ? "stdin" : cfg.input;
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            Instance inst;
            inst.index = static_cast<int>(i);
            inst.family = "file";
            inst.source = label + "#" + std::to_string(i);
            inst.graph = std::move(graphs[i]);
            out.push_back(std::move(inst));
        }
    }
    if (out.empty()) throw UsageError("no input graphs");
    for (const Instance& inst : out) {
        if (inst.graph.order() > cfg.max_n) {
            throw UsageError(inst.source + ": " + std::to_string(inst.graph.order()) + " vertices exceed --max-n " +
                             std::to_string(cfg.max_n));
        }
    }
    return out;
}

Deadline make_deadline(const RunConfig& cfg) {
    if (!cfg.deadline) return {};
    return Deadline::after(std::chrono::duration<double>(*cfg.deadline));
}

void write_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int cmd_detect(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const auto instances = load_instances(cfg);
    const WheelPattern pattern(cfg.t);
    json results = json::array();
    bool all_found = true;
    std::string dot;
    for (const Instance& inst : instances) {
        const Deadline deadline = make_deadline(cfg);
        const auto model = find_wheel_model(inst.graph, cfg.t, cfg.budget, deadline);
        json r = {{"index", inst.index},
                  {"source", inst.source},
                  {"n", inst.graph.order()},
                  {"m", inst.graph.size()},
                  {"found", model.has_value()}};
        if (model) {
            r["verified"] = verify_model(inst.graph, pattern.graph(), *model).valid();
            r["size"] = model->size();
            r["model"] = to_json(*model);
        } else {
            r["model"] = nullptr;
        }
        all_found = all_found && model.has_value();
        results.push_back(r);
        dot += to_dot(inst.graph, "G" + std::to_string(inst.index));
    }
    json body = {{"command", "detect"}, {"t", cfg.t}, {"results", results}};
    if (cfg.budget) body["budget"] = *cfg.budget;
    body["meta"] = {{"runtime_ms", elapsed_ms(start)}};
    write_file(cfg.json_path.empty() ? "-" : cfg.json_path, dump(body));
    if (!cfg.dot_path.empty()) write_file(cfg.dot_path, dot);
    return all_found ? kOk : kNegative;
}

struct EpRow {
    const Instance* inst = nullptr;
    std::optional<EpReport> report;
    std::string status = "ok";
};

int cmd_ep(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const auto instances = load_instances(cfg);
    const BoundingFunction f(cfg.gamma);

    std::vector<EpRow> rows(instances.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::optional<std::string> failure;
    const auto worker = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) {
            rows[i].inst = &instances[i];
            try {
                rows[i].report = ep_check(instances[i].graph, cfg.t, f, make_deadline(cfg));
            } catch (const DeadlineExceeded&) {
                rows[i].status = "deadline";
            } catch (const std::exception& e) {
                const std::lock_guard lock(error_mutex);
                if (!failure) failure = instances[i].source + ": " + e.what();
                rows[i].status = "error";
            }
        }
    };
    const int jobs = std::clamp(cfg.jobs, 1, 64);
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) throw std::runtime_error(*failure);

    std::map<std::string, std::pair<int, std::optional<double>>> families;
    std::vector<std::string> order;
    for (const EpRow& row : rows) {
        auto [it, fresh] = families.try_emplace(row.inst->family, 0, std::nullopt);
        if (fresh) order.push_back(row.inst->family);
        ++it->second.first;
        if (!row.report) continue;
        if (auto g = empirical_gamma(row.report->nu, row.report->tau)) {
            if (!it->second.second || *g > *it->second.second) it->second.second = *g;
        }
    }

    bool any_violated = false;
    bool any_deadline = false;
    std::ostringstream csv;
    csv << "index,family,source,n,m,t,nu,tau,bound,gamma,satisfied,gamma_min,family_max_gamma_min,status\n";
    json jrows = json::array();
    json runtimes = json::array();
    for (const EpRow& row : rows) {
        const Instance& inst = *row.inst;
        const auto& fam = families.at(inst.family);
        const std::string fam_max = fam.second ? format_real(*fam.second) : "";
        csv << inst.index << ',' << csv_field(inst.family) << ',' << csv_field(inst.source) << ',' << inst.graph.order() << ','
            << inst.graph.size() << ',' << cfg.t << ',';
        json jr = {{"index", inst.index}, {"family", inst.family}, {"source", inst.source}, {"status", row.status}};
        if (row.report) {
            const EpReport& r = *row.report;
            const auto g = empirical_gamma(r.nu, r.tau);
            csv << r.nu << ',' << r.tau << ',' << format_real(r.bound) << ',' << format_real(r.gamma) << ','
                << (r.satisfied ? "true" : "false") << ',' << (g ? format_real(*g) : "") << ',';
            json report = to_json(r);
            runtimes.push_back(report["runtime_ms"]);
            report.erase("runtime_ms");
            jr.update(report);
            jr["gamma_min"] = g ? json(*g) : json(nullptr);
            any_violated = any_violated || !r.satisfied;
        } else {
            csv << ",,,," << format_real(cfg.gamma) << ",,,";
            runtimes.push_back(nullptr);
            any_deadline = true;
        }
        csv << fam_max << ',' << row.status << '\n';
        jrows.push_back(jr);
    }
    json jfam = json::array();
    for (const std::string& name : order) {
        const auto& fam = families.at(name);
        jfam.push_back({{"family", name},
                        {"rows", fam.first},
                        {"max_gamma_min", fam.second ? json(*fam.second) : json(nullptr)}});
    }
    json body = {{"command", "ep"}, {"t", cfg.t}, {"gamma", cfg.gamma}, {"rows", jrows}, {"families", jfam}};
    body["meta"] = {{"runtime_ms", elapsed_ms(start)}, {"row_runtime_ms", runtimes}};

    if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv.str());
    if (!cfg.json_path.empty()) write_file(cfg.json_path, dump(body));
    if (cfg.csv_path.empty() && cfg.json_path.empty()) std::cout << csv.str();
    if (any_deadline) return kDeadline;
    return any_violated ? kNegative : kOk;
}

ConstantsLedger ledger_from(const RunConfig& cfg) {
    std::map<std::string, std::string> kv;
    std::stringstream items(cfg.ledger);
    std::string item;
    while (std::getline(items, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--ledger: expected key=value, got '" + item + "'");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    const auto real = [&](const std::string& key, double fallback) {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(it->second, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != it->second.size()) throw UsageError("--ledger: bad number for " + key);
        kv.erase(it);
        return v;
    };
    const double phi = real("phi", 1.0);
    const double phi_prime = real("phi_prime", 1.0);
    const double alpha = real("alpha", 1.0);
    const double beta = real("beta", 1.0);
    const bool toy = kv.contains("c1") || kv.contains("p") || kv.contains("c2");
    std::string g_name = "default";
    if (auto it = kv.find("g"); it != kv.end()) {
        g_name = it->second;
        kv.erase(it);
    }
    if (!toy) {
        if (!kv.empty()) throw UsageError("--ledger: unknown key '" + kv.begin()->first + "'");
        return build_ledger(cfg.t, phi, phi_prime, alpha, beta, GFunction::by_name(g_name));
    }
    if (!kv.contains("c1") || !kv.contains("p") || !kv.contains("c2")) {
        throw UsageError("--ledger: toy constants need all of c1, p, c2");
    }
    const auto c1 = static_cast<std::int64_t>(real("c1", 0));
    const auto p = static_cast<std::int64_t>(real("p", 0));
    const auto c2 = static_cast<std::int64_t>(real("c2", 0));
    std::optional<double> sigma;
    if (kv.contains("sigma")) sigma = real("sigma", 0);
    if (!kv.empty()) throw UsageError("--ledger: unknown key '" + kv.begin()->first + "'");
    ConstantsLedger l = toy_ledger(cfg.t, c1, p, c2, phi, phi_prime, sigma);
    l.alpha = alpha;
    l.beta = beta;
    l.gamma = l.sigma * (beta + std::log2(alpha));
    return l;
}

int cmd_decompose(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const auto instances = load_instances(cfg);
    if (instances.size() != 1) throw UsageError("decompose takes exactly one graph");
    const Graph& g = instances.front().graph;
    const ConstantsLedger ledger = ledger_from(cfg);

    const PieceDecomposition d = decompose(g, ledger);
    const DecompositionCheck check = check_decomposition(g, d, ledger);
    const AuxiliaryGraphs aux = build_auxiliary(g, d, ledger.phi);
    const auto aux_failures = check_auxiliary(g, d, aux, ledger.phi);
    const ClaimsReport claims = audit_claims(g, d, aux, ledger);

    json separators = json::array();
    for (int piece : aux.central) {
        if (d.kind(piece) == PieceKind::rest) continue;
        separators.push_back(to_json(separator_audit(g, d, aux, ledger, piece)));
    }
    json body = {{"command", "decompose"},
                 {"source", instances.front().source},
                 {"n", g.order()},
                 {"m", g.size()},
                 {"ledger", to_json(ledger)},
                 {"decomposition", to_json(d, aux)},
                 {"checks",
                  {{"decomposition_failures", check.failures},
                   {"decomposition_skipped", check.skipped},
                   {"auxiliary_failures", aux_failures}}},
                 {"audit", to_json(claims)},
                 {"separators", separators}};
    body["meta"] = {{"runtime_ms", elapsed_ms(start)}};
    if (!cfg.json_path.empty()) {
        write_file(cfg.json_path, dump(body));
    } else {
        std::cout << dump(body);
    }
    if (!cfg.dot_path.empty()) write_file(cfg.dot_path, hs_to_dot(aux) + hb_to_dot(aux));
    return check.ok() && aux_failures.empty() ? kOk : kNegative;
}

int cmd_minimize(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const auto instances = load_instances(cfg);
    const BoundingFunction f(cfg.gamma);
    json results = json::array();
    bool any = false;
    for (const Instance& inst : instances) {
        const Deadline deadline = make_deadline(cfg);
        const auto v = minimize_candidate(inst.graph, cfg.t, f, deadline);
        json r = {{"index", inst.index}, {"source", inst.source}};
        if (!v) {
            std::cout << "none\n";
            r["result"] = nullptr;
        } else {
            any = true;
            const bool minimal = locally_minimal(*v, cfg.t, f, deadline);
            std::cout << to_graph6(v->graph) << " nu=" << v->nu << " tau=" << v->tau
                      << " bound=" << format_real(v->bound) << "\n";
            r["result"] = {{"graph6", to_graph6(v->graph)},
                           {"n", v->graph.order()},
                           {"m", v->graph.size()},
                           {"nu", v->nu},
                           {"tau", v->tau},
                           {"bound", v->bound},
                           {"locally_minimal", minimal}};
        }
        results.push_back(r);
    }
    json body = {{"command", "minimize"}, {"t", cfg.t}, {"gamma", cfg.gamma}, {"results", results}};
    body["meta"] = {{"runtime_ms", elapsed_ms(start)}};
    if (!cfg.json_path.empty()) write_file(cfg.json_path, dump(body));
    return any ? kNegative : kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    auto* input = sub->add_option("--input", cfg.input, "graph file (graph6 or edge list), '-' for stdin");
    auto* gen = sub->add_option("--gen", cfg.gens, "generator spec, repeatable (e.g. rrg:n=24,d=3,g=6,seed=1)");
    input->excludes(gen);
    sub->add_option("--format", cfg.format, "input format override")->check(CLI::IsMember({"graph6", "edgelist"}));
    sub->add_option("--t", cfg.t, "wheel size t >= 3")->check(CLI::Range(3, 63));
    sub->add_option("--max-n", cfg.max_n, "reject graphs with more vertices")->check(CLI::PositiveNumber);
    sub->add_option("--deadline", cfg.deadline, "per-instance time limit in seconds")->check(CLI::PositiveNumber);
    sub->add_option("--json", cfg.json_path, "write the JSON report here ('-' for stdout)");
    sub->add_option("--seed", cfg.seed, "seed for randomized generator specs");
    sub->add_option("--count", cfg.count, "number of consecutive seeds per randomized spec")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wheelep: exact wheel-minor packing and covering"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* detect = app.add_subcommand("detect", "find a W_t model");
    add_common(detect, cfg);
    detect->add_option("--budget", cfg.budget, "only models on at most this many vertices")->check(CLI::PositiveNumber);
    detect->add_option("--dot", cfg.dot_path, "write the input graph as DOT");

    auto* ep = app.add_subcommand("ep", "nu, tau and the bound f(nu) over a sweep");
    add_common(ep, cfg);
    ep->add_option("--gamma", cfg.gamma, "bounding function constant")->check(CLI::PositiveNumber);
    ep->add_option("--csv", cfg.csv_path, "write the CSV table here ('-' for stdout)");
    ep->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1, 64));

    auto* dec = app.add_subcommand("decompose", "piece decomposition, auxiliary graphs and audits");
    add_common(dec, cfg);
    dec->add_option("--ledger", cfg.ledger, "constants: phi,phi_prime,alpha,beta,g or toy c1,p,c2[,sigma]");
    dec->add_option("--dot", cfg.dot_path, "write H_s and H_b as DOT");

    auto* min = app.add_subcommand("minimize", "reduce a violator of tau <= f(nu) to a locally minimal one");
    add_common(min, cfg);
    min->add_option("--gamma", cfg.gamma, "bounding function constant")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (detect->parsed()) return cmd_detect(cfg);
        if (ep->parsed()) return cmd_ep(cfg);
        if (dec->parsed()) return cmd_decompose(cfg);
        if (min->parsed()) return cmd_minimize(cfg);
    } catch (const DeadlineExceeded& e) {
        std::cerr << "wheelep: " << e.what() << "\n";
        return kDeadline;
    } catch (const std::exception& e) {
        std::cerr << "wheelep: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
