#include "wheelep/graph_io.hpp"

#include <charconv>
#include <istream>
#include <sstream>

namespace wheelep {

namespace {

constexpr int kBias = 63;

Graph parse_graph6(std::string_view s) {
    if (s.starts_with(">>graph6<<")) s.remove_prefix(10);
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
    if (s.empty()) throw ParseError("graph6: empty string");
    for (char c : s) {
        if (c < kBias || c > 126) throw ParseError("graph6: byte outside 63..126");
    }
    std::size_t pos = 0;
    long n = 0;
    if (s[0] != 126) {
        n = s[0] - kBias;
        pos = 1;
    } else {
        if (s.size() < 4 || s[1] == 126) throw ParseError("graph6: malformed header");
        n = (long(s[1] - kBias) << 12) | (long(s[2] - kBias) << 6) | long(s[3] - kBias);
        pos = 4;
    }
    if (n > kMaxVertices) {
        throw ParseError("graph6: order " + std::to_string(n) + " exceeds " +
                         std::to_string(kMaxVertices));
    }
    const long nbits = n * (n - 1) / 2;
    const long nbytes = (nbits + 5) / 6;
    if (static_cast<long>(s.size() - pos) != nbytes) {
        throw ParseError("graph6: expected " + std::to_string(nbytes) + " data bytes, got " +
                         std::to_string(s.size() - pos));
    }
    Graph g(static_cast<int>(n));
    long k = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++k) {
            const int byte = s[pos + static_cast<std::size_t>(k / 6)] - kBias;
            if ((byte >> (5 - k % 6)) & 1) g.add_edge(i, j);
        }
    }
    if (nbytes > 0) {
        const int last = s.back() - kBias;
        const int pad = static_cast<int>(nbytes * 6 - nbits);
        if (last & ((1 << pad) - 1)) throw ParseError("graph6: nonzero padding bits");
    }
    return g;
}

Graph parse_edgelist(std::string_view text) {
    std::vector<Edge> edges;
    int max_id = -1;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        std::vector<long> ids;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i == line.size()) break;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            long value = 0;
            auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
            if (ec != std::errc{} || ptr != line.data() + j) {
                throw ParseError("edgelist line " + std::to_string(line_no) + ": bad token '" +
                                 std::string(line.substr(i, j - i)) + "'");
            }
            ids.push_back(value);
            i = j;
        }
        if (ids.empty()) continue;
        if (ids.size() != 2) {
            throw ParseError("edgelist line " + std::to_string(line_no) + ": expected 'u v'");
        }
        for (long id : ids) {
            if (id < 0 || id >= kMaxVertices) {
                throw ParseError("edgelist line " + std::to_string(line_no) +
                                 ": vertex index out of range");
            }
        }
        if (ids[0] == ids[1]) {
            throw ParseError("edgelist line " + std::to_string(line_no) + ": loop at vertex " +
                             std::to_string(ids[0]));
        }
        edges.emplace_back(static_cast<Vertex>(ids[0]), static_cast<Vertex>(ids[1]));
        max_id = std::max({max_id, static_cast<int>(ids[0]), static_cast<int>(ids[1])});
        if (end == text.size()) break;
    }
    return Graph::from_edges(max_id + 1, edges);
}

}  // namespace

Graph parse_graph(std::string_view text, GraphFormat format) {
    return format == GraphFormat::graph6 ? parse_graph6(text) : parse_edgelist(text);
}

std::string to_graph6(const Graph& g) {
    const int n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + kBias));
    } else {
        out.push_back(static_cast<char>(126));
        out.push_back(static_cast<char>(((n >> 12) & 63) + kBias));
        out.push_back(static_cast<char>(((n >> 6) & 63) + kBias));
        out.push_back(static_cast<char>((n & 63) + kBias));
    }
    int acc = 0;
    int filled = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(acc + kBias));
                acc = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + kBias));
    return out;
}

std::string to_dot(const Graph& g, std::string_view name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (Vertex v = 0; v < g.order(); ++v) os << "  " << v << ";\n";
    for (auto [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
    os << "}\n";
    return os.str();
}

std::vector<Graph> read_graphs(std::istream& in, GraphFormat format) {
    std::vector<Graph> out;
    if (format == GraphFormat::edgelist) {
        std::stringstream buf;
        buf << in.rdbuf();
        out.push_back(parse_edgelist(buf.str()));
        return out;
    }
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        out.push_back(parse_graph6(line));
    }
    return out;
}

GraphFormat format_for_path(std::string_view path) {
    return path.ends_with(".g6") || path.ends_with(".graph6") ? GraphFormat::graph6
                                                              : GraphFormat::edgelist;
}

}  // namespace wheelep
