#include "workbench/dualgraph.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>

namespace workbench {

namespace {

constexpr long kMaxRepeat = 10000;

// ---------------------------------------------------------------------------
// Structural helpers

void validate(const DualGraph& g) {
    const int n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("graph has no vertices");
    for (int w : g.weights)
        if (w < 2) throw std::invalid_argument("vertex weight must be at least 2");
    if (static_cast<int>(g.edges.size()) != n - 1)
        throw std::invalid_argument("edge count does not match a tree");
    std::vector<std::vector<int>> adj(n);
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : g.edges) {
        if (a < 0 || b < 0 || a >= n || b >= n || a == b)
            throw std::invalid_argument("edge endpoint out of range");
        auto key = std::minmax(a, b);
        if (!seen.insert({key.first, key.second}).second)
            throw std::invalid_argument("duplicate edge");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    // Connectivity (with n-1 distinct edges this also rules out cycles).
    std::vector<char> vis(n, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!vis[w]) {
                vis[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    if (count != n) throw std::invalid_argument("graph is not connected");
}

std::vector<std::vector<int>> adjacency(const DualGraph& g) {
    std::vector<std::vector<int>> adj(g.vertex_count());
    for (auto [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

struct Classified {
    enum Kind { chain, star, general } kind;
    std::vector<int> chain_weights;            // kind == chain
    int center_weight = 0;                     // kind == star
    std::vector<std::vector<int>> branches;    // kind == star, sorted later
};

// Walks a degree-<=2 path from `start` away from `prev`, collecting weights.
std::vector<int> walk_path(const DualGraph& g, const std::vector<std::vector<int>>& adj, int start,
                           int prev) {
    std::vector<int> ws;
    int v = start;
    while (true) {
        ws.push_back(g.weights[v]);
        int next = -1;
        for (int w : adj[v])
            if (w != prev) next = w;
        if (next == -1) break;
        prev = v;
        v = next;
    }
    return ws;
}

Classified classify(const DualGraph& g) {
    validate(g);
    const int n = g.vertex_count();
    const auto adj = adjacency(g);
    int big = -1;
    int big_count = 0;
    int max_deg = 0;
    for (int v = 0; v < n; ++v) {
        const int d = static_cast<int>(adj[v].size());
        max_deg = std::max(max_deg, d);
        if (d >= 3) {
            big = v;
            ++big_count;
        }
    }
    Classified c;
    if (max_deg <= 2) {
        c.kind = Classified::chain;
        int end = 0;
        for (int v = 0; v < n; ++v)
            if (adj[v].size() <= 1) end = v;
        c.chain_weights = walk_path(g, adj, end, -1);
        return c;
    }
    if (big_count == 1 && max_deg == 3) {
        c.kind = Classified::star;
        c.center_weight = g.weights[big];
        for (int nb : adj[big]) c.branches.push_back(walk_path(g, adj, nb, big));
        std::sort(c.branches.begin(), c.branches.end());
        return c;
    }
    c.kind = Classified::general;
    return c;
}

// Canonical rooted encoding for arbitrary weighted trees (AHU-style).
std::string encode_rooted(const DualGraph& g, const std::vector<std::vector<int>>& adj, int v,
                          int parent) {
    std::vector<std::string> kids;
    for (int w : adj[v])
        if (w != parent) kids.push_back(encode_rooted(g, adj, w, v));
    std::sort(kids.begin(), kids.end());
    std::string out = "(" + std::to_string(g.weights[v]);
    for (const auto& k : kids) out += k;
    return out + ")";
}

std::string encode_tree(const DualGraph& g) {
    const int n = g.vertex_count();
    const auto adj = adjacency(g);
    // Find the 1- or 2-vertex center by repeatedly stripping leaves.
    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) deg[v] = static_cast<int>(adj[v].size());
    std::vector<int> layer;
    std::vector<char> removed(n, 0);
    for (int v = 0; v < n; ++v)
        if (deg[v] <= 1) layer.push_back(v);
    int remaining = n;
    while (remaining > 2) {
        std::vector<int> next;
        for (int v : layer) {
            removed[v] = 1;
            --remaining;
            for (int w : adj[v])
                if (!removed[w] && --deg[w] == 1) next.push_back(w);
        }
        layer = std::move(next);
    }
    std::string best;
    for (int v = 0; v < n; ++v)
        if (!removed[v]) {
            std::string code = encode_rooted(g, adj, v, -1);
            if (best.empty() || code < best) best = code;
        }
    return best;
}

std::string format_chain(const std::vector<int>& ws) {
    std::string out = "[";
    std::size_t i = 0;
    while (i < ws.size()) {
        std::size_t j = i;
        while (j < ws.size() && ws[j] == ws[i]) ++j;
        if (i > 0) out += ",";
        out += std::to_string(ws[i]);
        if (j - i >= 2) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out + "]";
}

DualGraph build_chain(const std::vector<int>& ws) {
    DualGraph g;
    g.weights = ws;
    for (int i = 0; i + 1 < static_cast<int>(ws.size()); ++i) g.edges.push_back({i, i + 1});
    return g;
}

DualGraph build_star(int center, const std::vector<std::vector<int>>& branches) {
    DualGraph g;
    g.weights.push_back(center);
    for (const auto& br : branches) {
        int prev = 0;
        for (int w : br) {
            g.weights.push_back(w);
            g.edges.push_back({prev, static_cast<int>(g.weights.size()) - 1});
            prev = static_cast<int>(g.weights.size()) - 1;
        }
    }
    return g;
}

DualGraph normal_form(const DualGraph& g) {
    Classified c = classify(g);
    switch (c.kind) {
        case Classified::chain: {
            std::vector<int> rev(c.chain_weights.rbegin(), c.chain_weights.rend());
            return build_chain(std::min(c.chain_weights, rev));
        }
        case Classified::star:
            return build_star(c.center_weight, c.branches);
        case Classified::general:
            return g;
    }
    return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction and canonical forms

DualGraph make_chain(const std::vector<int>& weights) {
    DualGraph g = build_chain(weights);
    validate(g);
    return g;
}

DualGraph make_star(int center_weight, const std::vector<std::vector<int>>& branches) {
    if (branches.size() != 3) throw std::invalid_argument("star must have exactly three branches");
    for (const auto& br : branches)
        if (br.empty()) throw std::invalid_argument("star branch must be nonempty");
    DualGraph g = build_star(center_weight, branches);
    validate(g);
    return g;
}

std::string canonical_key(const DualGraph& g) {
    Classified c = classify(g);
    switch (c.kind) {
        case Classified::chain: {
            std::vector<int> rev(c.chain_weights.rbegin(), c.chain_weights.rend());
            const auto& best = std::min(c.chain_weights, rev);
            std::string out = "C:";
            for (int w : best) out += std::to_string(w) + ",";
            return out;
        }
        case Classified::star: {
            std::string out = "S:" + std::to_string(c.center_weight);
            for (const auto& br : c.branches) {
                out += "|";
                for (int w : br) out += std::to_string(w) + ",";
            }
            return out;
        }
        case Classified::general:
            return "T:" + encode_tree(g);
    }
    return "";
}

bool DynkinType::operator==(const DynkinType& other) const {
    if (components.size() != other.components.size()) return false;
    for (std::size_t i = 0; i < components.size(); ++i)
        if (canonical_key(components[i]) != canonical_key(other.components[i])) return false;
    return true;
}

DynkinType dynkin_of(std::vector<DualGraph> comps) {
    for (auto& c : comps) c = normal_form(c);
    std::stable_sort(comps.begin(), comps.end(), [](const DualGraph& a, const DualGraph& b) {
        if (a.vertex_count() != b.vertex_count()) return a.vertex_count() > b.vertex_count();
        return canonical_key(a) < canonical_key(b);
    });
    return DynkinType{std::move(comps)};
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
  public:
    explicit Parser(const std::string& s) : s_(s) {}

    DynkinType run() {
        skip_ws();
        if (eof()) fail("empty input", 0);
        std::vector<DualGraph> comps;
        term(comps);
        skip_ws();
        while (!eof() && peek() == '+') {
            ++pos_;
            term(comps);
            skip_ws();
        }
        if (!eof()) fail("unexpected trailing input", pos_);
        return dynkin_of(std::move(comps));
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg, std::size_t pos) const {
        throw ParseError(msg, pos);
    }

    long integer() {
        skip_ws();
        const std::size_t start = pos_;
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected an integer", pos_);
        long v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > kMaxRepeat) fail("number too large", start);
            ++pos_;
        }
        return v;
    }

    void expect(char c) {
        skip_ws();
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    bool try_consume(char c) {
        skip_ws();
        if (!eof() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    // item := weight ['^' count]; appends expanded weights.
    void item(std::vector<int>& out) {
        skip_ws();
        const std::size_t wpos = pos_;
        const long w = integer();
        if (w < 2) fail("vertex weight must be at least 2", wpos);
        long count = 1;
        if (try_consume('^')) {
            const std::size_t cpos = pos_;
            count = integer();
            if (count > kMaxRepeat) fail("repetition too large", cpos);
        }
        for (long i = 0; i < count; ++i) out.push_back(static_cast<int>(w));
    }

    // chain_items := item {',' item}; first item may be pre-parsed by graph().
    void chain_items(std::vector<int>& out) {
        item(out);
        while (try_consume(',')) item(out);
    }

    std::vector<int> branch() {
        skip_ws();
        const std::size_t start = pos_;
        expect('[');
        std::vector<int> ws;
        chain_items(ws);
        expect(']');
        if (ws.empty()) fail("empty star branch", start);
        return ws;
    }

    DualGraph graph() {
        skip_ws();
        const std::size_t start = pos_;
        expect('[');
        skip_ws();
        const std::size_t first_pos = pos_;
        const long first = integer();
        if (first < 2) fail("vertex weight must be at least 2", first_pos);
        bool first_has_caret = false;
        long first_count = 1;
        if (try_consume('^')) {
            first_has_caret = true;
            const std::size_t cpos = pos_;
            first_count = integer();
            if (first_count > kMaxRepeat) fail("repetition too large", cpos);
        }
        skip_ws();
        if (!eof() && peek() == ';') {
            if (first_has_caret) fail("star center cannot carry a repetition", first_pos);
            ++pos_;
            std::vector<std::vector<int>> branches;
            branches.push_back(branch());
            expect(',');
            branches.push_back(branch());
            expect(',');
            branches.push_back(branch());
            skip_ws();
            if (!eof() && peek() == ',') fail("star must have exactly three branches", pos_);
            expect(']');
            return make_star(static_cast<int>(first), branches);
        }
        std::vector<int> ws(static_cast<std::size_t>(first_count), static_cast<int>(first));
        while (try_consume(',')) item(ws);
        expect(']');
        if (ws.empty()) fail("empty graph component", start);
        return build_chain(ws);
    }

    void term(std::vector<DualGraph>& comps) {
        skip_ws();
        long mult = 1;
        if (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            const std::size_t mpos = pos_;
            mult = integer();
            if (mult < 1) fail("multiplier must be positive", mpos);
        }
        skip_ws();
        if (eof() || peek() != '[') fail("expected '['", pos_);
        DualGraph g = graph();
        for (long i = 0; i < mult; ++i) comps.push_back(g);
    }
};

}  // namespace

DynkinType parse_dynkin(const std::string& text) { return Parser(text).run(); }

std::string serialize(const DualGraph& g) {
    Classified c = classify(normal_form(g));
    switch (c.kind) {
        case Classified::chain: {
            std::vector<int> rev(c.chain_weights.rbegin(), c.chain_weights.rend());
            return format_chain(std::min(c.chain_weights, rev));
        }
        case Classified::star: {
            std::string out = "[" + std::to_string(c.center_weight) + ";";
            for (std::size_t i = 0; i < c.branches.size(); ++i) {
                if (i > 0) out += ",";
                out += format_chain(c.branches[i]);
            }
            return out + "]";
        }
        case Classified::general:
            throw std::domain_error("only chains and three-branch stars have a text form");
    }
    return "";
}

std::string serialize(const DynkinType& t) {
    std::string out;
    std::size_t i = 0;
    while (i < t.components.size()) {
        const std::string key = canonical_key(t.components[i]);
        std::size_t j = i;
        while (j < t.components.size() && canonical_key(t.components[j]) == key) ++j;
        if (!out.empty()) out += "+";
        if (j - i >= 2) out += std::to_string(j - i);
        out += serialize(t.components[i]);
        i = j;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Numeric operations

IntMatrix intersection_matrix(const DualGraph& g) {
    validate(g);
    const int n = g.vertex_count();
    IntMatrix m(n, std::vector<Int>(n, 0));
    for (int j = 0; j < n; ++j) m[j][j] = -g.weights[j];
    for (auto [a, b] : g.edges) {
        m[a][b] = 1;
        m[b][a] = 1;
    }
    return m;
}

bool is_negative_definite(const DualGraph& g) {
    return is_negative_definite_matrix(intersection_matrix(g));
}

namespace {

DiscrepancyVector solve_discrepancies(const DualGraph& g, const std::vector<Rat>* boundary) {
    IntMatrix m = intersection_matrix(g);
    if (!is_negative_definite_matrix(m))
        throw std::domain_error("graph is not negative definite, so it is not contractible");
    const int n = g.vertex_count();
    std::vector<Rat> d(n);
    for (int j = 0; j < n; ++j) {
        d[j] = Rat(2 - g.weights[j]);
        if (boundary) d[j] -= (*boundary)[j];
    }
    DiscrepancyVector out;
    out.entries = solve_exact(m, d);
    // Exact-residual guard: M e must reproduce d with no rounding at all.
    for (int i = 0; i < n; ++i) {
        Rat acc(0);
        for (int j = 0; j < n; ++j) acc += Rat(m[i][j]) * out.entries[j];
        if (acc != d[i]) throw std::logic_error("residual is nonzero after exact solve");
    }
    out.klt = true;
    for (const auto& e : out.entries) {
        if (e < 0) throw std::logic_error("negative discrepancy coefficient on a valid graph");
        if (e >= 1) out.klt = false;
    }
    return out;
}

}  // namespace

DiscrepancyVector discrepancies(const DualGraph& g) { return solve_discrepancies(g, nullptr); }

DiscrepancyVector discrepancies_with_boundary(const DualGraph& g, const std::vector<Rat>& t) {
    if (static_cast<int>(t.size()) != g.vertex_count())
        throw std::invalid_argument("boundary vector length does not match vertex count");
    for (const auto& a : t)
        if (a < 0) throw std::invalid_argument("boundary coefficients must be nonnegative");
    return solve_discrepancies(g, &t);
}

Rat coefficient(const DualGraph& g) {
    const auto disc = discrepancies(g);
    Rat best = disc.entries.front();
    for (const auto& e : disc.entries) best = std::max(best, e);
    return best;
}

Rat gap(const DualGraph& g) {
    const auto disc = discrepancies(g);
    Rat acc(g.vertex_count());
    for (int j = 0; j < g.vertex_count(); ++j) acc += disc.entries[j] * Rat(2 - g.weights[j]);
    acc.canonicalize();
    return acc;
}

Int gap_floor(const DualGraph& g) { return rat_floor(gap(g)); }

Int spectral_value_chain(long j, long m) {
    if (j < 3) throw std::invalid_argument("chain weight parameter must be at least 3");
    if (m < 0) throw std::invalid_argument("repetition parameter must be nonnegative");
    return Int(j - 2) * Int(m + 1);
}

Int determinant(const DualGraph& g) {
    Int d = determinant_exact(intersection_matrix(g));
    return d < 0 ? Int(-d) : d;
}

// ---------------------------------------------------------------------------
// Reference gap table

std::vector<TableRow> table_e35_rows() {
    std::vector<TableRow> rows;
    auto add = [&rows](std::string label, DualGraph g) {
        Rat gv = gap(g);
        Int fv = rat_floor(gv);
        rows.push_back({std::move(label), std::move(g), std::move(gv), std::move(fv)});
    };
    auto rep = [](int w, int count) { return std::vector<int>(static_cast<std::size_t>(count), w); };

    for (int k = 1; k <= 7; ++k) add(format_chain(rep(2, k)), make_chain(rep(2, k)));
    for (int k = 0; k <= 6; ++k) {
        std::vector<int> ws{3};
        auto tail = rep(2, k);
        ws.insert(ws.end(), tail.begin(), tail.end());
        add(format_chain(ws), make_chain(ws));
    }
    add("[4]", make_chain({4}));
    for (int k = 0; k <= 6; ++k) {
        std::vector<int> ws{3};
        auto mid = rep(2, k);
        ws.insert(ws.end(), mid.begin(), mid.end());
        ws.push_back(3);
        add(format_chain(ws), make_chain(ws));
    }
    add("[2,3,2]", make_chain({2, 3, 2}));
    add("[2,3,2^2]", make_chain({2, 3, 2, 2}));
    add("[2,3,2^3]", make_chain({2, 3, 2, 2, 2}));
    add("[2,3,2^4]", make_chain({2, 3, 2, 2, 2, 2}));
    for (int k = 0; k <= 6; ++k) {
        std::vector<int> arm = rep(2, k);
        arm.push_back(3);
        add("[2;[2],[2]," + format_chain(arm) + "]", make_star(2, {{2}, {2}, arm}));
    }
    add("[2,4]", make_chain({2, 4}));
    return rows;
}

Report verify_table_e35(const std::string& expected_table_text) {
    Report rep;
    rep.command = "table e35";
    std::vector<std::array<std::string, 3>> lines;
    std::istringstream in(expected_table_text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string label, gapv, floorv;
        if (!(ls >> label)) continue;
        if (label[0] == '#') continue;
        if (!(ls >> gapv >> floorv))
            throw std::invalid_argument("bad table line: " + line);
        lines.push_back({label, gapv, floorv});
    }
    const auto rows = table_e35_rows();
    rep.add_eq("row-count", "stored table", std::to_string(rows.size()),
               std::to_string(lines.size()));
    const std::size_t n = std::min(rows.size(), lines.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = rows[i];
        const auto& exp = lines[i];
        const bool same_graph = parse_dynkin(exp[0]) == dynkin_of({row.graph});
        const std::string expected = exp[0] + " gap=" + exp[1] + " floor=" + exp[2];
        const std::string actual = (same_graph ? exp[0] : row.label) + " gap=" + rat_str(row.gap_value) +
                                   " floor=" + row.floor_value.get_str();
        rep.add_eq("row/" + exp[0], row.label, expected, actual);
    }
    return rep;
}

}  // namespace workbench
