#include "workbench/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace workbench {

namespace {

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

bool reserved_name(const std::string& name) {
    if (name.size() < 2 || name[0] != 'E') return false;
    for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    return true;
}

void check_name(const std::string& name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
        throw std::invalid_argument("curve name must start with a letter: '" + name + "'");
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw std::invalid_argument("bad character in curve name: '" + name + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// BaseSurface

BaseSurface BaseSurface::custom(std::vector<std::string> names, IntMatrix gram,
                                std::vector<Int> canonical) {
    const std::size_t n = names.size();
    if (n == 0) throw std::invalid_argument("base surface needs at least one generator");
    if (gram.size() != n || canonical.size() != n)
        throw std::invalid_argument("base surface dimensions disagree");
    std::set<std::string> seen;
    for (const auto& nm : names) {
        check_name(nm);
        if (reserved_name(nm)) throw std::invalid_argument("generator name is reserved: " + nm);
        if (!seen.insert(nm).second) throw std::invalid_argument("duplicate generator: " + nm);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (gram[i].size() != n) throw std::invalid_argument("gram matrix is not square");
        for (std::size_t j = 0; j < n; ++j)
            if (gram[i][j] != gram[j][i]) throw std::invalid_argument("gram matrix is not symmetric");
    }
    return BaseSurface{std::move(names), std::move(gram), std::move(canonical)};
}

BaseSurface BaseSurface::plane() { return custom({"H"}, {{Int(1)}}, {Int(-3)}); }

BaseSurface BaseSurface::hirzebruch(int n) {
    if (n < 0) throw std::invalid_argument("hirzebruch parameter must be nonnegative");
    return custom({"s", "f"}, {{Int(-n), Int(1)}, {Int(1), Int(0)}}, {Int(-2), Int(-(n + 2))});
}

BaseSurface BaseSurface::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> names;
    IntMatrix gram;
    std::vector<Int> k;
    enum { want_names, want_gram_marker, want_gram_rows, want_k, done } stage = want_names;
    std::size_t rows_needed = 0;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        switch (stage) {
            case want_names: {
                if (first != "names") throw std::invalid_argument("base file must start with 'names'");
                std::string nm;
                while (ls >> nm) names.push_back(nm);
                rows_needed = names.size();
                stage = want_gram_marker;
                break;
            }
            case want_gram_marker:
                if (first != "gram") throw std::invalid_argument("base file: expected 'gram'");
                stage = want_gram_rows;
                break;
            case want_gram_rows: {
                std::vector<Int> row;
                row.push_back(Int(first));
                std::string tok;
                while (ls >> tok) row.push_back(Int(tok));
                gram.push_back(std::move(row));
                if (gram.size() == rows_needed) stage = want_k;
                break;
            }
            case want_k: {
                if (first != "k") throw std::invalid_argument("base file: expected 'k'");
                std::string tok;
                while (ls >> tok) k.push_back(Int(tok));
                stage = done;
                break;
            }
            case done:
                throw std::invalid_argument("base file: trailing content");
        }
    }
    if (stage != done) throw std::invalid_argument("base file is incomplete");
    return custom(std::move(names), std::move(gram), std::move(k));
}

// ---------------------------------------------------------------------------
// SurfaceState

SurfaceState::SurfaceState(const BaseSurface& base) {
    gram_ = base.gram;
    k_ = base.canonical;
    base_rank_ = static_cast<int>(base.names.size());
}

int SurfaceState::rank() const { return static_cast<int>(gram_.size()); }

bool SurfaceState::has_curve(const std::string& name) const { return curves_.count(name) != 0; }

const std::vector<Int>& SurfaceState::cls(const std::string& name) const {
    const auto it = curves_.find(name);
    if (it == curves_.end()) throw std::invalid_argument("unknown curve: " + name);
    return it->second;
}

std::vector<Int> SurfaceState::curve_class(const std::string& name) const { return cls(name); }

Int SurfaceState::pair_classes(const std::vector<Int>& a, const std::vector<Int>& b) const {
    Int acc = 0;
    const std::size_t n = gram_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            acc += a[i] * gram_[i][j] * b[j];
        }
    }
    return acc;
}

Int SurfaceState::pairing(const std::string& a, const std::string& b) const {
    return pair_classes(cls(a), cls(b));
}

Int SurfaceState::self_int(const std::string& name) const {
    const auto& c = cls(name);
    return pair_classes(c, c);
}

Int SurfaceState::k_degree(const std::string& name) const { return pair_classes(k_, cls(name)); }

Int SurfaceState::k_selfint() const { return pair_classes(k_, k_); }

Int SurfaceState::genus(const std::string& name) const {
    const Int sum = self_int(name) + k_degree(name);
    if (mpz_odd_p(sum.get_mpz_t()))
        throw GeometryError("curve has non-integral genus: " + name);
    Int g = (sum + 2) / 2;
    return g;
}

void SurfaceState::check_genus(const std::string& name) const {
    const Int g = genus(name);
    if (g < 0) throw GeometryError("curve has negative genus (inconsistent incidences): " + name);
}

void SurfaceState::declare_curve(const std::string& name, std::vector<Int> c,
                                 std::optional<long> expected_genus) {
    check_name(name);
    if (reserved_name(name))
        throw std::invalid_argument("names E1, E2, ... are reserved for blow-ups: " + name);
    if (curves_.count(name)) throw std::invalid_argument("curve already declared: " + name);
    if (c.size() > gram_.size())
        throw std::invalid_argument("class vector longer than lattice rank: " + name);
    c.resize(gram_.size(), Int(0));
    curves_[name] = std::move(c);
    order_.push_back(name);
    check_genus(name);
    if (expected_genus && genus(name) != *expected_genus)
        throw GeometryError("curve " + name + " has genus " + genus(name).get_str() +
                            ", expected " + std::to_string(*expected_genus));
}

void SurfaceState::declare_curve_dm(const std::string& name, const Int& d,
                                    const std::vector<Int>& mults,
                                    std::optional<long> expected_genus) {
    if (base_rank_ != 1)
        throw std::invalid_argument("degree;multiplicity form needs a rank-one base");
    if (static_cast<int>(mults.size()) > blow_ups_)
        throw std::invalid_argument("more multiplicities than blow-ups: " + name);
    std::vector<Int> c(gram_.size(), Int(0));
    c[0] = d;
    for (std::size_t i = 0; i < mults.size(); ++i) c[1 + i] = -mults[i];
    declare_curve(name, std::move(c), expected_genus);
}

std::string SurfaceState::blow_up(const std::vector<std::pair<std::string, long>>& incidence) {
    std::set<std::string> seen;
    for (const auto& [name, mult] : incidence) {
        if (!curves_.count(name)) throw std::invalid_argument("unknown curve: " + name);
        if (mult < 1) throw std::invalid_argument("blow-up multiplicity must be >= 1: " + name);
        if (!seen.insert(name).second)
            throw std::invalid_argument("curve listed twice in one blow-up: " + name);
    }
    const std::size_t n = gram_.size();
    for (auto& row : gram_) row.push_back(Int(0));
    gram_.push_back(std::vector<Int>(n + 1, Int(0)));
    gram_[n][n] = -1;
    k_.push_back(Int(1));
    for (auto& [name, c] : curves_) c.push_back(Int(0));
    for (const auto& [name, mult] : incidence) curves_[name][n] = -mult;

    ++blow_ups_;
    const std::string ename = "E" + std::to_string(blow_ups_);
    if (curves_.count(ename)) throw std::logic_error("exceptional name already taken: " + ename);
    std::vector<Int> ec(n + 1, Int(0));
    ec[n] = 1;
    curves_[ename] = std::move(ec);
    order_.push_back(ename);

    for (const auto& name : order_) check_genus(name);
    return ename;
}

// ---------------------------------------------------------------------------
// Contraction

SingularModel contract(const SurfaceState& s, const std::vector<std::string>& names) {
    std::set<std::string> nameset;
    for (const auto& n : names) {
        if (!s.has_curve(n)) throw std::invalid_argument("unknown curve: " + n);
        if (!nameset.insert(n).second) throw std::invalid_argument("curve listed twice: " + n);
    }

    std::vector<std::string> not_rational, not_negative;
    for (const auto& n : names) {
        if (s.genus(n) != 0) not_rational.push_back(n);
        if (s.self_int(n) > -2) not_negative.push_back(n);
    }
    if (!not_rational.empty())
        throw GeometryError("contraction requires rational curves: " + join_names(not_rational));
    if (!not_negative.empty())
        throw GeometryError("contraction requires self-intersection at most -2: " +
                            join_names(not_negative));

    // Keep the curves in insertion order for deterministic output.
    std::vector<std::string> sorted;
    for (const auto& n : s.curve_names())
        if (nameset.count(n)) sorted.push_back(n);

    const std::size_t n = sorted.size();
    std::vector<std::vector<Int>> pair(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            pair[i][j] = s.pairing(sorted[i], sorted[j]);
            pair[j][i] = pair[i][j];
            if (pair[i][j] < 0 || pair[i][j] > 1)
                throw GeometryError("contracted curves must meet at most once transversally: " +
                                    sorted[i] + ", " + sorted[j] + " meet with multiplicity " +
                                    pair[i][j].get_str());
        }

    // Connected components under the meeting relation.
    std::vector<int> comp_of(n, -1);
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t i = 0; i < n; ++i) {
        if (comp_of[i] != -1) continue;
        std::vector<std::size_t> members;
        std::vector<std::size_t> stack{i};
        comp_of[i] = static_cast<int>(comps.size());
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (std::size_t w = 0; w < n; ++w)
                if (pair[v][w] == 1 && comp_of[w] == -1) {
                    comp_of[w] = comp_of[i];
                    stack.push_back(w);
                }
        }
        std::sort(members.begin(), members.end());
        comps.push_back(std::move(members));
    }

    SingularModel model{s, names, {}, {}, {}, {}, true};
    for (const auto& members : comps) {
        const std::size_t m = members.size();
        std::vector<std::string> comp_names;
        DualGraph g;
        std::size_t edges = 0;
        for (std::size_t a = 0; a < m; ++a) {
            comp_names.push_back(sorted[members[a]]);
            const Int w = -s.self_int(sorted[members[a]]);
            g.weights.push_back(static_cast<int>(w.get_si()));
            for (std::size_t b = a + 1; b < m; ++b)
                if (pair[members[a]][members[b]] == 1) {
                    g.edges.push_back({static_cast<int>(a), static_cast<int>(b)});
                    ++edges;
                }
        }
        if (edges != m - 1)
            throw GeometryError("contracted configuration contains a cycle: " +
                                join_names(comp_names));
        if (!is_negative_definite(g))
            throw GeometryError("component is not negative definite: " + join_names(comp_names));
        DiscrepancyVector disc = discrepancies(g);
        model.all_klt = model.all_klt && disc.klt;
        for (std::size_t a = 0; a < m; ++a) model.gamma[comp_names[a]] = disc.entries[a];
        model.components.push_back(std::move(comp_names));
        model.component_graphs.push_back(std::move(g));
        model.component_discrepancies.push_back(std::move(disc));
    }
    return model;
}

DynkinType dynkin_type(const SingularModel& m) { return dynkin_of(m.component_graphs); }

int picard_rank(const SingularModel& m) {
    return m.state.rank() - static_cast<int>(m.contracted.size());
}

Rat anticanonical_selfint(const SingularModel& m) {
    Rat acc(m.state.k_selfint());
    for (const auto& [name, g] : m.gamma) acc += g * Rat(m.state.k_degree(name));
    acc.canonicalize();
    return acc;
}

Rat anticanonical_degree(const SingularModel& m, const std::string& name) {
    if (!m.state.has_curve(name)) throw std::invalid_argument("unknown curve: " + name);
    if (m.gamma.count(name))
        throw std::invalid_argument("curve was contracted, degree undefined: " + name);
    Rat acc(-m.state.k_degree(name));
    for (const auto& [aname, g] : m.gamma) acc -= g * Rat(m.state.pairing(aname, name));
    acc.canonicalize();
    return acc;
}

LogDpResult is_rank_one_log_dp(const SingularModel& m) {
    Report rep;
    rep.command = "logdp";
    rep.add_eq("rank", "picard rank", "1", std::to_string(picard_rank(m)));
    rep.add_eq("klt", "all components klt", "true", m.all_klt ? "true" : "false");
    const Rat ks = anticanonical_selfint(m);
    rep.add("ksq-positive", "canonical selfintersection", "positive", rat_str(ks),
            ks > 0 ? CheckStatus::pass : CheckStatus::fail);
    for (const auto& name : m.state.curve_names()) {
        if (m.gamma.count(name)) continue;
        const Rat d = anticanonical_degree(m, name);
        rep.add("degree-positive/" + name, "anticanonical degree", "positive", rat_str(d),
                d > 0 ? CheckStatus::pass : CheckStatus::fail);
    }
    return {rep.ok(), rep};
}

// ---------------------------------------------------------------------------
// Construction scripts

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

long to_long(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad " + what + ": '" + s + "'");
    }
}

struct ScriptRunner {
    const std::function<std::string(const std::string&)>& loader;
    std::string where;
    std::optional<SurfaceState> st;
    std::optional<SingularModel> model;
    Report rep;

    [[noreturn]] void fail(const std::string& msg) const { throw std::invalid_argument(msg); }

    SurfaceState& surface() {
        if (!st) fail("no 'base' line yet");
        return *st;
    }

    SingularModel& singular() {
        if (!model) model = contract(surface(), {});
        return *model;
    }

    void do_base(const std::vector<std::string>& w) {
        if (st) fail("duplicate 'base' line");
        if (w.size() < 2) fail("usage: base p2 | hirzebruch N | abstract FILE");
        if (w[1] == "p2") {
            st.emplace(BaseSurface::plane());
        } else if (w[1] == "hirzebruch") {
            if (w.size() < 3) fail("usage: base hirzebruch N");
            st.emplace(BaseSurface::hirzebruch(static_cast<int>(to_long(w[2], "parameter"))));
        } else if (w[1] == "abstract") {
            if (w.size() < 3) fail("usage: base abstract FILE");
            st.emplace(BaseSurface::from_text(loader(w[2])));
        } else {
            fail("unknown base kind: " + w[1]);
        }
    }

    void do_curve(const std::string& line) {
        auto w = words(line);
        if (w.size() < 4 || w[2] != "class") fail("usage: curve NAME class CLASS [genus G]");
        const std::string name = w[1];
        std::optional<long> expected;
        std::size_t end = w.size();
        if (end >= 2 && w[end - 2] == "genus") {
            expected = to_long(w[end - 1], "genus");
            end -= 2;
        }
        std::string joined;
        bool dm_form = false;
        for (std::size_t i = 3; i < end; ++i) {
            joined += w[i];
            if (w[i].find(';') != std::string::npos) dm_form = true;
        }
        if (joined.empty()) fail("missing class for curve " + name);
        if (dm_form) {
            const auto parts = split(joined, ';');
            if (parts.size() != 2) fail("bad degree;multiplicity class: " + joined);
            const Int d(parts[0]);
            std::vector<Int> mults;
            if (!parts[1].empty())
                for (const auto& t : split(parts[1], ','))
                    mults.push_back(Int(to_long(t, "multiplicity")));
            surface().declare_curve_dm(name, d, mults, expected);
        } else {
            std::vector<Int> cls;
            for (std::size_t i = 3; i < end; ++i) cls.push_back(Int(to_long(w[i], "coefficient")));
            surface().declare_curve(name, std::move(cls), expected);
        }
    }

    void do_blowup(const std::string& line) {
        const auto open = line.find('(');
        const auto close = line.rfind(')');
        if (open == std::string::npos || close == std::string::npos || close < open)
            fail("usage: blowup (NAME:M, ...)");
        const std::string inner = trim(line.substr(open + 1, close - open - 1));
        std::vector<std::pair<std::string, long>> incid;
        if (!inner.empty()) {
            for (const auto& part : split(inner, ',')) {
                const auto colon = part.find(':');
                if (colon == std::string::npos) fail("blowup entries look like NAME:M: " + part);
                incid.push_back({trim(part.substr(0, colon)),
                                 to_long(trim(part.substr(colon + 1)), "multiplicity")});
            }
        }
        surface().blow_up(incid);
    }

    void do_blowup_along(const std::string& line) {
        const auto w = words(line);
        if (w.size() < 5 || w[3] != "mults" || w[2].size() < 2 || w[2][0] != 'x')
            fail("usage: blowup_along NAME xR mults m1,...,mR");
        const std::string name = w[1];
        const long r = to_long(w[2].substr(1), "center count");
        std::string joined;
        for (std::size_t i = 4; i < w.size(); ++i) joined += w[i];
        std::vector<long> mults;
        for (const auto& t : split(joined, ',')) mults.push_back(to_long(t, "multiplicity"));
        if (static_cast<long>(mults.size()) != r)
            fail("expected " + std::to_string(r) + " multiplicities");
        std::string prev;
        for (long i = 0; i < r; ++i) {
            std::vector<std::pair<std::string, long>> incid{{name, mults[static_cast<std::size_t>(i)]}};
            if (i > 0) incid.push_back({prev, 1});
            prev = surface().blow_up(incid);
        }
    }

    void do_contract(const std::string& line) {
        if (model) fail("duplicate 'contract' line");
        const std::string rest = trim(line.substr(std::string("contract").size()));
        std::vector<std::string> names;
        if (!rest.empty())
            for (const auto& t : split(rest, ','))
                if (!t.empty()) names.push_back(t);
        model = contract(surface(), names);
    }

    void do_expect(const std::string& line) {
        const auto w = words(line);
        if (w.size() < 2) fail("usage: expect dynkin|degree|ksq|rank|logdp ...");
        SingularModel& m = singular();
        if (w[1] == "dynkin") {
            const auto q1 = line.find('"');
            const auto q2 = line.rfind('"');
            if (q1 == std::string::npos || q2 <= q1) fail("expect dynkin needs a quoted string");
            const std::string want_text = line.substr(q1 + 1, q2 - q1 - 1);
            const DynkinType want = parse_dynkin(want_text);
            const DynkinType got = dynkin_type(m);
            rep.add_eq("dynkin", where, serialize(want), serialize(got));
        } else if (w[1] == "degree") {
            if (w.size() != 4) fail("usage: expect degree NAME p/q");
            const Rat want = rat_parse(w[3]);
            const Rat got = anticanonical_degree(m, w[2]);
            rep.add_eq("degree/" + w[2], where, rat_str(want), rat_str(got));
        } else if (w[1] == "ksq") {
            if (w.size() != 3) fail("usage: expect ksq p/q");
            const Rat want = rat_parse(w[2]);
            rep.add_eq("ksq", where, rat_str(want), rat_str(anticanonical_selfint(m)));
        } else if (w[1] == "rank") {
            if (w.size() != 3) fail("usage: expect rank N");
            rep.add_eq("rank", where, w[2], std::to_string(picard_rank(m)));
        } else if (w[1] == "logdp") {
            if (w.size() != 3 || (w[2] != "true" && w[2] != "false"))
                fail("usage: expect logdp true|false");
            rep.add_eq("logdp", where, w[2], is_rank_one_log_dp(m).value ? "true" : "false");
        } else {
            fail("unknown expectation: " + w[1]);
        }
    }
};

}  // namespace

ConstructionOutcome run_construction_full(
    const std::string& script, const std::string& script_name,
    const std::function<std::string(const std::string&)>& loader) {
    ScriptRunner run{loader, "", std::nullopt, std::nullopt, {}};
    run.rep.command = "construct " + script_name;
    std::istringstream in(script);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        run.where = script_name + ":" + std::to_string(lineno);
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto w = words(line);
        try {
            if (w[0] == "base") {
                run.do_base(w);
            } else if (w[0] == "curve") {
                run.do_curve(line);
            } else if (w[0] == "blowup") {
                run.do_blowup(line);
            } else if (w[0] == "blowup_along") {
                run.do_blowup_along(line);
            } else if (w[0] == "contract") {
                run.do_contract(line);
            } else if (w[0] == "expect") {
                run.do_expect(line);
            } else {
                run.fail("unknown directive: " + w[0]);
            }
        } catch (const ParseError& e) {
            throw std::invalid_argument(run.where + ": " + e.what());
        } catch (const GeometryError& e) {
            throw GeometryError(run.where + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(run.where + ": " + e.what());
        }
    }
    return ConstructionOutcome{std::move(run.rep), std::move(run.model)};
}

Report run_construction(const std::string& script, const std::string& script_name,
                        const std::function<std::string(const std::string&)>& loader) {
    return run_construction_full(script, script_name, loader).report;
}

}  // namespace workbench
