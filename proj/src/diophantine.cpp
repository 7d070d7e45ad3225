#include "workbench/diophantine.hpp"

#include <algorithm>
#include <sstream>

namespace workbench {

Rat ksq_from_sigma(const Rat& k_dot_sigma, const Rat& sigma_sq) {
    if (sigma_sq == 0) throw std::domain_error("sigma_sq must be nonzero");
    Rat r = k_dot_sigma * k_dot_sigma / sigma_sq;
    r.canonicalize();
    return r;
}

namespace {

Rat frac(Int num, Int den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace

Rat ksq_formula(const std::string& family, long g, long k) {
    if (g < 2) throw std::domain_error("family parameter g must be at least 2");
    if (k < 0) throw std::domain_error("family parameter k must be nonnegative");
    const Int G(g), K(k);
    if (family == "[3,2^k]")
        return frac(2 * (K + G + 2) * (K + G + 2), (2 * K + 3) * (2 * G + 1) * (4 * G * K + 4 * G - 1));
    if (family == "[4]") return frac(1, (2 * G + 1) * (2 * G - 1));
    if (family == "[3,2^k,3]") return frac(K + 2, (2 * G + 1) * (4 * G * K + 6 * G - 1));
    if (family == "[2,3,2]") return frac(1, 4 * G * (2 * G + 1));
    if (family == "[2;[2],[2],[2^k,3]]")
        return frac(1, 4 * (2 * K * G + 3 * G + K + 1) * (2 * G + 1));
    if (family == "[2,3,2^k]") {
        if (k < 2 || k > 4) throw std::domain_error("family parameter k must lie in [2,4]");
        const Int num = 2 * (G * K - G - K - 3) * (G * K - G - K - 3);
        return frac(num, (2 * G + 1) * (3 * K + 5) * (8 * K * G + 8 * G + K - 1));
    }
    if (family == "[2,4]") return frac(2, 5 * 7 * 13);
    throw std::domain_error("unknown family: " + family);
}

Rat noether_defect(const Rat& ksq, const DynkinType& type) {
    Rat acc = ksq - 9;
    for (const auto& comp : type.components) acc += gap(comp);
    acc.canonicalize();
    return acc;
}

// ---------------------------------------------------------------------------
// Enumeration machinery

namespace {

// gap of the chain [3,2^k], computed from the graph itself.
Rat gap_chain3(long k) {
    std::vector<int> ws{3};
    ws.insert(ws.end(), static_cast<std::size_t>(k), 2);
    return gap(make_chain(ws));
}

// Closed form of the same value; used only on the oracle side.
Rat gap_closed(long k) { return frac(Int(2) * (k + 1) * (k + 1), Int(2 * k + 3)); }

struct ChainCounts {
    long kmax;          // largest k with n_k possibly nonzero
    long high_lo;       // from this k upward a joint cap applies
    long high_cap;      // joint cap on sum of n_k for k >= high_lo
    long v;             // number of A1 points, fixes 3v + 2 n0 < 27
};

// Depth-first choice of n_0..n_kmax with exact target sum n_k * gap_k,
// weight budget sum_{k>=1} k n_k <= 8 - v, and the per-search caps.
void extend(const ChainCounts& cc, const std::vector<Rat>& gaps, std::vector<long>& ns, long k,
            const Rat& target, long wbudget, long high_used, unsigned long long& scanned,
            const std::vector<long>& prefix, std::size_t ncols,
            std::vector<std::vector<long>>& out) {
    ++scanned;
    if (target < 0) return;
    if (k > cc.kmax) {
        if (target == 0) {
            std::vector<long> row = prefix;
            for (std::size_t i = 0; i < ncols; ++i)
                row.push_back(i < ns.size() ? ns[i] : 0);
            out.push_back(std::move(row));
        }
        return;
    }
    long bound = k == 0 ? (26 - 3 * cc.v) / 2 : wbudget / k;
    if (k >= cc.high_lo) bound = std::min(bound, cc.high_cap - high_used);
    Rat q = target / gaps[static_cast<std::size_t>(k)];
    const Int qf = rat_floor(q);
    if (qf < bound) bound = qf.get_si();
    for (long n = 0; n <= bound; ++n) {
        ns[static_cast<std::size_t>(k)] = n;
        extend(cc, gaps, ns, k + 1, target - Rat(n) * gaps[static_cast<std::size_t>(k)],
               wbudget - (k >= 1 ? k * n : 0), high_used + (k >= cc.high_lo ? n : 0), scanned,
               prefix, ncols, out);
    }
    ns[static_cast<std::size_t>(k)] = 0;
}

std::vector<Rat> gap_table(long kmax, bool closed) {
    std::vector<Rat> gaps;
    for (long k = 0; k <= kmax; ++k) gaps.push_back(closed ? gap_closed(k) : gap_chain3(k));
    return gaps;
}

std::vector<std::string> names_with_counts(std::initializer_list<const char*> head, long ncols) {
    std::vector<std::string> v(head.begin(), head.end());
    for (long k = 0; k < ncols; ++k) v.push_back("n" + std::to_string(k));
    return v;
}

Rat ksq_d1(long g, long r) {
    const long d2 = 4 * (r + 1) - g * (2 * r + 3);
    return frac(Int(g), Int(2 * r + 3) * d2);
}
Rat ksq_d2(long g) { return frac(2, Int(2 * g + 3) * (2 * g - 1)); }
Rat ksq_d3(long g) { return frac(1, Int(2 * g + 1) * (2 * g - 1)); }
Rat ksq_d4(long g, long r) {
    return frac(Int(2) * (r + g + 2) * (r + g + 2),
                Int(2 * r + 3) * (2 * g + 1) * (4 * g * r + 4 * g - 1));
}

SolutionSet search_d1() {
    SolutionSet s;
    s.id = "D1";
    s.varnames = names_with_counts({"g", "r", "v"}, 9);
    const auto gaps = gap_table(8, false);
    for (long r = 0; r <= 8; ++r)
        for (long g = 1; g <= 9; ++g) {
            if (4 * (r + 1) - g * (2 * r + 3) <= 0) continue;
            const Rat ksq = ksq_d1(g, r);
            for (long v = std::max(0L, g - 1); v <= 8; ++v) {
                ChainCounts cc{std::min(r, 8L), 100, 0, v};
                std::vector<long> ns(9, 0);
                extend(cc, gaps, ns, 0, Rat(9) - ksq - Rat(v), 8 - v, 0, s.scanned,
                       {g, r, v}, 9, s.rows);
            }
        }
    std::sort(s.rows.begin(), s.rows.end());
    return s;
}

SolutionSet search_d2() {
    SolutionSet s;
    s.id = "D2";
    s.varnames = names_with_counts({"g", "v"}, 9);
    const auto gaps = gap_table(8, false);
    for (long g = 2; g <= 8; ++g) {
        const Rat ksq = ksq_d2(g);
        for (long v = 0; v <= 8; ++v) {
            ChainCounts cc{std::min(g, 8L), 100, 0, v};
            std::vector<long> ns(9, 0);
            extend(cc, gaps, ns, 0, Rat(9) - ksq - Rat(v), 8 - v, 0, s.scanned, {g, v}, 9,
                   s.rows);
        }
    }
    std::sort(s.rows.begin(), s.rows.end());
    return s;
}

SolutionSet search_d3() {
    SolutionSet s;
    s.id = "D3";
    s.varnames = names_with_counts({"g", "v"}, 8);
    const auto gaps = gap_table(7, false);
    for (long g = 2; g <= 63; ++g) {
        const Rat ksq = ksq_d3(g);
        for (long v = 1; v <= 8; ++v) {
            ChainCounts cc{7, 4, 1, v};
            std::vector<long> ns(8, 0);
            extend(cc, gaps, ns, 0, Rat(9) - ksq - Rat(v), 8 - v, 0, s.scanned, {g, v}, 8,
                   s.rows);
        }
    }
    std::sort(s.rows.begin(), s.rows.end());
    return s;
}

SolutionSet search_d4() {
    SolutionSet s;
    s.id = "D4";
    s.varnames = names_with_counts({"g", "r", "v"}, 9);
    const auto gaps = gap_table(8, false);
    for (long r = 0; r <= 8; ++r)
        for (long g = 2; g <= r + 1; ++g) {
            const Rat ksq = ksq_d4(g, r);
            if (!(ksq > 0)) continue;
            for (long v = 1; v <= 8; ++v) {
                ChainCounts cc{std::min(r, 8L), 100, 0, v};
                std::vector<long> ns(9, 0);
                extend(cc, gaps, ns, 0, Rat(9) - ksq - Rat(v), 8 - v, 0, s.scanned,
                       {g, r, v}, 9, s.rows);
            }
        }
    std::sort(s.rows.begin(), s.rows.end());
    return s;
}

struct RowLayout {
    std::size_t v_col;
    std::size_t n_col;
    std::size_t n_count;
};

RowLayout layout_of(const std::string& sid) {
    if (sid == "D1" || sid == "D4") return {2, 3, 9};
    if (sid == "D2") return {1, 2, 9};
    if (sid == "D3") return {1, 2, 8};
    throw std::invalid_argument("no layout for " + sid);
}

Rat row_ksq(const std::string& sid, const std::vector<long>& row) {
    if (sid == "D1") return ksq_d1(row[0], row[1]);
    if (sid == "D2") return ksq_d2(row[0]);
    if (sid == "D3") return ksq_d3(row[0]);
    if (sid == "D4") return ksq_d4(row[0], row[1]);
    throw std::invalid_argument("no ksq for " + sid);
}

// Cross-module consistency pass: rebuild each solution's full singularity
// list as graphs and confirm the degree constraint through the graph side.
SolutionSet search_d5(bool oracle) {
    SolutionSet s;
    s.id = "D5";
    s.varnames = {"search", "row", "defect_zero"};
    const char* ids[] = {"D1", "D2", "D3", "D4"};
    for (long which = 0; which < 4; ++which) {
        const std::string sid = ids[which];
        const SolutionSet sub = oracle ? run_search_oracle(sid) : run_search(sid);
        const RowLayout lay = layout_of(sid);
        for (std::size_t i = 0; i < sub.rows.size(); ++i) {
            const auto& row = sub.rows[i];
            const long v = row[lay.v_col];
            const Rat ksq = row_ksq(sid, row);
            bool zero;
            if (oracle) {
                Rat acc = ksq + Rat(v) - 9;
                for (std::size_t k = 0; k < lay.n_count; ++k)
                    acc += Rat(row[lay.n_col + k]) * gap_closed(static_cast<long>(k));
                zero = acc == 0;
            } else {
                std::vector<DualGraph> comps;
                for (std::size_t k = 0; k < lay.n_count; ++k)
                    for (long c = 0; c < row[lay.n_col + k]; ++c) {
                        std::vector<int> ws{3};
                        ws.insert(ws.end(), k, 2);
                        comps.push_back(make_chain(ws));
                    }
                if (v > 0) comps.push_back(make_chain(std::vector<int>(v, 2)));
                zero = noether_defect(ksq, dynkin_of(std::move(comps))) == 0;
            }
            ++s.scanned;
            s.rows.push_back({which + 1, static_cast<long>(i), zero ? 1L : 0L});
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Naive oracles: explicit nested loops over the stated ranges, with the
// side constraints checked as soon as their variables are bound and the
// degree equation evaluated innermost via the closed-form gap values.

struct NaiveParams {
    Rat ksq;
    long v;
    long kmax_allowed;  // n_k must vanish above this
    long high_lo;       // joint cap start (sum n_k <= high_cap from here)
    long high_cap;
    bool use_n8;
};

void naive_counts(const NaiveParams& p, const std::vector<long>& prefix, std::size_t ncols,
                  unsigned long long& scanned, std::vector<std::vector<long>>& out) {
    static const long caps[9] = {13, 8, 4, 2, 2, 1, 1, 1, 1};
    const Rat base = p.ksq + Rat(p.v) - 9;
    std::vector<Rat> gaps;
    for (long k = 0; k <= 8; ++k) gaps.push_back(gap_closed(k));
    auto allowed = [&p](long k, long n) { return n == 0 || k <= p.kmax_allowed; };
    for (long n0 = 0; n0 <= caps[0]; ++n0) {
        if (3 * p.v + 2 * n0 >= 27) continue;
        if (!allowed(0, n0)) continue;
        for (long n1 = 0; n1 <= caps[1]; ++n1) {
            if (!allowed(1, n1) || p.v + n1 > 8) continue;
            for (long n2 = 0; n2 <= caps[2]; ++n2) {
                if (!allowed(2, n2) || p.v + n1 + 2 * n2 > 8) continue;
                for (long n3 = 0; n3 <= caps[3]; ++n3) {
                    if (!allowed(3, n3) || p.v + n1 + 2 * n2 + 3 * n3 > 8) continue;
                    for (long n4 = 0; n4 <= caps[4]; ++n4) {
                        if (!allowed(4, n4)) continue;
                        if (p.v + n1 + 2 * n2 + 3 * n3 + 4 * n4 > 8) continue;
                        for (long n5 = 0; n5 <= caps[5]; ++n5) {
                            if (!allowed(5, n5)) continue;
                            if (p.v + n1 + 2 * n2 + 3 * n3 + 4 * n4 + 5 * n5 > 8) continue;
                            for (long n6 = 0; n6 <= caps[6]; ++n6) {
                                if (!allowed(6, n6)) continue;
                                const long w6 =
                                    p.v + n1 + 2 * n2 + 3 * n3 + 4 * n4 + 5 * n5 + 6 * n6;
                                if (w6 > 8) continue;
                                for (long n7 = 0; n7 <= caps[7]; ++n7) {
                                    if (!allowed(7, n7) || w6 + 7 * n7 > 8) continue;
                                    const long n8hi = p.use_n8 ? caps[8] : 0;
                                    for (long n8 = 0; n8 <= n8hi; ++n8) {
                                        if (!allowed(8, n8) || w6 + 7 * n7 + 8 * n8 > 8) continue;
                                        long high = 0;
                                        const long all[9] = {n0, n1, n2, n3, n4,
                                                             n5, n6, n7, n8};
                                        for (long k = p.high_lo; k <= 8; ++k) high += all[k];
                                        if (high > p.high_cap) continue;
                                        ++scanned;
                                        Rat acc = base;
                                        for (long k = 0; k <= 8; ++k)
                                            acc += Rat(all[k]) * gaps[static_cast<std::size_t>(k)];
                                        if (acc != 0) continue;
                                        std::vector<long> row = prefix;
                                        for (std::size_t k = 0; k < ncols; ++k)
                                            row.push_back(all[k]);
                                        out.push_back(std::move(row));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

SolutionSet oracle_d1() {
    SolutionSet s;
    s.id = "D1";
    s.varnames = names_with_counts({"g", "r", "v"}, 9);
    for (long g = 1; g <= 9; ++g)
        for (long r = 0; r <= 8; ++r) {
            if (4 * (r + 1) - g * (2 * r + 3) <= 0) continue;
            for (long v = 0; v <= 8; ++v) {
                if (g > v + 1) continue;
                naive_counts({ksq_d1(g, r), v, std::min(r, 8L), 100, 1000, true}, {g, r, v}, 9,
                             s.scanned, s.rows);
            }
        }
    std::sort(s.rows.begin(), s.rows.end());
    return s;
}

SolutionSet oracle_d2() {
    SolutionSet s;
    s.id = "D2";
    s.varnames = names_with_counts({"g", "v"}, 9);
    for (long g = 2; g <= 8; ++g)
        for (long v = 0; v <= 8; ++v)
            naive_counts({ksq_d2(g), v, std::min(g, 8L), 100, 1000, true}, {g, v}, 9, s.scanned,
                         s.rows);
    std::sort(s.rows.begin(), s.rows.end());
    return s;
}

SolutionSet oracle_d3() {
    SolutionSet s;
    s.id = "D3";
    s.varnames = names_with_counts({"g", "v"}, 8);
    for (long g = 2; g <= 63; ++g)
        for (long v = 1; v <= 8; ++v)
            naive_counts({ksq_d3(g), v, 7, 4, 1, false}, {g, v}, 8, s.scanned, s.rows);
    std::sort(s.rows.begin(), s.rows.end());
    return s;
}

SolutionSet oracle_d4() {
    SolutionSet s;
    s.id = "D4";
    s.varnames = names_with_counts({"g", "r", "v"}, 9);
    for (long g = 2; g <= 9; ++g)
        for (long r = 0; r <= 8; ++r) {
            if (g > r + 1) continue;
            const Rat ksq = ksq_d4(g, r);
            if (!(ksq > 0)) continue;
            for (long v = 1; v <= 8; ++v)
                naive_counts({ksq, v, std::min(r, 8L), 100, 1000, true}, {g, r, v}, 9, s.scanned,
                             s.rows);
        }
    std::sort(s.rows.begin(), s.rows.end());
    return s;
}

// ---------------------------------------------------------------------------
// Divisibility scans

struct GenConfig {
    std::function<Int(long)> num;
    std::function<Int(long)> den;
    Int base;
    std::vector<long> moduli;
    long g_lo, g_hi;
};

GenConfig gen_config(const std::string& id) {
    if (id == "GEN-1")
        return {[](long) -> Int { return Int(5); },
                [](long g) -> Int { return Int(2 * g + 1) * (18 * g - 1); },
                Int(3 * 3 * 5 * 7),
                {11},
                2,
                21};
    if (id == "GEN-2")
        return {[](long) -> Int { return Int(3); },
                [](long g) -> Int { return Int(2 * g + 1) * (10 * g - 1); },
                Int(3 * 5 * 7),
                {3, 11, 13},
                2,
                14};
    if (id == "GEN-3")
        return {[](long) -> Int { return Int(2); },
                [](long g) -> Int { return Int(2 * g + 1) * (6 * g - 1); },
                Int(3 * 3 * 5 * 7),
                {11, 13, 17},
                2,
                20};
    throw std::invalid_argument("unknown search id: " + id);
}

SolutionSet gen_search(const std::string& id, bool oracle) {
    const GenConfig cfg = gen_config(id);
    SolutionSet s;
    s.id = id;
    s.varnames = {"g", "a"};
    if (oracle) {
        // Rational route: the quotient must have denominator 1.
        for (long g = cfg.g_lo; g <= cfg.g_hi; ++g)
            for (long a : cfg.moduli) {
                ++s.scanned;
                Rat q(cfg.num(g) * cfg.base * a, cfg.den(g));
                q.canonicalize();
                if (q.get_den() == 1) s.rows.push_back({g, a});
            }
        std::sort(s.rows.begin(), s.rows.end());
    } else {
        for (auto [g, a] : divisibility_search(cfg.num, cfg.den, cfg.base, cfg.moduli, cfg.g_lo,
                                               cfg.g_hi))
            s.rows.push_back({g, a});
        s.scanned = static_cast<unsigned long long>(cfg.g_hi - cfg.g_lo + 1) * cfg.moduli.size();
    }
    return s;
}

}  // namespace

std::vector<std::pair<long, long>> divisibility_search(
    const std::function<Int(long)>& numerator, const std::function<Int(long)>& denominator,
    const Int& base, const std::vector<long>& moduli, long g_lo, long g_hi) {
    std::vector<std::pair<long, long>> out;
    for (long g = g_lo; g <= g_hi; ++g) {
        const Int den = denominator(g);
        if (den == 0) throw std::domain_error("denominator vanished in divisibility search");
        for (long a : moduli) {
            const Int num = numerator(g) * base * a;
            if (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) out.push_back({g, a});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SolutionSet run_search(const std::string& id) {
    if (id == "D1") return search_d1();
    if (id == "D2") return search_d2();
    if (id == "D3") return search_d3();
    if (id == "D4") return search_d4();
    if (id == "D5") return search_d5(false);
    if (id.rfind("GEN-", 0) == 0) return gen_search(id, false);
    throw std::invalid_argument("unknown search id: " + id);
}

SolutionSet run_search_oracle(const std::string& id) {
    if (id == "D1") return oracle_d1();
    if (id == "D2") return oracle_d2();
    if (id == "D3") return oracle_d3();
    if (id == "D4") return oracle_d4();
    if (id == "D5") return search_d5(true);
    if (id.rfind("GEN-", 0) == 0) return gen_search(id, true);
    throw std::invalid_argument("unknown search id: " + id);
}

std::string solution_text(const SolutionSet& s) {
    std::ostringstream out;
    out << "vars";
    for (const auto& n : s.varnames) out << " " << n;
    out << "\n";
    for (const auto& row : s.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
        out << "\n";
    }
    return out.str();
}

SolutionSet parse_solution_text(const std::string& id, const std::string& text) {
    SolutionSet s;
    s.id = id;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first[0] == '#') continue;
        if (first == "vars") {
            std::string name;
            while (ls >> name) s.varnames.push_back(name);
            continue;
        }
        std::vector<long> row;
        row.push_back(std::stol(first));
        long x;
        while (ls >> x) row.push_back(x);
        s.rows.push_back(std::move(row));
    }
    return s;
}

}  // namespace workbench
