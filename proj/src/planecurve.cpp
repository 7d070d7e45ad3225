#include "workbench/planecurve.hpp"

#include <algorithm>
#include <cctype>
#include <type_traits>
#include <utility>
#include <vector>

namespace workbench {

// ---------------------------------------------------------------------------
// Field specs

FieldSpec rationals() { return FieldSpec{0}; }

FieldSpec prime_field(long p) {
    if (p < 2) throw std::invalid_argument("characteristic must be a prime");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("characteristic must be a prime: " +
                                                    std::to_string(p) + " = " + std::to_string(d) +
                                                    " * " + std::to_string(p / d));
    return FieldSpec{p};
}

FieldSpec field_of_characteristic(long p) { return p == 0 ? rationals() : prime_field(p); }

// ---------------------------------------------------------------------------
// HomPoly basics (rational coefficients, field-independent)

int HomPoly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

namespace {

void hompoly_add_term(HomPoly& f, const std::array<int, 3>& e, const Rat& c) {
    auto it = f.terms.find(e);
    if (it == f.terms.end()) {
        if (c != 0) f.terms.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) f.terms.erase(it);
}

void check_homogeneous(const HomPoly& f) {
    int d = -1;
    for (const auto& [e, c] : f.terms) {
        const int t = e[0] + e[1] + e[2];
        if (d == -1) d = t;
        if (t != d) throw std::invalid_argument("polynomial is not homogeneous");
    }
}

}  // namespace

HomPoly hompoly_mul(const HomPoly& a, const HomPoly& b) {
    HomPoly out;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms)
            hompoly_add_term(out, {ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return out;
}

HomPoly substitute_linear(const HomPoly& f, const std::array<std::array<Rat, 3>, 3>& m) {
    std::array<HomPoly, 3> images;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (m[i][j] != 0) {
                std::array<int, 3> e{0, 0, 0};
                e[j] = 1;
                hompoly_add_term(images[i], e, m[i][j]);
            }
    HomPoly out;
    for (const auto& [e, c] : f.terms) {
        HomPoly term;
        term.terms[{0, 0, 0}] = c;
        for (int var = 0; var < 3; ++var)
            for (int k = 0; k < e[var]; ++k) term = hompoly_mul(term, images[var]);
        for (const auto& [te, tc] : term.terms) hompoly_add_term(out, te, tc);
    }
    return out;
}

Rat hompoly_eval(const HomPoly& f, const std::array<Rat, 3>& point) {
    Rat acc(0);
    for (const auto& [e, c] : f.terms) {
        Rat t = c;
        for (int v = 0; v < 3; ++v)
            for (int k = 0; k < e[v]; ++k) t *= point[v];
        acc += t;
    }
    acc.canonicalize();
    return acc;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct TermScanner {
    const std::string& s;
    std::size_t pos = 0;

    bool eof() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }

    Rat number() {
        const std::size_t start = pos;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        if (pos == start) throw std::invalid_argument("expected a number in polynomial");
        std::string num = s.substr(start, pos - start);
        if (!eof() && peek() == '/') {
            ++pos;
            const std::size_t dstart = pos;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
            if (pos == dstart) throw std::invalid_argument("expected a denominator");
            return rat_parse(num + "/" + s.substr(dstart, pos - dstart));
        }
        return rat_parse(num);
    }

    int exponent() {
        if (!eof() && peek() == '^') {
            ++pos;
            const std::size_t start = pos;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
            if (pos == start) throw std::invalid_argument("expected an exponent");
            return std::stoi(s.substr(start, pos - start));
        }
        return 1;
    }
};

}  // namespace

HomPoly parse_hompoly(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty polynomial");
    HomPoly out;
    TermScanner sc{s};
    while (!sc.eof()) {
        Rat sign(1);
        if (sc.peek() == '+') {
            ++sc.pos;
        } else if (sc.peek() == '-') {
            sign = -1;
            ++sc.pos;
        }
        if (sc.eof()) throw std::invalid_argument("dangling sign in polynomial");
        Rat coef = sign;
        std::array<int, 3> e{0, 0, 0};
        bool saw_factor = false;
        while (!sc.eof() && sc.peek() != '+' && sc.peek() != '-') {
            if (sc.peek() == '*') {
                ++sc.pos;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
                coef *= sc.number();
                saw_factor = true;
            } else if (sc.peek() == 'x' || sc.peek() == 'y' || sc.peek() == 'z') {
                const int var = sc.peek() == 'x' ? 0 : sc.peek() == 'y' ? 1 : 2;
                ++sc.pos;
                e[var] += sc.exponent();
                saw_factor = true;
            } else {
                throw std::invalid_argument(std::string("unexpected character in polynomial: '") +
                                            sc.peek() + "'");
            }
        }
        if (!saw_factor) throw std::invalid_argument("empty term in polynomial");
        hompoly_add_term(out, e, coef);
    }
    check_homogeneous(out);
    return out;
}

std::string hompoly_str(const HomPoly& f) {
    if (f.zero()) return "0";
    std::string out;
    static const char* vars = "xyz";
    for (const auto& [e, c] : f.terms) {
        Rat cc = c;
        std::string piece;
        if (cc < 0) {
            piece += "-";
            cc = -cc;
        } else if (!out.empty()) {
            piece += "+";
        }
        const bool unit = cc == 1;
        bool wrote = false;
        if (!unit || (e[0] == 0 && e[1] == 0 && e[2] == 0)) {
            cc.canonicalize();
            piece += cc.get_den() == 1 ? cc.get_num().get_str() : rat_str(cc);
            wrote = true;
        }
        for (int v = 0; v < 3; ++v) {
            if (e[v] == 0) continue;
            if (wrote) piece += "*";
            piece += vars[v];
            if (e[v] > 1) piece += "^" + std::to_string(e[v]);
            wrote = true;
        }
        out += piece;
    }
    return out;
}

std::string mult_str(const Mult& m) { return m.infinite ? "infinite" : std::to_string(m.value); }

std::string conic_meeting_str(ConicMeeting m) {
    switch (m) {
        case ConicMeeting::two_simple_points: return "two-simple-points";
        case ConicMeeting::one_double_point: return "one-double-point";
        case ConicMeeting::contained: return "contained";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Field arithmetic backends

namespace {

struct FieldQ {
    using elem = Rat;
    elem of_rat(const Rat& r) const { return r; }
    elem of_long(long v) const { return Rat(v); }
    bool is_zero(const elem& e) const { return e == 0; }
    elem add(const elem& a, const elem& b) const { return a + b; }
    elem sub(const elem& a, const elem& b) const { return a - b; }
    elem mul(const elem& a, const elem& b) const { return a * b; }
    elem neg(const elem& a) const { return -a; }
    elem div(const elem& a, const elem& b) const {
        if (b == 0) throw std::domain_error("division by zero");
        return a / b;
    }
};

struct FieldP {
    long p;
    using elem = long;
    long norm(long v) const {
        v %= p;
        return v < 0 ? v + p : v;
    }
    elem of_long(long v) const { return norm(v); }
    elem of_rat(const Rat& r) const {
        const unsigned long up = static_cast<unsigned long>(p);
        const long num = static_cast<long>(mpz_fdiv_ui(r.get_num().get_mpz_t(), up));
        const long den = static_cast<long>(mpz_fdiv_ui(r.get_den().get_mpz_t(), up));
        if (den == 0)
            throw std::invalid_argument("coefficient denominator vanishes in characteristic " +
                                        std::to_string(p));
        return mul(num, inv(den));
    }
    bool is_zero(const elem& e) const { return e == 0; }
    elem add(const elem& a, const elem& b) const { return (a + b) % p; }
    elem sub(const elem& a, const elem& b) const { return (a - b + p) % p; }
    elem mul(const elem& a, const elem& b) const {
        return static_cast<long>(static_cast<__int128>(a) * b % p);
    }
    elem neg(const elem& a) const { return (p - a) % p; }
    elem inv(const elem& a) const {
        if (a == 0) throw std::domain_error("division by zero");
        elem result = 1, base = a;
        long e = p - 2;
        while (e > 0) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }
    elem div(const elem& a, const elem& b) const { return mul(a, inv(b)); }
};

// ---------------------------------------------------------------------------
// Generic polynomial engine over a field F

template <class F>
using TriPoly = std::map<std::array<int, 3>, typename F::elem>;
template <class F>
using BiPoly = std::map<std::pair<int, int>, typename F::elem>;
template <class F>
using UniPoly = std::vector<typename F::elem>;  // dense in x, trimmed

template <class F>
TriPoly<F> tri_of(const F& K, const HomPoly& f) {
    TriPoly<F> out;
    for (const auto& [e, c] : f.terms) {
        const auto v = K.of_rat(c);
        if (!K.is_zero(v)) out[e] = v;
    }
    return out;
}

template <class F>
typename F::elem tri_eval(const F& K, const TriPoly<F>& f, const std::array<typename F::elem, 3>& pt) {
    auto acc = K.of_long(0);
    for (const auto& [e, c] : f) {
        auto t = c;
        for (int v = 0; v < 3; ++v)
            for (int k = 0; k < e[v]; ++k) t = K.mul(t, pt[v]);
        acc = K.add(acc, t);
    }
    return acc;
}

template <class F>
std::array<typename F::elem, 3> point_of(const F& K, const ProjPoint& p) {
    std::array<typename F::elem, 3> out{K.of_long(0), K.of_long(0), K.of_long(0)};
    bool nonzero = false;
    for (int i = 0; i < 3; ++i) {
        out[i] = K.of_rat(p.coords[i]);
        nonzero = nonzero || !K.is_zero(out[i]);
    }
    if (!nonzero) throw std::invalid_argument("projective point has all coordinates zero");
    return out;
}

template <class F>
std::array<typename F::elem, 3> normalize_point(const F& K, std::array<typename F::elem, 3> pt) {
    int last = -1;
    for (int i = 0; i < 3; ++i)
        if (!K.is_zero(pt[i])) last = i;
    if (last < 0) throw std::invalid_argument("projective point has all coordinates zero");
    const auto d = pt[last];
    for (int i = 0; i < 3; ++i) pt[i] = K.div(pt[i], d);
    return pt;
}

template <class F>
bool same_point(const F& K, const std::array<typename F::elem, 3>& a,
                const std::array<typename F::elem, 3>& b) {
    const auto na = normalize_point(K, a);
    const auto nb = normalize_point(K, b);
    for (int i = 0; i < 3; ++i)
        if (!K.is_zero(K.sub(na[i], nb[i]))) return false;
    return true;
}

// Small binomial coefficients as field elements (exponents stay tiny).
template <class F>
typename F::elem binom_elem(const F& K, int n, int k) {
    long b = 1;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return K.of_long(b);
}

template <class F>
void bi_add_term(const F& K, BiPoly<F>& f, std::pair<int, int> e, const typename F::elem& c) {
    auto it = f.find(e);
    if (it == f.end()) {
        if (!K.is_zero(c)) f.emplace(e, c);
        return;
    }
    it->second = K.add(it->second, c);
    if (K.is_zero(it->second)) f.erase(it);
}

// Moves the point to the origin of an affine chart: permutes the point's
// last nonvanishing coordinate into the z slot, translates, sets z = 1.
template <class F>
BiPoly<F> localize(const F& K, const TriPoly<F>& f, std::array<typename F::elem, 3> pt) {
    pt = normalize_point(K, pt);
    // The coordinate normalized to 1 is the last nonzero one.
    int idx = -1;
    for (int i = 0; i < 3; ++i)
        if (!K.is_zero(pt[i])) idx = i;
    std::array<int, 3> perm{0, 1, 2};
    std::swap(perm[idx], perm[2]);
    std::array<typename F::elem, 3> q{pt[perm[0]], pt[perm[1]], pt[perm[2]]};
    // q[2] == 1 now; the affine coordinates of the point are (q0, q1).
    BiPoly<F> out;
    for (const auto& [e0, c] : f) {
        const std::array<int, 3> e{e0[perm[0]], e0[perm[1]], e0[perm[2]]};
        // (x + q0)^e0 (y + q1)^e1 * 1^e2, expanded.
        for (int i = 0; i <= e[0]; ++i) {
            auto ci = K.mul(c, binom_elem(K, e[0], i));
            for (int k = 0; k < e[0] - i; ++k) ci = K.mul(ci, q[0]);
            for (int j = 0; j <= e[1]; ++j) {
                auto cij = K.mul(ci, binom_elem(K, e[1], j));
                for (int k = 0; k < e[1] - j; ++k) cij = K.mul(cij, q[1]);
                bi_add_term(K, out, {i, j}, cij);
            }
        }
    }
    return out;
}

// --- dense univariate helpers -------------------------------------------

template <class F>
void uni_trim(const F& K, UniPoly<F>& u) {
    while (!u.empty() && K.is_zero(u.back())) u.pop_back();
}

template <class F>
UniPoly<F> uni_mul(const F& K, const UniPoly<F>& a, const UniPoly<F>& b) {
    if (a.empty() || b.empty()) return {};
    UniPoly<F> out(a.size() + b.size() - 1, K.of_long(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = K.add(out[i + j], K.mul(a[i], b[j]));
    uni_trim(K, out);
    return out;
}

template <class F>
UniPoly<F> uni_scale(const F& K, const UniPoly<F>& a, const typename F::elem& c) {
    if (K.is_zero(c)) return {};
    UniPoly<F> out = a;
    for (auto& x : out) x = K.mul(x, c);
    return out;
}

template <class F>
UniPoly<F> uni_sub(const F& K, UniPoly<F> a, const UniPoly<F>& b) {
    if (a.size() < b.size()) a.resize(b.size(), K.of_long(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = K.sub(a[i], b[i]);
    uni_trim(K, a);
    return a;
}

// Remainder of a by b (b nonzero), over the field.
template <class F>
UniPoly<F> uni_mod(const F& K, UniPoly<F> a, const UniPoly<F>& b) {
    while (a.size() >= b.size() && !a.empty()) {
        const auto c = K.div(a.back(), b.back());
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = K.sub(a[shift + i], K.mul(c, b[i]));
        uni_trim(K, a);
    }
    return a;
}

template <class F>
UniPoly<F> uni_gcd(const F& K, UniPoly<F> a, UniPoly<F> b) {
    uni_trim(K, a);
    uni_trim(K, b);
    while (!b.empty()) {
        auto r = uni_mod(K, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const auto lead = a.back();
        for (auto& c : a) c = K.div(c, lead);
    }
    return a;
}

// Exact quotient a / b; throws std::logic_error if the division leaves a
// remainder (callers only divide known multiples).
template <class F>
UniPoly<F> uni_divexact(const F& K, UniPoly<F> a, const UniPoly<F>& b) {
    if (b.empty()) throw std::logic_error("univariate division by zero");
    if (a.empty()) return {};
    if (a.size() < b.size()) throw std::logic_error("univariate division is not exact");
    UniPoly<F> q(a.size() - b.size() + 1, K.of_long(0));
    while (a.size() >= b.size() && !a.empty()) {
        const auto c = K.div(a.back(), b.back());
        const std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = K.sub(a[shift + i], K.mul(c, b[i]));
        uni_trim(K, a);
    }
    if (!a.empty()) throw std::logic_error("univariate division is not exact");
    uni_trim(K, q);
    return q;
}

// --- bivariate helpers ----------------------------------------------------

template <class E>
int deg_y(const std::map<std::pair<int, int>, E>& f) {
    int d = -1;
    for (const auto& [e, c] : f) d = std::max(d, e.second);
    return d;
}

template <class F>
BiPoly<F> bi_sub(const F& K, BiPoly<F> a, const BiPoly<F>& b) {
    for (const auto& [e, c] : b) bi_add_term(K, a, e, K.neg(c));
    return a;
}

template <class F>
BiPoly<F> bi_mul(const F& K, const BiPoly<F>& a, const BiPoly<F>& b) {
    BiPoly<F> out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b)
            bi_add_term(K, out, {ea.first + eb.first, ea.second + eb.second}, K.mul(ca, cb));
    return out;
}

// f(x, 0) as a dense univariate polynomial.
template <class F>
UniPoly<F> restrict_y0(const F& K, const BiPoly<F>& f) {
    UniPoly<F> out;
    for (const auto& [e, c] : f) {
        if (e.second != 0) continue;
        if (static_cast<std::size_t>(e.first) >= out.size())
            out.resize(static_cast<std::size_t>(e.first) + 1, K.of_long(0));
        out[static_cast<std::size_t>(e.first)] = c;
    }
    uni_trim(K, out);
    return out;
}

template <class E>
std::map<std::pair<int, int>, E> divide_by_y(const std::map<std::pair<int, int>, E>& f) {
    std::map<std::pair<int, int>, E> out;
    for (const auto& [e, c] : f) out[{e.first, e.second - 1}] = c;
    return out;
}

template <class F>
long ord_x(const F& K, const UniPoly<F>& u) {
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!K.is_zero(u[i])) return static_cast<long>(i);
    throw std::logic_error("order of the zero polynomial");
}

// --- (k[x])[y] layer for the primitive-PRS gcd -----------------------------

template <class F>
using YPoly = std::vector<UniPoly<F>>;  // coefficient of y^j is a poly in x

template <class E>
void ypoly_trim(std::vector<std::vector<E>>& f) {
    while (!f.empty() && f.back().empty()) f.pop_back();
}

template <class F>
YPoly<F> as_ypoly(const F& K, const BiPoly<F>& f) {
    YPoly<F> out;
    for (const auto& [e, c] : f) {
        const std::size_t j = static_cast<std::size_t>(e.second);
        const std::size_t i = static_cast<std::size_t>(e.first);
        if (j >= out.size()) out.resize(j + 1);
        auto& coeff = out[j];
        if (i >= coeff.size()) coeff.resize(i + 1, K.of_long(0));
        coeff[i] = c;
    }
    for (auto& coeff : out) uni_trim(K, coeff);
    ypoly_trim(out);
    return out;
}

template <class F>
BiPoly<F> from_ypoly(const F& K, const YPoly<F>& f) {
    BiPoly<F> out;
    for (std::size_t j = 0; j < f.size(); ++j)
        for (std::size_t i = 0; i < f[j].size(); ++i)
            if (!K.is_zero(f[j][i])) out[{static_cast<int>(i), static_cast<int>(j)}] = f[j][i];
    return out;
}

template <class F>
UniPoly<F> ypoly_content(const F& K, const YPoly<F>& f) {
    UniPoly<F> acc;
    for (const auto& coeff : f)
        if (!coeff.empty()) acc = acc.empty() ? coeff : uni_gcd(K, acc, coeff);
    if (!acc.empty()) {
        const auto lead = acc.back();
        UniPoly<F> monic = acc;
        for (auto& c : monic) c = K.div(c, lead);
        return monic;
    }
    return acc;
}

template <class F>
YPoly<F> ypoly_primitive(const F& K, const YPoly<F>& f) {
    const auto cont = ypoly_content(K, f);
    if (cont.empty()) return {};
    YPoly<F> out;
    out.reserve(f.size());
    for (const auto& coeff : f)
        out.push_back(coeff.empty() ? UniPoly<F>{} : uni_divexact(K, coeff, cont));
    ypoly_trim(out);
    return out;
}

// Pseudo-remainder of a by b in y (deg a >= deg b >= 0, b nonzero). The
// result is only needed up to content, so the classical lc(b)^e scaling
// is dropped.
template <class F>
YPoly<F> ypoly_prem(const F& K, YPoly<F> a, const YPoly<F>& b) {
    const auto& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        const auto la = a.back();
        const std::size_t shift = a.size() - b.size();
        // a <- lb * a - la * y^shift * b
        YPoly<F> scaled(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) scaled[j] = uni_mul(K, a[j], lb);
        for (std::size_t j = 0; j < b.size(); ++j)
            scaled[shift + j] = uni_sub(K, scaled[shift + j], uni_mul(K, la, b[j]));
        ypoly_trim(scaled);
        a = std::move(scaled);
    }
    return a;
}

// Gcd of two bivariate polynomials (primitive PRS over (k[x])[y]).
template <class F>
BiPoly<F> bi_gcd(const F& K, const BiPoly<F>& f, const BiPoly<F>& g) {
    if (f.empty()) return g;
    if (g.empty()) return f;
    const int dyf = deg_y(f), dyg = deg_y(g);
    if (dyf == 0 && dyg == 0) {
        const auto u = uni_gcd(K, restrict_y0(K, f), restrict_y0(K, g));
        BiPoly<F> out;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (!K.is_zero(u[i])) out[{static_cast<int>(i), 0}] = u[i];
        return out;
    }
    if (dyf == 0 || dyg == 0) {
        const auto& uni_side = dyf == 0 ? f : g;
        const auto& other = dyf == 0 ? g : f;
        const auto u = uni_gcd(K, restrict_y0(K, uni_side), ypoly_content(K, as_ypoly(K, other)));
        BiPoly<F> out;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (!K.is_zero(u[i])) out[{static_cast<int>(i), 0}] = u[i];
        return out;
    }
    YPoly<F> a = as_ypoly(K, f);
    YPoly<F> b = as_ypoly(K, g);
    const auto cf = ypoly_content(K, a);
    const auto cg = ypoly_content(K, b);
    const auto d = uni_gcd(K, cf, cg);
    a = ypoly_primitive(K, a);
    b = ypoly_primitive(K, b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        auto r = ypoly_prem(K, a, b);
        a = std::move(b);
        b = ypoly_primitive(K, r);
    }
    a = ypoly_primitive(K, a);
    // Multiply the x-content gcd back in.
    YPoly<F> result;
    result.reserve(a.size());
    for (const auto& coeff : a) result.push_back(uni_mul(K, coeff, d));
    return from_ypoly(K, result);
}

// Exact multivariate division f / h (h | f) by graded-lex reduction.
template <class F>
BiPoly<F> bi_divexact(const F& K, BiPoly<F> f, const BiPoly<F>& h) {
    if (h.empty()) throw std::logic_error("bivariate division by zero");
    auto grlex_max = [](const BiPoly<F>& p) {
        auto best = p.begin();
        for (auto it = p.begin(); it != p.end(); ++it) {
            const auto [bi, bj] = best->first;
            const auto [ti, tj] = it->first;
            if (ti + tj > bi + bj || (ti + tj == bi + bj && ti > bi)) best = it;
        }
        return best;
    };
    const auto lead_h = grlex_max(h);
    const auto [hi, hj] = lead_h->first;
    BiPoly<F> q;
    long guard = 0;
    while (!f.empty()) {
        if (++guard > 200000) throw std::logic_error("bivariate division diverged");
        const auto lead_f = grlex_max(f);
        const auto [fi, fj] = lead_f->first;
        if (fi < hi || fj < hj) throw std::logic_error("bivariate division is not exact");
        const auto c = K.div(lead_f->second, lead_h->second);
        const std::pair<int, int> mono{fi - hi, fj - hj};
        bi_add_term(K, q, mono, c);
        for (const auto& [e, hc] : h)
            bi_add_term(K, f, {e.first + mono.first, e.second + mono.second},
                        K.neg(K.mul(c, hc)));
    }
    return q;
}

// Fulton's recursive multiplicity at the affine origin for coprime f, g.
template <class F>
long mult_origin(const F& K, BiPoly<F> f, BiPoly<F> g) {
    long total = 0;
    long guard = 0;
    while (true) {
        if (++guard > 200000) throw std::logic_error("multiplicity recursion diverged");
        if (f.empty() || g.empty())
            throw std::logic_error("multiplicity of a zero polynomial after gcd removal");
        const auto cf = f.find({0, 0});
        const auto cg = g.find({0, 0});
        if (cf != f.end() || cg != g.end()) return total;
        auto r = restrict_y0(K, f);
        auto s = restrict_y0(K, g);
        if (r.empty() && s.empty())
            throw std::logic_error("common component y survived gcd removal");
        if (r.empty()) {
            total += ord_x(K, s);
            f = divide_by_y(f);
            continue;
        }
        if (s.empty()) {
            total += ord_x(K, r);
            g = divide_by_y(g);
            continue;
        }
        if (r.size() < s.size()) {
            std::swap(f, g);
            std::swap(r, s);
        }
        // Cancel the top x-term of the larger restriction.
        const auto c = K.div(r.back(), s.back());
        const int shift = static_cast<int>(r.size() - s.size());
        BiPoly<F> shifted;
        for (const auto& [e, gc] : g) shifted[{e.first + shift, e.second}] = K.mul(gc, c);
        f = bi_sub(K, f, shifted);
    }
}

template <class F>
Mult mult_impl(const F& K, const HomPoly& fh, const HomPoly& gh, const ProjPoint& p) {
    if (fh.zero() || gh.zero()) throw std::invalid_argument("zero polynomial");
    const auto pt = point_of(K, p);
    const auto f3 = tri_of(K, fh);
    const auto g3 = tri_of(K, gh);
    if (f3.empty() || g3.empty())
        throw std::invalid_argument("polynomial vanishes identically over this field");
    BiPoly<F> f = localize(K, f3, pt);
    BiPoly<F> g = localize(K, g3, pt);
    const BiPoly<F> h = bi_gcd(K, f, g);
    const int dh = [&] {
        int d = -1;
        for (const auto& [e, c] : h) d = std::max(d, e.first + e.second);
        return d;
    }();
    if (dh > 0) {
        const auto at_origin = h.find({0, 0});
        const bool vanishes = at_origin == h.end();
        if (vanishes) return infinite_mult();
        f = bi_divexact(K, f, h);
        g = bi_divexact(K, g, h);
    }
    return finite_mult(mult_origin(K, f, g));
}

// --- line/conic meeting ----------------------------------------------------

template <class F>
std::array<std::array<typename F::elem, 3>, 2> line_basis(const F& K,
                                                          const std::array<typename F::elem, 3>& l) {
    const auto zero = K.of_long(0);
    const auto& a = l[0];
    const auto& b = l[1];
    const auto& c = l[2];
    if (!K.is_zero(a))
        return {{{K.neg(b), a, zero}, {K.neg(c), zero, a}}};
    if (!K.is_zero(b))
        return {{{K.of_long(1), zero, zero}, {zero, K.neg(c), b}}};
    if (!K.is_zero(c))
        return {{{K.of_long(1), zero, zero}, {zero, K.of_long(1), zero}}};
    throw std::invalid_argument("zero line");
}

template <class F>
ConicMeeting conic_impl(const F& K, const HomPoly& conic, const HomPoly& line) {
    const auto q3 = tri_of(K, conic);
    const auto l3 = tri_of(K, line);
    std::array<typename F::elem, 3> l{K.of_long(0), K.of_long(0), K.of_long(0)};
    for (const auto& [e, c] : l3) {
        for (int v = 0; v < 3; ++v)
            if (e[v] == 1) l[v] = c;
    }
    const auto basis = line_basis(K, l);
    std::array<typename F::elem, 3> vw;
    for (int i = 0; i < 3; ++i) vw[i] = K.add(basis[0][i], basis[1][i]);
    const auto alpha = tri_eval(K, q3, basis[0]);
    const auto gamma = tri_eval(K, q3, basis[1]);
    const auto beta = K.sub(K.sub(tri_eval(K, q3, vw), alpha), gamma);
    if (K.is_zero(alpha) && K.is_zero(beta) && K.is_zero(gamma)) return ConicMeeting::contained;
    // In characteristic 2 the discriminant degenerates; tangency is the
    // vanishing of the middle coefficient of the restricted binary form.
    if constexpr (std::is_same_v<F, FieldP>) {
        if (K.p == 2)
            return K.is_zero(beta) ? ConicMeeting::one_double_point
                                   : ConicMeeting::two_simple_points;
    }
    const auto disc = K.sub(K.mul(beta, beta), K.mul(K.of_long(4), K.mul(alpha, gamma)));
    return K.is_zero(disc) ? ConicMeeting::one_double_point : ConicMeeting::two_simple_points;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public dispatchers

Mult intersection_multiplicity(const FieldSpec& field, const HomPoly& f, const HomPoly& g,
                               const ProjPoint& p) {
    if (field.p == 0) return mult_impl(FieldQ{}, f, g, p);
    return mult_impl(FieldP{field.p}, f, g, p);
}

ConicMeeting line_meets_conic(const FieldSpec& field, const HomPoly& conic, const HomPoly& line) {
    if (conic.degree() != 2) throw std::invalid_argument("conic must have degree 2");
    if (line.degree() != 1) throw std::invalid_argument("line must have degree 1");
    if (field.p == 0) return conic_impl(FieldQ{}, conic, line);
    return conic_impl(FieldP{field.p}, conic, line);
}

// ---------------------------------------------------------------------------
// Reference configuration

namespace {

struct Config {
    HomPoly cubic;
    HomPoly conic;
    HomPoly cusp_line;  // tangent line at the cusp
    ProjPoint t;        // tangency point of the conic and the cubic
    ProjPoint u;        // the cusp
};

Config config_for(long p) {
    Config c;
    if (p == 3) {
        c.cubic = parse_hompoly("x^3-y^2*z-x^2*y");
        c.conic = parse_hompoly("-x^2+z^2-y*z-z*x");
        c.t = ProjPoint{{Rat(0), Rat(1), Rat(0)}};
    } else {
        c.cubic = parse_hompoly("x^3-y^2*z");
        c.conic = parse_hompoly("-45*x^2-5*y^2+z^2+24*x*y+40*y*z-15*z*x");
        c.t = ProjPoint{{Rat(1), Rat(1), Rat(1)}};
    }
    c.cusp_line = parse_hompoly("y");
    c.u = ProjPoint{{Rat(0), Rat(0), Rat(1)}};
    return c;
}

// The conic pulled back to the cubic (which is linear in z) becomes a
// binary sextic; splitting off the tangency factor five times leaves the
// residual intersection point.
template <class F>
std::array<typename F::elem, 3> residual_point(const F& K, const Config& cfg) {
    const auto c3 = tri_of(K, cfg.cubic);
    const auto q3 = tri_of(K, cfg.conic);
    // cubic = A(x,y) + z * B(x,y)
    BiPoly<F> A, B;
    for (const auto& [e, c] : c3) {
        if (e[2] == 0)
            bi_add_term(K, A, {e[0], e[1]}, c);
        else if (e[2] == 1)
            bi_add_term(K, B, {e[0], e[1]}, c);
        else
            throw std::logic_error("cubic must be linear in z");
    }
    // conic = q0 + z q1 + z^2 q2
    BiPoly<F> q[3];
    for (const auto& [e, c] : q3) bi_add_term(K, q[e[2]], {e[0], e[1]}, c);
    // R = q0 B^2 - q1 A B + q2 A^2
    const auto BB = bi_mul(K, B, B);
    const auto AB = bi_mul(K, A, B);
    const auto AA = bi_mul(K, A, A);
    BiPoly<F> R = bi_mul(K, q[0], BB);
    R = bi_sub(K, R, bi_mul(K, q[1], AB));
    for (const auto& [e, c] : bi_mul(K, q[2], AA)) bi_add_term(K, R, e, c);
    // linear factor vanishing at (x_t : y_t)
    const auto pt = normalize_point(K, point_of(K, cfg.t));
    BiPoly<F> lt;
    bi_add_term(K, lt, {1, 0}, pt[1]);
    bi_add_term(K, lt, {0, 1}, K.neg(pt[0]));
    for (int i = 0; i < 5; ++i) R = bi_divexact(K, R, lt);
    // The leftover must be linear: a x + b y, vanishing at (-b : a).
    auto coeff_of = [&](int i, int j) {
        const auto it = R.find({i, j});
        return it == R.end() ? K.of_long(0) : it->second;
    };
    int dmax = -1;
    for (const auto& [e, c] : R) dmax = std::max(dmax, e.first + e.second);
    if (dmax != 1) throw std::logic_error("residual factor is not linear");
    const auto a = coeff_of(1, 0);
    const auto b = coeff_of(0, 1);
    const auto xs = K.neg(b);
    const auto ys = a;
    if (K.is_zero(ys)) throw std::logic_error("residual point fell on the cusp line");
    // z on the cubic: z = -A/B at (xs, ys)
    auto eval_bi = [&](const BiPoly<F>& f) {
        auto acc = K.of_long(0);
        for (const auto& [e, c] : f) {
            auto t = c;
            for (int k = 0; k < e.first; ++k) t = K.mul(t, xs);
            for (int k = 0; k < e.second; ++k) t = K.mul(t, ys);
            acc = K.add(acc, t);
        }
        return acc;
    };
    const auto Bv = eval_bi(B);
    if (K.is_zero(Bv)) throw std::logic_error("cubic is not solvable for z at the residual point");
    const auto zs = K.neg(K.div(eval_bi(A), Bv));
    return normalize_point(K, std::array<typename F::elem, 3>{xs, ys, zs});
}

template <class F>
ProjPoint to_rational_point(const F& K, const std::array<typename F::elem, 3>& pt);

template <>
ProjPoint to_rational_point<FieldQ>(const FieldQ&, const std::array<Rat, 3>& pt) {
    return ProjPoint{pt};
}

template <>
ProjPoint to_rational_point<FieldP>(const FieldP&, const std::array<long, 3>& pt) {
    return ProjPoint{{Rat(pt[0]), Rat(pt[1]), Rat(pt[2])}};
}

template <class F>
std::string point_str(const F& K, std::array<typename F::elem, 3> pt);

template <>
std::string point_str<FieldQ>(const FieldQ&, std::array<Rat, 3> pt) {
    return "[" + rat_str(pt[0]) + ":" + rat_str(pt[1]) + ":" + rat_str(pt[2]) + "]";
}

template <>
std::string point_str<FieldP>(const FieldP&, std::array<long, 3> pt) {
    return "[" + std::to_string(pt[0]) + ":" + std::to_string(pt[1]) + ":" +
           std::to_string(pt[2]) + "]";
}

HomPoly line_through(const FieldSpec& field, const ProjPoint& p, const ProjPoint& q);

template <class F>
Report verify_impl(const F& K, const FieldSpec& field, long p) {
    const Config cfg = config_for(p);
    Report rep;
    rep.command = "curves verify-config (char " + std::to_string(p) + ")";
    const std::string chart = "char " + std::to_string(p);

    const auto c3 = tri_of(K, cfg.cubic);
    const auto q3 = tri_of(K, cfg.conic);
    const auto t = point_of(K, cfg.t);
    const auto u = point_of(K, cfg.u);

    rep.add_eq("t-on-cubic", chart, "0", K.is_zero(tri_eval(K, c3, t)) ? "0" : "nonzero");
    rep.add_eq("t-on-conic", chart, "0", K.is_zero(tri_eval(K, q3, t)) ? "0" : "nonzero");
    rep.add_eq("u-on-cubic", chart, "0", K.is_zero(tri_eval(K, c3, u)) ? "0" : "nonzero");
    rep.add_eq("u-off-conic", chart, "nonzero",
               K.is_zero(tri_eval(K, q3, u)) ? "0" : "nonzero");

    const Mult it = intersection_multiplicity(field, cfg.cubic, cfg.conic, cfg.t);
    rep.add("tangency-order-at-t", chart, ">= 5", mult_str(it),
            (!it.infinite && it.value >= 5) ? CheckStatus::pass : CheckStatus::fail);

    const auto s = residual_point(K, cfg);
    const bool s_is_t = same_point(K, s, t);
    rep.add_eq("residual-equals-t-iff-char-2", chart + ", s=" + point_str(K, s),
               p == 2 ? "true" : "false", s_is_t ? "true" : "false");

    const ConicMeeting cusp_line_meet = line_meets_conic(field, cfg.conic, cfg.cusp_line);
    rep.add_eq("cusp-line-tangent-iff-char-5", chart,
               p == 5 ? "one-double-point" : "two-simple-points",
               conic_meeting_str(cusp_line_meet));

    const ProjPoint sp = to_rational_point(K, s);
    const HomPoly lsu = line_through(field, sp, cfg.u);
    const Mult is = intersection_multiplicity(field, cfg.conic, lsu, sp);
    rep.add_eq("residual-chord-tangent-iff-char-5", chart, p == 5 ? "2" : "1", mult_str(is));

    const HomPoly ltu = line_through(field, cfg.t, cfg.u);
    rep.add_eq("chord-meets-conic-simply", chart, "two-simple-points",
               conic_meeting_str(line_meets_conic(field, cfg.conic, ltu)));
    return rep;
}

HomPoly line_through(const FieldSpec& field, const ProjPoint& p, const ProjPoint& q) {
    // Field-reduced cross product of the coordinate vectors.
    auto build = [&](auto K) {
        const auto a = point_of(K, p);
        const auto b = point_of(K, q);
        const auto c0 = K.sub(K.mul(a[1], b[2]), K.mul(a[2], b[1]));
        const auto c1 = K.sub(K.mul(a[2], b[0]), K.mul(a[0], b[2]));
        const auto c2 = K.sub(K.mul(a[0], b[1]), K.mul(a[1], b[0]));
        if (K.is_zero(c0) && K.is_zero(c1) && K.is_zero(c2))
            throw std::invalid_argument("the two points coincide; no unique line");
        return std::array<Rat, 3>{to_rational_point(K, {c0, c1, c2}).coords};
    };
    std::array<Rat, 3> c =
        field.p == 0 ? build(FieldQ{}) : build(FieldP{field.p});
    HomPoly line;
    if (c[0] != 0) line.terms[{1, 0, 0}] = c[0];
    if (c[1] != 0) line.terms[{0, 1, 0}] = c[1];
    if (c[2] != 0) line.terms[{0, 0, 1}] = c[2];
    return line;
}

}  // namespace

Report verify_special_config(const FieldSpec& field) {
    if (field.p == 0) return verify_impl(FieldQ{}, field, 0);
    return verify_impl(FieldP{field.p}, field, field.p);
}

}  // namespace workbench
