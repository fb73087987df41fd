#pragma once

#include "semiring.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdc {

using rational = boost::multiprecision::cpp_rational;

// A finite product shape: a leaf of some width, or a pair of shapes.
struct Shape {
    std::size_t n = 0;
    std::shared_ptr<const std::pair<Shape, Shape>> parts;

    static Shape leaf(std::size_t n) { return {n, nullptr}; }
    static Shape pair(const Shape& a, const Shape& b) { return {a.n + b.n, std::make_shared<const std::pair<Shape, Shape>>(a, b)}; }
    bool is_pair() const { return parts != nullptr; }
    const Shape& first() const
    {
        if (!parts) throw std::invalid_argument("shape is not a product");
        return parts->first;
    }
    const Shape& second() const
    {
        if (!parts) throw std::invalid_argument("shape is not a product");
        return parts->second;
    }
    friend bool operator==(const Shape& a, const Shape& b)
    {
        if (a.n != b.n || a.is_pair() != b.is_pair()) return false;
        return !a.is_pair() || (a.first() == b.first() && a.second() == b.second());
    }
};

// Sparse polynomial in a fixed number of variables with dense exponent vectors.
class Poly {
public:
    using Exps = std::vector<unsigned>;

    Poly() = default;
    explicit Poly(std::size_t arity) : n_(arity) {}

    static Poly constant(std::size_t arity, const rational& c)
    {
        Poly p(arity);
        if (c != 0) p.terms_[Exps(arity, 0)] = c;
        return p;
    }
    static Poly variable(std::size_t arity, std::size_t i)
    {
        if (i >= arity) throw std::invalid_argument("variable index out of range");
        Poly p(arity);
        Exps e(arity, 0);
        e[i] = 1;
        p.terms_[e] = 1;
        return p;
    }

    std::size_t arity() const { return n_; }
    const std::map<Exps, rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exps& e, const rational& c)
    {
        if (e.size() != n_) throw std::invalid_argument("exponent vector has the wrong length");
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        check(a, b);
        Poly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend Poly operator-(const Poly& a) { return a.scaled(-1); }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        check(a, b);
        Poly r(a.n_);
        for (const auto& [e1, c1] : a.terms_)
            for (const auto& [e2, c2] : b.terms_) {
                Exps e(a.n_);
                for (std::size_t i = 0; i < a.n_; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    Poly scaled(const rational& c) const
    {
        Poly r(n_);
        if (c == 0) return r;
        for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    Poly partial(std::size_t i) const
    {
        Poly r(n_);
        for (const auto& [e, c] : terms_)
            if (e[i] > 0) {
                Exps f = e;
                --f[i];
                r.add_term(f, c * e[i]);
            }
        return r;
    }

    // substitute vals[i] for variable i; every value has the same arity
    Poly substitute(const std::vector<Poly>& vals, std::size_t arity) const
    {
        if (vals.size() != n_) throw std::invalid_argument("substitution needs one value per variable");
        std::vector<std::vector<Poly>> pows(n_);
        Poly r(arity);
        for (const auto& [e, c] : terms_) {
            Poly t = constant(arity, c);
            for (std::size_t i = 0; i < n_; ++i) {
                if (e[i] == 0) continue;
                auto& pw = pows[i];
                if (pw.empty()) pw.push_back(constant(arity, 1));
                while (pw.size() <= e[i]) pw.push_back(pw.back() * vals[i]);
                t = t * pw[e[i]];
            }
            r = r + t;
        }
        return r;
    }

    // the same polynomial read in a larger variable set, variable i going to map[i]
    Poly reindex(std::size_t arity, const std::vector<std::size_t>& map) const
    {
        Poly r(arity);
        for (const auto& [e, c] : terms_) {
            Exps f(arity, 0);
            for (std::size_t i = 0; i < n_; ++i) f[map[i]] += e[i];
            r.add_term(f, c);
        }
        return r;
    }

    rational eval(const std::vector<rational>& x) const
    {
        rational s = 0;
        for (const auto& [e, c] : terms_) {
            rational t = c;
            for (std::size_t i = 0; i < n_; ++i)
                for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
            s += t;
        }
        return s;
    }

    unsigned degree() const
    {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) {
            unsigned s = 0;
            for (auto v : e) s += v;
            d = std::max(d, s);
        }
        return d;
    }

    // degree-major, then lexicographically descending exponents
    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Exps, rational>> ts(terms_.begin(), terms_.end());
        std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
            unsigned da = 0, db = 0;
            for (auto v : a.first) da += v;
            for (auto v : b.first) db += v;
            if (da != db) return da > db;
            return a.first > b.first;
        });
        std::string s;
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const auto& [e, c] = ts[k];
            rational a = abs(c);
            if (k == 0)
                s += c < 0 ? "-" : "";
            else
                s += c < 0 ? " - " : " + ";
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "x" + std::to_string(i + 1);
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty())
                s += a.str();
            else if (a == 1)
                s += mono;
            else
                s += a.str() + "*" + mono;
        }
        return s;
    }

private:
    static void check(const Poly& a, const Poly& b)
    {
        if (a.n_ != b.n_) throw std::invalid_argument("polynomials over different variable sets");
    }

    std::size_t n_ = 0;
    std::map<Exps, rational> terms_;
};

// A tuple of polynomials: a map from R^n to R^m.
struct PolyMap {
    std::size_t n = 0;
    std::vector<Poly> comps;

    std::size_t m() const { return comps.size(); }
    friend bool operator==(const PolyMap& a, const PolyMap& b) { return a.n == b.n && a.comps == b.comps; }

    std::string str() const
    {
        if (comps.size() == 1) return comps[0].str();
        std::string s = "(";
        for (std::size_t i = 0; i < comps.size(); ++i) s += (i ? ", " : "") + comps[i].str();
        return s + ")";
    }
};

struct ParseError : std::runtime_error {
    std::size_t line, column;
    ParseError(const std::string& msg, std::size_t l, std::size_t c)
        : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c)
    {
    }
};

namespace detail {

// Shared lexer for the polynomial and expression grammars.
class Lexer {
public:
    explicit Lexer(std::string text) : s_(std::move(text)) {}

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) advance();
    }
    bool done()
    {
        skip();
        return i_ >= s_.size();
    }
    char peek()
    {
        skip();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool accept(char c)
    {
        if (peek() != c) return false;
        advance();
        return true;
    }
    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool at_word(const std::string& w)
    {
        skip();
        return s_.compare(i_, w.size(), w) == 0;
    }
    void take(std::size_t n)
    {
        for (std::size_t k = 0; k < n; ++k) advance();
    }
    std::string digits()
    {
        skip();
        std::string d;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            d += s_[i_];
            advance();
        }
        if (d.empty()) fail("expected a number");
        return d;
    }
    rational number()
    {
        std::string a = digits();
        rational r{boost::multiprecision::cpp_int(a)};
        if (i_ < s_.size() && s_[i_] == '/') {
            advance();
            std::string b = digits();
            boost::multiprecision::cpp_int den(b);
            if (den == 0) fail("zero denominator");
            r /= rational(den);
        } else if (i_ < s_.size() && s_[i_] == '.') {
            advance();
            std::string b = digits();
            boost::multiprecision::cpp_int scale = 1;
            for (std::size_t k = 0; k < b.size(); ++k) scale *= 10;
            r += rational(boost::multiprecision::cpp_int(b), scale);
        }
        return r;
    }
    // "x" followed by a positive index; returns the zero-based index
    std::size_t variable()
    {
        skip();
        if (i_ >= s_.size() || s_[i_] != 'x') fail("expected a variable");
        advance();
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected a variable index after 'x'");
        std::string d = digits();
        if (d.size() > 6) fail("variable index too large");
        std::size_t k = std::stoul(d);
        if (k == 0) fail("variables are numbered from x1");
        return k - 1;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

private:
    void advance()
    {
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    std::string s_;
    std::size_t i_ = 0, line_ = 1, col_ = 1;
};

struct RawTerm {
    rational c = 1;
    std::map<std::size_t, unsigned> exps;
};

inline std::vector<RawTerm> parse_poly_terms(Lexer& lx)
{
    std::vector<RawTerm> out;
    bool neg = lx.accept('-');
    if (!neg) lx.accept('+');
    for (;;) {
        RawTerm t;
        if (neg) t.c = -1;
        for (;;) {
            char c = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                t.c *= lx.number();
            } else if (c == 'x') {
                std::size_t v = lx.variable();
                unsigned e = 1;
                if (lx.accept('^')) {
                    if (lx.peek() == '-') lx.fail("negative exponents are not allowed");
                    std::string d = lx.digits();
                    if (d.size() > 4) lx.fail("exponent too large");
                    e = static_cast<unsigned>(std::stoul(d));
                }
                t.exps[v] += e;
            } else {
                lx.fail("expected a number or a variable");
            }
            if (!lx.accept('*')) break;
        }
        out.push_back(std::move(t));
        if (lx.accept('+'))
            neg = false;
        else if (lx.accept('-'))
            neg = true;
        else
            break;
    }
    return out;
}

inline Poly build_poly(const std::vector<RawTerm>& ts, std::size_t arity)
{
    Poly p(arity);
    for (const auto& t : ts) {
        Poly::Exps e(arity, 0);
        for (const auto& [v, k] : t.exps) {
            if (v >= arity) throw ParseError("unknown variable x" + std::to_string(v + 1), 1, 1);
            e[v] += k;
        }
        p.add_term(e, t.c);
    }
    return p;
}

}  // namespace detail

// map := poly | "(" poly {"," poly} ")". The arity defaults to the largest variable index used.
inline PolyMap parse_poly(const std::string& text, std::optional<std::size_t> arity = {})
{
    detail::Lexer lx(text);
    std::vector<std::vector<detail::RawTerm>> comps;
    if (lx.accept('(')) {
        do comps.push_back(detail::parse_poly_terms(lx));
        while (lx.accept(','));
        lx.expect(')');
    } else {
        comps.push_back(detail::parse_poly_terms(lx));
    }
    if (!lx.done()) lx.fail("unexpected trailing input");
    std::size_t n = 0;
    for (const auto& c : comps)
        for (const auto& t : c)
            for (const auto& [v, k] : t.exps) n = std::max(n, v + 1);
    if (arity) {
        if (*arity < n) throw ParseError("unknown variable x" + std::to_string(n) + " for arity " + std::to_string(*arity), 1, 1);
        n = *arity;
    }
    PolyMap f{n, {}};
    for (const auto& c : comps) f.comps.push_back(detail::build_poly(c, n));
    return f;
}

// ---------------------------------------------------------------- Cartesian structure

inline PolyMap poly_zero(std::size_t n, std::size_t m) { return {n, std::vector<Poly>(m, Poly(n))}; }

inline PolyMap poly_id(std::size_t n)
{
    PolyMap f{n, {}};
    for (std::size_t i = 0; i < n; ++i) f.comps.push_back(Poly::variable(n, i));
    return f;
}

// projection of an (a + b)-tuple onto its first or second block
inline PolyMap poly_proj(int i, std::size_t a, std::size_t b)
{
    PolyMap f{a + b, {}};
    std::size_t off = i == 0 ? 0 : a, len = i == 0 ? a : b;
    for (std::size_t k = 0; k < len; ++k) f.comps.push_back(Poly::variable(a + b, off + k));
    return f;
}

// diagrammatic order: first f, then g
inline PolyMap poly_compose(const PolyMap& f, const PolyMap& g)
{
    if (f.m() != g.n) throw std::invalid_argument("poly compose: arity mismatch " + std::to_string(f.m()) + " vs " + std::to_string(g.n));
    PolyMap h{f.n, {}};
    for (const auto& p : g.comps) h.comps.push_back(p.substitute(f.comps, f.n));
    return h;
}

inline PolyMap poly_add(const PolyMap& f, const PolyMap& g)
{
    if (f.n != g.n || f.m() != g.m()) throw std::invalid_argument("poly add: arity mismatch");
    PolyMap h{f.n, {}};
    for (std::size_t i = 0; i < f.m(); ++i) h.comps.push_back(f.comps[i] + g.comps[i]);
    return h;
}

inline PolyMap poly_pair(const PolyMap& f, const PolyMap& g)
{
    if (f.n != g.n) throw std::invalid_argument("poly pair: arity mismatch");
    PolyMap h = f;
    h.comps.insert(h.comps.end(), g.comps.begin(), g.comps.end());
    return h;
}

// entry (i, j) = d f_i / d x_j
inline std::vector<std::vector<Poly>> jacobian(const PolyMap& f)
{
    std::vector<std::vector<Poly>> j;
    for (const auto& p : f.comps) {
        std::vector<Poly> row;
        for (std::size_t k = 0; k < f.n; ++k) row.push_back(p.partial(k));
        j.push_back(std::move(row));
    }
    return j;
}

// D[f](x, v) = J_f(x) v, in 2n variables
inline PolyMap D_poly(const PolyMap& f)
{
    std::size_t n = f.n;
    std::vector<std::size_t> lift(n);
    for (std::size_t i = 0; i < n; ++i) lift[i] = i;
    auto J = jacobian(f);
    PolyMap d{2 * n, {}};
    for (const auto& row : J) {
        Poly s(2 * n);
        for (std::size_t j = 0; j < n; ++j) s = s + row[j].reindex(2 * n, lift) * Poly::variable(2 * n, n + j);
        d.comps.push_back(std::move(s));
    }
    return d;
}

// R[f](x, t) = J_f(x)^T t, in n + m variables
inline PolyMap R_poly(const PolyMap& f)
{
    std::size_t n = f.n, m = f.m(), w = n + m;
    std::vector<std::size_t> lift(n);
    for (std::size_t i = 0; i < n; ++i) lift[i] = i;
    auto J = jacobian(f);
    PolyMap r{w, {}};
    for (std::size_t j = 0; j < n; ++j) {
        Poly s(w);
        for (std::size_t i = 0; i < m; ++i) s = s + J[i][j].reindex(w, lift) * Poly::variable(w, n + i);
        r.comps.push_back(std::move(s));
    }
    return r;
}

// Seeded random map: at most `terms` terms per component, total degree at most `degree`, coefficients in -3..3.
inline PolyMap random_poly_map(std::size_t n, std::size_t m, std::mt19937_64& rng, unsigned degree = 3, std::size_t terms = 5)
{
    std::uniform_int_distribution<int> coef(-3, 3), count(0, static_cast<int>(terms)), deg(0, static_cast<int>(degree));
    std::uniform_int_distribution<std::size_t> var(0, n ? n - 1 : 0);
    PolyMap f{n, {}};
    for (std::size_t i = 0; i < m; ++i) {
        Poly p(n);
        int k = count(rng);
        for (int t = 0; t < k; ++t) {
            Poly::Exps e(n, 0);
            int d = n ? deg(rng) : 0;
            for (int s = 0; s < d; ++s) ++e[var(rng)];
            p.add_term(e, coef(rng));
        }
        f.comps.push_back(std::move(p));
    }
    return f;
}

// POLY as a Cartesian reverse differential category; maps carry product shapes.
class PolyCat {
public:
    using Object = Shape;
    struct Map {
        Shape dom, cod;
        PolyMap f;
    };

    Object product(const Object& a, const Object& b) const { return Shape::pair(a, b); }
    Object first(const Object& p) const { return p.first(); }
    Object second(const Object& p) const { return p.second(); }
    Object dom(const Map& f) const { return f.dom; }
    Object cod(const Map& f) const { return f.cod; }

    Map id(const Object& a) const { return {a, a, poly_id(a.n)}; }
    Map zero(const Object& a, const Object& b) const { return {a, b, poly_zero(a.n, b.n)}; }
    Map proj(int i, const Object& a, const Object& b) const { return {product(a, b), i == 0 ? a : b, poly_proj(i, a.n, b.n)}; }
    Map compose(const Map& f, const Map& g) const
    {
        if (!(f.cod == g.dom)) throw std::invalid_argument("poly compose: shape mismatch");
        return {f.dom, g.cod, poly_compose(f.f, g.f)};
    }
    Map pair(const Map& f, const Map& g) const
    {
        if (!(f.dom == g.dom)) throw std::invalid_argument("poly pair: shape mismatch");
        return {f.dom, product(f.cod, g.cod), poly_pair(f.f, g.f)};
    }
    Map add(const Map& f, const Map& g) const
    {
        if (!(f.dom == g.dom) || !(f.cod == g.cod)) throw std::invalid_argument("poly add: shape mismatch");
        return {f.dom, f.cod, poly_add(f.f, g.f)};
    }
    Map D(const Map& f) const { return {product(f.dom, f.dom), f.cod, D_poly(f.f)}; }
    Map R(const Map& f) const { return {product(f.dom, f.cod), f.dom, R_poly(f.f)}; }
};

}  // namespace rdc
