#pragma once

#include "poly.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <unordered_map>

namespace rdc {

// Elementary-function expression trees; subtrees are shared, never mutated.
struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum Kind { Const, Var, Add, Mul, Neg, Sin, Cos, Exp, Pow } kind;
    rational c;          // Const
    std::size_t i = 0;   // Var index, Pow exponent
    Expr a, b;
};

namespace ex {

inline Expr make(ExprNode::Kind k, Expr a = {}, Expr b = {}, std::size_t i = 0, rational c = 0)
{
    return std::make_shared<const ExprNode>(ExprNode{k, std::move(c), i, std::move(a), std::move(b)});
}
inline bool is_const(const Expr& e) { return e->kind == ExprNode::Const; }
inline bool is_const(const Expr& e, int v) { return is_const(e) && e->c == v; }

inline Expr constant(const rational& c) { return make(ExprNode::Const, {}, {}, 0, c); }
inline Expr var(std::size_t i) { return make(ExprNode::Var, {}, {}, i); }

// Constructors fold constant subtrees and drop additive zeros and multiplicative ones.
inline Expr add(const Expr& a, const Expr& b)
{
    if (is_const(a) && is_const(b)) return constant(a->c + b->c);
    if (is_const(a, 0)) return b;
    if (is_const(b, 0)) return a;
    return make(ExprNode::Add, a, b);
}
inline Expr neg(const Expr& a)
{
    if (is_const(a)) return constant(-a->c);
    if (a->kind == ExprNode::Neg) return a->a;
    return make(ExprNode::Neg, a);
}
inline Expr sub(const Expr& a, const Expr& b) { return add(a, neg(b)); }
inline Expr mul(const Expr& a, const Expr& b)
{
    if (is_const(a) && is_const(b)) return constant(a->c * b->c);
    if (is_const(a, 0) || is_const(b, 0)) return constant(0);
    if (is_const(a, 1)) return b;
    if (is_const(b, 1)) return a;
    if (is_const(a, -1)) return neg(b);
    if (is_const(b, -1)) return neg(a);
    return make(ExprNode::Mul, a, b);
}
inline Expr pow(const Expr& a, std::size_t n)
{
    if (n == 0) return constant(1);
    if (n == 1) return a;
    if (is_const(a)) {
        rational r = 1;
        for (std::size_t k = 0; k < n; ++k) r *= a->c;
        return constant(r);
    }
    return make(ExprNode::Pow, a, {}, n);
}
inline Expr sin(const Expr& a) { return is_const(a, 0) ? constant(0) : make(ExprNode::Sin, a); }
inline Expr cos(const Expr& a) { return is_const(a, 0) ? constant(1) : make(ExprNode::Cos, a); }
inline Expr exp(const Expr& a) { return is_const(a, 0) ? constant(1) : make(ExprNode::Exp, a); }

}  // namespace ex

inline int expr_prec(const Expr& e)
{
    switch (e->kind) {
    case ExprNode::Add: return 1;
    case ExprNode::Neg: return 1;
    case ExprNode::Mul: return 2;
    case ExprNode::Const: return e->c < 0 ? 1 : (denominator(e->c) != 1 ? 2 : 4);
    case ExprNode::Pow: return 3;
    default: return 4;
    }
}

inline std::string expr_str(const Expr& e)
{
    auto wrap = [](const Expr& x, int p) { return expr_prec(x) < p ? "(" + expr_str(x) + ")" : expr_str(x); };
    switch (e->kind) {
    case ExprNode::Const: return e->c.str();
    case ExprNode::Var: return "x" + std::to_string(e->i + 1);
    case ExprNode::Add: {
        if (e->b->kind == ExprNode::Neg) return expr_str(e->a) + " - " + wrap(e->b->a, 2);
        if (ex::is_const(e->b) && e->b->c < 0) return expr_str(e->a) + " - " + rational(-e->b->c).str();
        return expr_str(e->a) + " + " + expr_str(e->b);
    }
    case ExprNode::Neg: return "-" + wrap(e->a, 2);
    case ExprNode::Mul: return wrap(e->a, 2) + "*" + wrap(e->b, 3);
    case ExprNode::Pow: return wrap(e->a, 4) + "^" + std::to_string(e->i);
    case ExprNode::Sin: return "sin(" + expr_str(e->a) + ")";
    case ExprNode::Cos: return "cos(" + expr_str(e->a) + ")";
    case ExprNode::Exp: return "exp(" + expr_str(e->a) + ")";
    }
    return "?";
}

struct ExprMap {
    std::size_t n = 0;
    std::vector<Expr> comps;

    std::size_t m() const { return comps.size(); }
    std::string str() const
    {
        if (comps.size() == 1) return expr_str(comps[0]);
        std::string s = "(";
        for (std::size_t i = 0; i < comps.size(); ++i) s += (i ? ", " : "") + expr_str(comps[i]);
        return s + ")";
    }
};

namespace detail {

// Memoised bottom-up rewrite over the shared DAG.
class ExprRewriter {
public:
    using Leaf = std::function<Expr(const Expr&)>;
    explicit ExprRewriter(Leaf leaf) : leaf_(std::move(leaf)) {}

    Expr operator()(const Expr& e)
    {
        if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second;
        Expr r;
        switch (e->kind) {
        case ExprNode::Const:
        case ExprNode::Var: r = leaf_(e); break;
        case ExprNode::Add: r = ex::add((*this)(e->a), (*this)(e->b)); break;
        case ExprNode::Mul: r = ex::mul((*this)(e->a), (*this)(e->b)); break;
        case ExprNode::Neg: r = ex::neg((*this)(e->a)); break;
        case ExprNode::Sin: r = ex::sin((*this)(e->a)); break;
        case ExprNode::Cos: r = ex::cos((*this)(e->a)); break;
        case ExprNode::Exp: r = ex::exp((*this)(e->a)); break;
        case ExprNode::Pow: r = ex::pow((*this)(e->a), e->i); break;
        }
        memo_.emplace(e.get(), r);
        keep_.push_back(e);
        return r;
    }

private:
    Leaf leaf_;
    std::unordered_map<const ExprNode*, Expr> memo_;
    std::vector<Expr> keep_;
};

class Differentiator {
public:
    explicit Differentiator(std::size_t i) : i_(i) {}

    Expr operator()(const Expr& e)
    {
        if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second;
        Expr r;
        switch (e->kind) {
        case ExprNode::Const: r = ex::constant(0); break;
        case ExprNode::Var: r = ex::constant(e->i == i_ ? 1 : 0); break;
        case ExprNode::Add: r = ex::add((*this)(e->a), (*this)(e->b)); break;
        case ExprNode::Neg: r = ex::neg((*this)(e->a)); break;
        case ExprNode::Mul: r = ex::add(ex::mul((*this)(e->a), e->b), ex::mul(e->a, (*this)(e->b))); break;
        case ExprNode::Sin: r = ex::mul(ex::cos(e->a), (*this)(e->a)); break;
        case ExprNode::Cos: r = ex::neg(ex::mul(ex::sin(e->a), (*this)(e->a))); break;
        case ExprNode::Exp: r = ex::mul(e, (*this)(e->a)); break;
        case ExprNode::Pow:
            r = ex::mul(ex::mul(ex::constant(rational(e->i)), ex::pow(e->a, e->i - 1)), (*this)(e->a));
            break;
        }
        memo_.emplace(e.get(), r);
        keep_.push_back(e);
        return r;
    }

private:
    std::size_t i_;
    std::unordered_map<const ExprNode*, Expr> memo_;
    std::vector<Expr> keep_;
};

inline Expr parse_sum(Lexer& lx, std::size_t& nvars);

inline Expr parse_factor(Lexer& lx, std::size_t& nvars)
{
    char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return ex::constant(lx.number());
    if (c == 'x') {
        std::size_t v = lx.variable();
        nvars = std::max(nvars, v + 1);
        Expr base = ex::var(v);
        if (lx.accept('^')) {
            if (lx.peek() == '-') lx.fail("negative exponents are not allowed");
            std::string d = lx.digits();
            if (d.size() > 4) lx.fail("exponent too large");
            return ex::pow(base, std::stoul(d));
        }
        return base;
    }
    for (const char* fn : {"sin", "cos", "exp"}) {
        if (lx.at_word(fn)) {
            lx.take(3);
            if (lx.peek() != '(') lx.fail(std::string(fn) + " needs an argument in parentheses");
            lx.expect('(');
            Expr arg = parse_sum(lx, nvars);
            lx.expect(')');
            Expr r = fn[0] == 's' ? ex::sin(arg) : fn[0] == 'c' ? ex::cos(arg) : ex::exp(arg);
            if (lx.accept('^')) r = ex::pow(r, std::stoul(lx.digits()));
            return r;
        }
    }
    if (c == '(') {
        lx.expect('(');
        Expr r = parse_sum(lx, nvars);
        lx.expect(')');
        if (lx.accept('^')) r = ex::pow(r, std::stoul(lx.digits()));
        return r;
    }
    lx.fail("expected a number, a variable or a function");
}

inline Expr parse_term(Lexer& lx, std::size_t& nvars)
{
    Expr t = parse_factor(lx, nvars);
    while (lx.accept('*')) t = ex::mul(t, parse_factor(lx, nvars));
    return t;
}

inline Expr parse_sum(Lexer& lx, std::size_t& nvars)
{
    bool neg = lx.accept('-');
    if (!neg) lx.accept('+');
    Expr s = parse_term(lx, nvars);
    if (neg) s = ex::neg(s);
    for (;;) {
        if (lx.accept('+'))
            s = ex::add(s, parse_term(lx, nvars));
        else if (lx.accept('-'))
            s = ex::sub(s, parse_term(lx, nvars));
        else
            return s;
    }
}

}  // namespace detail

// The polynomial grammar extended with sin, cos and exp applications and parenthesised subterms.
inline ExprMap parse_expr(const std::string& text, std::optional<std::size_t> arity = {})
{
    detail::Lexer lx(text);
    std::size_t n = 0;
    ExprMap f;
    // a leading parenthesis opens a tuple only when a top-level comma follows
    bool tuple = false;
    {
        int depth = 0;
        for (char c : text) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 1) tuple = true;
        }
        std::size_t p = text.find_first_not_of(" \t\r\n");
        tuple = tuple && p != std::string::npos && text[p] == '(';
    }
    if (tuple) {
        lx.expect('(');
        do f.comps.push_back(detail::parse_sum(lx, n));
        while (lx.accept(','));
        lx.expect(')');
    } else {
        f.comps.push_back(detail::parse_sum(lx, n));
    }
    if (!lx.done()) lx.fail("unexpected trailing input");
    if (arity) {
        if (*arity < n) throw ParseError("unknown variable x" + std::to_string(n) + " for arity " + std::to_string(*arity), 1, 1);
        n = *arity;
    }
    f.n = n;
    return f;
}

inline Expr partial(const Expr& e, std::size_t i) { return detail::Differentiator(i)(e); }

// diagrammatic order: first f, then g
inline ExprMap expr_compose(const ExprMap& f, const ExprMap& g)
{
    if (f.m() != g.n) throw std::invalid_argument("expr compose: arity mismatch");
    detail::ExprRewriter rw([&](const Expr& e) { return e->kind == ExprNode::Var ? f.comps[e->i] : e; });
    ExprMap h{f.n, {}};
    for (const auto& c : g.comps) h.comps.push_back(rw(c));
    return h;
}

inline ExprMap expr_add(const ExprMap& f, const ExprMap& g)
{
    if (f.n != g.n || f.m() != g.m()) throw std::invalid_argument("expr add: arity mismatch");
    ExprMap h{f.n, {}};
    for (std::size_t i = 0; i < f.m(); ++i) h.comps.push_back(ex::add(f.comps[i], g.comps[i]));
    return h;
}

inline ExprMap expr_pair(const ExprMap& f, const ExprMap& g)
{
    if (f.n != g.n) throw std::invalid_argument("expr pair: arity mismatch");
    ExprMap h = f;
    h.comps.insert(h.comps.end(), g.comps.begin(), g.comps.end());
    return h;
}

inline ExprMap expr_proj(int i, std::size_t a, std::size_t b)
{
    ExprMap f{a + b, {}};
    std::size_t off = i == 0 ? 0 : a, len = i == 0 ? a : b;
    for (std::size_t k = 0; k < len; ++k) f.comps.push_back(ex::var(off + k));
    return f;
}

inline ExprMap expr_id(std::size_t n) { return expr_proj(0, n, 0); }
inline ExprMap expr_zero(std::size_t n, std::size_t m) { return {n, std::vector<Expr>(m, ex::constant(0))}; }

// D[f](x, v) = sum_j (d f_i / d x_j) v_j
inline ExprMap D_expr(const ExprMap& f)
{
    ExprMap d{2 * f.n, {}};
    for (const auto& c : f.comps) {
        Expr s = ex::constant(0);
        for (std::size_t j = 0; j < f.n; ++j) s = ex::add(s, ex::mul(partial(c, j), ex::var(f.n + j)));
        d.comps.push_back(s);
    }
    return d;
}

// R[f](x, t) = sum_i (d f_i / d x_j) t_i
inline ExprMap R_expr(const ExprMap& f)
{
    ExprMap r{f.n + f.m(), {}};
    for (std::size_t j = 0; j < f.n; ++j) {
        Expr s = ex::constant(0);
        for (std::size_t i = 0; i < f.m(); ++i) s = ex::add(s, ex::mul(partial(f.comps[i], j), ex::var(f.n + i)));
        r.comps.push_back(s);
    }
    return r;
}

struct NonFinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::vector<double> eval(const ExprMap& f, const std::vector<double>& x)
{
    if (x.size() != f.n) throw std::invalid_argument("point has " + std::to_string(x.size()) + " coordinates, map takes " + std::to_string(f.n));
    std::unordered_map<const ExprNode*, double> memo;
    std::function<double(const Expr&)> go = [&](const Expr& e) -> double {
        if (auto it = memo.find(e.get()); it != memo.end()) return it->second;
        double v = 0;
        switch (e->kind) {
        case ExprNode::Const: v = e->c.convert_to<double>(); break;
        case ExprNode::Var: v = x.at(e->i); break;
        case ExprNode::Add: v = go(e->a) + go(e->b); break;
        case ExprNode::Mul: v = go(e->a) * go(e->b); break;
        case ExprNode::Neg: v = -go(e->a); break;
        case ExprNode::Sin: v = std::sin(go(e->a)); break;
        case ExprNode::Cos: v = std::cos(go(e->a)); break;
        case ExprNode::Exp: v = std::exp(go(e->a)); break;
        case ExprNode::Pow: v = std::pow(go(e->a), static_cast<double>(e->i)); break;
        }
        memo.emplace(e.get(), v);
        return v;
    };
    std::vector<double> out;
    for (const auto& c : f.comps) {
        double v = go(c);
        if (!std::isfinite(v)) throw NonFinite("non-finite value");
        out.push_back(v);
    }
    return out;
}

// Converts a map built only from constants, variables, sums, products and powers.
inline std::optional<PolyMap> to_poly(const ExprMap& f)
{
    std::function<std::optional<Poly>(const Expr&)> go = [&](const Expr& e) -> std::optional<Poly> {
        switch (e->kind) {
        case ExprNode::Const: return Poly::constant(f.n, e->c);
        case ExprNode::Var: return Poly::variable(f.n, e->i);
        case ExprNode::Add: {
            auto a = go(e->a), b = go(e->b);
            if (!a || !b) return std::nullopt;
            return *a + *b;
        }
        case ExprNode::Mul: {
            auto a = go(e->a), b = go(e->b);
            if (!a || !b) return std::nullopt;
            return *a * *b;
        }
        case ExprNode::Neg: {
            auto a = go(e->a);
            if (!a) return std::nullopt;
            return -*a;
        }
        case ExprNode::Pow: {
            auto a = go(e->a);
            if (!a) return std::nullopt;
            Poly r = Poly::constant(f.n, 1);
            for (std::size_t k = 0; k < e->i; ++k) r = r * *a;
            return r;
        }
        default: return std::nullopt;
        }
    };
    PolyMap p{f.n, {}};
    for (const auto& c : f.comps) {
        auto q = go(c);
        if (!q) return std::nullopt;
        p.comps.push_back(std::move(*q));
    }
    return p;
}

inline ExprMap from_poly(const PolyMap& p)
{
    ExprMap f{p.n, {}};
    for (const auto& c : p.comps) {
        Expr s = ex::constant(0);
        for (const auto& [e, k] : c.terms()) {
            Expr t = ex::constant(k);
            for (std::size_t i = 0; i < e.size(); ++i) t = ex::mul(t, ex::pow(ex::var(i), e[i]));
            s = ex::add(s, t);
        }
        f.comps.push_back(s);
    }
    return f;
}

// Max over i of |R[f](x, 1)_i - central difference_i| / max(|R[f](x, 1)_i|, 1).
inline double fd_gradient_check(const ExprMap& f, const std::vector<double>& x, double h = 1e-6)
{
    if (f.m() != 1) throw std::invalid_argument("fd_gradient_check needs a scalar map");
    ExprMap r = R_expr(f);
    std::vector<double> xt = x;
    xt.push_back(1.0);
    std::vector<double> g = eval(r, xt);
    double worst = 0;
    for (std::size_t i = 0; i < f.n; ++i) {
        std::vector<double> p = x, q = x;
        p[i] += h;
        q[i] -= h;
        double fd = (eval(f, p)[0] - eval(f, q)[0]) / (2 * h);
        worst = std::max(worst, std::abs(g[i] - fd) / std::max(std::abs(g[i]), 1.0));
    }
    return worst;
}

struct DescentStep {
    std::size_t step;
    std::vector<double> x;
    double loss;
};

struct Divergence : std::runtime_error {
    std::size_t step;
    Divergence(std::size_t s) : std::runtime_error("non-finite value at step " + std::to_string(s)), step(s) {}
};

// x <- x - lr * R[loss](x, 1); the trajectory includes the initial point as step 0.
inline std::vector<DescentStep> gradient_descent(const ExprMap& loss, std::vector<double> x, double lr, std::size_t steps)
{
    if (loss.m() != 1) throw std::invalid_argument("the loss must be scalar");
    if (!(lr >= 0)) throw std::invalid_argument("the learning rate must be non-negative");
    if (x.size() != loss.n) throw std::invalid_argument("initial point has the wrong length");
    ExprMap r = R_expr(loss);
    std::vector<DescentStep> traj;
    auto value = [&](std::size_t s) {
        try {
            return eval(loss, x)[0];
        } catch (const NonFinite&) {
            throw Divergence(s);
        }
    };
    traj.push_back({0, x, value(0)});
    for (std::size_t s = 1; s <= steps; ++s) {
        std::vector<double> xt = x;
        xt.push_back(1.0);
        std::vector<double> g;
        try {
            g = eval(r, xt);
        } catch (const NonFinite&) {
            throw Divergence(s);
        }
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= lr * g[i];
        for (double v : x)
            if (!std::isfinite(v)) throw Divergence(s);
        traj.push_back({s, x, value(s)});
    }
    return traj;
}

inline std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// step <TAB> x... <TAB> loss
inline std::string format_trajectory(const std::vector<DescentStep>& traj)
{
    std::string out;
    for (const auto& s : traj) {
        out += std::to_string(s.step);
        for (double v : s.x) out += "\t" + format_double(v);
        out += "\t" + format_double(s.loss) + "\n";
    }
    return out;
}

// Random expression of bounded depth over n variables.
inline Expr random_expr(std::size_t n, std::size_t depth, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> pick(0, 9), small(-3, 3);
    std::uniform_int_distribution<std::size_t> var(0, n ? n - 1 : 0);
    if (depth == 0) {
        if (n == 0 || pick(rng) < 3) return ex::constant(small(rng));
        return ex::var(var(rng));
    }
    switch (pick(rng)) {
    case 0: return ex::var(var(rng));
    case 1:
    case 2: return ex::add(random_expr(n, depth - 1, rng), random_expr(n, depth - 1, rng));
    case 3:
    case 4: return ex::mul(random_expr(n, depth - 1, rng), random_expr(n, depth - 1, rng));
    case 5: return ex::sin(random_expr(n, depth - 1, rng));
    case 6: return ex::cos(random_expr(n, depth - 1, rng));
    case 7: return ex::exp(ex::mul(ex::constant(rational(1, 2)), ex::sin(random_expr(n, depth - 1, rng))));
    case 8: return ex::pow(random_expr(n, depth - 1, rng), 2 + pick(rng) % 2);
    default: return ex::neg(random_expr(n, depth - 1, rng));
    }
}

inline ExprMap random_expr_map(std::size_t n, std::size_t m, std::mt19937_64& rng, std::size_t depth = 4)
{
    ExprMap f{n, {}};
    for (std::size_t i = 0; i < m; ++i) f.comps.push_back(random_expr(n, depth, rng));
    return f;
}

// SMOOTH restricted to expression maps, as a Cartesian reverse differential category.
class ExprCat {
public:
    using Object = Shape;
    struct Map {
        Shape dom, cod;
        ExprMap f;
    };

    Object product(const Object& a, const Object& b) const { return Shape::pair(a, b); }
    Object first(const Object& p) const { return p.first(); }
    Object second(const Object& p) const { return p.second(); }
    Object dom(const Map& f) const { return f.dom; }
    Object cod(const Map& f) const { return f.cod; }

    Map id(const Object& a) const { return {a, a, expr_id(a.n)}; }
    Map zero(const Object& a, const Object& b) const { return {a, b, expr_zero(a.n, b.n)}; }
    Map proj(int i, const Object& a, const Object& b) const { return {product(a, b), i == 0 ? a : b, expr_proj(i, a.n, b.n)}; }
    Map compose(const Map& f, const Map& g) const
    {
        if (!(f.cod == g.dom)) throw std::invalid_argument("expr compose: shape mismatch");
        return {f.dom, g.cod, expr_compose(f.f, g.f)};
    }
    Map pair(const Map& f, const Map& g) const
    {
        if (!(f.dom == g.dom)) throw std::invalid_argument("expr pair: shape mismatch");
        return {f.dom, product(f.cod, g.cod), expr_pair(f.f, g.f)};
    }
    Map add(const Map& f, const Map& g) const
    {
        if (!(f.dom == g.dom) || !(f.cod == g.cod)) throw std::invalid_argument("expr add: shape mismatch");
        return {f.dom, f.cod, expr_add(f.f, g.f)};
    }
    Map D(const Map& f) const { return {product(f.dom, f.dom), f.cod, D_expr(f.f)}; }
    Map R(const Map& f) const { return {product(f.dom, f.cod), f.dom, R_expr(f.f)}; }
};

}  // namespace rdc
