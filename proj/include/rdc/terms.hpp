#pragma once

#include "cokleisli.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdc::laws {

// Object expressions over named object variables.
struct OExpr {
    enum Kind { Var, Unit, Bang, Tensor, Prod } kind;
    std::string var;
    std::shared_ptr<const OExpr> l, r;
};
using O = std::shared_ptr<const OExpr>;

inline O ovar(std::string n) { return std::make_shared<OExpr>(OExpr{OExpr::Var, std::move(n), {}, {}}); }
inline O ounit() { return std::make_shared<OExpr>(OExpr{OExpr::Unit, {}, {}, {}}); }
inline O obang(O a) { return std::make_shared<OExpr>(OExpr{OExpr::Bang, {}, std::move(a), {}}); }
inline O oten(O a, O b) { return std::make_shared<OExpr>(OExpr{OExpr::Tensor, {}, std::move(a), std::move(b)}); }
inline O oprod(O a, O b) { return std::make_shared<OExpr>(OExpr{OExpr::Prod, {}, std::move(a), std::move(b)}); }

inline std::string show(const O& o)
{
    switch (o->kind) {
    case OExpr::Var:
        return o->var;
    case OExpr::Unit:
        return "k";
    case OExpr::Bang:
        return "!" + (o->l->kind == OExpr::Var || o->l->kind == OExpr::Bang ? show(o->l) : "(" + show(o->l) + ")");
    case OExpr::Tensor:
        return "(" + show(o->l) + " (x) " + show(o->r) + ")";
    case OExpr::Prod:
        return "(" + show(o->l) + " x " + show(o->r) + ")";
    }
    return "?";
}

// Monoidal terms: morphisms of the ambient category built from the model's generators.
enum class Op {
    Id, Sym, Zero, Compose, Tensor, Add, Proj, Inj,
    Delta, Eps, Comult, Counit, Nabla, Unit, Chi, ChiInv, D, Dcirc, Eta, R, Cup, Cap,
    Star, StarCupCap, Bang, Var, Rewire,
    RFromD, DFromR, RFromDcirc, EtaFromD, DFromEta, DcircFromComult,
    KlLift, KlCompose, CtxId, CtxLift, CtxCompose, CtxSubst, CtxTensor, CtxDagger, ToKl, ToCtx
};

struct TermNode;
using T = std::shared_ptr<const TermNode>;

struct TermNode {
    Op op;
    std::vector<O> objs;
    std::vector<T> kids;
    std::string name;
    std::vector<std::size_t> perm;
    int index = 0;
};

namespace t {
inline T mk(Op op, std::vector<O> objs = {}, std::vector<T> kids = {}, int index = 0)
{
    return std::make_shared<TermNode>(TermNode{op, std::move(objs), std::move(kids), {}, {}, index});
}
inline T id(O a) { return mk(Op::Id, {a}); }
inline T sym(O a, O b) { return mk(Op::Sym, {a, b}); }
inline T zero(O a, O b) { return mk(Op::Zero, {a, b}); }
inline T seq(std::vector<T> ks) { return mk(Op::Compose, {}, std::move(ks)); }
inline T ten(T a, T b) { return mk(Op::Tensor, {}, {a, b}); }
inline T add(T a, T b) { return mk(Op::Add, {}, {a, b}); }
inline T proj(int i, O a, O b) { return mk(Op::Proj, {a, b}, {}, i); }
inline T inj(int i, O a, O b) { return mk(Op::Inj, {a, b}, {}, i); }
inline T delta(O a) { return mk(Op::Delta, {a}); }
inline T eps(O a) { return mk(Op::Eps, {a}); }
inline T comult(O a) { return mk(Op::Comult, {a}); }
inline T counit(O a) { return mk(Op::Counit, {a}); }
inline T nabla(O a) { return mk(Op::Nabla, {a}); }
inline T unit(O a) { return mk(Op::Unit, {a}); }
inline T chi(O a, O b) { return mk(Op::Chi, {a, b}); }
inline T chi_inv(O a, O b) { return mk(Op::ChiInv, {a, b}); }
inline T d(O a) { return mk(Op::D, {a}); }
inline T dcirc(O a) { return mk(Op::Dcirc, {a}); }
inline T eta(O a) { return mk(Op::Eta, {a}); }
inline T r(O a) { return mk(Op::R, {a}); }
inline T cup(O a) { return mk(Op::Cup, {a}); }
inline T cap(O a) { return mk(Op::Cap, {a}); }
inline T star(T f) { return mk(Op::Star, {}, {f}); }
inline T star_cc(T f) { return mk(Op::StarCupCap, {}, {f}); }
inline T bang(T f) { return mk(Op::Bang, {}, {f}); }
inline T var(std::string n)
{
    auto p = std::make_shared<TermNode>(TermNode{Op::Var, {}, {}, std::move(n), {}, 0});
    return p;
}
inline T rewire(O from, O to, std::vector<std::size_t> perm = {})
{
    return std::make_shared<TermNode>(TermNode{Op::Rewire, {from, to}, {}, {}, std::move(perm), 0});
}
inline T r_from_d(T d, O a) { return mk(Op::RFromD, {a}, {d}); }
inline T d_from_r(T r, O a) { return mk(Op::DFromR, {a}, {r}); }
inline T r_from_dcirc(T dc, O a) { return mk(Op::RFromDcirc, {a}, {dc}); }
inline T eta_from_d(T d, O a) { return mk(Op::EtaFromD, {a}, {d}); }
inline T d_from_eta(T e, O a) { return mk(Op::DFromEta, {a}, {e}); }
inline T dcirc_from_comult(O a) { return mk(Op::DcircFromComult, {a}); }
inline T kl_lift(T g) { return mk(Op::KlLift, {}, {g}); }
inline T kl_compose(T f, T g) { return mk(Op::KlCompose, {}, {f, g}); }
inline T ctx_id(O x, O a) { return mk(Op::CtxId, {x, a}); }
inline T ctx_lift(O x, T g) { return mk(Op::CtxLift, {x}, {g}); }
inline T ctx_compose(T f, T g, O x) { return mk(Op::CtxCompose, {x}, {f, g}); }
inline T ctx_subst(T h, T f) { return mk(Op::CtxSubst, {}, {h, f}); }
inline T ctx_tensor(T f, T g, O x) { return mk(Op::CtxTensor, {x}, {f, g}); }
inline T ctx_dagger(T f, O x) { return mk(Op::CtxDagger, {x}, {f}); }
inline T to_kl(T g, O x) { return mk(Op::ToKl, {x}, {g}); }
inline T to_ctx(T f, O x, O a) { return mk(Op::ToCtx, {x, a}, {f}); }
}  // namespace t

inline std::string show(const T& x);

namespace detail {
inline std::string objs(const TermNode& n)
{
    std::string s;
    for (std::size_t i = 0; i < n.objs.size(); ++i) s += (i ? "," : "") + show(n.objs[i]);
    return s;
}
inline std::string gen(const std::string& name, const TermNode& n) { return name + "[" + objs(n) + "]"; }
inline std::string fn(const std::string& name, const TermNode& n)
{
    std::string s = name + "(";
    for (std::size_t i = 0; i < n.kids.size(); ++i) s += (i ? ", " : "") + show(n.kids[i]);
    if (!n.objs.empty()) s += (n.kids.empty() ? "" : "; ") + objs(n);
    return s + ")";
}
}  // namespace detail

inline std::string show(const T& x)
{
    const TermNode& n = *x;
    switch (n.op) {
    case Op::Id: return "1[" + detail::objs(n) + "]";
    case Op::Sym: return detail::gen("sigma", n);
    case Op::Zero: return detail::gen("0", n);
    case Op::Compose: {
        std::string s = "(";
        for (std::size_t i = 0; i < n.kids.size(); ++i) s += (i ? " ; " : "") + show(n.kids[i]);
        return s + ")";
    }
    case Op::Tensor: return "(" + show(n.kids[0]) + " (x) " + show(n.kids[1]) + ")";
    case Op::Add: return "(" + show(n.kids[0]) + " + " + show(n.kids[1]) + ")";
    case Op::Proj: return detail::gen("pi" + std::to_string(n.index), n);
    case Op::Inj: return detail::gen("iota" + std::to_string(n.index), n);
    case Op::Delta: return detail::gen("delta", n);
    case Op::Eps: return detail::gen("eps", n);
    case Op::Comult: return detail::gen("Delta", n);
    case Op::Counit: return detail::gen("e", n);
    case Op::Nabla: return detail::gen("nabla", n);
    case Op::Unit: return detail::gen("u", n);
    case Op::Chi: return detail::gen("chi", n);
    case Op::ChiInv: return detail::gen("chi^-1", n);
    case Op::D: return detail::gen("d", n);
    case Op::Dcirc: return detail::gen("dcirc", n);
    case Op::Eta: return detail::gen("eta", n);
    case Op::R: return detail::gen("r", n);
    case Op::Cup: return detail::gen("cup", n);
    case Op::Cap: return detail::gen("cap", n);
    case Op::Star: return show(n.kids[0]) + "*";
    case Op::StarCupCap: return detail::fn("star_cupcap", n);
    case Op::Bang: return "!" + show(n.kids[0]);
    case Op::Var: return n.name;
    case Op::Rewire: {
        std::string s = "rw[" + show(n.objs[0]) + " -> " + show(n.objs[1]);
        if (!n.perm.empty()) {
            s += " by ";
            for (auto p : n.perm) s += std::to_string(p);
        }
        return s + "]";
    }
    case Op::RFromD: return detail::fn("r_from_d", n);
    case Op::DFromR: return detail::fn("d_from_r", n);
    case Op::RFromDcirc: return detail::fn("r_from_dcirc", n);
    case Op::EtaFromD: return detail::fn("eta_from_d", n);
    case Op::DFromEta: return detail::fn("d_from_eta", n);
    case Op::DcircFromComult: return detail::fn("dcirc_from_comult", n);
    case Op::KlLift: return detail::fn("F", n);
    case Op::KlCompose: return detail::fn("kl_compose", n);
    case Op::CtxId: return detail::fn("ctx_id", n);
    case Op::CtxLift: return detail::fn("ctx_lift", n);
    case Op::CtxCompose: return detail::fn("ctx_compose", n);
    case Op::CtxSubst: return detail::fn("subst", n);
    case Op::CtxTensor: return detail::fn("ctx_tensor", n);
    case Op::CtxDagger: return detail::fn("dagger", n);
    case Op::ToKl: return detail::fn("E", n);
    case Op::ToCtx: return detail::fn("E^-1", n);
    }
    return "?";
}

// Raised when a term does not type-check; the path names the offending subterm.
struct EvalError : std::runtime_error {
    std::string path;
    EvalError(std::string p, const std::string& msg) : std::runtime_error(p + ": " + msg), path(std::move(p)) {}
};

template <Semiring S>
struct Env {
    const Modality<S>* model = nullptr;
    std::map<std::string, Obj> objs;
    std::map<std::string, Mor<S>> vars;
};

template <Semiring S>
Obj resolve(const O& o, const Env<S>& env)
{
    switch (o->kind) {
    case OExpr::Var: {
        auto it = env.objs.find(o->var);
        if (it == env.objs.end()) throw EvalError("object", "unbound object variable " + o->var);
        return it->second;
    }
    case OExpr::Unit:
        return Obj::unit();
    case OExpr::Bang:
        return env.model->bang(resolve(o->l, env));
    case OExpr::Tensor:
        return Obj::tensor(resolve(o->l, env), resolve(o->r, env));
    case OExpr::Prod:
        return Obj::biproduct(resolve(o->l, env), resolve(o->r, env));
    }
    throw EvalError("object", "bad object expression");
}

template <Semiring S>
Mor<S> eval(const T& x, const Env<S>& env, const std::string& path = "$")
{
    const TermNode& n = *x;
    const Modality<S>& m = *env.model;
    auto ob = [&](std::size_t i) { return resolve(n.objs.at(i), env); };
    auto kid = [&](std::size_t i) { return eval(n.kids.at(i), env, path + "/" + std::to_string(i)); };
    try {
        switch (n.op) {
        case Op::Id: return identity<S>(ob(0));
        case Op::Sym: return symmetry<S>(ob(0), ob(1));
        case Op::Zero: return zero<S>(ob(0), ob(1));
        case Op::Compose: {
            Mor<S> acc = kid(0);
            for (std::size_t i = 1; i < n.kids.size(); ++i) {
                Mor<S> g = kid(i);
                if (!(acc.cod() == g.dom()))
                    throw EvalError(path + "/" + std::to_string(i),
                                    "composite expects " + acc.cod().name() + " but the factor starts at " + g.dom().name());
                acc = compose(acc, g);
            }
            return acc;
        }
        case Op::Tensor: return tensor(kid(0), kid(1));
        case Op::Add: {
            Mor<S> a = kid(0), b = kid(1);
            if (!(a.dom() == b.dom()) || !(a.cod() == b.cod())) throw EvalError(path, "summands have different types");
            return add(a, b);
        }
        case Op::Proj: return proj<S>(n.index, ob(0), ob(1));
        case Op::Inj: return inj<S>(n.index, ob(0), ob(1));
        case Op::Delta: return m.delta(ob(0));
        case Op::Eps: return m.eps(ob(0));
        case Op::Comult: return m.comult(ob(0));
        case Op::Counit: return m.counit(ob(0));
        case Op::Nabla: return m.nabla(ob(0));
        case Op::Unit: return m.unit(ob(0));
        case Op::Chi: return chi(m, ob(0), ob(1));
        case Op::ChiInv: return chi_inv(m, ob(0), ob(1));
        case Op::D: return m.d(ob(0));
        case Op::Dcirc: return m.dcirc(ob(0));
        case Op::Eta: return m.eta(ob(0));
        case Op::R: return m.r(ob(0));
        case Op::Cup: return cup<S>(ob(0));
        case Op::Cap: return cap<S>(ob(0));
        case Op::Star: return star(kid(0));
        case Op::StarCupCap: return star_via_cupcap(kid(0));
        case Op::Bang: return m.bang_map(kid(0));
        case Op::Var: {
            auto it = env.vars.find(n.name);
            if (it == env.vars.end()) throw EvalError(path, "unbound variable " + n.name);
            return it->second;
        }
        case Op::Rewire: return rewire<S>(ob(0), ob(1), n.perm);
        case Op::RFromD: return r_from_d(m, kid(0), ob(0));
        case Op::DFromR: return d_from_r(m, kid(0), ob(0));
        case Op::RFromDcirc: return r_from_dcirc(m, kid(0), ob(0));
        case Op::EtaFromD: return eta_from_d(m, kid(0), ob(0));
        case Op::DFromEta: return d_from_eta(m, kid(0), ob(0));
        case Op::DcircFromComult: return dcirc_from_comult(m, ob(0));
        case Op::KlLift: return kl_lift(m, kid(0));
        case Op::KlCompose: return kl_compose(m, kid(0), kid(1));
        case Op::CtxId: return ctx_id(m, ob(0), ob(1));
        case Op::CtxLift: return ctx_lift(m, ob(0), kid(0));
        case Op::CtxCompose: return ctx_compose(m, kid(0), kid(1), ob(0));
        case Op::CtxSubst: return ctx_substitute(m, kid(0), kid(1));
        case Op::CtxTensor: return ctx_tensor(m, kid(0), kid(1), ob(0));
        case Op::CtxDagger: return ctx_dagger(m, kid(0), ob(0));
        case Op::ToKl: return ctx_to_kl(m, kid(0), ob(0));
        case Op::ToCtx: return kl_to_ctx(m, kid(0), ob(0), ob(1));
        }
    } catch (const EvalError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw EvalError(path, e.what());
    }
    throw EvalError(path, "unknown operation");
}

// Cartesian terms: maps of a Cartesian left additive category with D and R.
struct CObj {
    enum Kind { Var, Prod } kind;
    std::string var;
    std::shared_ptr<const CObj> l, r;
};
using CO = std::shared_ptr<const CObj>;
inline CO cvar(std::string n) { return std::make_shared<CObj>(CObj{CObj::Var, std::move(n), {}, {}}); }
inline CO cprod(CO a, CO b) { return std::make_shared<CObj>(CObj{CObj::Prod, {}, std::move(a), std::move(b)}); }
inline std::string show(const CO& o) { return o->kind == CObj::Var ? o->var : "(" + show(o->l) + " x " + show(o->r) + ")"; }

enum class COp { Var, Id, Compose, Pair, Proj, Inj, Add, Zero, Times, Plus, Ell, Interchange, D, R, DDcirc, RDagger, RCupcap };

struct CTermNode;
using CT = std::shared_ptr<const CTermNode>;
struct CTermNode {
    COp op;
    std::vector<CO> objs;
    std::vector<CT> kids;
    std::string name;
    int index = 0;
};

namespace c {
inline CT mk(COp op, std::vector<CO> objs = {}, std::vector<CT> kids = {}, int index = 0)
{
    return std::make_shared<CTermNode>(CTermNode{op, std::move(objs), std::move(kids), {}, index});
}
inline CT var(std::string n) { return std::make_shared<CTermNode>(CTermNode{COp::Var, {}, {}, std::move(n), 0}); }
inline CT id(CO a) { return mk(COp::Id, {a}); }
inline CT seq(std::vector<CT> ks) { return mk(COp::Compose, {}, std::move(ks)); }
inline CT pair(CT f, CT g) { return mk(COp::Pair, {}, {f, g}); }
inline CT proj(int i, CO a, CO b) { return mk(COp::Proj, {a, b}, {}, i); }
inline CT inj(int i, CO a, CO b) { return mk(COp::Inj, {a, b}, {}, i); }
inline CT add(CT f, CT g) { return mk(COp::Add, {}, {f, g}); }
inline CT zero(CO a, CO b) { return mk(COp::Zero, {a, b}); }
inline CT times(CT f, CT g) { return mk(COp::Times, {}, {f, g}); }
inline CT plus(CO a) { return mk(COp::Plus, {a}); }
inline CT ell(CO a) { return mk(COp::Ell, {a}); }
inline CT interchange(CO a) { return mk(COp::Interchange, {a}); }
inline CT D(CT f) { return mk(COp::D, {}, {f}); }
inline CT R(CT f) { return mk(COp::R, {}, {f}); }
inline CT D_dcirc(CT f) { return mk(COp::DDcirc, {}, {f}); }
inline CT R_dagger(CT f) { return mk(COp::RDagger, {}, {f}); }
inline CT R_cupcap(CT f) { return mk(COp::RCupcap, {}, {f}); }
}  // namespace c

inline std::string show(const CT& x)
{
    const CTermNode& n = *x;
    auto k = [&](std::size_t i) { return show(n.kids[i]); };
    switch (n.op) {
    case COp::Var: return n.name;
    case COp::Id: return "1[" + show(n.objs[0]) + "]";
    case COp::Compose: {
        std::string s = "(";
        for (std::size_t i = 0; i < n.kids.size(); ++i) s += (i ? " ; " : "") + show(n.kids[i]);
        return s + ")";
    }
    case COp::Pair: return "<" + k(0) + ", " + k(1) + ">";
    case COp::Proj: return "pi" + std::to_string(n.index) + "[" + show(n.objs[0]) + "," + show(n.objs[1]) + "]";
    case COp::Inj: return "iota" + std::to_string(n.index) + "[" + show(n.objs[0]) + "," + show(n.objs[1]) + "]";
    case COp::Add: return "(" + k(0) + " + " + k(1) + ")";
    case COp::Zero: return "0[" + show(n.objs[0]) + "," + show(n.objs[1]) + "]";
    case COp::Times: return "(" + k(0) + " x " + k(1) + ")";
    case COp::Plus: return "+[" + show(n.objs[0]) + "]";
    case COp::Ell: return "l[" + show(n.objs[0]) + "]";
    case COp::Interchange: return "c[" + show(n.objs[0]) + "]";
    case COp::D: return "D[" + k(0) + "]";
    case COp::R: return "R[" + k(0) + "]";
    case COp::DDcirc: return "D_dcirc[" + k(0) + "]";
    case COp::RDagger: return "R_dagger[" + k(0) + "]";
    case COp::RCupcap: return "R_cupcap[" + k(0) + "]";
    }
    return "?";
}

// Raised when a category lacks a construction used by a law.
struct NotApplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Generic interpreter. The category supplies Object, Map, product, first, second, id, compose,
// pair, proj, add, zero, D, R, dom, cod; D_dcirc, R_dagger and R_cupcap are optional.
template <class Cat>
struct CEnv {
    const Cat* cat = nullptr;
    std::map<std::string, typename Cat::Object> objs;
    std::map<std::string, typename Cat::Map> vars;
};

template <class Cat>
typename Cat::Object cresolve(const CO& o, const CEnv<Cat>& env)
{
    if (o->kind == CObj::Var) {
        auto it = env.objs.find(o->var);
        if (it == env.objs.end()) throw EvalError("object", "unbound object variable " + o->var);
        return it->second;
    }
    return env.cat->product(cresolve(o->l, env), cresolve(o->r, env));
}

template <class Cat>
typename Cat::Map ceval(const CT& x, const CEnv<Cat>& env, const std::string& path = "$")
{
    using Map = typename Cat::Map;
    const Cat& C = *env.cat;
    const CTermNode& n = *x;
    auto ob = [&](std::size_t i) { return cresolve(n.objs.at(i), env); };
    auto kid = [&](std::size_t i) { return ceval(n.kids.at(i), env, path + "/" + std::to_string(i)); };
    auto pi = [&](int i, const auto& p) { return C.proj(i, C.first(p), C.second(p)); };
    try {
        switch (n.op) {
        case COp::Var: {
            auto it = env.vars.find(n.name);
            if (it == env.vars.end()) throw EvalError(path, "unbound variable " + n.name);
            return it->second;
        }
        case COp::Id: return C.id(ob(0));
        case COp::Compose: {
            Map acc = kid(0);
            for (std::size_t i = 1; i < n.kids.size(); ++i) acc = C.compose(acc, kid(i));
            return acc;
        }
        case COp::Pair: return C.pair(kid(0), kid(1));
        case COp::Proj: return C.proj(n.index, ob(0), ob(1));
        case COp::Inj: {
            auto a = ob(0), b = ob(1);
            auto src = n.index == 0 ? a : b;
            return n.index == 0 ? C.pair(C.id(a), C.zero(a, b)) : C.pair(C.zero(b, a), C.id(b));
            (void)src;
        }
        case COp::Add: return C.add(kid(0), kid(1));
        case COp::Zero: return C.zero(ob(0), ob(1));
        case COp::Times: {
            Map f = kid(0), g = kid(1);
            auto p = C.product(C.dom(f), C.dom(g));
            return C.pair(C.compose(pi(0, p), f), C.compose(pi(1, p), g));
        }
        case COp::Plus: {
            auto a = ob(0);
            return C.add(C.proj(0, a, a), C.proj(1, a, a));
        }
        case COp::Ell: {
            auto a = ob(0);
            auto aa = C.product(a, a);
            Map z = C.zero(aa, a);
            return C.pair(C.pair(C.proj(0, a, a), z), C.pair(z, C.proj(1, a, a)));
        }
        case COp::Interchange: {
            auto a = ob(0);
            auto aa = C.product(a, a);
            auto p = [&](int i, int j) { return C.compose(C.proj(i, aa, aa), C.proj(j, a, a)); };
            return C.pair(C.pair(p(0, 0), p(1, 0)), C.pair(p(0, 1), p(1, 1)));
        }
        case COp::D: return C.D(kid(0));
        case COp::R: return C.R(kid(0));
        case COp::DDcirc:
            if constexpr (requires(const Map& f) { C.D_dcirc(f); })
                return C.D_dcirc(kid(0));
            else
                throw NotApplicable("D via the coderiving transformation");
        case COp::RDagger:
            if constexpr (requires(const Map& f) { C.R_dagger(f); })
                return C.R_dagger(kid(0));
            else
                throw NotApplicable("R via the contextual dagger");
        case COp::RCupcap:
            if constexpr (requires(const Map& f) { C.R_cupcap(f); })
                return C.R_cupcap(kid(0));
            else
                throw NotApplicable("R via cups and caps");
        }
    } catch (const EvalError&) {
        throw;
    } catch (const NotApplicable&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw EvalError(path, e.what());
    }
    throw EvalError(path, "unknown operation");
}

}  // namespace rdc::laws
