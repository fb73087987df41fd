#pragma once

#include "object.hpp"
#include "semiring.hpp"
#include "truncation.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rdc {

template <Semiring S>
using Value = typename S::value_type;

template <Semiring S>
using RowVec = std::vector<std::pair<Label, Value<S>>>;

template <Semiring S>
class Accum {
public:
    void add(Label l, const Value<S>& v)
    {
        if (S::is_zero(v)) return;
        auto [it, fresh] = m_.try_emplace(l, v);
        if (!fresh) it->second = S::add(it->second, v);
    }
    void add_all(const RowVec<S>& r, const Value<S>& scale)
    {
        for (const auto& [l, v] : r) add(l, S::mul(scale, v));
    }
    RowVec<S> take()
    {
        RowVec<S> out;
        out.reserve(m_.size());
        for (auto& [l, v] : m_)
            if (!S::is_zero(v)) out.emplace_back(l, std::move(v));
        m_.clear();
        return out;
    }

private:
    std::unordered_map<Label, Value<S>> m_;
};

template <Semiring S>
Value<S> lookup(const RowVec<S>& r, Label l)
{
    for (const auto& [k, v] : r)
        if (k == l) return v;
    return S::zero();
}

// Lazily evaluated rows of a matrix, memoised per row.
template <Semiring S>
class RowSource {
public:
    virtual ~RowSource() = default;

    const RowVec<S>& row(Label a) const
    {
        {
            std::lock_guard lock(m_);
            if (auto it = memo_.find(a); it != memo_.end()) return it->second;
        }
        RowVec<S> r = compute(a);
        std::lock_guard lock(m_);
        return memo_.try_emplace(a, std::move(r)).first->second;
    }

    // exact transpose when one is known without enumerating the domain
    virtual std::shared_ptr<const RowSource<S>> transpose() const { return nullptr; }

protected:
    virtual RowVec<S> compute(Label a) const = 0;

private:
    mutable std::mutex m_;
    mutable std::unordered_map<Label, RowVec<S>> memo_;
};

template <Semiring S>
using SourcePtr = std::shared_ptr<const RowSource<S>>;

template <Semiring S>
class FnSource : public RowSource<S> {
public:
    using Fn = std::function<RowVec<S>(Label)>;
    using TrFn = std::function<SourcePtr<S>()>;
    FnSource(Fn f, TrFn t) : f_(std::move(f)), t_(std::move(t)) {}
    SourcePtr<S> transpose() const override { return t_ ? t_() : nullptr; }

protected:
    RowVec<S> compute(Label a) const override { return f_(a); }

private:
    Fn f_;
    TrFn t_;
};

template <Semiring S>
class TableSource : public RowSource<S>, public std::enable_shared_from_this<TableSource<S>> {
public:
    explicit TableSource(std::unordered_map<Label, RowVec<S>> rows) : rows_(std::move(rows)) {}
    SourcePtr<S> transpose() const override
    {
        std::unordered_map<Label, Accum<S>> acc;
        for (const auto& [a, r] : rows_)
            for (const auto& [b, v] : r) acc[b].add(a, v);
        std::unordered_map<Label, RowVec<S>> t;
        for (auto& [b, ac] : acc) t.emplace(b, ac.take());
        return std::make_shared<TableSource<S>>(std::move(t));
    }
    const std::unordered_map<Label, RowVec<S>>& rows() const { return rows_; }

protected:
    RowVec<S> compute(Label a) const override
    {
        auto it = rows_.find(a);
        return it == rows_.end() ? RowVec<S>{} : it->second;
    }

private:
    std::unordered_map<Label, RowVec<S>> rows_;
};

inline std::string obj_mismatch(const std::string& what, const Obj& a, const Obj& b)
{
    return "object mismatch in " + what + ": " + a.name() + " vs " + b.name();
}

// A matrix dom -> cod over S, evaluated row by row on demand.
template <Semiring S>
class Mor {
public:
    Mor() = default;
    Mor(Obj dom, Obj cod, SourcePtr<S> src) : dom_(std::move(dom)), cod_(std::move(cod)), src_(std::move(src)) {}

    const Obj& dom() const { return dom_; }
    const Obj& cod() const { return cod_; }
    const RowVec<S>& row(Label a) const { return src_->row(a); }
    Value<S> at(Label a, Label b) const { return lookup<S>(row(a), b); }
    const SourcePtr<S>& source() const { return src_; }
    bool valid() const { return src_ != nullptr; }

private:
    Obj dom_, cod_;
    SourcePtr<S> src_;
};

template <Semiring S>
Mor<S> make_mor(Obj dom, Obj cod, typename FnSource<S>::Fn f, typename FnSource<S>::TrFn t = {})
{
    return Mor<S>(std::move(dom), std::move(cod), std::make_shared<FnSource<S>>(std::move(f), std::move(t)));
}

template <Semiring S>
using Entry = std::tuple<Label, Label, Value<S>>;

// Build a morphism from explicit entries; labels must lie in the windows.
template <Semiring S>
Mor<S> from_entries(Obj dom, Obj cod, const std::vector<Entry<S>>& es)
{
    std::unordered_map<Label, Accum<S>> acc;
    for (const auto& [a, b, v] : es) {
        if (!dom.contains(a)) throw std::invalid_argument("row label " + render(a) + " not in " + dom.name());
        if (!cod.contains(b)) throw std::invalid_argument("column label " + render(b) + " not in " + cod.name());
        acc[a].add(b, v);
    }
    std::unordered_map<Label, RowVec<S>> rows;
    for (auto& [a, ac] : acc) rows.emplace(a, ac.take());
    return Mor<S>(std::move(dom), std::move(cod), std::make_shared<TableSource<S>>(std::move(rows)));
}

// Freeze the rows of f over its domain window into a table.
template <Semiring S>
Mor<S> materialize(const Mor<S>& f)
{
    std::unordered_map<Label, RowVec<S>> rows;
    for (auto a : f.dom().basis()) {
        const auto& r = f.row(a);
        if (!r.empty()) rows.emplace(a, r);
    }
    return Mor<S>(f.dom(), f.cod(), std::make_shared<TableSource<S>>(std::move(rows)));
}

template <Semiring S>
Mor<S> star(const Mor<S>& f);

template <Semiring S>
Mor<S> identity(const Obj& a)
{
    return Mor<S>(a, a, std::make_shared<FnSource<S>>([](Label x) { return RowVec<S>{{x, S::one()}}; },
                                                      [a] { return identity<S>(a).source(); }));
}

template <Semiring S>
Mor<S> zero(const Obj& a, const Obj& b)
{
    return make_mor<S>(a, b, [](Label) { return RowVec<S>{}; }, [a, b] { return zero<S>(b, a).source(); });
}

template <Semiring S>
Mor<S> compose(const Mor<S>& f, const Mor<S>& g)
{
    if (!(f.cod() == g.dom())) throw std::invalid_argument(obj_mismatch("compose", f.cod(), g.dom()));
    return make_mor<S>(
        f.dom(), g.cod(),
        [f, g](Label a) {
            Accum<S> acc;
            for (const auto& [b, v] : f.row(a)) acc.add_all(g.row(b), v);
            return acc.take();
        },
        [f, g] { return compose(star(g), star(f)).source(); });
}

// diagrammatic composite of a chain f1;f2;...;fn
template <Semiring S>
Mor<S> seq(std::initializer_list<Mor<S>> fs)
{
    auto it = fs.begin();
    Mor<S> r = *it++;
    for (; it != fs.end(); ++it) r = compose(r, *it);
    return r;
}

template <Semiring S>
Mor<S> add(const Mor<S>& f, const Mor<S>& g)
{
    if (!(f.dom() == g.dom())) throw std::invalid_argument(obj_mismatch("add (domain)", f.dom(), g.dom()));
    if (!(f.cod() == g.cod())) throw std::invalid_argument(obj_mismatch("add (codomain)", f.cod(), g.cod()));
    return make_mor<S>(
        f.dom(), f.cod(),
        [f, g](Label a) {
            Accum<S> acc;
            acc.add_all(f.row(a), S::one());
            acc.add_all(g.row(a), S::one());
            return acc.take();
        },
        [f, g] { return add(star(f), star(g)).source(); });
}

template <Semiring S>
Mor<S> scale(const Value<S>& c, const Mor<S>& f)
{
    return make_mor<S>(
        f.dom(), f.cod(),
        [c, f](Label a) {
            Accum<S> acc;
            acc.add_all(f.row(a), c);
            return acc.take();
        },
        [c, f] { return scale<S>(c, star(f)).source(); });
}

template <Semiring S>
Mor<S> tensor(const Mor<S>& f, const Mor<S>& g)
{
    return make_mor<S>(
        Obj::tensor(f.dom(), g.dom()), Obj::tensor(f.cod(), g.cod()),
        [f, g](Label a) {
            if (a.kind() != LabelKind::Pair) return RowVec<S>{};
            const auto& r1 = f.row(a.first());
            if (r1.empty()) return RowVec<S>{};
            const auto& r2 = g.row(a.second());
            RowVec<S> out;
            out.reserve(r1.size() * r2.size());
            for (const auto& [b1, v1] : r1)
                for (const auto& [b2, v2] : r2) {
                    auto v = S::mul(v1, v2);
                    if (!S::is_zero(v)) out.emplace_back(Label::pair(b1, b2), std::move(v));
                }
            return out;
        },
        [f, g] { return tensor(star(f), star(g)).source(); });
}

template <Semiring S>
Mor<S> symmetry(const Obj& a, const Obj& b)
{
    return make_mor<S>(
        Obj::tensor(a, b), Obj::tensor(b, a),
        [](Label x) {
            if (x.kind() != LabelKind::Pair) return RowVec<S>{};
            return RowVec<S>{{Label::pair(x.second(), x.first()), S::one()}};
        },
        [a, b] { return symmetry<S>(b, a).source(); });
}

// associators for left-nested tensors: (A(x)B)(x)C <-> A(x)(B(x)C)
template <Semiring S>
Mor<S> assoc(const Obj& a, const Obj& b, const Obj& c)
{
    return make_mor<S>(
        Obj::tensor(Obj::tensor(a, b), c), Obj::tensor(a, Obj::tensor(b, c)),
        [](Label x) {
            if (x.kind() != LabelKind::Pair || x.first().kind() != LabelKind::Pair) return RowVec<S>{};
            return RowVec<S>{{Label::pair(x.first().first(), Label::pair(x.first().second(), x.second())), S::one()}};
        },
        [a, b, c] { return assoc_inv<S>(a, b, c).source(); });
}

template <Semiring S>
Mor<S> assoc_inv(const Obj& a, const Obj& b, const Obj& c)
{
    return make_mor<S>(
        Obj::tensor(a, Obj::tensor(b, c)), Obj::tensor(Obj::tensor(a, b), c),
        [](Label x) {
            if (x.kind() != LabelKind::Pair || x.second().kind() != LabelKind::Pair) return RowVec<S>{};
            return RowVec<S>{{Label::pair(Label::pair(x.first(), x.second().first()), x.second().second()), S::one()}};
        },
        [a, b, c] { return assoc<S>(a, b, c).source(); });
}

// unitors k(x)A <-> A and A(x)k <-> A
template <Semiring S>
Mor<S> unitor_left(const Obj& a)
{
    return make_mor<S>(
        Obj::tensor(Obj::unit(), a), a,
        [](Label x) {
            if (x.kind() != LabelKind::Pair) return RowVec<S>{};
            return RowVec<S>{{x.second(), S::one()}};
        },
        [a] { return unitor_left_inv<S>(a).source(); });
}
template <Semiring S>
Mor<S> unitor_left_inv(const Obj& a)
{
    return make_mor<S>(
        a, Obj::tensor(Obj::unit(), a), [](Label x) { return RowVec<S>{{Label::pair(Label::unit(), x), S::one()}}; },
        [a] { return unitor_left<S>(a).source(); });
}
template <Semiring S>
Mor<S> unitor_right(const Obj& a)
{
    return make_mor<S>(
        Obj::tensor(a, Obj::unit()), a,
        [](Label x) {
            if (x.kind() != LabelKind::Pair) return RowVec<S>{};
            return RowVec<S>{{x.first(), S::one()}};
        },
        [a] { return unitor_right_inv<S>(a).source(); });
}
template <Semiring S>
Mor<S> unitor_right_inv(const Obj& a)
{
    return make_mor<S>(
        a, Obj::tensor(a, Obj::unit()), [](Label x) { return RowVec<S>{{Label::pair(x, Label::unit()), S::one()}}; },
        [a] { return unitor_right<S>(a).source(); });
}

template <Semiring S>
Mor<S> proj(int i, const Obj& a, const Obj& b)
{
    Obj p = Obj::biproduct(a, b);
    return make_mor<S>(
        p, i == 0 ? a : b,
        [i](Label x) {
            if (x.kind() != LabelKind::Tag || static_cast<int>(x.index()) != i) return RowVec<S>{};
            return RowVec<S>{{x.first(), S::one()}};
        },
        [i, a, b] { return inj<S>(i, a, b).source(); });
}

template <Semiring S>
Mor<S> inj(int i, const Obj& a, const Obj& b)
{
    Obj p = Obj::biproduct(a, b);
    return make_mor<S>(
        i == 0 ? a : b, p, [i](Label x) { return RowVec<S>{{Label::tag(static_cast<std::uint32_t>(i), x), S::one()}}; },
        [i, a, b] { return proj<S>(i, a, b).source(); });
}

// <f, g>: X -> A x B
template <Semiring S>
Mor<S> pair(const Mor<S>& f, const Mor<S>& g)
{
    return add(compose(f, inj<S>(0, f.cod(), g.cod())), compose(g, inj<S>(1, f.cod(), g.cod())));
}

// f x g: A x B -> C x D
template <Semiring S>
Mor<S> product(const Mor<S>& f, const Mor<S>& g)
{
    return pair(compose(proj<S>(0, f.dom(), g.dom()), f), compose(proj<S>(1, f.dom(), g.dom()), g));
}

template <Semiring S>
Mor<S> cap(const Obj& a);

template <Semiring S>
Mor<S> cup(const Obj& a)
{
    return make_mor<S>(
        Obj::tensor(a, a), Obj::unit(),
        [](Label x) {
            if (x.kind() != LabelKind::Pair || x.first() != x.second()) return RowVec<S>{};
            return RowVec<S>{{Label::unit(), S::one()}};
        },
        [a] { return cap<S>(a).source(); });
}

template <Semiring S>
Mor<S> cap(const Obj& a)
{
    Truncation t = Truncation::current();
    return make_mor<S>(
        Obj::unit(), Obj::tensor(a, a),
        [a, t](Label x) {
            if (x != Label::unit()) return RowVec<S>{};
            if (a.infinite()) t.log->hit("cap on " + a.name() + " cut at window+" + std::to_string(t.slack));
            RowVec<S> out;
            for (auto l : a.enumerate(a.infinite() ? t.slack : 0)) out.emplace_back(Label::pair(l, l), S::one());
            return out;
        },
        [a] { return cup<S>(a).source(); });
}

// Transpose. Uses an exact transpose when the source knows one, otherwise
// enumerates the domain (cut at the current slack when it is infinite).
template <Semiring S>
Mor<S> star(const Mor<S>& f)
{
    if (auto t = f.source()->transpose()) return Mor<S>(f.cod(), f.dom(), t);
    Truncation t = Truncation::current();
    if (f.dom().infinite()) t.log->hit("transpose enumerates " + f.dom().name() + " to window+" + std::to_string(t.slack));
    std::unordered_map<Label, Accum<S>> acc;
    for (auto a : f.dom().enumerate(f.dom().infinite() ? t.slack : 0))
        for (const auto& [b, v] : f.row(a)) acc[b].add(a, v);
    std::unordered_map<Label, RowVec<S>> rows;
    for (auto& [b, ac] : acc) rows.emplace(b, ac.take());
    return Mor<S>(f.cod(), f.dom(), std::make_shared<TableSource<S>>(std::move(rows)));
}

// The transpose written with cups and caps: (cap (x) 1);(1 (x) f (x) 1);(1 (x) cup).
template <Semiring S>
Mor<S> star_via_cupcap(const Mor<S>& f)
{
    const Obj &a = f.dom(), &b = f.cod();
    // B ~ k(x)B -> (A(x)A)(x)B -> A(x)(A(x)B) -> A(x)(B(x)B) -> A(x)k ~ A
    return seq<S>({unitor_left_inv<S>(b), tensor(cap<S>(a), identity<S>(b)), assoc<S>(a, a, b),
                   tensor(identity<S>(a), tensor(f, identity<S>(b))), tensor(identity<S>(a), cup<S>(b)),
                   unitor_right<S>(a)});
}

template <Semiring S>
struct Mismatch {
    Label row, col;
    Value<S> lhs, rhs;
};

template <Semiring S>
struct Comparison {
    bool equal = true;
    std::optional<Mismatch<S>> witness;
    std::size_t compared = 0;
    std::string reason;
};

// Entrywise comparison on the domain and codomain windows; the witness is the
// first differing entry in canonical order.
template <Semiring S>
Comparison<S> mor_equal(const Mor<S>& f, const Mor<S>& g)
{
    Comparison<S> c;
    if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
        c.equal = false;
        c.reason = "shape: " + f.dom().name() + " -> " + f.cod().name() + " vs " + g.dom().name() + " -> " +
                   g.cod().name();
        return c;
    }
    for (auto a : f.dom().basis()) {
        std::map<Label, std::pair<Value<S>, Value<S>>, LabelLess> m;
        for (const auto& [b, v] : f.row(a))
            if (f.cod().contains(b)) m.try_emplace(b, v, S::zero());
        for (const auto& [b, v] : g.row(a))
            if (g.cod().contains(b)) {
                auto [it, fresh] = m.try_emplace(b, S::zero(), v);
                if (!fresh) it->second.second = v;
            }
        c.compared += m.size();
        for (auto& [b, vs] : m)
            if (!(vs.first == vs.second)) {
                c.equal = false;
                c.witness = Mismatch<S>{a, b, vs.first, vs.second};
                return c;
            }
    }
    return c;
}

template <Semiring S>
struct Dump {
    std::vector<Entry<S>> entries;  // canonical order, inside both windows
    std::size_t overflow = 0;       // entries whose column fell outside the codomain window
};

template <Semiring S>
Dump<S> entries(const Mor<S>& f)
{
    Dump<S> d;
    for (auto a : f.dom().basis()) {
        RowVec<S> r = f.row(a);
        std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return compare(x.first, y.first) < 0; });
        for (auto& [b, v] : r) {
            if (f.cod().contains(b))
                d.entries.emplace_back(a, b, v);
            else
                ++d.overflow;
        }
    }
    return d;
}

template <Semiring S>
std::string dump_tsv(const Mor<S>& f)
{
    std::ostringstream os;
    for (const auto& [a, b, v] : entries(f).entries) os << render(a) << '\t' << render(b) << '\t' << S::to_string(v) << '\n';
    return os.str();
}

}  // namespace rdc

namespace rdc {

namespace detail {
inline void leaves(const Obj& o, std::vector<Obj>& out)
{
    if (o.kind() == ObjKind::Tensor) {
        leaves(o.left(), out);
        leaves(o.right(), out);
    } else if (o.kind() != ObjKind::Unit) {
        out.push_back(o);
    }
}
inline bool label_leaves(const Obj& o, Label l, std::vector<Label>& out)
{
    if (o.kind() == ObjKind::Tensor) {
        if (l.kind() != LabelKind::Pair) return false;
        return label_leaves(o.left(), l.first(), out) && label_leaves(o.right(), l.second(), out);
    }
    if (o.kind() != ObjKind::Unit) out.push_back(l);
    return true;
}
inline Label build(const Obj& o, const std::vector<Label>& ls, std::size_t& i)
{
    if (o.kind() == ObjKind::Tensor) {
        Label a = build(o.left(), ls, i);
        Label b = build(o.right(), ls, i);
        return Label::pair(a, b);
    }
    if (o.kind() == ObjKind::Unit) return Label::unit();
    return ls[i++];
}
}  // namespace detail

// Structural isomorphism between two tensor shapes: drops and inserts unit factors,
// rebrackets, and permutes leaves so that target leaf j is source leaf perm[j].
template <Semiring S>
Mor<S> rewire(const Obj& from, const Obj& to, std::vector<std::size_t> perm = {})
{
    std::vector<Obj> lf, lt;
    detail::leaves(from, lf);
    detail::leaves(to, lt);
    if (perm.empty())
        for (std::size_t i = 0; i < lf.size(); ++i) perm.push_back(i);
    if (lf.size() != lt.size() || perm.size() != lt.size())
        throw std::invalid_argument(obj_mismatch("rewire", from, to));
    for (std::size_t j = 0; j < lt.size(); ++j)
        if (perm[j] >= lf.size() || !(lf[perm[j]] == lt[j])) throw std::invalid_argument(obj_mismatch("rewire", from, to));
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) inv[perm[j]] = j;
    return make_mor<S>(
        from, to,
        [from, to, perm](Label x) {
            std::vector<Label> ls;
            if (!detail::label_leaves(from, x, ls) || ls.size() != perm.size()) return RowVec<S>{};
            std::vector<Label> out;
            for (auto p : perm) out.push_back(ls[p]);
            std::size_t i = 0;
            return RowVec<S>{{detail::build(to, out, i), S::one()}};
        },
        [from, to, inv] { return rewire<S>(to, from, inv).source(); });
}

}  // namespace rdc
