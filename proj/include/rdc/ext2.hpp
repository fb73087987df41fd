#pragma once

#include "modality.hpp"

#include <functional>
#include <string>
#include <vector>

namespace rdc {

namespace detail {

inline bool is_set(Label l) { return l.kind() == LabelKind::Set; }

inline bool set_has(Label s, Label x)
{
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == x) return true;
    return false;
}

inline Label set_without(Label s, Label x)
{
    std::vector<Label> el;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != x) el.push_back(s[i]);
    return Label::set(std::move(el));
}

inline Label set_with(Label s, Label x)
{
    auto el = s.elems();
    el.push_back(x);
    return Label::set(std::move(el));
}

// disjoint union, or an invalid label when the sets meet
inline Label set_union(Label a, Label b)
{
    auto el = a.elems();
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (set_has(a, b[i])) return Label();
        el.push_back(b[i]);
    }
    return Label::set(std::move(el));
}

// unordered families of disjoint nonempty blocks covering s
inline void set_partitions(const std::vector<Label>& el, std::size_t i, std::vector<std::vector<Label>>& cur,
                           std::vector<Label>& out)
{
    if (i == el.size()) {
        std::vector<Label> blocks;
        for (const auto& b : cur) blocks.push_back(Label::set(b));
        out.push_back(Label::set(std::move(blocks)));
        return;
    }
    for (std::size_t k = 0; k < cur.size(); ++k) {
        cur[k].push_back(el[i]);
        set_partitions(el, i + 1, cur, out);
        cur[k].pop_back();
    }
    cur.push_back({el[i]});
    set_partitions(el, i + 1, cur, out);
    cur.pop_back();
}

}  // namespace detail

// Exterior algebra modality on finite dimensional GF(2) vector spaces. Every map is exact.
class ExtModality : public Modality<GF2> {
public:
    using S = GF2;

    std::string id() const override { return "ext2"; }
    bool exact() const override { return true; }
    Obj bang(const Obj& x) const override { return Obj::ext(x); }

    Mor<S> eps(const Obj& x) const override
    {
        return make_mor<S>(
            bang(x), x,
            [](Label s) {
                if (!detail::is_set(s) || s.size() != 1) return RowVec<S>{};
                return RowVec<S>{{s[0], true}};
            },
            [this, x] { return eta(x).source(); });
    }

    Mor<S> eta(const Obj& x) const override
    {
        return make_mor<S>(
            x, bang(x), [](Label v) { return RowVec<S>{{Label::set({v}), true}}; },
            [this, x] { return eps(x).source(); });
    }

    Mor<S> counit(const Obj& x) const override
    {
        return make_mor<S>(
            bang(x), Obj::unit(),
            [](Label s) {
                if (!detail::is_set(s) || s.size() != 0) return RowVec<S>{};
                return RowVec<S>{{Label::unit(), true}};
            },
            [this, x] { return unit(x).source(); });
    }

    Mor<S> unit(const Obj& x) const override
    {
        return make_mor<S>(
            Obj::unit(), bang(x),
            [](Label u) {
                if (u != Label::unit()) return RowVec<S>{};
                return RowVec<S>{{Label::set({}), true}};
            },
            [this, x] { return counit(x).source(); });
    }

    Mor<S> comult(const Obj& x) const override
    {
        return make_mor<S>(
            bang(x), Obj::tensor(bang(x), bang(x)),
            [](Label s) {
                RowVec<S> out;
                if (!detail::is_set(s)) return out;
                auto el = s.elems();
                for (std::uint64_t m = 0; m < (std::uint64_t{1} << el.size()); ++m) {
                    std::vector<Label> l, r;
                    for (std::size_t i = 0; i < el.size(); ++i) (m >> i & 1 ? l : r).push_back(el[i]);
                    out.emplace_back(Label::pair(Label::set(l), Label::set(r)), true);
                }
                return out;
            },
            [this, x] { return nabla(x).source(); });
    }

    Mor<S> nabla(const Obj& x) const override
    {
        return make_mor<S>(
            Obj::tensor(bang(x), bang(x)), bang(x),
            [](Label p) {
                if (p.kind() != LabelKind::Pair || !detail::is_set(p.first()) || !detail::is_set(p.second()))
                    return RowVec<S>{};
                Label u = detail::set_union(p.first(), p.second());
                if (!u.valid()) return RowVec<S>{};
                return RowVec<S>{{u, true}};
            },
            [this, x] { return comult(x).source(); });
    }

    Mor<S> delta(const Obj& x) const override
    {
        Obj bx = bang(x);
        return make_mor<S>(
            bx, bang(bx),
            [](Label s) {
                RowVec<S> out;
                if (!detail::is_set(s)) return out;
                std::vector<Label> fams;
                std::vector<std::vector<Label>> cur;
                detail::set_partitions(s.elems(), 0, cur, fams);
                for (auto f : fams) {
                    out.emplace_back(f, true);
                    out.emplace_back(detail::set_with(f, Label::set({})), true);
                }
                return out;
            },
            [bx] {
                return make_mor<S>(Obj::ext(bx), bx, [](Label fam) {
                           if (!detail::is_set(fam)) return RowVec<S>{};
                           Label u = Label::set({});
                           for (std::size_t i = 0; i < fam.size(); ++i) {
                               if (!detail::is_set(fam[i])) return RowVec<S>{};
                               u = detail::set_union(u, fam[i]);
                               if (!u.valid()) return RowVec<S>{};
                           }
                           return RowVec<S>{{u, true}};
                       }).source();
            });
    }

    // exterior power: choices of images that stay pairwise distinct
    Mor<S> bang_map(const Mor<S>& f) const override
    {
        Mor<S> fm = f;
        return make_mor<S>(
            bang(f.dom()), bang(f.cod()),
            [fm](Label s) {
                Accum<S> acc;
                if (!detail::is_set(s)) return RowVec<S>{};
                std::vector<Label> ys;
                std::function<void(std::size_t)> go = [&](std::size_t i) {
                    if (i == s.size()) {
                        acc.add(Label::set(ys), true);
                        return;
                    }
                    for (const auto& [y, v] : fm.row(s[i])) {
                        if (!v || std::find(ys.begin(), ys.end(), y) != ys.end()) continue;
                        ys.push_back(y);
                        go(i + 1);
                        ys.pop_back();
                    }
                };
                go(0);
                return acc.take();
            },
            [this, fm] { return bang_map(star(fm)).source(); });
    }

    Mor<S> d(const Obj& x) const override
    {
        return make_mor<S>(
            Obj::tensor(bang(x), x), bang(x),
            [](Label p) {
                if (p.kind() != LabelKind::Pair || !detail::is_set(p.first()) || detail::set_has(p.first(), p.second()))
                    return RowVec<S>{};
                return RowVec<S>{{detail::set_with(p.first(), p.second()), true}};
            },
            [this, x] { return dcirc(x).source(); });
    }

    Mor<S> dcirc(const Obj& x) const override
    {
        return make_mor<S>(
            bang(x), Obj::tensor(bang(x), x),
            [](Label s) {
                RowVec<S> out;
                if (!detail::is_set(s)) return out;
                for (std::size_t i = 0; i < s.size(); ++i)
                    out.emplace_back(Label::pair(detail::set_without(s, s[i]), s[i]), true);
                return out;
            },
            [this, x] { return d(x).source(); });
    }

    Mor<S> r(const Obj& x) const override
    {
        return make_mor<S>(Obj::tensor(bang(x), bang(x)), x, [](Label p) {
            if (p.kind() != LabelKind::Pair || !detail::is_set(p.first()) || !detail::is_set(p.second())) return RowVec<S>{};
            Label s = p.first(), t = p.second();
            if (t.size() != s.size() + 1) return RowVec<S>{};
            for (std::size_t i = 0; i < t.size(); ++i)
                if (!detail::set_has(s, t[i])) return detail::set_without(t, t[i]) == s ? RowVec<S>{{t[i], true}} : RowVec<S>{};
            return RowVec<S>{};
        });
    }
};

}  // namespace rdc
