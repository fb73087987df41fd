#pragma once

#include "modality.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdc {

enum class SplitRule { One, Multinomial };
enum class DRule { Shuffle, Cardinality, One };
enum class MapRule { Matchings, Divided, Monomial };

struct CoeffPolicy {
    std::string name = "default";
    SplitRule comult = SplitRule::One;         // Delta
    SplitRule nabla = SplitRule::Multinomial;  // nabla merges with the shuffle count
    DRule d = DRule::Shuffle;
    SplitRule delta = SplitRule::One;
    MapRule bang_map = MapRule::Matchings;

    static std::vector<std::string> names()
    {
        return {"default", "divided-power", "monomial", "both-multinomial", "both-plain", "d-const-one", "d-cardinality"};
    }

    static CoeffPolicy named(const std::string& n)
    {
        CoeffPolicy p;
        p.name = n;
        if (n == "default") return p;
        if (n == "divided-power") {
            p.bang_map = MapRule::Divided;
        } else if (n == "monomial") {
            p.comult = SplitRule::Multinomial;
            p.nabla = SplitRule::One;
            p.d = DRule::One;
            p.bang_map = MapRule::Monomial;
        } else if (n == "both-multinomial") {
            p.comult = SplitRule::Multinomial;
        } else if (n == "both-plain") {
            p.nabla = SplitRule::One;
        } else if (n == "d-const-one") {
            p.d = DRule::One;
        } else if (n == "d-cardinality") {
            p.d = DRule::Cardinality;
        } else {
            throw std::invalid_argument("unknown policy: " + n);
        }
        return p;
    }
};

struct BangConfig {
    std::size_t degree_cap = 3;
    std::size_t outer_cap = 2;
    CoeffPolicy policy;
};

namespace detail {

inline bool is_bag(Label l) { return l.kind() == LabelKind::Bag; }

// b minus one copy of x; invalid label when x is absent
inline Label bag_remove(Label b, Label x)
{
    auto el = b.elems();
    for (auto it = el.begin(); it != el.end(); ++it)
        if (*it == x) {
            el.erase(it);
            return Label::bag(std::move(el));
        }
    return Label();
}

inline Label bag_insert(Label b, Label x)
{
    auto el = b.elems();
    el.push_back(x);
    return Label::bag(std::move(el));
}

inline std::size_t bag_mult(Label b, Label x)
{
    std::size_t m = 0;
    for (std::size_t i = 0; i < b.size(); ++i) m += b[i] == x;
    return m;
}

inline std::vector<Label> distinct(Label b)
{
    std::vector<Label> out;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (out.empty() || out.back() != b[i]) out.push_back(b[i]);
    return out;
}

// Bag over the distinct elements of a label bag, for the index-level combinatorics.
struct LocalBag {
    std::vector<Label> alpha;
    Bag bag;
    Label lift(const Bag& b) const
    {
        std::vector<Label> el;
        for (auto i : b.elems) el.push_back(alpha[i]);
        return Label::bag(std::move(el));
    }
};

inline LocalBag localize(Label b)
{
    LocalBag lb;
    lb.alpha = distinct(b);
    std::vector<std::uint32_t> idx;
    for (std::size_t i = 0, k = 0; i < b.size(); ++i) {
        while (lb.alpha[k] != b[i]) ++k;
        idx.push_back(static_cast<std::uint32_t>(k));
    }
    lb.bag = Bag(static_cast<std::uint32_t>(lb.alpha.size()), std::move(idx));
    return lb;
}

inline natural label_shuffle(Label a, Label b)
{
    natural r = 1;
    for (auto x : distinct(a)) r *= binomial(bag_mult(a, x) + bag_mult(b, x), bag_mult(a, x));
    return r;
}

inline natural factorial(std::size_t n)
{
    natural r = 1;
    for (std::size_t i = 2; i <= n; ++i) r *= i;
    return r;
}

// multisets of size m over {0..n-1}, as count vectors
inline void multisets(std::size_t n, std::size_t m, std::vector<std::size_t>& cur, std::size_t i,
                      std::vector<std::vector<std::size_t>>& out)
{
    if (i + 1 == n) {
        cur[i] = m;
        out.push_back(cur);
        return;
    }
    for (std::size_t k = 0; k <= m; ++k) {
        cur[i] = k;
        multisets(n, m - k, cur, i + 1, out);
    }
}

}  // namespace detail

// Finite-multiset exponential over an arbitrary commutative semiring.
template <Semiring S>
class BagModality : public Modality<S> {
public:
    explicit BagModality(BangConfig cfg = {}) : cfg_(std::move(cfg))
    {
        if (cfg_.degree_cap < 1 || cfg_.outer_cap < 1) throw std::invalid_argument("caps must be at least 1");
    }

    const BangConfig& config() const { return cfg_; }
    std::string id() const override { return "bag/" + std::string(S::id) + "/" + cfg_.policy.name; }
    bool exact() const override { return false; }

    Obj bang(const Obj& x) const override { return Obj::bang(x, x.has_bang() ? cfg_.outer_cap : cfg_.degree_cap); }

    Mor<S> eps(const Obj& x) const override
    {
        return make_mor<S>(
            bang(x), x,
            [](Label b) {
                if (!detail::is_bag(b) || b.size() != 1) return RowVec<S>{};
                return RowVec<S>{{b[0], S::one()}};
            },
            [this, x] { return singleton(x).source(); });
    }

    Mor<S> counit(const Obj& x) const override
    {
        return make_mor<S>(
            bang(x), Obj::unit(),
            [](Label b) {
                if (!detail::is_bag(b) || b.size() != 0) return RowVec<S>{};
                return RowVec<S>{{Label::unit(), S::one()}};
            },
            [this, x] { return unit(x).source(); });
    }

    Mor<S> unit(const Obj& x) const override
    {
        return make_mor<S>(
            Obj::unit(), bang(x),
            [](Label u) {
                if (u != Label::unit()) return RowVec<S>{};
                return RowVec<S>{{Label::bag({}), S::one()}};
            },
            [this, x] { return counit(x).source(); });
    }

    Mor<S> comult(const Obj& x) const override { return split(x, cfg_.policy.comult); }
    Mor<S> nabla(const Obj& x) const override { return merge(x, cfg_.policy.nabla); }

    Mor<S> delta(const Obj& x) const override { return make_delta(x, 0, true); }
    Mor<S> delta_parts(const Obj& x, std::size_t parts) const override { return make_delta(x, parts, false); }

    Mor<S> make_delta(const Obj& x, std::size_t parts, bool cut) const
    {
        Truncation t = Truncation::current();
        SplitRule rule = cfg_.policy.delta;
        Obj bx = bang(x);
        std::size_t p = cut ? t.delta_parts : parts;
        return make_mor<S>(
            bx, bang(bx),
            [t, rule, p, cut](Label b) {
                if (!detail::is_bag(b)) return RowVec<S>{};
                if (cut) t.log->hit("delta parts cut at " + std::to_string(p));
                auto lb = detail::localize(b);
                RowVec<S> out;
                for (const auto& part : bag_partitions(lb.bag, p)) {
                    std::vector<Label> ps;
                    for (const auto& q : part) ps.push_back(lb.lift(q));
                    natural c = rule == SplitRule::One ? natural(1) : multinomial(part);
                    out.emplace_back(Label::bag(std::move(ps)), S::from_natural(c));
                }
                return out;
            },
            [this, x, rule] { return flatten(x, rule).source(); });
    }

    Mor<S> bang_map(const Mor<S>& f) const override
    {
        MapRule rule = cfg_.policy.bang_map;
        SplitRule merge_rule = cfg_.policy.nabla;
        Mor<S> fm = f;
        typename FnSource<S>::TrFn tr;
        if (S::idempotent || rule == MapRule::Matchings)
            tr = [this, fm] { return bang_map(star(fm)).source(); };
        return make_mor<S>(
            bang(f.dom()), bang(f.cod()),
            [fm, rule, merge_rule](Label b) {
                if (!detail::is_bag(b)) return RowVec<S>{};
                // per distinct element: multiset of images with its weight
                struct Choice {
                    std::vector<Label> ys;
                    std::map<Label, std::size_t, LabelLess> counts;
                    Value<S> w;
                };
                std::vector<std::vector<Choice>> groups;
                for (auto xv : detail::distinct(b)) {
                    std::size_t m = detail::bag_mult(b, xv);
                    const auto& row = fm.row(xv);
                    if (row.empty()) return RowVec<S>{};
                    std::vector<std::vector<std::size_t>> ks;
                    std::vector<std::size_t> cur(row.size());
                    detail::multisets(row.size(), m, cur, 0, ks);
                    std::vector<Choice> cs;
                    for (const auto& k : ks) {
                        Choice c{{}, {}, S::one()};
                        natural mult = rule == MapRule::Monomial ? detail::factorial(m) : natural(1);
                        for (std::size_t i = 0; i < k.size(); ++i) {
                            for (std::size_t j = 0; j < k[i]; ++j) {
                                c.ys.push_back(row[i].first);
                                c.w = S::mul(c.w, row[i].second);
                            }
                            if (k[i]) c.counts[row[i].first] += k[i];
                            if (rule == MapRule::Monomial) mult /= detail::factorial(k[i]);
                        }
                        c.w = S::mul(c.w, S::from_natural(mult));
                        cs.push_back(std::move(c));
                    }
                    groups.push_back(std::move(cs));
                }
                Accum<S> acc;
                std::vector<std::size_t> pick(groups.size(), 0);
                for (;;) {
                    std::vector<Label> ys;
                    Value<S> w = S::one();
                    std::map<Label, std::size_t, LabelLess> total;
                    natural denom = 1;
                    for (std::size_t g = 0; g < groups.size(); ++g) {
                        const auto& c = groups[g][pick[g]];
                        ys.insert(ys.end(), c.ys.begin(), c.ys.end());
                        w = S::mul(w, c.w);
                        for (const auto& [y, k] : c.counts) {
                            total[y] += k;
                            denom *= detail::factorial(k);
                        }
                    }
                    if (rule == MapRule::Divided && merge_rule == SplitRule::Multinomial) {
                        natural num = 1;
                        for (const auto& [y, k] : total) num *= detail::factorial(k);
                        w = S::mul(w, S::from_natural(num / denom));
                    }
                    acc.add(Label::bag(std::move(ys)), w);
                    std::size_t g = 0;
                    while (g < groups.size() && ++pick[g] == groups[g].size()) pick[g++] = 0;
                    if (g == groups.size()) break;
                }
                return acc.take();
            },
            tr);
    }

    Mor<S> d(const Obj& x) const override
    {
        DRule rule = cfg_.policy.d;
        return make_mor<S>(
            Obj::tensor(bang(x), x), bang(x),
            [rule](Label p) {
                if (p.kind() != LabelKind::Pair || !detail::is_bag(p.first())) return RowVec<S>{};
                return RowVec<S>{{detail::bag_insert(p.first(), p.second()), d_coeff(rule, p.first(), p.second())}};
            },
            [this, x, rule] {
                return make_mor<S>(bang(x), Obj::tensor(bang(x), x), [rule](Label b) {
                           RowVec<S> out;
                           if (!detail::is_bag(b)) return out;
                           for (auto xv : detail::distinct(b)) {
                               Label rest = detail::bag_remove(b, xv);
                               out.emplace_back(Label::pair(rest, xv), d_coeff(rule, rest, xv));
                           }
                           return out;
                       }).source();
            });
    }

    Mor<S> dcirc(const Obj& x) const override
    {
        SplitRule rule = cfg_.policy.comult;
        auto coeff = [rule](Label b, Label xv) {
            return S::from_natural(rule == SplitRule::One ? natural(1) : natural(detail::bag_mult(b, xv)));
        };
        return make_mor<S>(
            bang(x), Obj::tensor(bang(x), x),
            [coeff](Label b) {
                RowVec<S> out;
                if (!detail::is_bag(b)) return out;
                for (auto xv : detail::distinct(b)) out.emplace_back(Label::pair(detail::bag_remove(b, xv), xv), coeff(b, xv));
                return out;
            },
            [this, x, coeff] {
                return make_mor<S>(Obj::tensor(bang(x), x), bang(x), [coeff](Label p) {
                           if (p.kind() != LabelKind::Pair || !detail::is_bag(p.first())) return RowVec<S>{};
                           Label b = detail::bag_insert(p.first(), p.second());
                           return RowVec<S>{{b, coeff(b, p.second())}};
                       }).source();
            });
    }

    Mor<S> eta(const Obj& x) const override { return singleton(x); }

    Mor<S> r(const Obj& x) const override
    {
        DRule rule = cfg_.policy.d;
        return make_mor<S>(Obj::tensor(bang(x), bang(x)), x, [rule](Label p) {
            if (p.kind() != LabelKind::Pair || !detail::is_bag(p.first()) || !detail::is_bag(p.second())) return RowVec<S>{};
            Label b = p.first(), b2 = p.second();
            if (b2.size() != b.size() + 1) return RowVec<S>{};
            for (auto xv : detail::distinct(b2))
                if (detail::bag_remove(b2, xv) == b) return RowVec<S>{{xv, d_coeff(rule, b, xv)}};
            return RowVec<S>{};
        });
    }

    static Value<S> d_coeff(DRule rule, Label b, Label xv)
    {
        switch (rule) {
        case DRule::Shuffle:
            return S::from_natural(natural(detail::bag_mult(b, xv) + 1));
        case DRule::Cardinality:
            return S::from_natural(natural(b.size() + 1));
        case DRule::One:
            return S::one();
        }
        return S::one();
    }

private:
    // x -> [x]
    Mor<S> singleton(const Obj& x) const
    {
        return make_mor<S>(
            x, bang(x), [](Label xv) { return RowVec<S>{{Label::bag({xv}), S::one()}}; },
            [this, x] { return eps(x).source(); });
    }

    static Value<S> split_coeff(SplitRule rule, Label a, Label b)
    {
        return rule == SplitRule::One ? S::one() : S::from_natural(detail::label_shuffle(a, b));
    }

    Mor<S> split(const Obj& x, SplitRule rule) const
    {
        return make_mor<S>(
            bang(x), Obj::tensor(bang(x), bang(x)),
            [rule](Label b) {
                RowVec<S> out;
                if (!detail::is_bag(b)) return out;
                auto lb = detail::localize(b);
                for (const auto& [l, r] : bag_splits(lb.bag)) {
                    Label ll = lb.lift(l), rl = lb.lift(r);
                    out.emplace_back(Label::pair(ll, rl), split_coeff(rule, ll, rl));
                }
                return out;
            },
            [this, x, rule] { return merge(x, rule).source(); });
    }

    Mor<S> merge(const Obj& x, SplitRule rule) const
    {
        return make_mor<S>(
            Obj::tensor(bang(x), bang(x)), bang(x),
            [rule](Label p) {
                if (p.kind() != LabelKind::Pair || !detail::is_bag(p.first()) || !detail::is_bag(p.second()))
                    return RowVec<S>{};
                auto el = p.first().elems();
                auto e2 = p.second().elems();
                el.insert(el.end(), e2.begin(), e2.end());
                return RowVec<S>{{Label::bag(std::move(el)), split_coeff(rule, p.first(), p.second())}};
            },
            [this, x, rule] { return split(x, rule).source(); });
    }

    // transpose of delta: a bag of bags goes to its union
    Mor<S> flatten(const Obj& x, SplitRule rule) const
    {
        Obj bx = bang(x);
        return make_mor<S>(bang(bx), bx, [rule](Label q) {
            if (!detail::is_bag(q)) return RowVec<S>{};
            std::vector<Label> el;
            for (std::size_t i = 0; i < q.size(); ++i) {
                if (!detail::is_bag(q[i])) return RowVec<S>{};
                auto e = q[i].elems();
                el.insert(el.end(), e.begin(), e.end());
            }
            Label u = Label::bag(el);
            natural c = 1;
            if (rule == SplitRule::Multinomial) {
                Label acc = Label::bag({});
                for (std::size_t i = 0; i < q.size(); ++i) {
                    c *= detail::label_shuffle(acc, q[i]);
                    auto a = acc.elems();
                    auto e = q[i].elems();
                    a.insert(a.end(), e.begin(), e.end());
                    acc = Label::bag(std::move(a));
                }
            }
            return RowVec<S>{{u, S::from_natural(c)}};
        });
    }

    BangConfig cfg_;
};

}  // namespace rdc
