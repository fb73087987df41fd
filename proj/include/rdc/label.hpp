#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace rdc {

enum class LabelKind : std::uint8_t { Unit, Atom, Pair, Tag, Bag, Set };

struct LabelNode {
    LabelKind kind;
    std::uint32_t index = 0;  // atom position or biproduct tag
    std::string name;         // atom display name
    std::vector<const LabelNode*> kids;
    std::size_t hash = 0;
    std::uint32_t atoms = 0;  // total number of atoms below this node
};

class Label;
int compare(Label a, Label b);

// Hash-consed basis label; equality is pointer identity.
class Label {
public:
    Label() = default;
    explicit Label(const LabelNode* p) : p_(p) {}

    static Label unit();
    static Label atom(std::uint32_t index, std::string name);
    static Label pair(Label a, Label b);
    static Label tag(std::uint32_t side, Label a);
    static Label bag(std::vector<Label> elems);
    static Label set(std::vector<Label> elems);

    LabelKind kind() const { return p_->kind; }
    std::uint32_t index() const { return p_->index; }
    const std::string& name() const { return p_->name; }
    std::size_t size() const { return p_->kids.size(); }
    Label operator[](std::size_t i) const { return Label(p_->kids[i]); }
    Label first() const { return Label(p_->kids[0]); }
    Label second() const { return Label(p_->kids[1]); }
    std::vector<Label> elems() const { return {p_->kids.begin(), p_->kids.end()}; }
    std::uint32_t atoms() const { return p_->atoms; }
    const LabelNode* node() const { return p_; }
    bool valid() const { return p_ != nullptr; }

    friend bool operator==(Label a, Label b) { return a.p_ == b.p_; }
    friend bool operator!=(Label a, Label b) { return a.p_ != b.p_; }

private:
    const LabelNode* p_ = nullptr;
};

struct LabelLess {
    bool operator()(Label a, Label b) const { return compare(a, b) < 0; }
};

namespace detail {

struct NodeHash {
    std::size_t operator()(const LabelNode* n) const { return n->hash; }
};
struct NodeEq {
    bool operator()(const LabelNode* a, const LabelNode* b) const
    {
        return a->kind == b->kind && a->index == b->index && a->name == b->name && a->kids == b->kids;
    }
};

// Nodes are never freed; pointers stay valid for the life of the process.
class LabelTable {
public:
    static LabelTable& global()
    {
        static LabelTable t;
        return t;
    }
    const LabelNode* intern(LabelNode n)
    {
        std::size_t h = std::hash<int>{}(static_cast<int>(n.kind)) * 1000003u ^ std::hash<std::uint32_t>{}(n.index);
        h = h * 31 + std::hash<std::string>{}(n.name);
        for (auto k : n.kids) h = h * 1000003u ^ k->hash;
        n.hash = h;
        n.atoms = n.kind == LabelKind::Atom ? 1 : 0;
        for (auto k : n.kids) n.atoms += k->atoms;
        std::lock_guard lock(m_);
        if (auto it = set_.find(&n); it != set_.end()) return *it;
        store_.push_back(std::make_unique<LabelNode>(std::move(n)));
        set_.insert(store_.back().get());
        return store_.back().get();
    }

private:
    std::mutex m_;
    std::vector<std::unique_ptr<LabelNode>> store_;
    std::unordered_set<const LabelNode*, NodeHash, NodeEq> set_;
};

inline std::vector<const LabelNode*> nodes(const std::vector<Label>& v)
{
    std::vector<const LabelNode*> r;
    r.reserve(v.size());
    for (auto l : v) r.push_back(l.node());
    return r;
}

}  // namespace detail

inline Label Label::unit()
{
    static const LabelNode* u = detail::LabelTable::global().intern({LabelKind::Unit, 0, {}, {}, 0, 0});
    return Label(u);
}
inline Label Label::atom(std::uint32_t index, std::string name)
{
    return Label(detail::LabelTable::global().intern({LabelKind::Atom, index, std::move(name), {}, 0, 0}));
}
inline Label Label::pair(Label a, Label b)
{
    return Label(detail::LabelTable::global().intern({LabelKind::Pair, 0, {}, {a.node(), b.node()}}));
}
inline Label Label::tag(std::uint32_t side, Label a)
{
    return Label(detail::LabelTable::global().intern({LabelKind::Tag, side, {}, {a.node()}}));
}
inline Label Label::bag(std::vector<Label> elems)
{
    std::sort(elems.begin(), elems.end(), LabelLess{});
    return Label(detail::LabelTable::global().intern({LabelKind::Bag, 0, {}, detail::nodes(elems)}));
}
inline Label Label::set(std::vector<Label> elems)
{
    std::sort(elems.begin(), elems.end(), LabelLess{});
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
        throw std::invalid_argument("set label with repeated element");
    return Label(detail::LabelTable::global().intern({LabelKind::Set, 0, {}, detail::nodes(elems)}));
}

// Canonical order: kind, then atoms by position, pairs lexicographically,
// tags by side, bags and sets by size then elementwise.
inline int compare(Label a, Label b)
{
    if (a == b) return 0;
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    switch (a.kind()) {
    case LabelKind::Unit:
        return 0;
    case LabelKind::Atom:
        if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
        return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case LabelKind::Tag:
        if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
        return compare(a.first(), b.first());
    case LabelKind::Pair:
    case LabelKind::Bag:
    case LabelKind::Set:
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (int c = compare(a[i], b[i])) return c;
        return 0;
    }
    return 0;
}

inline std::string render(Label l, bool in_set = false)
{
    switch (l.kind()) {
    case LabelKind::Unit:
        return "*";
    case LabelKind::Atom:
        return in_set ? std::to_string(l.index() + 1) : l.name();
    case LabelKind::Pair:
        return "(" + render(l.first()) + "," + render(l.second()) + ")";
    case LabelKind::Tag:
        return std::to_string(l.index()) + ":" + render(l.first(), in_set);
    case LabelKind::Bag:
    case LabelKind::Set: {
        bool set = l.kind() == LabelKind::Set;
        std::string s = set ? "{" : "[";
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (i) s += ",";
            s += render(l[i], set);
        }
        return s + (set ? "}" : "]");
    }
    }
    return "?";
}

}  // namespace rdc

template <>
struct std::hash<rdc::Label> {
    std::size_t operator()(rdc::Label l) const { return std::hash<const void*>{}(l.node()); }
};
