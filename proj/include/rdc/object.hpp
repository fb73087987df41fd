#pragma once

#include "bag.hpp"
#include "label.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace rdc {

enum class ObjKind { Unit, Atoms, Tensor, Biproduct, Bang, Ext };

class Obj;

struct ObjNode {
    ObjKind kind;
    std::string name;
    std::vector<Label> atoms;
    std::shared_ptr<const ObjNode> left, right;  // tensor/biproduct halves, or bang/ext inner in left
    std::size_t cap = 0;                          // bang: maximal bag size inside the window

    mutable std::once_flag once;
    mutable std::vector<Label> basis;
};

// Finite labeled basis. Bang objects are infinite; their basis is the window of bags up to cap.
class Obj {
public:
    Obj() = default;
    explicit Obj(std::shared_ptr<const ObjNode> p) : p_(std::move(p)) {}

    static Obj unit()
    {
        static Obj u = make(ObjKind::Unit, "k");
        return u;
    }
    // plain object with atoms labelled by the given names
    static Obj atoms(std::vector<std::string> names, std::string display = {})
    {
        auto n = std::make_shared<ObjNode>();
        n->kind = ObjKind::Atoms;
        for (std::uint32_t i = 0; i < names.size(); ++i) n->atoms.push_back(Label::atom(i, names[i]));
        if (display.empty()) {
            display = "{";
            for (std::size_t i = 0; i < names.size(); ++i) display += (i ? "," : "") + names[i];
            display += "}";
        }
        n->name = std::move(display);
        return Obj(n);
    }
    // {a, b, ...} with n letters
    static Obj alphabet(std::size_t n)
    {
        std::vector<std::string> names;
        for (std::uint32_t i = 0; i < n; ++i) names.push_back(letter(i));
        return atoms(names);
    }
    // {v1, ..., vn}
    static Obj vectors(std::size_t n, const std::string& prefix = "v")
    {
        std::vector<std::string> names;
        for (std::size_t i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
        return atoms(names, "V" + std::to_string(n));
    }
    static Obj tensor(Obj a, Obj b)
    {
        auto n = std::make_shared<ObjNode>();
        n->kind = ObjKind::Tensor;
        n->left = a.p_;
        n->right = b.p_;
        n->name = "(" + a.name() + " (x) " + b.name() + ")";
        return Obj(n);
    }
    static Obj biproduct(Obj a, Obj b)
    {
        auto n = std::make_shared<ObjNode>();
        n->kind = ObjKind::Biproduct;
        n->left = a.p_;
        n->right = b.p_;
        n->name = "(" + a.name() + " x " + b.name() + ")";
        return Obj(n);
    }
    static Obj bang(Obj a, std::size_t cap)
    {
        auto n = std::make_shared<ObjNode>();
        n->kind = ObjKind::Bang;
        n->left = a.p_;
        n->cap = cap;
        n->name = "!" + a.name();
        return Obj(n);
    }
    static Obj ext(Obj a)
    {
        auto n = std::make_shared<ObjNode>();
        n->kind = ObjKind::Ext;
        n->left = a.p_;
        n->name = "E" + a.name();
        return Obj(n);
    }

    ObjKind kind() const { return p_->kind; }
    const std::string& name() const { return p_->name; }
    Obj left() const { return Obj(p_->left); }
    Obj right() const { return Obj(p_->right); }
    Obj inner() const { return Obj(p_->left); }
    std::size_t cap() const { return p_->cap; }
    bool valid() const { return p_ != nullptr; }

    // true when the object has basis elements outside its window
    bool infinite() const
    {
        switch (kind()) {
        case ObjKind::Bang:
            return true;
        case ObjKind::Tensor:
        case ObjKind::Biproduct:
            return left().infinite() || right().infinite();
        case ObjKind::Ext:
            return inner().infinite();
        default:
            return false;
        }
    }
    bool has_bang() const
    {
        switch (kind()) {
        case ObjKind::Bang:
        case ObjKind::Ext:
            return true;
        case ObjKind::Tensor:
        case ObjKind::Biproduct:
            return left().has_bang() || right().has_bang();
        default:
            return false;
        }
    }

    std::vector<Label> basis() const
    {
        std::call_once(p_->once, [this] {
            p_->basis = enumerate(0);
        });
        return p_->basis;
    }
    std::size_t size() const { return basis().size(); }
    bool contains(Label l) const
    {
        switch (kind()) {
        case ObjKind::Unit:
            return l == Label::unit();
        case ObjKind::Atoms:
            return std::find(p_->atoms.begin(), p_->atoms.end(), l) != p_->atoms.end();
        case ObjKind::Tensor:
            return l.kind() == LabelKind::Pair && left().contains(l.first()) && right().contains(l.second());
        case ObjKind::Biproduct:
            if (l.kind() != LabelKind::Tag) return false;
            return l.index() == 0 ? left().contains(l.first()) : right().contains(l.first());
        case ObjKind::Bang:
        case ObjKind::Ext: {
            if (l.kind() != (kind() == ObjKind::Bang ? LabelKind::Bag : LabelKind::Set)) return false;
            if (kind() == ObjKind::Bang && l.size() > cap()) return false;
            Obj in = inner();
            for (std::size_t i = 0; i < l.size(); ++i)
                if (!in.contains(l[i])) return false;
            return true;
        }
        }
        return false;
    }

    // window enumeration with every bang cap raised by slack
    std::vector<Label> enumerate(std::size_t slack) const
    {
        std::vector<Label> out;
        switch (kind()) {
        case ObjKind::Unit:
            out.push_back(Label::unit());
            break;
        case ObjKind::Atoms:
            out = p_->atoms;
            break;
        case ObjKind::Tensor: {
            auto l = left().enumerate(slack), r = right().enumerate(slack);
            for (auto a : l)
                for (auto b : r) out.push_back(Label::pair(a, b));
            break;
        }
        case ObjKind::Biproduct:
            for (auto a : left().enumerate(slack)) out.push_back(Label::tag(0, a));
            for (auto b : right().enumerate(slack)) out.push_back(Label::tag(1, b));
            break;
        case ObjKind::Bang: {
            auto in = inner().enumerate(slack);
            for (const auto& b : enumerate_bags(static_cast<std::uint32_t>(in.size()), cap() + slack)) {
                std::vector<Label> el;
                for (auto i : b.elems) el.push_back(in[i]);
                out.push_back(Label::bag(std::move(el)));
            }
            break;
        }
        case ObjKind::Ext: {
            auto in = inner().enumerate(slack);
            if (in.size() > 20) throw std::length_error("exterior basis too large to enumerate: " + name());
            std::vector<std::vector<Label>> by_size(in.size() + 1);
            for (std::uint64_t m = 0; m < (std::uint64_t{1} << in.size()); ++m) {
                std::vector<Label> el;
                for (std::size_t i = 0; i < in.size(); ++i)
                    if (m >> i & 1) el.push_back(in[i]);
                by_size[el.size()].push_back(Label::set(std::move(el)));
            }
            for (auto& v : by_size) {
                std::sort(v.begin(), v.end(), LabelLess{});
                out.insert(out.end(), v.begin(), v.end());
            }
            break;
        }
        }
        return out;
    }

    friend bool operator==(const Obj& a, const Obj& b)
    {
        if (a.p_ == b.p_) return true;
        if (!a.p_ || !b.p_ || a.kind() != b.kind() || a.cap() != b.cap()) return false;
        switch (a.kind()) {
        case ObjKind::Unit:
            return true;
        case ObjKind::Atoms:
            return a.p_->atoms == b.p_->atoms;
        case ObjKind::Tensor:
        case ObjKind::Biproduct:
            return a.left() == b.left() && a.right() == b.right();
        case ObjKind::Bang:
        case ObjKind::Ext:
            return a.inner() == b.inner();
        }
        return false;
    }

private:
    static Obj make(ObjKind k, std::string name)
    {
        auto n = std::make_shared<ObjNode>();
        n->kind = k;
        n->name = std::move(name);
        return Obj(n);
    }
    std::shared_ptr<const ObjNode> p_;
};

}  // namespace rdc
