#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rdc {

using natural = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

// A commutative semiring with a distinguished carrier type.
template <class S>
concept Semiring = requires(const typename S::value_type& a, const typename S::value_type& b,
                            const natural& n) {
    typename S::value_type;
    { S::id } -> std::convertible_to<std::string_view>;
    { S::idempotent } -> std::convertible_to<bool>;
    { S::zero() } -> std::same_as<typename S::value_type>;
    { S::one() } -> std::same_as<typename S::value_type>;
    { S::add(a, b) } -> std::same_as<typename S::value_type>;
    { S::mul(a, b) } -> std::same_as<typename S::value_type>;
    { S::is_zero(a) } -> std::convertible_to<bool>;
    { S::from_natural(n) } -> std::same_as<typename S::value_type>;
    { S::to_string(a) } -> std::same_as<std::string>;
    { S::parse(std::string_view{}) } -> std::same_as<typename S::value_type>;
};

struct Boolean {
    using value_type = bool;
    static constexpr std::string_view id = "boolean";
    static constexpr bool idempotent = true;
    static bool zero() { return false; }
    static bool one() { return true; }
    static bool add(bool a, bool b) { return a || b; }
    static bool mul(bool a, bool b) { return a && b; }
    static bool is_zero(bool a) { return !a; }
    static bool from_natural(const natural& n) { return n != 0; }
    static std::string to_string(bool a) { return a ? "1" : "0"; }
    static bool parse(std::string_view s)
    {
        if (s == "1") return true;
        if (s == "0") return false;
        throw std::invalid_argument("boolean coefficient: " + std::string(s));
    }
};

struct Natural {
    using value_type = natural;
    static constexpr std::string_view id = "natural";
    static constexpr bool idempotent = false;
    static natural zero() { return 0; }
    static natural one() { return 1; }
    static natural add(const natural& a, const natural& b) { return a + b; }
    static natural mul(const natural& a, const natural& b) { return a * b; }
    static bool is_zero(const natural& a) { return a == 0; }
    static natural from_natural(const natural& n) { return n; }
    static std::string to_string(const natural& a) { return a.str(); }
    static natural parse(std::string_view s)
    {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos)
            throw std::invalid_argument("natural coefficient: " + std::string(s));
        return natural(std::string(s));
    }
};

struct GF2 {
    using value_type = bool;
    static constexpr std::string_view id = "gf2";
    static constexpr bool idempotent = false;
    static bool zero() { return false; }
    static bool one() { return true; }
    static bool add(bool a, bool b) { return a != b; }
    static bool mul(bool a, bool b) { return a && b; }
    static bool is_zero(bool a) { return !a; }
    static bool from_natural(const natural& n) { return bit_test(n, 0); }
    static std::string to_string(bool a) { return a ? "1" : "0"; }
    static bool parse(std::string_view s) { return Boolean::parse(s); }
};

struct Rational {
    using value_type = rational;
    static constexpr std::string_view id = "rational";
    static constexpr bool idempotent = false;
    static rational zero() { return 0; }
    static rational one() { return 1; }
    static rational add(const rational& a, const rational& b) { return a + b; }
    static rational mul(const rational& a, const rational& b) { return a * b; }
    static bool is_zero(const rational& a) { return a == 0; }
    static rational from_natural(const natural& n) { return rational(n); }
    static std::string to_string(const rational& a) { return a.str(); }
    static rational parse(std::string_view s)
    {
        auto slash = s.find('/');
        auto num = [](std::string_view t) {
            std::string_view body = t;
            if (!body.empty() && body[0] == '-') body.remove_prefix(1);
            if (body.empty() || body.find_first_not_of("0123456789") != std::string_view::npos)
                throw std::invalid_argument("rational coefficient: " + std::string(t));
            return natural(std::string(t));
        };
        if (slash == std::string_view::npos) return rational(num(s));
        natural den = num(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational coefficient: zero denominator");
        return rational(num(s.substr(0, slash)), den);
    }
};

static_assert(Semiring<Boolean> && Semiring<Natural> && Semiring<GF2> && Semiring<Rational>);

}  // namespace rdc
