#ifndef GMAJOR_RATIONAL_HPP
#define GMAJOR_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmajor {

/// Exact rational scalar. All order decisions in the library are made with
/// this type; doubles appear only in the opf sampling paths.
using Rat = boost::multiprecision::mpq_rational;

/// Point in R^n with exact rational coordinates.
using Vec = std::vector<Rat>;

inline Rat dot(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline Rat norm2(const Vec& a) { return dot(a, a); }

inline Vec add(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("add: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("sub: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(const Rat& c, const Vec& a)
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = c * a[i];
    return r;
}

inline bool is_zero(const Vec& a)
{
    for (const Rat& x : a)
        if (x != 0)
            return false;
    return true;
}

inline Rat vec_sum(const Vec& a)
{
    Rat s = 0;
    for (const Rat& x : a)
        s += x;
    return s;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

/// Parses "p/q" or an integer literal; rejects anything else.
inline Rat parse_rational(const std::string& s)
{
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    auto check_int = [](const std::string& t) {
        if (t.empty())
            throw std::invalid_argument("malformed rational literal");
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size())
            throw std::invalid_argument("malformed rational literal");
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                throw std::invalid_argument("malformed rational literal: " + t);
    };
    if (slash == std::string::npos) {
        check_int(s);
        return Rat(s);
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    Rat d(den);
    if (d == 0)
        throw std::invalid_argument("zero denominator: " + s);
    return Rat(num) / d;
}

inline std::string to_string(const Rat& x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

inline std::string to_string(const Vec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += to_string(v[i]);
    }
    return s + ")";
}

inline Vec make_vec(std::initializer_list<long> xs)
{
    Vec v;
    v.reserve(xs.size());
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

} // namespace gmajor

#endif
