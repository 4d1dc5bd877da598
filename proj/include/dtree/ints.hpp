// Exact integer arithmetic for the decorated-tree library.
//
// Decoration products are taken along entire paths and summed over all
// arrows, so values grow multiplicatively with tree size; every quantity in
// the library therefore uses an arbitrary-precision integer type.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace dtree {

using Int = boost::multiprecision::cpp_int;

// Nonnegative gcd: gcd(a, 0) == |a|, gcd(0, 0) == 0.
inline Int gcd(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(boost::multiprecision::abs(a),
                                      boost::multiprecision::abs(b));
}

inline Int abs(const Int& x) { return boost::multiprecision::abs(x); }

// -1, 0 or +1.
inline int sign(const Int& x) { return x.sign(); }

// x / |x|; only defined for nonzero x.
inline Int sgn_nonzero(const Int& x) {
    if (x == 0) throw std::invalid_argument("sgn is undefined at 0");
    return x < 0 ? Int(-1) : Int(1);
}

// Division that must be exact; a remainder indicates a broken invariant.
inline Int exact_div(const Int& a, const Int& b) {
    if (b == 0) throw std::logic_error("exact_div: division by zero");
    Int q = a / b;
    if (q * b != a) {
        throw std::logic_error("exact_div: " + b.str() + " does not divide " +
                               a.str());
    }
    return q;
}

inline bool is_even(const Int& x) { return x % 2 == 0; }

inline bool coprime(const Int& a, const Int& b) { return gcd(a, b) == 1; }

}  // namespace dtree
