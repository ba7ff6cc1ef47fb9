#pragma once

// Scalar vocabulary shared by Rat, QuadElem and FFElem.  Templates call these
// unqualified so overloads for other element types are found by ADL.

#include "fsieve/quad.hpp"
#include "fsieve/rat.hpp"

#include <string>

namespace fsieve {

inline Rat zero_like(const Rat &) { return Rat(0); }
inline Rat one_like(const Rat &) { return Rat(1); }
inline Rat lift_rat(const Rat & r, const Rat &) { return r; }
inline bool zero_p(const Rat & x) { return x.is_zero(); }
inline long characteristic(const Rat &) { return 0; }
inline Rat inv(const Rat & x) { return x.inverse(); }
inline std::string to_string(const Rat & x) { return x.str(); }

inline QuadElem zero_like(const QuadElem &) { return QuadElem(); }
inline QuadElem one_like(const QuadElem &) { return QuadElem(1); }
inline QuadElem lift_rat(const Rat & r, const QuadElem &) { return QuadElem(r); }
inline bool zero_p(const QuadElem & x) { return x.is_zero(); }
inline long characteristic(const QuadElem &) { return 0; }
inline QuadElem inv(const QuadElem & x) { return x.inverse(); }
inline std::string to_string(const QuadElem & x) { return x.str(); }

template <class K>
K from_int(long n, const K & like)
{
    return lift_rat(Rat(n), like);
}

template <class K>
K power(K base, unsigned long e)
{
    K r = one_like(base);
    while (e) {
        if (e & 1)
            r *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return r;
}

} // namespace fsieve
