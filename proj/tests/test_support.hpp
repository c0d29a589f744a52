#ifndef CONFAL_TEST_SUPPORT_HPP
#define CONFAL_TEST_SUPPORT_HPP

#include <random>

#include "confal/poly.hpp"

namespace confal::testing {

inline Poly P(const char* text) { return Poly::parse(text); }

/// Small random rational with numerator in [-9, 9] and denominator in [1, 4].
inline Rat random_rat(std::mt19937_64& rng) {
    const long num = static_cast<long>(rng() % 19) - 9;
    const long den = static_cast<long>(rng() % 4) + 1;
    return Rat(num, den);
}

inline Rat random_nonzero_rat(std::mt19937_64& rng) {
    for (;;) {
        Rat r = random_rat(rng);
        if (!r.is_zero()) return r;
    }
}

/// Random polynomial in the given variables with each exponent <= max_degree.
inline Poly random_poly(std::mt19937_64& rng, std::initializer_list<Var> vars, unsigned max_degree,
                        unsigned max_terms = 5) {
    Poly p;
    const unsigned terms = static_cast<unsigned>(rng() % (max_terms + 1));
    for (unsigned t = 0; t < terms; ++t) {
        Exponents e{};
        for (Var v : vars) e[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(rng() % (max_degree + 1));
        p += Poly::monomial(e, random_rat(rng));
    }
    return p;
}

}  // namespace confal::testing

#endif
