/*
   Copyright 2026 The confal Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CONFAL_POLY_HPP
#define CONFAL_POLY_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "confal/rat.hpp"

namespace confal {

/// Closed registry of formal variables. Partial is the derivation, Lambda and
/// Mu are bracket parameters, Aux1/Aux2 are scratch variables used for
/// shifted brackets such as [a_{x+y} b].
enum class Var : std::uint8_t { Partial = 0, Lambda = 1, Mu = 2, Aux1 = 3, Aux2 = 4 };

inline constexpr std::size_t kNumVars = 5;

/// Name used by the text grammar: D, x, y, u, w.
char var_symbol(Var v);

using Exponents = std::array<std::uint16_t, kNumVars>;

/// Graded lexicographic order, largest first, with D > x > y > u > w.
struct GrlexDescending {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

class PolyParseError : public std::invalid_argument {
   public:
    PolyParseError(const std::string& msg, std::size_t position)
        : std::invalid_argument(msg + " at column " + std::to_string(position + 1)),
          position_(position) {}
    [[nodiscard]] std::size_t position() const { return position_; }

   private:
    std::size_t position_;
};

class MissingVariable : public std::invalid_argument {
   public:
    explicit MissingVariable(Var v)
        : std::invalid_argument(std::string("eval: no value assigned to variable ") + var_symbol(v)),
          var_(v) {}
    [[nodiscard]] Var var() const { return var_; }

   private:
    Var var_;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored, so equality is structural.
class Poly {
   public:
    using TermMap = std::map<Exponents, Rat, GrlexDescending>;

    Poly() = default;
    Poly(const Rat& c);  // NOLINT: constants embed implicitly
    Poly(long c) : Poly(Rat(c)) {}  // NOLINT
    Poly(int c) : Poly(Rat(c)) {}   // NOLINT

    static Poly variable(Var v);
    static Poly monomial(const Exponents& e, const Rat& c);

    /// Parses the D/x/y/u/w grammar with + - * ^, parentheses and a/b literals.
    static Poly parse(std::string_view text);

    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const;
    /// Constant term (coefficient of the empty monomial).
    [[nodiscard]] Rat constant_term() const;
    [[nodiscard]] unsigned degree(Var v) const;
    [[nodiscard]] unsigned total_degree() const;
    [[nodiscard]] bool contains(Var v) const { return degree(v) > 0; }
    [[nodiscard]] std::string str() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rat& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
    friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
    friend Poly operator-(const Poly& a);

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

   private:
    void add_term(const Exponents& e, const Rat& c);
    TermMap terms_;
};

Poly pow(const Poly& base, unsigned exponent);

inline Poly add(const Poly& a, const Poly& b) { return a + b; }
inline Poly mul(const Poly& a, const Poly& b) { return a * b; }

/// Replaces every occurrence of v by s and expands.
Poly substitute(const Poly& a, Var v, const Poly& s);

/// Plain coefficient of v^k (a polynomial free of v).
Poly coefficient(const Poly& a, Var v, unsigned k);

/// k! times the coefficient of v^k: the k-th product under the divided-power
/// expansion sum_k v^k/k! * c_k.
Poly coeff_in(const Poly& a, Var v, unsigned k);

using Assignment = std::map<Var, Rat>;

/// Exact value; throws MissingVariable if a present variable is unassigned.
Rat eval(const Poly& a, const Assignment& assignment);

/// Division by g in Q[v] where g involves only v: a = q*g + r with deg_v r < deg_v g.
struct DivMod {
    Poly quotient;
    Poly remainder;
};
DivMod divmod_in(const Poly& a, const Poly& g, Var v);

/// Monic gcd of two univariate polynomials in v (zero if both are zero).
Poly gcd_in(const Poly& a, const Poly& b, Var v);

/// Scales a univariate nonzero polynomial in v to leading coefficient 1.
Poly make_monic(const Poly& a, Var v);

/// Distinct rational roots of a nonzero univariate polynomial in v, ascending.
std::vector<Rat> rational_roots(const Poly& a, Var v);

// ---------------------------------------------------------------------------
// Deterministic identity testing over a sampled rational parameter.

class ScheduleExhausted : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

using RatPredicate = std::function<bool(const Rat&)>;

/// Full sample schedule 1, -1, 2, -2, 1/2, -1/2, 3, -3, 1/3, -1/3, 5, ...
/// (1, then q and 1/q with both signs for each prime q <= 97).
const std::vector<Rat>& pit_schedule();

/// First `count` schedule points not rejected by `excluded`.
std::vector<Rat> pit_points(std::size_t count, const RatPredicate& excluded = {});

/// True iff family(p) vanishes at degree_bound+1 distinct schedule points.
/// Sound whenever every coefficient of family(p) is polynomial in p of degree
/// at most degree_bound.
bool pit_verify(const std::function<Poly(const Rat&)>& family, unsigned degree_bound,
                const RatPredicate& excluded = {});

/// Same schedule, for families whose value is not a single Poly.
bool pit_verify_pred(const RatPredicate& vanishes_at, unsigned degree_bound,
                     const RatPredicate& excluded = {});

}  // namespace confal

#endif  // CONFAL_POLY_HPP
