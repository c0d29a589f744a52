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

#ifndef CONFAL_LIE_CONFORMAL_HPP
#define CONFAL_LIE_CONFORMAL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "confal/poly.hpp"

namespace confal {

using GenId = std::size_t;

/// Finite sum  sum_k c_k * L_k  over generators with polynomial coefficients.
/// As an element of the algebra the coefficients live in C[D]; as the value of
/// a bracket they live in C[D, x, ...].
class GenCombination {
   public:
    using TermMap = std::map<GenId, Poly>;

    GenCombination() = default;
    static GenCombination generator(GenId g, const Poly& coeff = Poly(1));

    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    /// Coefficient of generator g (zero if absent).
    [[nodiscard]] Poly at(GenId g) const;
    [[nodiscard]] GenId max_generator() const;
    [[nodiscard]] bool contains(Var v) const;

    void add(GenId g, const Poly& coeff);

    GenCombination& operator+=(const GenCombination& o);
    GenCombination& operator-=(const GenCombination& o);
    GenCombination& operator*=(const Poly& f);

    friend GenCombination operator+(GenCombination a, const GenCombination& b) { return a += b; }
    friend GenCombination operator-(GenCombination a, const GenCombination& b) { return a -= b; }
    friend GenCombination operator*(const Poly& f, GenCombination a) { return a *= f; }
    friend GenCombination operator-(const GenCombination& a) { return Poly(-1) * a; }
    friend bool operator==(const GenCombination& a, const GenCombination& b) = default;

    /// Applies a substitution to every coefficient.
    [[nodiscard]] GenCombination substituted(Var v, const Poly& s) const;

    /// Renders "(D + 2*x)*L_0 - x*M" with the supplied generator names.
    [[nodiscard]] std::string str(const std::vector<std::string>& names) const;

   private:
    TermMap terms_;
};

using ConfElement = GenCombination;
using LambdaValue = GenCombination;

enum class TruncationPolicy { ErrorOnOverflow, TruncateToZero };

const char* to_string(TruncationPolicy policy);

/// Raised when a bracket lands on generators outside an ERROR_ON_OVERFLOW window.
class WindowOverflow : public std::out_of_range {
   public:
    WindowOverflow(GenId a, GenId b)
        : std::out_of_range("bracket of generators " + std::to_string(a) + " and " + std::to_string(b) +
                            " leaves the generator window"),
          a_(a), b_(b) {}
    [[nodiscard]] GenId first() const { return a_; }
    [[nodiscard]] GenId second() const { return b_; }

   private:
    GenId a_;
    GenId b_;
};

class NotAnIdeal : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A Lie conformal algebra presented as a free C[D]-module on generators
/// 0..window with structure polynomials [L_i x L_j] = sum_k c^k_ij(D, x) L_k.
///
/// A missing table entry means the product leaves the window (only possible
/// under ErrorOnOverflow, where the window is a finite view of a larger
/// algebra). Under TruncateToZero every entry is present, which realizes the
/// quotient by the span of the generators beyond the window.
class ConformalAlgebra {
   public:
    using Table = std::vector<std::vector<std::optional<LambdaValue>>>;

    ConformalAlgebra(std::string name, std::vector<std::string> generator_names, TruncationPolicy policy,
                     Table structure, std::optional<Rat> block_p = std::nullopt);

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const std::vector<std::string>& generator_names() const { return names_; }
    [[nodiscard]] std::size_t size() const { return names_.size(); }
    [[nodiscard]] std::size_t window() const { return names_.size() - 1; }
    [[nodiscard]] TruncationPolicy policy() const { return policy_; }
    /// Parameter p when the algebra is B(p) or one of its tail quotients.
    [[nodiscard]] const std::optional<Rat>& block_p() const { return block_p_; }
    [[nodiscard]] const Table& table() const { return structure_; }

    [[nodiscard]] bool defined(GenId a, GenId b) const;
    /// [L_a x L_b]; throws WindowOverflow for undefined entries.
    [[nodiscard]] const LambdaValue& structure(GenId a, GenId b) const;

   private:
    std::string name_;
    std::vector<std::string> names_;
    TruncationPolicy policy_;
    Table structure_;
    std::optional<Rat> block_p_;
};

/// Identical generator count, policy and structure polynomials (names ignored).
bool same_structure(const ConformalAlgebra& a, const ConformalAlgebra& b);

// Constructors ---------------------------------------------------------------

/// B(p) on generators L_0..L_window: [L_i x L_j] = ((i+p)D + (i+j+2p)x) L_{i+j}.
ConformalAlgebra make_block(const Rat& p, std::size_t window, TruncationPolicy policy);
ConformalAlgebra make_virasoro();
/// b(n) = B(-n) / B(-n)_<n+1>.
ConformalAlgebra make_bn(unsigned n);
/// Generators L, M.
ConformalAlgebra make_heisenberg_virasoro();
/// Generators L, Y, M.
ConformalAlgebra make_schrodinger_virasoro();

// Bracket --------------------------------------------------------------------

/// [x_v y] extended by sesquilinearity:
///   sum_{i,j} x_i(-v) * y_j(D+v) * [L_i v L_j].
/// Coefficients of x and y may involve other variables as constants but not v.
LambdaValue bracket(const ConformalAlgebra& alg, const GenCombination& x, const GenCombination& y,
                    Var v = Var::Lambda);

// Axiom checks ---------------------------------------------------------------

struct SkewFailure {
    GenId a;
    GenId b;
    LambdaValue residual;
};

struct SkewReport {
    std::size_t pairs_checked = 0;
    std::size_t pairs_skipped = 0;
    std::vector<SkewFailure> failures;
    [[nodiscard]] bool passed() const { return failures.empty(); }
};

/// [a x b] + [b y a]|_{y -> -x-D}; zero iff skew-symmetry holds for the pair.
LambdaValue skew_residual(const ConformalAlgebra& alg, GenId a, GenId b);

/// Checks every unordered generator pair, oriented with a >= b.
SkewReport check_skew(const ConformalAlgebra& alg);

struct JacobiFailure {
    GenId a;
    GenId b;
    GenId c;
    LambdaValue residual;
};

struct JacobiReport {
    std::size_t triples_checked = 0;
    std::size_t triples_skipped = 0;
    std::vector<JacobiFailure> failures;
    [[nodiscard]] bool passed() const { return failures.empty(); }
};

/// [a x [b y c]] - [[a x b] x+y c] - [b y [a x c]] in variables D, x, y.
LambdaValue jacobi_residual(const ConformalAlgebra& alg, GenId a, GenId b, GenId c);

/// All ordered triples; triples touching an overflow are counted as skipped.
JacobiReport check_jacobi(const ConformalAlgebra& alg);

// Morphisms ------------------------------------------------------------------

/// C[D]-linear map determined by images of the generators.
struct ConfMorphism {
    ConformalAlgebra source;
    ConformalAlgebra target;
    std::vector<ConfElement> images;
    std::optional<long> index_scale;
};

/// Extends the generator images C[D]-linearly (coefficients may carry x, y).
GenCombination apply(const ConfMorphism& phi, const GenCombination& v);

struct MorphismFailure {
    GenId a;
    GenId b;
    LambdaValue residual;
};

struct MorphismReport {
    std::size_t pairs_checked = 0;
    std::size_t pairs_skipped = 0;
    std::vector<MorphismFailure> failures;
    bool injective_on_generators = true;
    [[nodiscard]] bool passed() const { return failures.empty() && injective_on_generators; }
};

MorphismReport check_morphism(const ConfMorphism& phi);

/// second o first.
ConfMorphism compose(const ConfMorphism& first, const ConfMorphism& second);

/// B(p) -> B(np), L_i -> (1/n) L'_{ni}.
ConfMorphism block_embedding(const Rat& p, long n, std::size_t source_window, std::size_t target_window);

// Quotients ------------------------------------------------------------------

/// Keeps generators 0..n and sends the tail n+1..window to zero. Throws
/// NotAnIdeal when the tail is not closed under brackets with the algebra.
ConformalAlgebra quotient_by_tail(const ConformalAlgebra& alg, std::size_t n);

}  // namespace confal

#endif  // CONFAL_LIE_CONFORMAL_HPP
