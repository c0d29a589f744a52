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


#ifndef CONFAL_ANNIHILATION_HPP
#define CONFAL_ANNIHILATION_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confal/finite_lie.hpp"
#include "confal/lie_conformal.hpp"

namespace confal {

struct KProduct {
    unsigned k;
    ConfElement value;  // coefficients in C[D]
};

/// Nonzero a_(k) b, read off the lambda-bracket as k! [lambda^k].
std::vector<KProduct> k_products(const ConformalAlgebra& alg, GenId i, GenId j);

/// "L_{i,m}"
std::string mode_label(const std::string& stem, long i, long m);

/// Annihilation algebra on L_{i,m}, 0 <= i <= idx_window, -1 <= m <= mode_window,
/// plus T when extended. Brackets come from the n-th product formula applied
/// to the k-products; for block algebras they are also compared with the
/// closed form and a disagreement throws std::logic_error.
FiniteLieAlgebra build_annihilation(const ConformalAlgebra& alg, long idx_window, long mode_window, bool extended);

struct CentralReport {
    std::size_t checked = 0;
    std::vector<std::string> excluded;  // basis elements whose bracket met the window edge
    std::vector<std::pair<std::string, Coords>> failures;
    [[nodiscard]] bool passed() const { return failures.empty(); }
};

/// [T - (1/p) L_{0,-1}, x] = 0 for every basis element x away from the window edge.
CentralReport check_central(const FiniteLieAlgebra& ext);

/// G_{k,N}: J_{i,m}, 0 <= i <= k, 0 <= m <= N, with products leaving the box set to zero.
FiniteLieAlgebra make_G(const Rat& p, long k, long N);

/// Labels J_{i,m} whose ad J_{0,0} eigenvalue differs from i - pm (or whose image is not diagonal).
std::vector<std::string> check_grading(const FiniteLieAlgebra& G);

enum class ResonanceCase { NotPositive, NoResonance, TopIndex, TopMode, Corner };
const char* to_string(ResonanceCase c);

struct Subspace {
    std::vector<std::string> span;
};

struct ResonanceReport {
    Rat p;
    long k = 0;
    long N = 0;
    std::vector<std::pair<long, long>> resonances;
    std::optional<long> i0;
    std::optional<long> m0;
    ResonanceCase kase = ResonanceCase::NoResonance;
    std::string ideal_name;  // K, I1, I2, I3
    Subspace ideal;
};

/// Pairs (i,m) != (0,0) in the window with i = pm, and the ideal the case analysis uses.
ResonanceReport resonance_analysis(const FiniteLieAlgebra& G);

struct IdealReport {
    bool is_ideal = true;
    std::vector<std::pair<std::string, std::string>> escapes;  // (x, s) with [x,s] outside S
    bool abelian = true;
    bool nilpotent = false;
    std::optional<std::size_t> nilpotency_class;
    std::vector<std::size_t> series_dims;  // dim S, dim [S,S], dim [S,[S,S]], ...
    std::vector<std::pair<std::pair<std::string, std::string>, Coords>> internal_brackets;
};

IdealReport ideal_and_nilpotency(const FiniteLieAlgebra& G, const Subspace& S);

/// Internal bracket constant of the corner case: -(i0 + p) m0 - i0.
Rat corner_constant(const Rat& p, long i0, long m0);

enum class TraceVerdict { Consistent, ForcedZero };
const char* to_string(TraceVerdict v);

struct TraceCertificate {
    TraceVerdict verdict;
    Rat lhs;  // tr(AB - BA)
    Rat rhs;  // b c d
};

/// Whether AB - BA = bc I can hold at the level of traces.
TraceCertificate trace_certificate(const RatMatrix& A, const RatMatrix& B, const Rat& b, const Rat& c);

struct CharacterReport {
    std::vector<std::vector<Rat>> derived_basis;
    std::vector<std::vector<Rat>> characters;
    bool verified = false;
    [[nodiscard]] std::size_t dimension() const { return characters.size(); }
};

/// One-dimensional representations: functionals vanishing on [G,G].
CharacterReport characters(const FiniteLieAlgebra& G);

struct IntRange {
    long lo;
    long hi;
};

/// B(p,q) on L_{i,m}, i in i_range, m in m_range:
/// [L_{i,m}, L_{j,n}] = ((j+p)(m+q) - (i+p)(n+q)) L_{i+j,m+n}, truncated to the window.
FiniteLieAlgebra make_block_pq_window(const Rat& p, const Rat& q, IntRange i_range, IntRange m_range);

}  // namespace confal

#endif  // CONFAL_ANNIHILATION_HPP
