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

#include "confal/lie_conformal.hpp"

#include <sstream>
#include <utility>

namespace confal {

// GenCombination -------------------------------------------------------------

GenCombination GenCombination::generator(GenId g, const Poly& coeff) {
    GenCombination c;
    c.add(g, coeff);
    return c;
}

Poly GenCombination::at(GenId g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Poly() : it->second;
}

GenId GenCombination::max_generator() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

bool GenCombination::contains(Var v) const {
    for (const auto& [g, c] : terms_)
        if (c.contains(v)) return true;
    return false;
}

void GenCombination::add(GenId g, const Poly& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(g, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GenCombination& GenCombination::operator+=(const GenCombination& o) {
    for (const auto& [g, c] : o.terms_) add(g, c);
    return *this;
}

GenCombination& GenCombination::operator-=(const GenCombination& o) {
    for (const auto& [g, c] : o.terms_) add(g, -c);
    return *this;
}

GenCombination& GenCombination::operator*=(const Poly& f) {
    TermMap out;
    for (const auto& [g, c] : terms_) {
        Poly prod = c * f;
        if (!prod.is_zero()) out.emplace(g, std::move(prod));
    }
    terms_ = std::move(out);
    return *this;
}

GenCombination GenCombination::substituted(Var v, const Poly& s) const {
    GenCombination out;
    for (const auto& [g, c] : terms_) out.add(g, substitute(c, v, s));
    return out;
}

std::string GenCombination::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : terms_) {
        const std::string name = g < names.size() ? names[g] : "G" + std::to_string(g);
        bool negative = false;
        Poly mag = c;
        if (c.terms().size() == 1 && c.terms().begin()->second.sign() < 0) {
            negative = true;
            mag = -c;
        }
        if (!first) os << (negative ? " - " : " + ");
        else if (negative) os << '-';
        first = false;
        if (mag == Poly(1)) os << name;
        else if (mag.terms().size() == 1) os << mag.str() << '*' << name;
        else os << '(' << mag.str() << ")*" << name;
    }
    return os.str();
}

// ConformalAlgebra -----------------------------------------------------------

const char* to_string(TruncationPolicy policy) {
    return policy == TruncationPolicy::ErrorOnOverflow ? "error_on_overflow" : "truncate_to_zero";
}

ConformalAlgebra::ConformalAlgebra(std::string name, std::vector<std::string> generator_names,
                                   TruncationPolicy policy, Table structure, std::optional<Rat> block_p)
    : name_(std::move(name)),
      names_(std::move(generator_names)),
      policy_(policy),
      structure_(std::move(structure)),
      block_p_(std::move(block_p)) {
    if (names_.empty()) throw std::invalid_argument("ConformalAlgebra: no generators");
    if (structure_.size() != names_.size()) throw std::invalid_argument("ConformalAlgebra: table row count mismatch");
    for (std::size_t i = 0; i < structure_.size(); ++i) {
        if (structure_[i].size() != names_.size())
            throw std::invalid_argument("ConformalAlgebra: table column count mismatch");
        for (std::size_t j = 0; j < structure_[i].size(); ++j) {
            const auto& entry = structure_[i][j];
            if (!entry) {
                if (policy_ == TruncationPolicy::TruncateToZero)
                    throw std::invalid_argument("ConformalAlgebra: truncated algebra needs every table entry");
                continue;
            }
            if (!entry->is_zero() && entry->max_generator() >= names_.size())
                throw std::invalid_argument("ConformalAlgebra: structure refers to a generator outside the window");
            for (Var v : {Var::Mu, Var::Aux1, Var::Aux2})
                if (entry->contains(v))
                    throw std::invalid_argument("ConformalAlgebra: structure polynomials must lie in C[D, x]");
        }
    }
}

bool ConformalAlgebra::defined(GenId a, GenId b) const {
    return a < size() && b < size() && structure_[a][b].has_value();
}

const LambdaValue& ConformalAlgebra::structure(GenId a, GenId b) const {
    if (a >= size() || b >= size())
        throw std::out_of_range("generator index outside the window of " + name_);
    const auto& entry = structure_[a][b];
    if (!entry) throw WindowOverflow(a, b);
    return *entry;
}

bool same_structure(const ConformalAlgebra& a, const ConformalAlgebra& b) {
    return a.size() == b.size() && a.policy() == b.policy() && a.table() == b.table();
}

// Constructors ---------------------------------------------------------------

namespace {

const Poly kD = Poly::variable(Var::Partial);
const Poly kX = Poly::variable(Var::Lambda);

std::vector<std::string> indexed_names(const std::string& stem, std::size_t count) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < count; ++i) names.push_back(stem + "_" + std::to_string(i));
    return names;
}

ConformalAlgebra::Table empty_table(std::size_t n) {
    return ConformalAlgebra::Table(n, std::vector<std::optional<LambdaValue>>(n, LambdaValue{}));
}

}  // namespace

ConformalAlgebra make_block(const Rat& p, std::size_t window, TruncationPolicy policy) {
    if (p.is_zero()) throw std::invalid_argument("make_block: p must be nonzero");
    const std::size_t n = window + 1;
    ConformalAlgebra::Table table(n, std::vector<std::optional<LambdaValue>>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i + j > window) {
                if (policy == TruncationPolicy::TruncateToZero) table[i][j] = LambdaValue{};
                continue;
            }
            const Rat ii(static_cast<long>(i));
            const Rat jj(static_cast<long>(j));
            const Poly coeff = (ii + p) * kD + (ii + jj + Rat(2) * p) * kX;
            table[i][j] = LambdaValue::generator(i + j, coeff);
        }
    }
    return ConformalAlgebra("B(" + p.str() + ")", indexed_names("L", n), policy, std::move(table), p);
}

ConformalAlgebra make_virasoro() {
    auto table = empty_table(1);
    table[0][0] = LambdaValue::generator(0, kD + Rat(2) * kX);
    return ConformalAlgebra("Vir", {"L"}, TruncationPolicy::TruncateToZero, std::move(table));
}

ConformalAlgebra make_bn(unsigned n) {
    if (n < 1) throw std::invalid_argument("make_bn: n must be at least 1");
    ConformalAlgebra b = make_block(Rat(-static_cast<long>(n)), n, TruncationPolicy::TruncateToZero);
    return ConformalAlgebra("b(" + std::to_string(n) + ")", b.generator_names(), b.policy(), b.table(), b.block_p());
}

ConformalAlgebra make_heisenberg_virasoro() {
    constexpr GenId L = 0, M = 1;
    auto table = empty_table(2);
    table[L][L] = LambdaValue::generator(L, kD + Rat(2) * kX);
    table[L][M] = LambdaValue::generator(M, kD + kX);
    table[M][L] = LambdaValue::generator(M, kX);
    return ConformalAlgebra("HV", {"L", "M"}, TruncationPolicy::TruncateToZero, std::move(table));
}

ConformalAlgebra make_schrodinger_virasoro() {
    constexpr GenId L = 0, Y = 1, M = 2;
    auto table = empty_table(3);
    table[L][L] = LambdaValue::generator(L, kD + Rat(2) * kX);
    table[L][Y] = LambdaValue::generator(Y, kD + Rat(3, 2) * kX);
    table[L][M] = LambdaValue::generator(M, kD + kX);
    table[Y][L] = LambdaValue::generator(Y, Rat(1, 2) * kD + Rat(3, 2) * kX);
    table[Y][Y] = LambdaValue::generator(M, kD + Rat(2) * kX);
    table[M][L] = LambdaValue::generator(M, kX);
    return ConformalAlgebra("SV", {"L", "Y", "M"}, TruncationPolicy::TruncateToZero, std::move(table));
}

// Bracket --------------------------------------------------------------------

LambdaValue bracket(const ConformalAlgebra& alg, const GenCombination& x, const GenCombination& y, Var v) {
    if (v == Var::Partial) throw std::invalid_argument("bracket: D cannot be the bracket variable");
    if (x.contains(v) || y.contains(v))
        throw std::invalid_argument(std::string("bracket: arguments already depend on ") + var_symbol(v));
    const Poly pv = Poly::variable(v);
    const Poly minus_v = -pv;
    const Poly shifted = kD + pv;
    LambdaValue out;
    for (const auto& [i, fi] : x.terms()) {
        const Poly first = substitute(fi, Var::Partial, minus_v);
        for (const auto& [j, gj] : y.terms()) {
            const LambdaValue& s = alg.structure(i, j);
            if (s.is_zero()) continue;
            const Poly factor = first * substitute(gj, Var::Partial, shifted);
            if (factor.is_zero()) continue;
            const LambdaValue sv = v == Var::Lambda ? s : s.substituted(Var::Lambda, pv);
            out += factor * sv;
        }
    }
    return out;
}

// Axiom checks ---------------------------------------------------------------

LambdaValue skew_residual(const ConformalAlgebra& alg, GenId a, GenId b) {
    const LambdaValue ab = bracket(alg, GenCombination::generator(a), GenCombination::generator(b), Var::Lambda);
    const LambdaValue ba = bracket(alg, GenCombination::generator(b), GenCombination::generator(a), Var::Mu);
    const Poly minus_x_minus_d = -kX - kD;
    return ab + ba.substituted(Var::Mu, minus_x_minus_d);
}

SkewReport check_skew(const ConformalAlgebra& alg) {
    SkewReport report;
    for (GenId a = 0; a < alg.size(); ++a) {
        for (GenId b = 0; b <= a; ++b) {
            if (!alg.defined(a, b) || !alg.defined(b, a)) {
                ++report.pairs_skipped;
                continue;
            }
            ++report.pairs_checked;
            LambdaValue r = skew_residual(alg, a, b);
            if (!r.is_zero()) report.failures.push_back({a, b, std::move(r)});
        }
    }
    return report;
}

LambdaValue jacobi_residual(const ConformalAlgebra& alg, GenId a, GenId b, GenId c) {
    const auto A = GenCombination::generator(a);
    const auto B = GenCombination::generator(b);
    const auto C = GenCombination::generator(c);
    const Poly x = Poly::variable(Var::Lambda);
    const Poly y = Poly::variable(Var::Mu);

    const LambdaValue left = bracket(alg, A, bracket(alg, B, C, Var::Mu), Var::Lambda);
    const LambdaValue middle =
        bracket(alg, bracket(alg, A, B, Var::Lambda), C, Var::Aux1).substituted(Var::Aux1, x + y);
    const LambdaValue right = bracket(alg, B, bracket(alg, A, C, Var::Lambda), Var::Mu);
    return left - middle - right;
}

JacobiReport check_jacobi(const ConformalAlgebra& alg) {
    JacobiReport report;
    for (GenId a = 0; a < alg.size(); ++a) {
        for (GenId b = 0; b < alg.size(); ++b) {
            for (GenId c = 0; c < alg.size(); ++c) {
                try {
                    LambdaValue r = jacobi_residual(alg, a, b, c);
                    ++report.triples_checked;
                    if (!r.is_zero()) report.failures.push_back({a, b, c, std::move(r)});
                } catch (const WindowOverflow&) {
                    ++report.triples_skipped;
                }
            }
        }
    }
    return report;
}

// Morphisms ------------------------------------------------------------------

GenCombination apply(const ConfMorphism& phi, const GenCombination& v) {
    GenCombination out;
    for (const auto& [g, c] : v.terms()) {
        if (g >= phi.images.size()) throw std::out_of_range("apply: generator has no image");
        out += c * phi.images[g];
    }
    return out;
}

MorphismReport check_morphism(const ConfMorphism& phi) {
    if (phi.images.size() != phi.source.size())
        throw std::invalid_argument("check_morphism: images must cover the source window");
    for (const auto& img : phi.images) {
        if (!img.is_zero() && img.max_generator() >= phi.target.size())
            throw std::invalid_argument("check_morphism: image outside the target window");
        for (Var v : {Var::Lambda, Var::Mu, Var::Aux1, Var::Aux2})
            if (img.contains(v)) throw std::invalid_argument("check_morphism: images must have coefficients in C[D]");
    }
    MorphismReport report;
    for (GenId a = 0; a < phi.source.size(); ++a) {
        for (GenId b = 0; b < phi.source.size(); ++b) {
            if (!phi.source.defined(a, b)) {
                ++report.pairs_skipped;
                continue;
            }
            try {
                const LambdaValue lhs = apply(phi, phi.source.structure(a, b));
                const LambdaValue rhs = bracket(phi.target, phi.images[a], phi.images[b]);
                ++report.pairs_checked;
                LambdaValue r = lhs - rhs;
                if (!r.is_zero()) report.failures.push_back({a, b, std::move(r)});
            } catch (const WindowOverflow&) {
                ++report.pairs_skipped;
            }
        }
    }
    if (phi.index_scale) {
        for (std::size_t i = 0; i < phi.images.size(); ++i) {
            if (phi.images[i].is_zero()) report.injective_on_generators = false;
            for (std::size_t j = 0; j < i; ++j)
                if (phi.images[i] == phi.images[j]) report.injective_on_generators = false;
        }
    }
    return report;
}

ConfMorphism compose(const ConfMorphism& first, const ConfMorphism& second) {
    if (!same_structure(first.target, second.source))
        throw std::invalid_argument("compose: target of the first map differs from the source of the second");
    ConfMorphism out{first.source, second.target, {}, std::nullopt};
    for (const auto& img : first.images) out.images.push_back(apply(second, img));
    if (first.index_scale && second.index_scale) out.index_scale = *first.index_scale * *second.index_scale;
    return out;
}

ConfMorphism block_embedding(const Rat& p, long n, std::size_t source_window, std::size_t target_window) {
    if (n < 1) throw std::invalid_argument("block_embedding: n must be positive");
    if (source_window * static_cast<std::size_t>(n) > target_window)
        throw std::invalid_argument("block_embedding: target window too small for the images");
    ConfMorphism phi{make_block(p, source_window, TruncationPolicy::ErrorOnOverflow),
                     make_block(p * Rat(n), target_window, TruncationPolicy::ErrorOnOverflow),
                     {},
                     n};
    for (std::size_t i = 0; i <= source_window; ++i)
        phi.images.push_back(ConfElement::generator(i * static_cast<std::size_t>(n), Poly(Rat(1, n))));
    return phi;
}

// Quotients ------------------------------------------------------------------

ConformalAlgebra quotient_by_tail(const ConformalAlgebra& alg, std::size_t n) {
    if (n > alg.window()) throw std::invalid_argument("quotient_by_tail: n exceeds the window");
    // tail = generators n+1..window; undefined entries land beyond the window, hence in the tail
    for (GenId a = 0; a < alg.size(); ++a) {
        for (GenId b = 0; b < alg.size(); ++b) {
            if (a <= n && b <= n) continue;
            if (!alg.defined(a, b)) continue;
            for (const auto& [g, c] : alg.structure(a, b).terms()) {
                if (g <= n)
                    throw NotAnIdeal("quotient_by_tail: [" + alg.generator_names()[a] + " x " +
                                     alg.generator_names()[b] + "] has a component on " + alg.generator_names()[g]);
            }
        }
    }
    ConformalAlgebra::Table table(n + 1, std::vector<std::optional<LambdaValue>>(n + 1, LambdaValue{}));
    for (GenId a = 0; a <= n; ++a) {
        for (GenId b = 0; b <= n; ++b) {
            if (!alg.defined(a, b)) continue;
            LambdaValue kept;
            for (const auto& [g, c] : alg.structure(a, b).terms())
                if (g <= n) kept.add(g, c);
            table[a][b] = std::move(kept);
        }
    }
    std::vector<std::string> names(alg.generator_names().begin(), alg.generator_names().begin() + (n + 1));
    return ConformalAlgebra(alg.name() + "_[" + std::to_string(n) + "]", std::move(names),
                            TruncationPolicy::TruncateToZero, std::move(table), alg.block_p());
}

}  // namespace confal
