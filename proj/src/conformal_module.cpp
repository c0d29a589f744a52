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

#include "confal/conformal_module.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace confal {

namespace {

const Poly kD = Poly::variable(Var::Partial);
const Poly kX = Poly::variable(Var::Lambda);

bool only_vars(const Poly& p, std::initializer_list<Var> allowed) {
    for (Var v : {Var::Partial, Var::Lambda, Var::Mu, Var::Aux1, Var::Aux2}) {
        if (!p.contains(v)) continue;
        bool ok = false;
        for (Var a : allowed) ok = ok || a == v;
        if (!ok) return false;
    }
    return true;
}

Rat require_block(const ConformalAlgebra& alg) {
    if (!alg.block_p()) throw UnsupportedAlgebra(alg.name() + " is not a block-type algebra");
    return *alg.block_p();
}

std::string param_name(const Rat& r) { return r.str(); }

}  // namespace

const char* to_string(ModuleKind kind) { return kind == ModuleKind::Free ? "FREE" : "SCALAR_DEL"; }

const char* to_string(ModuleFamily family) {
    switch (family) {
        case ModuleFamily::MDeltaAlpha: return "M_DELTA_ALPHA";
        case ModuleFamily::MDeltaAlphaBeta: return "M_DELTA_ALPHA_BETA";
        case ModuleFamily::TrivialCAlpha: return "TRIVIAL_C_ALPHA";
    }
    return "?";
}

const char* to_string(Irreducibility v) {
    switch (v) {
        case Irreducibility::Irreducible: return "IRREDUCIBLE";
        case Irreducibility::Reducible: return "REDUCIBLE";
        case Irreducibility::Undecided: return "UNDECIDED";
    }
    return "?";
}

ConformalModule::ConformalModule(std::string name, ModuleKind kind, std::size_t rank, ActionTable action, Rat alpha,
                                 std::optional<ModuleFamilyTag> tag)
    : name_(std::move(name)), kind_(kind), rank_(rank), alpha_(std::move(alpha)), tag_(std::move(tag)) {
    if (rank_ == 0) throw std::invalid_argument("module rank must be positive");
    if (kind_ == ModuleKind::ScalarDel && rank_ != 1) throw std::invalid_argument("scalar-D modules are one-dimensional");
    for (auto& [key, value] : action) {
        if (key.second >= rank_) throw std::invalid_argument("action entry on a basis vector beyond the rank");
        for (const auto& [b, coeff] : value.terms()) {
            if (b >= rank_) throw std::invalid_argument("action value leaves the module basis");
            const bool ok = kind_ == ModuleKind::Free ? only_vars(coeff, {Var::Partial, Var::Lambda})
                                                      : only_vars(coeff, {Var::Lambda});
            if (!ok) throw std::invalid_argument("action coefficient uses a variable the module kind does not allow");
        }
        if (!value.is_zero()) action_.emplace(key, std::move(value));
    }
}

ModuleElement ConformalModule::action(GenId g, std::size_t b) const {
    auto it = action_.find({g, b});
    return it == action_.end() ? ModuleElement{} : it->second;
}

ConformalModule make_M(const ConformalAlgebra& alg, const Rat& delta, const Rat& alpha) {
    const Rat p = require_block(alg);
    ConformalModule::ActionTable table;
    table[{0, 0}] = ModuleElement::generator(0, p * (kD + delta * kX + Poly(alpha)));
    return ConformalModule("M(" + param_name(delta) + "," + param_name(alpha) + ")", ModuleKind::Free, 1,
                           std::move(table), Rat(0), ModuleFamilyTag{ModuleFamily::MDeltaAlpha, delta, alpha, Rat(0)});
}

ConformalModule make_M_beta_unchecked(const ConformalAlgebra& alg, const Rat& delta, const Rat& alpha,
                                      const Rat& beta) {
    const Rat p = require_block(alg);
    if (alg.size() < 2) throw UnsupportedAlgebra(alg.name() + " has no generator L_1");
    ConformalModule::ActionTable table;
    table[{0, 0}] = ModuleElement::generator(0, p * (kD + delta * kX + Poly(alpha)));
    table[{1, 0}] = ModuleElement::generator(0, Poly(beta));
    std::optional<ModuleFamilyTag> tag;
    if (p == Rat(-1)) tag = ModuleFamilyTag{ModuleFamily::MDeltaAlphaBeta, delta, alpha, beta};
    return ConformalModule("M(" + param_name(delta) + "," + param_name(alpha) + "," + param_name(beta) + ")",
                           ModuleKind::Free, 1, std::move(table), Rat(0), tag);
}

ConformalModule make_M_beta(const ConformalAlgebra& alg, const Rat& delta, const Rat& alpha, const Rat& beta) {
    if (require_block(alg) != Rat(-1))
        throw UnsupportedAlgebra("the beta extension exists only for p = -1, not over " + alg.name());
    return make_M_beta_unchecked(alg, delta, alpha, beta);
}

ConformalModule make_trivial(const Rat& alpha) {
    return ConformalModule("C(" + param_name(alpha) + ")", ModuleKind::ScalarDel, 1, {}, alpha,
                           ModuleFamilyTag{ModuleFamily::TrivialCAlpha, Rat(0), alpha, Rat(0)});
}

ModuleElement act(const ConformalModule& mod, const ConformalAlgebra& alg, const ConfElement& x,
                  const ModuleElement& m, Var v) {
    const Poly var = Poly::variable(v);
    ModuleElement out;
    for (const auto& [g, a] : x.terms()) {
        if (g >= alg.size()) throw std::out_of_range("act: generator outside the algebra");
        const Poly left = substitute(a, Var::Partial, -var);
        for (const auto& [b, c] : m.terms()) {
            const Poly right = substitute(c, Var::Partial, kD + var);
            ModuleElement value = mod.action(g, b);
            if (v != Var::Lambda) value = value.substituted(Var::Lambda, var);
            out += (left * right) * value;
        }
    }
    if (mod.kind() == ModuleKind::ScalarDel) out = out.substituted(Var::Partial, Poly(mod.alpha()));
    return out;
}

ModuleElement module_pair_residual(const ConformalAlgebra& alg, const ConformalModule& mod, GenId a, GenId b,
                                   std::size_t c) {
    const ModuleElement vc = ModuleElement::generator(c);
    const ConfElement ea = ConfElement::generator(a);
    const ConfElement eb = ConfElement::generator(b);
    const Poly nu = Poly::variable(Var::Lambda) + Poly::variable(Var::Mu);
    const ModuleElement lhs = act(mod, alg, alg.structure(a, b), vc, Var::Aux1).substituted(Var::Aux1, nu);
    const ModuleElement first = act(mod, alg, ea, act(mod, alg, eb, vc, Var::Mu), Var::Lambda);
    const ModuleElement second = act(mod, alg, eb, act(mod, alg, ea, vc, Var::Lambda), Var::Mu);
    return lhs - first + second;
}

ModuleReport check_module(const ConformalAlgebra& alg, const ConformalModule& mod) {
    for (const auto& [key, value] : mod.action())
        if (key.first >= alg.size()) throw std::invalid_argument("module acts by a generator the algebra lacks");
    ModuleReport report;
    for (GenId a = 0; a < alg.size(); ++a)
        for (GenId b = 0; b < alg.size(); ++b) {
            if (!alg.defined(a, b)) {
                ++report.pairs_skipped;
                continue;
            }
            ++report.pairs_checked;
            for (std::size_t c = 0; c < mod.rank(); ++c) {
                ModuleElement r = module_pair_residual(alg, mod, a, b, c);
                if (!r.is_zero()) report.failures.push_back({a, b, c, std::move(r)});
            }
        }
    return report;
}

namespace {

void require_rank_one_free(const ConformalModule& mod) {
    if (mod.kind() != ModuleKind::Free || mod.rank() != 1)
        throw std::invalid_argument("expected a rank-one free module");
}

}  // namespace

SubmoduleResult submodule_action(const ConformalModule& mod, const Poly& g) {
    require_rank_one_free(mod);
    if (g.is_zero() || !only_vars(g, {Var::Partial})) throw std::invalid_argument("g must be a nonzero polynomial in D");
    const Poly shifted = substitute(g, Var::Partial, kD + kX);
    SubmoduleResult result;
    ConformalModule::ActionTable table;
    for (const auto& [key, value] : mod.action()) {
        const Poly image = shifted * value.at(0);
        const DivMod qr = divmod_in(image, g, Var::Partial);
        if (!qr.remainder.is_zero()) {
            result.offending = key.first;
            result.offending_value = ModuleElement::generator(0, image);
            return result;
        }
        table[key] = ModuleElement::generator(0, qr.quotient);
    }
    result.invariant = true;
    result.module = ConformalModule("(" + g.str() + ")" + mod.name(), ModuleKind::Free, 1, std::move(table));
    return result;
}

bool is_isomorphic_rank_one(const ConformalModule& a, const ConformalModule& b) {
    if (a.rank() != 1 || b.rank() != 1) throw std::invalid_argument("expected rank-one modules");
    if (a.kind() != b.kind()) return false;
    if (a.kind() == ModuleKind::ScalarDel && a.alpha() != b.alpha()) return false;
    return a.action() == b.action();
}

std::optional<ModuleFamilyTag> recognize_family(const ConformalAlgebra& alg, const ConformalModule& mod) {
    if (!alg.block_p() || mod.kind() != ModuleKind::Free || mod.rank() != 1) return std::nullopt;
    const Rat& p = *alg.block_p();
    Rat beta(0);
    for (const auto& [key, value] : mod.action()) {
        if (key.first == 0) continue;
        if (key.first != 1 || value.max_generator() != 0) return std::nullopt;
        const Poly c = value.at(0);
        if (!c.is_constant()) return std::nullopt;
        beta = c.constant_term();
    }
    const ModuleElement l0 = mod.action(0, 0);
    if (l0.is_zero() || l0.max_generator() != 0) return std::nullopt;
    const Poly q = l0.at(0) * (Rat(1) / p);
    if (q.total_degree() != 1 || coefficient(q, Var::Partial, 1) != Poly(1)) return std::nullopt;
    const Poly delta = coefficient(q, Var::Lambda, 1);
    if (!delta.is_constant()) return std::nullopt;
    const Poly rest = q - kD - delta * kX;
    if (!rest.is_constant()) return std::nullopt;
    if (beta.is_zero()) return ModuleFamilyTag{ModuleFamily::MDeltaAlpha, delta.constant_term(), rest.constant_term(), Rat(0)};
    if (p != Rat(-1)) return std::nullopt;
    return ModuleFamilyTag{ModuleFamily::MDeltaAlphaBeta, delta.constant_term(), rest.constant_term(), beta};
}

IrreducibilityReport is_irreducible_rank_one(const ConformalAlgebra& alg, const ConformalModule& mod,
                                             unsigned degree_bound) {
    require_rank_one_free(mod);
    const auto family = recognize_family(alg, mod);
    if (!family) throw std::invalid_argument("module is not a recognized rank-one family over " + alg.name());

    IrreducibilityReport report;
    report.family = *family;
    report.criterion = (!family->delta.is_zero() || !family->beta.is_zero()) ? Irreducibility::Irreducible
                                                                             : Irreducibility::Reducible;

    Poly content;
    for (const auto& [key, value] : mod.action()) {
        const Poly a = value.at(0);
        for (unsigned k = 0; k <= a.degree(Var::Lambda); ++k) content = gcd_in(content, coefficient(a, Var::Lambda, k), Var::Partial);
    }
    report.content = content;

    std::vector<Poly> found;
    if (content.is_zero()) {
        found.push_back(kD);
    } else if (!content.is_constant()) {
        std::vector<std::pair<Poly, unsigned>> factors;
        Poly rest = content;
        for (const Rat& r : rational_roots(content, Var::Partial)) {
            const Poly lin = kD - Poly(r);
            unsigned mult = 0;
            for (;;) {
                const DivMod qr = divmod_in(rest, lin, Var::Partial);
                if (!qr.remainder.is_zero()) break;
                rest = qr.quotient;
                ++mult;
            }
            factors.emplace_back(lin, mult);
        }
        report.search_complete = rest.is_constant();
        std::set<std::string> seen;
        std::function<void(std::size_t, const Poly&, unsigned)> extend = [&](std::size_t i, const Poly& acc, unsigned deg) {
            if (i == factors.size()) {
                if (deg > 0 && seen.insert(acc.str()).second) found.push_back(acc);
                return;
            }
            Poly cur = acc;
            for (unsigned e = 0; e <= factors[i].second && deg + e <= degree_bound; ++e) {
                extend(i + 1, cur, deg + e);
                cur = cur * factors[i].first;
            }
        };
        extend(0, Poly(1), 0);
        if (content.degree(Var::Partial) <= degree_bound && seen.insert(content.str()).second) found.push_back(content);
        std::stable_sort(found.begin(), found.end(), [](const Poly& a, const Poly& b) {
            return a.degree(Var::Partial) < b.degree(Var::Partial);
        });
    } else {
        report.search_complete = true;
    }

    for (const Poly& g : found)
        if (!submodule_action(mod, g).invariant)
            throw std::logic_error("divisor " + g.str() + " of the action content is not invariant");
    report.invariant_generators = found;
    if (!found.empty()) {
        report.search = Irreducibility::Reducible;
        report.witness = found.front();
    } else if (report.search_complete) {
        report.search = Irreducibility::Irreducible;
    }

    if (report.search != Irreducibility::Undecided && report.search != report.criterion)
        throw std::logic_error("irreducibility criterion and submodule search disagree for " + mod.name());
    report.verdict = report.criterion;
    return report;
}

}  // namespace confal
