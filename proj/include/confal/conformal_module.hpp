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


#ifndef CONFAL_CONFORMAL_MODULE_HPP
#define CONFAL_CONFORMAL_MODULE_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confal/lie_conformal.hpp"

namespace confal {

/// Combination of module basis vectors with coefficients in C[D, x, ...].
using ModuleElement = GenCombination;

enum class ModuleKind { Free, ScalarDel };
const char* to_string(ModuleKind kind);

enum class ModuleFamily { MDeltaAlpha, MDeltaAlphaBeta, TrivialCAlpha };
const char* to_string(ModuleFamily family);

struct ModuleFamilyTag {
    ModuleFamily family;
    Rat delta;
    Rat alpha;
    Rat beta;
    friend bool operator==(const ModuleFamilyTag&, const ModuleFamilyTag&) = default;
};

/// Conformal module given by L_g x v_b for generators g and basis vectors b.
/// FREE: free C[D]-module of the given rank, actions in C[D, x].
/// SCALAR_DEL: one-dimensional, D acts as alpha, actions in C[x].
/// Absent entries act by zero.
class ConformalModule {
   public:
    using ActionTable = std::map<std::pair<GenId, std::size_t>, ModuleElement>;

    ConformalModule(std::string name, ModuleKind kind, std::size_t rank, ActionTable action, Rat alpha = Rat(0),
                    std::optional<ModuleFamilyTag> tag = std::nullopt);

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] ModuleKind kind() const { return kind_; }
    [[nodiscard]] std::size_t rank() const { return rank_; }
    [[nodiscard]] const Rat& alpha() const { return alpha_; }
    [[nodiscard]] const ActionTable& action() const { return action_; }
    [[nodiscard]] const std::optional<ModuleFamilyTag>& tag() const { return tag_; }
    /// L_g x v_b (zero when absent).
    [[nodiscard]] ModuleElement action(GenId g, std::size_t b) const;

   private:
    std::string name_;
    ModuleKind kind_;
    std::size_t rank_;
    ActionTable action_;
    Rat alpha_;
    std::optional<ModuleFamilyTag> tag_;
};

class UnsupportedAlgebra : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// L_0 x v = p(D + Delta x + alpha) v, higher generators act by zero.
ConformalModule make_M(const ConformalAlgebra& alg, const Rat& delta, const Rat& alpha);
/// The p = -1 extension: additionally L_1 x v = beta v.
ConformalModule make_M_beta(const ConformalAlgebra& alg, const Rat& delta, const Rat& alpha, const Rat& beta);
/// make_M with L_1 x v = beta v added for any p; only a module when p = -1 or beta = 0.
ConformalModule make_M_beta_unchecked(const ConformalAlgebra& alg, const Rat& delta, const Rat& alpha,
                                      const Rat& beta);
ConformalModule make_trivial(const Rat& alpha);

/// x_v m for x in the algebra and m in the module, extended by
///   (D a)_v m = -v a_v m   and   a_v (D m) = (D + v) a_v m.
ModuleElement act(const ConformalModule& mod, const ConformalAlgebra& alg, const ConfElement& x,
                  const ModuleElement& m, Var v = Var::Lambda);

/// [a x b]_{x+y} v_c - a_x (b_y v_c) + b_y (a_x v_c).
ModuleElement module_pair_residual(const ConformalAlgebra& alg, const ConformalModule& mod, GenId a, GenId b,
                                   std::size_t c);

struct ModuleFailure {
    GenId a;
    GenId b;
    std::size_t basis;
    ModuleElement residual;
};

struct ModuleReport {
    std::size_t pairs_checked = 0;
    std::size_t pairs_skipped = 0;
    std::vector<ModuleFailure> failures;
    [[nodiscard]] bool passed() const { return failures.empty(); }
};

ModuleReport check_module(const ConformalAlgebra& alg, const ConformalModule& mod);

struct SubmoduleResult {
    bool invariant = false;
    std::optional<ConformalModule> module;  // action on w = g(D) v when invariant
    std::optional<GenId> offending;          // first generator whose image leaves C[D] w
    ModuleElement offending_value;           // that image, written in v
};

/// Tests whether C[D] g(D) v is a submodule of a rank-one free module.
SubmoduleResult submodule_action(const ConformalModule& mod, const Poly& g);

/// Rank-one free modules are isomorphic iff their action tables agree after
/// rescaling the generator; a rescaling leaves a rank-one table unchanged.
bool is_isomorphic_rank_one(const ConformalModule& a, const ConformalModule& b);

/// Reads a rank-one free table over a block algebra as M_{Delta,alpha} or M_{Delta,alpha,beta}.
std::optional<ModuleFamilyTag> recognize_family(const ConformalAlgebra& alg, const ConformalModule& mod);

enum class Irreducibility { Irreducible, Reducible, Undecided };
const char* to_string(Irreducibility v);

struct IrreducibilityReport {
    Irreducibility verdict = Irreducibility::Undecided;
    Irreducibility criterion = Irreducibility::Undecided;
    Irreducibility search = Irreducibility::Undecided;
    ModuleFamilyTag family{};
    Poly content;                    // monic gcd in D of every x-coefficient of every action
    std::optional<Poly> witness;     // proper invariant generator g(D)
    std::vector<Poly> invariant_generators;  // all monic proper invariant g found within the bound
    bool search_complete = false;
};

/// Monic g(D) of degree <= degree_bound generating a proper submodule, found by
/// divisibility of the action content, cross-checked against the family criterion.
/// Disagreement throws std::logic_error.
IrreducibilityReport is_irreducible_rank_one(const ConformalAlgebra& alg, const ConformalModule& mod,
                                             unsigned degree_bound = 3);

}  // namespace confal

#endif  // CONFAL_CONFORMAL_MODULE_HPP
