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

#include "confal/classifier.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "confal/finite_lie.hpp"

namespace confal {

const char* to_string(StepRule rule) {
    switch (rule) {
        case StepRule::TopIndexAssumed: return "TOP_INDEX_ASSUMED";
        case StepRule::DelIndependence: return "DEL_INDEPENDENCE";
        case StepRule::MuZeroKill: return "MU_ZERO_KILL";
        case StepRule::ShiftInvarianceConst: return "SHIFT_INVARIANCE_CONST";
        case StepRule::CrossRelationKill: return "CROSS_RELATION_KILL";
    }
    return "?";
}

const char* to_string(IndexOutcome outcome) {
    switch (outcome) {
        case IndexOutcome::ActsByZero: return "ACTS_BY_ZERO";
        case IndexOutcome::Constant: return "CONSTANT";
        case IndexOutcome::Undecided: return "UNDECIDED";
    }
    return "?";
}

namespace {

const Poly kD = Poly::variable(Var::Partial);
const Poly kX = Poly::variable(Var::Lambda);
const Poly kY = Poly::variable(Var::Mu);

// L_0 -> p D (Delta and alpha drop out of every identity used below), L_k -> f.
ConformalModule probe(const ConformalAlgebra& alg, long k, const Poly& f) {
    ConformalModule::ActionTable table;
    table[{0, 0}] = ModuleElement::generator(0, *alg.block_p() * kD);
    if (!f.is_zero()) table[{static_cast<GenId>(k), 0}] = ModuleElement::generator(0, f);
    return ConformalModule("probe", ModuleKind::Free, 1, std::move(table));
}

Poly random_del_dependent(std::mt19937_64& rng, unsigned degree) {
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<long> den(1, 3);
    std::uniform_int_distribution<unsigned> exp(0, degree);
    std::bernoulli_distribution keep(0.5);
    Poly f;
    for (unsigned a = 0; a <= degree; ++a)
        for (unsigned b = 0; b <= degree; ++b)
            if (keep(rng)) f += Poly::monomial({static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b), 0, 0, 0},
                                               Rat(num(rng), den(rng)));
    while (!f.contains(Var::Partial)) {
        const long n = num(rng);
        if (n == 0) continue;
        const auto a = static_cast<std::uint16_t>(1 + exp(rng) % degree);
        f += Poly::monomial({a, static_cast<std::uint16_t>(exp(rng)), 0, 0, 0}, Rat(n, den(rng)));
    }
    return f;
}

struct Reduction {
    IndexOutcome outcome;
    DerivationStep step;
};

// Solves the (0,k) identity for f = sum_t c_t x^t, t <= D.
Reduction reduce_index(const ConformalAlgebra& alg, long k, unsigned D) {
    std::vector<Poly> residuals;
    std::map<std::string, std::size_t> rows;
    std::vector<Poly> monomials;
    for (unsigned t = 0; t <= D; ++t) {
        residuals.push_back(top_index_residual(alg, k, t));
        for (const auto& [e, c] : residuals.back().terms()) {
            const Poly m = Poly::monomial(e, Rat(1));
            if (rows.emplace(m.str(), rows.size()).second) monomials.push_back(m);
        }
    }
    RatMatrix system(std::max<std::size_t>(rows.size(), 1), D + 1);
    for (unsigned t = 0; t <= D; ++t)
        for (const auto& [e, c] : residuals[t].terms()) system(rows.at(Poly::monomial(e, Rat(1)).str()), t) = c;
    const auto kernel = system.nullspace();

    Reduction r{IndexOutcome::Undecided, {StepRule::MuZeroKill, k, residuals, Poly(), ""}};
    if (kernel.empty()) {
        r.outcome = IndexOutcome::ActsByZero;
        r.step.residual = substitute(residuals[0], Var::Mu, Poly(0));
        r.step.output = "f = 0";
        return r;
    }
    bool constants_only = kernel.size() == 1;
    for (unsigned t = 1; constants_only && t <= D; ++t) constants_only = kernel[0][t].is_zero();
    if (constants_only) {
        r.outcome = IndexOutcome::Constant;
        r.step.rule = StepRule::ShiftInvarianceConst;
        r.step.residual = residuals[0];
        r.step.output = "f = beta (constant); kernel of the shift map is the constants up to degree " + std::to_string(D);
        return r;
    }
    r.step.output = "kernel of dimension " + std::to_string(kernel.size()) + " not settled within degree " + std::to_string(D);
    return r;
}

ClassificationReport run_pipeline(const ConformalAlgebra& alg, long K, unsigned D, const ClassifierOptions& options,
                                  std::optional<unsigned> bn) {
    const Rat p = *alg.block_p();
    ClassificationReport report;
    report.p = p;
    report.top_index_range = K;
    report.degree_bound = D;
    report.bn = bn;
    report.caveats = {
        "DEL_INDEPENDENCE is imported: the reduction of the top action to a polynomial in x alone is not derived here; "
        "it is backed only by a falsification battery over random D-dependent candidates.",
        "Freeness of rank one is imported: the pipeline classifies rank-one free modules.",
        "The L_0 action p(D + Delta x + alpha) is imported from the rank-one classification over the Virasoro conformal algebra.",
    };
    if (!bn) report.caveats.push_back("Top indices above K = " + std::to_string(K) + " are not examined.");

    std::mt19937_64 rng(options.seed);
    bool beta_family = false;
    const unsigned sample_degree = std::min(D, 3u);

    for (long k = K; k >= 1; --k) {
        report.steps.push_back({StepRule::TopIndexAssumed, k, {}, Poly(),
                                "L_" + std::to_string(k) + " acts by f(D,x) != 0 and every L_j with j > k acts by 0"});

        DerivationStep del{StepRule::DelIndependence, k, {}, Poly(), ""};
        std::size_t violations = 0;
        for (std::size_t s = 0; s < options.samples_per_index; ++s) {
            const Poly f = random_del_dependent(rng, sample_degree);
            const Poly r = symmetry_residual(alg, k, f);
            if (!r.is_zero()) ++violations;
            if (s == 0) {
                del.inputs.push_back(f);
                del.residual = r;
            }
        }
        report.falsification_samples += options.samples_per_index;
        report.falsification_violations += violations;
        del.output = "f = f(x) (imported; " + std::to_string(violations) + "/" +
                     std::to_string(options.samples_per_index) + " D-dependent samples violate the symmetry identity)";
        report.steps.push_back(del);

        Reduction top = reduce_index(alg, k, D);
        report.steps.push_back(top.step);
        if (top.outcome == IndexOutcome::Undecided) {
            report.undecided.push_back(k);
            continue;
        }
        if (top.outcome == IndexOutcome::ActsByZero) continue;
        if (k == 1) {
            beta_family = true;
            continue;
        }

        bool intermediates_zero = true;
        for (long j = 1; j < k; ++j) {
            Reduction mid = reduce_index(alg, j, D);
            mid.step.output += " (intermediate index below top " + std::to_string(k) + ")";
            report.steps.push_back(mid.step);
            intermediates_zero = intermediates_zero && mid.outcome == IndexOutcome::ActsByZero;
        }
        const ConformalModule m = probe(alg, k, Poly(1));
        const Poly cross = module_pair_residual(alg, m, 1, static_cast<GenId>(k - 1), 0).at(0);
        DerivationStep kill{StepRule::CrossRelationKill, k, {Poly(1)}, cross, ""};
        if (intermediates_zero && !cross.is_zero() && !cross.contains(Var::Partial)) {
            kill.output = "(" + cross.str() + ")*beta = 0, hence beta = 0";
        } else {
            kill.output = "cross relation does not force beta = 0";
            report.undecided.push_back(k);
        }
        report.steps.push_back(kill);
    }

    if (!bn && p.is_integer() && p.sign() < 0 && -p.to_long() > K) {
        report.undecided.push_back(-p.to_long());
        report.caveats.push_back("Index " + std::to_string(-p.to_long()) +
                                 " = -p lies above K and is the one index where the shift case can occur.");
    }

    if (beta_family)
        report.families.push_back({ModuleFamily::MDeltaAlphaBeta, "Delta != 0 or beta != 0"});
    else
        report.families.push_back({ModuleFamily::MDeltaAlpha, "Delta != 0"});
    return report;
}

}  // namespace

Poly top_index_residual(const ConformalAlgebra& alg, long k, unsigned t) {
    const ConformalModule m = probe(alg, k, pow(kX, t));
    return module_pair_residual(alg, m, 0, static_cast<GenId>(k), 0).at(0);
}

Poly symmetry_residual(const ConformalAlgebra& alg, long k, const Poly& f) {
    const ConformalModule m = probe(alg, k, f);
    const auto g = static_cast<GenId>(k);
    const ModuleElement v = ModuleElement::generator(0);
    const ConfElement lk = ConfElement::generator(g);
    // L_k x (L_k y v) - L_k y (L_k x v); the bracket side vanishes because L_{2k} acts by 0.
    const ModuleElement r = act(m, alg, lk, act(m, alg, lk, v, Var::Mu), Var::Lambda) -
                            act(m, alg, lk, act(m, alg, lk, v, Var::Lambda), Var::Mu);
    return r.at(0);
}

std::vector<std::vector<Rat>> shift_kernel(unsigned degree) {
    std::map<std::string, std::size_t> rows;
    std::vector<Poly> columns;
    for (unsigned t = 0; t <= degree; ++t) {
        columns.push_back(pow(kX + kY, t) - pow(kY, t));
        for (const auto& [e, c] : columns.back().terms()) rows.emplace(Poly::monomial(e, Rat(1)).str(), rows.size());
    }
    RatMatrix m(std::max<std::size_t>(rows.size(), 1), degree + 1);
    for (unsigned t = 0; t <= degree; ++t)
        for (const auto& [e, c] : columns[t].terms()) m(rows.at(Poly::monomial(e, Rat(1)).str()), t) = c;
    return m.nullspace();
}

ClassificationReport classify_rank_one(const Rat& p, long K, unsigned D, const ClassifierOptions& options) {
    if (p.is_zero()) throw std::invalid_argument("classify_rank_one: p must be nonzero");
    if (K < 1) throw std::invalid_argument("classify_rank_one: K must be at least 1");
    if (D < 1) throw std::invalid_argument("classify_rank_one: D must be at least 1");
    const auto alg = make_block(p, static_cast<std::size_t>(2 * K), TruncationPolicy::ErrorOnOverflow);
    return run_pipeline(alg, K, D, options, std::nullopt);
}

ClassificationReport classify_bn(unsigned n, unsigned D, const ClassifierOptions& options) {
    if (n < 1) throw std::invalid_argument("classify_bn: n must be at least 1");
    if (D < 1) throw std::invalid_argument("classify_bn: D must be at least 1");
    return run_pipeline(make_bn(n), static_cast<long>(n), D, options, n);
}

VerifyOutcome verify_report(const ClassificationReport& report) {
    VerifyOutcome out;
    auto fail = [&](std::string why) {
        out.ok = false;
        out.problems.push_back(std::move(why));
    };
    const Rat& p = report.p;
    const ConformalAlgebra alg = report.bn ? make_bn(*report.bn) : make_block(p, 3, TruncationPolicy::ErrorOnOverflow);
    const std::vector<Rat> grid = {Rat(-2), Rat(-1), Rat(0), Rat(1, 2), Rat(1), Rat(2)};

    const bool expect_beta = p == Rat(-1);
    const FamilyPattern expected = expect_beta ? FamilyPattern{ModuleFamily::MDeltaAlphaBeta, "Delta != 0 or beta != 0"}
                                               : FamilyPattern{ModuleFamily::MDeltaAlpha, "Delta != 0"};
    if (report.families.size() != 1 || report.families.front() != expected)
        fail("family list differs from the expected single pattern " + std::string(to_string(expected.family)));
    if (!report.undecided.empty()) fail("report has undecided indices");

    for (const auto& family : report.families) {
        if (family.family == ModuleFamily::TrivialCAlpha) continue;
        const bool with_beta = family.family == ModuleFamily::MDeltaAlphaBeta;
        const std::vector<Rat> betas = with_beta ? std::vector<Rat>{Rat(0), Rat(1), Rat(-2)} : std::vector<Rat>{Rat(0)};
        for (const Rat& delta : grid)
            for (const Rat& alpha : grid)
                for (const Rat& beta : betas) {
                    const ConformalModule mod = with_beta ? make_M_beta_unchecked(alg, delta, alpha, beta)
                                                          : make_M(alg, delta, alpha);
                    const std::string id = std::string(to_string(family.family)) + "(" + delta.str() + "," +
                                           alpha.str() + (with_beta ? "," + beta.str() : "") + ")";
                    if (!check_module(alg, mod).passed()) {
                        fail(id + " fails the module identity");
                        continue;
                    }
                    try {
                        const auto irr = is_irreducible_rank_one(alg, mod);
                        const bool expect_irr = !delta.is_zero() || !beta.is_zero();
                        if ((irr.verdict == Irreducibility::Irreducible) != expect_irr)
                            fail(id + " irreducibility differs from the stated condition");
                    } catch (const std::exception& e) {
                        fail(id + ": " + e.what());
                    }
                }
    }

    if (!expect_beta && check_module(alg, make_M_beta_unchecked(alg, Rat(1), Rat(0), Rat(1))).passed())
        fail("beta extension unexpectedly passes at p = " + p.str());
    const auto b2 = make_block(Rat(2), 3, TruncationPolicy::ErrorOnOverflow);
    if (check_module(b2, make_M_beta_unchecked(b2, Rat(1), Rat(0), Rat(1))).passed())
        fail("beta extension at p = 2 unexpectedly passes");
    return out;
}

}  // namespace confal
