#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "confal/classifier.hpp"
#include "test_support.hpp"

using namespace confal;
using confal::testing::P;

namespace {

const Poly X = Poly::variable(Var::Lambda);
const Poly Y = Poly::variable(Var::Mu);
const Poly DD = Poly::variable(Var::Partial);

Poly symmetry_oracle(const Poly& f) {
    auto at = [&](const Poly& d, const Poly& l) {
        // f(d, l) with simultaneous substitution through a spare variable
        const Poly tmp = substitute(f, Var::Lambda, Poly::variable(Var::Aux2));
        return substitute(substitute(tmp, Var::Partial, d), Var::Aux2, l);
    };
    return at(DD, X) * at(DD + X, Y) - at(DD, Y) * at(DD + Y, X);
}

Poly cross_oracle(const Rat& p) { return -(X + (Rat(1) + p) * Y); }

bool has_rule(const ClassificationReport& r, StepRule rule) {
    for (const auto& s : r.steps)
        if (s.rule == rule) return true;
    return false;
}

}  // namespace

TEST_CASE("residual builders match hand expansions") {
    for (const Rat& p : {Rat(2), Rat(-1), Rat(-3), Rat(1, 2)}) {
        const auto alg = make_block(p, 8, TruncationPolicy::ErrorOnOverflow);
        for (long k = 1; k <= 4; ++k)
            for (unsigned t = 0; t <= 4; ++t) {
                const Poly expected = ((Rat(k) + p) * X - p * Y) * pow(X + Y, t) + p * Y * pow(Y, t);
                CHECK(top_index_residual(alg, k, t) == expected);
            }
    }
    std::mt19937_64 rng(5);
    const auto alg = make_block(Rat(3, 2), 8, TruncationPolicy::ErrorOnOverflow);
    for (int trial = 0; trial < 50; ++trial) {
        Poly f = confal::testing::random_poly(rng, {Var::Partial, Var::Lambda}, 3, 5);
        if (!f.contains(Var::Partial)) f += P("D");
        const Poly r = symmetry_residual(alg, 2, f);
        CHECK(r == symmetry_oracle(f));
        CHECK(!r.is_zero());
    }
    for (const Poly& g : {P("1"), P("x"), P("x^3 - 2*x + 5")}) CHECK(symmetry_residual(alg, 1, g).is_zero());
}

TEST_CASE("shift kernel is the constants") {
    for (unsigned d = 0; d <= 8; ++d) {
        const auto kernel = shift_kernel(d);
        REQUIRE(kernel.size() == 1);
        std::vector<Rat> e0(d + 1);
        e0[0] = Rat(1);
        CHECK(kernel.front() == e0);
    }
}

TEST_CASE("classification examples") {
    const auto two = classify_rank_one(Rat(2), 4, 4);
    CHECK(two.families == std::vector<FamilyPattern>{{ModuleFamily::MDeltaAlpha, "Delta != 0"}});
    CHECK(two.undecided.empty());
    CHECK(!has_rule(two, StepRule::CrossRelationKill));

    const auto minus_one = classify_rank_one(Rat(-1), 4, 4);
    CHECK(minus_one.families == std::vector<FamilyPattern>{{ModuleFamily::MDeltaAlphaBeta, "Delta != 0 or beta != 0"}});
    CHECK(has_rule(minus_one, StepRule::ShiftInvarianceConst));

    for (const Rat& p : {Rat(-2), Rat(-3)}) {
        const auto r = classify_rank_one(p, 4, 4);
        CHECK(r.families == std::vector<FamilyPattern>{{ModuleFamily::MDeltaAlpha, "Delta != 0"}});
        CHECK(r.undecided.empty());
        int kills = 0;
        for (const auto& s : r.steps)
            if (s.rule == StepRule::CrossRelationKill) {
                ++kills;
                CHECK(s.index == -p.to_long());
                CHECK(s.residual == cross_oracle(p));
            }
        CHECK(kills == 1);
    }

    CHECK_THROWS_AS(classify_rank_one(Rat(0), 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(classify_rank_one(Rat(1), 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(classify_rank_one(Rat(1), 2, 0), std::invalid_argument);
}

TEST_CASE("every recorded residual re-expands") {
    for (const Rat& p : {Rat(1), Rat(-1), Rat(-2), Rat(-3), Rat(1, 2)}) {
        const auto r = classify_rank_one(p, 4, 3);
        for (const auto& s : r.steps) {
            const Rat k(s.index);
            switch (s.rule) {
                case StepRule::TopIndexAssumed: CHECK(s.residual.is_zero()); break;
                case StepRule::DelIndependence:
                    REQUIRE(s.inputs.size() == 1);
                    CHECK(s.residual == symmetry_oracle(s.inputs.front()));
                    CHECK(!s.residual.is_zero());
                    break;
                case StepRule::MuZeroKill: CHECK(s.residual == (k + p) * X); break;
                case StepRule::ShiftInvarianceConst:
                    CHECK(s.residual.is_zero());
                    CHECK(k == -p);
                    break;
                case StepRule::CrossRelationKill: CHECK(s.residual == cross_oracle(p)); break;
            }
        }
        CHECK(r.falsification_violations == r.falsification_samples);
    }
}

TEST_CASE("dichotomy across the schedule") {
    for (const Rat& p : pit_schedule()) {
        CAPTURE(p.str());
        // K must reach -p for negative integers, the only index where the shift case can occur
        const long K = p.is_integer() && p.sign() < 0 ? std::max(3L, -p.to_long()) : 3L;
        ClassifierOptions opts;
        opts.samples_per_index = 2;
        const auto r = classify_rank_one(p, K, 2, opts);
        REQUIRE(r.families.size() == 1);
        CHECK((r.families.front().family == ModuleFamily::MDeltaAlphaBeta) == (p == Rat(-1)));
        CHECK(r.undecided.empty());
    }
}

TEST_CASE("b(n) classification") {
    for (unsigned n = 1; n <= 4; ++n) {
        const auto bn = classify_bn(n, 4);
        const auto direct = classify_rank_one(Rat(-static_cast<long>(n)), n, 4);
        CHECK(bn.families == direct.families);
        CHECK(bn.undecided.empty());
        REQUIRE(bn.steps.size() == direct.steps.size());
        for (std::size_t i = 0; i < bn.steps.size(); ++i) {
            CHECK(bn.steps[i].rule == direct.steps[i].rule);
            CHECK(bn.steps[i].residual == direct.steps[i].residual);
        }
        CHECK(verify_report(bn).ok);
    }
    CHECK(classify_bn(1, 2).families.front().family == ModuleFamily::MDeltaAlphaBeta);
    CHECK(classify_bn(2, 2).families.front().irreducible_when == "Delta != 0");
    CHECK(classify_bn(3, 2).families.front().family == ModuleFamily::MDeltaAlpha);
}

TEST_CASE("undecided is reported, not assumed") {
    const auto r = classify_rank_one(Rat(-5), 3, 2);
    CHECK(r.undecided == std::vector<long>{5});
    CHECK(!verify_report(r).ok);
}

TEST_CASE("verify_report") {
    CHECK(verify_report(classify_rank_one(Rat(-1), 4, 4)).ok);
    CHECK(verify_report(classify_rank_one(Rat(2), 3, 3)).ok);

    auto tampered = classify_rank_one(Rat(2), 3, 3);
    tampered.families = {{ModuleFamily::MDeltaAlphaBeta, "Delta != 0 or beta != 0"}};
    const auto bad = verify_report(tampered);
    CHECK(!bad.ok);
    CHECK(!bad.problems.empty());

    auto empty = classify_rank_one(Rat(1), 3, 3);
    empty.families.clear();
    CHECK(!verify_report(empty).ok);
}

TEST_CASE("deterministic under a fixed seed") {
    ClassifierOptions opts;
    opts.seed = 99;
    const auto a = classify_rank_one(Rat(1, 2), 3, 3, opts);
    const auto b = classify_rank_one(Rat(1, 2), 3, 3, opts);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        CHECK(a.steps[i].inputs == b.steps[i].inputs);
        CHECK(a.steps[i].residual == b.steps[i].residual);
    }
}
