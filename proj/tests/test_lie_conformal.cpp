#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "confal/lie_conformal.hpp"
#include "test_support.hpp"

using namespace confal;
using confal::testing::P;

namespace {

// Scalar oracle for B(p): coefficient of L_{i+j} in [L_i x L_j] at D=d, x=l.
// Evaluated directly from the defining formula, independent of Poly.
Rat block_coeff(const Rat& p, long i, long j, const Rat& d, const Rat& l) {
    return (Rat(i) + p) * d + (Rat(i + j) + Rat(2) * p) * l;
}

using CoeffFn = std::function<Rat(long, long, const Rat&, const Rat&)>;

// Jacobi residual of (i,j,k) at numeric (d, l, m) for a one-term-per-pair table.
Rat jacobi_oracle(const CoeffFn& s, long i, long j, long k, const Rat& d, const Rat& l, const Rat& m) {
    const Rat nu = l + m;
    const Rat left = s(j, k, d + l, m) * s(i, j + k, d, l);
    const Rat middle = s(i, j, -nu, l) * s(i + j, k, d, nu);
    const Rat right = s(i, k, d + m, l) * s(j, i + k, d, m);
    return left - middle - right;
}

Assignment point(const Rat& d, const Rat& l, const Rat& m) {
    return {{Var::Partial, d}, {Var::Lambda, l}, {Var::Mu, m}};
}

ConformalAlgebra hv_with(const LambdaValue& lm, const LambdaValue& ml) {
    auto alg = make_heisenberg_virasoro();
    auto table = alg.table();
    table[0][1] = lm;
    table[1][0] = ml;
    return ConformalAlgebra("HV-variant", alg.generator_names(), alg.policy(), table);
}

}  // namespace

TEST_CASE("make_block structure") {
    const auto b1 = make_block(Rat(1), 3, TruncationPolicy::ErrorOnOverflow);
    CHECK(b1.structure(0, 0) == LambdaValue::generator(0, P("D + 2*x")));
    const auto bm1 = make_block(Rat(-1), 3, TruncationPolicy::ErrorOnOverflow);
    CHECK(bm1.structure(1, 0) == LambdaValue::generator(1, P("-x")));
    const auto b2 = make_block(Rat(2), 5, TruncationPolicy::TruncateToZero);
    CHECK(b2.structure(3, 4).is_zero());
    CHECK_THROWS_AS((void)b1.structure(2, 2), WindowOverflow);
    CHECK_THROWS_AS(make_block(Rat(0), 3, TruncationPolicy::ErrorOnOverflow), std::invalid_argument);
}

TEST_CASE("virasoro, b(n), HV and SV tables") {
    const auto vir = make_virasoro();
    CHECK(vir.structure(0, 0) == LambdaValue::generator(0, P("D + 2*x")));
    CHECK(check_skew(vir).passed());
    CHECK(check_jacobi(vir).passed());

    CHECK(make_bn(1).structure(0, 1) == LambdaValue::generator(1, P("-D - x")));
    CHECK(make_bn(2).structure(1, 1) == LambdaValue::generator(2, P("-D - 2*x")));
    CHECK(make_bn(1).structure(1, 1).is_zero());

    const auto hv = make_heisenberg_virasoro();
    CHECK(hv.structure(1, 1).is_zero());
    const auto sv = make_schrodinger_virasoro();
    CHECK(sv.structure(1, 1) == LambdaValue::generator(2, P("D + 2*x")));
    CHECK(sv.structure(0, 1) == LambdaValue::generator(1, P("D + 3/2*x")));
}

TEST_CASE("bracket sesquilinearity examples") {
    const auto b1 = make_block(Rat(1), 2, TruncationPolicy::ErrorOnOverflow);
    const auto L0 = ConfElement::generator(0);
    const auto dL0 = ConfElement::generator(0, P("D"));
    CHECK(bracket(b1, dL0, L0) == LambdaValue::generator(0, P("-x*(D + 2*x)")));
    CHECK(bracket(b1, L0, dL0) == LambdaValue::generator(0, P("(D + x)*(D + 2*x)")));

    const auto b2 = make_block(Rat(2), 2, TruncationPolicy::ErrorOnOverflow);
    const auto L = ConfElement::generator(0, Poly(Rat(1, 2)));
    CHECK(bracket(b2, L, L) == P("D + 2*x") * L);
    CHECK_THROWS_AS(bracket(b1, ConfElement::generator(0, P("x")), L0), std::invalid_argument);
}

TEST_CASE("bracket is bilinear and sesquilinear (property)") {
    std::mt19937_64 rng(21);
    const auto alg = make_block(Rat(3, 2), 4, TruncationPolicy::TruncateToZero);
    for (int t = 0; t < 25; ++t) {
        ConfElement x, y, z;
        for (GenId g = 0; g < 3; ++g) {
            x.add(g, confal::testing::random_poly(rng, {Var::Partial}, 3));
            y.add(g, confal::testing::random_poly(rng, {Var::Partial}, 3));
            z.add(g, confal::testing::random_poly(rng, {Var::Partial}, 3));
        }
        const Rat c = confal::testing::random_rat(rng);
        CHECK(bracket(alg, x + Poly(c) * z, y) == bracket(alg, x, y) + Poly(c) * bracket(alg, z, y));
        CHECK(bracket(alg, x, y + Poly(c) * z) == bracket(alg, x, y) + Poly(c) * bracket(alg, x, z));
        CHECK(bracket(alg, P("D") * x, y) == P("-x") * bracket(alg, x, y));
        CHECK(bracket(alg, x, P("D") * y) == P("D + x") * bracket(alg, x, y));
    }
}

TEST_CASE("skew residuals agree with the scalar oracle") {
    std::mt19937_64 rng(22);
    const Rat p(5, 3);
    const auto alg = make_block(p, 4, TruncationPolicy::ErrorOnOverflow);
    for (long a = 0; a <= 2; ++a) {
        for (long b = 0; b <= 2; ++b) {
            const LambdaValue r = skew_residual(alg, static_cast<GenId>(a), static_cast<GenId>(b));
            for (int s = 0; s < 3; ++s) {
                const Rat d = confal::testing::random_rat(rng);
                const Rat l = confal::testing::random_rat(rng);
                const Rat expect = block_coeff(p, a, b, d, l) + block_coeff(p, b, a, d, -l - d);
                CHECK(eval(r.at(static_cast<GenId>(a + b)), point(d, l, Rat(0))) == expect);
            }
        }
    }
}

TEST_CASE("check_skew") {
    CHECK(check_skew(make_block(Rat(1), 4, TruncationPolicy::ErrorOnOverflow)).passed());
    CHECK(check_skew(make_bn(2)).passed());
    CHECK(check_skew(make_heisenberg_virasoro()).passed());
    CHECK(check_skew(make_schrodinger_virasoro()).passed());

    SUBCASE("single corrupted entry [M x L] = xL fails on exactly one pair") {
        const auto bad = hv_with(LambdaValue::generator(1, P("D + x")), LambdaValue::generator(0, P("x")));
        const SkewReport rep = check_skew(bad);
        REQUIRE(rep.failures.size() == 1);
        CHECK(rep.failures[0].a == 1);
        CHECK(rep.failures[0].b == 0);
        LambdaValue expect = LambdaValue::generator(0, P("x"));
        expect.add(1, P("-x"));
        CHECK(rep.failures[0].residual == expect);
    }
    SUBCASE("table exactly as printed passes skew but fails Jacobi") {
        const auto printed = hv_with(LambdaValue::generator(0, P("D + x")), LambdaValue::generator(0, P("x")));
        CHECK(check_skew(printed).passed());
        const JacobiReport jr = check_jacobi(printed);
        CHECK_FALSE(jr.passed());
        CHECK(jacobi_residual(printed, 0, 0, 1) == LambdaValue::generator(0, P("(D + x + y)*(x - y)")));
    }
}

TEST_CASE("check_jacobi on B(p) across the pit schedule") {
    for (std::size_t w : {2u, 4u}) {
        const bool ok = pit_verify_pred(
            [&](const Rat& p) {
                const auto alg = make_block(p, w, TruncationPolicy::ErrorOnOverflow);
                return check_jacobi(alg).passed() && check_skew(alg).passed();
            },
            3);
        CHECK(ok);
    }
    const auto rep = check_jacobi(make_block(Rat(1), 4, TruncationPolicy::ErrorOnOverflow));
    CHECK(rep.triples_checked > 0);
    CHECK(rep.triples_skipped > 0);
}

TEST_CASE("jacobi residuals agree with the scalar oracle") {
    std::mt19937_64 rng(23);
    const Rat p(-2, 3);
    const auto alg = make_block(p, 6, TruncationPolicy::ErrorOnOverflow);
    const CoeffFn s = [&](long i, long j, const Rat& d, const Rat& l) { return block_coeff(p, i, j, d, l); };
    for (long i = 0; i <= 2; ++i)
        for (long j = 0; j <= 2; ++j)
            for (long k = 0; k <= 2; ++k) {
                const LambdaValue r = jacobi_residual(alg, i, j, k);
                const Rat d = confal::testing::random_rat(rng), l = confal::testing::random_rat(rng),
                          m = confal::testing::random_rat(rng);
                CHECK(eval(r.at(static_cast<GenId>(i + j + k)), point(d, l, m)) == jacobi_oracle(s, i, j, k, d, l, m));
            }
}

TEST_CASE("perturbed B(1): structure(1,1) doubled") {
    const Rat p(1);
    const auto base = make_block(p, 4, TruncationPolicy::ErrorOnOverflow);
    auto table = base.table();
    table[1][1] = Poly(2) * *table[1][1];
    const ConformalAlgebra bad("B(1)-perturbed", base.generator_names(), base.policy(), table, p);

    const CoeffFn s = [&](long i, long j, const Rat& d, const Rat& l) {
        const Rat scale = (i == 1 && j == 1) ? Rat(2) : Rat(1);
        return scale * block_coeff(p, i, j, d, l);
    };
    std::mt19937_64 rng(24);
    for (auto [i, j, k] : {std::tuple{0L, 1L, 1L}, std::tuple{2L, 1L, 1L}, std::tuple{1L, 1L, 2L}}) {
        const LambdaValue r = jacobi_residual(bad, i, j, k);
        const Rat d = confal::testing::random_rat(rng), l = confal::testing::random_rat(rng),
                  m = confal::testing::random_rat(rng);
        CHECK(eval(r.at(static_cast<GenId>(i + j + k)), point(d, l, m)) == jacobi_oracle(s, i, j, k, d, l, m));
    }
    // doubling s(1,1) is a rescaling of L_2 as far as triples of total index <= 3 can see
    CHECK(jacobi_residual(bad, 0, 1, 1).is_zero());
    CHECK_FALSE(jacobi_residual(bad, 2, 1, 1).is_zero());
    CHECK_FALSE(check_jacobi(bad).passed());
    CHECK(check_skew(bad).passed());
}

TEST_CASE("finite algebras satisfy both axioms") {
    for (unsigned n : {1u, 2u, 3u, 4u}) {
        CHECK(check_skew(make_bn(n)).passed());
        CHECK(check_jacobi(make_bn(n)).passed());
    }
    CHECK(check_jacobi(make_heisenberg_virasoro()).passed());
    CHECK(check_jacobi(make_schrodinger_virasoro()).passed());
    CHECK(check_jacobi(make_block(Rat(-3, 2), 6, TruncationPolicy::TruncateToZero)).passed());
}

TEST_CASE("morphisms") {
    SUBCASE("embedding B(1) -> B(2)") {
        const auto phi = block_embedding(Rat(1), 2, 3, 12);
        const auto rep = check_morphism(phi);
        CHECK(rep.passed());
        CHECK(rep.pairs_checked == 10);
    }
    SUBCASE("HV -> b(1), L -> -L_0, M -> L_1") {
        ConfMorphism phi{make_heisenberg_virasoro(), make_bn(1),
                         {ConfElement::generator(0, Poly(-1)), ConfElement::generator(1)}, std::nullopt};
        CHECK(check_morphism(phi).passed());
    }
    SUBCASE("SV -> b(2), L -> -1/2 L_0, Y -> L_1, M -> -L_2") {
        ConfMorphism phi{make_schrodinger_virasoro(), make_bn(2),
                         {ConfElement::generator(0, Poly(Rat(-1, 2))), ConfElement::generator(1),
                          ConfElement::generator(2, Poly(-1))},
                         std::nullopt};
        const auto rep = check_morphism(phi);
        CHECK(rep.passed());
        CHECK(rep.pairs_checked == 9);
    }
    SUBCASE("identity on B(1)") {
        const auto b = make_block(Rat(1), 4, TruncationPolicy::ErrorOnOverflow);
        ConfMorphism id{b, b, {}, 1};
        for (GenId i = 0; i < b.size(); ++i) id.images.push_back(ConfElement::generator(i));
        CHECK(check_morphism(id).passed());
    }
    SUBCASE("wrong scale is rejected") {
        auto phi = block_embedding(Rat(1), 2, 2, 8);
        phi.images[1] = ConfElement::generator(2);
        CHECK_FALSE(check_morphism(phi).passed());
    }
    SUBCASE("non-injective images are flagged") {
        auto phi = block_embedding(Rat(1), 2, 2, 8);
        phi.images[2] = phi.images[1];
        CHECK_FALSE(check_morphism(phi).injective_on_generators);
    }
}

TEST_CASE("embedding is functorial") {
    for (long n : {2L, 3L}) {
        for (long m : {2L, 3L}) {
            const Rat p(3, 4);
            const auto first = block_embedding(p, n, 2, 2 * n);
            const auto second = block_embedding(p * Rat(n), m, 2 * n, 2 * n * m);
            const auto direct = block_embedding(p, n * m, 2, 2 * n * m);
            const auto comp = compose(first, second);
            CHECK(comp.images == direct.images);
            CHECK(comp.index_scale == direct.index_scale);
            CHECK(check_morphism(comp).passed());
        }
    }
}

TEST_CASE("quotient_by_tail") {
    CHECK(same_structure(quotient_by_tail(make_block(Rat(-1), 3, TruncationPolicy::ErrorOnOverflow), 1), make_bn(1)));
    for (unsigned n = 1; n <= 4; ++n) {
        for (std::size_t w : {2 * n, 2 * n + 1}) {
            for (auto pol : {TruncationPolicy::ErrorOnOverflow, TruncationPolicy::TruncateToZero}) {
                const auto q = quotient_by_tail(make_block(Rat(-static_cast<long>(n)), w, pol), n);
                CHECK(same_structure(q, make_bn(n)));
            }
        }
    }
    const Rat p(2);
    const auto b0 = quotient_by_tail(make_block(p, 3, TruncationPolicy::ErrorOnOverflow), 0);
    CHECK(b0.structure(0, 0) == LambdaValue::generator(0, P("2*D + 4*x")));
    ConfMorphism vir{make_virasoro(), b0, {ConfElement::generator(0, Poly(Rat(1, 2)))}, std::nullopt};
    CHECK(check_morphism(vir).passed());

    const auto b2 = quotient_by_tail(make_block(Rat(-2), 4, TruncationPolicy::ErrorOnOverflow), 2);
    ConfMorphism sv{make_schrodinger_virasoro(), b2,
                    {ConfElement::generator(0, Poly(Rat(-1, 2))), ConfElement::generator(1),
                     ConfElement::generator(2, Poly(-1))},
                    std::nullopt};
    CHECK(check_morphism(sv).passed());

    ConformalAlgebra::Table t(2, std::vector<std::optional<LambdaValue>>(2, LambdaValue{}));
    t[1][1] = LambdaValue::generator(0, P("D"));
    const ConformalAlgebra custom("custom", {"A", "B"}, TruncationPolicy::TruncateToZero, t);
    CHECK_THROWS_AS(quotient_by_tail(custom, 0), NotAnIdeal);
    CHECK_THROWS_AS(quotient_by_tail(custom, 2), std::invalid_argument);
}
