#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "confal/annihilation.hpp"
#include "confal/classifier.hpp"
#include "confal/cli.hpp"
#include "confal/serialize.hpp"

using namespace confal;

namespace {

int failures = 0;

void report(int n, const std::string& title, bool ok, const std::string& detail) {
    std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << "  " << title << "  [" << detail << "]\n";
    if (!ok) ++failures;
}

template <class F>
void criterion(int n, const std::string& title, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    detail << "; " << ms.count() << " ms";
    report(n, title, ok, detail.str());
}

const Poly X = Poly::variable(Var::Lambda);
const Poly Y = Poly::variable(Var::Mu);

bool axioms_hold(const ConformalAlgebra& alg) { return check_skew(alg).passed() && check_jacobi(alg).passed(); }

// [L_{i,m}, L_{j,n}] in the annihilation algebra of B(p)
Rat mode_coeff(const Rat& p, long i, long m, long j, long n) {
    return (Rat(j) + p) * Rat(m + 1) - (Rat(i) + p) * Rat(n + 1);
}

ConformalAlgebra misprinted_hv() {
    nlohmann::json j = algebra_to_json(make_heisenberg_virasoro());
    for (auto& b : j["brackets"])
        if (b["pair"] == nlohmann::json::array({"M", "L"})) b["value"] = {{"L", "x"}};
    return algebra_from_json(j);
}

struct Expected {
    std::string kase;
    std::optional<std::pair<long, long>> corner;
};

// Direct enumeration of i = pm over the box.
Expected expected_resonance(const Rat& p, long k, long N) {
    if (p.sign() <= 0) return {"NOT_POSITIVE", {}};
    std::optional<long> i0, m0;
    for (long i = 0; i <= k; ++i)
        for (long m = 0; m <= N; ++m)
            if ((i != 0 || m != 0) && Rat(i) == p * Rat(m)) {
                i0 = std::max(i0.value_or(0), i);
                m0 = std::max(m0.value_or(0), m);
            }
    if (!i0) return {"NO_RESONANCE", {}};
    if (*i0 < k) return {"I1", {}};
    if (*m0 < N) return {"I2", {}};
    return {"I3", std::pair{*i0, *m0}};
}

std::string run_cli_capture(const std::vector<std::string>& args, int& code) {
    std::vector<const char*> argv{"confal"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return out.str();
}

}  // namespace

int main() {
    const std::vector<Rat>& schedule = pit_schedule();

    criterion(1, "axiom suite", [&](std::ostream& d) {
        const std::vector<Rat> pts = pit_points(4);
        std::size_t runs = 0;
        bool ok = true;
        for (const Rat& p : pts)
            for (std::size_t w = 0; w <= 6; ++w)
                for (auto pol : {TruncationPolicy::ErrorOnOverflow, TruncationPolicy::TruncateToZero}) {
                    ok = ok && axioms_hold(make_block(p, w, pol));
                    ++runs;
                }
        const std::vector<ConformalAlgebra> named = {make_bn(1), make_bn(2), make_bn(3), make_heisenberg_virasoro(),
                                                     make_schrodinger_virasoro()};
        for (const auto& alg : named) ok = ok && axioms_hold(alg);
        d << runs << " B(p) windows at p in {";
        for (std::size_t i = 0; i < pts.size(); ++i) d << (i ? "," : "") << pts[i].str();
        d << "}, b(1..3), HV, SV";
        return ok;
    });

    criterion(2, "misprint falsifier", [&](std::ostream& d) {
        const ConformalAlgebra bad = misprinted_hv();
        const SkewReport r = check_skew(bad);
        GenCombination expected = GenCombination::generator(0, X);
        expected.add(1, -X);
        const bool one = r.failures.size() == 1 && r.failures[0].residual == expected;
        const bool fixed = axioms_hold(make_heisenberg_virasoro());
        d << r.failures.size() << " failing pair(s)";
        if (!r.failures.empty()) d << ", residual " << r.failures[0].residual.str(bad.generator_names());
        return one && fixed;
    });

    criterion(3, "annihilation cross-check", [&](std::ostream& d) {
        std::size_t pairs = 0, mismatches = 0;
        for (const Rat& p : schedule) {
            const long W = 6;
            const auto alg = make_block(p, W, TruncationPolicy::ErrorOnOverflow);
            const FiniteLieAlgebra A = build_annihilation(alg, W, W, false);
            for (long i = 0; i <= W; ++i)
                for (long m = -1; m <= W; ++m)
                    for (long j = 0; j <= W; ++j)
                        for (long n = -1; n <= W; ++n) {
                            Coords want;
                            const Rat c = mode_coeff(p, i, m, j, n);
                            if (i + j <= W && m + n >= -1 && m + n <= W && !c.is_zero())
                                want[A.index_of(mode_label("L", i + j, m + n))] = c;
                            const Coords got =
                                A.bracket(A.index_of(mode_label("L", i, m)), A.index_of(mode_label("L", j, n)));
                            ++pairs;
                            if (got != want) ++mismatches;
                        }
        }
        d << pairs << " pairs over " << schedule.size() << " values of p, " << mismatches << " mismatches";
        return mismatches == 0;
    });

    criterion(4, "centrality", [&](std::ostream& d) {
        std::size_t nonzero = 0, checked = 0;
        for (const Rat& p : {Rat(1), Rat(-1), Rat(-2)}) {
            const FiniteLieAlgebra A = build_annihilation(make_block(p, 4, TruncationPolicy::ErrorOnOverflow), 4, 4, true);
            const std::size_t t = A.index_of("T"), l = A.index_of("L_{0,-1}");
            for (long i = 0; i <= 4; ++i)
                for (long m = -1; m < 4; ++m) {
                    const std::size_t x = A.index_of(mode_label("L", i, m));
                    Coords z = A.bracket(t, x);
                    add_scaled(z, A.bracket(l, x), -(Rat(1) / p));
                    ++checked;
                    if (!z.empty()) ++nonzero;
                }
            nonzero += check_central(A).failures.size();
        }
        d << checked << " interior elements, " << nonzero << " nonzero brackets";
        return nonzero == 0;
    });

    criterion(5, "module dichotomy", [&](std::ostream& d) {
        const std::vector<Rat> grid = {Rat(0), Rat(1), Rat(-1), Rat(1, 2), Rat(3), Rat(-5, 3)};
        std::size_t passed = 0, total = 0;
        for (const Rat& p : schedule) {
            const auto alg = make_block(p, 3, TruncationPolicy::ErrorOnOverflow);
            for (const Rat& delta : grid)
                for (const Rat& alpha : grid) {
                    ++total;
                    passed += check_module(alg, make_M(alg, delta, alpha)).passed();
                }
        }
        const auto hv = make_block(Rat(-1), 3, TruncationPolicy::ErrorOnOverflow);
        for (const Rat& delta : grid)
            for (const Rat& alpha : grid)
                for (const Rat& beta : {Rat(1), Rat(-2), Rat(1, 3)}) {
                    ++total;
                    passed += check_module(hv, make_M_beta(hv, delta, alpha, beta)).passed();
                }
        std::size_t falsified = 0;
        for (const Rat& p : {Rat(1), Rat(2), Rat(-2), Rat(1, 2)}) {
            const auto alg = make_block(p, 3, TruncationPolicy::ErrorOnOverflow);
            const Rat beta(3);
            const ModuleReport r = check_module(alg, make_M_beta_unchecked(alg, Rat(1), Rat(0), beta));
            const ModuleElement want = GenCombination::generator(0, beta * (Rat(1) + p) * X);
            for (const auto& f : r.failures)
                if (f.a == 0 && f.b == 1 && f.residual == want) {
                    ++falsified;
                    break;
                }
        }
        d << passed << "/" << total << " module checks pass, " << falsified << "/4 bolt-on tables fail on (0,1)";
        return passed == total && falsified == 4;
    });

    criterion(6, "classification replay", [&](std::ostream& d) {
        const std::vector<FamilyPattern> plain = {{ModuleFamily::MDeltaAlpha, "Delta != 0"}};
        const std::vector<FamilyPattern> beta = {{ModuleFamily::MDeltaAlphaBeta, "Delta != 0 or beta != 0"}};
        bool ok = true;
        for (const Rat& p : {Rat(-1), Rat(1), Rat(2), Rat(-2), Rat(-3), Rat(1, 2)}) {
            const ClassificationReport r = classify_rank_one(p, 4, 4);
            const bool fam = r.families == (p == Rat(-1) ? beta : plain) && r.undecided.empty();
            bool cross = true;
            if (p == Rat(-2) || p == Rat(-3)) {
                cross = false;
                for (const auto& s : r.steps)
                    if (s.rule == StepRule::CrossRelationKill && s.residual == -(X + (Rat(1) + p) * Y)) cross = true;
            }
            const bool verified = verify_report(r).ok;
            if (!(fam && cross && verified)) d << "p=" << p.str() << " mismatch; ";
            ok = ok && fam && cross && verified;
        }
        for (unsigned n = 1; n <= 4; ++n) {
            const ClassificationReport r = classify_bn(n, 4);
            const bool fam = r.families == (n == 1 ? beta : plain) && r.undecided.empty() && verify_report(r).ok;
            if (!fam) d << "b(" << n << ") mismatch; ";
            ok = ok && fam;
        }
        d << "6 values of p and b(1..4)";
        return ok;
    });

    criterion(7, "submodule structure", [&](std::ostream& d) {
        bool ok = true;
        std::size_t subs = 0;
        for (const Rat& p : {Rat(1), Rat(-1)}) {
            const auto alg = make_block(p, 3, TruncationPolicy::ErrorOnOverflow);
            for (const Rat& alpha : {Rat(0), Rat(1), Rat(-2)}) {
                const ConformalModule m = make_M(alg, Rat(0), alpha);
                const Poly g = Poly::variable(Var::Partial) + alpha;
                const SubmoduleResult s = submodule_action(m, g);
                const bool iso = s.invariant && s.module && is_isomorphic_rank_one(*s.module, make_M(alg, Rat(1), alpha));
                const IrreducibilityReport irr = is_irreducible_rank_one(alg, m, 3);
                const bool only = irr.search_complete && irr.invariant_generators == std::vector<Poly>{g};
                ok = ok && iso && only;
                subs += iso && only;
            }
        }
        std::size_t agree = 0, cases = 0;
        auto grid_case = [&](const ConformalAlgebra& alg, const ConformalModule& m, bool irreducible) {
            ++cases;
            const IrreducibilityReport r = is_irreducible_rank_one(alg, m, 3);
            const Irreducibility want = irreducible ? Irreducibility::Irreducible : Irreducibility::Reducible;
            agree += r.criterion == want && r.search == want && r.verdict == want;
        };
        for (const Rat& p : {Rat(1), Rat(2), Rat(-2), Rat(1, 2)}) {
            const auto alg = make_block(p, 3, TruncationPolicy::ErrorOnOverflow);
            for (const auto& [delta, alpha] : std::vector<std::pair<Rat, Rat>>{
                     {Rat(0), Rat(0)}, {Rat(0), Rat(3)}, {Rat(1), Rat(0)}, {Rat(-1, 2), Rat(2)}})
                grid_case(alg, make_M(alg, delta, alpha), !delta.is_zero());
        }
        const auto hv = make_block(Rat(-1), 3, TruncationPolicy::ErrorOnOverflow);
        grid_case(hv, make_M_beta(hv, Rat(0), Rat(1), Rat(0)), false);
        grid_case(hv, make_M_beta(hv, Rat(0), Rat(1), Rat(2)), true);
        grid_case(hv, make_M_beta(hv, Rat(1), Rat(0), Rat(0)), true);
        grid_case(hv, make_M_beta(hv, Rat(0), Rat(-2), Rat(-1)), true);
        d << subs << "/6 submodules with a unique generator, " << agree << "/" << cases << " grid verdicts agree";
        return ok && agree == cases && cases == 20;
    });

    criterion(8, "G_{k,N} structural suite", [&](std::ostream& d) {
        struct Case {
            Rat p;
            long k, N;
        };
        const std::vector<Case> cases = {{Rat(1), 2, 3}, {Rat(1, 2), 2, 4}, {Rat(-1), 2, 2}, {Rat(3, 7), 2, 4}};
        bool ok = true;
        std::mt19937_64 rng(20240607);
        std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
        for (const auto& [p, k, N] : cases) {
            const FiniteLieAlgebra G = make_G(p, k, N);
            bool lie = check_lie(G).passed();
            bool grading = true;
            const std::size_t j00 = G.index_of("J_{0,0}");
            for (long i = 0; i <= k; ++i)
                for (long m = 0; m <= N; ++m) {
                    const std::size_t x = G.index_of(mode_label("J", i, m));
                    const Rat ev = Rat(i) - p * Rat(m);
                    Coords want;
                    if (!ev.is_zero()) want[x] = ev;
                    grading = grading && G.bracket(j00, x) == want;
                }
            const Expected exp = expected_resonance(p, k, N);
            const ResonanceReport res = resonance_analysis(G);
            const bool label = to_string(res.kase) == exp.kase;
            const IdealReport ideal = ideal_and_nilpotency(G, res.ideal);
            bool certs = ideal.is_ideal;
            if (exp.kase == "NOT_POSITIVE" || exp.kase == "NO_RESONANCE") certs = certs && ideal.nilpotent;
            if (exp.kase == "I1" || exp.kase == "I2") certs = certs && ideal.abelian;
            if (exp.corner) {
                const auto [i0, m0] = *exp.corner;
                const Rat b = -(Rat(i0) + p) * Rat(m0) - Rat(i0);
                const Coords top = G.bracket(G.index_of(mode_label("J", i0, 0)), G.index_of(mode_label("J", 0, m0)));
                certs = certs && b.sign() < 0 && corner_constant(p, i0, m0) == b &&
                        top == Coords{{G.index_of(mode_label("J", i0, m0)), b}} && ideal.nilpotent;
                for (std::size_t dim : {2u, 3u})
                    for (int t = 0; t < 20; ++t) {
                        RatMatrix A(dim, dim), B(dim, dim);
                        for (std::size_t r = 0; r < dim; ++r)
                            for (std::size_t c = 0; c < dim; ++c) {
                                A(r, c) = Rat(num(rng), den(rng));
                                B(r, c) = Rat(num(rng), den(rng));
                            }
                        Rat c(num(rng), den(rng));
                        if (c.is_zero()) c = Rat(1);
                        certs = certs && trace_certificate(A, B, b, c).verdict == TraceVerdict::ForcedZero;
                    }
            }
            if (!(lie && grading && label && certs))
                d << "(" << p.str() << "," << k << "," << N << ") mismatch; ";
            d << "(" << p.str() << "," << k << "," << N << ")=" << exp.kase << " ";
            ok = ok && lie && grading && label && certs;
        }
        return ok;
    });

    criterion(9, "CLI determinism", [&](std::ostream& d) {
        setenv("CONFAL_SEED", "4242", 1);
        const std::vector<std::vector<std::string>> commands = {
            {"verify-algebra", "--alg", "block", "--p", "1", "--window", "4"},
            {"verify-algebra", "--alg", "hv"},
            {"verify-module", "--alg", "block", "--p", "-1", "--window", "3", "--mod", "Mb:1:0:5"},
            {"verify-module", "--alg", "block", "--p", "2", "--window", "3", "--mod", "Mb:1:0:5"},
            {"verify-module", "--alg", "block", "--p", "1", "--window", "3", "--mod", "M:0:3"},
            {"classify", "--p", "-1"},
            {"classify", "--bn", "2"},
            {"annihilation", "--p", "1", "--idx", "4", "--mode", "4", "--extended"},
            {"annihilation", "--G", "--p", "1/2", "--k", "2", "--N", "4"},
            {"annihilation", "--G", "--p", "-1", "--k", "2", "--N", "2"},
        };
        std::size_t identical = 0;
        for (const auto& cmd : commands) {
            int c1 = 0, c2 = 0;
            const std::string a = run_cli_capture(cmd, c1);
            const std::string b = run_cli_capture(cmd, c2);
            identical += a == b && c1 == c2 && !a.empty();
        }
        unsetenv("CONFAL_SEED");
        d << identical << "/" << commands.size() << " certificates byte-identical";
        return identical == commands.size();
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << '\n';
    return failures == 0 ? 0 : 1;
}
