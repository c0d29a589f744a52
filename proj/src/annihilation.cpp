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

#include "confal/annihilation.hpp"

#include <map>
#include <stdexcept>

namespace confal {

namespace {

std::vector<Rat> to_dense(const Coords& v, std::size_t dim) {
    std::vector<Rat> out(dim);
    for (const auto& [i, c] : v) out[i] = c;
    return out;
}

Coords to_coords(const std::vector<Rat>& v) {
    Coords out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out.emplace(i, v[i]);
    return out;
}

Coords unit(std::size_t i) { return Coords{{i, Rat(1)}}; }

Rat falling(long s, unsigned r) {
    Rat out(1);
    for (unsigned t = 0; t < r; ++t) out *= Rat(s - static_cast<long>(t));
    return out;
}

// (P(D) g)_(s) = sum_r c_r (-1)^r s(s-1)...(s-r+1) g_(s-r); returned as (g, s-r) -> coefficient.
std::map<std::pair<GenId, long>, Rat> shift_modes(const ConfElement& v, long s) {
    std::map<std::pair<GenId, long>, Rat> out;
    for (const auto& [g, poly] : v.terms()) {
        for (unsigned r = 0; r <= poly.degree(Var::Partial); ++r) {
            const Poly c = coefficient(poly, Var::Partial, r);
            if (c.is_zero()) continue;
            if (!c.is_constant()) throw std::invalid_argument("k-product coefficient is not a polynomial in D");
            Rat f = c.constant_term() * falling(s, r);
            if (r % 2 == 1) f = -f;
            if (f.is_zero()) continue;
            out[{g, s - static_cast<long>(r)}] += f;
        }
    }
    return out;
}

struct ModeGrid {
    long idx;
    long mode;
    [[nodiscard]] std::size_t index(long i, long m) const {
        return static_cast<std::size_t>(i * (mode + 2) + (m + 1));
    }
    [[nodiscard]] bool inside(long i, long m) const { return i >= 0 && i <= idx && m >= -1 && m <= mode; }
};

}  // namespace

std::string mode_label(const std::string& stem, long i, long m) {
    return stem + "_{" + std::to_string(i) + "," + std::to_string(m) + "}";
}

std::vector<KProduct> k_products(const ConformalAlgebra& alg, GenId i, GenId j) {
    const LambdaValue& value = alg.structure(i, j);
    std::map<unsigned, ConfElement> by_k;
    for (const auto& [g, poly] : value.terms()) {
        for (unsigned k = 0; k <= poly.degree(Var::Lambda); ++k) {
            Poly c = coeff_in(poly, Var::Lambda, k);
            if (!c.is_zero()) by_k[k].add(g, c);
        }
    }
    std::vector<KProduct> out;
    for (auto& [k, v] : by_k)
        if (!v.is_zero()) out.push_back({k, std::move(v)});
    return out;
}

FiniteLieAlgebra build_annihilation(const ConformalAlgebra& alg, long idx_window, long mode_window, bool extended) {
    if (idx_window < 0 || mode_window < 0) throw std::invalid_argument("build_annihilation: negative window");
    if (static_cast<std::size_t>(idx_window) > alg.window())
        throw std::invalid_argument("build_annihilation: index window exceeds the generator window");
    const ModeGrid grid{idx_window, mode_window};
    // For block algebras the generators beyond the index window span an ideal,
    // so cutting them off is a quotient; the mode cut never is, since
    // L_{0,-1} lowers the mode.
    const bool graded = alg.block_p().has_value();

    std::vector<std::string> labels;
    for (long i = 0; i <= idx_window; ++i)
        for (long m = -1; m <= mode_window; ++m) labels.push_back(mode_label("L", i, m));
    if (extended) labels.emplace_back("T");
    const std::size_t dim = labels.size();
    const std::size_t t_index = dim - 1;

    FiniteLieAlgebra::Table table(dim, std::vector<Coords>(dim));
    std::set<std::pair<std::size_t, std::size_t>> truncated;

    for (long i = 0; i <= idx_window; ++i) {
        for (long j = 0; j <= idx_window; ++j) {
            const auto gi = static_cast<GenId>(i);
            const auto gj = static_cast<GenId>(j);
            const bool known = alg.defined(gi, gj);
            const std::vector<KProduct> products = known ? k_products(alg, gi, gj) : std::vector<KProduct>{};
            for (long m = -1; m <= mode_window; ++m) {
                for (long n = -1; n <= mode_window; ++n) {
                    const std::size_t a = grid.index(i, m);
                    const std::size_t b = grid.index(j, n);
                    if (!known) {
                        if (!graded) truncated.insert({a, b});
                        continue;
                    }
                    const long M = m + 1;
                    const long N = n + 1;
                    Coords value;
                    bool dropped = false;  // only drops that are not a quotient
                    for (const auto& [k, v] : products) {
                        const Rat choose = binomial(M, static_cast<long>(k));
                        if (choose.is_zero()) continue;
                        for (const auto& [key, c] : shift_modes(v, M + N - static_cast<long>(k))) {
                            const auto [g, t] = key;
                            const long gi_target = static_cast<long>(g);
                            if (!grid.inside(gi_target, t - 1)) {
                                if (!(graded && gi_target > idx_window && t - 1 <= mode_window)) dropped = true;
                                continue;
                            }
                            add_scaled(value, unit(grid.index(gi_target, t - 1)), choose * c);
                        }
                    }
                    if (dropped) truncated.insert({a, b});
                    table[a][b] = std::move(value);
                }
            }
        }
    }

    if (extended) {
        for (long i = 0; i <= idx_window; ++i) {
            for (long m = -1; m <= mode_window; ++m) {
                const std::size_t a = grid.index(i, m);
                Coords value;
                const ConfElement dl = ConfElement::generator(static_cast<GenId>(i), Poly::variable(Var::Partial));
                for (const auto& [key, c] : shift_modes(dl, m + 1))
                    add_scaled(value, unit(grid.index(static_cast<long>(key.first), key.second - 1)), c);
                Coords negated;
                add_scaled(negated, value, Rat(-1));
                table[t_index][a] = std::move(value);
                table[a][t_index] = std::move(negated);
            }
        }
    }

    if (alg.block_p()) {
        const Rat& p = *alg.block_p();
        for (long i = 0; i <= idx_window; ++i)
            for (long j = 0; j <= idx_window; ++j)
                for (long m = -1; m <= mode_window; ++m)
                    for (long n = -1; n <= mode_window; ++n) {
                        const std::size_t a = grid.index(i, m);
                        const std::size_t b = grid.index(j, n);
                        Coords expected;
                        const Rat c = (Rat(j) + p) * Rat(m + 1) - (Rat(i) + p) * Rat(n + 1);
                        if (i + j <= static_cast<long>(alg.window()) && grid.inside(i + j, m + n))
                            add_scaled(expected, unit(grid.index(i + j, m + n)), c);
                        if (expected != table[a][b])
                            throw std::logic_error("build_annihilation: n-th product route disagrees with closed form at [" +
                                                   labels[a] + ", " + labels[b] + "]");
                    }
    }

    FiniteLieAlgebra out(std::move(labels), std::move(table), alg.block_p());
    for (const auto& [a, b] : truncated) out.mark_truncated(a, b);
    return out;
}

CentralReport check_central(const FiniteLieAlgebra& ext) {
    const auto t = ext.find("T");
    const auto l = ext.find(mode_label("L", 0, -1));
    if (!t || !l) throw std::invalid_argument("check_central: needs T and L_{0,-1}");
    if (!ext.param_p() || ext.param_p()->is_zero()) throw std::invalid_argument("check_central: needs p != 0");
    Coords z{{*t, Rat(1)}};
    add_scaled(z, unit(*l), Rat(-1) / *ext.param_p());

    CentralReport report;
    const auto& cut = ext.truncated_pairs();
    for (std::size_t x = 0; x < ext.dim(); ++x) {
        const bool edge = cut.count({*t, x}) || cut.count({x, *t}) || cut.count({*l, x}) || cut.count({x, *l});
        if (edge) {
            report.excluded.push_back(ext.label(x));
            continue;
        }
        ++report.checked;
        Coords r = ext.bracket(z, unit(x));
        if (!r.empty()) report.failures.emplace_back(ext.label(x), std::move(r));
    }
    return report;
}

FiniteLieAlgebra make_G(const Rat& p, long k, long N) {
    if (p.is_zero()) throw std::invalid_argument("make_G: p must be nonzero");
    if (k < 0 || N < 0) throw std::invalid_argument("make_G: negative window");
    auto index = [N](long i, long m) { return static_cast<std::size_t>(i * (N + 1) + m); };
    std::vector<std::string> labels;
    for (long i = 0; i <= k; ++i)
        for (long m = 0; m <= N; ++m) labels.push_back(mode_label("J", i, m));
    FiniteLieAlgebra::Table table(labels.size(), std::vector<Coords>(labels.size()));
    for (long i = 0; i <= k; ++i)
        for (long m = 0; m <= N; ++m)
            for (long j = 0; j <= k; ++j)
                for (long n = 0; n <= N; ++n) {
                    if (i + j > k || m + n > N) continue;
                    const Rat c = (Rat(j) + p) * Rat(m + 1) - (Rat(i) + p) * Rat(n + 1);
                    if (!c.is_zero()) table[index(i, m)][index(j, n)].emplace(index(i + j, m + n), c);
                }
    FiniteLieAlgebra G(std::move(labels), std::move(table), p);
    G.set_g_window({k, N});
    return G;
}

namespace {

const FiniteLieAlgebra::GWindow& require_g(const FiniteLieAlgebra& G) {
    if (!G.g_window() || !G.param_p()) throw std::invalid_argument("expected an algebra built by make_G");
    return *G.g_window();
}

}  // namespace

std::vector<std::string> check_grading(const FiniteLieAlgebra& G) {
    const auto& w = require_g(G);
    const Rat& p = *G.param_p();
    const std::size_t j00 = G.index_of(mode_label("J", 0, 0));
    std::vector<std::string> bad;
    for (long i = 0; i <= w.k; ++i)
        for (long m = 0; m <= w.N; ++m) {
            const std::size_t x = G.index_of(mode_label("J", i, m));
            Coords expected;
            add_scaled(expected, unit(x), Rat(i) - p * Rat(m));
            if (G.bracket(j00, x) != expected) bad.push_back(G.label(x));
        }
    return bad;
}

const char* to_string(ResonanceCase c) {
    switch (c) {
        case ResonanceCase::NotPositive: return "NOT_POSITIVE";
        case ResonanceCase::NoResonance: return "NO_RESONANCE";
        case ResonanceCase::TopIndex: return "I1";
        case ResonanceCase::TopMode: return "I2";
        case ResonanceCase::Corner: return "I3";
    }
    return "?";
}

ResonanceReport resonance_analysis(const FiniteLieAlgebra& G) {
    const auto& w = require_g(G);
    ResonanceReport r;
    r.p = *G.param_p();
    r.k = w.k;
    r.N = w.N;

    auto whole_but_origin = [&] {
        Subspace s;
        for (long i = 0; i <= w.k; ++i)
            for (long m = 0; m <= w.N; ++m)
                if (i != 0 || m != 0) s.span.push_back(mode_label("J", i, m));
        return s;
    };

    if (r.p.sign() <= 0) {
        r.kase = ResonanceCase::NotPositive;
        r.ideal_name = "K";
        r.ideal = whole_but_origin();
        return r;
    }
    for (long i = 0; i <= w.k; ++i)
        for (long m = 0; m <= w.N; ++m)
            if ((i != 0 || m != 0) && Rat(i) == r.p * Rat(m)) r.resonances.emplace_back(i, m);
    if (r.resonances.empty()) {
        r.kase = ResonanceCase::NoResonance;
        r.ideal_name = "K";
        r.ideal = whole_but_origin();
        return r;
    }
    r.i0 = r.resonances.front().first;
    r.m0 = r.resonances.front().second;
    for (const auto& [i, m] : r.resonances)
        if (i > *r.i0) {
            r.i0 = i;
            r.m0 = m;
        }
    if (*r.i0 < w.k) {
        r.kase = ResonanceCase::TopIndex;
        r.ideal_name = "I1";
        for (long m = 0; m <= w.N; ++m) r.ideal.span.push_back(mode_label("J", w.k, m));
    } else if (*r.m0 < w.N) {
        r.kase = ResonanceCase::TopMode;
        r.ideal_name = "I2";
        for (long i = 0; i <= w.k; ++i) r.ideal.span.push_back(mode_label("J", i, w.N));
    } else {
        r.kase = ResonanceCase::Corner;
        r.ideal_name = "I3";
        for (long m = 0; m <= w.N; ++m) r.ideal.span.push_back(mode_label("J", w.k, m));
        for (long i = 0; i < w.k; ++i) r.ideal.span.push_back(mode_label("J", i, w.N));
    }
    return r;
}

IdealReport ideal_and_nilpotency(const FiniteLieAlgebra& G, const Subspace& S) {
    std::vector<std::size_t> members;
    std::vector<bool> in_s(G.dim(), false);
    for (const auto& label : S.span) {
        const std::size_t idx = G.index_of(label);
        if (!in_s[idx]) members.push_back(idx);
        in_s[idx] = true;
    }

    IdealReport report;
    for (std::size_t x = 0; x < G.dim(); ++x)
        for (std::size_t s : members)
            for (const auto& [t, c] : G.bracket(x, s))
                if (!in_s[t]) {
                    report.is_ideal = false;
                    report.escapes.emplace_back(G.label(x), G.label(s));
                    break;
                }

    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            const Coords& v = G.bracket(members[a], members[b]);
            if (!v.empty()) {
                report.abelian = false;
                report.internal_brackets.push_back({{G.label(members[a]), G.label(members[b])}, v});
            }
        }

    std::vector<std::vector<Rat>> current;
    for (std::size_t s : members) current.push_back(to_dense(unit(s), G.dim()));
    report.series_dims.push_back(current.size());
    for (std::size_t step = 1; !current.empty() && step <= G.dim() + 1; ++step) {
        std::vector<std::vector<Rat>> images;
        for (std::size_t s : members)
            for (const auto& v : current) images.push_back(to_dense(G.bracket(unit(s), to_coords(v)), G.dim()));
        auto next = row_reduce(std::move(images));
        report.series_dims.push_back(next.size());
        if (next.empty()) {
            report.nilpotent = true;
            report.nilpotency_class = step;
            break;
        }
        if (next.size() >= current.size()) break;
        current = std::move(next);
    }
    if (members.empty()) {
        report.nilpotent = true;
        report.nilpotency_class = 0;
    }
    return report;
}

Rat corner_constant(const Rat& p, long i0, long m0) { return -(Rat(i0) + p) * Rat(m0) - Rat(i0); }

const char* to_string(TraceVerdict v) { return v == TraceVerdict::Consistent ? "CONSISTENT" : "FORCED_ZERO"; }

TraceCertificate trace_certificate(const RatMatrix& A, const RatMatrix& B, const Rat& b, const Rat& c) {
    if (!A.square() || !B.square() || A.rows() != B.rows())
        throw std::invalid_argument("trace_certificate: A and B must be square of equal size");
    if (A.rows() == 0) throw std::invalid_argument("trace_certificate: empty matrices");
    if (b.is_zero()) throw std::invalid_argument("trace_certificate: b must be nonzero");
    const Rat lhs = (A * B - B * A).trace();
    const Rat rhs = b * c * Rat(static_cast<long>(A.rows()));
    return {lhs == rhs ? TraceVerdict::Consistent : TraceVerdict::ForcedZero, lhs, rhs};
}

CharacterReport characters(const FiniteLieAlgebra& G) {
    const std::size_t dim = G.dim();
    std::vector<std::vector<Rat>> images;
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = a + 1; b < dim; ++b)
            if (!G.bracket(a, b).empty()) images.push_back(to_dense(G.bracket(a, b), dim));

    CharacterReport report;
    report.derived_basis = row_reduce(std::move(images));
    if (report.derived_basis.empty()) {
        for (std::size_t i = 0; i < dim; ++i) report.characters.push_back(to_dense(unit(i), dim));
    } else {
        report.characters = RatMatrix::from_rows(report.derived_basis).nullspace();
    }

    report.verified = true;
    for (const auto& phi : report.characters)
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b) {
                Rat value(0);
                for (const auto& [t, c] : G.bracket(a, b)) value += phi[t] * c;
                if (!value.is_zero()) report.verified = false;
            }
    return report;
}

FiniteLieAlgebra make_block_pq_window(const Rat& p, const Rat& q, IntRange i_range, IntRange m_range) {
    if (i_range.lo > i_range.hi || m_range.lo > m_range.hi) throw std::invalid_argument("make_block_pq_window: empty range");
    const long width = m_range.hi - m_range.lo + 1;
    auto inside = [&](long i, long m) {
        return i >= i_range.lo && i <= i_range.hi && m >= m_range.lo && m <= m_range.hi;
    };
    auto index = [&](long i, long m) { return static_cast<std::size_t>((i - i_range.lo) * width + (m - m_range.lo)); };
    // Overshooting a coordinate whose range starts at 0 or above lands in an ideal.
    auto quotient_drop = [&](long i, long m) {
        if (i < i_range.lo || m < m_range.lo) return false;
        return (i > i_range.hi && i_range.lo >= 0) || (m > m_range.hi && m_range.lo >= 0);
    };

    std::vector<std::string> labels;
    for (long i = i_range.lo; i <= i_range.hi; ++i)
        for (long m = m_range.lo; m <= m_range.hi; ++m) labels.push_back(mode_label("L", i, m));
    FiniteLieAlgebra::Table table(labels.size(), std::vector<Coords>(labels.size()));
    std::vector<std::pair<std::size_t, std::size_t>> truncated;
    for (long i = i_range.lo; i <= i_range.hi; ++i)
        for (long m = m_range.lo; m <= m_range.hi; ++m)
            for (long j = i_range.lo; j <= i_range.hi; ++j)
                for (long n = m_range.lo; n <= m_range.hi; ++n) {
                    const Rat c = (Rat(j) + p) * (Rat(m) + q) - (Rat(i) + p) * (Rat(n) + q);
                    if (c.is_zero()) continue;
                    if (!inside(i + j, m + n)) {
                        if (!quotient_drop(i + j, m + n)) truncated.emplace_back(index(i, m), index(j, n));
                        continue;
                    }
                    table[index(i, m)][index(j, n)].emplace(index(i + j, m + n), c);
                }
    FiniteLieAlgebra out(std::move(labels), std::move(table), p);
    for (const auto& [a, b] : truncated) out.mark_truncated(a, b);
    return out;
}

}  // namespace confal
