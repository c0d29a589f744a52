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

#include "confal/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace confal {

char var_symbol(Var v) {
    static constexpr std::array<char, kNumVars> symbols{'D', 'x', 'y', 'u', 'w'};
    return symbols[static_cast<std::size_t>(v)];
}

bool GrlexDescending::operator()(const Exponents& a, const Exponents& b) const {
    const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
    const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da > db;
    return a > b;
}

Poly::Poly(const Rat& c) {
    if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

Poly Poly::variable(Var v) {
    Exponents e{};
    e[static_cast<std::size_t>(v)] = 1;
    return monomial(e, Rat(1));
}

Poly Poly::monomial(const Exponents& e, const Rat& c) {
    Poly p;
    p.add_term(e, c);
    return p;
}

void Poly::add_term(const Exponents& e, const Rat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
}

Rat Poly::constant_term() const {
    auto it = terms_.find(Exponents{});
    return it == terms_.end() ? Rat(0) : it->second;
}

unsigned Poly::degree(Var v) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[static_cast<std::size_t>(v)]);
    return d;
}

unsigned Poly::total_degree() const {
    // first term has the largest total degree
    if (terms_.empty()) return 0;
    const auto& e = terms_.begin()->first;
    return std::accumulate(e.begin(), e.end(), 0u);
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const bool negative = c.sign() < 0;
        const Rat mag = negative ? -c : c;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        const bool unit_monomial = e == Exponents{};
        bool need_star = false;
        if (unit_monomial || mag != Rat(1)) {
            os << mag.str();
            need_star = true;
        }
        for (std::size_t i = 0; i < kNumVars; ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << '*';
            os << var_symbol(static_cast<Var>(i));
            if (e[i] > 1) os << '^' << e[i];
            need_star = true;
        }
    }
    return os.str();
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

Poly& Poly::operator*=(const Rat& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, coef] : terms_) coef *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e;
            for (std::size_t i = 0; i < kNumVars; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Poly operator-(const Poly& a) {
    Poly out = a;
    out *= Rat(-1);
    return out;
}

Poly pow(const Poly& base, unsigned exponent) {
    Poly result(1);
    Poly b = base;
    while (exponent > 0) {
        if (exponent & 1u) result *= b;
        exponent >>= 1u;
        if (exponent > 0) b = b * b;
    }
    return result;
}

Poly substitute(const Poly& a, Var v, const Poly& s) {
    const auto idx = static_cast<std::size_t>(v);
    std::vector<Poly> powers{Poly(1)};
    Poly out;
    for (const auto& [e, c] : a.terms()) {
        const unsigned k = e[idx];
        while (powers.size() <= k) powers.push_back(powers.back() * s);
        Exponents rest = e;
        rest[idx] = 0;
        out += Poly::monomial(rest, c) * powers[k];
    }
    return out;
}

Poly coefficient(const Poly& a, Var v, unsigned k) {
    const auto idx = static_cast<std::size_t>(v);
    Poly out;
    for (const auto& [e, c] : a.terms()) {
        if (e[idx] != k) continue;
        Exponents rest = e;
        rest[idx] = 0;
        out += Poly::monomial(rest, c);
    }
    return out;
}

Poly coeff_in(const Poly& a, Var v, unsigned k) { return coefficient(a, v, k) * factorial(k); }

Rat eval(const Poly& a, const Assignment& assignment) {
    Rat total(0);
    for (const auto& [e, c] : a.terms()) {
        Rat term = c;
        for (std::size_t i = 0; i < kNumVars; ++i) {
            if (e[i] == 0) continue;
            auto it = assignment.find(static_cast<Var>(i));
            if (it == assignment.end()) throw MissingVariable(static_cast<Var>(i));
            for (unsigned j = 0; j < e[i]; ++j) term *= it->second;
        }
        total += term;
    }
    return total;
}

namespace {

bool only_in(const Poly& a, Var v) {
    for (const auto& [e, c] : a.terms())
        for (std::size_t i = 0; i < kNumVars; ++i)
            if (i != static_cast<std::size_t>(v) && e[i] != 0) return false;
    return true;
}

Rat leading_coefficient(const Poly& a, Var v) { return coefficient(a, v, a.degree(v)).constant_term(); }

}  // namespace

DivMod divmod_in(const Poly& a, const Poly& g, Var v) {
    if (g.is_zero()) throw std::domain_error("divmod_in: division by zero polynomial");
    if (!only_in(g, v)) throw std::invalid_argument("divmod_in: divisor must be univariate in the division variable");
    const unsigned dg = g.degree(v);
    const Rat lead = leading_coefficient(g, v);
    DivMod out{Poly(), a};
    while (!out.remainder.is_zero() && out.remainder.degree(v) >= dg) {
        const unsigned dr = out.remainder.degree(v);
        Exponents shift{};
        shift[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(dr - dg);
        const Poly t = coefficient(out.remainder, v, dr) * Poly::monomial(shift, Rat(1) / lead);
        out.quotient += t;
        out.remainder -= t * g;
    }
    return out;
}

Poly make_monic(const Poly& a, Var v) {
    if (a.is_zero()) throw std::domain_error("make_monic: zero polynomial");
    return a * (Rat(1) / leading_coefficient(a, v));
}

Poly gcd_in(const Poly& a, const Poly& b, Var v) {
    if (!only_in(a, v) || !only_in(b, v)) throw std::invalid_argument("gcd_in: arguments must be univariate");
    Poly x = a;
    Poly y = b;
    while (!y.is_zero()) {
        Poly r = divmod_in(x, y, v).remainder;
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : make_monic(x, v);
}

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
    if (n < 0) n = -n;
    std::vector<mpz_class> small;
    std::vector<mpz_class> large;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace

std::vector<Rat> rational_roots(const Poly& a, Var v) {
    if (a.is_zero()) throw std::domain_error("rational_roots: zero polynomial");
    if (!only_in(a, v)) throw std::invalid_argument("rational_roots: argument must be univariate");
    // integer coefficients
    mpz_class lcm_den = 1;
    for (const auto& [e, c] : a.terms()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.raw().get_den_mpz_t());
    Poly scaled = a * Rat(mpq_class(lcm_den));
    std::vector<Rat> roots;
    unsigned low = scaled.degree(v);
    for (const auto& [e, c] : scaled.terms()) low = std::min<unsigned>(low, e[static_cast<std::size_t>(v)]);
    if (low > 0) roots.emplace_back(0);
    const mpz_class c0 = coefficient(scaled, v, low).constant_term().raw().get_num();
    const mpz_class cn = leading_coefficient(scaled, v).raw().get_num();
    if (scaled.degree(v) > low) {
        for (const auto& pnum : positive_divisors(c0)) {
            for (const auto& qden : positive_divisors(cn)) {
                for (int s : {1, -1}) {
                    Rat cand(mpq_class(pnum * s, qden));
                    if (std::find(roots.begin(), roots.end(), cand) != roots.end()) continue;
                    if (eval(scaled, {{v, cand}}).is_zero()) roots.push_back(cand);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---------------------------------------------------------------------------

namespace {

class Parser {
   public:
    explicit Parser(std::string_view s) : s_(s) {}

    Poly parse_all() {
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
        return p;
    }

   private:
    [[noreturn]] void fail(const std::string& msg) const { throw PolyParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr() {
        Poly acc = term();
        for (;;) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    Poly term() {
        Poly acc = unary();
        while (accept('*')) acc *= unary();
        return acc;
    }

    Poly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Poly power() {
        Poly base = primary();
        if (accept('^')) {
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            if (pos_ - start > 4) fail("exponent too large");
            return pow(base, static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
        }
        return base;
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    Poly primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            std::string den = "1";
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                skip_ws();
                den = digits();
                if (den.empty()) fail("expected denominator");
                if (mpz_class(den) == 0) fail("zero denominator");
            }
            return Poly(Rat::parse(num + "/" + den));
        }
        for (std::size_t i = 0; i < kNumVars; ++i) {
            if (c == var_symbol(static_cast<Var>(i))) {
                ++pos_;
                return Poly::variable(static_cast<Var>(i));
            }
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------

const std::vector<Rat>& pit_schedule() {
    static const std::vector<Rat> schedule = [] {
        std::vector<Rat> s{Rat(1), Rat(-1)};
        for (long q = 2; q <= 97; ++q) {
            bool prime = true;
            for (long d = 2; d * d <= q; ++d)
                if (q % d == 0) prime = false;
            if (!prime) continue;
            s.emplace_back(q);
            s.emplace_back(-q);
            s.emplace_back(1, q);
            s.emplace_back(-1, q);
        }
        return s;
    }();
    return schedule;
}

std::vector<Rat> pit_points(std::size_t count, const RatPredicate& excluded) {
    std::vector<Rat> out;
    for (const Rat& r : pit_schedule()) {
        if (out.size() == count) break;
        if (excluded && excluded(r)) continue;
        out.push_back(r);
    }
    if (out.size() < count)
        throw ScheduleExhausted("pit schedule exhausted: needed " + std::to_string(count) + " points, found " +
                                std::to_string(out.size()));
    return out;
}

bool pit_verify_pred(const RatPredicate& vanishes_at, unsigned degree_bound, const RatPredicate& excluded) {
    for (const Rat& p : pit_points(degree_bound + 1u, excluded))
        if (!vanishes_at(p)) return false;
    return true;
}

bool pit_verify(const std::function<Poly(const Rat&)>& family, unsigned degree_bound, const RatPredicate& excluded) {
    return pit_verify_pred([&](const Rat& p) { return family(p).is_zero(); }, degree_bound, excluded);
}

}  // namespace confal
