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

#ifndef CONFAL_RAT_HPP
#define CONFAL_RAT_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace confal {

/// Exact rational number, always in lowest terms with positive denominator.
class Rat {
   public:
    Rat() = default;
    Rat(long n) : v_(n) {}  // NOLINT: implicit from integers is intended
    Rat(int n) : v_(static_cast<long>(n)) {}
    Rat(long num, long den);
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Parses "a", "-a" or "a/b". Throws std::invalid_argument.
    static Rat parse(std::string_view text);

    [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
    [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
    [[nodiscard]] int sign() const { return sgn(v_); }
    [[nodiscard]] Rat numerator() const { return Rat(mpq_class(v_.get_num())); }
    [[nodiscard]] Rat denominator() const { return Rat(mpq_class(v_.get_den())); }
    [[nodiscard]] const mpq_class& raw() const { return v_; }

    /// Canonical rendering: "a" for integers, "a/b" otherwise.
    [[nodiscard]] std::string str() const { return v_.get_str(); }

    /// Value as a machine integer; throws if not an integer or out of range.
    [[nodiscard]] long to_long() const;

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

   private:
    mpq_class v_{0};
};

/// n! as a rational.
Rat factorial(unsigned n);

/// Binomial coefficient C(n, k) for non-negative n; zero when k > n.
Rat binomial(long n, long k);

}  // namespace confal

#endif  // CONFAL_RAT_HPP
