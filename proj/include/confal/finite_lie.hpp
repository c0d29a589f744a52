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

#ifndef CONFAL_FINITE_LIE_HPP
#define CONFAL_FINITE_LIE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "confal/rat.hpp"

namespace confal {

/// Dense exact matrix.
class RatMatrix {
   public:
    RatMatrix(std::size_t rows, std::size_t cols);
    static RatMatrix identity(std::size_t n);
    static RatMatrix from_rows(const std::vector<std::vector<Rat>>& rows);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool square() const { return rows_ == cols_; }
    Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] Rat trace() const;
    [[nodiscard]] std::size_t rank() const;
    /// Basis of {v : M v = 0}.
    [[nodiscard]] std::vector<std::vector<Rat>> nullspace() const;

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const Rat& s, const RatMatrix& a);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

   private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rat> data_;
};

/// Reduced row echelon basis of the span of the given rows (zero rows dropped).
std::vector<std::vector<Rat>> row_reduce(std::vector<std::vector<Rat>> rows);

/// Sparse coordinates over the basis of a finite-dimensional algebra.
using Coords = std::map<std::size_t, Rat>;

void add_scaled(Coords& into, const Coords& v, const Rat& scale);

/// Lie algebra over Q given by structure constants on a labelled basis.
class FiniteLieAlgebra {
   public:
    using Table = std::vector<std::vector<Coords>>;

    /// Window of a G_{k,N} subquotient, kept so the resonance analysis can run.
    struct GWindow {
        long k;
        long N;
    };

    FiniteLieAlgebra(std::vector<std::string> labels, Table brackets, std::optional<Rat> param_p = std::nullopt);

    [[nodiscard]] std::size_t dim() const { return labels_.size(); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }
    [[nodiscard]] std::optional<std::size_t> find(const std::string& label) const;
    [[nodiscard]] std::size_t index_of(const std::string& label) const;
    [[nodiscard]] const std::optional<Rat>& param_p() const { return param_p_; }
    [[nodiscard]] const Table& table() const { return table_; }

    [[nodiscard]] const Coords& bracket(std::size_t a, std::size_t b) const { return table_.at(a).at(b); }
    [[nodiscard]] Coords bracket(const Coords& x, const Coords& y) const;

    /// Pairs whose bracket lost components to a window edge that is not a quotient.
    [[nodiscard]] const std::set<std::pair<std::size_t, std::size_t>>& truncated_pairs() const { return truncated_; }
    void mark_truncated(std::size_t a, std::size_t b) { truncated_.insert({a, b}); }

    [[nodiscard]] const std::optional<GWindow>& g_window() const { return g_window_; }
    void set_g_window(GWindow w) { g_window_ = w; }

    [[nodiscard]] std::string str(const Coords& v) const;

    friend bool operator==(const FiniteLieAlgebra& a, const FiniteLieAlgebra& b) {
        return a.labels_ == b.labels_ && a.table_ == b.table_;
    }

   private:
    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
    Table table_;
    std::optional<Rat> param_p_;
    std::set<std::pair<std::size_t, std::size_t>> truncated_;
    std::optional<GWindow> g_window_;
};

struct LieFailure {
    std::vector<std::size_t> basis;  // pair or triple of basis indices
    Coords residual;
};

struct LieReport {
    std::size_t pairs_checked = 0;
    std::size_t triples_checked = 0;
    std::size_t triples_skipped = 0;
    std::vector<LieFailure> antisymmetry_failures;
    std::vector<LieFailure> jacobi_failures;
    [[nodiscard]] bool passed() const { return antisymmetry_failures.empty() && jacobi_failures.empty(); }
};

/// Tablewise [x,y] + [y,x] = 0 and [x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0.
/// Triples whose expansion uses a truncated pair are skipped and counted.
LieReport check_lie(const FiniteLieAlgebra& g);

/// Bracket table as canonical text, one nonzero entry per line.
std::string canonical_table_text(const FiniteLieAlgebra& g);

}  // namespace confal

#endif  // CONFAL_FINITE_LIE_HPP
