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

#include "confal/finite_lie.hpp"

#include <sstream>
#include <stdexcept>

namespace confal {

// RatMatrix ------------------------------------------------------------------

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rat(1);
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RatMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("RatMatrix: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Rat RatMatrix::trace() const {
    if (!square()) throw std::invalid_argument("trace of a non-square matrix");
    Rat t(0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    RatMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    RatMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
}

RatMatrix operator*(const Rat& s, const RatMatrix& a) {
    RatMatrix out = a;
    for (auto& x : out.data_) x *= s;
    return out;
}

std::vector<std::vector<Rat>> row_reduce(std::vector<std::vector<Rat>> rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows.front().size();
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < cols && lead_row < rows.size(); ++c) {
        std::size_t pivot = lead_row;
        while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[lead_row]);
        const Rat inv = Rat(1) / rows[lead_row][c];
        for (auto& x : rows[lead_row]) x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead_row || rows[r][c].is_zero()) continue;
            const Rat f = rows[r][c];
            for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[lead_row][j];
        }
        ++lead_row;
    }
    rows.resize(lead_row);
    return rows;
}

std::size_t RatMatrix::rank() const {
    std::vector<std::vector<Rat>> r(rows_, std::vector<Rat>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i][j] = (*this)(i, j);
    return row_reduce(std::move(r)).size();
}

std::vector<std::vector<Rat>> RatMatrix::nullspace() const {
    std::vector<std::vector<Rat>> r(rows_, std::vector<Rat>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i][j] = (*this)(i, j);
    const auto rref = row_reduce(std::move(r));
    std::vector<std::size_t> pivots;
    std::vector<bool> is_pivot(cols_, false);
    for (const auto& row : rref) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (!row[j].is_zero()) {
                pivots.push_back(j);
                is_pivot[j] = true;
                break;
            }
        }
    }
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(cols_);
        v[free] = Rat(1);
        for (std::size_t r = 0; r < rref.size(); ++r) v[pivots[r]] = -rref[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// FiniteLieAlgebra -----------------------------------------------------------

void add_scaled(Coords& into, const Coords& v, const Rat& scale) {
    if (scale.is_zero()) return;
    for (const auto& [i, c] : v) {
        auto [it, inserted] = into.try_emplace(i, c * scale);
        if (!inserted) {
            it->second += c * scale;
            if (it->second.is_zero()) into.erase(it);
        }
    }
}

FiniteLieAlgebra::FiniteLieAlgebra(std::vector<std::string> labels, Table brackets, std::optional<Rat> param_p)
    : labels_(std::move(labels)), table_(std::move(brackets)), param_p_(std::move(param_p)) {
    if (table_.size() != labels_.size()) throw std::invalid_argument("FiniteLieAlgebra: table size mismatch");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (!index_.emplace(labels_[i], i).second)
            throw std::invalid_argument("FiniteLieAlgebra: duplicate label " + labels_[i]);
        if (table_[i].size() != labels_.size()) throw std::invalid_argument("FiniteLieAlgebra: table size mismatch");
        for (const auto& entry : table_[i])
            for (const auto& [k, c] : entry)
                if (k >= labels_.size() || c.is_zero())
                    throw std::invalid_argument("FiniteLieAlgebra: malformed table entry");
    }
}

std::optional<std::size_t> FiniteLieAlgebra::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t FiniteLieAlgebra::index_of(const std::string& label) const {
    auto idx = find(label);
    if (!idx) throw std::out_of_range("no basis element labelled " + label);
    return *idx;
}

Coords FiniteLieAlgebra::bracket(const Coords& x, const Coords& y) const {
    Coords out;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y) add_scaled(out, table_.at(i).at(j), a * b);
    return out;
}

std::string FiniteLieAlgebra::str(const Coords& v) const {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : v) {
        const bool negative = c.sign() < 0;
        const Rat mag = negative ? -c : c;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        if (mag != Rat(1)) os << mag.str() << '*';
        os << labels_[i];
    }
    return os.str();
}

LieReport check_lie(const FiniteLieAlgebra& g) {
    LieReport report;
    const std::size_t n = g.dim();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            ++report.pairs_checked;
            Coords r = g.bracket(a, b);
            add_scaled(r, g.bracket(b, a), Rat(1));
            if (!r.empty()) report.antisymmetry_failures.push_back({{a, b}, std::move(r)});
        }
    }
    const auto& cut = g.truncated_pairs();
    auto clean = [&](std::size_t x, std::size_t y, std::size_t z) {
        if (cut.count({y, z})) return false;
        for (const auto& [t, c] : g.bracket(y, z))
            if (cut.count({x, t})) return false;
        return true;
    };
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            for (std::size_t c = b + 1; c < n; ++c) {
                if (!cut.empty() && !(clean(a, b, c) && clean(b, c, a) && clean(c, a, b))) {
                    ++report.triples_skipped;
                    continue;
                }
                ++report.triples_checked;
                Coords r;
                const Coords ea{{a, Rat(1)}}, eb{{b, Rat(1)}}, ec{{c, Rat(1)}};
                add_scaled(r, g.bracket(ea, g.bracket(b, c)), Rat(1));
                add_scaled(r, g.bracket(eb, g.bracket(c, a)), Rat(1));
                add_scaled(r, g.bracket(ec, g.bracket(a, b)), Rat(1));
                if (!r.empty()) report.jacobi_failures.push_back({{a, b, c}, std::move(r)});
            }
        }
    }
    return report;
}

std::string canonical_table_text(const FiniteLieAlgebra& g) {
    std::ostringstream os;
    for (std::size_t a = 0; a < g.dim(); ++a)
        for (std::size_t b = 0; b < g.dim(); ++b)
            if (!g.bracket(a, b).empty())
                os << '[' << g.label(a) << ',' << g.label(b) << "]=" << g.str(g.bracket(a, b)) << '\n';
    return os.str();
}

}  // namespace confal
