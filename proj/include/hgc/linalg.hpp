#pragma once

#include <vector>

namespace hgc {

/// Exact dense linear algebra over a field scalar S (same interface contract
/// as Poly's).  Row-reduction with first-nonzero pivoting; no growth control
/// is needed beyond what the scalar's own normalization provides.
template <class S>
struct LinAlg {
    using Row = std::vector<S>;
    using Mat = std::vector<Row>;

    /// Reduce in place to row echelon form; returns the pivot column of each
    /// surviving row.
    static std::vector<int> echelon(Mat& m) {
        std::vector<int> pivots;
        if (m.empty()) return pivots;
        size_t cols = m[0].size(), row = 0;
        for (size_t col = 0; col < cols && row < m.size(); ++col) {
            size_t p = row;
            while (p < m.size() && m[p][col].is_zero()) ++p;
            if (p == m.size()) continue;
            std::swap(m[row], m[p]);
            S inv = m[row][col].inv();
            for (size_t j = col; j < cols; ++j) m[row][j] = m[row][j] * inv;
            for (size_t i = 0; i < m.size(); ++i) {
                if (i == row || m[i][col].is_zero()) continue;
                S f = m[i][col];
                for (size_t j = col; j < cols; ++j)
                    m[i][j] = m[i][j] - f * m[row][j];
            }
            pivots.push_back(static_cast<int>(col));
            ++row;
        }
        m.resize(row);
        return pivots;
    }

    static int rank(Mat m) { return static_cast<int>(echelon(m).size()); }

    /// Basis of the right kernel {v : M v = 0}.
    static Mat kernel(Mat m, size_t cols, const S& zero) {
        std::vector<int> pivots = echelon(m);
        std::vector<bool> is_pivot(cols, false);
        for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
        Mat basis;
        for (size_t free = 0; free < cols; ++free) {
            if (is_pivot[free]) continue;
            Row v(cols, zero);
            v[free] = zero.one();
            for (size_t i = 0; i < pivots.size(); ++i) {
                size_t pc = static_cast<size_t>(pivots[i]);
                // echelon rows are normalized to pivot 1
                v[pc] = -m[i][free];
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }
};

}  // namespace hgc
