#pragma once

#include <cstdlib>
#include <optional>
#include <vector>

namespace hgc {

/// Solve A e = d over the integers (A is rows x cols, small entries).
/// Column-style Hermite reduction: unimodular column operations tracked in U,
/// then forward substitution with divisibility checks.
class IntLattice {
public:
    using Vec = std::vector<long>;
    using Mat = std::vector<Vec>;  // row-major

    static std::optional<Vec> solve(Mat a, Vec d) {
        size_t rows = a.size();
        size_t cols = rows ? a[0].size() : 0;
        if (cols == 0) {
            for (long v : d)
                if (v != 0) return std::nullopt;
            return Vec{};
        }
        // U starts as identity; column ops on A are mirrored on U
        Mat u(cols, Vec(cols, 0));
        for (size_t i = 0; i < cols; ++i) u[i][i] = 1;

        auto colop_sub = [&](size_t dst, size_t src, long q) {
            for (size_t r = 0; r < rows; ++r) a[r][dst] -= q * a[r][src];
            for (size_t r = 0; r < cols; ++r) u[r][dst] -= q * u[r][src];
        };
        auto colswap = [&](size_t i, size_t j) {
            for (size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
            for (size_t r = 0; r < cols; ++r) std::swap(u[r][i], u[r][j]);
        };

        std::vector<std::pair<size_t, size_t>> pivots;  // (row, col)
        size_t lead = 0;
        for (size_t r = 0; r < rows && lead < cols; ++r) {
            // gcd-reduce the row segment [lead, cols) to a single nonzero
            for (;;) {
                size_t nz = cols;
                for (size_t c = lead; c < cols; ++c)
                    if (a[r][c] != 0 && (nz == cols || std::labs(a[r][c]) < std::labs(a[r][nz])))
                        nz = c;
                if (nz == cols) break;  // all zero
                colswap(lead, nz);
                bool clean = true;
                for (size_t c = lead + 1; c < cols; ++c) {
                    if (a[r][c] == 0) continue;
                    long q = a[r][c] / a[r][lead];
                    colop_sub(c, lead, q);
                    if (a[r][c] != 0) clean = false;
                }
                if (clean) break;
            }
            if (a[r][lead] != 0) {
                pivots.emplace_back(r, lead);
                ++lead;
            }
        }

        // forward substitution: y on pivot columns, zero elsewhere
        Vec y(cols, 0);
        size_t pi = 0;
        for (size_t r = 0; r < rows; ++r) {
            long acc = 0;
            for (size_t c = 0; c < cols; ++c) acc += a[r][c] * y[c];
            long rem = d[r] - acc;
            if (pi < pivots.size() && pivots[pi].first == r) {
                long p = a[r][pivots[pi].second];
                if (rem % p != 0) return std::nullopt;
                y[pivots[pi].second] = rem / p;
                ++pi;
            } else if (rem != 0) {
                return std::nullopt;
            }
        }

        Vec e(cols, 0);
        for (size_t i = 0; i < cols; ++i)
            for (size_t j = 0; j < cols; ++j) e[i] += u[i][j] * y[j];
        return e;
    }
};

}  // namespace hgc
