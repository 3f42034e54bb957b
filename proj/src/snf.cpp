#include "qpt/snf.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>

namespace qpt {

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& m) {
    SparseIntMatrix out;
    out.rows = static_cast<int>(m.size());
    out.cols = m.empty() ? 0 : static_cast<int>(m[0].size());
    out.row_data.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            if (m[i][j] != 0) out.row_data[i].emplace_back(static_cast<int>(j), m[i][j]);
    return out;
}

namespace {

struct Int64Overflow {};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Int64Overflow{};
    return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Int64Overflow{};
    return r;
}

template <class T>
T mul(T a, T b) {
    return a * b;
}
template <>
std::int64_t mul<std::int64_t>(std::int64_t a, std::int64_t b) {
    return checked_mul(a, b);
}
template <class T>
T sub(T a, T b) {
    return a - b;
}
template <>
std::int64_t sub<std::int64_t>(std::int64_t a, std::int64_t b) {
    return checked_sub(a, b);
}

template <class T>
bool is_unit(const T& v) {
    return v == 1 || v == -1;
}

// Row-major sparse elimination with unit pivots. Every unit pivot clears its
// column with integer row operations and then its row and column leave the
// matrix contributing an invariant factor 1. What remains has no +-1 entries
// and goes to the dense stage.
template <class T>
struct SparseElim {
    int rows, cols;
    std::vector<std::vector<std::pair<int, T>>> row_data;  // sorted by col
    std::vector<std::vector<int>> col_rows;                // may hold stale ids
    std::vector<int> col_count;                            // exact nonzero counts
    std::vector<bool> row_alive, col_alive;
    int unit_pivots = 0;

    explicit SparseElim(const SparseIntMatrix& M)
        : rows(M.rows),
          cols(M.cols),
          row_data(static_cast<std::size_t>(M.rows)),
          col_rows(static_cast<std::size_t>(M.cols)),
          col_count(static_cast<std::size_t>(M.cols), 0),
          row_alive(static_cast<std::size_t>(M.rows), true),
          col_alive(static_cast<std::size_t>(M.cols), true) {
        for (int i = 0; i < rows; ++i) {
            auto& r = row_data[static_cast<std::size_t>(i)];
            r.reserve(M.row_data[static_cast<std::size_t>(i)].size());
            for (const auto& [c, v] : M.row_data[static_cast<std::size_t>(i)]) {
                r.emplace_back(c, static_cast<T>(v));
                col_rows[static_cast<std::size_t>(c)].push_back(i);
                ++col_count[static_cast<std::size_t>(c)];
            }
        }
    }

    const T* entry(int r, int c) const {
        const auto& row = row_data[static_cast<std::size_t>(r)];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& p, int col) { return p.first < col; });
        if (it != row.end() && it->first == c) return &it->second;
        return nullptr;
    }

    // row[r] -= factor * row[pivot]
    void row_axpy(int r, int pivot, const T& factor) {
        const auto& prow = row_data[static_cast<std::size_t>(pivot)];
        auto& trow = row_data[static_cast<std::size_t>(r)];
        std::vector<std::pair<int, T>> merged;
        merged.reserve(trow.size() + prow.size());
        std::size_t a = 0, b = 0;
        while (a < trow.size() || b < prow.size()) {
            if (b == prow.size() || (a < trow.size() && trow[a].first < prow[b].first)) {
                merged.push_back(trow[a++]);
            } else if (a == trow.size() || prow[b].first < trow[a].first) {
                T nv = sub<T>(T(0), mul<T>(factor, prow[b].second));
                if (nv != 0) {
                    merged.emplace_back(prow[b].first, nv);
                    col_rows[static_cast<std::size_t>(prow[b].first)].push_back(r);
                    ++col_count[static_cast<std::size_t>(prow[b].first)];
                }
                ++b;
            } else {
                T nv = sub<T>(trow[a].second, mul<T>(factor, prow[b].second));
                if (nv != 0)
                    merged.emplace_back(trow[a].first, nv);
                else
                    --col_count[static_cast<std::size_t>(trow[a].first)];
                ++a;
                ++b;
            }
        }
        trow = std::move(merged);
    }

    void drop_row(int r) {
        for (const auto& [c, v] : row_data[static_cast<std::size_t>(r)])
            --col_count[static_cast<std::size_t>(c)];
        row_data[static_cast<std::size_t>(r)].clear();
        row_alive[static_cast<std::size_t>(r)] = false;
    }

    void eliminate_units() {
        for (;;) {
            int best_r = -1, best_c = -1;
            long best_score = -1;
            for (int r = 0; r < rows && best_score != 0; ++r) {
                if (!row_alive[static_cast<std::size_t>(r)]) continue;
                const auto& row = row_data[static_cast<std::size_t>(r)];
                long rw = static_cast<long>(row.size()) - 1;
                for (const auto& [c, v] : row) {
                    if (!is_unit(v)) continue;
                    long score = rw * (col_count[static_cast<std::size_t>(c)] - 1);
                    if (best_score < 0 || score < best_score) {
                        best_score = score;
                        best_r = r;
                        best_c = c;
                        if (best_score == 0) break;
                    }
                }
            }
            if (best_r < 0) return;

            const T pivot_val = *entry(best_r, best_c);
            auto& holders = col_rows[static_cast<std::size_t>(best_c)];
            std::vector<int> targets;
            targets.reserve(holders.size());
            for (int r : holders) {
                if (r == best_r || !row_alive[static_cast<std::size_t>(r)]) continue;
                if (entry(r, best_c) != nullptr) targets.push_back(r);
            }
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
            for (int r : targets) {
                const T* a = entry(r, best_c);
                if (a == nullptr) continue;
                // factor * pivot_val == *a
                T factor = (pivot_val == 1) ? *a : sub<T>(T(0), *a);
                row_axpy(r, best_r, factor);
            }
            drop_row(best_r);
            col_alive[static_cast<std::size_t>(best_c)] = false;
            holders.clear();
            ++unit_pivots;
        }
    }

    std::vector<std::vector<BigInt>> remainder() const {
        std::vector<int> live_cols;
        for (int c = 0; c < cols; ++c)
            if (col_count[static_cast<std::size_t>(c)] > 0) live_cols.push_back(c);
        std::vector<int> col_pos(static_cast<std::size_t>(cols), -1);
        for (std::size_t i = 0; i < live_cols.size(); ++i)
            col_pos[static_cast<std::size_t>(live_cols[i])] = static_cast<int>(i);
        std::vector<std::vector<BigInt>> dense;
        for (int r = 0; r < rows; ++r) {
            if (!row_alive[static_cast<std::size_t>(r)] ||
                row_data[static_cast<std::size_t>(r)].empty())
                continue;
            std::vector<BigInt> out(live_cols.size(), BigInt(0));
            for (const auto& [c, v] : row_data[static_cast<std::size_t>(r)])
                out[static_cast<std::size_t>(col_pos[static_cast<std::size_t>(c)])] = BigInt(v);
            dense.push_back(std::move(out));
        }
        return dense;
    }
};

// Textbook Smith reduction on a small dense core.
std::vector<BigInt> dense_snf(std::vector<std::vector<BigInt>> a) {
    std::vector<BigInt> factors;
    std::size_t nr = a.size();
    std::size_t nc = nr == 0 ? 0 : a[0].size();
    std::size_t t = 0;
    auto abs_big = [](const BigInt& v) { return v < 0 ? BigInt(-v) : v; };
    while (t < nr && t < nc) {
        // find the minimal-magnitude nonzero entry in the corner
        std::size_t pi = t, pj = t;
        BigInt best(0);
        for (std::size_t i = t; i < nr; ++i)
            for (std::size_t j = t; j < nc; ++j)
                if (a[i][j] != 0 && (best == 0 || abs_big(a[i][j]) < best)) {
                    best = abs_big(a[i][j]);
                    pi = i;
                    pj = j;
                }
        if (best == 0) break;
        std::swap(a[t], a[pi]);
        for (std::size_t i = 0; i < nr; ++i) std::swap(a[i][t], a[i][pj]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (a[i][t] == 0) continue;
                BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < nc; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {  // remainder became the smaller pivot
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (a[t][j] == 0) continue;
                BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < nr; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (std::size_t i = 0; i < nr; ++i) std::swap(a[i][t], a[i][j]);
                    clean = false;
                }
            }
            if (clean) {
                // pivot must divide the rest of the corner
                for (std::size_t i = t + 1; i < nr && clean; ++i)
                    for (std::size_t j = t + 1; j < nc && clean; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (std::size_t jj = t; jj < nc; ++jj) a[t][jj] += a[i][jj];
                            clean = false;
                        }
            }
        }
        factors.push_back(abs_big(a[t][t]));
        ++t;
    }
    return factors;
}

template <class T>
SnfResult run_snf(const SparseIntMatrix& M) {
    SparseElim<T> elim(M);
    elim.eliminate_units();
    auto core = elim.remainder();
    auto core_factors = dense_snf(std::move(core));
    SnfResult out;
    out.rank = elim.unit_pivots + static_cast<int>(core_factors.size());
    out.invariant_factors.assign(static_cast<std::size_t>(elim.unit_pivots), BigInt(1));
    out.invariant_factors.insert(out.invariant_factors.end(), core_factors.begin(),
                                 core_factors.end());
    return out;
}

}  // namespace

SnfResult smith_normal_form(SparseIntMatrix M) {
    try {
        return run_snf<std::int64_t>(M);
    } catch (const Int64Overflow&) {
        return run_snf<BigInt>(M);
    }
}

int rank_mod_p(const SparseIntMatrix& M, std::uint32_t p) {
    if (p == 2) {
        const std::size_t words = (static_cast<std::size_t>(M.cols) + 63) / 64;
        std::vector<std::vector<std::uint64_t>> rows;
        rows.reserve(static_cast<std::size_t>(M.rows));
        for (const auto& r : M.row_data) {
            std::vector<std::uint64_t> bits(words, 0);
            bool any = false;
            for (const auto& [c, v] : r) {
                if (v % 2 != 0) {
                    bits[static_cast<std::size_t>(c) / 64] ^= 1ull
                                                              << (static_cast<std::size_t>(c) % 64);
                    any = true;
                }
            }
            if (any) rows.push_back(std::move(bits));
        }
        int rank = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            int pc = -1;
            for (std::size_t w = 0; w < words && pc < 0; ++w)
                if (rows[i][w] != 0)
                    pc = static_cast<int>(w * 64) + std::countr_zero(rows[i][w]);
            if (pc < 0) continue;
            ++rank;
            for (std::size_t j = 0; j < rows.size(); ++j) {
                if (j == i) continue;
                if ((rows[j][static_cast<std::size_t>(pc) / 64] >>
                     (static_cast<std::size_t>(pc) % 64)) &
                    1ull)
                    for (std::size_t w = 0; w < words; ++w) rows[j][w] ^= rows[i][w];
            }
        }
        return rank;
    }

    // dense elimination mod an odd prime
    const std::int64_t pp = p;
    std::vector<std::vector<std::int64_t>> a(static_cast<std::size_t>(M.rows),
                                             std::vector<std::int64_t>(
                                                 static_cast<std::size_t>(M.cols), 0));
    for (int i = 0; i < M.rows; ++i)
        for (const auto& [c, v] : M.row_data[static_cast<std::size_t>(i)])
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = ((v % pp) + pp) % pp;
    auto mod_inv = [&](std::int64_t x) {
        std::int64_t b = pp - 2, result = 1, base = x % pp;
        while (b > 0) {
            if (b & 1) result = result * base % pp;
            base = base * base % pp;
            b >>= 1;
        }
        return result;
    };
    int rank = 0;
    int row = 0;
    for (int col = 0; col < M.cols && row < M.rows; ++col) {
        int pr = -1;
        for (int i = row; i < M.rows; ++i)
            if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(a[static_cast<std::size_t>(row)], a[static_cast<std::size_t>(pr)]);
        std::int64_t inv = mod_inv(a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]);
        for (int j = col; j < M.cols; ++j)
            a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] =
                a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] * inv % pp;
        for (int i = 0; i < M.rows; ++i) {
            if (i == row) continue;
            std::int64_t f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int j = col; j < M.cols; ++j)
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    ((a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                      f * a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)]) %
                         pp +
                     pp) %
                    pp;
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace qpt
