#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace weil {

/// Dense row-major matrix over an exact field element type.
/// T must provide is_zero(), inverse(), zero_like(), +, -, *, unary -, ==.
template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c, const T& fill) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

    T& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    static Mat identity(int n, const T& one) {
        Mat m(n, n, one.zero_like());
        for (int i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    std::vector<T> row(int i) const {
        return std::vector<T>(a.begin() + static_cast<size_t>(i) * cols,
                              a.begin() + static_cast<size_t>(i + 1) * cols);
    }

    void swap_rows(int i, int j) {
        for (int k = 0; k < cols; ++k) std::swap(at(i, k), at(j, k));
    }
};

template <class T>
Mat<T> transposed(const Mat<T>& m) {
    Mat<T> t;
    t.rows = m.cols;
    t.cols = m.rows;
    if (m.a.empty()) return t;
    t.a.assign(m.a.size(), m.a.front().zero_like());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

template <class T>
Mat<T> mat_inverse(const Mat<T>& m) {
    if (m.rows != m.cols) throw std::invalid_argument("mat_inverse: square matrix required");
    const T zero = m.a.front().zero_like();
    const T one = m.a.front().one_like();
    Mat<T> aug(m.rows, 2 * m.cols, zero);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols + i) = one;
    }
    std::vector<int> pivots = rref_in_place(aug);
    if (static_cast<int>(pivots.size()) != m.rows || pivots.back() >= m.cols)
        throw std::invalid_argument("mat_inverse: singular matrix");
    Mat<T> inv(m.rows, m.cols, zero);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) inv.at(i, j) = aug.at(i, m.cols + j);
    return inv;
}

template <class T>
Mat<T> mat_mul(const Mat<T>& x, const Mat<T>& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: dimension mismatch");
    if (x.a.empty() && y.a.empty()) {
        Mat<T> z;
        z.rows = x.rows;
        z.cols = y.cols;
        if (z.rows != 0 && z.cols != 0) throw std::invalid_argument("mat_mul: no element to derive zero from");
        return z;
    }
    Mat<T> z(x.rows, y.cols, x.a.empty() ? y.a.front().zero_like() : x.a.front().zero_like());
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const T& xi = x.at(i, k);
            if (xi.is_zero()) continue;
            for (int j = 0; j < y.cols; ++j) z.at(i, j) += xi * y.at(k, j);
        }
    return z;
}

template <class T>
std::vector<T> mat_apply(const Mat<T>& m, const std::vector<T>& v) {
    if (m.cols != static_cast<int>(v.size())) throw std::invalid_argument("mat_apply: dimension mismatch");
    std::vector<T> out(static_cast<size_t>(m.rows), v.empty() ? m.a.front().zero_like() : v.front().zero_like());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (!m.at(i, j).is_zero()) out[i] += m.at(i, j) * v[j];
    return out;
}

/// In-place reduced row echelon form. Returns the pivot column per pivot row.
template <class T>
std::vector<int> rref_in_place(Mat<T>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (!m.at(i, c).is_zero()) { p = i; break; }
        if (p < 0) continue;
        m.swap_rows(r, p);
        T inv = m.at(r, c).inverse();
        for (int k = 0; k < m.cols; ++k) m.at(r, k) = m.at(r, k) * inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            T f = m.at(i, c);
            for (int k = 0; k < m.cols; ++k) m.at(i, k) -= f * m.at(r, k);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
int rank(Mat<T> m) {
    return static_cast<int>(rref_in_place(m).size());
}

/// Basis of the right nullspace {x : m x = 0}, one vector per row.
template <class T>
Mat<T> nullspace(Mat<T> m, const T& one) {
    const T zero = one.zero_like();
    std::vector<int> pivots = rref_in_place(m);
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    int free_count = m.cols - static_cast<int>(pivots.size());
    Mat<T> basis(free_count, m.cols, zero);
    int b = 0;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[static_cast<size_t>(c)]) continue;
        basis.at(b, c) = one;
        for (int r = 0; r < static_cast<int>(pivots.size()); ++r)
            basis.at(b, pivots[static_cast<size_t>(r)]) = -m.at(r, c);
        ++b;
    }
    return basis;
}

template <class T>
T det(Mat<T> m) {
    if (m.rows != m.cols) throw std::invalid_argument("det: square matrix required");
    if (m.rows == 0) throw std::invalid_argument("det: empty matrix");
    T result = m.a.front().one_like();
    for (int c = 0; c < m.cols; ++c) {
        int p = -1;
        for (int i = c; i < m.rows; ++i)
            if (!m.at(i, c).is_zero()) { p = i; break; }
        if (p < 0) return m.a.front().zero_like();
        if (p != c) { m.swap_rows(c, p); result = -result; }
        result = result * m.at(c, c);
        T inv = m.at(c, c).inverse();
        for (int i = c + 1; i < m.rows; ++i) {
            if (m.at(i, c).is_zero()) continue;
            T f = m.at(i, c) * inv;
            for (int k = c; k < m.cols; ++k) m.at(i, k) -= f * m.at(c, k);
        }
    }
    return result;
}

/// Solve x·rows = v for RREF `rows`; returns (coefficients, ok).
/// Coefficients are read off the pivot columns, then verified.
template <class T>
std::pair<std::vector<T>, bool> express_in_rref(const Mat<T>& rref, const std::vector<int>& pivots,
                                                const std::vector<T>& v) {
    std::vector<T> coeff;
    coeff.reserve(pivots.size());
    for (size_t r = 0; r < pivots.size(); ++r) coeff.push_back(v[static_cast<size_t>(pivots[r])]);
    std::vector<T> rest = v;
    for (size_t r = 0; r < pivots.size(); ++r)
        for (int k = 0; k < rref.cols; ++k) rest[static_cast<size_t>(k)] -= coeff[r] * rref.at(static_cast<int>(r), k);
    for (const T& x : rest)
        if (!x.is_zero()) return {coeff, false};
    return {coeff, true};
}

} // namespace weil
