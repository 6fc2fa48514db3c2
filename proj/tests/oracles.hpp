#pragma once

// Brute-force reference implementations, independent of the library's
// elimination-based code paths. Test-only.

#include <cstdint>
#include <vector>

#include <osserman/grassmann.hpp>
#include <osserman/linalg.hpp>
#include <osserman/matrix.hpp>
#include <osserman/polynomial.hpp>

namespace oracle {

using osserman::Matrix;
using osserman::Polynomial;
using osserman::Rational;
using osserman::SplitMix64;

/// Cofactor expansion along the first row; T is Rational or Polynomial.
template <typename T>
T cofactor_det(std::size_t n, const std::vector<T>& a) {
    if (n == 0) return T{1};
    if (n == 1) return a[0];
    T acc{};
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<T> minor;
        minor.reserve((n - 1) * (n - 1));
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) minor.push_back(a[i * n + k]);
        T term = a[j] * cofactor_det(n - 1, minor);
        if (j % 2 == 0)
            acc = acc + term;
        else
            acc = acc - term;
    }
    return acc;
}

inline Rational det(const Matrix& m) {
    std::vector<Rational> a;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a.push_back(m(i, j));
    return cofactor_det(m.rows(), a);
}

/// det(x*Id - m) by cofactor expansion over polynomial entries.
inline Polynomial char_poly(const Matrix& m) {
    const std::size_t n = m.rows();
    std::vector<Polynomial> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] = Polynomial{-m(i, j)};
            if (i == j) a[i * n + j] = a[i * n + j] + Polynomial{0, 1};
        }
    return cofactor_det(n, a);
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    out.clear();
    if (k > n) return;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    while (true) {
        out.push_back(c);
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

/// Largest k with a nonvanishing k-by-k minor.
inline std::size_t rank_by_minors(const Matrix& m) {
    std::vector<std::vector<std::size_t>> row_sets, col_sets;
    for (std::size_t k = std::min(m.rows(), m.cols()); k >= 1; --k) {
        subsets(m.rows(), k, row_sets);
        subsets(m.cols(), k, col_sets);
        for (const auto& rs : row_sets)
            for (const auto& cs : col_sets) {
                std::vector<Rational> a;
                for (std::size_t i : rs)
                    for (std::size_t j : cs) a.push_back(m(i, j));
                if (cofactor_det(k, a) != 0) return k;
            }
    }
    return 0;
}

inline Matrix random_int_matrix(SplitMix64& g, std::size_t rows, std::size_t cols,
                                std::uint64_t bound) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = g.next_bounded(bound);
    return m;
}

inline osserman::Vec random_int_vector(SplitMix64& g, std::size_t n, std::uint64_t bound) {
    osserman::Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g.next_bounded(bound);
    return v;
}

}  // namespace oracle
