#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "osserman/matrix.hpp"
#include "osserman/polynomial.hpp"
#include "osserman/rational.hpp"

namespace osserman {

namespace detail {

/// Row-major integer matrix used by the fraction-free routines.
struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Integer> e;

    Integer& operator()(std::size_t i, std::size_t j) { return e[i * cols + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return e[i * cols + j]; }
};

/// Scales each row by the lcm of its denominators. Preserves rank and,
/// for square input, multiplies the determinant by the returned factor.
inline IntMatrix scale_rows(const Matrix& m, Integer* det_factor = nullptr) {
    IntMatrix r{m.rows(), m.cols(), std::vector<Integer>(m.rows() * m.cols())};
    Integer factor = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, denominator(m(i, j)));
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = numerator(m(i, j)) * (l / denominator(m(i, j)));
        factor *= l;
    }
    if (det_factor) *det_factor = factor;
    return r;
}

/// Scales the whole matrix by one common factor (needed when the scaled
/// matrix must still be a polynomial image of the original).
inline IntMatrix scale_uniform(const Matrix& m, Integer& scale) {
    scale = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) scale = lcm(scale, denominator(m(i, j)));
    IntMatrix r{m.rows(), m.cols(), std::vector<Integer>(m.rows() * m.cols())};
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = numerator(m(i, j)) * (scale / denominator(m(i, j)));
    return r;
}

/// Bareiss fraction-free elimination with row/column pivot search.
inline std::size_t int_rank(IntMatrix m) {
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
        std::size_t pivot = r;
        while (pivot < m.rows && m(pivot, col) == 0) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(r, j), m(pivot, j));
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            for (std::size_t j = col + 1; j < m.cols; ++j)
                m(i, j) = (m(r, col) * m(i, j) - m(i, col) * m(r, j)) / prev;
            m(i, col) = 0;
        }
        prev = m(r, col);
        ++r;
    }
    return r;
}

inline bool int_is_zero(const IntMatrix& m) {
    for (const auto& x : m.e)
        if (x != 0) return false;
    return true;
}

inline IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r{a.rows, b.cols, std::vector<Integer>(a.rows * b.cols)};
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t l = 0; l < a.cols; ++l) {
            const Integer& ail = a(i, l);
            if (ail == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                if (b(l, j) != 0) r(i, j) += ail * b(l, j);
        }
    return r;
}

/// [rank(b^0), rank(b^1), ...] with the shared stop rule: stop on zero or
/// on the first repeat (the repeat is kept).
inline std::vector<std::size_t> int_rank_powers(const IntMatrix& b) {
    std::vector<std::size_t> seq{b.rows};
    IntMatrix p = b;
    while (true) {
        std::size_t r = int_rank(p);
        bool stop = (r == 0) || (r == seq.back());
        seq.push_back(r);
        if (stop) break;
        p = int_mul(p, b);
    }
    if (seq.size() >= 2 && seq.back() == 0 && seq[seq.size() - 2] == 0) seq.pop_back();
    return seq;
}

inline IntMatrix int_minor(const IntMatrix& m, std::size_t row, std::size_t col) {
    IntMatrix r{m.rows - 1, m.cols - 1, std::vector<Integer>((m.rows - 1) * (m.cols - 1))};
    for (std::size_t i = 0, ri = 0; i < m.rows; ++i) {
        if (i == row) continue;
        for (std::size_t j = 0, rj = 0; j < m.cols; ++j) {
            if (j == col) continue;
            r(ri, rj) = m(i, j);
            ++rj;
        }
        ++ri;
    }
    return r;
}

inline Integer int_det(IntMatrix m);

/// adj with m * adj = det(m) * Id; for 1x1 input the adjugate is [1].
inline IntMatrix int_adjugate(const IntMatrix& m) {
    const std::size_t n = m.rows;
    IntMatrix adj{n, n, std::vector<Integer>(n * n)};
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Integer c = int_det(int_minor(m, i, j));
            adj(j, i) = ((i + j) % 2 == 0) ? c : -c;
        }
    return adj;
}

inline Integer int_det(IntMatrix m) {
    const std::size_t n = m.rows;
    if (n == 0) return 1;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m(pivot, k) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

}  // namespace detail

/// Rank of the column span, by fraction-free (Bareiss) elimination.
inline std::size_t rank(const Matrix& m) {
    if (m.empty()) return 0;
    return detail::int_rank(detail::scale_rows(m));
}

/// Exact determinant, by fraction-free elimination.
inline Rational det(const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("det: matrix must be square");
    if (m.rows() == 0) return 1;
    Integer factor;
    detail::IntMatrix s = detail::scale_rows(m, &factor);
    return make_rational(detail::int_det(std::move(s)), factor);
}

/// Characteristic polynomial det(x*Id - m), monic of degree n, by the
/// Faddeev-LeVerrier recurrence run in integer arithmetic on a common
/// denominator image. Intended working range is dimension <= 16; all
/// shipped computations need <= 12.
inline Polynomial char_poly(const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("char_poly: matrix must be square");
    const std::size_t n = m.rows();
    if (n == 0) return Polynomial{1};

    Integer scale;
    detail::IntMatrix a = detail::scale_uniform(m, scale);

    std::vector<Integer> c(n + 1);
    c[n] = 1;
    detail::IntMatrix mk = a;
    auto tr = [&](const detail::IntMatrix& x) {
        Integer t = 0;
        for (std::size_t i = 0; i < n; ++i) t += x(i, i);
        return t;
    };
    c[n - 1] = -tr(mk);
    for (std::size_t k = 2; k <= n; ++k) {
        // mk <- a * (mk + c[n-k+1] * Id)
        detail::IntMatrix shifted = mk;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c[n - k + 1];
        if (detail::int_is_zero(shifted)) break;  // remaining coefficients all vanish
        mk = detail::int_mul(a, shifted);
        c[n - k] = -tr(mk) / Integer(k);  // exact
    }

    std::vector<Rational> coeffs(n + 1);
    Integer spow = 1;  // scale^(n-k) built from the top down
    for (std::size_t k = n + 1; k-- > 0;) {
        coeffs[k] = make_rational(c[k], spow);
        spow *= scale;
    }
    return Polynomial(std::move(coeffs));
}

/// [rank(m^0), rank(m^1), ...] until the value repeats or reaches zero.
/// Ranks are invariant under scaling, so the powers run in integer
/// arithmetic on a common denominator image.
inline std::vector<std::size_t> rank_sequence(const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("rank_sequence: matrix must be square");
    Integer scale;
    return detail::int_rank_powers(detail::scale_uniform(m, scale));
}

/// Multiset of Jordan block sizes, descending.
using Partition = std::vector<std::size_t>;

/// Jordan block sizes of m at eigenvalue lambda, recovered from the ranks
/// r_k = rank((m - lambda*Id)^k): the number of blocks of size exactly k is
/// r_{k-1} - 2 r_k + r_{k+1}. Empty when lambda is not an eigenvalue.
inline Partition jordan_partition_at(const Matrix& m, const Rational& lambda) {
    if (!m.is_square()) throw std::invalid_argument("jordan_partition_at: matrix must be square");
    const std::size_t n = m.rows();
    Matrix b = m - lambda * Matrix::identity(n);

    Integer scale;
    std::vector<std::size_t> r = detail::int_rank_powers(detail::scale_uniform(b, scale));
    r.push_back(r.back());  // stabilized tail

    Partition part;
    for (std::size_t k = r.size() - 2; k >= 1; --k) {
        // r is monotone and convex, so this never underflows
        std::size_t blocks = r[k - 1] + r[k + 1] - 2 * r[k];
        for (std::size_t i = 0; i < blocks; ++i) part.push_back(k);
    }
    return part;
}

/// Conjugacy-class witness: full Jordan data at every rational eigenvalue,
/// plus rank sequences of f(m)^k for the remaining square-free factors f of
/// the characteristic polynomial (monic, no rational roots, not split
/// further beyond degree 4). Two matrices are similar exactly when their
/// fingerprints compare equal.
struct JordanFingerprint {
    std::size_t dimension = 0;
    std::map<Rational, Partition> rational_part;
    std::map<Polynomial, std::vector<std::size_t>> irreducible_part;

    bool operator==(const JordanFingerprint&) const = default;

    std::string to_string() const {
        std::ostringstream os;
        os << "dim=" << dimension << "; rational{";
        bool first = true;
        for (const auto& [lambda, part] : rational_part) {
            if (!first) os << "; ";
            first = false;
            os << lambda << ":[";
            for (std::size_t i = 0; i < part.size(); ++i) os << (i ? "," : "") << part[i];
            os << "]";
        }
        os << "}";
        if (!irreducible_part.empty()) {
            os << "; irreducible{";
            first = true;
            for (const auto& [f, ranks] : irreducible_part) {
                if (!first) os << "; ";
                first = false;
                os << "(" << f.to_string() << "):[";
                for (std::size_t i = 0; i < ranks.size(); ++i) os << (i ? "," : "") << ranks[i];
                os << "]";
            }
            os << "}";
        }
        return os.str();
    }
};

namespace detail {

inline std::optional<Rational> rational_sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    Integer ns = sqrt(numerator(x)), ds = sqrt(denominator(x));
    if (ns * ns != numerator(x) || ds * ds != denominator(x)) return std::nullopt;
    return make_rational(ns, ds);
}

/// p(x + s)
inline Polynomial shift_argument(const Polynomial& p, const Rational& s) {
    Polynomial x_plus_s{s, 1};
    Polynomial acc;
    for (std::size_t k = p.coefficients().size(); k-- > 0;)
        acc = acc * x_plus_s + Polynomial::constant(p.coeff(k));
    return acc;
}

/// Splits a monic quartic with no rational roots into two monic rational
/// quadratics when possible (via the resolvent cubic of the depressed
/// quartic); empty result means irreducible over the rationals.
inline std::vector<Polynomial> split_quartic(const Polynomial& f) {
    const Rational a = f.coeff(3), b = f.coeff(2), c = f.coeff(1), d = f.coeff(0);
    const Rational s = a / 4;
    // depressed quartic t^4 + p t^2 + q t + r, t = x + s
    const Rational p = b - 3 * a * a / 8;
    const Rational q = c - a * b / 2 + a * a * a / 8;
    const Rational r = d - a * c / 4 + a * a * b / 16 - 3 * a * a * a * a / 256;

    auto assemble = [&](const Rational& u, const Rational& v, const Rational& w)
        -> std::vector<Polynomial> {
        Polynomial f1 = shift_argument(Polynomial{v, u, 1}, s);
        Polynomial f2 = shift_argument(Polynomial{w, -u, 1}, s);
        if (f2 < f1) std::swap(f1, f2);
        return {f1, f2};
    };

    if (q == 0) {
        auto disc = rational_sqrt(p * p - 4 * r);
        if (!disc) return {};
        return assemble(0, (p - *disc) / 2, (p + *disc) / 2);
    }
    Polynomial resolvent{-q * q, p * p - 4 * r, 2 * p, 1};
    for (const Rational& y : rational_roots(resolvent)) {
        if (y <= 0) continue;
        auto u = rational_sqrt(y);
        if (!u) continue;
        const Rational w = (p + y + q / *u) / 2;
        const Rational v = (p + y - q / *u) / 2;
        if (v * w == r) return assemble(*u, v, w);
    }
    return {};
}

inline std::vector<Polynomial> split_rootfree_factor(const Polynomial& g) {
    if (g.degree() == 4) {
        auto parts = split_quartic(g);
        if (!parts.empty()) return parts;
    }
    return {g};
}

}  // namespace detail

/// Overload reusing an already computed characteristic polynomial.
inline JordanFingerprint jordan_fingerprint(const Matrix& m, const Polynomial& p) {
    if (!m.is_square()) throw std::invalid_argument("jordan_fingerprint: matrix must be square");
    JordanFingerprint fp;
    fp.dimension = m.rows();
    if (fp.dimension == 0) return fp;

    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        Polynomial leftover = factor;
        for (const Rational& root : rational_roots(factor)) {
            fp.rational_part[root] = jordan_partition_at(m, root);
            leftover = leftover / Polynomial{-root, 1};
        }
        if (leftover.degree() >= 2)
            for (const Polynomial& g : detail::split_rootfree_factor(leftover.monic()))
                fp.irreducible_part[g] = rank_sequence(g(m));
    }
    return fp;
}

inline JordanFingerprint jordan_fingerprint(const Matrix& m) {
    return jordan_fingerprint(m, char_poly(m));
}

/// Inertia of a symmetric matrix: counts of negative, positive, and zero
/// diagonal entries after exact symmetric congruence diagonalization.
struct InertiaCounts {
    std::size_t negative = 0;
    std::size_t positive = 0;
    std::size_t zero = 0;

    bool operator==(const InertiaCounts&) const = default;
};

inline InertiaCounts gram_signature(Matrix g) {
    if (!g.is_symmetric()) throw std::invalid_argument("gram_signature: matrix must be symmetric");
    const std::size_t n = g.rows();
    InertiaCounts counts;

    auto swap_basis = [&](std::size_t a, std::size_t b) {
        g.swap_rows(a, b);
        for (std::size_t i = 0; i < n; ++i) std::swap(g(i, a), g(i, b));
    };
    auto add_basis = [&](std::size_t a, std::size_t b, const Rational& f) {
        // basis change e_a += f * e_b, applied congruently
        for (std::size_t j = 0; j < n; ++j) g(a, j) += f * g(b, j);
        for (std::size_t i = 0; i < n; ++i) g(i, a) += f * g(i, b);
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (g(i, i) == 0) {
            std::size_t j = i + 1;
            while (j < n && g(j, j) == 0) ++j;
            if (j < n) {
                swap_basis(i, j);
            } else {
                j = i + 1;
                while (j < n && g(i, j) == 0) ++j;
                if (j == n) {  // fully isotropic direction
                    ++counts.zero;
                    continue;
                }
                add_basis(i, j, 1);  // diagonal becomes 2*g(i,j) != 0
            }
        }
        for (std::size_t j = i + 1; j < n; ++j)
            if (g(j, i) != 0) add_basis(j, i, -g(j, i) / g(i, i));
        (g(i, i) > 0 ? counts.positive : counts.negative) += 1;
    }
    return counts;
}

/// Gauss-Jordan inverse; throws on singular input.
inline Matrix inverse(const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: matrix must be square");
    const std::size_t n = m.rows();
    Matrix a = m, inv = Matrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) throw std::domain_error("inverse: singular matrix");
        if (pivot != col) {
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
        }
        const Rational f = Rational(1) / a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= f;
            inv(col, j) *= f;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            const Rational g = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= g * a(col, j);
                inv(i, j) -= g * inv(col, j);
            }
        }
    }
    return inv;
}

/// Reduced row echelon form (canonical for the row span).
inline Matrix rref(Matrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = r;
        while (pivot < rows && m(pivot, col) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r) m.swap_rows(r, pivot);
        const Rational f = Rational(1) / m(r, col);
        for (std::size_t j = col; j < cols; ++j) m(r, j) *= f;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, col) == 0) continue;
            const Rational g = m(i, col);
            for (std::size_t j = col; j < cols; ++j) m(i, j) -= g * m(r, j);
        }
        ++r;
    }
    return m;
}

/// Basis of { x : m x = 0 }, from the reduced row echelon form.
inline std::vector<Vec> kernel_basis(const Matrix& m) {
    const std::size_t cols = m.cols();
    Matrix r = rref(m);

    std::vector<std::optional<std::size_t>> pivot_row(cols);
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < r.rows(); ++col)
        if (r(row, col) != 0) pivot_row[col] = row++;

    std::vector<Vec> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (pivot_row[free]) continue;
        Vec v(cols);
        v[free] = 1;
        for (std::size_t col = 0; col < free; ++col)
            if (pivot_row[col]) v[col] = -r(*pivot_row[col], free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Vectors w_1..w_k with (v_i, w_j) = delta_ij exactly, for the inner
/// product with the given diagonal. Throws if the v_i are dependent.
inline std::vector<Vec> dual_vectors(const std::vector<Vec>& vs, const Vec& metric_diag) {
    const std::size_t k = vs.size(), n = metric_diag.size();
    for (const auto& d : metric_diag)
        if (d == 0) throw std::invalid_argument("dual_vectors: metric must be invertible");
    for (const auto& v : vs)
        if (v.size() != n) throw std::invalid_argument("dual_vectors: vector size mismatch");

    // Solve A W = Id with A(i,.) = metric-weighted v_i; the particular
    // solution A^T (A A^T)^{-1} exists exactly when the v_i are independent.
    Matrix a(k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = vs[i][j] * metric_diag[j];
    Matrix gram = a * a.transpose();
    Matrix gram_inv;
    try {
        gram_inv = inverse(gram);
    } catch (const std::domain_error&) {
        throw std::invalid_argument("dual_vectors: input vectors are linearly dependent");
    }
    Matrix w = a.transpose() * gram_inv;  // n x k, columns are the duals

    std::vector<Vec> out(k, Vec(n));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) out[j][i] = w(i, j);
    return out;
}

}  // namespace osserman
