#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "osserman/curvature.hpp"
#include "osserman/grassmann.hpp"
#include "osserman/linalg.hpp"
#include "osserman/matrix.hpp"

namespace osserman {

/// Matrix of a Jacobi operator in the fixed basis, with the inner-product
/// self-adjointness (Jx,y) = (x,Jy) checked exactly at construction.
class JacobiMatrix {
public:
    JacobiMatrix(Signature sig, Matrix m, std::string source)
        : sig_(std::move(sig)), matrix_(std::move(m)), source_(std::move(source)) {
        const std::size_t n = sig_.dimension();
        if (matrix_.rows() != n || matrix_.cols() != n)
            throw std::invalid_argument("JacobiMatrix: matrix size must match the signature");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                if (Rational(sig_.epsilon(j)) * matrix_(j, i) !=
                    Rational(sig_.epsilon(i)) * matrix_(i, j))
                    throw std::invalid_argument("JacobiMatrix: operator is not self-adjoint (" +
                                                source_ + ")");
    }

    const Signature& signature() const { return sig_; }
    const Matrix& matrix() const { return matrix_; }
    const std::string& source() const { return source_; }

private:
    Signature sig_;
    Matrix matrix_;
    std::string source_;
};

/// J_R(v): y -> R(y,v)v. Defined for every v, null and zero included.
inline JacobiMatrix jacobi_vector(const AlgebraicCurvatureTensor& t, const Vec& v) {
    const Signature& sig = t.signature();
    const std::size_t n = sig.dimension();
    if (v.size() != n) throw std::invalid_argument("jacobi_vector: vector size mismatch");

    Matrix m(n, n);
    for (const auto& e : t.nonzero_entries()) {
        if (v[e.j] == 0 || v[e.k] == 0) continue;
        m(e.l, e.i) += Rational(sig.epsilon(e.l)) * e.value * v[e.j] * v[e.k];
    }
    return JacobiMatrix(sig, std::move(m), "J(v)");
}

/// The projective normalization (v,v)^{-1} J_R(v); rejects null lines.
inline JacobiMatrix jacobi_line(const AlgebraicCurvatureTensor& t, const Vec& v) {
    const Rational norm = t.signature().inner(v, v);
    if (norm == 0)
        throw std::domain_error("jacobi_line: vector is null or zero, the line is degenerate");
    JacobiMatrix j = jacobi_vector(t, v);
    return JacobiMatrix(t.signature(), (Rational(1) / norm) * j.matrix(), "J(span{v})");
}

/// Higher-order Jacobi operator J_R(sigma) y = sum_ij h^{ij} R(y,v_i)v_j
/// over the inverse Gram coefficients; basis independent. The empty
/// subspace gives the zero operator.
inline JacobiMatrix jacobi_subspace(const AlgebraicCurvatureTensor& t, const Subspace& s) {
    const Signature& sig = t.signature();
    if (!(s.ambient() == sig))
        throw std::invalid_argument("jacobi_subspace: subspace lives in a different space");
    const std::size_t n = sig.dimension(), k = s.dimension();
    if (k == 0) return JacobiMatrix(sig, Matrix(n, n), "J({0})");

    // The operator is basis independent, so work with the denominator-
    // cleared basis and run everything in integer arithmetic; the single
    // rational division per entry happens at the end.
    detail::IntMatrix w{k, n, std::vector<Integer>(k * n)};
    for (std::size_t i = 0; i < k; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j) l = lcm(l, denominator(s.basis()[i][j]));
        for (std::size_t j = 0; j < n; ++j)
            w(i, j) = numerator(s.basis()[i][j]) * (l / denominator(s.basis()[i][j]));
    }

    detail::IntMatrix gram{k, k, std::vector<Integer>(k * k)};
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            Integer acc = 0;
            for (std::size_t b = 0; b < n; ++b)
                if (w(i, b) != 0 && w(j, b) != 0)
                    acc += Integer(sig.epsilon(b)) * w(i, b) * w(j, b);
            gram(i, j) = acc;
            gram(j, i) = std::move(acc);
        }
    const Integer d = detail::int_det(gram);
    if (d == 0) throw std::domain_error("jacobi_subspace: subspace is degenerate");
    detail::IntMatrix adj = detail::int_adjugate(gram);  // d * inverse Gram

    // coef(b,c) = sum_j u_j[b] w_j[c] with u_j = sum_i adj(i,j) w_i
    detail::IntMatrix coef{n, n, std::vector<Integer>(n * n)};
    std::vector<Integer> u(n);
    for (std::size_t j = 0; j < k; ++j) {
        std::fill(u.begin(), u.end(), Integer(0));
        for (std::size_t i = 0; i < k; ++i) {
            if (adj(i, j) == 0) continue;
            for (std::size_t b = 0; b < n; ++b)
                if (w(i, b) != 0) u[b] += adj(i, j) * w(i, b);
        }
        for (std::size_t b = 0; b < n; ++b) {
            if (u[b] == 0) continue;
            for (std::size_t c = 0; c < n; ++c)
                if (w(j, c) != 0) coef(b, c) += u[b] * w(j, c);
        }
    }

    detail::IntMatrix acc{n, n, std::vector<Integer>(n * n)};
    for (const auto& e : t.integer_nonzero_entries()) {
        const Integer& weight = coef(e.j, e.k);
        if (weight == 0) continue;
        if (sig.epsilon(e.l) > 0)
            acc(e.l, e.i) += e.value * weight;
        else
            acc(e.l, e.i) -= e.value * weight;
    }

    const Integer denom = d * t.component_scale();
    Matrix m(n, n);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t i = 0; i < n; ++i)
            if (acc(l, i) != 0) m(l, i) = make_rational(acc(l, i), denom);
    return JacobiMatrix(sig, std::move(m), "J(sigma)");
}

/// Independent evaluation path for orthonormal bases: the weighted sum
/// eps_1 J(v_1) + ... + eps_k J(v_k). Requires a diagonal +-1 Gram matrix.
inline JacobiMatrix jacobi_subspace_orthonormal(const AlgebraicCurvatureTensor& t,
                                                const Subspace& s) {
    const Signature& sig = t.signature();
    const std::size_t n = sig.dimension(), k = s.dimension();
    Matrix sum(n, n);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            if (i != j && s.gram()(i, j) != 0)
                throw std::invalid_argument("jacobi_subspace_orthonormal: basis is not orthogonal");
        const Rational& eps = s.gram()(i, i);
        if (eps != 1 && eps != -1)
            throw std::invalid_argument("jacobi_subspace_orthonormal: basis is not unit-norm");
        sum += eps * jacobi_vector(t, s.basis()[i]).matrix();
    }
    return JacobiMatrix(sig, std::move(sum), "J(sigma), orthonormal path");
}

/// Outcome of checking sum_i eps_i J(e_i) = c * Id over the full basis.
struct TraceIdentityResult {
    std::optional<Rational> constant;  // engaged exactly when the identity holds
    Matrix defect;                     // S - candidate*Id when it does not

    bool ok() const { return constant.has_value(); }
};

inline TraceIdentityResult check_trace_identity(const AlgebraicCurvatureTensor& t) {
    const Signature& sig = t.signature();
    const std::size_t n = sig.dimension();
    Matrix sum(n, n);
    for (std::size_t i = 0; i < n; ++i)
        sum += Rational(sig.epsilon(i)) * jacobi_vector(t, sig.basis_vector(i)).matrix();

    const Rational candidate = sum(0, 0);
    Matrix defect = sum - candidate * Matrix::identity(n);
    if (defect.is_zero()) return {candidate, Matrix()};
    return {std::nullopt, std::move(defect)};
}

}  // namespace osserman
