#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "osserman/linalg.hpp"
#include "osserman/matrix.hpp"
#include "osserman/rational.hpp"

namespace osserman {

/// Inner-product signature (p,q): p timelike directions of square norm -1
/// followed by q spacelike directions of square norm +1, in the fixed basis
/// order e_1^-, ..., e_p^-, e_1^+, ..., e_q^+.
class Signature {
public:
    Signature(std::size_t p, std::size_t q) : p_(p), q_(q) {
        if (p + q < 2) throw std::invalid_argument("Signature: dimension must be at least 2");
    }

    std::size_t p() const { return p_; }
    std::size_t q() const { return q_; }
    std::size_t dimension() const { return p_ + q_; }

    int epsilon(std::size_t i) const { return i < p_ ? -1 : 1; }

    Vec metric_diagonal() const {
        Vec d(dimension());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = epsilon(i);
        return d;
    }

    Rational inner(const Vec& x, const Vec& y) const {
        if (x.size() != dimension() || y.size() != dimension())
            throw std::invalid_argument("Signature::inner: vector size mismatch");
        Rational acc = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0 && y[i] != 0) acc += Rational(epsilon(i)) * x[i] * y[i];
        return acc;
    }

    Vec basis_vector(std::size_t i) const {
        Vec v(dimension());
        v.at(i) = 1;
        return v;
    }

    /// "t3" for e_3^-, "s1" for e_1^+ (1-based labels).
    std::string basis_label(std::size_t i) const {
        return i < p_ ? "t" + std::to_string(i + 1) : "s" + std::to_string(i - p_ + 1);
    }

    std::string to_string() const {
        return "(" + std::to_string(p_) + "," + std::to_string(q_) + ")";
    }

    bool operator==(const Signature&) const = default;

private:
    std::size_t p_;
    std::size_t q_;
};

/// First curvature identity that fails on a raw component array.
struct SymmetryViolation {
    enum class Identity { Antisymmetry, PairSymmetry, Bianchi };
    Identity identity;
    std::array<std::size_t, 4> index;

    std::string to_string() const {
        const char* name = identity == Identity::Antisymmetry ? "antisymmetry"
                         : identity == Identity::PairSymmetry ? "pair symmetry"
                                                              : "first Bianchi identity";
        std::ostringstream os;
        os << name << " fails at R[" << index[0] << "][" << index[1] << "]["
           << index[2] << "][" << index[3] << "]";
        return os.str();
    }
};

struct SymmetryReport {
    std::vector<SymmetryViolation> violations;  // first failing quadruple per identity

    bool ok() const { return violations.empty(); }

    std::string to_string() const {
        std::string s;
        for (const auto& v : violations) {
            if (!s.empty()) s += "; ";
            s += v.to_string();
        }
        return s.empty() ? "all curvature symmetries hold" : s;
    }
};

/// Checks the two antisymmetries, the pair symmetry, and the first Bianchi
/// identity on a dense n^4 array (components index as R(e_i,e_j,e_k,e_l)).
inline SymmetryReport validate_symmetries(std::size_t n, const std::vector<Rational>& c) {
    if (c.size() != n * n * n * n)
        throw std::invalid_argument("validate_symmetries: component array must have n^4 entries");
    auto at = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) -> const Rational& {
        return c[((i * n + j) * n + k) * n + l];
    };

    SymmetryReport report;
    bool anti = false, pair = false, bianchi = false;
    for (std::size_t i = 0; i < n && !(anti && pair && bianchi); ++i)
        for (std::size_t j = 0; j < n && !(anti && pair && bianchi); ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    if (!anti && at(i, j, k, l) != -at(j, i, k, l)) {
                        report.violations.push_back(
                            {SymmetryViolation::Identity::Antisymmetry, {i, j, k, l}});
                        anti = true;
                    }
                    if (!pair && at(i, j, k, l) != at(k, l, i, j)) {
                        report.violations.push_back(
                            {SymmetryViolation::Identity::PairSymmetry, {i, j, k, l}});
                        pair = true;
                    }
                    if (!bianchi &&
                        at(i, j, k, l) + at(j, k, i, l) + at(k, i, j, l) != 0) {
                        report.violations.push_back(
                            {SymmetryViolation::Identity::Bianchi, {i, j, k, l}});
                        bianchi = true;
                    }
                    if (anti && pair && bianchi) break;
                }
    return report;
}

struct SymmetryError : std::runtime_error {
    explicit SymmetryError(SymmetryReport r)
        : std::runtime_error("curvature symmetries violated: " + r.to_string()),
          report(std::move(r)) {}
    SymmetryReport report;
};

/// Dense algebraic curvature tensor on a signature-(p,q) space. Components
/// are R(e_i,e_j,e_k,e_l) = (R(e_i,e_j)e_k, e_l); the curvature symmetries
/// are enforced at construction, immutability afterwards.
class AlgebraicCurvatureTensor {
public:
    struct Entry {
        std::size_t i, j, k, l;
        Rational value;
    };

    struct IntEntry {
        std::size_t i, j, k, l;
        Integer value;
    };

    /// Validates the identities and freezes the tensor; throws SymmetryError.
    static AlgebraicCurvatureTensor checked(Signature sig, std::vector<Rational> components) {
        SymmetryReport report = validate_symmetries(sig.dimension(), components);
        if (!report.ok()) throw SymmetryError(std::move(report));
        return AlgebraicCurvatureTensor(std::move(sig), std::move(components));
    }

    const Signature& signature() const { return sig_; }
    std::size_t dimension() const { return sig_.dimension(); }

    const Rational& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        const std::size_t n = dimension();
        return comp_[((i * n + j) * n + k) * n + l];
    }

    const std::vector<Rational>& components() const { return comp_; }

    /// Sparse view, fixed at construction; the evaluation hot paths iterate
    /// this instead of the n^4 array.
    const std::vector<Entry>& nonzero_entries() const { return nonzeros_; }

    /// Denominator-cleared sparse view: component = value / component_scale.
    const std::vector<IntEntry>& integer_nonzero_entries() const { return int_nonzeros_; }
    const Integer& component_scale() const { return scale_; }

    /// Set for tensors built by the phi_a family constructor; lets the
    /// classification engine look up the matching witness constructions.
    std::optional<std::size_t> phi_a_parameter() const { return phi_a_; }

    bool operator==(const AlgebraicCurvatureTensor& other) const {
        return sig_ == other.sig_ && comp_ == other.comp_;
    }

private:
    friend AlgebraicCurvatureTensor r_phi_a(const Signature&, std::size_t);

    AlgebraicCurvatureTensor(Signature sig, std::vector<Rational> components)
        : sig_(std::move(sig)), comp_(std::move(components)) {
        const std::size_t n = sig_.dimension();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l) {
                        const Rational& v = (*this)(i, j, k, l);
                        if (v != 0) nonzeros_.push_back({i, j, k, l, v});
                    }
        scale_ = 1;
        for (const Entry& e : nonzeros_) scale_ = lcm(scale_, denominator(e.value));
        for (const Entry& e : nonzeros_)
            int_nonzeros_.push_back(
                {e.i, e.j, e.k, e.l, numerator(e.value) * (scale_ / denominator(e.value))});
    }

    Signature sig_;
    std::vector<Rational> comp_;
    std::vector<Entry> nonzeros_;
    std::vector<IntEntry> int_nonzeros_;
    Integer scale_ = 1;
    std::optional<std::size_t> phi_a_;
};

/// Skew-adjoint endomorphism: (phi x, y) = -(x, phi y), checked exactly on
/// all basis pairs at construction.
class SkewAdjointMap {
public:
    SkewAdjointMap(Signature sig, Matrix matrix) : sig_(std::move(sig)), mat_(std::move(matrix)) {
        const std::size_t n = sig_.dimension();
        if (mat_.rows() != n || mat_.cols() != n)
            throw std::invalid_argument("SkewAdjointMap: matrix size must match the signature");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                // (phi e_i, e_j) = eps_j * mat(j,i)
                if (Rational(sig_.epsilon(j)) * mat_(j, i) !=
                    -Rational(sig_.epsilon(i)) * mat_(i, j))
                    throw std::invalid_argument("SkewAdjointMap: map is not skew-adjoint at basis pair (" +
                                                std::to_string(i) + "," + std::to_string(j) + ")");
            }
    }

    const Signature& signature() const { return sig_; }
    const Matrix& matrix() const { return mat_; }

    Vec apply(const Vec& v) const { return mat_.apply(v); }

private:
    Signature sig_;
    Matrix mat_;
};

/// Constant sectional curvature tensor R(x,y)z = (y,z)x - (x,z)y.
inline AlgebraicCurvatureTensor r_id(const Signature& sig) {
    const std::size_t n = sig.dimension();
    std::vector<Rational> c(n * n * n * n);
    auto at = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) -> Rational& {
        return c[((i * n + j) * n + k) * n + l];
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            // (e_j,e_k)(e_i,e_l) - (e_i,e_k)(e_j,e_l)
            at(i, j, j, i) += Rational(sig.epsilon(j)) * sig.epsilon(i);
            at(i, j, i, j) -= Rational(sig.epsilon(i)) * sig.epsilon(j);
        }
    return AlgebraicCurvatureTensor::checked(sig, std::move(c));
}

/// R_phi(x,y)z = (phi y,z)phi x - (phi x,z)phi y - 2(phi x,y)phi z.
inline AlgebraicCurvatureTensor r_phi(const SkewAdjointMap& phi) {
    const Signature& sig = phi.signature();
    const std::size_t n = sig.dimension();
    const Matrix& m = phi.matrix();

    // b(i,j) = (phi e_i, e_j)
    Matrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = Rational(sig.epsilon(j)) * m(j, i);

    std::vector<Rational> c(n * n * n * n);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l, ++idx)
                    c[idx] = b(j, k) * b(i, l) - b(i, k) * b(j, l) - 2 * b(i, j) * b(k, l);
    return AlgebraicCurvatureTensor::checked(sig, std::move(c));
}

/// The rank-2a nilpotent skew-adjoint block map: for 1-based pair index
/// k <= 2a,
///   phi e_{2i-1}^+- = +-(e_{2i}^- + e_{2i}^+)     (k = 2i-1)
///   phi e_{2i}^+-   = -+(e_{2i-1}^- + e_{2i-1}^+) (k = 2i)
/// and zero beyond 2a. Satisfies phi^2 = 0 and has totally isotropic range.
inline SkewAdjointMap phi_a(const Signature& sig, std::size_t a) {
    const std::size_t p = sig.p(), q = sig.q();
    if (a == 0) throw std::invalid_argument("phi_a: a must be positive");
    if (2 * a > std::min(p, q))
        throw std::invalid_argument("phi_a: need 2a <= min(p,q), got a = " + std::to_string(a) +
                                    " on " + sig.to_string());

    Matrix m(p + q, p + q);
    for (std::size_t k = 1; k <= 2 * a; ++k) {
        const std::size_t partner = (k % 2 == 1) ? k + 1 : k - 1;  // 2i for k = 2i-1, 2i-1 for k = 2i
        const int sign_plus = (k % 2 == 1) ? 1 : -1;               // sign of phi e_k^+
        const std::size_t row_t = partner - 1;                     // e_partner^-
        const std::size_t row_s = p + partner - 1;                 // e_partner^+
        m(row_t, p + k - 1) = sign_plus;                           // column e_k^+
        m(row_s, p + k - 1) = sign_plus;
        m(row_t, k - 1) = -sign_plus;                              // column e_k^-
        m(row_s, k - 1) = -sign_plus;
    }
    return SkewAdjointMap(sig, std::move(m));
}

/// The curvature tensor of phi_a, tagged so the classification engine can
/// recover the construction parameter.
inline AlgebraicCurvatureTensor r_phi_a(const Signature& sig, std::size_t a) {
    AlgebraicCurvatureTensor t = r_phi(phi_a(sig, a));
    t.phi_a_ = a;
    return t;
}

/// Canonical skew-adjoint map with phi^2 = square_sign * Id. square_sign -1
/// pairs basis vectors inside the timelike and inside the spacelike block
/// (both p and q must be even); +1 pairs e_i^- with e_i^+ (needs p = q).
inline SkewAdjointMap standard_phi(const Signature& sig, int square_sign) {
    const std::size_t p = sig.p(), q = sig.q();
    Matrix m(p + q, p + q);
    if (square_sign == -1) {
        if (p % 2 != 0 || q % 2 != 0)
            throw std::invalid_argument("standard_phi: phi^2 = -Id needs p and q both even on " +
                                        sig.to_string());
        const std::pair<std::size_t, std::size_t> blocks[] = {{0, p}, {p, q}};
        for (const auto& [base, count] : blocks) {
            for (std::size_t i = 0; i + 1 < count; i += 2) {
                m(base + i + 1, base + i) = 1;
                m(base + i, base + i + 1) = -1;
            }
        }
    } else if (square_sign == 1) {
        if (p != q)
            throw std::invalid_argument("standard_phi: phi^2 = +Id needs p = q, got " + sig.to_string());
        for (std::size_t i = 0; i < p; ++i) {
            m(p + i, i) = 1;  // phi e_i^- = e_i^+
            m(i, p + i) = 1;  // phi e_i^+ = e_i^-
        }
    } else {
        throw std::invalid_argument("standard_phi: square_sign must be +1 or -1");
    }
    return SkewAdjointMap(sig, std::move(m));
}

/// Componentwise linear combination; all terms must share one signature.
inline AlgebraicCurvatureTensor linear_combination(
    const std::vector<std::pair<Rational, AlgebraicCurvatureTensor>>& terms) {
    if (terms.empty()) throw std::invalid_argument("linear_combination: no terms");
    const Signature& sig = terms.front().second.signature();
    for (const auto& [coef, tensor] : terms)
        if (!(tensor.signature() == sig))
            throw std::invalid_argument("linear_combination: mixed signatures");

    const std::size_t n4 = terms.front().second.components().size();
    std::vector<Rational> c(n4);
    for (const auto& [coef, tensor] : terms) {
        if (coef == 0) continue;
        for (std::size_t idx = 0; idx < n4; ++idx)
            if (tensor.components()[idx] != 0) c[idx] += coef * tensor.components()[idx];
    }
    return AlgebraicCurvatureTensor::checked(sig, std::move(c));
}

/// Ricci contraction rho(y,x) = sum_i eps_i R(y,e_i,e_i,x) as a matrix.
inline Matrix ricci(const AlgebraicCurvatureTensor& t) {
    const std::size_t n = t.dimension();
    Matrix rho(n, n);
    for (const auto& e : t.nonzero_entries())
        if (e.j == e.k) rho(e.i, e.l) += Rational(t.signature().epsilon(e.j)) * e.value;
    return rho;
}

/// The failing Ricci entry when the tensor is not Einstein.
struct EinsteinDefect {
    std::size_t row, col;
    Rational actual;
    Rational expected;
};

/// The constant c with rho = c (.,.) when it exists.
inline std::optional<Rational> einstein_constant(const AlgebraicCurvatureTensor& t,
                                                 EinsteinDefect* defect = nullptr) {
    const Matrix rho = ricci(t);
    const std::size_t n = t.dimension();
    const Rational c = rho(0, 0) / t.signature().epsilon(0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational expected = i == j ? c * t.signature().epsilon(i) : Rational(0);
            if (rho(i, j) != expected) {
                if (defect) *defect = {i, j, rho(i, j), expected};
                return std::nullopt;
            }
        }
    return c;
}

}  // namespace osserman
