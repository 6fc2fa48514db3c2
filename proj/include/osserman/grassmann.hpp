#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "osserman/curvature.hpp"
#include "osserman/linalg.hpp"
#include "osserman/matrix.hpp"

namespace osserman {

/// A subspace given by a rational basis, with the Gram matrix of the
/// ambient inner product cached. The basis must be linearly independent;
/// the subspace itself may be degenerate (null Gram directions), callers
/// that need non-degeneracy check is_degenerate().
class Subspace {
public:
    Subspace(Signature ambient, std::vector<Vec> basis)
        : ambient_(std::move(ambient)), basis_(std::move(basis)) {
        const std::size_t n = ambient_.dimension(), k = basis_.size();
        for (const auto& v : basis_)
            if (v.size() != n)
                throw std::invalid_argument("Subspace: basis vector has wrong dimension");
        if (rank(Matrix::from_rows(basis_)) != k)
            throw std::invalid_argument("Subspace: basis vectors are linearly dependent");
        gram_ = Matrix(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i; j < k; ++j) {
                gram_(i, j) = ambient_.inner(basis_[i], basis_[j]);
                gram_(j, i) = gram_(i, j);
            }
        }
    }

    const Signature& ambient() const { return ambient_; }
    std::size_t dimension() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }
    const Matrix& gram() const { return gram_; }

    bool is_degenerate() const { return dimension() > 0 && det(gram_) == 0; }

    std::string to_string() const {
        std::ostringstream os;
        os << "span{";
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (i) os << ", ";
            os << "(";
            for (std::size_t j = 0; j < basis_[i].size(); ++j)
                os << (j ? "," : "") << basis_[i][j];
            os << ")";
        }
        os << "}";
        return os.str();
    }

private:
    Signature ambient_;
    std::vector<Vec> basis_;
    Matrix gram_;
};

/// Inertia (negative, positive, zero) of the induced inner product; a
/// subspace of type (r,s) reports (r, s, 0).
inline InertiaCounts subspace_signature(const Subspace& s) {
    return gram_signature(s.gram());
}

/// Span equality, decided on reduced row echelon forms of the bases.
inline bool same_span(const Subspace& a, const Subspace& b) {
    if (!(a.ambient() == b.ambient()) || a.dimension() != b.dimension()) return false;
    return rref(Matrix::from_rows(a.basis())) == rref(Matrix::from_rows(b.basis()));
}

/// Exact orthogonal complement; for non-degenerate input the complement has
/// type (p-r, q-s) and V splits as a direct sum.
inline Subspace orthogonal_complement(const Subspace& s) {
    if (s.is_degenerate())
        throw std::domain_error("orthogonal_complement: subspace is degenerate");
    const Signature& sig = s.ambient();
    const std::size_t n = sig.dimension(), k = s.dimension();
    Matrix a(k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = s.basis()[i][j] * sig.epsilon(j);
    return Subspace(sig, kernel_basis(a));
}

struct AdmissiblePair {
    std::size_t r = 0;
    std::size_t s = 0;

    auto operator<=>(const AdmissiblePair&) const = default;

    std::string to_string() const {
        return "(" + std::to_string(r) + "," + std::to_string(s) + ")";
    }
};

/// (r,s) with 0 <= r <= p, 0 <= s <= q, 1 <= r+s <= dim V - 1: the types
/// whose Grassmannian is non-empty and not a single point.
inline bool is_admissible(const Signature& sig, const AdmissiblePair& t) {
    return t.r <= sig.p() && t.s <= sig.q() && t.r + t.s >= 1 &&
           t.r + t.s <= sig.dimension() - 1;
}

inline std::vector<AdmissiblePair> admissible_pairs(const Signature& sig) {
    std::vector<AdmissiblePair> out;
    for (std::size_t r = 0; r <= sig.p(); ++r)
        for (std::size_t s = 0; s <= sig.q(); ++s)
            if (is_admissible(sig, {r, s})) out.push_back({r, s});
    return out;
}

/// Span of named basis vectors (1-based labels); the Gram matrix is
/// diagonal +-1, so these come with an orthonormal basis by construction.
inline Subspace coordinate_subspace(const Signature& sig,
                                    const std::vector<std::size_t>& timelike,
                                    const std::vector<std::size_t>& spacelike) {
    if (timelike.empty() && spacelike.empty())
        throw std::invalid_argument("coordinate_subspace: empty index sets");
    std::set<std::size_t> seen;
    std::vector<Vec> basis;
    for (std::size_t i : timelike) {
        if (i < 1 || i > sig.p())
            throw std::invalid_argument("coordinate_subspace: timelike index out of range");
        if (!seen.insert(i - 1).second)
            throw std::invalid_argument("coordinate_subspace: repeated index");
        basis.push_back(sig.basis_vector(i - 1));
    }
    for (std::size_t i : spacelike) {
        if (i < 1 || i > sig.q())
            throw std::invalid_argument("coordinate_subspace: spacelike index out of range");
        if (!seen.insert(sig.p() + i - 1).second)
            throw std::invalid_argument("coordinate_subspace: repeated index");
        basis.push_back(sig.basis_vector(sig.p() + i - 1));
    }
    return Subspace(sig, std::move(basis));
}

/// splitmix64: the fixed 64-bit mixing sequence behind all sampling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Integer in [-bound, bound].
    long long next_bounded(std::uint64_t bound) {
        return static_cast<long long>(next() % (2 * bound + 1)) - static_cast<long long>(bound);
    }

private:
    std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
}  // namespace detail

/// Deterministic per-cell, per-sample seed: mix(master, r, s, index).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
    std::uint64_t x = detail::mix64(master);
    x = detail::mix64(x ^ a);
    x = detail::mix64(x ^ b);
    x = detail::mix64(x ^ c);
    return x;
}

struct SamplingError : std::runtime_error {
    SamplingError(std::size_t tries, const std::string& what) : std::runtime_error(what), tries(tries) {}
    std::size_t tries;
};

/// Draws a subspace of exactly the target type with integer basis entries
/// in [-height, height], deterministically from the seed.
///
/// Vectors are drawn one at a time and rejected unless every leading
/// principal minor of the partial Gram matrix stays nonzero with a sign
/// pattern that fits inside (r,s) (Jacobi's minor rule for the inertia), so
/// the completed basis has rank r+s and signature exactly (r,s). Proposals
/// start as uniform entries in [-height, height]; after a fixed budget the
/// sampler switches to anchored proposals (one +-height coordinate of the
/// still-needed causal kind plus entries in [-1,1]), which keeps maximal
/// definite types reachable in a handful of tries. A stuck prefix is
/// dropped after 200 consecutive rejections.
inline Subspace sample_subspace(const Signature& sig, const AdmissiblePair& target,
                                std::uint64_t seed, std::size_t height = 3,
                                std::size_t max_tries = 10000) {
    if (!is_admissible(sig, target))
        throw std::invalid_argument("sample_subspace: target type " + target.to_string() +
                                    " is not admissible on " + sig.to_string());
    if (height == 0) throw std::invalid_argument("sample_subspace: height must be positive");

    const std::size_t n = sig.dimension(), k = target.r + target.s;
    const std::size_t uniform_budget = std::min<std::size_t>(1000, max_tries / 2);
    const std::size_t backtrack_after = 200;
    SplitMix64 gen(seed);

    using IVec = std::vector<long long>;
    auto inner_ll = [&](const IVec& x, const IVec& y) {
        long long acc = 0;
        for (std::size_t i = 0; i < n; ++i)
            acc += (i < sig.p() ? -1 : 1) * x[i] * y[i];
        return acc;
    };

    std::vector<IVec> basis;
    std::vector<std::vector<long long>> gram;  // accepted Gram, grown a row at a time
    std::vector<Integer> minors{1};            // leading principal minors of the accepted Gram
    std::size_t negatives = 0;                 // sign changes in the minor sequence
    std::size_t tries = 0, stuck = 0;

    while (basis.size() < k) {
        if (++tries > max_tries)
            throw SamplingError(max_tries,
                                "sample_subspace: exhausted " + std::to_string(max_tries) +
                                    " tries for type " + target.to_string() + " on " +
                                    sig.to_string() + "; consider raising height");

        IVec v(n);
        if (tries <= uniform_budget) {
            for (std::size_t i = 0; i < n; ++i) v[i] = gen.next_bounded(height);
        } else {
            const bool need_time = negatives < target.r;
            const bool need_space = basis.size() - negatives < target.s;
            const bool pick_time = need_time && (!need_space || (gen.next() & 1));
            const std::size_t anchor = pick_time ? gen.next() % sig.p()
                                                 : sig.p() + gen.next() % sig.q();
            const long long anchor_value =
                (gen.next() & 1) ? static_cast<long long>(height) : -static_cast<long long>(height);
            for (std::size_t i = 0; i < n; ++i) v[i] = gen.next_bounded(1);
            v[anchor] = anchor_value;
        }

        // bordered Gram determinant of basis + v
        const std::size_t m = basis.size() + 1;
        std::vector<long long> border(m);
        for (std::size_t i = 0; i + 1 < m; ++i) border[i] = inner_ll(basis[i], v);
        border[m - 1] = inner_ll(v, v);
        detail::IntMatrix g{m, m, std::vector<Integer>(m * m)};
        for (std::size_t i = 0; i + 1 < m; ++i)
            for (std::size_t j = 0; j + 1 < m; ++j) g(i, j) = gram[i][j];
        for (std::size_t i = 0; i < m; ++i) {
            g(i, m - 1) = border[i];
            g(m - 1, i) = border[i];
        }
        const Integer d = detail::int_det(std::move(g));

        bool accept = d != 0;
        std::size_t new_negatives = negatives;
        if (accept) {
            const bool flips = (d < 0) != (minors.back() < 0);
            if (flips) ++new_negatives;
            accept = new_negatives <= target.r && (m - new_negatives) <= target.s;
        }
        if (accept) {
            basis.push_back(std::move(v));
            for (std::size_t i = 0; i + 1 < m; ++i) gram[i].push_back(border[i]);
            gram.push_back(std::move(border));
            minors.push_back(d);
            negatives = new_negatives;
            stuck = 0;
        } else if (++stuck >= backtrack_after && !basis.empty()) {
            basis.pop_back();
            gram.pop_back();
            for (auto& row : gram) row.pop_back();
            const bool flipped = (minors.back() < 0) != (minors[minors.size() - 2] < 0);
            minors.pop_back();
            if (flipped) --negatives;
            stuck = 0;
        }
    }

    std::vector<Vec> rational_basis(k, Vec(n));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) rational_basis[i][j] = basis[i][j];
    return Subspace(sig, std::move(rational_basis));
}

/// The rank-separating subspace pair for the phi_a curvature tensors: two
/// subspaces of the same type whose higher-order Jacobi operators have
/// different ranks, built from the explicit coordinate constructions (and
/// their timelike/spacelike mirrored variants). Empty when no construction
/// covers the requested type, which happens exactly where the family is
/// Jordan Osserman.
struct WitnessPair {
    Subspace sigma1;
    Subspace sigma2;
    int lemma_case = 0;        // 1: rank gap next to a dead direction; 2: the 2a = p construction
    bool mirrored = false;     // roles of timelike and spacelike exchanged
    std::size_t expected_rank_difference = 0;
};

namespace detail {

/// Basis-vector recipe in the original orientation: (timelike?, 1-based index).
using CoordSpec = std::vector<std::pair<bool, std::size_t>>;

struct WitnessRecipe {
    CoordSpec sigma1, sigma2;
    int lemma_case;
    std::size_t rank_difference;
};

inline std::optional<WitnessRecipe> witness_recipe(std::size_t p, std::size_t q, std::size_t a,
                                                   std::size_t r, std::size_t s, int which_case) {
    const bool case1 = which_case == 1 && 2 * a < p && r >= 1 && r + 1 <= p;
    const bool case2 = which_case == 2 && 2 * a == p && r >= 1 && r + 1 <= p && s >= 1 && s + 1 <= q;
    if (!case1 && !case2) return std::nullopt;

    CoordSpec tau;
    for (std::size_t i = 2; i <= r; ++i) tau.push_back({true, i});
    for (std::size_t i = 2; i <= s; ++i) tau.push_back({false, i});

    WitnessRecipe recipe;
    recipe.sigma1 = tau;
    recipe.sigma2 = tau;
    if (case1) {
        recipe.lemma_case = 1;
        recipe.rank_difference = 1;
        recipe.sigma1.push_back({true, 1});
        recipe.sigma2.push_back({true, p});
        if (s >= 1) {
            recipe.sigma1.push_back({false, 1});
            recipe.sigma2.push_back({false, 1});
        }
    } else {
        recipe.lemma_case = 2;
        recipe.sigma1.push_back({true, 1});
        recipe.sigma1.push_back({false, 1});
        if (r >= s) {
            recipe.sigma2.push_back({true, r + 1});
            recipe.sigma2.push_back({false, 1});
            recipe.rank_difference = 2;
        } else {
            recipe.sigma2.push_back({true, 1});
            recipe.sigma2.push_back({false, s + 1});
            recipe.rank_difference = (s < p) ? 2 : 1;
        }
    }
    return recipe;
}

inline Subspace realize(const Signature& sig, const CoordSpec& spec, bool mirrored) {
    std::vector<std::size_t> timelike, spacelike;
    for (const auto& [is_timelike, index] : spec)
        ((is_timelike != mirrored) ? timelike : spacelike).push_back(index);
    return coordinate_subspace(sig, timelike, spacelike);
}

}  // namespace detail

inline std::optional<WitnessPair> witness_pair(const Signature& sig, std::size_t a,
                                               const AdmissiblePair& target) {
    if (a == 0 || 2 * a > std::min(sig.p(), sig.q()))
        throw std::invalid_argument("witness_pair: need 1 <= a with 2a <= min(p,q)");
    if (!is_admissible(sig, target))
        throw std::invalid_argument("witness_pair: target type is not admissible");

    // Original orientation first, then the mirrored statement; the first
    // applicable construction wins, so certificates are deterministic.
    for (int which_case : {1, 2}) {
        for (bool mirrored : {false, true}) {
            const std::size_t p = mirrored ? sig.q() : sig.p();
            const std::size_t q = mirrored ? sig.p() : sig.q();
            const std::size_t r = mirrored ? target.s : target.r;
            const std::size_t s = mirrored ? target.r : target.s;
            auto recipe = detail::witness_recipe(p, q, a, r, s, which_case);
            if (!recipe) continue;
            return WitnessPair{detail::realize(sig, recipe->sigma1, mirrored),
                               detail::realize(sig, recipe->sigma2, mirrored),
                               recipe->lemma_case, mirrored, recipe->rank_difference};
        }
    }
    return std::nullopt;
}

}  // namespace osserman
