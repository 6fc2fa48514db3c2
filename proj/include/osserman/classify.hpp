#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "osserman/curvature.hpp"
#include "osserman/grassmann.hpp"
#include "osserman/jacobi.hpp"
#include "osserman/linalg.hpp"
#include "osserman/polynomial.hpp"

namespace osserman {

/// Characteristic polynomial of J_R(sigma): the eigenvalue fingerprint
/// whose constancy over a Grassmannian is the Osserman property.
inline Polynomial spectral_fingerprint(const AlgebraicCurvatureTensor& t, const Subspace& s) {
    return char_poly(jacobi_subspace(t, s).matrix());
}

/// Conjugacy-class fingerprint of J_R(sigma): constancy over a Grassmannian
/// is the Jordan Osserman property.
inline JordanFingerprint jordan_fingerprint_of(const AlgebraicCurvatureTensor& t,
                                               const Subspace& s) {
    return jordan_fingerprint(jacobi_subspace(t, s).matrix());
}

enum class VerdictKind {
    RefutedWithWitness,       // two same-type subspaces with different fingerprints: a certificate
    ConsistentAfterNSamples,  // every evaluated fingerprint agreed: evidence, not a proof
    CertifiedByIdentity,      // reserved for verdicts forced by an exact identity; never
                              // produced by the sampling engine
};

inline std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::RefutedWithWitness: return "refuted-with-witness";
        case VerdictKind::ConsistentAfterNSamples: return "consistent-after-samples";
        case VerdictKind::CertifiedByIdentity: return "certified-by-identity";
    }
    return "?";
}

/// The two same-type subspaces that separate, with their fingerprints in
/// canonical rendering; recomputing the fingerprints from the stored
/// subspaces reproduces the inequality.
struct RefutationWitness {
    Subspace sigma1;
    Subspace sigma2;
    std::string fingerprint1;
    std::string fingerprint2;
};

struct Verdict {
    VerdictKind kind = VerdictKind::ConsistentAfterNSamples;
    std::size_t samples_used = 0;         // random samples evaluated
    std::size_t subspaces_evaluated = 0;  // total: coordinate + witness + random
    std::optional<RefutationWitness> witness;

    bool refuted() const { return kind == VerdictKind::RefutedWithWitness; }
};

enum class TestMode { Osserman, Jordan };

struct ScanOptions {
    std::size_t samples = 50;
    std::uint64_t seed = 1;
    std::size_t height = 3;
    std::size_t coordinate_cap = 20;  // max coordinate subspaces enumerated per cell
    std::size_t max_tries = 10000;    // sampler rejection budget per subspace
};

namespace detail {

/// Lexicographic k-subsets of {1..n}, at most cap of them.
inline std::vector<std::vector<std::size_t>> index_combinations(std::size_t n, std::size_t k,
                                                                std::size_t cap) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i + 1;
    while (out.size() < cap) {
        out.push_back(c);
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

struct CellEvaluation {
    Verdict osserman;
    Verdict jordan;
};

/// Walks one cell's subspace stream — coordinate subspaces, then the
/// witness pair when the tensor carries a phi_a tag, then seeded random
/// samples — and compares fingerprints for the requested modes. The first
/// disagreeing pair becomes the stored witness.
inline CellEvaluation evaluate_cell(const AlgebraicCurvatureTensor& t, const AdmissiblePair& cell,
                                    const ScanOptions& opts, bool want_osserman, bool want_jordan) {
    const Signature& sig = t.signature();

    struct ModeState {
        bool active = false;
        bool refuted = false;
        std::optional<Subspace> first;
        std::string first_fp;
        Verdict verdict;
    };
    ModeState oss, jor;
    oss.active = want_osserman;
    jor.active = want_jordan;

    auto consider = [&](const Subspace& s, bool is_random_sample) {
        std::optional<Matrix> j;
        std::optional<Polynomial> chi;
        auto ensure_chi = [&]() -> const Polynomial& {
            if (!j) j = jacobi_subspace(t, s).matrix();
            if (!chi) chi = char_poly(*j);
            return *chi;
        };
        auto feed = [&](ModeState& state, auto&& fingerprint) {
            if (!state.active || state.refuted) return;
            std::string fp = fingerprint();
            ++state.verdict.subspaces_evaluated;
            if (is_random_sample) ++state.verdict.samples_used;
            if (!state.first) {
                state.first = s;
                state.first_fp = std::move(fp);
            } else if (fp != state.first_fp) {
                state.refuted = true;
                state.verdict.kind = VerdictKind::RefutedWithWitness;
                state.verdict.witness = RefutationWitness{*state.first, s, state.first_fp, fp};
            }
        };
        feed(oss, [&] { return ensure_chi().to_string(); });
        feed(jor, [&] {
            const Polynomial& chi = ensure_chi();  // also materializes j
            return jordan_fingerprint(*j, chi).to_string();
        });
    };
    auto all_done = [&]() {
        return (!oss.active || oss.refuted) && (!jor.active || jor.refuted);
    };

    // coordinate subspaces of the cell's type, lexicographic, capped
    const auto timelike_choices = index_combinations(sig.p(), cell.r, opts.coordinate_cap);
    const auto spacelike_choices = index_combinations(sig.q(), cell.s, opts.coordinate_cap);
    std::size_t coord_count = 0;
    for (const auto& tl : timelike_choices) {
        for (const auto& sl : spacelike_choices) {
            if (coord_count >= opts.coordinate_cap || all_done()) break;
            consider(coordinate_subspace(sig, tl, sl), false);
            ++coord_count;
        }
        if (coord_count >= opts.coordinate_cap || all_done()) break;
    }

    // explicit witness constructions, available for the phi_a family
    if (!all_done() && t.phi_a_parameter()) {
        if (auto w = witness_pair(sig, *t.phi_a_parameter(), cell)) {
            consider(w->sigma1, false);
            if (!all_done()) consider(w->sigma2, false);
        }
    }

    // seeded random subspaces
    for (std::size_t i = 0; i < opts.samples && !all_done(); ++i) {
        const std::uint64_t cell_seed = derive_seed(opts.seed, cell.r, cell.s, i);
        consider(sample_subspace(sig, cell, cell_seed, opts.height, opts.max_tries), true);
    }

    return {oss.verdict, jor.verdict};
}

}  // namespace detail

/// Tests whether the fingerprint of J_R(.) is constant over the evaluated
/// portion of Gr_{r,s}: coordinate subspaces first, then the explicit
/// witness pair when one is defined for the tensor, then `samples` seeded
/// random subspaces. A refutation is a mathematical certificate; a
/// consistent verdict is sampling evidence only.
inline Verdict test_type(const AlgebraicCurvatureTensor& t, const AdmissiblePair& target,
                         TestMode mode, const ScanOptions& opts = {}) {
    if (!is_admissible(t.signature(), target))
        throw std::invalid_argument("test_type: target type " + target.to_string() +
                                    " is not admissible on " + t.signature().to_string());
    if (opts.samples == 0) throw std::invalid_argument("test_type: need at least one sample");
    detail::CellEvaluation ev = detail::evaluate_cell(t, target, opts, mode == TestMode::Osserman,
                                                      mode == TestMode::Jordan);
    return mode == TestMode::Osserman ? ev.osserman : ev.jordan;
}

struct DualityCheckResult {
    bool pass = false;
    Rational constant;  // the c that was checked
    Matrix defect;      // J(sigma) + J(sigma_perp) - c*Id when failing
};

/// Verifies J_R(sigma) + J_R(sigma_perp) = c * Id entrywise exactly.
inline DualityCheckResult duality_check(const AlgebraicCurvatureTensor& t, const Subspace& s,
                                        const Rational& c) {
    const std::size_t n = t.signature().dimension();
    if (s.dimension() == 0 || s.dimension() >= n)
        throw std::invalid_argument(
            "duality_check: subspace must be proper and nonzero (complement degenerates)");
    Matrix sum = jacobi_subspace(t, s).matrix() +
                 jacobi_subspace(t, orthogonal_complement(s)).matrix();
    Matrix defect = sum - c * Matrix::identity(n);
    if (defect.is_zero()) return {true, c, Matrix()};
    return {false, c, std::move(defect)};
}

struct GridCell {
    Verdict osserman;
    Verdict jordan;
};

/// Verdict table over all admissible (r,s); the two inadmissible corners
/// (0,0) and (p,q) are implicit.
struct GridReport {
    Signature signature;
    std::string tensor_description;
    ScanOptions options;
    std::map<AdmissiblePair, GridCell> cells;
};

inline GridReport grid_scan(const AlgebraicCurvatureTensor& t, std::string tensor_description,
                            const ScanOptions& opts = {}) {
    if (opts.samples == 0) throw std::invalid_argument("grid_scan: need at least one sample");
    GridReport report{t.signature(), std::move(tensor_description), opts, {}};
    for (const AdmissiblePair& cell : admissible_pairs(t.signature())) {
        detail::CellEvaluation ev = detail::evaluate_cell(t, cell, opts, true, true);
        report.cells.emplace(cell, GridCell{std::move(ev.osserman), std::move(ev.jordan)});
    }
    return report;
}

/// The classification pattern predicted for the phi_a family: which
/// admissible types carry a constant Jordan form. Used as the oracle that
/// grid_scan results are compared against.
struct ExpectedGrid {
    Signature signature;
    std::size_t a;
    std::map<AdmissiblePair, bool> jordan_osserman;
};

inline ExpectedGrid expected_grid(const Signature& sig, std::size_t a) {
    if (a == 0 || 2 * a > std::min(sig.p(), sig.q()))
        throw std::invalid_argument("expected_grid: need 1 <= a with 2a <= min(p,q)");
    const std::size_t p = sig.p(), q = sig.q();

    // stated for p <= q; the p > q statement is the mirror image
    auto star_normalized = [a](std::size_t p_, std::size_t q_, std::size_t r, std::size_t s) {
        if (2 * a < p_) return (r == p_ && s == 0) || (r == 0 && s == q_);
        if (p_ < q_) return s == 0 || s == q_;
        return r == 0 || r == p_ || s == 0 || s == q_;
    };

    ExpectedGrid grid{sig, a, {}};
    for (const AdmissiblePair& cell : admissible_pairs(sig)) {
        const bool star = (p <= q) ? star_normalized(p, q, cell.r, cell.s)
                                   : star_normalized(q, p, cell.s, cell.r);
        grid.jordan_osserman.emplace(cell, star);
    }
    return grid;
}

/// Cells where a scan disagrees with the expected pattern: a starred cell
/// must be consistent in Jordan mode, an unstarred cell must carry a
/// refutation certificate, and every cell must be consistent in Osserman
/// mode. Empty result means the scan matches.
inline std::vector<std::string> expected_grid_mismatches(const GridReport& report,
                                                         const ExpectedGrid& expected) {
    std::vector<std::string> out;
    if (!(report.signature == expected.signature)) {
        out.push_back("signature mismatch");
        return out;
    }
    for (const auto& [cell, star] : expected.jordan_osserman) {
        auto it = report.cells.find(cell);
        if (it == report.cells.end()) {
            out.push_back("missing cell " + cell.to_string());
            continue;
        }
        const GridCell& gc = it->second;
        if (gc.osserman.refuted())
            out.push_back("cell " + cell.to_string() +
                          ": eigenvalue fingerprint refuted, expected constant");
        if (star && gc.jordan.refuted())
            out.push_back("cell " + cell.to_string() + ": expected constant Jordan form, refuted");
        if (!star && !gc.jordan.refuted())
            out.push_back("cell " + cell.to_string() +
                          ": expected a refutation certificate, none found");
    }
    return out;
}

}  // namespace osserman
