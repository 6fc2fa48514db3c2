#include <catch2/catch_amalgamated.hpp>

#include <osserman/classify.hpp>

#include "oracles.hpp"

using namespace osserman;

namespace {

ScanOptions fast_options(std::size_t samples = 10) {
    ScanOptions opts;
    opts.samples = samples;
    opts.seed = 1;
    opts.height = 3;
    return opts;
}

AlgebraicCurvatureTensor kaehler_family() {
    Signature sig(0, 4);
    return linear_combination({{1, r_id(sig)}, {1, r_phi(standard_phi(sig, -1))}});
}

}  // namespace

TEST_CASE("spectral fingerprints") {
    SECTION("nilpotent family: always x^n") {
        Signature sig(3, 3);
        auto tensor = r_phi_a(sig, 1);
        for (const AdmissiblePair& type : admissible_pairs(sig)) {
            Subspace sigma = sample_subspace(sig, type, derive_seed(3, type.r, type.s, 0));
            CHECK(spectral_fingerprint(tensor, sigma) == Polynomial::monomial(1, 6));
        }
    }
    SECTION("round sphere line: x(x-1)^2") {
        Signature sig(0, 3);
        Subspace line = coordinate_subspace(sig, {}, {1});
        CHECK(spectral_fingerprint(r_id(sig), line) == Polynomial{0, 1, -2, 1});
    }
    SECTION("whole space: (x-c)^n") {
        Signature sig(2, 2);
        std::vector<Vec> full;
        for (std::size_t i = 0; i < 4; ++i) full.push_back(sig.basis_vector(i));
        Subspace v(sig, full);
        CHECK(spectral_fingerprint(r_id(sig), v) ==
              Polynomial::from_roots({3, 3, 3, 3}));
        CHECK(spectral_fingerprint(r_phi_a(sig, 1), v) == Polynomial::monomial(1, 4));
    }
}

TEST_CASE("jordan fingerprints of jacobi operators") {
    SECTION("maximal timelike subspace of the nilpotent family") {
        Signature sig(4, 4);
        auto tensor = r_phi_a(sig, 2);
        Subspace sigma = coordinate_subspace(sig, {1, 2, 3, 4}, {});
        JordanFingerprint fp = jordan_fingerprint_of(tensor, sigma);
        CHECK(fp.rational_part.at(0) == Partition{2, 2, 2, 2});  // 2^(2a), n = 4a
        CHECK(fp.irreducible_part.empty());

        auto small = r_phi_a(Signature(3, 3), 1);
        Subspace tl = coordinate_subspace(Signature(3, 3), {1, 2, 3}, {});
        JordanFingerprint fp2 = jordan_fingerprint_of(small, tl);
        CHECK(fp2.rational_part.at(0) == Partition{2, 2, 1, 1});  // rank 2a = 2 in dim 6
    }
    SECTION("round sphere line") {
        Signature sig(0, 3);
        JordanFingerprint fp =
            jordan_fingerprint_of(r_id(sig), coordinate_subspace(sig, {}, {1}));
        CHECK(fp.rational_part.at(0) == Partition{1});
        CHECK(fp.rational_part.at(1) == Partition{1, 1});
    }
    SECTION("zero tensor") {
        Signature sig(1, 2);
        auto zero = linear_combination({{0, r_id(sig)}});
        JordanFingerprint fp =
            jordan_fingerprint_of(zero, coordinate_subspace(sig, {1}, {}));
        CHECK(fp.rational_part.at(0) == Partition{1, 1, 1});
    }
}

TEST_CASE("test_type produces certificates and consistency verdicts") {
    SECTION("refutation with a stored witness") {
        auto tensor = r_phi_a(Signature(4, 4), 1);
        Verdict v = test_type(tensor, {1, 0}, TestMode::Jordan, fast_options());
        CHECK(v.kind == VerdictKind::RefutedWithWitness);
        REQUIRE(v.witness.has_value());
        CHECK(v.samples_used == 0);  // certified before random sampling
        // the stored witnesses reproduce their fingerprints
        Matrix j1 = jacobi_subspace(tensor, v.witness->sigma1).matrix();
        Matrix j2 = jacobi_subspace(tensor, v.witness->sigma2).matrix();
        CHECK(jordan_fingerprint(j1).to_string() == v.witness->fingerprint1);
        CHECK(jordan_fingerprint(j2).to_string() == v.witness->fingerprint2);
        CHECK(v.witness->fingerprint1 != v.witness->fingerprint2);
        CHECK(subspace_signature(v.witness->sigma1) == subspace_signature(v.witness->sigma2));
    }
    SECTION("consistency on a certified-by-theory cell") {
        auto tensor = r_phi_a(Signature(4, 4), 2);
        Verdict v = test_type(tensor, {4, 0}, TestMode::Jordan, fast_options());
        CHECK(v.kind == VerdictKind::ConsistentAfterNSamples);
        CHECK(v.samples_used == 10);
        CHECK_FALSE(v.witness.has_value());
    }
    SECTION("eigenvalue mode is consistent everywhere for the nilpotent family") {
        auto tensor = r_phi_a(Signature(4, 4), 1);
        for (const AdmissiblePair& type :
             std::vector<AdmissiblePair>{{1, 0}, {1, 1}, {2, 2}, {0, 3}})
            CHECK(test_type(tensor, type, TestMode::Osserman, fast_options(5)).kind ==
                  VerdictKind::ConsistentAfterNSamples);
    }
    SECTION("inadmissible targets and empty sampling are rejected") {
        auto tensor = r_phi_a(Signature(2, 2), 1);
        CHECK_THROWS_AS(test_type(tensor, {2, 2}, TestMode::Jordan, fast_options()),
                        std::invalid_argument);
        CHECK_THROWS_AS(test_type(tensor, {1, 0}, TestMode::Jordan, fast_options(0)),
                        std::invalid_argument);
    }
}

TEST_CASE("duality identity J(sigma) + J(perp) = c Id") {
    SECTION("constant sectional curvature on (2,2)") {
        Signature sig(2, 2);
        auto tensor = r_id(sig);
        const Rational c = *check_trace_identity(tensor).constant;
        CHECK(c == 3);
        for (const AdmissiblePair& type : admissible_pairs(sig)) {
            Subspace sigma = sample_subspace(sig, type, derive_seed(5, type.r, type.s, 1));
            CHECK(duality_check(tensor, sigma, c).pass);
        }
    }
    SECTION("nilpotent family: J(perp) = -J(sigma)") {
        Signature sig(3, 3);
        auto tensor = r_phi_a(sig, 1);
        for (const AdmissiblePair& type : admissible_pairs(sig)) {
            Subspace sigma = sample_subspace(sig, type, derive_seed(6, type.r, type.s, 2));
            CHECK(duality_check(tensor, sigma, 0).pass);
            CHECK(jacobi_subspace(tensor, orthogonal_complement(sigma)).matrix() ==
                  Rational(-1) * jacobi_subspace(tensor, sigma).matrix());
        }
    }
    SECTION("wrong constant fails with a nonzero defect") {
        Signature sig(2, 2);
        Subspace sigma = coordinate_subspace(sig, {1}, {});
        auto result = duality_check(r_id(sig), sigma, 5);
        CHECK_FALSE(result.pass);
        CHECK_FALSE(result.defect.is_zero());
    }
    SECTION("the whole space is rejected") {
        Signature sig(1, 1);
        std::vector<Vec> full{{1, 0}, {0, 1}};
        CHECK_THROWS_AS(duality_check(r_id(sig), Subspace(sig, full), 1),
                        std::invalid_argument);
        CHECK_THROWS_AS(duality_check(r_id(sig), Subspace(sig, {}), 1),
                        std::invalid_argument);
    }
}

TEST_CASE("expected classification patterns") {
    SECTION("corners only when 2a < p") {
        ExpectedGrid g = expected_grid(Signature(4, 4), 1);
        CHECK(g.jordan_osserman.at({4, 0}));
        CHECK(g.jordan_osserman.at({0, 4}));
        CHECK_FALSE(g.jordan_osserman.at({1, 0}));
        CHECK_FALSE(g.jordan_osserman.at({2, 2}));
        CHECK_FALSE(g.jordan_osserman.at({0, 3}));
        std::size_t stars = 0;
        for (const auto& [cell, star] : g.jordan_osserman) stars += star;
        CHECK(stars == 2);
    }
    SECTION("two horizontal edges when 2a = p < q") {
        ExpectedGrid g = expected_grid(Signature(4, 6), 2);
        for (std::size_t r = 0; r <= 4; ++r) {
            if (r != 4) CHECK(g.jordan_osserman.at({r, 6}));
            if (r != 0) CHECK(g.jordan_osserman.at({r, 0}));
        }
        CHECK_FALSE(g.jordan_osserman.at({2, 3}));
        CHECK_FALSE(g.jordan_osserman.at({0, 1}));
        CHECK_FALSE(g.jordan_osserman.at({4, 5}));
    }
    SECTION("whole boundary when 2a = p = q") {
        ExpectedGrid g = expected_grid(Signature(4, 4), 2);
        for (const auto& [cell, star] : g.jordan_osserman)
            CHECK(star == (cell.r == 0 || cell.r == 4 || cell.s == 0 || cell.s == 4));
    }
    SECTION("mirrored statement for p > q") {
        ExpectedGrid g = expected_grid(Signature(6, 4), 2);
        // 2a = q < p: the starred edges are parallel to the s axis
        for (std::size_t s = 0; s <= 4; ++s) {
            if (s != 4) CHECK(g.jordan_osserman.at({6, s}));
            if (s != 0) CHECK(g.jordan_osserman.at({0, s}));
        }
        CHECK_FALSE(g.jordan_osserman.at({3, 2}));
        CHECK_FALSE(g.jordan_osserman.at({1, 0}));
    }
    SECTION("parameter validation") {
        CHECK_THROWS_AS(expected_grid(Signature(4, 4), 3), std::invalid_argument);
        CHECK_THROWS_AS(expected_grid(Signature(4, 4), 0), std::invalid_argument);
    }
}

TEST_CASE("grid scans match the expected patterns on small signatures") {
    for (auto [p, q, a] : std::vector<std::array<std::size_t, 3>>{
             {2, 2, 1}, {3, 3, 1}, {2, 4, 1}}) {
        Signature sig(p, q);
        auto tensor = r_phi_a(sig, a);
        GridReport report = grid_scan(tensor, "test", fast_options());
        CHECK(expected_grid_mismatches(report, expected_grid(sig, a)).empty());
        CHECK(report.cells.size() == admissible_pairs(sig).size());
    }
}

TEST_CASE("diagonalizable families are Jordan-consistent on every admissible type") {
    std::vector<AlgebraicCurvatureTensor> families;
    families.push_back(r_id(Signature(2, 2)));
    families.push_back(r_phi(standard_phi(Signature(2, 2), 1)));
    families.push_back(r_phi(standard_phi(Signature(2, 2), -1)));
    families.push_back(r_phi(standard_phi(Signature(0, 4), -1)));
    for (const auto& tensor : families) {
        GridReport report = grid_scan(tensor, "family", fast_options());
        for (const auto& [cell, verdicts] : report.cells) {
            CAPTURE(cell.r, cell.s);
            CHECK_FALSE(verdicts.jordan.refuted());
            CHECK_FALSE(verdicts.osserman.refuted());
        }
    }
}

TEST_CASE("verdict logic is monotone across modes") {
    // jordan-consistent implies osserman-consistent; osserman-refuted implies
    // jordan-refuted
    std::vector<AlgebraicCurvatureTensor> zoo;
    zoo.push_back(r_phi_a(Signature(2, 2), 1));
    zoo.push_back(kaehler_family());
    zoo.push_back(r_id(Signature(1, 3)));
    for (const auto& tensor : zoo) {
        GridReport report = grid_scan(tensor, "test", fast_options());
        for (const auto& [cell, verdicts] : report.cells) {
            if (!verdicts.jordan.refuted()) CHECK_FALSE(verdicts.osserman.refuted());
            if (verdicts.osserman.refuted()) CHECK(verdicts.jordan.refuted());
        }
    }
}

TEST_CASE("verdicts are dual-symmetric for the tensors tested") {
    auto tensor = r_phi_a(Signature(4, 4), 1);
    for (const AdmissiblePair& type :
         std::vector<AdmissiblePair>{{1, 0}, {1, 1}, {4, 0}, {2, 1}}) {
        const AdmissiblePair dual{4 - type.r, 4 - type.s};
        Verdict a = test_type(tensor, type, TestMode::Jordan, fast_options(5));
        Verdict b = test_type(tensor, dual, TestMode::Jordan, fast_options(5));
        CHECK(a.kind == b.kind);
    }
}

TEST_CASE("eigenvalue fingerprints depend only on r + s for the nilpotent family") {
    Signature sig(4, 4);
    auto tensor = r_phi_a(sig, 2);
    for (std::size_t k = 1; k <= 7; ++k) {
        std::optional<Polynomial> common;
        for (const AdmissiblePair& type : admissible_pairs(sig)) {
            if (type.r + type.s != k) continue;
            Subspace sigma = sample_subspace(sig, type, derive_seed(8, type.r, type.s, k));
            Polynomial fp = spectral_fingerprint(tensor, sigma);
            if (!common) common = fp;
            CHECK(fp == *common);
        }
    }
}

TEST_CASE("the diagonalizable mixed family separates Jordan types") {
    auto tensor = kaehler_family();

    Verdict line = test_type(tensor, {0, 1}, TestMode::Jordan, fast_options(25));
    CHECK(line.kind == VerdictKind::ConsistentAfterNSamples);
    Verdict hyper = test_type(tensor, {0, 3}, TestMode::Jordan, fast_options(25));
    CHECK(hyper.kind == VerdictKind::ConsistentAfterNSamples);

    Verdict plane = test_type(tensor, {0, 2}, TestMode::Osserman, fast_options(25));
    CHECK(plane.kind == VerdictKind::RefutedWithWitness);
    REQUIRE(plane.witness.has_value());
    // the first two coordinate planes already separate, so no sampling was needed
    CHECK(plane.samples_used == 0);
    CHECK(char_poly(jacobi_subspace(tensor, plane.witness->sigma1).matrix()).to_string() ==
          plane.witness->fingerprint1);
    CHECK(char_poly(jacobi_subspace(tensor, plane.witness->sigma2).matrix()).to_string() ==
          plane.witness->fingerprint2);

    // frozen regression data: the search lands on the invariant plane
    // span{s1,s2} against span{s1,s3}, whose operators have eigenvalues
    // {2,2,4,4} and {1,1,5,5}
    CHECK(same_span(plane.witness->sigma1,
                    coordinate_subspace(tensor.signature(), {}, {1, 2})));
    CHECK(same_span(plane.witness->sigma2,
                    coordinate_subspace(tensor.signature(), {}, {1, 3})));
    CHECK(plane.witness->fingerprint1 == "x^4 - 12*x^3 + 52*x^2 - 96*x + 64");
    CHECK(plane.witness->fingerprint2 == "x^4 - 12*x^3 + 46*x^2 - 60*x + 25");
    CHECK(spectral_fingerprint(tensor, plane.witness->sigma1) ==
          Polynomial::from_roots({2, 2, 4, 4}));
    CHECK(spectral_fingerprint(tensor, plane.witness->sigma2) ==
          Polynomial::from_roots({1, 1, 5, 5}));
}
