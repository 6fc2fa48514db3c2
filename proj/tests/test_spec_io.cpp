#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <osserman/cli.hpp>
#include <osserman/render.hpp>
#include <osserman/tensor_spec.hpp>

using namespace osserman;

namespace {

std::filesystem::path write_temp_spec(const std::string& name, const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << body;
    return path;
}

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run_command(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("tensor specs parse to validated tensors") {
    SECTION("constant sectional curvature") {
        auto spec = TensorSpec::parse(R"({"signature":[0,3],"tensor":{"kind":"constant-sectional"}})");
        CHECK(spec.tensor() == r_id(Signature(0, 3)));
        CHECK(spec.description() == "constant-sectional on (0,3)");
        CHECK_FALSE(spec.phi_a_parameter().has_value());
    }
    SECTION("phi-a family") {
        auto spec = TensorSpec::parse(R"({"signature":[4,4],"tensor":{"kind":"phi-a","a":2}})");
        CHECK(spec.tensor() == r_phi_a(Signature(4, 4), 2));
        CHECK(spec.phi_a_parameter() == 2);
    }
    SECTION("standard and matrix skew maps") {
        auto spec = TensorSpec::parse(
            R"({"signature":[0,2],"tensor":{"kind":"skew","phi":{"kind":"matrix","entries":[[0,-1],[1,0]]}}})");
        CHECK(spec.tensor()(0, 1, 1, 0) == 3);
        auto std_spec = TensorSpec::parse(
            R"({"signature":[0,4],"tensor":{"kind":"skew","phi":{"kind":"standard","square":"-1"}}})");
        CHECK(std_spec.tensor() == r_phi(standard_phi(Signature(0, 4), -1)));
    }
    SECTION("dense components with rational strings") {
        auto spec = TensorSpec::parse(R"({
            "signature":[1,1],
            "tensor":{"kind":"dense","components":[
                {"i":0,"j":1,"k":1,"l":0,"value":"-1/2"},
                {"i":1,"j":0,"k":0,"l":1,"value":"-1/2"},
                {"i":0,"j":1,"k":0,"l":1,"value":"1/2"},
                {"i":1,"j":0,"k":1,"l":0,"value":"1/2"}
            ]}})");
        CHECK(spec.tensor()(0, 1, 1, 0) == make_rational(-1, 2));
    }
    SECTION("linear combinations") {
        auto spec = TensorSpec::parse(R"({
            "signature":[0,4],
            "tensor":{"kind":"linear-combination","terms":[
                {"coef":"1","base":{"kind":"constant-sectional"}},
                {"coef":"1","base":{"kind":"skew","phi":{"kind":"standard","square":"-1"}}}
            ]}})");
        Signature sig(0, 4);
        CHECK(spec.tensor() ==
              linear_combination({{1, r_id(sig)}, {1, r_phi(standard_phi(sig, -1))}}));
        CHECK_FALSE(spec.phi_a_parameter().has_value());
    }
}

TEST_CASE("tensor spec rejections") {
    CHECK_THROWS_AS(TensorSpec::parse("not json"), SpecError);
    CHECK_THROWS_AS(TensorSpec::parse(R"({"tensor":{"kind":"constant-sectional"}})"), SpecError);
    CHECK_THROWS_AS(TensorSpec::parse(R"({"signature":[0],"tensor":{"kind":"constant-sectional"}})"),
                    SpecError);
    CHECK_THROWS_AS(TensorSpec::parse(R"({"signature":[0,1],"tensor":{"kind":"constant-sectional"}})"),
                    SpecError);
    CHECK_THROWS_AS(TensorSpec::parse(R"({"signature":[0,3],"tensor":{"kind":"mystery"}})"),
                    SpecError);
    CHECK_THROWS_AS(TensorSpec::parse(R"({"signature":[4,4],"tensor":{"kind":"phi-a","a":3}})"),
                    SpecError);  // 2a > min(p,q)
    CHECK_THROWS_AS(TensorSpec::parse(R"({"signature":[4,4],"tensor":{"kind":"phi-a","a":0}})"),
                    SpecError);
    // floating point values are rejected everywhere
    CHECK_THROWS_AS(
        TensorSpec::parse(
            R"({"signature":[1,1],"tensor":{"kind":"dense","components":[{"i":0,"j":1,"k":1,"l":0,"value":0.5}]}})"),
        SpecError);
    // a lone dense component violates antisymmetry
    try {
        TensorSpec::parse(
            R"({"signature":[0,3],"tensor":{"kind":"dense","components":[{"i":0,"j":1,"k":2,"l":1,"value":"1"}]}})");
        FAIL("expected SpecError");
    } catch (const SpecError& e) {
        CHECK(std::string(e.what()).find("antisymmetry") != std::string::npos);
    }
    // duplicate dense entries
    CHECK_THROWS_AS(
        TensorSpec::parse(
            R"({"signature":[1,1],"tensor":{"kind":"dense","components":[{"i":0,"j":1,"k":1,"l":0,"value":"1"},{"i":0,"j":1,"k":1,"l":0,"value":"1"}]}})"),
        SpecError);
    // out-of-range index
    CHECK_THROWS_AS(
        TensorSpec::parse(
            R"({"signature":[1,1],"tensor":{"kind":"dense","components":[{"i":0,"j":1,"k":1,"l":2,"value":"1"}]}})"),
        SpecError);
}

TEST_CASE("canonical rendering round-trips every spec kind") {
    const std::vector<std::string> specs = {
        R"({"signature":[0,3],"tensor":{"kind":"constant-sectional"}})",
        R"({"signature":[4,4],"tensor":{"kind":"phi-a","a":2}})",
        R"({"signature":[0,2],"tensor":{"kind":"skew","phi":{"kind":"matrix","entries":[[0,"-1/2"],["1/2",0]]}}})",
        R"({"signature":[2,2],"tensor":{"kind":"skew","phi":{"kind":"standard","square":"+1"}}})",
        R"({"signature":[1,1],"tensor":{"kind":"dense","components":[
            {"i":0,"j":1,"k":1,"l":0,"value":"-1"},{"i":1,"j":0,"k":0,"l":1,"value":"-1"},
            {"i":0,"j":1,"k":0,"l":1,"value":"1"},{"i":1,"j":0,"k":1,"l":0,"value":"1"}]}})",
        R"({"signature":[0,4],"tensor":{"kind":"linear-combination","terms":[
            {"coef":"2/3","base":{"kind":"constant-sectional"}},
            {"coef":-1,"base":{"kind":"skew","phi":{"kind":"standard","square":"-1"}}}]}})",
    };
    for (const std::string& text : specs) {
        TensorSpec original = TensorSpec::parse(text);
        TensorSpec reparsed = TensorSpec::parse(original.render());
        CHECK(reparsed.tensor() == original.tensor());
        CHECK(reparsed.render() == original.render());
    }
}

TEST_CASE("grid rendering") {
    auto tensor = r_phi_a(Signature(2, 2), 1);
    ScanOptions opts;
    opts.samples = 5;
    GridReport report = grid_scan(tensor, "phi-a(a=1) on (2,2)", opts);

    SECTION("text layout puts s=q on top and marks the corners inadmissible") {
        std::string text = render_grid(report, GridFormat::Text, true);
        CHECK(text.find("s=2 | * * -") != std::string::npos);
        CHECK(text.find("s=1 | * o *") != std::string::npos);
        CHECK(text.find("s=0 | - * *") != std::string::npos);
        std::string pretty = render_grid(report, GridFormat::Text, false);
        CHECK(pretty.find("★") != std::string::npos);
        CHECK(pretty.find("−") != std::string::npos);
    }
    SECTION("corners-only picture on (4,4), a=1") {
        auto corner_tensor = r_phi_a(Signature(4, 4), 1);
        ScanOptions small;
        small.samples = 3;
        GridReport corner_report = grid_scan(corner_tensor, "phi-a(a=1) on (4,4)", small);
        std::string text = render_grid(corner_report, GridFormat::Text, true);
        CHECK(text.find("s=4 | * o o o -") != std::string::npos);
        CHECK(text.find("s=3 | o o o o o") != std::string::npos);
        CHECK(text.find("s=1 | o o o o o") != std::string::npos);
        CHECK(text.find("s=0 | - o o o *") != std::string::npos);
    }
    SECTION("markdown emits a table") {
        std::string md = render_grid(report, GridFormat::Markdown, true);
        CHECK(md.find("| s\\\\r |") != std::string::npos);
        CHECK(md.find("| 0 | - | * | * |") != std::string::npos);
    }
    SECTION("json verdicts re-verify from their stored witnesses") {
        Json j = grid_report_to_json(report);
        REQUIRE(j.at("cells").size() == report.cells.size());
        std::size_t witnesses_checked = 0;
        for (const auto& cell : j.at("cells")) {
            for (const char* mode : {"osserman", "jordan"}) {
                const Json& verdict = cell.at(mode);
                if (!verdict.contains("witness")) continue;
                const Json& w = verdict.at("witness");
                auto rebuild = [&](const Json& rows) {
                    std::vector<Vec> basis;
                    for (const auto& row : rows) {
                        Vec v;
                        for (const auto& x : row) v.push_back(parse_rational(x.get<std::string>()));
                        basis.push_back(std::move(v));
                    }
                    return Subspace(tensor.signature(), basis);
                };
                Subspace s1 = rebuild(w.at("sigma1"));
                Subspace s2 = rebuild(w.at("sigma2"));
                std::string fp1, fp2;
                if (std::string(mode) == "osserman") {
                    fp1 = spectral_fingerprint(tensor, s1).to_string();
                    fp2 = spectral_fingerprint(tensor, s2).to_string();
                } else {
                    fp1 = jordan_fingerprint_of(tensor, s1).to_string();
                    fp2 = jordan_fingerprint_of(tensor, s2).to_string();
                }
                CHECK(fp1 == w.at("fingerprint1").get<std::string>());
                CHECK(fp2 == w.at("fingerprint2").get<std::string>());
                CHECK(fp1 != fp2);
                ++witnesses_checked;
            }
        }
        CHECK(witnesses_checked > 0);
    }
}

TEST_CASE("cli exit codes follow the contract") {
    auto phia22 = write_temp_spec("osmn_phia22.json",
                                  R"({"signature":[2,2],"tensor":{"kind":"phi-a","a":1}})");
    auto rid03 = write_temp_spec("osmn_rid03.json",
                                 R"({"signature":[0,3],"tensor":{"kind":"constant-sectional"}})");
    auto broken = write_temp_spec("osmn_broken.json", "{");
    auto bianchi_violation = write_temp_spec(
        "osmn_nonbianchi.json",
        R"({"signature":[0,3],"tensor":{"kind":"dense","components":[{"i":0,"j":1,"k":2,"l":1,"value":"1"}]}})");
    auto lopsided = write_temp_spec("osmn_noneinstein.json", [] {
        Signature sig(0, 4);
        std::vector<Rational> c = r_id(sig).components();
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                for (std::size_t k = 0; k < 2; ++k)
                    for (std::size_t l = 0; l < 2; ++l)
                        c[((i * 4 + j) * 4 + k) * 4 + l] *= 2;
        Json spec;
        spec["signature"] = {0, 4};
        spec["tensor"]["kind"] = "dense";
        Json comps = Json::array();
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                for (std::size_t k = 0; k < 4; ++k)
                    for (std::size_t l = 0; l < 4; ++l) {
                        const Rational& v = c[((i * 4 + j) * 4 + k) * 4 + l];
                        if (v == 0) continue;
                        Json item;
                        item["i"] = i; item["j"] = j; item["k"] = k; item["l"] = l;
                        item["value"] = v.str();
                        comps.push_back(item);
                    }
        spec["tensor"]["components"] = comps;
        return spec.dump();
    }());

    struct Case {
        std::vector<std::string> args;
        int expected;
    };
    const std::vector<Case> cases = {
        {{"check", phia22.string()}, 0},
        {{"check", rid03.string()}, 0},
        {{"check", lopsided.string()}, 0},  // valid tensor, reported as not Einstein
        {{"check", broken.string()}, 2},
        {{"check", bianchi_violation.string()}, 2},
        {{"check", "/nonexistent/path.json"}, 2},
        {{"jacobi", phia22.string(), "--subspace", "t1"}, 0},
        {{"jacobi", phia22.string(), "--subspace", "[[1,0,0,0],[0,0,1,0]]"}, 0},
        {{"jacobi", phia22.string(), "--subspace", "[[1,0,1,0]]"}, 2},  // degenerate
        {{"jacobi", phia22.string(), "--subspace", "x9"}, 2},
        {{"scan", phia22.string(), "--samples", "5", "--expect-theorem24"}, 0},
        {{"scan", rid03.string(), "--samples", "3"}, 0},  // no oracle, plain scan
        {{"scan", rid03.string(), "--samples", "5", "--expect-theorem24"}, 2},
        {{"scan", rid03.string(), "--samples", "5", "--format", "bogus"}, 2},
        {{"scan", phia22.string(), "--samples", "0"}, 2},
        {{"witness", phia22.string(), "--type", "1,1"}, 0},
        {{"witness", phia22.string(), "--type", "1,0"}, 1},  // family is Jordan Osserman there
        {{"witness", phia22.string(), "--type", "9,9"}, 2},
        {{"witness", rid03.string(), "--type", "0,1"}, 2},  // not a phi-a spec
        {{"duality", rid03.string(), "--samples", "10"}, 0},
        {{"duality", lopsided.string(), "--samples", "5"}, 1},  // not Einstein
        {{"nonsense"}, 2},
        {{}, 2},
        {{"--help"}, 0},
    };
    for (const Case& c : cases) {
        CAPTURE(c.args);
        CHECK(run(c.args).exit_code == c.expected);
    }
}

TEST_CASE("cli scan output is deterministic and verifiable") {
    auto phia22 = write_temp_spec("osmn_phia22b.json",
                                  R"({"signature":[2,2],"tensor":{"kind":"phi-a","a":1}})");
    std::vector<std::string> args{"scan", phia22.string(), "--samples", "5",
                                  "--format", "json", "--expect-theorem24"};
    CliResult first = run(args);
    CliResult second = run(args);
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);

    Json report = Json::parse(first.out);
    CHECK(report.at("signature") == Json::array({2, 2}));
    CHECK(report.at("samples") == 5);
    CHECK(report.at("tensor").at("tensor").at("kind") == "phi-a");
}

TEST_CASE("cli witness output names ranks and fingerprints") {
    auto phia44 = write_temp_spec("osmn_phia44.json",
                                  R"({"signature":[4,4],"tensor":{"kind":"phi-a","a":2}})");
    CliResult r = run({"witness", phia44.string(), "--type", "1,1"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("sigma1") != std::string::npos);
    CHECK(r.out.find("expected difference 2") != std::string::npos);
    CHECK(r.out.find("fingerprint1") != std::string::npos);
}

TEST_CASE("cli check reports the einstein constant") {
    auto rid23 = write_temp_spec("osmn_rid23.json",
                                 R"({"signature":[2,3],"tensor":{"kind":"constant-sectional"}})");
    CliResult r = run({"check", rid23.string()});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("Einstein constant: 4") != std::string::npos);
}
