#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "osserman/classify.hpp"
#include "osserman/render.hpp"
#include "osserman/tensor_spec.hpp"

namespace osserman::cli {

// Exit codes: 0 = success / consistent, 1 = expectation mismatch or an
// unrequested refutation, 2 = invalid input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInvalid = 2;

namespace detail {

inline TensorSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return TensorSpec::parse(buffer.str());
}

/// "t1,t2,s1" coordinate labels, or an inline JSON basis matrix of
/// rationals like [[1,0,"1/2",0],[0,1,0,0]].
inline Subspace parse_subspace_descriptor(const Signature& sig, const std::string& desc) {
    std::size_t first = desc.find_first_not_of(" \t");
    if (first == std::string::npos) throw SpecError("subspace descriptor is empty");

    if (desc[first] == '[') {
        Json j;
        try {
            j = Json::parse(desc);
        } catch (const nlohmann::json::parse_error& e) {
            throw SpecError(std::string("subspace descriptor: invalid JSON: ") + e.what());
        }
        if (!j.is_array() || j.empty())
            throw SpecError("subspace descriptor: expected a non-empty array of basis vectors");
        std::vector<Vec> basis;
        for (const Json& row : j) {
            if (!row.is_array() || row.size() != sig.dimension())
                throw SpecError("subspace descriptor: each basis vector needs " +
                                std::to_string(sig.dimension()) + " entries");
            Vec v;
            for (const Json& x : row) v.push_back(osserman::detail::json_rational(x, "subspace"));
            basis.push_back(std::move(v));
        }
        try {
            return Subspace(sig, std::move(basis));
        } catch (const std::invalid_argument& e) {
            throw SpecError(e.what());
        }
    }

    std::vector<std::size_t> timelike, spacelike;
    std::stringstream ss(desc);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const std::size_t b = token.find_first_not_of(" \t");
        const std::size_t e = token.find_last_not_of(" \t");
        if (b == std::string::npos) throw SpecError("subspace descriptor: empty label");
        token = token.substr(b, e - b + 1);
        if (token.size() < 2 || (token[0] != 't' && token[0] != 's'))
            throw SpecError("subspace descriptor: labels look like t1 or s2, got '" + token + "'");
        std::size_t index = 0;
        try {
            index = std::stoul(token.substr(1));
        } catch (const std::exception&) {
            throw SpecError("subspace descriptor: bad index in '" + token + "'");
        }
        (token[0] == 't' ? timelike : spacelike).push_back(index);
    }
    try {
        return coordinate_subspace(sig, timelike, spacelike);
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
    }
}

inline std::optional<AdmissiblePair> parse_type(const std::string& text) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos) return std::nullopt;
    try {
        return AdmissiblePair{std::stoul(text.substr(0, comma)),
                              std::stoul(text.substr(comma + 1))};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline int cmd_check(const std::string& spec_path, std::ostream& out) {
    TensorSpec spec = load_spec(spec_path);
    out << spec.description() << "\n";
    out << "curvature symmetries: ok\n";
    EinsteinDefect defect{};
    if (auto c = einstein_constant(spec.tensor(), &defect)) {
        out << "Einstein constant: " << *c << "\n";
    } else {
        out << "not Einstein: ricci(" << defect.row << "," << defect.col << ") = "
            << defect.actual << ", expected " << defect.expected << "\n";
    }
    return kExitOk;
}

inline int cmd_jacobi(const std::string& spec_path, const std::string& subspace_desc,
                      std::ostream& out) {
    TensorSpec spec = load_spec(spec_path);
    Subspace sigma = parse_subspace_descriptor(spec.signature(), subspace_desc);
    InertiaCounts type = subspace_signature(sigma);
    out << spec.description() << "\n";
    out << "sigma = " << sigma.to_string() << "\n";
    out << "type: (" << type.negative << "," << type.positive << ")"
        << (type.zero ? " + " + std::to_string(type.zero) + " null directions" : "") << "\n";
    if (sigma.is_degenerate()) throw SpecError("subspace is degenerate, J(sigma) is undefined");

    JacobiMatrix j = jacobi_subspace(spec.tensor(), sigma);
    JordanFingerprint fp = jordan_fingerprint(j.matrix());
    out << "J(sigma) =\n" << j.matrix() << "\n";
    out << "char poly: " << char_poly(j.matrix()) << "\n";
    out << "rank sequence: ";
    const auto seq = rank_sequence(j.matrix());
    for (std::size_t i = 0; i < seq.size(); ++i) out << (i ? "," : "") << seq[i];
    out << "\njordan fingerprint: " << fp.to_string() << "\n";
    return kExitOk;
}

inline int cmd_scan(const std::string& spec_path, const ScanOptions& opts,
                    const std::string& format, bool expect_theorem24, bool ascii,
                    std::ostream& out, std::ostream& err) {
    TensorSpec spec = load_spec(spec_path);
    if (expect_theorem24 && !spec.phi_a_parameter())
        throw SpecError("--expect-theorem24 is only meaningful for phi-a specs");

    GridFormat fmt = GridFormat::Text;
    if (format == "json") fmt = GridFormat::Json;
    else if (format == "md") fmt = GridFormat::Markdown;
    else if (format != "text") throw SpecError("--format must be text, json, or md");

    GridReport report = grid_scan(spec.tensor(), spec.description(), opts);
    out << render_grid(report, fmt, ascii, &spec.to_json());

    if (expect_theorem24) {
        ExpectedGrid expected = expected_grid(spec.signature(), *spec.phi_a_parameter());
        const auto mismatches = expected_grid_mismatches(report, expected);
        if (!mismatches.empty()) {
            err << "scan disagrees with the expected classification pattern:\n";
            for (const auto& m : mismatches) err << "  " << m << "\n";
            return kExitMismatch;
        }
        if (fmt != GridFormat::Json) out << "expected classification pattern: match\n";
    }
    return kExitOk;
}

inline int cmd_witness(const std::string& spec_path, const std::string& type_text,
                       std::ostream& out, std::ostream& err) {
    TensorSpec spec = load_spec(spec_path);
    if (!spec.phi_a_parameter())
        throw SpecError("witness constructions are defined for phi-a specs");
    auto type = parse_type(type_text);
    if (!type) throw SpecError("--type expects r,s");
    if (!is_admissible(spec.signature(), *type))
        throw SpecError("type " + type->to_string() + " is not admissible on " +
                        spec.signature().to_string());

    auto w = witness_pair(spec.signature(), *spec.phi_a_parameter(), *type);
    if (!w) {
        err << "no witness construction covers type " << type->to_string()
            << "; the family is Jordan Osserman there\n";
        return kExitMismatch;
    }
    const Matrix j1 = jacobi_subspace(spec.tensor(), w->sigma1).matrix();
    const Matrix j2 = jacobi_subspace(spec.tensor(), w->sigma2).matrix();
    out << spec.description() << ", type " << type->to_string() << "\n";
    out << "sigma1 = " << w->sigma1.to_string() << "\n";
    out << "sigma2 = " << w->sigma2.to_string() << "\n";
    out << "rank J(sigma1) = " << rank(j1) << ", rank J(sigma2) = " << rank(j2)
        << " (expected difference " << w->expected_rank_difference << ")\n";
    out << "fingerprint1: " << jordan_fingerprint(j1).to_string() << "\n";
    out << "fingerprint2: " << jordan_fingerprint(j2).to_string() << "\n";
    return kExitOk;
}

inline int cmd_duality(const std::string& spec_path, std::size_t samples, std::uint64_t seed,
                       std::size_t height, std::ostream& out, std::ostream& err) {
    TensorSpec spec = load_spec(spec_path);
    TraceIdentityResult trace = check_trace_identity(spec.tensor());
    if (!trace.ok()) {
        err << "tensor is not Einstein; the weighted Jacobi sum is not a multiple of Id:\n"
            << trace.defect << "\n";
        return kExitMismatch;
    }
    const Rational c = *trace.constant;
    const auto pairs = admissible_pairs(spec.signature());
    for (std::size_t i = 0; i < samples; ++i) {
        const AdmissiblePair& type = pairs[i % pairs.size()];
        Subspace sigma = sample_subspace(spec.signature(), type,
                                         derive_seed(seed, type.r, type.s, i), height);
        DualityCheckResult result = duality_check(spec.tensor(), sigma, c);
        if (!result.pass) {
            err << "duality identity fails for sigma = " << sigma.to_string()
                << "\ndefect:\n" << result.defect << "\n";
            return kExitMismatch;
        }
    }
    out << "J(sigma) + J(sigma_perp) = " << c << "*Id on " << samples
        << " sampled subspaces (c = Einstein constant " << c << ")\n";
    return kExitOk;
}

}  // namespace detail

/// Entry point shared by the binary and the tests.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact-arithmetic classification of higher-order Jacobi operators"};
    app.require_subcommand(1);

    std::string spec_path, subspace_desc, type_text, format = "text";
    ScanOptions opts;
    bool expect_theorem24 = false, ascii = false;

    CLI::App* check = app.add_subcommand("check", "validate a tensor spec and report its Einstein constant");
    check->add_option("spec", spec_path, "tensor spec JSON file")->required();

    CLI::App* jacobi = app.add_subcommand("jacobi", "higher-order Jacobi operator on one subspace");
    jacobi->add_option("spec", spec_path, "tensor spec JSON file")->required();
    jacobi->add_option("--subspace", subspace_desc,
                       "coordinate labels like t1,t2,s1 or an inline JSON basis matrix")
        ->required();

    CLI::App* scan = app.add_subcommand("scan", "classify every admissible type (r,s)");
    scan->add_option("spec", spec_path, "tensor spec JSON file")->required();
    scan->add_option("--samples", opts.samples, "random subspaces per cell")->check(CLI::PositiveNumber);
    scan->add_option("--seed", opts.seed, "master seed");
    scan->add_option("--height", opts.height, "basis entry bound for sampling")->check(CLI::PositiveNumber);
    scan->add_option("--format", format, "text, json, or md");
    scan->add_flag("--expect-theorem24", expect_theorem24,
                   "compare against the expected phi-a classification pattern");
    scan->add_flag("--ascii", ascii, "render the grid with ASCII glyphs");

    CLI::App* witness = app.add_subcommand("witness", "rank-separating subspace pair for a phi-a tensor");
    witness->add_option("spec", spec_path, "tensor spec JSON file")->required();
    witness->add_option("--type", type_text, "target type r,s")->required();

    CLI::App* duality = app.add_subcommand("duality", "check J(sigma) + J(sigma_perp) = c*Id on samples");
    duality->add_option("spec", spec_path, "tensor spec JSON file")->required();
    duality->add_option("--samples", opts.samples, "number of sampled subspaces")->check(CLI::PositiveNumber);
    duality->add_option("--seed", opts.seed, "master seed");
    duality->add_option("--height", opts.height, "basis entry bound for sampling")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (check->parsed()) return detail::cmd_check(spec_path, out);
        if (jacobi->parsed()) return detail::cmd_jacobi(spec_path, subspace_desc, out);
        if (scan->parsed())
            return detail::cmd_scan(spec_path, opts, format, expect_theorem24, ascii, out, err);
        if (witness->parsed()) return detail::cmd_witness(spec_path, type_text, out, err);
        if (duality->parsed())
            return detail::cmd_duality(spec_path, opts.samples, opts.seed, opts.height, out, err);
    } catch (const SpecError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const SamplingError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}

}  // namespace osserman::cli
