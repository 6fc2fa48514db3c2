#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "osserman/classify.hpp"
#include "osserman/grassmann.hpp"
#include "osserman/tensor_spec.hpp"

namespace osserman {

enum class GridFormat { Text, Json, Markdown };

namespace detail {

struct GridGlyphs {
    std::string star, circle, dash;
};

inline GridGlyphs glyphs(bool ascii) {
    if (ascii) return {"*", "o", "-"};
    return {"★", "○", "−"};  // the star/circle/minus of the grid pictures
}

inline std::string cell_glyph(const GridReport& report, std::size_t r, std::size_t s,
                              const GridGlyphs& g) {
    auto it = report.cells.find(AdmissiblePair{r, s});
    if (it == report.cells.end()) return g.dash;  // inadmissible corner
    return it->second.jordan.refuted() ? g.circle : g.star;
}

}  // namespace detail

inline Json subspace_to_json(const Subspace& s) {
    Json rows = Json::array();
    for (const Vec& v : s.basis()) {
        Json row = Json::array();
        for (const Rational& x : v) row.push_back(x.str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json verdict_to_json(const Verdict& v) {
    Json j;
    j["kind"] = to_string(v.kind);
    j["samples_used"] = v.samples_used;
    j["subspaces_evaluated"] = v.subspaces_evaluated;
    if (v.witness) {
        Json w;
        w["sigma1"] = subspace_to_json(v.witness->sigma1);
        w["sigma2"] = subspace_to_json(v.witness->sigma2);
        w["fingerprint1"] = v.witness->fingerprint1;
        w["fingerprint2"] = v.witness->fingerprint2;
        j["witness"] = std::move(w);
    }
    return j;
}

/// Full machine-readable report; deterministic field and cell order, so
/// identical scans render byte-identically.
inline Json grid_report_to_json(const GridReport& report, const Json* tensor_spec = nullptr) {
    Json j;
    j["signature"] = {report.signature.p(), report.signature.q()};
    j["tensor"] = tensor_spec ? *tensor_spec : Json(report.tensor_description);
    j["samples"] = report.options.samples;
    j["seed"] = report.options.seed;
    j["height"] = report.options.height;
    j["coordinate_cap"] = report.options.coordinate_cap;
    j["inadmissible"] = Json::array(
        {Json::array({0, 0}), Json::array({report.signature.p(), report.signature.q()})});
    Json cells = Json::array();
    for (const auto& [pair, cell] : report.cells) {
        Json c;
        c["r"] = pair.r;
        c["s"] = pair.s;
        c["osserman"] = verdict_to_json(cell.osserman);
        c["jordan"] = verdict_to_json(cell.jordan);
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    return j;
}

/// The grid picture: r-axis horizontal, s-axis vertical with s decreasing
/// downward, so the printed top-left region is (0,q). A cell shows the
/// Jordan-mode verdict: star = constant Jordan form on everything
/// evaluated, circle = refuted with witness, dash = inadmissible.
inline std::string render_grid_text(const GridReport& report, bool ascii = false) {
    const auto g = detail::glyphs(ascii);
    const std::size_t p = report.signature.p(), q = report.signature.q();
    std::ostringstream os;
    os << report.tensor_description << ", signature " << report.signature.to_string() << "\n";
    os << "samples=" << report.options.samples << " seed=" << report.options.seed
       << " height=" << report.options.height << "\n";
    os << g.star << " = Jordan form constant on all evaluated subspaces (consistent, not a proof)\n"
       << g.circle << " = refuted with a stored witness pair, " << g.dash << " = inadmissible\n\n";

    const std::size_t label_width = std::to_string(q).size() + 2;
    for (std::size_t row = 0; row <= q; ++row) {
        const std::size_t s = q - row;
        std::string label = "s=" + std::to_string(s);
        os << std::string(label_width + 2 - label.size(), ' ') << label << " |";
        for (std::size_t r = 0; r <= p; ++r) os << " " << detail::cell_glyph(report, r, s, g);
        os << "\n";
    }
    os << std::string(label_width + 3, ' ') << " ";
    for (std::size_t r = 0; r <= p; ++r) os << (r ? " " : "") << r;
    os << "  (r)\n";
    return os.str();
}

inline std::string render_grid_markdown(const GridReport& report, bool ascii = false) {
    const auto g = detail::glyphs(ascii);
    const std::size_t p = report.signature.p(), q = report.signature.q();
    std::ostringstream os;
    os << "**" << report.tensor_description << "**, signature " << report.signature.to_string()
       << " (samples=" << report.options.samples << ", seed=" << report.options.seed
       << ", height=" << report.options.height << ")\n\n";
    os << "| s\\\\r |";
    for (std::size_t r = 0; r <= p; ++r) os << " " << r << " |";
    os << "\n|---|";
    for (std::size_t r = 0; r <= p; ++r) os << "---|";
    os << "\n";
    for (std::size_t row = 0; row <= q; ++row) {
        const std::size_t s = q - row;
        os << "| " << s << " |";
        for (std::size_t r = 0; r <= p; ++r)
            os << " " << detail::cell_glyph(report, r, s, g) << " |";
        os << "\n";
    }
    return os.str();
}

inline std::string render_grid(const GridReport& report, GridFormat format, bool ascii = false,
                               const Json* tensor_spec = nullptr) {
    switch (format) {
        case GridFormat::Text: return render_grid_text(report, ascii);
        case GridFormat::Markdown: return render_grid_markdown(report, ascii);
        case GridFormat::Json: return grid_report_to_json(report, tensor_spec).dump(2) + "\n";
    }
    return {};
}

}  // namespace osserman
