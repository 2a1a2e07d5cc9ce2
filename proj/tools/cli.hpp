#pragma once

// Command implementations behind the torsionlab executable. Kept separate
// from main() so tests can drive them with in-memory streams.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "torsionlab/torsionlab.hpp"

namespace torsionlab::cli {

enum class Command { talex, torsion_cw, ruelle_eval, verify_knot };
enum class Format { text, json_lines };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitHypotheses = 2;
inline constexpr int kExitDeviation = 3;

inline constexpr double kDefaultAgreementTolerance = 1e-8;
inline constexpr double kXiModulusTolerance = 1e-10;

struct RunConfig {
    Command command = Command::talex;
    std::string input;
    std::optional<cplx> xi;
    std::optional<std::string> rep_path;
    cplx z = {3.0, 0.0};
    std::vector<double> cutoffs;
    Format format = Format::text;
    std::optional<double> tolerance;
    std::string corpus_dir;
};

/// Whole-string decimal number, or Error naming `what`.
inline double parse_number_arg(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != s.size()) throw Error("malformed " + what + " '" + s + "'");
    return v;
}

/// "re,im" or "re" -> complex.
inline cplx parse_complex_arg(const std::string& s) {
    const auto comma = s.find(',');
    const double re = parse_number_arg(s.substr(0, comma), "complex number");
    const double im = comma == std::string::npos ? 0.0 : parse_number_arg(s.substr(comma + 1), "complex number");
    return {re, im};
}

inline std::vector<double> parse_list_arg(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number_arg(item, "number in list"));
    return out;
}

/// Directory of bundled inputs: $TORSIONLAB_CORPUS, else the configured default.
inline std::string corpus_directory(const std::string& fallback) {
    if (const char* env = std::getenv("TORSIONLAB_CORPUS"); env != nullptr && *env != '\0') return env;
    return fallback;
}

/// An existing path wins; otherwise the name is looked up in the corpus,
/// with and without the given extension.
inline std::string resolve_input(const std::string& path, const std::string& corpus, const std::string& ext) {
    namespace fs = std::filesystem;
    if (fs::is_regular_file(path)) return path;
    if (!corpus.empty()) {
        const fs::path base = fs::path(corpus) / path;
        if (fs::is_regular_file(base)) return base.string();
        fs::path with_ext = base;
        with_ext += ext;
        if (fs::is_regular_file(with_ext)) return with_ext.string();
    }
    throw Error("cannot open '" + path + "'");
}

/// Ordered key/value report rendered as `key: value` lines or one JSON object.
class Record {
public:
    void add(const std::string& key, const std::string& v) { push(key, v, v); }
    void add(const std::string& key, const char* v) { add(key, std::string(v)); }
    void add(const std::string& key, bool v) { push(key, v ? "true" : "false", v); }
    void add(const std::string& key, int v) { push(key, std::to_string(v), v); }
    void add(const std::string& key, std::size_t v) { push(key, std::to_string(v), v); }
    void add(const std::string& key, double v) { push(key, fmt(v), round12(v)); }
    void add(const std::string& key, cplx v) {
        push(key, fmt(v), nlohmann::ordered_json::array({round12(v.real()), round12(v.imag())}));
    }
    void add(const std::string& key, const std::vector<int>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
        push(key, s + "]", v);
    }
    void add(const std::string& key, const std::vector<double>& v) {
        std::string s = "[";
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < v.size(); ++i) {
            s += (i ? ", " : "") + fmt(v[i]);
            arr.push_back(round12(v[i]));
        }
        push(key, s + "]", arr);
    }
    void add(const std::string& key, const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "; " : "") + v[i];
        push(key, s, v);
    }
    void add(const std::string& key, const LaurentPoly& p) {
        const double scale = p.max_abs_coefficient();
        std::string s = "lowest_exponent=" + std::to_string(p.lowest_exponent()) + " coefficients=[";
        nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
            const cplx c = clean(p.coefficients()[i], scale);
            s += (i ? ", " : "") + fmt(c);
            coeffs.push_back({round12(c.real()), round12(c.imag())});
        }
        nlohmann::ordered_json j;
        j["lowest_exponent"] = p.lowest_exponent();
        j["coefficients"] = coeffs;
        push(key, s + "]", j);
    }

    void write(std::ostream& os, Format format) const {
        if (format == Format::json_lines) {
            os << json_.dump() << '\n';
            return;
        }
        for (const auto& [k, v] : text_) os << k << ": " << v << '\n';
    }

    static std::string fmt(double v) {
        if (v == 0.0) v = 0.0; // no "-0"
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }
    static std::string fmt(cplx v) {
        if (v.imag() == 0.0) return fmt(v.real());
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.12g%+.12gi", v.real() == 0.0 ? 0.0 : v.real(), v.imag());
        return buf;
    }

private:
    static double round12(double v) {
        if (v == 0.0 || !std::isfinite(v)) return v == 0.0 ? 0.0 : v;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::strtod(buf, nullptr);
    }
    /// Zero out rounding residue in one component for display.
    static cplx clean(cplx c, double scale) {
        const double eps = 1e-12 * scale;
        return {std::abs(c.real()) <= eps ? 0.0 : c.real(), std::abs(c.imag()) <= eps ? 0.0 : c.imag()};
    }

    template <class J>
    void push(const std::string& key, const std::string& text, J&& json_value) {
        text_.emplace_back(key, text);
        json_[key] = std::forward<J>(json_value);
    }

    std::vector<std::pair<std::string, std::string>> text_;
    nlohmann::ordered_json json_;
};

inline constexpr const char* kHyperbolicityNote =
    "hyperbolicity of the knot complement is assumed, not verified; R(0) is meaningful only for hyperbolic knots";

inline std::string cuspidal_label(const std::optional<bool>& c) {
    if (!c.has_value()) return "unchecked";
    return *c ? "true" : "false";
}

inline UnitaryRep representation_for(const RunConfig& cfg, const std::vector<std::string>& names,
                                     const Presentation* pres) {
    if (cfg.rep_path.has_value()) {
        const auto path = resolve_input(*cfg.rep_path, cfg.corpus_dir, ".rep");
        UnitaryRep rep = parse_representation(read_text_file(path), names);
        rep.validate_images(static_cast<int>(names.size()));
        return rep;
    }
    if (!cfg.xi.has_value()) throw Error("either --xi or --rep is required");
    return pres != nullptr ? character_rep(*pres, *cfg.xi) : character_rep(static_cast<int>(names.size()), *cfg.xi);
}

inline int cmd_talex(const RunConfig& cfg, std::ostream& out) {
    const auto path = resolve_input(cfg.input, cfg.corpus_dir, ".pres");
    const Presentation pres = load_presentation(path);
    const UnitaryRep rep = representation_for(cfg, pres.generator_names, &pres);
    const TwistedAlexanderResult res = twisted_alexander(pres, rep);

    const bool hypotheses = res.ruelle_at_0.has_value();
    Record rec;
    rec.add("command", "talex");
    rec.add("presentation", path);
    rec.add("rank", rep.rank);
    rec.add("pivot", pres.generator_names[static_cast<std::size_t>(res.pivot_column)]);
    rec.add("cuspidal", cuspidal_label(res.cuspidal));
    rec.add("h1_vanishes", res.h1_vanishes);
    rec.add("delta0", res.delta0);
    rec.add("delta1", res.delta1);
    rec.add("abs_delta0_at_1", std::abs(res.delta0_at_1));
    rec.add("abs_delta1_at_1", std::abs(res.delta1_at_1));
    if (hypotheses) {
        rec.add("torsion_at_1", *res.torsion_at_1);
        rec.add("ruelle_at_0", *res.ruelle_at_0);
        rec.add("status", "ok");
    } else {
        rec.add("status", res.cuspidal == std::optional<bool>(false) ? "not cuspidal: special values withheld"
                                                                      : "h^1 does not vanish: special values withheld");
    }
    rec.add("warnings", res.warnings);
    rec.add("note", kHyperbolicityNote);
    rec.write(out, cfg.format);
    return hypotheses ? kExitOk : kExitHypotheses;
}

inline int cmd_verify_knot(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.xi.has_value()) throw Error("verify-knot needs --xi (rank-one character)");
    const cplx xi = *cfg.xi;
    const auto path = resolve_input(cfg.input, cfg.corpus_dir, ".pres");
    const Presentation pres = load_presentation(path);
    const double tol = cfg.tolerance.value_or(kDefaultAgreementTolerance);

    const TwistedAlexanderResult fox = twisted_alexander(pres, character_rep(pres, xi));
    const TwistedAlexanderResult classical = twisted_alexander(pres, trivial_rep(pres));
    const TwistedCWComplex cx = knot_complex(pres);
    const TorsionReport cw = torsion_report(cx, character_rep(pres, xi));

    Record rec;
    rec.add("command", "verify-knot");
    rec.add("presentation", path);
    rec.add("xi", xi);
    rec.add("cuspidal", cuspidal_label(fox.cuspidal));
    rec.add("h1_vanishes", fox.h1_vanishes);
    rec.add("alexander", classical.delta1);
    rec.add("betti", cw.betti);

    bool acyclic = true;
    for (int b : cw.betti) acyclic = acyclic && b == 0;
    if (!fox.ruelle_at_0.has_value() || !acyclic) {
        rec.add("status", fox.cuspidal == std::optional<bool>(false) ? "not cuspidal: special values withheld"
                                                                    : "h^1 does not vanish: special values withheld");
        rec.add("warnings", fox.warnings);
        rec.add("note", kHyperbolicityNote);
        rec.write(out, cfg.format);
        return kExitHypotheses;
    }

    const double r_fox = *fox.ruelle_at_0;
    const double r_cw = cw.torsion * cw.torsion;
    const double r_closed = ruelle_closed_form(classical.delta1, xi);
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); };
    const double deviation = std::max({rel(r_fox, r_cw), rel(r_fox, r_closed), rel(r_cw, r_closed)});

    rec.add("ruelle_at_0_fox", r_fox);
    rec.add("ruelle_at_0_laplacian", r_cw);
    rec.add("ruelle_at_0_closed_form", r_closed);
    rec.add("max_relative_deviation", deviation);
    rec.add("tolerance", tol);
    rec.add("status", deviation <= tol ? "agree" : "deviation exceeds tolerance");
    rec.add("note", kHyperbolicityNote);
    rec.write(out, cfg.format);
    return deviation <= tol ? kExitOk : kExitDeviation;
}

inline int cmd_torsion_cw(const RunConfig& cfg, std::ostream& out) {
    const auto path = resolve_input(cfg.input, cfg.corpus_dir, ".cx");
    const TwistedCWComplex cx = parse_complex(read_text_file(path));
    const UnitaryRep rep = representation_for(cfg, cx.generator_names, nullptr);
    const double defect = twisted_chain_defect(cx, rep);
    if (defect > 1e-8) throw DomainError("representation does not make the twisted boundaries a complex");
    const TorsionReport rpt = torsion_report(cx, rep);

    Record rec;
    rec.add("command", "torsion-cw");
    rec.add("complex", path);
    rec.add("rank", rep.rank);
    rec.add("cells", cx.cells_per_degree);
    rec.add("betti", rpt.betti);
    rec.add("log_torsion", rpt.log_torsion);
    rec.add("torsion", rpt.torsion);
    for (std::size_t p = 0; p < rpt.spectra.size(); ++p) rec.add("spectrum_" + std::to_string(p), rpt.spectra[p]);
    rec.write(out, cfg.format);
    return kExitOk;
}

inline int cmd_ruelle(const RunConfig& cfg, std::ostream& out) {
    const auto path = resolve_input(cfg.input, cfg.corpus_dir, ".spec");
    const LengthSpectrum spec = parse_spectrum(read_text_file(path));
    const double horizon = spec.max_length();
    const double cutoff = cfg.cutoffs.empty() ? horizon : *std::max_element(cfg.cutoffs.begin(), cfg.cutoffs.end());
    const RuelleValue v = truncated_ruelle(spec, cfg.z, cutoff);

    Record rec;
    rec.add("command", "ruelle-eval");
    rec.add("spectrum", path);
    rec.add("rank", spec.rank());
    rec.add("z", cfg.z);
    rec.add("cutoff", cutoff);
    rec.add("entries", spec.entries().size());
    rec.add("entries_used", v.entries_used);
    rec.add("value", v.value);
    rec.add("log_value", v.log_value);
    rec.add("tail_bound", v.tail_bound);
    rec.add("warnings", v.warnings);
    rec.write(out, cfg.format);

    if (!cfg.cutoffs.empty()) {
        for (const auto& row : convergence_report(spec, cfg.z, cfg.cutoffs)) {
            Record r;
            r.add("cutoff", row.cutoff);
            r.add("log_value", row.log_value);
            r.add("entries_used", row.entries_used);
            r.add("difference", row.difference);
            if (cfg.format == Format::text) out << "--\n";
            r.write(out, cfg.format);
        }
    }
    return kExitOk;
}

/// Dispatch; every library or input error maps to exit code 1.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.xi.has_value() && std::abs(std::abs(*cfg.xi) - 1.0) > kXiModulusTolerance)
            throw Error("--xi must have modulus 1");
        switch (cfg.command) {
        case Command::talex: return cmd_talex(cfg, out);
        case Command::verify_knot: return cmd_verify_knot(cfg, out);
        case Command::torsion_cw: return cmd_torsion_cw(cfg, out);
        case Command::ruelle_eval: return cmd_ruelle(cfg, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitInputError;
}

} // namespace torsionlab::cli
