#pragma once

// Finite group presentations and their text format.
//
//   file       := header degrees? relator* peripheral?
//   header     := "gens" name+ ";" ("wirtinger" ";")?
//   degrees    := "degrees" integer+ ";"
//   relator    := "rel" word ";"
//   peripheral := "meridian" word ";" "longitude" word ";"
//   word       := "1" | (name ("^" integer)?)+
//
// A capitalized name whose lowercase form is a declared generator (and which
// is not itself declared) denotes the inverse: `X1` == `x1^-1`.

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "torsionlab/detail/lexer.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/free_group.hpp"

namespace torsionlab {

struct Presentation {
    std::vector<std::string> generator_names;
    std::vector<Word> relators;
    std::optional<Word> meridian;
    std::optional<Word> longitude;
    /// epsilon(x_i) = t^{d_i}.
    std::vector<int> abelianization_degrees;
    bool wirtinger = false;

    int n_generators() const { return static_cast<int>(generator_names.size()); }
    bool has_peripheral() const { return meridian.has_value() && longitude.has_value(); }

    /// Degree of epsilon(w).
    int degree(const Word& w) const {
        int d = 0;
        for (const auto& l : w.letters()) d += l.sign * abelianization_degrees.at(static_cast<std::size_t>(l.generator));
        return d;
    }

    /// Index of a generator name, or -1.
    int find_generator(const std::string& name) const {
        for (std::size_t i = 0; i < generator_names.size(); ++i)
            if (generator_names[i] == name) return static_cast<int>(i);
        return -1;
    }
};

/// Canonical serialization: runs of one letter collapse to name^k, the empty word is `1`.
inline std::string format_word(const Word& w, const std::vector<std::string>& names) {
    const auto& ls = w.letters();
    if (ls.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < ls.size();) {
        std::size_t j = i;
        while (j < ls.size() && ls[j] == ls[i]) ++j;
        const long power = static_cast<long>(j - i) * ls[i].sign;
        if (!out.empty()) out += ' ';
        out += names.at(static_cast<std::size_t>(ls[i].generator));
        if (power != 1) out += "^" + std::to_string(power);
        i = j;
    }
    return out;
}

namespace detail {

inline int resolve_generator(const std::vector<std::string>& names, const Token& tok, int& sign) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == tok.text) return static_cast<int>(i);
    if (!tok.text.empty() && std::isupper(static_cast<unsigned char>(tok.text[0]))) {
        std::string lower = tok.text;
        lower[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(lower[0])));
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == lower) {
                sign = -sign;
                return static_cast<int>(i);
            }
    }
    throw ParseError("unknown generator '" + tok.text + "'", tok.line, tok.column);
}

/// Parse a word; stops before `;`, `,` or `)`.
inline Word parse_word(TokenStream& ts, const std::vector<std::string>& names) {
    if (ts.peek().kind == Token::Kind::number && ts.peek().text == "1") {
        ts.next();
        return Word{};
    }
    std::vector<Letter> raw;
    if (ts.peek().kind != Token::Kind::identifier) ts.fail("expected a word");
    while (ts.peek().kind == Token::Kind::identifier) {
        const Token tok = ts.next();
        int sign = 1;
        const int g = resolve_generator(names, tok, sign);
        long power = 1;
        if (ts.accept("^")) power = ts.expect_integer();
        for (long k = 0; k < std::labs(power); ++k) raw.push_back(Letter{g, power < 0 ? -sign : sign});
    }
    return Word(raw);
}

} // namespace detail

inline Presentation parse_presentation(const std::string& text) {
    detail::TokenStream ts(detail::tokenize(text));
    Presentation pres;

    ts.expect_keyword("gens");
    while (ts.peek().kind == detail::Token::Kind::identifier) {
        const auto tok = ts.next();
        if (pres.find_generator(tok.text) >= 0) throw ParseError("duplicate generator '" + tok.text + "'", tok.line, tok.column);
        pres.generator_names.push_back(tok.text);
    }
    if (pres.generator_names.empty()) ts.fail("expected at least one generator name");
    ts.expect(";");
    const int n = pres.n_generators();

    if (ts.peek().is_keyword("wirtinger")) {
        ts.next();
        ts.expect(";");
        pres.wirtinger = true;
    }
    pres.abelianization_degrees.assign(static_cast<std::size_t>(n), 1);
    if (ts.peek().is_keyword("degrees")) {
        const auto kw = ts.next();
        if (pres.wirtinger) throw ParseError("'degrees' is fixed to all ones under 'wirtinger'", kw.line, kw.column);
        for (int i = 0; i < n; ++i) pres.abelianization_degrees[static_cast<std::size_t>(i)] = static_cast<int>(ts.expect_integer());
        ts.expect(";");
    }

    while (ts.peek().is_keyword("rel")) {
        const auto kw = ts.next();
        Word r = detail::parse_word(ts, pres.generator_names);
        ts.expect(";");
        if (pres.wirtinger && pres.degree(r) != 0)
            throw ParseError("relator does not abelianize to the identity", kw.line, kw.column);
        pres.relators.push_back(std::move(r));
    }

    if (ts.peek().is_keyword("meridian")) {
        ts.next();
        pres.meridian = detail::parse_word(ts, pres.generator_names);
        ts.expect(";");
        ts.expect_keyword("longitude");
        pres.longitude = detail::parse_word(ts, pres.generator_names);
        ts.expect(";");
    }
    if (!ts.at_end()) ts.fail("unexpected statement");

    if (pres.wirtinger && static_cast<int>(pres.relators.size()) != n - 1) {
        throw ParseError("wirtinger presentation with " + std::to_string(n) + " generators needs " +
                         std::to_string(n - 1) + " relators, found " + std::to_string(pres.relators.size()));
    }
    return pres;
}

inline std::string serialize_presentation(const Presentation& pres) {
    std::ostringstream os;
    os << "gens";
    for (const auto& g : pres.generator_names) os << ' ' << g;
    os << ";\n";
    if (pres.wirtinger) {
        os << "wirtinger;\n";
    } else {
        os << "degrees";
        for (int d : pres.abelianization_degrees) os << ' ' << d;
        os << ";\n";
    }
    for (const auto& r : pres.relators) os << "rel " << format_word(r, pres.generator_names) << ";\n";
    if (pres.has_peripheral()) {
        os << "meridian " << format_word(*pres.meridian, pres.generator_names) << ";\n";
        os << "longitude " << format_word(*pres.longitude, pres.generator_names) << ";\n";
    }
    return os.str();
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Presentation load_presentation(const std::string& path) { return parse_presentation(read_text_file(path)); }

} // namespace torsionlab
