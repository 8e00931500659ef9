#pragma once
/**
 * @file parse.hpp
 * @brief Text formats: substitution rule files, words and continued
 *        fractions.
 *
 * Substitution files are line based.  `#` starts a comment; blank lines are
 * ignored.  An optional first line `alphabet: tok tok ...` fixes the
 * alphabet and its order; otherwise the alphabet is taken from the rule
 * left-hand sides in order of appearance.  Rules read
 *     letter -> token token ...
 * and the compact form `x->word` is accepted when the unspaced right-hand
 * side can be split into single-character letters (an exact multi-character
 * letter name also matches first); composite letters such as "(1,2)" must
 * be written space separated.
 */

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "morphism.hpp"
#include "sadic.hpp"

namespace subshift {

namespace detail {

inline std::string trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return "";
    auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

/// Resolve one right-hand-side token against the alphabet: an exact letter
/// name wins; otherwise the token may spell out consecutive single-character
/// letters.
inline void append_token(const Alphabet& a, const std::string& tok,
                         std::vector<std::int32_t>& sym, std::size_t lineno) {
    if (auto i = a.find(tok)) {
        sym.push_back(static_cast<std::int32_t>(*i));
        return;
    }
    std::vector<std::int32_t> chars;
    for (char c : tok) {
        auto i = a.find(std::string_view(&c, 1));
        if (!i)
            throw error("line " + std::to_string(lineno) + ": token '" + tok
                        + "' is neither a letter nor a string of single-character letters");
        chars.push_back(static_cast<std::int32_t>(*i));
    }
    sym.insert(sym.end(), chars.begin(), chars.end());
}

}  // namespace detail

/// Parse a substitution rule file (format in the header comment).
inline Morphism parse_substitution(std::string_view text) {
    struct Rule {
        std::string lhs, rhs;
        std::size_t lineno;
    };
    std::vector<Rule> rules;
    std::vector<std::string> alphabet_tokens;
    bool have_alphabet_line = false;

    std::size_t lineno = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string line = detail::trim(raw);
        if (line.empty()) continue;

        if (rules.empty() && !have_alphabet_line && line.rfind("alphabet:", 0) == 0) {
            alphabet_tokens = detail::split_ws(line.substr(9));
            if (alphabet_tokens.empty())
                throw error("line " + std::to_string(lineno) + ": empty alphabet declaration");
            have_alphabet_line = true;
            continue;
        }

        auto arrow = line.find("->");
        if (arrow == std::string::npos)
            throw error("line " + std::to_string(lineno) + ": expected 'letter -> image'");
        std::string lhs = detail::trim(line.substr(0, arrow));
        std::string rhs = detail::trim(line.substr(arrow + 2));
        if (lhs.empty() || lhs.find_first_of(" \t") != std::string::npos)
            throw error("line " + std::to_string(lineno) +
                        ": left-hand side must be a single letter");
        if (rhs.empty())
            throw error("line " + std::to_string(lineno) + ": empty image for letter '" +
                        lhs + "'");
        for (const Rule& r : rules)
            if (r.lhs == lhs)
                throw error("line " + std::to_string(lineno) + ": duplicate rule for letter '" +
                            lhs + "' (first at line " + std::to_string(r.lineno) + ")");
        rules.push_back(Rule{std::move(lhs), std::move(rhs), lineno});
    }
    if (rules.empty()) throw error("no substitution rules found");

    if (!have_alphabet_line)
        for (const Rule& r : rules) alphabet_tokens.push_back(r.lhs);
    Alphabet a{alphabet_tokens};

    std::vector<std::optional<std::size_t>> rule_of(a.size());
    for (std::size_t i = 0; i < rules.size(); ++i) {
        auto idx = a.find(rules[i].lhs);
        if (!idx)
            throw error("line " + std::to_string(rules[i].lineno) + ": letter '" + rules[i].lhs +
                        "' is not in the declared alphabet");
        rule_of[*idx] = i;
    }
    for (std::size_t j = 0; j < a.size(); ++j)
        if (!rule_of[j]) throw error("missing image for letter '" + a.letter(j) + "'");

    std::vector<Word> images;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const Rule& r = rules[*rule_of[j]];
        std::vector<std::int32_t> sym;
        for (const std::string& tok : detail::split_ws(r.rhs))
            detail::append_token(a, tok, sym, r.lineno);
        images.push_back(Word(a, std::move(sym)));
    }
    return Morphism(a, a, std::move(images));
}

/// Parse a word over a known alphabet, with the same token rules as
/// rule right-hand sides.
inline Word parse_word(const Alphabet& a, std::string_view text) {
    std::vector<std::int32_t> sym;
    for (const std::string& tok : detail::split_ws(text)) detail::append_token(a, tok, sym, 0);
    return Word(a, std::move(sym));
}

/// Parse continued-fraction coefficients "0,1,2,2,..." (`;` also accepted as
/// a separator, optional surrounding brackets).
inline ContinuedFraction parse_cf(std::string_view text) {
    std::string s = detail::trim(text);
    if (!s.empty() && s.front() == '[') s.erase(0, 1);
    if (!s.empty() && s.back() == ']') s.pop_back();
    for (char& c : s)
        if (c == ';') c = ',';
    std::vector<std::size_t> a;
    std::istringstream in{s};
    std::string item;
    while (std::getline(in, item, ',')) {
        item = detail::trim(item);
        if (item.empty()) throw error("continued fraction: empty coefficient");
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &pos);
        } catch (const std::exception&) {
            throw error("continued fraction: '" + item + "' is not a coefficient");
        }
        if (pos != item.size())
            throw error("continued fraction: '" + item + "' is not a coefficient");
        a.push_back(v);
    }
    return ContinuedFraction(std::move(a));
}

/// Read a whole file; errors mention the path.
inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return std::move(out).str();
}

inline Morphism load_substitution_file(const std::string& path) {
    try {
        return parse_substitution(read_file(path));
    } catch (const error& e) {
        throw error(path + ": " + e.what());
    }
}

}  // namespace subshift
