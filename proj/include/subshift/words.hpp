#pragma once
/**
 * @file words.hpp
 * @brief Alphabets, words over an alphabet, and combinatorial scans
 *        (occurrences, factor sets, maximal powers).
 *
 * Words are stored as index sequences against an Alphabet so that alphabet
 * mismatches are detectable instead of silently producing garbage.  Alphabet
 * letters are arbitrary non-empty tokens; single-character alphabets get
 * compact printing ("abaab"), multi-character ones are space separated.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "exact.hpp"  // for subshift::error

namespace subshift {

class Alphabet {
public:
    Alphabet() : d_(std::make_shared<const Data>()) {}

    explicit Alphabet(std::vector<std::string> letters) {
        auto d = std::make_shared<Data>();
        for (std::size_t i = 0; i < letters.size(); ++i) {
            const std::string& t = letters[i];
            if (t.empty()) throw error("alphabet letter must be a non-empty token");
            if (t.find_first_of(" \t\r\n#") != std::string::npos)
                throw error("alphabet letter '" + t + "' contains whitespace or '#'");
            if (!d->index.emplace(t, i).second)
                throw error("duplicate alphabet letter '" + t + "'");
        }
        d->letters = std::move(letters);
        d_ = std::move(d);
    }

    /// Convenience: one letter per character, e.g. from_chars("ab").
    static Alphabet from_chars(std::string_view chars) {
        std::vector<std::string> letters;
        for (char c : chars) letters.emplace_back(1, c);
        return Alphabet(std::move(letters));
    }

    std::size_t size() const { return d_->letters.size(); }
    const std::string& letter(std::size_t i) const {
        if (i >= size()) throw error("alphabet index out of range");
        return d_->letters[i];
    }
    const std::vector<std::string>& letters() const { return d_->letters; }

    std::optional<std::size_t> find(std::string_view token) const {
        auto it = d_->index.find(std::string(token));
        if (it == d_->index.end()) return std::nullopt;
        return it->second;
    }
    std::size_t index_of(std::string_view token) const {
        auto i = find(token);
        if (!i) throw error("letter '" + std::string(token) + "' is not in the alphabet");
        return *i;
    }

    bool single_char() const {
        for (const auto& t : d_->letters)
            if (t.size() != 1) return false;
        return true;
    }

    bool operator==(const Alphabet& o) const {
        return d_ == o.d_ || d_->letters == o.d_->letters;
    }
    bool operator!=(const Alphabet& o) const { return !(*this == o); }

private:
    struct Data {
        std::vector<std::string> letters;
        std::map<std::string, std::size_t, std::less<>> index;
    };
    std::shared_ptr<const Data> d_;  // shared immutable payload, cheap copies
};

class Word {
public:
    Word() = default;

    Word(Alphabet a, std::vector<std::int32_t> symbols)
        : alpha_(std::move(a)), sym_(std::move(symbols)) {
        for (auto s : sym_)
            if (s < 0 || static_cast<std::size_t>(s) >= alpha_.size())
                throw error("word symbol out of alphabet range");
    }

    static Word letter(const Alphabet& a, std::size_t i) {
        if (i >= a.size()) throw error("letter index out of range");
        return Word(a, {static_cast<std::int32_t>(i)});
    }

    /// Parse from characters; requires a single-character alphabet.
    static Word from_string(const Alphabet& a, std::string_view s) {
        if (!a.single_char()) throw error("from_string requires a single-character alphabet");
        std::vector<std::int32_t> sym;
        sym.reserve(s.size());
        for (char c : s) sym.push_back(static_cast<std::int32_t>(a.index_of(std::string_view(&c, 1))));
        return Word(a, std::move(sym));
    }

    const Alphabet& alphabet() const { return alpha_; }
    std::size_t size() const { return sym_.size(); }
    bool empty() const { return sym_.empty(); }
    std::int32_t operator[](std::size_t i) const { return sym_[i]; }
    const std::vector<std::int32_t>& symbols() const { return sym_; }

    Word sub(std::size_t pos, std::size_t len) const {
        if (pos > sym_.size() || len > sym_.size() - pos) throw error("word slice out of range");
        return Word(alpha_, std::vector<std::int32_t>(sym_.begin() + pos, sym_.begin() + pos + len));
    }
    Word prefix(std::size_t len) const { return sub(0, len); }

    Word operator+(const Word& o) const {
        require_same_alphabet(o);
        std::vector<std::int32_t> s = sym_;
        s.insert(s.end(), o.sym_.begin(), o.sym_.end());
        return Word(alpha_, std::move(s));
    }
    Word& operator+=(const Word& o) {
        require_same_alphabet(o);
        sym_.insert(sym_.end(), o.sym_.begin(), o.sym_.end());
        return *this;
    }

    std::size_t count_letter(std::size_t letter) const {
        std::size_t n = 0;
        for (auto s : sym_) n += (static_cast<std::size_t>(s) == letter);
        return n;
    }

    bool operator==(const Word& o) const { return alpha_ == o.alpha_ && sym_ == o.sym_; }
    bool operator!=(const Word& o) const { return !(*this == o); }
    /// Lexicographic order on symbol indices (alphabets must match).
    bool operator<(const Word& o) const {
        require_same_alphabet(o);
        return sym_ < o.sym_;
    }

    std::string str() const {
        std::string out;
        const bool compact = alpha_.single_char();
        for (std::size_t i = 0; i < sym_.size(); ++i) {
            if (!compact && i) out += ' ';
            out += alpha_.letter(static_cast<std::size_t>(sym_[i]));
        }
        return out;
    }

    void require_same_alphabet(const Word& o) const {
        if (alpha_ != o.alpha_) throw error("words use different alphabets");
    }

private:
    Alphabet alpha_;
    std::vector<std::int32_t> sym_;
};

/// True when u is a prefix of w.
inline bool is_prefix(const Word& u, const Word& w) {
    u.require_same_alphabet(w);
    if (u.size() > w.size()) return false;
    return std::equal(u.symbols().begin(), u.symbols().end(), w.symbols().begin());
}

/// All (possibly overlapping) start positions of u in w, ascending.
/// u must be non-empty and over the same alphabet as w.
inline std::vector<std::size_t> occurrences(const Word& u, const Word& w) {
    u.require_same_alphabet(w);
    if (u.empty()) throw error("occurrences: pattern must be non-empty");
    std::vector<std::size_t> pos;
    if (u.size() > w.size()) return pos;
    const auto& us = u.symbols();
    const auto& ws = w.symbols();
    for (std::size_t i = 0; i + us.size() <= ws.size(); ++i)
        if (std::equal(us.begin(), us.end(), ws.begin() + i)) pos.push_back(i);
    return pos;
}

namespace detail {

/// Pack a length-n window of w starting at pos into a byte string usable as a
/// hash/sort key.  Requires an alphabet of at most 255 letters.
inline std::string pack_window(const Word& w, std::size_t pos, std::size_t n) {
    if (w.alphabet().size() > 255) throw error("alphabet too large for packed factor keys");
    std::string key(n, '\0');
    for (std::size_t i = 0; i < n; ++i)
        key[i] = static_cast<char>(static_cast<unsigned char>(w[pos + i]));
    return key;
}

/// Occurrence lists for every distinct length-n factor of w, keyed by the
/// packed factor.  Positions are ascending.
inline std::map<std::string, std::vector<std::size_t>> factor_occurrences(const Word& w,
                                                                          std::size_t n) {
    std::map<std::string, std::vector<std::size_t>> occ;
    if (n == 0 || n > w.size()) return occ;
    for (std::size_t i = 0; i + n <= w.size(); ++i) occ[pack_window(w, i, n)].push_back(i);
    return occ;
}

inline Word unpack_key(const Alphabet& a, const std::string& key) {
    std::vector<std::int32_t> sym(key.size());
    for (std::size_t i = 0; i < key.size(); ++i)
        sym[i] = static_cast<std::int32_t>(static_cast<unsigned char>(key[i]));
    return Word(a, std::move(sym));
}

}  // namespace detail

/// Distinct length-n factors of w in lexicographic order.  n = 0 is an error;
/// n > |w| gives the empty set.
inline std::vector<Word> factor_set(const Word& w, std::size_t n) {
    if (n == 0) throw error("factor_set: factor length must be positive");
    std::vector<Word> out;
    for (const auto& [key, _] : detail::factor_occurrences(w, n))
        out.push_back(detail::unpack_key(w.alphabet(), key));
    return out;
}

/// Factor complexity p(n) of the word: the number of distinct length-n factors.
inline std::size_t complexity(const Word& w, std::size_t n) {
    if (n == 0) throw error("complexity: factor length must be positive");
    return detail::factor_occurrences(w, n).size();
}

/// Largest k with u^k a factor of w (0 when u does not occur).
inline std::size_t max_power(const Word& u, const Word& w) {
    if (u.empty()) throw error("max_power: base word must be non-empty");
    u.require_same_alphabet(w);
    std::size_t k = 0;
    Word cur = u;
    while (cur.size() <= w.size() && !occurrences(cur, w).empty()) {
        ++k;
        cur += u;
    }
    return k;
}

}  // namespace subshift
