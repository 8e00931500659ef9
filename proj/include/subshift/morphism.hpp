#pragma once
/**
 * @file morphism.hpp
 * @brief Free-monoid morphisms, substitutions (endomorphisms with a seed
 *        letter), primitivity and properness tests, fixed-point prefixes and
 *        a periodicity probe.
 *
 * A substitution sigma is an endomorphism of A*; its seed is a letter a with
 * sigma(a) beginning with a, so that sigma^n(a) converges to a one-sided
 * fixed point.  When no letter qualifies, the smallest power sigma^k with a
 * seed is taken instead (the generated subshift is unchanged); the power is
 * recorded so reports can surface it.
 */

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exact.hpp"
#include "words.hpp"

namespace subshift {

class Morphism {
public:
    Morphism() = default;

    /// images[i] is the image of domain letter i; images must be non-empty
    /// words over the codomain (erasing morphisms are not supported).
    Morphism(Alphabet domain, Alphabet codomain, std::vector<Word> images)
        : dom_(std::move(domain)), cod_(std::move(codomain)), im_(std::move(images)) {
        if (im_.size() != dom_.size())
            throw error("morphism needs exactly one image per domain letter");
        for (const auto& w : im_) {
            if (w.alphabet() != cod_) throw error("morphism image over the wrong alphabet");
            if (w.empty()) throw error("morphism images must be non-empty");
        }
    }

    static Morphism identity(const Alphabet& a) {
        std::vector<Word> im;
        for (std::size_t i = 0; i < a.size(); ++i) im.push_back(Word::letter(a, i));
        return Morphism(a, a, std::move(im));
    }

    const Alphabet& domain() const { return dom_; }
    const Alphabet& codomain() const { return cod_; }
    bool is_endomorphism() const { return dom_ == cod_; }

    const Word& image(std::size_t letter) const {
        if (letter >= im_.size()) throw error("morphism: letter index out of range");
        return im_[letter];
    }
    const std::vector<Word>& images() const { return im_; }

    Word apply(const Word& w) const {
        if (w.alphabet() != dom_) throw error("morphism applied to a word over the wrong alphabet");
        std::size_t len = 0;
        for (auto s : w.symbols()) len += im_[static_cast<std::size_t>(s)].size();
        std::vector<std::int32_t> sym;
        sym.reserve(len);
        for (auto s : w.symbols()) {
            const auto& img = im_[static_cast<std::size_t>(s)].symbols();
            sym.insert(sym.end(), img.begin(), img.end());
        }
        return Word(cod_, std::move(sym));
    }
    Word operator()(const Word& w) const { return apply(w); }

    /// Composition (*this) after inner: (f.compose(g))(w) = f(g(w)).
    Morphism compose(const Morphism& inner) const {
        if (inner.cod_ != dom_) throw error("morphism composition: alphabets do not match");
        std::vector<Word> im;
        im.reserve(inner.im_.size());
        for (const auto& w : inner.im_) im.push_back(apply(w));
        return Morphism(inner.dom_, cod_, std::move(im));
    }

    /// Incidence matrix: entry (i, j) counts occurrences of codomain letter i
    /// in the image of domain letter j, so column sums are the image lengths.
    IntegerMatrix incidence_matrix() const {
        IntegerMatrix m(cod_.size(), dom_.size());
        for (std::size_t j = 0; j < im_.size(); ++j)
            for (auto s : im_[j].symbols()) m.at(static_cast<std::size_t>(s), j) += 1;
        return m;
    }

    bool operator==(const Morphism& o) const {
        return dom_ == o.dom_ && cod_ == o.cod_ && im_ == o.im_;
    }
    bool operator!=(const Morphism& o) const { return !(*this == o); }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < dom_.size(); ++i) {
            if (i) out += "\n";
            out += dom_.letter(i) + " -> " + im_[i].str();
        }
        return out;
    }

private:
    Alphabet dom_, cod_;
    std::vector<Word> im_;
};

/// Raise an endomorphism to the k-th power under composition (k >= 1).
inline Morphism morphism_power(const Morphism& m, std::size_t k) {
    if (!m.is_endomorphism()) throw error("morphism_power requires an endomorphism");
    if (k == 0) throw error("morphism_power: exponent must be >= 1");
    Morphism acc = m;
    for (std::size_t i = 1; i < k; ++i) acc = acc.compose(m);
    return acc;
}

/// Primitivity of an endomorphism: some power of the incidence matrix is
/// strictly positive.  By Wielandt's bound it is enough to look at the single
/// exponent (d-1)^2 + 1, checked here on the boolean positivity pattern
/// (positivity of M^k only depends on which entries of M are non-zero, and
/// once all entries are positive they stay positive because no image is empty).
inline bool is_primitive(const Morphism& m) {
    if (!m.is_endomorphism()) throw error("is_primitive requires an endomorphism");
    const std::size_t d = m.domain().size();
    std::vector<std::vector<bool>> adj(d, std::vector<bool>(d, false));
    {
        IntegerMatrix inc = m.incidence_matrix();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) adj[i][j] = inc.at(i, j) > 0;
    }
    auto mul = [d](const std::vector<std::vector<bool>>& a, const std::vector<std::vector<bool>>& b) {
        std::vector<std::vector<bool>> c(d, std::vector<bool>(d, false));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k)
                if (a[i][k])
                    for (std::size_t j = 0; j < d; ++j)
                        if (b[k][j]) c[i][j] = true;
        return c;
    };
    std::size_t e = (d - 1) * (d - 1) + 1;
    std::vector<std::vector<bool>> acc(d, std::vector<bool>(d, false)), base = adj;
    for (std::size_t i = 0; i < d; ++i) acc[i][i] = true;
    while (e > 0) {
        if (e & 1u) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1u;
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (!acc[i][j]) return false;
    return true;
}

/// A morphism is proper when all images begin with the same letter.
inline bool is_proper(const Morphism& m) {
    if (m.images().empty()) return true;
    const std::int32_t first = m.image(0)[0];
    for (const auto& w : m.images())
        if (w[0] != first) return false;
    return true;
}

/// The common first letter of all images, when there is one.
inline std::optional<std::size_t> proper_letter(const Morphism& m) {
    if (!is_proper(m) || m.images().empty()) return std::nullopt;
    return static_cast<std::size_t>(m.image(0)[0]);
}

/// Common image length when the morphism has constant length, else nullopt.
inline std::optional<std::size_t> constant_length(const Morphism& m) {
    if (m.images().empty()) return std::nullopt;
    const std::size_t l = m.image(0).size();
    for (const auto& w : m.images())
        if (w.size() != l) return std::nullopt;
    return l;
}

/// Endomorphism together with a seed letter.  Use make() to construct: it
/// locates the seed, replacing sigma by the smallest power that has one when
/// necessary, and caches the primitivity flag.
class Substitution {
public:
    static Substitution make(const Morphism& base) {
        if (!base.is_endomorphism()) throw error("substitution must be an endomorphism");
        const std::size_t d = base.domain().size();
        if (d == 0) throw error("substitution over an empty alphabet");

        // first-letter map: the first letter of sigma^k(c) is f^k(c)
        std::vector<std::size_t> f(d);
        for (std::size_t c = 0; c < d; ++c) f[c] = static_cast<std::size_t>(base.image(c)[0]);

        // smallest k <= d with a letter fixed by f^k, i.e. the shortest
        // f-cycle length; the seed is the smallest such letter
        std::vector<std::size_t> fk(d);
        for (std::size_t c = 0; c < d; ++c) fk[c] = c;
        for (std::size_t k = 1; k <= d; ++k) {
            for (std::size_t c = 0; c < d; ++c) fk[c] = f[fk[c]];
            for (std::size_t c = 0; c < d; ++c)
                if (fk[c] == c)
                    return Substitution(k == 1 ? base : morphism_power(base, k), c, k);
        }
        throw error("no power of the substitution has a seed letter (internal error)");
    }

    const Morphism& morphism() const { return m_; }
    const Alphabet& alphabet() const { return m_.domain(); }
    std::size_t seed() const { return seed_; }
    const std::string& seed_letter() const { return alphabet().letter(seed_); }
    /// k with this substitution equal to the k-th power of the input of make().
    std::size_t power_applied() const { return power_; }
    bool primitive() const { return primitive_; }

    Word apply(const Word& w) const { return m_.apply(w); }

private:
    Substitution(Morphism m, std::size_t seed, std::size_t power)
        : m_(std::move(m)), seed_(seed), power_(power), primitive_(is_primitive(m_)) {}

    Morphism m_;
    std::size_t seed_;
    std::size_t power_;
    bool primitive_;
};

/// Exactly the first n letters of the one-sided fixed point starting at the
/// seed, obtained by iterating sigma on the seed until the iterate is long
/// enough.  Requires a growing seed (|sigma(seed)| >= 2).
inline Word fixed_point_prefix(const Substitution& s, std::size_t n) {
    if (n == 0) throw error("fixed_point_prefix: length must be positive");
    const Alphabet& a = s.alphabet();
    Word w = Word::letter(a, s.seed());
    if (s.morphism().image(s.seed()).size() < 2)
        throw error("fixed point does not grow: the seed letter maps to itself");
    while (w.size() < n) w = s.apply(w);  // grows by at least one letter per step
    return w.prefix(n);
}

/// Outcome of the finite periodicity probe.
struct ProbeResult {
    bool periodic = false;
    Word period;                    ///< shortest period word when periodic
    std::size_t evidence_depth = 0; ///< largest n with p(n) >= n+1 verified
    std::size_t horizon = 0;        ///< probe parameter N
    std::size_t prefix_len = 0;     ///< length of the inspected prefix (4N)
};

/// Probe the fixed point for periodicity at horizon N.  Declares periodic(v)
/// when the 4N-prefix is |v|-periodic for some |v| <= N and the factor count
/// satisfies p(|v|) <= |v| on that prefix; otherwise reports the largest n
/// (consecutively from 1) with p(n) >= n+1, i.e. the depth to which the
/// Morse-Hedlund aperiodicity criterion was verified on prefix data.
inline ProbeResult periodicity_probe(const Substitution& s, std::size_t horizon) {
    if (horizon == 0) throw error("periodicity_probe: horizon must be positive");
    ProbeResult out;
    out.horizon = horizon;
    Word x = fixed_point_prefix(s, 4 * horizon);
    out.prefix_len = x.size();
    for (std::size_t per = 1; per <= horizon; ++per) {
        bool ok = true;
        for (std::size_t i = per; i < x.size() && ok; ++i) ok = x[i] == x[i - per];
        if (ok && complexity(x, per) <= per) {
            out.periodic = true;
            out.period = x.prefix(per);
            return out;
        }
    }
    for (std::size_t n = 1; n <= horizon && n <= x.size(); ++n) {
        if (complexity(x, n) >= n + 1)
            out.evidence_depth = n;
        else
            break;
    }
    return out;
}

}  // namespace subshift
