#pragma once
/**
 * @file returnwords.hpp
 * @brief Return words, their coding morphisms, derived substitutions and the
 *        anchor-chain decomposition.
 *
 * For a uniformly recurrent one-sided sequence x and a prefix u of x, the
 * return words to u are the gaps between consecutive occurrences of u; x
 * decomposes uniquely as a concatenation of them.  Return words are numbered
 * 1, 2, ... in order of first appearance in x, giving a coding morphism
 * Theta : {1..card}* -> A* whose images are the return words.
 *
 * Two computations are offered:
 *   - return_words_in_prefix: a plain scan of a finite prefix.  Cheap, but
 *     the result is only as complete as the prefix; it is flagged as
 *     non-certified.
 *   - return_words_closure: for the fixed point of a primitive substitution
 *     and its seed letter, iterates sigma on the known return words until the
 *     set is closed.  The result comes with the exact certificate
 *     sigma . Theta = Theta . tau, where tau is the derived substitution.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "morphism.hpp"
#include "words.hpp"

namespace subshift {

/// Alphabet {"1", "2", ..., "card"} used for return-word indices.
inline Alphabet index_alphabet(std::size_t card) {
    if (card == 0) throw error("index alphabet needs at least one letter");
    std::vector<std::string> letters;
    letters.reserve(card);
    for (std::size_t i = 1; i <= card; ++i) letters.push_back(std::to_string(i));
    return Alphabet(std::move(letters));
}

/// A set of return words to a common anchor, presented as the coding morphism
/// Theta from index letters to the base alphabet.
struct ReturnCoding {
    Word anchor;                     ///< the word u the returns come back to
    Morphism theta;                  ///< Theta : indices -> A*, image j = j-th return word
    std::optional<Word> derived_word;///< decoded span of the inspected prefix
    bool certified = false;          ///< true for closure-verified completeness

    std::size_t card() const { return theta.domain().size(); }
};

namespace detail {

/// Split positions of w into return words to u: all occurrences of u in
/// w . lookahead that start before |w|, which must begin at 0.  The sentinel
/// |w| is appended, so pieces are [pos[t], pos[t+1]).  The lookahead stands in
/// for the continuation of w in the ambient sequence (the anchor occurs at
/// |w| there); for a single-letter anchor it can be empty.
inline std::vector<std::size_t> return_split_positions(const Word& w, const Word& u,
                                                       const Word& lookahead) {
    Word ext = lookahead.empty() ? w : w + lookahead;
    std::vector<std::size_t> pos;
    for (std::size_t p : occurrences(u, ext))
        if (p < w.size()) pos.push_back(p);
    if (pos.empty() || pos.front() != 0)
        throw error("return-word decomposition failure: word does not start with the anchor");
    pos.push_back(w.size());
    return pos;
}

}  // namespace detail

/// Scan a finite prefix for return words to u.  u must be a prefix of the
/// scanned word and occur at least twice.  Return words are numbered by first
/// appearance; the decoded span (up to the last occurrence of u) is attached
/// as derived_word.  The result is not certified complete.
inline ReturnCoding return_words_in_prefix(const Word& prefix, const Word& u) {
    if (u.empty()) throw error("return_words_in_prefix: anchor must be non-empty");
    if (!is_prefix(u, prefix)) throw error("return_words_in_prefix: anchor is not a prefix");
    std::vector<std::size_t> occ = occurrences(u, prefix);
    if (occ.size() < 2)
        throw error("return_words_in_prefix: anchor '" + u.str() +
                    "' occurs fewer than twice in the prefix");

    std::vector<Word> words;
    std::map<Word, std::size_t> index;
    std::vector<std::int32_t> decoded;
    for (std::size_t t = 0; t + 1 < occ.size(); ++t) {
        Word piece = prefix.sub(occ[t], occ[t + 1] - occ[t]);
        auto it = index.find(piece);
        std::size_t id;
        if (it == index.end()) {
            id = words.size();
            index.emplace(piece, id);
            words.push_back(std::move(piece));
        } else {
            id = it->second;
        }
        decoded.push_back(static_cast<std::int32_t>(id));
    }

    Alphabet r = index_alphabet(words.size());
    ReturnCoding out;
    out.anchor = u;
    out.theta = Morphism(r, prefix.alphabet(), std::move(words));
    out.derived_word = Word(r, std::move(decoded));
    out.certified = false;
    return out;
}

/// A certified return-word system for the fixed point of a substitution:
/// the coding Theta plus the derived substitution tau with
/// sigma . Theta = Theta . tau (verified exactly during construction).
struct DerivedSubstitution {
    ReturnCoding coding;
    Substitution tau;
    /// Whether every tau-image begins with letter 1.  This can fail for the
    /// plain derived substitution (the image of a short return word may start
    /// inside a later return word); some power of tau is always proper.
    bool tau_proper = false;
};

/// Compute the full set of return words to the seed letter of a primitive
/// substitution, with certificate.  Seeds the set from a short fixed-point
/// prefix, then closes it: sigma maps every return word to a concatenation of
/// return words, so decomposing sigma-images discovers the rest.  The final
/// numbering is by first appearance in the fixed point, recovered from the
/// fixed point of the provisional tau (its decoding is x itself).
inline DerivedSubstitution return_words_closure(const Substitution& s, std::size_t a) {
    if (!s.primitive()) throw error("return_words_closure requires a primitive substitution");
    if (a != s.seed())
        throw error("return_words_closure: anchor letter must be the seed letter '" +
                    s.seed_letter() + "'");
    const Morphism& sig = s.morphism();
    const Alphabet& A = s.alphabet();
    const Word aw = Word::letter(A, a);
    const Word no_lookahead(A, {});

    // prefix with at least two seed occurrences (plus a little context so the
    // decoded derived_word is informative)
    Word p = aw;
    for (int it = 0; p.count_letter(a) < 2; ++it) {
        if (it > 64) throw error("seed letter fails to recur (is the substitution degenerate?)");
        p = sig.apply(p);
    }
    for (int extra = 0; extra < 2 && p.size() < 4096; ++extra) p = sig.apply(p);

    std::vector<Word> words;            // provisional index -> return word
    std::map<Word, std::size_t> index;  // return word -> provisional index
    auto decompose = [&](const Word& w, bool allow_new) {
        std::vector<std::int32_t> out;
        auto pos = detail::return_split_positions(w, aw, no_lookahead);
        for (std::size_t t = 0; t + 1 < pos.size(); ++t) {
            Word piece = w.sub(pos[t], pos[t + 1] - pos[t]);
            auto it = index.find(piece);
            std::size_t id;
            if (it != index.end()) {
                id = it->second;
            } else {
                if (!allow_new)
                    throw error("return-word decomposition failure: unknown return word '" +
                                piece.str() + "'");
                id = words.size();
                index.emplace(piece, id);
                words.push_back(std::move(piece));
            }
            out.push_back(static_cast<std::int32_t>(id));
        }
        return out;
    };

    // seed the set from the prefix span [0, last seed occurrence)
    std::vector<std::size_t> seed_occ = occurrences(aw, p);
    decompose(p.prefix(seed_occ.back()), true);

    // closure: every sigma-image of a return word, followed in the fixed
    // point by the seed letter again, splits into return words
    constexpr std::size_t kMaxReturnWords = 1u << 14;
    std::vector<std::vector<std::int32_t>> tau_prov;
    for (std::size_t j = 0; j < words.size(); ++j) {
        if (words.size() > kMaxReturnWords)
            throw error("return word closure exceeded its size bound");
        tau_prov.push_back(decompose(sig.apply(words[j]), true));
    }

    const std::size_t card = words.size();

    // recover the first-appearance order: iterate provisional tau from index 0
    // (the first return word of x); the iterates are prefixes of the decoding
    // of x, and every return word appears in them by uniform recurrence
    std::vector<std::int32_t> y = {0};
    std::vector<bool> seen(card, false);
    std::vector<std::size_t> order;  // provisional indices by first appearance
    auto absorb = [&](const std::vector<std::int32_t>& seq) {
        for (auto v : seq)
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = true;
                order.push_back(static_cast<std::size_t>(v));
            }
    };
    absorb(y);
    for (std::size_t it = 0; order.size() < card; ++it) {
        if (it > card + 4)
            throw error("closure certificate failed: some return word is not reachable "
                        "from the first one under tau");
        std::vector<std::int32_t> next;
        for (auto v : y) {
            const auto& img = tau_prov[static_cast<std::size_t>(v)];
            next.insert(next.end(), img.begin(), img.end());
        }
        y = std::move(next);
        absorb(y);
    }
    std::vector<std::size_t> rank(card);  // provisional index -> final index
    for (std::size_t i = 0; i < card; ++i) rank[order[i]] = i;

    Alphabet r = index_alphabet(card);
    auto renumber = [&](const std::vector<std::int32_t>& seq) {
        std::vector<std::int32_t> out;
        out.reserve(seq.size());
        for (auto v : seq)
            out.push_back(static_cast<std::int32_t>(rank[static_cast<std::size_t>(v)]));
        return Word(r, std::move(out));
    };

    std::vector<Word> theta_im(card, Word());
    std::vector<Word> tau_im(card, Word());
    for (std::size_t prov = 0; prov < card; ++prov) {
        theta_im[rank[prov]] = words[prov];
        tau_im[rank[prov]] = renumber(tau_prov[prov]);
    }
    Morphism theta(r, A, std::move(theta_im));
    Morphism tau_m(r, r, std::move(tau_im));

    // certificate: sigma . Theta = Theta . tau, letter by letter
    if (sig.compose(theta) != theta.compose(tau_m))
        throw error("closure certificate failed: sigma.Theta != Theta.tau");

    DerivedSubstitution out{ReturnCoding{}, Substitution::make(tau_m), false};
    if (out.tau.seed() != 0 || out.tau.power_applied() != 1)
        throw error("derived substitution does not fix letter 1 (internal error)");
    out.tau_proper = is_proper(tau_m);

    out.coding.anchor = aw;
    out.coding.theta = std::move(theta);
    out.coding.derived_word = renumber(decompose(p.prefix(seed_occ.back()), false));
    out.coding.certified = true;
    return out;
}

inline DerivedSubstitution return_words_closure(const Substitution& s) {
    return return_words_closure(s, s.seed());
}

/// The unique recoding lambda with Theta_v . lambda = Theta_u, where v is a
/// non-empty prefix of u: every return word to u is a concatenation of return
/// words to v, and the factorisation is found by splitting at occurrences of
/// v (return words form a code, so it is unique).  Both codings must be over
/// the same base alphabet; missing table entries in cv are reported (a
/// non-certified scan may be incomplete).
inline Morphism derived_recoding(const ReturnCoding& cu, const ReturnCoding& cv) {
    const Word& u = cu.anchor;
    const Word& v = cv.anchor;
    if (v.empty() || !is_prefix(v, u))
        throw error("derived_recoding: the second anchor must be a non-empty prefix of the first");
    if (cu.theta.codomain() != cv.theta.codomain())
        throw error("derived_recoding: codings use different base alphabets");

    std::map<Word, std::size_t> table;
    for (std::size_t j = 0; j < cv.card(); ++j) table.emplace(cv.theta.image(j), j);

    std::vector<Word> images;
    for (std::size_t j = 0; j < cu.card(); ++j) {
        const Word& w = cu.theta.image(j);
        // w is followed by u in x, and v is a prefix of u, so v is valid lookahead
        auto pos = detail::return_split_positions(w, v, v);
        std::vector<std::int32_t> img;
        for (std::size_t t = 0; t + 1 < pos.size(); ++t) {
            Word piece = w.sub(pos[t], pos[t + 1] - pos[t]);
            auto it = table.find(piece);
            if (it == table.end())
                throw error("derived_recoding: piece '" + piece.str() +
                            "' is not a known return word to '" + v.str() +
                            "' (incomplete scan?)");
            img.push_back(static_cast<std::int32_t>(it->second));
        }
        images.push_back(Word(cv.theta.domain(), std::move(img)));
    }
    Morphism lambda(cu.theta.domain(), cv.theta.domain(), std::move(images));
    if (cv.theta.compose(lambda) != cu.theta)
        throw error("derived_recoding: Theta_v . lambda != Theta_u (internal error)");
    return lambda;
}

/// One stage of the anchor chain: the anchor u_n, its scanned return words,
/// and the recoding lambda_n with Theta_{n-1} . lambda_n = Theta_n
/// (for n = 0, lambda_0 = Theta_0 itself).
struct SadicStage {
    Word anchor;
    ReturnCoding coding;
    Morphism lambda;
};

struct SadicDecomposition {
    std::size_t K = 0;
    std::size_t alpha = 0;           ///< anchor growth ratio K^2(K+1)
    std::vector<SadicStage> stages;  ///< stages 0..depth
    Morphism composed;               ///< lambda_0 . lambda_1 ... lambda_depth = Theta_depth
};

/// Decompose a prefix of a linearly recurrent word along the anchor chain
/// u_n = prefix[0, alpha^n) with alpha = K^2(K+1).  The scans are prefix
/// based (non-certified), but the chain identities and the reconstruction
/// (the composed image of letter 1 is a prefix of the input) are verified
/// exactly on what was observed.
inline SadicDecomposition sadic_decomposition(const Word& prefix, std::size_t K,
                                              std::size_t depth) {
    if (K == 0) throw error("sadic_decomposition: K must be >= 1");
    SadicDecomposition out;
    out.K = K;
    out.alpha = K * K * (K + 1);

    std::vector<std::size_t> lens;
    {
        Integer len = 1;  // alpha^n can overflow size_t long before it fits the prefix
        for (std::size_t n = 0; n <= depth; ++n) {
            if (len > Integer(prefix.size()))
                throw error("sadic_decomposition: prefix too short; the level-" +
                            std::to_string(n) + " anchor needs length " + len.str() +
                            " plus recurrence room beyond it");
            lens.push_back(static_cast<std::size_t>(len));
            len *= Integer(out.alpha);
        }
    }

    for (std::size_t n = 0; n <= depth; ++n) {
        Word u = prefix.prefix(lens[n]);
        try {
            ReturnCoding c = return_words_in_prefix(prefix, u);
            Morphism lambda =
                n == 0 ? c.theta : derived_recoding(c, out.stages[n - 1].coding);
            out.stages.push_back(SadicStage{std::move(u), std::move(c), std::move(lambda)});
        } catch (const error& e) {
            throw error("sadic_decomposition: level " + std::to_string(n) + " (anchor length " +
                        std::to_string(lens[n]) + ") failed: " + e.what() +
                        "; a longer input prefix is required");
        }
    }

    Morphism composed = out.stages[0].lambda;  // = Theta_0
    for (std::size_t n = 1; n <= depth; ++n) composed = composed.compose(out.stages[n].lambda);
    if (composed != out.stages[depth].coding.theta)
        throw error("sadic_decomposition: composed chain differs from Theta_depth");
    if (!is_prefix(composed.image(0), prefix))
        throw error("sadic_decomposition: reconstruction is not a prefix of the input");
    out.composed = std::move(composed);
    return out;
}

}  // namespace subshift
