#pragma once
/**
 * @file sadic.hpp
 * @brief Directive sequences of morphisms, Sturmian sequences from continued
 *        fractions (both as S-adic limits and as exact rotation codings), and
 *        empirical linear-recurrence diagnostics on finite prefixes.
 *
 * A word x is linearly recurrent with constant K when every return word w to
 * every factor u of x satisfies |w| <= K |u|.  For such x:
 *   - the factor complexity satisfies p(n) <= K n   (n >= 2 suffices; checked
 *     for all n here, with the trivial exceptions reported as violations),
 *   - x contains no (K+1)-th power of a non-empty word,
 *   - every factor of length n occurs in every window of length (K+1) n,
 *   - every factor u has at most K (K+1)^2 distinct return words.
 * The diagnostics below verify each property on a finite prefix and report
 * explicit witnesses when one fails; a pass is evidence, not a proof.
 */

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exact.hpp"
#include "morphism.hpp"

namespace subshift {

// ---------------------------------------------------------------------------
// directive sequences
// ---------------------------------------------------------------------------

/// A finite directive sequence sigma_1, ..., sigma_m together with a seed
/// letter of the domain of sigma_m; it generates the word
/// sigma_1(sigma_2(...sigma_m(seed)...)).
struct DirectiveSequence {
    std::vector<Morphism> steps;
    std::size_t seed = 0;

    static DirectiveSequence make(std::vector<Morphism> steps, std::size_t seed) {
        if (steps.empty()) throw error("directive sequence must have at least one step");
        for (std::size_t i = 0; i + 1 < steps.size(); ++i)
            if (steps[i].domain() != steps[i + 1].codomain())
                throw error("directive sequence: step " + std::to_string(i + 2) +
                            " does not compose with step " + std::to_string(i + 1));
        if (seed >= steps.back().domain().size())
            throw error("directive sequence: seed letter out of range");
        return DirectiveSequence{std::move(steps), seed};
    }
};

/// The full word generated by the directive sequence.
inline Word sadic_image(const DirectiveSequence& d) {
    if (d.steps.empty()) throw error("empty directive sequence");
    Word w = Word::letter(d.steps.back().domain(), d.seed);
    for (auto it = d.steps.rbegin(); it != d.steps.rend(); ++it) w = it->apply(w);
    return w;
}

/// First n letters of the generated word; the sequence must be long enough.
inline Word sadic_prefix(const DirectiveSequence& d, std::size_t n) {
    Word w = sadic_image(d);
    if (w.size() < n)
        throw error("directive sequence produces only " + std::to_string(w.size()) +
                    " letters, fewer than the requested " + std::to_string(n));
    return w.prefix(n);
}

struct PrimitiveWindowCheck {
    std::size_t window = 0;          ///< s0: number of consecutive steps per window
    std::vector<bool> positive;      ///< positive[r]: steps r+1..r+s0 compose positively
    bool all_positive = true;
};

/// Check that every block of s0 consecutive steps has a positive composed
/// incidence matrix (every letter occurs in every composed image) — the
/// finite-window surrogate of primitivity for directive sequences.
inline PrimitiveWindowCheck primitive_window_check(const DirectiveSequence& d, std::size_t s0) {
    if (s0 == 0 || s0 > d.steps.size())
        throw error("primitive_window_check: window size must be in 1..#steps");
    PrimitiveWindowCheck out;
    out.window = s0;
    for (std::size_t r = 0; r + s0 <= d.steps.size(); ++r) {
        Morphism acc = d.steps[r];
        for (std::size_t i = r + 1; i < r + s0; ++i) acc = acc.compose(d.steps[i]);
        IntegerMatrix m = acc.incidence_matrix();
        bool pos = true;
        for (std::size_t i = 0; i < m.rows() && pos; ++i)
            for (std::size_t j = 0; j < m.cols() && pos; ++j) pos = m.at(i, j) > 0;
        out.positive.push_back(pos);
        out.all_positive = out.all_positive && pos;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sturmian words from continued fractions
// ---------------------------------------------------------------------------

/// 0 -> 0, 1 -> 10 on the alphabet {0, 1}.
inline Morphism sturmian_tau() {
    Alphabet a = Alphabet::from_chars("01");
    return Morphism(a, a, {Word::from_string(a, "0"), Word::from_string(a, "10")});
}

/// 0 -> 01, 1 -> 1 on the alphabet {0, 1}.
inline Morphism sturmian_sigma() {
    Alphabet a = Alphabet::from_chars("01");
    return Morphism(a, a, {Word::from_string(a, "01"), Word::from_string(a, "1")});
}

/// A continued fraction [0; a_1, a_2, ...] for an irrational slope in (0, 1):
/// the leading coefficient must be 0 and all others positive.
class ContinuedFraction {
public:
    explicit ContinuedFraction(std::vector<std::size_t> a) : a_(std::move(a)) {
        if (a_.empty() || a_[0] != 0)
            throw error("continued fraction must start with coefficient 0");
        for (std::size_t i = 1; i < a_.size(); ++i)
            if (a_[i] == 0) throw error("continued fraction coefficients a_k (k >= 1) must be positive");
    }

    const std::vector<std::size_t>& coefficients() const { return a_; }
    std::size_t terms() const { return a_.size(); }

    struct Convergent {
        Integer p, q;
        std::size_t index;  ///< k for p_k / q_k
    };

    /// Convergent p_k / q_k via p_k = a_k p_{k-1} + p_{k-2} (exact integers).
    Convergent convergent(std::size_t k) const {
        if (k >= a_.size()) throw error("continued fraction has no term " + std::to_string(k));
        Integer pm1 = 1, p = a_[0], qm1 = 0, q = 1;
        for (std::size_t i = 1; i <= k; ++i) {
            Integer pn = Integer(a_[i]) * p + pm1, qn = Integer(a_[i]) * q + qm1;
            pm1 = p;
            p = pn;
            qm1 = q;
            q = qn;
        }
        return {p, q, k};
    }

    /// First convergent with denominator strictly above n.
    Convergent convergent_with_denominator_above(const Integer& n) const {
        for (std::size_t k = 0; k < a_.size(); ++k) {
            Convergent c = convergent(k);
            if (c.q > n) return c;
        }
        throw error("continued fraction exhausted: no convergent has denominator above " +
                    n.str() + "; supply more coefficients");
    }

private:
    std::vector<std::size_t> a_;
};

/// Directive sequence for the Sturmian word of slope [0; a_1, a_2, ...]:
/// a_1 - 1 copies of tau, then a_2 copies of sigma, then a_3 copies of tau,
/// alternating.  Steps are emitted until the composed image of the seed
/// letter 0 reaches target_length (stopping mid-block is fine); image
/// lengths are tracked incrementally so the cutoff costs no compositions.
inline DirectiveSequence sturmian_directive(const ContinuedFraction& cf,
                                            std::size_t target_length) {
    if (cf.terms() < 2) throw error("sturmian_directive needs at least one coefficient a_1");
    if (target_length == 0) throw error("sturmian_directive: target length must be positive");
    const Morphism tau = sturmian_tau(), sigma = sturmian_sigma();
    std::vector<Morphism> steps;
    Integer len0 = 1, len1 = 1;
    auto push = [&](const Morphism& m) {
        steps.push_back(m);
        // new length of the composed image of c = sum of current lengths of
        // the letters of m(c); both our generators have two-letter alphabets
        Integer n0 = 0, n1 = 0;
        for (auto sym : m.image(0).symbols()) n0 += sym == 0 ? len0 : len1;
        for (auto sym : m.image(1).symbols()) n1 += sym == 0 ? len0 : len1;
        len0 = n0;
        len1 = n1;
        return len0 >= target_length;
    };
    bool done = false;
    for (std::size_t k = 1; k < cf.terms() && !done; ++k) {
        const Morphism& block = (k % 2 == 1) ? tau : sigma;
        const std::size_t count = (k == 1) ? cf.coefficients()[1] - 1 : cf.coefficients()[k];
        for (std::size_t i = 0; i < count && !done; ++i) done = push(block);
    }
    if (!done)
        throw error("continued fraction too short: the directive reaches only " + len0.str() +
                    " letters, below the requested " + std::to_string(target_length));
    return DirectiveSequence::make(std::move(steps), 0);
}

/// Exact prefix s_0 ... s_{n-1} of the rotation coding of slope alpha,
/// s_k = floor((k+1) alpha) - floor(k alpha), computed from a convergent
/// p/q with q > n.  Exactness: |k alpha - k p/q| < k/q^2 < 1/q for k <= n,
/// while k p/q (0 < k < q, gcd(p, q) = 1) is at distance >= 1/q from the
/// nearest integer it does not equal, so the floors agree.
inline Word rotation_coding_prefix(const ContinuedFraction& cf, std::size_t n) {
    ContinuedFraction::Convergent c = cf.convergent_with_denominator_above(Integer(n));
    Alphabet a = Alphabet::from_chars("01");
    std::vector<std::int32_t> sym;
    sym.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        Integer lo = Integer(k) * c.p / c.q, hi = Integer(k + 1) * c.p / c.q;
        sym.push_back(static_cast<std::int32_t>(hi - lo));
    }
    return Word(a, std::move(sym));
}

// ---------------------------------------------------------------------------
// empirical linear-recurrence diagnostics
// ---------------------------------------------------------------------------

struct AnchorStats {
    std::string anchor;
    std::size_t occurrences = 0;
    std::size_t distinct_returns = 0;
    std::size_t min_return = 0;
    std::size_t max_return = 0;
};

struct LrEstimate {
    std::size_t prefix_len = 0;
    std::size_t max_anchor_len = 0;
    std::vector<AnchorStats> anchors;     ///< one row per factor with >= 3 occurrences
    std::size_t rare_skipped = 0;         ///< factors with fewer than 3 occurrences
    Rational max_ratio = 0;               ///< max over anchors of max_return / |anchor|
    std::string witness_anchor;           ///< anchor attaining max_ratio
    std::string witness_return;           ///< its longest return word
};

/// Estimate the linear-recurrence constant from a prefix: for every factor u
/// with |u| <= max_anchor_len and at least three occurrences, tabulate its
/// return words (segments between consecutive occurrence starts) and track
/// the largest ratio |w| / |u|.  An estimate from a prefix is a lower bound
/// on the true constant, never a certificate.
inline LrEstimate lr_estimate(const Word& x, std::size_t max_anchor_len) {
    if (max_anchor_len == 0 || max_anchor_len > x.size())
        throw error("lr_estimate: anchor length must be in 1..|prefix|");
    LrEstimate out;
    out.prefix_len = x.size();
    out.max_anchor_len = max_anchor_len;
    for (std::size_t n = 1; n <= max_anchor_len; ++n) {
        for (const auto& [key, occ] : detail::factor_occurrences(x, n)) {
            if (occ.size() < 3) {
                ++out.rare_skipped;
                continue;
            }
            AnchorStats st;
            st.anchor = detail::unpack_key(x.alphabet(), key).str();
            st.occurrences = occ.size();
            std::set<std::string> rets;
            std::size_t longest_at = 0;
            st.min_return = x.size();
            for (std::size_t j = 0; j + 1 < occ.size(); ++j) {
                const std::size_t len = occ[j + 1] - occ[j];
                rets.insert(detail::pack_window(x, occ[j], len));
                st.min_return = std::min(st.min_return, len);
                if (len > st.max_return) {
                    st.max_return = len;
                    longest_at = occ[j];
                }
            }
            st.distinct_returns = rets.size();
            Rational ratio(st.max_return, n);
            if (ratio > out.max_ratio) {
                out.max_ratio = ratio;
                out.witness_anchor = st.anchor;
                out.witness_return = x.sub(longest_at, st.max_return).str();
            }
            out.anchors.push_back(std::move(st));
        }
    }
    return out;
}

struct LrDiagnostics {
    std::size_t K = 0;
    std::size_t nmax = 0;        ///< factor lengths checked: 1..nmax
    std::size_t prefix_len = 0;

    struct ComplexityViolation {
        std::size_t n, count, bound;
    };
    struct PowerViolation {
        std::string root;
        std::size_t position, exponent;
    };
    struct WindowViolation {
        std::string factor;
        std::size_t window_start, window_len;
    };
    struct ReturnViolation {
        std::string anchor;
        std::size_t count, bound;
    };

    std::optional<ComplexityViolation> complexity;  ///< p(n) > K n
    std::optional<PowerViolation> power;            ///< a (K+1)-th power occurs
    std::optional<WindowViolation> window;          ///< a window misses a factor
    std::optional<ReturnViolation> returns;         ///< Card R_u > K (K+1)^2
    std::size_t rare_anchors_skipped = 0;           ///< < 3 occurrences: not testable

    bool all_ok() const { return !complexity && !power && !window && !returns; }
};

/// Test the four necessary conditions for linear recurrence with constant K
/// on a prefix, reporting the first violation of each kind.
inline LrDiagnostics lr_diagnostics(const Word& x, std::size_t K, std::size_t nmax) {
    if (K == 0) throw error("lr_diagnostics: K must be positive");
    if (nmax == 0 || nmax > x.size())
        throw error("lr_diagnostics: factor length bound must be in 1..|prefix|");
    LrDiagnostics out;
    out.K = K;
    out.nmax = nmax;
    out.prefix_len = x.size();

    // (K+1)-th powers: x[i..i+(K+1)L) has period L iff x[j] = x[j+L] for the
    // K*L positions j = i .. i+K*L-1; smallest root length, then leftmost.
    for (std::size_t L = 1; !out.power && (K + 1) * L <= x.size(); ++L) {
        std::size_t run = 0;
        for (std::size_t j = 0; j + L < x.size(); ++j) {
            run = x[j] == x[j + L] ? run + 1 : 0;
            if (run == K * L) {
                const std::size_t i = j + 1 - K * L;
                out.power = LrDiagnostics::PowerViolation{x.sub(i, L).str(), i, K + 1};
                break;
            }
        }
    }

    const std::size_t card_bound = K * (K + 1) * (K + 1);
    for (std::size_t n = 1; n <= nmax; ++n) {
        auto occmap = detail::factor_occurrences(x, n);
        if (!out.complexity && occmap.size() > K * n)
            out.complexity = LrDiagnostics::ComplexityViolation{n, occmap.size(), K * n};
        for (const auto& [key, occ] : occmap) {
            // window coverage: an occurrence at i serves the windows starting
            // in [i - K n, i]; their union must cover 0 .. |x| - (K+1) n
            if (!out.window && x.size() >= (K + 1) * n) {
                const std::size_t last_window = x.size() - (K + 1) * n;
                std::size_t covered = 0;
                bool bad = false;
                for (std::size_t i : occ) {
                    if (i > covered + K * n) {
                        bad = true;
                        break;
                    }
                    covered = i + 1;
                    if (covered > last_window) break;
                }
                if (bad || covered <= last_window)
                    out.window = LrDiagnostics::WindowViolation{
                        detail::unpack_key(x.alphabet(), key).str(), covered,
                        (K + 1) * n};
            }
            if (occ.size() < 3) {
                ++out.rare_anchors_skipped;
                continue;
            }
            if (!out.returns) {
                std::set<std::string> rets;
                for (std::size_t j = 0; j + 1 < occ.size(); ++j)
                    rets.insert(detail::pack_window(x, occ[j], occ[j + 1] - occ[j]));
                if (rets.size() > card_bound)
                    out.returns = LrDiagnostics::ReturnViolation{
                        detail::unpack_key(x.alphabet(), key).str(), rets.size(),
                        card_bound};
            }
        }
    }
    return out;
}

}  // namespace subshift
