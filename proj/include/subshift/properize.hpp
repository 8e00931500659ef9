#pragma once
/**
 * @file properize.hpp
 * @brief Rewrite a primitive substitution as a proper one generating an
 *        isomorphic subshift.
 *
 * Construction: with Theta the coding by return words to the seed letter and
 * tau the derived substitution (sigma.Theta = Theta.tau), take a power tau^k
 * whose images are at least as long as the corresponding return words, set
 *   B   = {(j,p) : j a return-word index, 1 <= p <= |Theta(j)|},
 *   phi(j,p) = p-th letter of Theta(j),
 *   psi(j)   = (j,1)(j,2)...(j,|Theta(j)|),
 * and define zeta on B by
 *   zeta(j,p) = psi( (tau^k(j))_p )                      for p < |Theta(j)|,
 *   zeta(j,p) = psi( (tau^k(j))_[|Theta(j)|..|tau^k(j)|] ) for p = |Theta(j)|,
 * so that zeta.psi = psi.tau^k and phi.psi = Theta hold exactly.
 *
 * Letter-properness of zeta (all images sharing a first letter) is sensitive
 * to the choice of k and can genuinely fail for every k: zeta(j,p) begins
 * with ((tau^k(j))_p, 1), and for p >= 2 that letter converges to the p-th
 * letter of the tau-fixed point, which need not be 1.  The routine therefore
 * verifies properness, escalates k when that can help, re-applies the whole
 * construction to zeta once otherwise, and reports an explicit diagnostic
 * when properness is still not reached.  All algebraic certificates
 * (phi.psi = Theta, zeta.psi = psi.tau^k, primitivity) are checked exactly
 * regardless of properness.
 */

#include <optional>
#include <string>
#include <vector>

#include "morphism.hpp"
#include "returnwords.hpp"

namespace subshift {

struct ProperizationResult {
    bool pass_through;        ///< input was already proper; zeta is the input
    Substitution zeta;        ///< proper when zeta_proper, else best attempt
    Morphism phi;             ///< letter map B -> A
    Morphism psi;             ///< R -> B^+
    Morphism theta;           ///< R -> A^+ (phi . psi = theta)
    std::optional<DerivedSubstitution> derived;  ///< closure data (non-pass-through)
    std::size_t k;            ///< exponent of tau used; 0 for pass-through
    bool zeta_proper;         ///< verified: all zeta-images share a first letter
    std::size_t escalations;  ///< k-increments beyond the minimal-length choice
    bool rederived;           ///< construction applied a second time, to zeta
    std::optional<Substitution> zeta_first;  ///< first-level zeta when rederived
    std::string diagnostic;   ///< why escalation/re-derivation happened, if it did
};

namespace detail {

struct ZetaParts {
    Alphabet B;
    Morphism phi, psi, zeta;
};

/// Assemble B, phi, psi and zeta from the coding and the chosen tau power.
inline ZetaParts build_zeta(const Morphism& theta, const Morphism& tau_k) {
    const std::size_t card = theta.domain().size();
    std::vector<std::size_t> len(card), offset(card);
    std::vector<std::string> bletters;
    for (std::size_t j = 0; j < card; ++j) {
        len[j] = theta.image(j).size();
        if (tau_k.image(j).size() < len[j])
            throw error("build_zeta: |tau^k(j)| < |Theta(j)| (power too small)");
        offset[j] = bletters.size();
        for (std::size_t p = 1; p <= len[j]; ++p)
            bletters.push_back("(" + std::to_string(j + 1) + "," + std::to_string(p) + ")");
    }
    Alphabet B{bletters};

    std::vector<Word> phi_im, psi_im;
    for (std::size_t j = 0; j < card; ++j) {
        std::vector<std::int32_t> sym;
        for (std::size_t p = 0; p < len[j]; ++p)
            sym.push_back(static_cast<std::int32_t>(offset[j] + p));
        psi_im.push_back(Word(B, std::move(sym)));
    }
    for (std::size_t j = 0; j < card; ++j)
        for (std::size_t p = 0; p < len[j]; ++p) phi_im.push_back(theta.image(j).sub(p, 1));

    auto psi_of = [&](const Word& r_word) {
        Word out(B, {});
        for (auto s : r_word.symbols()) out += psi_im[static_cast<std::size_t>(s)];
        return out;
    };

    std::vector<Word> zeta_im;
    for (std::size_t j = 0; j < card; ++j) {
        const Word& tj = tau_k.image(j);
        for (std::size_t p = 1; p <= len[j]; ++p) {
            if (p < len[j])
                zeta_im.push_back(psi_of(tj.sub(p - 1, 1)));
            else
                zeta_im.push_back(psi_of(tj.sub(len[j] - 1, tj.size() - (len[j] - 1))));
        }
    }

    ZetaParts parts{B, Morphism(B, theta.codomain(), std::move(phi_im)),
                    Morphism(theta.domain(), B, std::move(psi_im)),
                    Morphism(B, B, std::move(zeta_im))};
    return parts;
}

inline ProperizationResult properize_impl(const Substitution& s, bool allow_rederive) {
    if (!s.primitive()) throw error("properization requires a primitive substitution");
    const Alphabet& A = s.alphabet();

    if (is_proper(s.morphism())) {
        Morphism id = Morphism::identity(A);
        return ProperizationResult{true, s,  id, id, id, std::nullopt, 0, true, 0,
                                   false, std::nullopt, ""};
    }

    DerivedSubstitution der = return_words_closure(s);
    const Morphism& theta = der.coding.theta;
    const Morphism& tau = der.tau.morphism();
    const std::size_t card = theta.domain().size();

    std::size_t maxlen = 0;
    for (std::size_t j = 0; j < card; ++j) maxlen = std::max(maxlen, theta.image(j).size());

    std::string diag;
    std::size_t k = 1, escalations = 0;
    Morphism tau_k = tau;
    auto bump = [&] { tau_k = tau.compose(tau_k); ++k; };

    // minimal k with |tau^k(j)| >= |Theta(j)| for every j
    auto lengths_ok = [&] {
        for (std::size_t j = 0; j < card; ++j)
            if (tau_k.image(j).size() < theta.image(j).size()) return false;
        return true;
    };
    while (!lengths_ok()) {
        if (k > 64) throw error("properization: length condition unreachable (internal error)");
        bump();
    }

    // tau^k must itself be proper or zeta(.,1) already disagrees on first letters
    while (!(is_proper(tau_k) && tau_k.image(0)[0] == 0)) {
        if (escalations > card + 4)
            throw error("properization: no power of tau is proper (internal error)");
        bump();
        ++escalations;
    }
    if (escalations)
        diag += "tau is not proper; raised the power to k=" + std::to_string(k) + ". ";

    // feasibility of letter-properness for *any* k: the tau-fixed point must
    // begin with maxlen copies of letter 1
    bool feasible = true;
    {
        Word y = Word::letter(theta.domain(), 0);
        while (y.size() < maxlen) y = tau.apply(y);
        for (std::size_t i = 0; i < maxlen; ++i) feasible = feasible && y[i] == 0;
    }

    ZetaParts parts = build_zeta(theta, tau_k);
    bool zeta_proper = is_proper(parts.zeta);
    if (!zeta_proper && feasible) {
        for (int attempt = 0; attempt < 32 && !zeta_proper; ++attempt) {
            bump();
            ++escalations;
            parts = build_zeta(theta, tau_k);
            zeta_proper = is_proper(parts.zeta);
        }
        if (zeta_proper)
            diag += "zeta became proper after raising k to " + std::to_string(k) + ". ";
    } else if (!zeta_proper) {
        diag += "no power of tau yields a letter-proper zeta: the derived fixed point "
                "continues with a letter other than 1 within the first " +
                std::to_string(maxlen) + " positions. ";
    }

    // exact certificates, independent of properness
    if (parts.phi.compose(parts.psi) != theta)
        throw error("properization certificate failed: phi.psi != Theta");
    if (parts.zeta.compose(parts.psi) != parts.psi.compose(tau_k))
        throw error("properization certificate failed: zeta.psi != psi.tau^k");
    if (!is_primitive(parts.zeta))
        throw error("properization produced a non-primitive zeta (internal error)");

    Substitution zeta1 = Substitution::make(parts.zeta);
    if (zeta1.power_applied() != 1)
        throw error("properization: zeta lost its seed letter (internal error)");

    ProperizationResult out{false, zeta1,        parts.phi, parts.psi, theta,
                            std::move(der),      k,         zeta_proper, escalations,
                            false, std::nullopt, ""};

    if (!zeta_proper && allow_rederive) {
        ProperizationResult inner = properize_impl(zeta1, false);
        if (inner.zeta_proper) {
            diag += "applied the construction a second time, to zeta itself; the result is "
                    "proper on " + std::to_string(inner.zeta.alphabet().size()) + " letters. ";
            out.zeta_first = std::move(out.zeta);
            out.zeta = std::move(inner.zeta);
            out.rederived = true;
            out.zeta_proper = true;
        } else {
            diag += "re-applying the construction to zeta did not reach letter-properness "
                    "either; reporting the first-level zeta. ";
        }
    }

    out.diagnostic = std::move(diag);
    return out;
}

}  // namespace detail

/// See the file comment.  phi, psi and theta always describe the first-level
/// construction (so phi.psi = theta holds for every result); when rederived
/// is set, zeta is the second-level substitution and zeta_first the first.
inline ProperizationResult properize(const Substitution& s) {
    return detail::properize_impl(s, true);
}

}  // namespace subshift
