#pragma once
/**
 * @file analysis.hpp
 * @brief Exact decision procedure for finiteness of the Cantor factors of a
 *        primitive substitution subshift, plus spectrum diagnostics.
 *
 * Everything is computed with exact integer / rational arithmetic.  Writing
 * M for the transposed incidence matrix of a proper presentation and e for
 * the all-ones vector (so M^k e lists the image lengths of sigma^k), let
 * r be the largest index with e, Me, ..., M^r e linearly independent and
 *   Q(X) = X^{r+1} - c_r X^r - ... - c_0
 * the monic relation satisfied by the Krylov iterates (its coefficients are
 * integers).  With g the gcd of the non-leading coefficients of Q:
 *   - the collection of Cantor factors is finite            iff g = 1,
 *   - the collection of aperiodic Cantor factors is finite  iff g = 1 or
 *     g is prime.
 * For constant-length substitutions (|sigma(a)| = l for every a) the matrix
 * identity Me = l e forces r = 0, Q = X - l and g = l, and the maximal
 * equicontinuous factor is the odometer with stationary base (h, l, l, ...),
 * where h is the largest divisor of the gcd of the return times of the
 * first letter that is coprime to l.
 */

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "exact.hpp"
#include "morphism.hpp"
#include "properize.hpp"
#include "returnwords.hpp"

namespace subshift {

// ---------------------------------------------------------------------------
// primality / factoring helpers (exact; deterministic in the certified range)
// ---------------------------------------------------------------------------

namespace detail {

inline bool strong_probable_prime(const Integer& n, const Integer& a,
                                  const Integer& d, unsigned s) {
    Integer x = boost::multiprecision::powm(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = boost::multiprecision::powm(x, 2, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace detail

/// Miller-Rabin with the fixed witness set {2,...,37}: deterministic for
/// n < 3.317e24, an extremely strong probable-prime test beyond.
inline bool is_prime(const Integer& n) {
    static const int small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (int p : small_primes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Integer d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) {
        d >>= 1;
        ++s;
    }
    for (int a : small_primes)
        if (!detail::strong_probable_prime(n, a, d, s)) return false;
    return true;
}

/// Distinct prime divisors of |n| by trial division up to 1e6 plus a
/// primality test on the cofactor.  A composite cofactor beyond the trial
/// range is returned through *leftover (or raises an error when leftover is
/// null); callers treat leftover > 1 as "list may be incomplete".
inline std::vector<Integer> prime_divisors(Integer n, Integer* leftover = nullptr) {
    std::vector<Integer> ps;
    if (leftover) *leftover = 1;
    if (n < 0) n = -n;
    if (n <= 1) return ps;
    auto strip = [&](const Integer& p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    };
    strip(2);
    strip(3);
    for (Integer p = 5; p * p <= n && p < 1000000; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1) {
        if (n < Integer(1000000) * 1000000 || is_prime(n)) {
            ps.push_back(n);
        } else if (leftover) {
            *leftover = n;
        } else {
            throw error("prime_divisors: composite cofactor " + n.str() + " too large to factor");
        }
    }
    return ps;
}

// ---------------------------------------------------------------------------
// restricted characteristic polynomial and the gcd criterion
// ---------------------------------------------------------------------------

struct RestrictedCharPoly {
    std::size_t r = 0;  ///< last index with e, Me, ..., M^r e independent
    IntPolynomial Q;    ///< monic, degree r+1, annihilates e under M
};

inline RestrictedCharPoly restricted_char_poly(const IntegerMatrix& m) {
    KrylovData kd = krylov(m);
    std::vector<Integer> qc(kd.r + 2);
    for (std::size_t i = 0; i <= kd.r; ++i) {
        const Rational& c = kd.coeffs[i];
        if (boost::multiprecision::denominator(c) != 1)
            throw error("restricted_char_poly: non-integer coefficient (internal error)");
        qc[i] = -boost::multiprecision::numerator(c);
    }
    qc[kd.r + 1] = 1;
    return {kd.r, IntPolynomial(std::move(qc))};
}

/// gcd of the absolute non-leading coefficients, with gcd(0, x) = |x|.
inline Integer nonleading_gcd(const IntPolynomial& q) {
    if (q.degree() < 0) throw error("nonleading_gcd of the zero polynomial");
    Integer g = 0;
    for (int i = 0; i < q.degree(); ++i)
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(q.coeff(i)));
    return g;
}

// ---------------------------------------------------------------------------
// Dekking height for constant-length substitutions
// ---------------------------------------------------------------------------

struct DekkingHeight {
    std::size_t occurrence_gcd = 0;     ///< gcd of the return times of x_0
    std::size_t column_number = 1;      ///< h: largest divisor coprime to l
    std::size_t stabilized_prefix = 0;  ///< prefix length at which the gcd stabilized
};

/// Variant taking the expected length l explicitly; fails fast when the
/// substitution is not of constant length l.
inline DekkingHeight dekking_h(const Substitution& s, std::size_t l);

/// The gcd of {i > 0 : x_i = x_0} is monotone non-increasing in the prefix
/// length; it is accepted once it survives a doubling of the prefix.
inline DekkingHeight dekking_h(const Substitution& s) {
    auto l = constant_length(s.morphism());
    if (!l) throw error("dekking_h is defined for constant-length substitutions");
    std::size_t prev = 0;
    bool have_prev = false;
    for (std::size_t n = 64; n <= (std::size_t{1} << 20); n *= 2) {
        Word x = fixed_point_prefix(s, n);
        std::size_t g = 0, count = 0;
        for (std::size_t i = 1; i < x.size(); ++i) {
            if (x[i] == x[0]) {
                g = std::gcd(g, i);
                ++count;
            }
        }
        if (count >= 2 && have_prev && g == prev) {
            DekkingHeight out;
            out.occurrence_gcd = g;
            out.stabilized_prefix = n;
            std::size_t h = g;
            for (std::size_t d = std::gcd(h, *l); d > 1; d = std::gcd(h, *l)) h /= d;
            out.column_number = h;
            return out;
        }
        prev = g;
        have_prev = count >= 2;
    }
    throw error("dekking_h: the occurrence gcd did not stabilize within the probe cap");
}

inline DekkingHeight dekking_h(const Substitution& s, std::size_t l) {
    auto actual = constant_length(s.morphism());
    if (!actual || *actual != l)
        throw error("dekking_h: substitution is not of constant length " + std::to_string(l));
    return dekking_h(s);
}

// ---------------------------------------------------------------------------
// the verdict
// ---------------------------------------------------------------------------

struct ConstantLengthData {
    std::size_t length = 0;             ///< l
    std::size_t occurrence_gcd = 0;
    std::size_t column_number = 1;      ///< h; odometer base is (h, l, l, ...)
    std::size_t h_stabilized_at = 0;
};

struct ProperizationNote {
    std::size_t k = 0;
    bool zeta_proper = false;
    bool rederived = false;
    std::size_t zeta_letters = 0;
    std::string diagnostic;
};

struct Verdict {
    std::string input;                ///< printable rules actually analyzed
    std::size_t power_applied = 1;    ///< power taken to obtain a seed letter
    ProbeResult probe;                ///< periodicity probe of the fixed point
    std::string path;                 ///< "constant-length" | "proper" | "properized"
    IntegerMatrix matrix;             ///< transposed incidence matrix used
    std::size_t r = 0;
    IntPolynomial Q;
    Integer g = 0;
    bool factors_finite = false;           ///< finitely many Cantor factors
    bool aperiodic_factors_finite = false; ///< finitely many aperiodic Cantor factors
    std::vector<Integer> spectrum_primes;  ///< prime divisors of g (odometer primes)
    std::optional<ConstantLengthData> constant_length;
    std::optional<ProperizationNote> properization;
    std::vector<std::string> warnings;
};

struct VerdictOptions {
    std::size_t probe_horizon = 64;
};

inline Verdict cantor_factor_verdict(const Substitution& s, VerdictOptions opt = {}) {
    if (!s.primitive()) throw error("the decision procedure requires a primitive substitution");
    Verdict v;
    v.input = s.morphism().str();
    v.power_applied = s.power_applied();
    v.probe = periodicity_probe(s, opt.probe_horizon);
    if (v.probe.periodic)
        v.warnings.push_back("the fixed point is periodic with period '" + v.probe.period.str() +
                             "'; the subshift is finite and both factor collections are "
                             "trivially finite");

    std::optional<ProperizationResult> prop;
    const Morphism* use = &s.morphism();
    if (auto l = constant_length(s.morphism())) {
        v.path = "constant-length";
        DekkingHeight dh = dekking_h(s);
        v.constant_length =
            ConstantLengthData{*l, dh.occurrence_gcd, dh.column_number, dh.stabilized_prefix};
    } else if (is_proper(s.morphism())) {
        v.path = "proper";
    } else {
        v.path = "properized";
        prop = properize(s);
        use = &prop->zeta.morphism();
        v.properization = ProperizationNote{prop->k, prop->zeta_proper, prop->rederived,
                                            prop->zeta.alphabet().size(), prop->diagnostic};
        if (!prop->zeta_proper)
            v.warnings.push_back(
                "properization did not reach a letter-proper presentation; the verdict is "
                "computed from the best-effort zeta. " + prop->diagnostic);
    }

    v.matrix = use->incidence_matrix().transposed();
    RestrictedCharPoly rq = restricted_char_poly(v.matrix);
    v.r = rq.r;
    v.Q = std::move(rq.Q);
    v.g = nonleading_gcd(v.Q);

    if (v.constant_length) {
        IntPolynomial want({-Integer(v.constant_length->length), 1});
        if (v.r != 0 || v.Q != want)
            throw error("constant-length specialization disagrees with the Krylov data "
                        "(internal error)");
    }
    if (v.g == 0)
        v.warnings.push_back("all non-leading coefficients of Q vanish; this cannot happen "
                             "for a primitive substitution");

    v.factors_finite = v.g == 1;
    v.aperiodic_factors_finite = v.g == 1 || is_prime(v.g);

    Integer leftover;
    v.spectrum_primes = prime_divisors(v.g, &leftover);
    if (leftover > 1)
        v.warnings.push_back("could not finish factoring g; the odometer prime list omits "
                             "the divisors of " + leftover.str());
    return v;
}

/// Verdict for a substitution asserted to be of constant length l; the
/// result carries the odometer data (h, l, l, ...) in constant_length.
inline Verdict constant_length_verdict(const Substitution& s, std::size_t l,
                                       VerdictOptions opt = {}) {
    auto actual = constant_length(s.morphism());
    if (!actual || *actual != l)
        throw error("constant_length_verdict: substitution is not of constant length " +
                    std::to_string(l));
    return cantor_factor_verdict(s, opt);
}

// ---------------------------------------------------------------------------
// spectrum probes
// ---------------------------------------------------------------------------

struct PowerWitnesses {
    Integer p;
    std::size_t r = 0;
    std::size_t nmax = 0;
    /// witness[n-1] = smallest m with M^m e = 0 mod p^n, searched for
    /// m <= n(r+1) + r + 1; absent when no such m exists in that range.
    std::vector<std::optional<std::size_t>> witness;
    bool all_found = true;  ///< true iff every n <= nmax has a witness
};

/// The theorem behind the search bound: if p^n divides some M^m e then it
/// already divides M^m e for an m <= n(r+1) + r + 1, so a bounded scan is a
/// complete decision procedure for each n.
inline PowerWitnesses power_witnesses(const IntegerMatrix& m, const Integer& p,
                                      std::size_t nmax) {
    if (p < 2 || !is_prime(p)) throw error("power_witnesses needs a prime p");
    if (!m.square()) throw error("power_witnesses: matrix not square");
    RestrictedCharPoly rq = restricted_char_poly(m);
    PowerWitnesses out;
    out.p = p;
    out.r = rq.r;
    out.nmax = nmax;
    for (std::size_t n = 1; n <= nmax; ++n) {
        Integer mod = boost::multiprecision::pow(p, static_cast<unsigned>(n));
        IntVector v = ones_vector(m.rows());
        const std::size_t bound = n * (rq.r + 1) + rq.r + 1;
        std::optional<std::size_t> found;
        for (std::size_t step = 1; step <= bound && !found; ++step) {
            v = m.apply(v);
            bool zero = true;
            for (auto& x : v) {
                x = ((x % mod) + mod) % mod;
                zero = zero && x == 0;
            }
            if (zero) found = step;
        }
        out.all_found = out.all_found && found.has_value();
        out.witness.push_back(found);
    }
    return out;
}

/// Substitution front end; the underlying statement is about proper
/// presentations, so improper input is rejected (properize first).
inline PowerWitnesses power_in_spectrum(const Substitution& s, const Integer& p,
                                        std::size_t nmax) {
    if (!s.primitive()) throw error("power_in_spectrum requires a primitive substitution");
    if (!is_proper(s.morphism()))
        throw error("power_in_spectrum requires a proper substitution; properize first");
    return power_witnesses(s.morphism().incidence_matrix().transposed(), p, nmax);
}

struct SpectrumCandidates {
    Integer determinant;             ///< det of the incidence matrix of sigma
    std::size_t return_word_length;  ///< |u|, u the first return word to the seed
    std::vector<Integer> primes;     ///< prime divisors of |u| * |det|
    Integer unfactored = 1;          ///< composite cofactor when factoring gave up
};

/// Every prime giving an odometer in the spectrum divides |u| * |det M|.
/// Unavailable (nullopt) when the incidence matrix is singular.
inline std::optional<SpectrumCandidates> spectrum_prime_candidates(const Substitution& s) {
    if (!s.primitive())
        throw error("spectrum_prime_candidates requires a primitive substitution");
    Integer det = determinant(s.morphism().incidence_matrix());
    if (det == 0) return std::nullopt;
    std::size_t ret = 0;
    for (std::size_t n = 16; n <= (std::size_t{1} << 16) && !ret; n *= 2) {
        Word x = fixed_point_prefix(s, n);
        for (std::size_t i = 1; i < x.size() && !ret; ++i)
            if (x[i] == x[0]) ret = i;
    }
    if (!ret) throw error("spectrum_prime_candidates: seed letter does not recur");
    SpectrumCandidates out;
    out.determinant = det;
    out.return_word_length = ret;
    out.primes = prime_divisors(Integer(ret) * boost::multiprecision::abs(det), &out.unfactored);
    return out;
}

// ---------------------------------------------------------------------------
// factor-count bound for linearly recurrent subshifts
// ---------------------------------------------------------------------------

/// A subshift that is linearly recurrent with constant K has at most
/// ((2K(2K+1)^2)^{4K^2})^{K(K+1)^2} aperiodic Cantor factors.
inline Integer factor_count_bound(std::size_t K) {
    if (K == 0) throw error("factor_count_bound is defined for K >= 1");
    if (K > 12)
        throw error("factor_count_bound: K > 12 yields numbers with millions of digits");
    Integer base = Integer(2) * K * (2 * K + 1) * (2 * K + 1);
    const unsigned long exponent =
        (4UL * K * K) * (static_cast<unsigned long>(K) * (K + 1) * (K + 1));
    return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

}  // namespace subshift
