#pragma once
/**
 * @file report.hpp
 * @brief JSON and human-readable views of the analysis results.
 *
 * Every arbitrary-precision integer or rational is serialized as a decimal
 * string so that consumers never lose precision to floating point; absent
 * optional sections are omitted from the JSON objects entirely.
 */

#include <json.hpp>

#include <sstream>
#include <string>

#include "analysis.hpp"
#include "parse.hpp"
#include "properize.hpp"
#include "returnwords.hpp"
#include "sadic.hpp"

namespace subshift {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// JSON serializers (big numbers as decimal strings)
// ---------------------------------------------------------------------------

inline void to_json(json& j, const Word& w) { j = w.str(); }

inline void to_json(json& j, const Alphabet& a) { j = a.letters(); }

inline void to_json(json& j, const Morphism& m) {
    json rules = json::array();
    for (std::size_t i = 0; i < m.domain().size(); ++i)
        rules.push_back({{"letter", m.domain().letter(i)}, {"image", m.image(i).str()}});
    j = {{"alphabet", m.domain()}, {"rules", rules}};
}

inline void to_json(json& j, const IntegerMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(i, c).str());
        rows.push_back(std::move(row));
    }
    j = rows;
}

inline void to_json(json& j, const IntPolynomial& p) {
    json coeffs = json::array();
    for (int i = 0; i <= p.degree(); ++i) coeffs.push_back(p.coeff(i).str());
    j = {{"degree", p.degree()}, {"coefficients_low_to_high", coeffs}, {"display", p.str()}};
}

inline void to_json(json& j, const ProbeResult& p) {
    j = {{"periodic", p.periodic},
         {"evidence_depth", p.evidence_depth},
         {"horizon", p.horizon},
         {"prefix_len", p.prefix_len}};
    if (p.periodic) j["period"] = p.period.str();
}

inline void to_json(json& j, const ReturnCoding& c) {
    j = {{"anchor", c.anchor.str()}, {"theta", c.theta}, {"certified", c.certified}};
    if (c.derived_word) j["derived_word_prefix"] = c.derived_word->str();
}

inline void to_json(json& j, const DerivedSubstitution& d) {
    j = {{"coding", d.coding},
         {"tau", d.tau.morphism()},
         {"tau_proper", d.tau_proper}};
}

inline void to_json(json& j, const ProperizationResult& r) {
    j = {{"pass_through", r.pass_through},
         {"zeta", r.zeta.morphism()},
         {"zeta_alphabet", r.zeta.alphabet()},
         {"phi", r.phi},
         {"psi", r.psi},
         {"theta", r.theta},
         {"k", r.k},
         {"zeta_proper", r.zeta_proper},
         {"escalations", r.escalations},
         {"rederived", r.rederived}};
    if (r.derived) j["derived"] = *r.derived;
    if (r.zeta_first) j["zeta_first_level"] = r.zeta_first->morphism();
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
}

inline void to_json(json& j, const ConstantLengthData& c) {
    j = {{"length", c.length},
         {"occurrence_gcd", c.occurrence_gcd},
         {"column_number", c.column_number},
         {"h_stabilized_at", c.h_stabilized_at},
         {"odometer_base", {c.column_number, c.length, c.length}},
         {"odometer_base_note", "stationary: (h, l, l, ...)"}};
}

inline void to_json(json& j, const ProperizationNote& p) {
    j = {{"k", p.k},
         {"zeta_proper", p.zeta_proper},
         {"rederived", p.rederived},
         {"zeta_letters", p.zeta_letters}};
    if (!p.diagnostic.empty()) j["diagnostic"] = p.diagnostic;
}

inline void to_json(json& j, const Verdict& v) {
    json primes = json::array();
    for (const Integer& p : v.spectrum_primes) primes.push_back(p.str());
    j = {{"input", v.input},
         {"power_applied", v.power_applied},
         {"probe", v.probe},
         {"path", v.path},
         {"matrix", v.matrix},
         {"r", v.r},
         {"Q", v.Q},
         {"g", v.g.str()},
         {"factors_finite", v.factors_finite},
         {"aperiodic_factors_finite", v.aperiodic_factors_finite},
         {"spectrum_primes", primes},
         {"warnings", v.warnings}};
    if (v.constant_length) j["constant_length"] = *v.constant_length;
    if (v.properization) j["properization"] = *v.properization;
}

inline void to_json(json& j, const PowerWitnesses& w) {
    json per_n = json::array();
    for (std::size_t n = 1; n <= w.witness.size(); ++n) {
        json e = {{"n", n}, {"found", w.witness[n - 1].has_value()}};
        if (w.witness[n - 1]) e["m"] = *w.witness[n - 1];
        per_n.push_back(std::move(e));
    }
    j = {{"p", w.p.str()}, {"r", w.r}, {"nmax", w.nmax}, {"witnesses", per_n},
         {"all_found", w.all_found}};
}

inline void to_json(json& j, const SpectrumCandidates& c) {
    json primes = json::array();
    for (const Integer& p : c.primes) primes.push_back(p.str());
    j = {{"determinant", c.determinant.str()},
         {"return_word_length", c.return_word_length},
         {"primes", primes}};
    if (c.unfactored > 1) j["unfactored_cofactor"] = c.unfactored.str();
}

inline void to_json(json& j, const AnchorStats& a) {
    j = {{"anchor", a.anchor},
         {"occurrences", a.occurrences},
         {"distinct_returns", a.distinct_returns},
         {"min_return", a.min_return},
         {"max_return", a.max_return}};
}

inline void to_json(json& j, const LrEstimate& e) {
    j = {{"prefix_len", e.prefix_len},
         {"max_anchor_len", e.max_anchor_len},
         {"anchors", e.anchors},
         {"rare_skipped", e.rare_skipped},
         {"max_ratio", e.max_ratio.str()},
         {"witness_anchor", e.witness_anchor},
         {"witness_return", e.witness_return},
         {"certified", false}};
}

inline void to_json(json& j, const LrDiagnostics& d) {
    j = {{"K", d.K},
         {"nmax", d.nmax},
         {"prefix_len", d.prefix_len},
         {"rare_anchors_skipped", d.rare_anchors_skipped},
         {"all_ok", d.all_ok()}};
    if (d.complexity)
        j["complexity_violation"] = {{"n", d.complexity->n},
                                     {"count", d.complexity->count},
                                     {"bound", d.complexity->bound}};
    if (d.power)
        j["power_violation"] = {{"root", d.power->root},
                                {"position", d.power->position},
                                {"exponent", d.power->exponent}};
    if (d.window)
        j["window_violation"] = {{"factor", d.window->factor},
                                 {"window_start", d.window->window_start},
                                 {"window_len", d.window->window_len}};
    if (d.returns)
        j["return_violation"] = {{"anchor", d.returns->anchor},
                                 {"count", d.returns->count},
                                 {"bound", d.returns->bound}};
}

inline void to_json(json& j, const SadicStage& s) {
    j = {{"anchor", s.anchor.str()},
         {"anchor_len", s.anchor.size()},
         {"coding", s.coding},
         {"lambda", s.lambda}};
}

inline void to_json(json& j, const SadicDecomposition& d) {
    j = {{"K", d.K}, {"alpha", d.alpha}, {"stages", d.stages}, {"composed", d.composed}};
}

inline void to_json(json& j, const PrimitiveWindowCheck& c) {
    j = {{"window", c.window}, {"positive", c.positive}, {"all_positive", c.all_positive}};
}

// ---------------------------------------------------------------------------
// human-readable reports
// ---------------------------------------------------------------------------

inline std::string indent_block(const std::string& text, const std::string& pad = "  ") {
    std::ostringstream out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out << pad << line << "\n";
    return out.str();
}

inline std::string describe(const ProbeResult& p) {
    if (p.periodic)
        return "fixed point is periodic with period \"" + p.period.str() + "\"";
    return "no period up to " + std::to_string(p.horizon) + "; complexity p(n) >= n+1 verified for n <= " +
           std::to_string(p.evidence_depth) + " (prefix of " + std::to_string(p.prefix_len) + ")";
}

inline std::string describe(const Verdict& v) {
    std::ostringstream out;
    out << "substitution:\n" << indent_block(v.input);
    if (v.power_applied > 1)
        out << "  (power " << v.power_applied << " taken to obtain a seed letter)\n";
    out << "periodicity probe: " << describe(v.probe) << "\n";
    out << "path: " << v.path << "\n";
    if (v.properization) {
        out << "properization: k = " << v.properization->k << ", zeta on "
            << v.properization->zeta_letters << " letters, "
            << (v.properization->zeta_proper ? "proper" : "NOT proper")
            << (v.properization->rederived ? ", re-derived once" : "") << "\n";
    }
    out << "transposed incidence matrix M:\n" << indent_block(v.matrix.str());
    out << "r = " << v.r << ",  Q = " << v.Q.str() << ",  g = " << v.g.str() << "\n";
    if (v.constant_length) {
        out << "constant length l = " << v.constant_length->length
            << ", column number h = " << v.constant_length->column_number
            << " (occurrence gcd " << v.constant_length->occurrence_gcd << " stabilized at prefix "
            << v.constant_length->h_stabilized_at << ")\n";
        out << "maximal equicontinuous factor: odometer with stationary base ("
            << v.constant_length->column_number << ", " << v.constant_length->length << ", "
            << v.constant_length->length << ", ...)\n";
    }
    out << "Cantor factors: " << (v.factors_finite ? "finitely many" : "infinitely many")
        << " (g " << (v.g == 1 ? "= 1" : "!= 1") << ")\n";
    out << "aperiodic Cantor factors: "
        << (v.aperiodic_factors_finite ? "finitely many" : "infinitely many");
    if (v.g != 1) out << " (g " << (v.aperiodic_factors_finite ? "prime" : "composite") << ")";
    out << "\n";
    if (!v.spectrum_primes.empty()) {
        out << "odometer primes (prime divisors of g):";
        for (const Integer& p : v.spectrum_primes) out << " " << p.str();
        out << "\n";
    }
    for (const std::string& w : v.warnings) out << "warning: " << w << "\n";
    return out.str();
}

inline std::string describe(const ReturnCoding& c) {
    std::ostringstream out;
    out << "anchor u = \"" << c.anchor.str() << "\""
        << (c.certified ? " (closure-certified)" : " (prefix scan, not certified)") << "\n";
    out << "return words Theta(j):\n" << indent_block(c.theta.str());
    if (c.derived_word) out << "derived word prefix: " << c.derived_word->str() << "\n";
    return out.str();
}

inline std::string describe(const DerivedSubstitution& d) {
    std::ostringstream out;
    out << describe(d.coding);
    out << "derived substitution tau (sigma.Theta = Theta.tau):\n"
        << indent_block(d.tau.morphism().str());
    out << "tau " << (d.tau_proper ? "is" : "is not") << " proper\n";
    return out.str();
}

inline std::string describe(const ProperizationResult& r) {
    std::ostringstream out;
    if (r.pass_through) {
        out << "already proper; returned unchanged with identity maps\n";
        return out.str();
    }
    out << "alphabet B (pairs (j,p), j a return word, p a position):\n  ";
    for (std::size_t i = 0; i < r.zeta.alphabet().size(); ++i) {
        if (r.rederived) break;  // second-level letters are pairs of pairs; list below
        out << (i ? " " : "") << r.zeta.alphabet().letter(i);
    }
    if (r.rederived && r.zeta_first)
        out << "(first level) " << r.zeta_first->alphabet().size() << " letters, (second level) "
            << r.zeta.alphabet().size() << " letters";
    out << "\n";
    out << "phi (letter map B -> A):\n" << indent_block(r.phi.str());
    out << "psi (return word -> its column of pairs):\n" << indent_block(r.psi.str());
    out << "zeta" << (r.rederived ? " (second level)" : "") << ":\n"
        << indent_block(r.zeta.morphism().str());
    out << "k = " << r.k << "; zeta " << (r.zeta_proper ? "verified proper" : "NOT proper")
        << "; escalations = " << r.escalations << (r.rederived ? "; re-derived once" : "") << "\n";
    if (!r.diagnostic.empty()) out << "diagnostic: " << r.diagnostic << "\n";
    return out.str();
}

inline std::string describe(const PowerWitnesses& w) {
    std::ostringstream out;
    out << "p = " << w.p.str() << ", r = " << w.r << "\n";
    for (std::size_t n = 1; n <= w.witness.size(); ++n) {
        out << "  p^" << n << " divides M^m e: ";
        if (w.witness[n - 1])
            out << "yes, first m = " << *w.witness[n - 1];
        else
            out << "no m up to the decision bound " << n * (w.r + 1) + w.r + 1;
        out << "\n";
    }
    out << (w.all_found ? "every requested power is reached: Z_p odometer in the spectrum"
                        : "not every power is reached: no Z_p odometer")
        << "\n";
    return out.str();
}

inline std::string describe(const SpectrumCandidates& c) {
    std::ostringstream out;
    out << "det(incidence) = " << c.determinant.str() << ", first return word length = "
        << c.return_word_length << "\n";
    out << "candidate odometer primes:";
    for (const Integer& p : c.primes) out << " " << p.str();
    if (c.unfactored > 1) out << " (plus divisors of unfactored " << c.unfactored.str() << ")";
    out << "\n";
    return out.str();
}

inline std::string describe(const LrEstimate& e) {
    std::ostringstream out;
    out << "prefix length " << e.prefix_len << ", anchors up to length " << e.max_anchor_len
        << ": " << e.anchors.size() << " anchors, " << e.rare_skipped
        << " skipped (fewer than 3 occurrences)\n";
    out << "max |return| / |anchor| = " << e.max_ratio.str();
    if (!e.witness_anchor.empty())
        out << "  (anchor \"" << e.witness_anchor << "\", return word \"" << e.witness_return
            << "\")";
    out << "\nestimate only: a prefix can only bound the constant from below\n";
    return out.str();
}

inline std::string describe(const LrDiagnostics& d) {
    std::ostringstream out;
    out << "linear recurrence diagnostics at K = " << d.K << ", factor lengths up to " << d.nmax
        << ", prefix " << d.prefix_len << ":\n";
    out << "  complexity p(n) <= Kn: ";
    if (d.complexity)
        out << "FAIL at n = " << d.complexity->n << " (p = " << d.complexity->count << " > "
            << d.complexity->bound << ")";
    else
        out << "pass";
    out << "\n  no (K+1)-th powers: ";
    if (d.power)
        out << "FAIL: \"" << d.power->root << "\"^" << d.power->exponent << " at position "
            << d.power->position;
    else
        out << "pass";
    out << "\n  every length-n factor in every (K+1)n window: ";
    if (d.window)
        out << "FAIL: \"" << d.window->factor << "\" misses the window at " << d.window->window_start
            << " (length " << d.window->window_len << ")";
    else
        out << "pass";
    out << "\n  Card R_u <= K(K+1)^2: ";
    if (d.returns)
        out << "FAIL: anchor \"" << d.returns->anchor << "\" has " << d.returns->count
            << " distinct return words (bound " << d.returns->bound << ")";
    else
        out << "pass (" << d.rare_anchors_skipped << " rare anchors skipped)";
    out << "\n  overall: " << (d.all_ok() ? "consistent with LR(K)" : "NOT LR(K)") << "\n";
    return out.str();
}

inline std::string describe(const SadicDecomposition& d) {
    std::ostringstream out;
    out << "K = " << d.K << ", alpha = K^2(K+1) = " << d.alpha << ", depth = "
        << (d.stages.size() - 1) << "\n";
    for (std::size_t n = 0; n < d.stages.size(); ++n) {
        const SadicStage& st = d.stages[n];
        out << "level " << n << ": anchor length " << st.anchor.size() << ", "
            << st.coding.theta.domain().size() << " return words\n";
        out << indent_block(st.lambda.str(), "    ");
    }
    out << "composed chain lambda_0 ... lambda_depth = Theta_depth verified; its image of 1 is a "
           "prefix of the input\n";
    return out.str();
}

}  // namespace subshift
