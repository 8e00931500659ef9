/**
 * @file subshift_main.cpp
 * @brief Command-line front end: analyze substitution files, properize,
 *        compute return words and derived substitutions, probe the spectrum,
 *        generate Sturmian prefixes with an exact oracle check, run
 *        linear-recurrence diagnostics, and print the factor-count bound.
 *
 * Exit codes: 0 success, 1 analysis error (non-primitive input, failed
 * certificate, ...), 2 usage or file/parse error.
 */

#include <CLI11.hpp>

#include <future>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <subshift/report.hpp>

namespace {

using namespace subshift;

constexpr int kOk = 0, kAnalysisError = 1, kUsageError = 2;

struct Report {
    int code = kOk;
    std::string text;
};

template <class Fn>
Report guarded(const std::string& path, Fn&& fn) {
    Report rep;
    std::ostringstream out;
    try {
        Morphism m = load_substitution_file(path);
        try {
            rep.code = fn(m, out);
        } catch (const error& e) {
            out << "error: " << e.what() << "\n";
            rep.code = kAnalysisError;
        }
    } catch (const error& e) {
        out << "error: " << e.what() << "\n";
        rep.code = kUsageError;
    }
    rep.text = std::move(out).str();
    return rep;
}

int cmd_analyze(const std::vector<std::string>& files, bool json_out, std::size_t horizon) {
    auto one = [&](const std::string& path) {
        return guarded(path, [&](const Morphism& m, std::ostringstream& out) {
            Substitution s = Substitution::make(m);
            Verdict v = cantor_factor_verdict(s, VerdictOptions{horizon});
            if (json_out) {
                json j = v;
                j["file"] = path;
                out << j.dump(2) << "\n";
            } else {
                out << "== " << path << " ==\n" << describe(v);
            }
            return kOk;
        });
    };
    // batch mode: independent files analyzed concurrently, printed in order
    std::vector<std::future<Report>> futs;
    futs.reserve(files.size());
    for (const std::string& f : files)
        futs.push_back(std::async(std::launch::async, one, f));
    int code = kOk;
    for (auto& fut : futs) {
        Report rep = fut.get();
        std::cout << rep.text;
        code = std::max(code, rep.code);
    }
    return code;
}

int cmd_properize(const std::string& file, bool json_out) {
    Report rep = guarded(file, [&](const Morphism& m, std::ostringstream& out) {
        ProperizationResult r = properize(Substitution::make(m));
        if (json_out)
            out << json(r).dump(2) << "\n";
        else
            out << describe(r);
        return r.zeta_proper ? kOk : kAnalysisError;
    });
    std::cout << rep.text;
    return rep.code;
}

int cmd_return_words(const std::string& anchor_text, const std::string& file, bool json_out,
                     std::size_t prefix_len) {
    Report rep = guarded(file, [&](const Morphism& m, std::ostringstream& out) {
        Substitution s = Substitution::make(m);
        Word prefix = fixed_point_prefix(s, prefix_len);
        Word anchor = parse_word(s.alphabet(), anchor_text);
        ReturnCoding c = return_words_in_prefix(prefix, anchor);
        if (json_out)
            out << json(c).dump(2) << "\n";
        else
            out << describe(c);
        return kOk;
    });
    std::cout << rep.text;
    return rep.code;
}

int cmd_derived(const std::string& file, bool json_out) {
    Report rep = guarded(file, [&](const Morphism& m, std::ostringstream& out) {
        DerivedSubstitution d = return_words_closure(Substitution::make(m));
        if (json_out)
            out << json(d).dump(2) << "\n";
        else
            out << describe(d);
        return kOk;
    });
    std::cout << rep.text;
    return rep.code;
}

int cmd_spectrum(const std::string& p_text, std::size_t nmax, const std::string& file,
                 bool json_out) {
    Report rep = guarded(file, [&](const Morphism& m, std::ostringstream& out) {
        Substitution s = Substitution::make(m);
        Integer p(p_text);
        auto cand = spectrum_prime_candidates(s);  // from the original substitution
        std::string note;
        if (!is_proper(s.morphism())) {
            ProperizationResult r = properize(s);
            if (!r.zeta_proper)
                throw error("input is not proper and properization failed: " + r.diagnostic);
            note = "input was not proper; the probe ran on its properization (" +
                   std::to_string(r.zeta.alphabet().size()) + " letters, k = " +
                   std::to_string(r.k) + ")";
            s = r.zeta;
        }
        PowerWitnesses w = power_in_spectrum(s, p, nmax);
        if (json_out) {
            json j = w;
            if (!note.empty()) j["note"] = note;
            if (cand) j["candidates"] = *cand;
            out << j.dump(2) << "\n";
        } else {
            if (!note.empty()) out << note << "\n";
            out << describe(w);
            if (cand) out << describe(*cand);
        }
        return kOk;
    });
    std::cout << rep.text;
    return rep.code;
}

int cmd_sturmian(const std::string& cf_text, std::size_t len, bool check, std::size_t s0,
                 bool json_out) {
    try {
        ContinuedFraction cf = parse_cf(cf_text);
        try {
            DirectiveSequence d = sturmian_directive(cf, len);
            Word prefix = sadic_prefix(d, len);
            json j;
            j["prefix"] = prefix.str();
            j["directive_steps"] = d.steps.size();
            bool ok = true;
            if (check) {
                Word oracle = rotation_coding_prefix(cf, len);
                const std::size_t upto = std::min<std::size_t>(12, len);
                bool agree = true;
                std::size_t first_bad = 0;
                for (std::size_t n = 1; n <= upto && agree; ++n) {
                    if (factor_set(prefix, n) != factor_set(oracle, n)) {
                        agree = false;
                        first_bad = n;
                    }
                }
                j["oracle_check"] = {{"agree", agree}, {"lengths_checked", upto}};
                if (!agree) j["oracle_check"]["first_disagreement"] = first_bad;
                ok = ok && agree;
            }
            if (s0 > 0) {
                PrimitiveWindowCheck w = primitive_window_check(d, s0);
                j["window_check"] = w;
                ok = ok && w.all_positive;
            }
            if (json_out) {
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << prefix.str() << "\n";
                if (check)
                    std::cout << "rotation-coding oracle (factor sets, n <= "
                              << j["oracle_check"]["lengths_checked"] << "): "
                              << (j["oracle_check"]["agree"].get<bool>() ? "agree" : "DISAGREE")
                              << "\n";
                if (s0 > 0)
                    std::cout << "primitive window check (s0 = " << s0 << "): "
                              << (j["window_check"]["all_positive"].get<bool>() ? "all positive"
                                                                                : "NOT positive")
                              << "\n";
            }
            return ok ? kOk : kAnalysisError;
        } catch (const error& e) {
            std::cout << "error: " << e.what() << "\n";
            return kAnalysisError;
        }
    } catch (const error& e) {
        std::cout << "error: " << e.what() << "\n";
        return kUsageError;
    }
}

int cmd_lr_estimate(const std::string& file, std::size_t prefix_len, std::size_t max_anchor,
                    std::size_t check_k, bool json_out) {
    Report rep = guarded(file, [&](const Morphism& m, std::ostringstream& out) {
        Substitution s = Substitution::make(m);
        Word prefix = fixed_point_prefix(s, prefix_len);
        LrEstimate e = lr_estimate(prefix, max_anchor);
        std::optional<LrDiagnostics> diag;
        if (check_k > 0) diag = lr_diagnostics(prefix, check_k, max_anchor);
        if (json_out) {
            json j = e;
            if (diag) j["diagnostics"] = *diag;
            out << j.dump(2) << "\n";
        } else {
            out << describe(e);
            if (diag) out << describe(*diag);
        }
        return diag && !diag->all_ok() ? kAnalysisError : kOk;
    });
    std::cout << rep.text;
    return rep.code;
}

int cmd_sadic_decompose(const std::string& file, std::size_t K, std::size_t depth,
                        std::size_t prefix_len, bool json_out) {
    Report rep = guarded(file, [&](const Morphism& m, std::ostringstream& out) {
        Substitution s = Substitution::make(m);
        Word prefix = fixed_point_prefix(s, prefix_len);
        SadicDecomposition d = sadic_decomposition(prefix, K, depth);
        if (json_out)
            out << json(d).dump(2) << "\n";
        else
            out << describe(d);
        return kOk;
    });
    std::cout << rep.text;
    return rep.code;
}

int cmd_bound(std::size_t K, bool json_out) {
    try {
        Integer b = factor_count_bound(K);
        if (json_out)
            std::cout << json{{"K", K}, {"bound", b.str()}}.dump(2) << "\n";
        else
            std::cout << "a linearly recurrent subshift with constant " << K << " has at most\n"
                      << b.str() << "\naperiodic Cantor factors\n";
        return kOk;
    } catch (const error& e) {
        std::cout << "error: " << e.what() << "\n";
        return kUsageError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis of primitive substitution subshifts: return words, derived and "
                 "proper substitutions, exact finiteness verdicts for Cantor factors, "
                 "Sturmian generation and linear-recurrence diagnostics"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json_out = false;
    app.add_flag("--json", json_out, "emit machine-readable JSON instead of text");

    auto* analyze = app.add_subcommand("analyze", "finiteness verdict for one or more files");
    std::vector<std::string> files;
    std::size_t horizon = 64;
    analyze->add_option("files", files, "substitution rule files")->required();
    analyze->add_option("--horizon", horizon, "periodicity probe horizon")->capture_default_str();

    auto* prop = app.add_subcommand("properize", "construct the proper substitution zeta");
    std::string prop_file;
    prop->add_option("file", prop_file, "substitution rule file")->required();

    auto* retw = app.add_subcommand("return-words", "return words to an anchor (prefix scan)");
    std::string anchor_text, retw_file;
    std::size_t retw_prefix = 4096;
    retw->add_option("anchor", anchor_text, "anchor word (must be a prefix of the fixed point)")
        ->required();
    retw->add_option("file", retw_file, "substitution rule file")->required();
    retw->add_option("--prefix-len", retw_prefix, "fixed-point prefix length to scan")
        ->capture_default_str();

    auto* der = app.add_subcommand("derived", "derived substitution tau with sigma.Theta = Theta.tau");
    std::string der_file;
    der->add_option("file", der_file, "substitution rule file")->required();

    auto* spectrum_cmd = app.add_subcommand("spectrum", "does the p-adic odometer embed in the spectrum");
    std::string spec_p, spec_file;
    std::size_t spec_nmax = 3;
    spectrum_cmd->add_option("p", spec_p, "prime to probe")->required();
    spectrum_cmd->add_option("nmax", spec_nmax, "check powers p^1 .. p^nmax")->required();
    spectrum_cmd->add_option("file", spec_file, "substitution rule file")->required();

    auto* sturm = app.add_subcommand("sturmian", "Sturmian prefix from a continued fraction");
    std::string cf_text;
    std::size_t sturm_len = 100, sturm_s0 = 0;
    bool sturm_check = false;
    sturm->add_option("--cf", cf_text, "continued fraction coefficients, e.g. 0,1,2,2")
        ->required();
    sturm->add_option("--len", sturm_len, "prefix length")->capture_default_str();
    sturm->add_flag("--check", sturm_check, "verify against the exact rotation coding");
    sturm->add_option("--s0", sturm_s0, "also run the primitive window check with this window");

    auto* lre = app.add_subcommand("lr-estimate", "estimate the linear-recurrence constant");
    std::string lre_file;
    std::size_t lre_prefix = 4096, lre_anchor = 8, lre_k = 0;
    lre->add_option("file", lre_file, "substitution rule file")->required();
    lre->add_option("--prefix-len", lre_prefix, "fixed-point prefix length")->capture_default_str();
    lre->add_option("--max-anchor", lre_anchor, "largest anchor length")->capture_default_str();
    lre->add_option("--check-k", lre_k, "also run the four LR(K) diagnostics for this K");

    auto* sd = app.add_subcommand("sadic-decompose", "return-word recoding chain of a prefix");
    std::string sd_file;
    std::size_t sd_k = 2, sd_depth = 1, sd_prefix = 10000;
    sd->add_option("file", sd_file, "substitution rule file")->required();
    sd->add_option("--k", sd_k, "linear-recurrence constant K (alpha = K^2(K+1))")
        ->capture_default_str();
    sd->add_option("--depth", sd_depth, "number of recoding levels")->capture_default_str();
    sd->add_option("--prefix-len", sd_prefix, "fixed-point prefix length")->capture_default_str();

    auto* bound = app.add_subcommand("bound", "factor-count bound for LR(K) subshifts");
    std::size_t bound_k = 1;
    bound->add_option("K", bound_k, "linear-recurrence constant")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    if (analyze->parsed()) return cmd_analyze(files, json_out, horizon);
    if (prop->parsed()) return cmd_properize(prop_file, json_out);
    if (retw->parsed()) return cmd_return_words(anchor_text, retw_file, json_out, retw_prefix);
    if (der->parsed()) return cmd_derived(der_file, json_out);
    if (spectrum_cmd->parsed()) return cmd_spectrum(spec_p, spec_nmax, spec_file, json_out);
    if (sturm->parsed())
        return cmd_sturmian(cf_text, sturm_len, sturm_check, sturm_s0, json_out);
    if (lre->parsed())
        return cmd_lr_estimate(lre_file, lre_prefix, lre_anchor, lre_k, json_out);
    if (sd->parsed()) return cmd_sadic_decompose(sd_file, sd_k, sd_depth, sd_prefix, json_out);
    if (bound->parsed()) return cmd_bound(bound_k, json_out);
    return kUsageError;
}
