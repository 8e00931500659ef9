#include <catch2/catch_amalgamated.hpp>

#include <subshift/morphism.hpp>
#include <subshift/returnwords.hpp>

#include "corpus.hpp"

using namespace subshift;

TEST_CASE("index alphabet") {
    Alphabet a = index_alphabet(3);
    CHECK(a.size() == 3);
    CHECK(a.letter(0) == "1");
    CHECK(a.letter(2) == "3");
}

TEST_CASE("return words scanned from a prefix") {
    Substitution fib = Substitution::make(corpus::fibonacci());
    Word x = fixed_point_prefix(fib, 30);

    SECTION("single-letter anchor") {
        ReturnCoding c = return_words_in_prefix(x, Word::from_string(x.alphabet(), "a"));
        REQUIRE(c.theta.domain().size() == 2);
        CHECK(c.theta.image(0).str() == "ab");
        CHECK(c.theta.image(1).str() == "a");
        CHECK_FALSE(c.certified);
        REQUIRE(c.derived_word.has_value());
        CHECK(c.derived_word->str().substr(0, 5) == "12112");
        // decoding the derived word reproduces the scanned span
        Word decoded = c.theta.apply(*c.derived_word);
        CHECK(is_prefix(decoded, x));
    }

    SECTION("two-letter anchor") {
        ReturnCoding c = return_words_in_prefix(x, Word::from_string(x.alphabet(), "ab"));
        REQUIRE(c.theta.domain().size() == 2);
        CHECK(c.theta.image(0).str() == "aba");
        CHECK(c.theta.image(1).str() == "ab");
        CHECK(c.derived_word->str() == "1211212112");
        CHECK(is_prefix(c.theta.apply(*c.derived_word), x));
    }

    SECTION("anchor must be a prefix occurring at least twice") {
        CHECK_THROWS_AS(return_words_in_prefix(x, Word::from_string(x.alphabet(), "b")),
                        error);
        CHECK_THROWS_AS(return_words_in_prefix(x.prefix(2),
                                               Word::from_string(x.alphabet(), "a")),
                        error);
    }
}

TEST_CASE("certified closure: pinned systems") {
    SECTION("a -> aba, b -> baab") {
        DerivedSubstitution d = return_words_closure(Substitution::make(corpus::aba_baab()));
        CHECK(d.coding.anchor.str() == "a");
        REQUIRE(d.coding.theta.domain().size() == 2);
        CHECK(d.coding.theta.image(0).str() == "ab");
        CHECK(d.coding.theta.image(1).str() == "a");
        CHECK(d.tau.morphism().image(0).str() == "1121");
        CHECK(d.tau.morphism().image(1).str() == "12");
        CHECK(d.coding.certified);
        CHECK(d.tau_proper);  // 1121 and 12 share the first letter
    }

    SECTION("Fibonacci") {
        DerivedSubstitution d = return_words_closure(Substitution::make(corpus::fibonacci()));
        CHECK(d.coding.theta.image(0).str() == "ab");
        CHECK(d.coding.theta.image(1).str() == "a");
        CHECK(d.tau.morphism().image(0).str() == "12");
        CHECK(d.tau.morphism().image(1).str() == "1");
        CHECK(d.tau_proper);  // 12 and 1 share the first letter
    }

    SECTION("Thue-Morse") {
        DerivedSubstitution d = return_words_closure(Substitution::make(corpus::thue_morse()));
        REQUIRE(d.coding.theta.domain().size() == 3);
        CHECK(d.coding.theta.image(0).str() == "011");
        CHECK(d.coding.theta.image(1).str() == "01");
        CHECK(d.coding.theta.image(2).str() == "0");
        CHECK(d.tau.morphism().image(0).str() == "123");
        CHECK(d.tau.morphism().image(1).str() == "13");
        CHECK(d.tau.morphism().image(2).str() == "2");
        CHECK_FALSE(d.tau_proper);
    }

    SECTION("periodic a -> ab, b -> ab") {
        DerivedSubstitution d = return_words_closure(Substitution::make(corpus::periodic_ab()));
        REQUIRE(d.coding.theta.domain().size() == 1);
        CHECK(d.coding.theta.image(0).str() == "ab");
        CHECK(d.tau.morphism().image(0).str() == "11");
        CHECK(d.tau_proper);
    }
}

TEST_CASE("closure certificate and decoding across the corpus") {
    for (const auto& m : corpus::all()) {
        INFO(m.str());
        Substitution s = Substitution::make(m);
        DerivedSubstitution d = return_words_closure(s);
        CHECK(d.coding.certified);

        // the defining identity: sigma . Theta == Theta . tau
        const Morphism& sigma = s.morphism();
        const Morphism& theta = d.coding.theta;
        const Morphism& tau = d.tau.morphism();
        CHECK(sigma.compose(theta) == theta.compose(tau));

        // numbering by first appearance: tau's fixed point starts at letter 1,
        // and decoding it gives back the fixed point of sigma
        CHECK(d.tau.seed() == 0);
        Word y = fixed_point_prefix(d.tau, 40);
        std::int32_t seen = 1;
        for (std::size_t j = 1; j < y.size(); ++j) {
            if (y[j] == seen) ++seen;           // next new letter, in order
            else CHECK(y[j] < seen);            // never skips ahead
        }
        Word decoded = theta.apply(y);
        CHECK(decoded == fixed_point_prefix(s, decoded.size()));

        // tau_proper reports properness of tau exactly
        CHECK(d.tau_proper == is_proper(tau));

        // the attached derived word is a decoded span consistent with y
        REQUIRE(d.coding.derived_word.has_value());
        const Word& dw = *d.coding.derived_word;
        Word yy = fixed_point_prefix(d.tau, dw.size());
        CHECK(dw == yy);
    }
}

TEST_CASE("recoding between nested anchors") {
    Substitution fib = Substitution::make(corpus::fibonacci());
    Word x = fixed_point_prefix(fib, 200);
    ReturnCoding cu = return_words_in_prefix(x, Word::from_string(x.alphabet(), "ab"));
    ReturnCoding cv = return_words_in_prefix(x, Word::from_string(x.alphabet(), "a"));

    Morphism lambda = derived_recoding(cu, cv);
    CHECK(lambda.image(0).str() == "12");  // aba = ab . a
    CHECK(lambda.image(1).str() == "1");   // ab  = ab
    CHECK(cv.theta.compose(lambda) == cu.theta);

    // v must be a prefix of u over the same base alphabet
    CHECK_THROWS_AS(derived_recoding(cv, cu), error);
}

TEST_CASE("anchor-chain decomposition of the Fibonacci word") {
    Substitution fib = Substitution::make(corpus::fibonacci());
    Word x = fixed_point_prefix(fib, 10000);

    SadicDecomposition dec = sadic_decomposition(x, 2, 2);
    CHECK(dec.K == 2);
    CHECK(dec.alpha == 12);
    REQUIRE(dec.stages.size() == 3);
    CHECK(dec.stages[0].anchor.size() == 1);
    CHECK(dec.stages[1].anchor.size() == 12);
    CHECK(dec.stages[2].anchor.size() == 144);
    CHECK(dec.stages[1].anchor == x.prefix(12));

    // frozen recodings for this input
    CHECK(dec.stages[1].lambda.image(0).str() == "12112121");
    CHECK(dec.stages[1].lambda.image(1).str() == "12112");
    CHECK(dec.stages[2].lambda.image(0).str() == "1211212112112");
    CHECK(dec.stages[2].lambda.image(1).str() == "12112121");

    // chain identities
    CHECK(dec.stages[0].lambda == dec.stages[0].coding.theta);
    for (std::size_t n = 1; n < dec.stages.size(); ++n)
        CHECK(dec.stages[n - 1].coding.theta.compose(dec.stages[n].lambda) ==
              dec.stages[n].coding.theta);
    CHECK(dec.composed == dec.stages[2].coding.theta);
    CHECK(is_prefix(dec.composed.image(0), x));
}

TEST_CASE("anchor-chain decomposition: edge cases") {
    Substitution fib = Substitution::make(corpus::fibonacci());
    Word x = fixed_point_prefix(fib, 500);

    SECTION("depth zero is just the letter coding") {
        SadicDecomposition dec = sadic_decomposition(x, 2, 0);
        REQUIRE(dec.stages.size() == 1);
        CHECK(dec.composed == dec.stages[0].coding.theta);
        CHECK(dec.composed.image(0).str() == "ab");
    }

    SECTION("periodic word: singleton systems at every level") {
        Word p = fixed_point_prefix(Substitution::make(corpus::periodic_ab()), 64);
        SadicDecomposition dec = sadic_decomposition(p, 1, 2);
        CHECK(dec.alpha == 2);
        for (const auto& st : dec.stages) CHECK(st.coding.theta.domain().size() == 1);
        CHECK(dec.stages[2].anchor.str() == "abab");
    }

    SECTION("prefix too short for the requested depth") {
        CHECK_THROWS_AS(sadic_decomposition(x.prefix(100), 2, 2), error);
        CHECK_THROWS_AS(sadic_decomposition(x, 0, 1), error);
    }
}
