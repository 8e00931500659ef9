#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <subshift/morphism.hpp>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace subshift;

namespace {

/// Brute primitivity: multiply the integer incidence matrix out to the
/// Wielandt bound and look for an all-positive power.
bool primitive_brute(const Morphism& m) {
    IntegerMatrix M = m.incidence_matrix();
    const std::size_t d = M.rows();
    const std::size_t bound = (d - 1) * (d - 1) + 1;
    IntegerMatrix P = IntegerMatrix::identity(d);
    for (std::size_t k = 1; k <= bound; ++k) {
        P = P * M;
        bool pos = true;
        for (std::size_t i = 0; i < d && pos; ++i)
            for (std::size_t j = 0; j < d && pos; ++j) pos = P.at(i, j) > 0;
        if (pos) return true;
    }
    return false;
}

Morphism random_endomorphism(std::size_t d, std::mt19937& rng) {
    Alphabet a = Alphabet::from_chars(std::string("abcdef").substr(0, d));
    std::uniform_int_distribution<std::size_t> len(1, 3);
    std::uniform_int_distribution<std::int32_t> pick(0, static_cast<std::int32_t>(d) - 1);
    std::vector<Word> im;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::int32_t> sym(len(rng));
        for (auto& s : sym) s = pick(rng);
        im.push_back(Word(a, std::move(sym)));
    }
    return Morphism(a, a, std::move(im));
}

}  // namespace

TEST_CASE("apply and compose") {
    Morphism ex = corpus::aba_baab();
    Alphabet a = ex.domain();
    CHECK(ex.apply(Word::from_string(a, "ab")).str() == "ababaab");
    CHECK(ex.apply(Word(a, {})).empty());

    Morphism fib = corpus::fibonacci();
    CHECK(fib.apply(Word::from_string(a, "aba")).str() == "abaab");

    Morphism fib2 = fib.compose(fib);
    CHECK(fib2.image(0).str() == "aba");
    CHECK(fib2.image(1).str() == "ab");
    CHECK(Morphism::identity(a).compose(fib) == fib);
    CHECK(fib.compose(Morphism::identity(a)) == fib);

    // incidence matrices are multiplicative under composition
    CHECK(ex.compose(ex).incidence_matrix() == ex.incidence_matrix() * ex.incidence_matrix());

    CHECK_THROWS_AS(Morphism(a, a, {Word::from_string(a, "ab"), Word(a, {})}),
                    error);  // empty image
}

TEST_CASE("incidence matrix") {
    IntegerMatrix m = corpus::aba_baab().incidence_matrix();
    REQUIRE(m.rows() == 2);
    CHECK(m.at(0, 0) == 2);  // a's in aba
    CHECK(m.at(0, 1) == 2);  // a's in baab
    CHECK(m.at(1, 0) == 1);
    CHECK(m.at(1, 1) == 2);
    CHECK(Morphism::identity(Alphabet::from_chars("xyz")).incidence_matrix() ==
          IntegerMatrix::identity(3));

    // column sums are image lengths; (M^T)^k 1 lists |sigma^k(c)|
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        Morphism s = random_endomorphism(2 + trial % 3, rng);
        IntegerMatrix M = s.incidence_matrix();
        for (std::size_t j = 0; j < M.cols(); ++j) {
            Integer col = 0;
            for (std::size_t i = 0; i < M.rows(); ++i) col += M.at(i, j);
            CHECK(col == s.image(j).size());
        }
        Morphism pw = s;
        for (std::size_t k = 1; k <= 4; ++k) {
            IntVector lens = M.transposed().pow(k).apply(ones_vector(M.rows()));
            for (std::size_t c = 0; c < M.rows(); ++c)
                CHECK(lens[c] == pw.image(c).size());
            pw = s.compose(pw);
        }
    }
}

TEST_CASE("primitivity") {
    CHECK(is_primitive(corpus::fibonacci()));
    CHECK(is_primitive(corpus::aba_baab()));
    CHECK(is_primitive(corpus::thue_morse()));
    for (const Morphism& m : corpus::all()) CHECK(is_primitive(m));

    Alphabet a = Alphabet::from_chars("ab");
    Morphism reducible(a, a, {Word::from_string(a, "ab"), Word::from_string(a, "b")});
    CHECK(!is_primitive(reducible));

    std::mt19937 rng(20260823);
    for (int trial = 0; trial < 300; ++trial) {
        Morphism m = random_endomorphism(2 + trial % 3, rng);
        CHECK(is_primitive(m) == primitive_brute(m));
    }
}

TEST_CASE("properness and constant length") {
    CHECK(proper_letter(corpus::fibonacci()) == std::size_t{0});  // common letter a
    CHECK(!proper_letter(corpus::aba_baab()).has_value());
    CHECK(!proper_letter(corpus::thue_morse()).has_value());
    CHECK(is_proper(corpus::fibonacci()));

    CHECK(constant_length(corpus::thue_morse()) == std::size_t{2});
    CHECK(!constant_length(corpus::aba_baab()).has_value());
    CHECK(constant_length(corpus::cyclic_shift3()) == std::size_t{3});
}

TEST_CASE("substitution seeds and powers") {
    Substitution ex = Substitution::make(corpus::aba_baab());
    CHECK(ex.seed_letter() == "a");
    CHECK(ex.power_applied() == 1);
    CHECK(ex.primitive());

    // no letter starts its own image: the smallest power with a seed is taken
    Alphabet a = Alphabet::from_chars("ab");
    Morphism swap_start(a, a, {Word::from_string(a, "ba"), Word::from_string(a, "ab")});
    Substitution s = Substitution::make(swap_start);
    CHECK(s.power_applied() == 2);
    CHECK(s.seed_letter() == "a");
    CHECK(s.morphism().image(0).str() == "abba");  // sigma^2(a)
}

TEST_CASE("fixed point prefixes") {
    CHECK(fixed_point_prefix(Substitution::make(corpus::aba_baab()), 10).str() == "ababaababa");
    CHECK(fixed_point_prefix(Substitution::make(corpus::fibonacci()), 8).str() == "abaababa");
    CHECK(fixed_point_prefix(Substitution::make(corpus::periodic_ab()), 6).str() == "ababab");

    // prefix consistency over growing n
    Substitution fib = Substitution::make(corpus::fibonacci());
    Word big = fixed_point_prefix(fib, 200);
    for (std::size_t n : {1, 7, 50, 199})
        CHECK(is_prefix(fixed_point_prefix(fib, n), big));

    // every letter eventually occurs for primitive substitutions
    for (const Morphism& m : corpus::all()) {
        Substitution s = Substitution::make(m);
        Word w = fixed_point_prefix(s, 64);
        for (std::size_t c = 0; c < m.domain().size(); ++c) CHECK(w.count_letter(c) > 0);
    }

    Alphabet one = Alphabet::from_chars("a");
    Morphism still(one, one, {Word::from_string(one, "a")});
    CHECK_THROWS_AS(fixed_point_prefix(Substitution::make(still), 5), error);
}

TEST_CASE("periodicity probe") {
    ProbeResult per = periodicity_probe(Substitution::make(corpus::periodic_ab()), 20);
    REQUIRE(per.periodic);
    CHECK(per.period.str() == "ab");

    ProbeResult fib = periodicity_probe(Substitution::make(corpus::fibonacci()), 30);
    CHECK(!fib.periodic);
    CHECK(fib.evidence_depth == 30);  // p(n) = n+1 verified throughout the horizon

    ProbeResult ex = periodicity_probe(Substitution::make(corpus::aba_baab()), 30);
    CHECK(!ex.periodic);
    CHECK(ex.evidence_depth >= 10);
}
