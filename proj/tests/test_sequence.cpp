#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "zsum/sequence.hpp"

using namespace zsum;

namespace {

Sequence seq(const Group& g, std::string_view lit) { return Sequence::parse(g, lit); }

} // namespace

TEST_CASE("sigma") {
    Group c4 = Group::parse("4");
    CHECK(Sequence(c4).sum() == c4.zero());
    CHECK(seq(c4, "(1)^4").sum() == c4.zero());

    Group g = Group::parse("2,4");
    CHECK(seq(g, "(1,0) (0,1)^3").sum() == g.from_residues(std::vector<long long>{1, 3}));
}

TEST_CASE("subsums") {
    Group c4 = Group::parse("4");
    auto f = [&](long long a) { return c4.from_residues(std::vector<long long>{a}); };
    CHECK(seq(c4, "(1)^2").subsums() == std::vector<Elem>{f(1), f(2)});

    Group g = Group::parse("2,2");
    CHECK(seq(g, "(1,1)").subsums() ==
          std::vector<Elem>{g.from_residues(std::vector<long long>{1, 1})});

    // zero-sum free of length D(G)-1 reaches everything except 0
    Group h = Group::parse("2,4");
    Sequence s = seq(h, "(0,1)^3 (1,0)");
    REQUIRE(s.zero_sum_free());
    REQUIRE(s.length() == 4);
    auto sums = s.subsums();
    CHECK(sums.size() == h.size() - 1);
    CHECK(std::find(sums.begin(), sums.end(), h.zero()) == sums.end());
}

TEST_CASE("zero-sum freeness") {
    Group c4 = Group::parse("4");
    CHECK(seq(c4, "(1)^3").zero_sum_free());
    CHECK_FALSE(seq(c4, "(1)^4").zero_sum_free());
    CHECK(Sequence(c4).zero_sum_free());
    // sequences containing 0 are never zero-sum free
    CHECK_FALSE(seq(c4, "(0) (1)").zero_sum_free());
}

TEST_CASE("negation") {
    Group c4 = Group::parse("4");
    CHECK(seq(c4, "(1)^2 (3)").negated() == seq(c4, "(3)^2 (1)"));

    Group g = Group::parse("2,2");
    CHECK(seq(g, "(1,0)").negated() == seq(g, "(1,0)"));

    Group h = Group::parse("2,4");
    for (const Sequence& s : oracles::all_multisets(h, 3)) {
        CHECK(s.negated().negated() == s);
    }
}

TEST_CASE("divisibility and quotient") {
    Group c4 = Group::parse("4");
    Sequence s = seq(c4, "(1)^2 (2)");
    CHECK(seq(c4, "(1)").divides(s));
    CHECK(quotient(s, seq(c4, "(1)")) == seq(c4, "(1) (2)"));
    CHECK(quotient(s, s).empty());
    CHECK_FALSE(seq(c4, "(3)").divides(seq(c4, "(1)^2")));
    CHECK_THROWS_AS(quotient(seq(c4, "(1)^2"), seq(c4, "(3)")), DomainError);

    Group g2 = Group::parse("2,2");
    CHECK_THROWS_AS(seq(c4, "(1)").plus(Sequence(g2)), SpecMismatchError);
}

TEST_CASE("literal round trip is canonical") {
    Group g = Group::parse("2,4");
    Sequence s = seq(g, "(0,1)^3 (1,0)");
    CHECK(s.to_literal() == "(0,1)^3 (1,0)");
    CHECK(Sequence::parse(g, s.to_literal()) == s);
    // same multiset, different spellings
    CHECK(seq(g, "(1,0) (0,1) (0,1)^2") == s);
    CHECK(seq(g, "(1,-3)") == seq(g, "(1,1)"));
    CHECK(Sequence(g).to_literal() == "");
    CHECK(Sequence::parse(g, "  ") == Sequence(g));

    CHECK_THROWS_AS(Sequence::parse(g, "(1)"), DomainError);     // rank mismatch
    CHECK_THROWS_AS(Sequence::parse(g, "(1,0)^0"), ParseError);  // zero exponent
    CHECK_THROWS_AS(Sequence::parse(g, "1,0"), ParseError);
    CHECK_THROWS_AS(Sequence::parse(g, "(1,0"), ParseError);

    // injective on multisets: distinct multisets, distinct literals
    auto all = oracles::all_multisets(g, 3);
    std::vector<std::string> lits;
    for (const auto& m : all) lits.push_back(m.to_literal());
    std::sort(lits.begin(), lits.end());
    CHECK(std::adjacent_find(lits.begin(), lits.end()) == lits.end());
}

TEST_CASE("zero-sum freeness is negation invariant (exhaustive, length <= 4)") {
    Group g = Group::parse("2,4");
    for (const Sequence& s : oracles::all_multisets(g, 4)) {
        CHECK(s.zero_sum_free() == s.negated().zero_sum_free());
    }
}

TEST_CASE("subsum DP agrees with exponential enumeration") {
    std::mt19937_64 rng(20'240'401);
    const std::vector<Group> groups{Group::parse("5"), Group::parse("2,4"), Group::parse("3,3"),
                                    Group::parse("12"), Group::parse("2,2,2")};
    for (int iter = 0; iter < 300; ++iter) {
        const Group& g = groups[static_cast<std::size_t>(iter) % groups.size()];
        std::uniform_int_distribution<std::uint32_t> len_dist(0, 12);
        Sequence s = oracles::random_sequence(g, len_dist(rng), rng);
        CHECK(s.subsums() == oracles::brute_subsums(s));
    }
}

TEST_CASE("subsum set properties") {
    Group g = Group::parse("2,4");
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        Sequence s = oracles::random_sequence(g, static_cast<std::uint32_t>(iter % 9), rng);
        auto sums = s.subsums();
        CHECK(sums.size() <= g.size());
        // subsums(-S) = -subsums(S)
        std::vector<Elem> neg;
        for (Elem e : sums) neg.push_back(g.neg(e));
        std::sort(neg.begin(), neg.end());
        CHECK(s.negated().subsums() == neg);
    }
}
