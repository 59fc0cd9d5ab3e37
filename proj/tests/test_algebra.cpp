#include "oracles.hpp"

#include "maysseq/algebra.hpp"
#include "maysseq/error.hpp"
#include "maysseq/msq.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace maysseq;

namespace {

Element random_element(std::mt19937& rng, const AlgebraPtr& alg, int terms, int max_len)
{
    std::uniform_int_distribution<std::size_t> gen(0, alg->size() - 1);
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<Fp> coef(1, alg->prime() - 1);
    Element x(alg);
    for (int t = 0; t < terms; ++t) {
        std::vector<Factor> word;
        for (int l = len(rng); l > 0; --l)
            word.push_back({static_cast<GenId>(gen(rng)), 1});
        auto norm = normalize(*alg, word);
        if (norm)
            x.add_term(norm->first, fp_mul(coef(rng), norm->second, alg->prime()));
    }
    return x;
}

Monomial random_monomial(std::mt19937& rng, const AlgebraPtr& alg, int max_len)
{
    for (;;) {
        Element x = random_element(rng, alg, 1, max_len);
        if (!x.is_zero())
            return x.terms().begin()->first;
    }
}

}  // namespace

TEST_CASE("normalization applies Koszul signs")
{
    auto s32 = build_presentation(Params::make(3, 3, 2), Flavor::S);
    const auto& alg = s32->algebra;
    auto h = [&](int i, int j) { return alg->id_of({GenKind::H, i, j, false}); };

    Factor swapped[2] = {{h(2, 1), 1}, {h(2, 0), 1}};
    auto norm = normalize(*alg, swapped);
    REQUIRE(norm);
    CHECK(render(*alg, norm->first) == "h[2,0]h[2,1]");
    CHECK(norm->second == 2);

    Factor twice[2] = {{h(2, 0), 1}, {h(2, 0), 1}};
    CHECK_FALSE(normalize(*alg, twice));

    auto unreduced = unreduced_e1_algebra(Params::make(3, 3, 2), 4);
    Factor mixed[2] = {{unreduced->id_of({GenKind::B, 2, 0, false}), 1},
                       {unreduced->id_of({GenKind::H, 3, 1, false}), 1}};
    auto bh = normalize(*unreduced, mixed);
    REQUIRE(bh);
    CHECK(render(*unreduced, bh->first) == "h[3,1]b[2,0]");
    CHECK(bh->second == 1);
}

TEST_CASE("p = 2 squares of polynomial generators survive")
{
    auto s22 = build_presentation(Params::make(2, 2, 2), Flavor::S);
    auto x = parse_element(s22->algebra, "h[2,0]h[2,0]");
    CHECK_FALSE(x.is_zero());
    CHECK(render(x) == "h[2,0]^2");
    CHECK(parse_element(s22->algebra, "h[3,0]h[3,0]").is_zero());
}

TEST_CASE("degrees of generators and monomials")
{
    auto s32 = build_presentation(Params::make(3, 3, 2), Flavor::S);
    auto h20 = parse_element(s32->algebra, "h[2,0]").terms().begin()->first;
    auto d = degrees(*s32->algebra, h20);
    CHECK(d.s == 1);
    CHECK(d.t_class == 16);
    CHECK(d.M == 3);

    // h_{3,2}: 2(p^3 - 1) p^2 = 0 mod 2(p^3 - 1)
    auto s332 = build_presentation(Params::make(2, 3, 3), Flavor::S);
    auto h32 = parse_element(s332->algebra, "h[3,2]").terms().begin()->first;
    CHECK(degrees(*s332->algebra, h32).t_class == 0);

    auto t42 = build_presentation(Params::make(5, 4, 2), Flavor::T, 0);
    auto g = parse_element(t42->algebra, "h'[5,0]h'[4,0]h'[3,0]h'[2,0]");
    REQUIRE(g.size() == 1);
    auto dg = degrees(*t42->algebra, g.terms().begin()->first);
    CHECK(dg.s == 4);
    CHECK(dg.t_lift == 2 * 4 * (4 + 4 * 5 + 3 * 25 + 2 * 125 + 625));
    CHECK(dg.M == 9 + 7 + 5 + 3);
}

TEST_CASE("parse errors")
{
    auto s32 = build_presentation(Params::make(3, 3, 2), Flavor::S);
    CHECK_THROWS_AS(parse_element(s32->algebra, "h[9,0]"), UnknownGenerator);
    CHECK_THROWS_AS(parse_element(s32->algebra, "h[2,0"), ParseError);
    CHECK_THROWS_AS(parse_element(s32->algebra, "x"), ParseError);
}

TEST_CASE("elements from different algebras do not mix")
{
    auto a = build_presentation(Params::make(3, 3, 2), Flavor::S);
    auto b = build_presentation(Params::make(3, 3, 2), Flavor::S);
    auto x = parse_element(a->algebra, "h[2,0]");
    auto y = parse_element(b->algebra, "h[2,0]");
    CHECK_THROWS_AS(x + y, MixedPresentation);
    CHECK_THROWS_AS(x * y, MixedPresentation);
}

TEST_CASE("normalization sign matches an inversion count")
{
    std::mt19937 rng(3);
    auto pres = build_presentation(Params::make(5, 4, 2), Flavor::S);
    const auto& alg = pres->algebra;
    std::uniform_int_distribution<GenId> gen(0, static_cast<GenId>(alg->size() - 1));
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<Factor> word;
        std::vector<std::pair<int, bool>> letters;
        std::set<GenId> seen;
        bool repeated = false;
        for (int l = trial % 7; l >= 0; --l) {
            GenId g = gen(rng);
            repeated = repeated || !seen.insert(g).second;
            word.push_back({g, 1});
            letters.push_back({static_cast<int>(g), alg->is_odd(g)});
        }
        auto norm = normalize(*alg, word);
        if (repeated) {
            CHECK_FALSE(norm);
            continue;
        }
        REQUIRE(norm);
        const int expected = oracle::koszul_sign(letters);
        CHECK(norm->second == (expected == 1 ? 1u : 4u));
    }
}

TEST_CASE("normalization is idempotent and products are associative")
{
    std::mt19937 rng(17);
    for (auto params : {Params::make(3, 3, 2), Params::make(2, 2, 1), Params::make(5, 2, 1), Params::make(7, 3, 2)}) {
        auto pres = build_presentation(params, Flavor::S);
        const auto& alg = pres->algebra;
        for (int trial = 0; trial < 200; ++trial) {
            auto m = random_monomial(rng, alg, 4);
            auto again = normalize(*alg, m.factors());
            REQUIRE(again);
            CHECK(again->first == m);
            CHECK(again->second == 1);

            auto x = random_element(rng, alg, 3, 3);
            auto y = random_element(rng, alg, 3, 3);
            auto z = random_element(rng, alg, 3, 3);
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(Element::unit(alg) * x == x);
        }
    }
}

TEST_CASE("graded commutativity on monomials")
{
    std::mt19937 rng(23);
    for (auto params : {Params::make(3, 3, 2), Params::make(2, 3, 2), Params::make(5, 4, 2), Params::make(3, 2, 1)}) {
        auto pres = build_presentation(params, Flavor::S);
        const auto& alg = pres->algebra;
        const Fp p = alg->prime();
        for (int trial = 0; trial < 300; ++trial) {
            auto a = random_monomial(rng, alg, 3);
            auto b = random_monomial(rng, alg, 3);
            auto ab = Element::monomial(alg, a) * Element::monomial(alg, b);
            auto ba = Element::monomial(alg, b) * Element::monomial(alg, a);
            const int sa = degrees(*alg, a).s, sb = degrees(*alg, b).s;
            CHECK(ab == ba * ((sa * sb) % 2 ? p - 1 : 1));
            if (!ab.is_zero()) {
                auto d = degrees(*alg, ab.terms().begin()->first);
                CHECK(d.s == sa + sb);
                CHECK(d.M == degrees(*alg, a).M + degrees(*alg, b).M);
                CHECK(d.t_class == alg->reduce_degree(degrees(*alg, a).t_class + degrees(*alg, b).t_class));
            }
        }
    }
}

TEST_CASE("render and parse round trip")
{
    std::mt19937 rng(29);
    for (auto params : {Params::make(3, 3, 2), Params::make(2, 2, 2), Params::make(5, 4, 2)}) {
        auto pres = build_presentation(params, Flavor::S);
        for (int trial = 0; trial < 200; ++trial) {
            auto x = random_element(rng, pres->algebra, 4, 4);
            CHECK(parse_element(pres->algebra, render(x)) == x);
        }
    }
    auto t = build_presentation(Params::make(5, 4, 2), Flavor::T, 2);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = random_element(rng, t->algebra, 3, 4);
        CHECK(parse_element(t->algebra, render(x)) == x);
    }
}
