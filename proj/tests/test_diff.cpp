#include "oracles.hpp"
#include "properties.hpp"

#include "maysseq/diff.hpp"
#include "maysseq/error.hpp"

#include <doctest.h>

using namespace maysseq;

namespace {

Element el(const PresentationPtr& pres, const std::string& text)
{
    return parse_element(pres->algebra, text);
}

std::string fmt(const std::string& pattern, int j, int n)
{
    // replaces {0}, {1}, ... by (j + offset) mod n
    std::string out;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (pattern[i] == '{') {
            std::size_t close = pattern.find('}', i);
            out += std::to_string((j + std::stoi(pattern.substr(i + 1, close - i - 1))) % n);
            i = close;
        }
        else
            out += pattern[i];
    }
    return out;
}

}  // namespace

TEST_CASE("d1 on the generators of S(3,2) at p = 3")
{
    auto pres = build_presentation(Params::make(3, 3, 2), Flavor::S);
    for (int j = 0; j < 3; ++j) {
        CHECK(d1_element(*pres, el(pres, fmt("h[4,{0}]", j, 3))) ==
              -el(pres, fmt("h[2,{0}]h[2,{2}]", j, 3)));
        CHECK(d1_element(*pres, el(pres, fmt("h[2,{0}]", j, 3))).is_zero());
        CHECK(d1_element(*pres, el(pres, fmt("h[3,{0}]", j, 3))).is_zero());
    }
}

TEST_CASE("d1 on the generators of S(4,2) at p = 5 and 7")
{
    for (int p : {5, 7}) {
        auto pres = build_presentation(Params::make(p, 4, 2), Flavor::S);
        for (int j = 0; j < 4; ++j)
            CHECK(d1_element(*pres, el(pres, fmt("h[5,{0}]", j, 4))) ==
                  -el(pres, fmt("h[2,{0}]h[3,{2}] + h[3,{0}]h[2,{3}]", j, 4)));
    }
}

TEST_CASE("d1 on S(n,n) at p = 2")
{
    for (int n : {2, 3}) {
        auto pres = build_presentation(Params::make(2, n, n), Flavor::S);
        for (int j = 0; j < n; ++j) {
            auto h = [&](int i, int jj) { return "h[" + std::to_string(i) + "," + std::to_string((jj + n) % n) + "]"; };
            CHECK(d1_element(*pres, el(pres, h(2 * n, j))) ==
                  el(pres, h(n, j - 1) + "^2 + " + h(n, j) + "^2"));
            for (int i = n; i < 2 * n; ++i)
                CHECK(d1_element(*pres, el(pres, h(i, j))).is_zero());
        }
    }
}

TEST_CASE("d1 on products")
{
    auto pres = build_presentation(Params::make(3, 3, 2), Flavor::S);
    for (int j = 0; j < 3; ++j) {
        CHECK(d1_element(*pres, el(pres, fmt("h[4,{0}]h[2,{0}]", j, 3))).is_zero());
        // Leibniz written out: d(h4_j) h4_{j+1} h2_{j+1} - h4_j d(h4_{j+1}) h2_{j+1}
        auto x = el(pres, fmt("h[4,{0}]h[4,{1}]h[2,{1}]", j, 3));
        auto expected = -el(pres, fmt("h[2,{0}]h[2,{2}]", j, 3)) * el(pres, fmt("h[4,{1}]h[2,{1}]", j, 3)) +
                        el(pres, fmt("h[4,{0}]", j, 3)) * el(pres, fmt("h[2,{1}]h[2,{0}]", j, 3)) *
                            el(pres, fmt("h[2,{1}]", j, 3));
        CHECK(d1_element(*pres, x) == expected);
        CHECK(d1_element(*pres, x) == el(pres, fmt("-h[2,{0}]h[2,{2}]h[4,{1}]h[2,{1}]", j, 3)));
        CHECK(d1_element(*pres, x) == el(pres, fmt("h[4,{1}]h[2,{0}]h[2,{1}]h[2,{2}]", j, 3)));
    }
    CHECK(d1_element(*pres, Element::unit(pres->algebra)).is_zero());
    CHECK(d1_element(*pres, Element(pres->algebra)).is_zero());
}

TEST_CASE("d1 input errors")
{
    auto pres = build_presentation(Params::make(3, 3, 2), Flavor::S);
    auto other = build_presentation(Params::make(3, 3, 2), Flavor::S);
    CHECK_THROWS_AS(d1_element(*pres, el(pres, "h[2,0] + h[2,0]h[3,0]")), NonHomogeneous);
    CHECK_THROWS_AS(d1_element(*pres, el(other, "h[2,0]")), MixedPresentation);
}

TEST_CASE("b generators are d1 cycles")
{
    auto pres = build_presentation(Params::make(3, 2, 1), Flavor::S);
    bool any = false;
    for (GenId g = 0; g < pres->algebra->size(); ++g)
        if (pres->algebra->generator(g).label.kind == GenKind::B) {
            any = true;
            CHECK(pres->d1_rule(g).is_zero());
        }
    CHECK(any);
}

TEST_CASE("unreduced d1 beyond s0")
{
    auto params = Params::make(3, 3, 2);
    auto alg = unreduced_e1_algebra(params, 7);
    // s0 = 4: h_{5,j} hits b_{2,j+2}
    CHECK(unreduced_d1_image(alg, params, 5, 0) == b_class(alg, params, 2, 2));
    CHECK(unreduced_d1_image(alg, params, 7, 1) == b_class(alg, params, 4, 0));
    CHECK_THROWS_AS(unreduced_d1_image(alg, params, 8, 0), InvalidParams);
}

TEST_CASE("candidate differential of b")
{
    auto params = Params::make(3, 4, 2);
    CHECK_FALSE(candidate_b_rule(params, 3, 0));
    auto rule = candidate_b_rule(params, 4, 1);
    REQUIRE(rule);
    CHECK_FALSE(rule->page);
    auto alg = rule->image.algebra();
    CHECK(rule->image == parse_element(alg, "b[2,1]h[2,0] - h[2,2]b[2,3]"));
    auto k1 = candidate_b_rule(Params::make(3, 2, 1), 2, 0);
    REQUIRE(k1);
    CHECK(k1->image == parse_element(k1->image.algebra(), "b[1,0]h[1,0] - h[1,1]b[1,1]"));
    CHECK_THROWS_AS(candidate_b_rule(params, 1, 0), InvalidParams);
}

TEST_CASE("candidate differential of b is homogeneous")
{
    for (auto params : props::grid({3, 5, 7}, 4))
        for (int i = 2 * params.k; i <= 3 * params.k + 1; ++i)
            for (int j = 0; j < params.n; ++j) {
                auto rule = candidate_b_rule(params, i, j);
                REQUIRE(rule);
                const auto& alg = *rule->image.algebra();
                const auto src_t = alg.reduce_degree(integer_degree(params.p, {GenKind::B, i, j, false}));
                const auto src_m = params.p * may_filtration_ts(params, i);
                for (const auto& [m, c] : rule->image.terms()) {
                    auto d = degrees(alg, m);
                    CHECK(d.s == 3);
                    CHECK(d.t_class == src_t);
                    CHECK(d.M < src_m);
                }
            }
}

TEST_CASE("d1 squares to zero over the grid")
{
    auto r = props::d1_squared(101, 1000);
    INFO(r.first_failure);
    CHECK(r.ok());
}

TEST_CASE("Leibniz rule and tridegree contract over the grid")
{
    auto r = props::leibniz(103, 200);
    INFO(r.first_failure);
    CHECK(r.ok());
}

TEST_CASE("catalog matches an independently written d1")
{
    for (auto params : props::grid({2, 3, 5}, 3)) {
        auto pres = build_presentation(params, Flavor::S);
        auto model = oracle::s_model(params.p, params.n, params.k);
        REQUIRE(model.gens.size() == pres->algebra->size());
        // oracle generator g <-> engine generator with the same label
        for (std::size_t g = 0; g < model.gens.size(); ++g) {
            const auto& spec = pres->algebra->generator(static_cast<GenId>(g));
            CHECK(model.gens[g].s == spec.s);
            CHECK(model.gens[g].t == spec.t);
            CHECK(model.gens[g].M == spec.M);
            CHECK(model.gens[g].exterior == (spec.parity == Parity::Exterior));
            oracle::Exps e(model.gens.size(), 0);
            e[g] = 1;
            auto expected = oracle::d1_monomial(model, e);
            Element got = pres->d1_rule(static_cast<GenId>(g));
            REQUIRE(got.size() == expected.size());
            for (const auto& [m, c] : got.terms()) {
                oracle::Exps x(model.gens.size(), 0);
                for (const auto& f : m.factors())
                    x[f.gen] = static_cast<int>(f.exp);
                auto it = expected.find(x);
                REQUIRE(it != expected.end());
                CHECK(static_cast<std::int64_t>(c) == it->second);
            }
        }
    }
}
