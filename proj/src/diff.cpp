#include "maysseq/diff.hpp"

#include "maysseq/error.hpp"

namespace maysseq {

namespace {

int wrap(int j, int n)
{
    return ((j % n) + n) % n;
}

Element product_of(const AlgebraPtr& alg, const GenLabel& a, const GenLabel& b)
{
    Factor w[2] = {{alg->id_of(a), 1}, {alg->id_of(b), 1}};
    Element out(alg);
    auto norm = normalize(*alg, w);
    if (norm)
        out.add_term(norm->first, norm->second);
    return out;
}

// -sum_{k <= r <= i-k} h_{r,j} h_{i-r,j+r}
Element h_sum(const AlgebraPtr& alg, const Params& params, Flavor flavor, int i, int j)
{
    const bool primed = flavor == Flavor::T;
    auto jj = [&](int x) { return flavor == Flavor::S ? wrap(x, params.n) : x; };
    Element sum(alg);
    for (int r = params.k; r <= i - params.k; ++r)
        sum += product_of(alg, {GenKind::H, r, jj(j), primed}, {GenKind::H, i - r, jj(j + r), primed});
    return -sum;
}

}  // namespace

Element d1_catalog_image(const AlgebraPtr& alg, const Params& params, Flavor flavor, const GenLabel& gen)
{
    if (gen.kind == GenKind::B)
        return Element(alg);
    Element image = h_sum(alg, params, flavor, gen.i, gen.j);
    if (params.p == 2 && flavor == Flavor::S && gen.i == 2 * params.n) {
        GenId h = alg->id_of({GenKind::H, params.n, wrap(gen.j + params.n - 1, params.n), false});
        image.add_term(Monomial::from_sorted({{h, 2}}), 1);
    }
    return image;
}

Element unreduced_d1_image(const AlgebraPtr& unreduced, const Params& params, int i, int j)
{
    const int s0 = compute_s0(params);
    if (i <= s0) {
        Element image = h_sum(unreduced, params, Flavor::S, i, j);
        if (params.p == 2 && i == 2 * params.n)
            image += b_class(unreduced, params, params.n, j + params.n - 1);
        return image;
    }
    if (i > s0 + params.n)
        throw InvalidParams("no first-differential rule for h_{" + std::to_string(i) + ",j} beyond s0 + n");
    return b_class(unreduced, params, i - params.n, j + params.n - 1);
}

Element d1_generator(const PagePresentation& pres, GenId gen)
{
    return pres.d1_rule(gen);
}

Element d1_monomial(const PagePresentation& pres, const Monomial& m)
{
    const auto& alg = pres.algebra;
    const Fp p = alg->prime();
    Element out(alg);
    const auto& fs = m.factors();
    int prefix_s = 0;
    for (std::size_t pos = 0; pos < fs.size(); ++pos) {
        const Factor& f = fs[pos];
        const auto& g = alg->generator(f.gen);
        const Element& dg = pres.d1_rule(f.gen);
        if (!dg.is_zero()) {
            // d(x^e) = e x^{e-1} d(x); only polynomial generators have e > 1
            Fp coef = fp_reduce(f.exp, p);
            if (prefix_s % 2)
                coef = fp_neg(coef, p);
            if (coef) {
                for (const auto& [dm, dc] : dg.terms()) {
                    std::vector<Factor> word(fs.begin(), fs.begin() + pos);
                    if (f.exp > 1)
                        word.push_back({f.gen, f.exp - 1});
                    word.insert(word.end(), dm.factors().begin(), dm.factors().end());
                    word.insert(word.end(), fs.begin() + pos + 1, fs.end());
                    auto norm = normalize(*alg, word);
                    if (norm)
                        out.add_term(norm->first, fp_mul(fp_mul(coef, dc, p), norm->second, p));
                }
            }
        }
        prefix_s += g.s * static_cast<int>(f.exp);
    }
    return out;
}

Element d1_element(const PagePresentation& pres, const Element& x)
{
    if (x.algebra() != pres.algebra)
        throw MixedPresentation("element does not belong to this presentation");
    if (!x.is_zero() && !x.homological_degree())
        throw NonHomogeneous("d1_element requires an element homogeneous in s");
    const Fp p = pres.algebra->prime();
    Element out(pres.algebra);
    for (const auto& [m, c] : x.terms()) {
        Element dm = d1_monomial(pres, m);
        for (const auto& [tm, tc] : dm.terms())
            out.add_term(tm, fp_mul(c, tc, p));
    }
    return out;
}

std::optional<DifferentialRule> candidate_b_rule(const Params& params, int i, int j)
{
    const int k = params.k;
    if (i < k)
        throw InvalidParams("b_{i,j} requires i >= k");
    if (i < 2 * k)
        return std::nullopt;
    AlgebraPtr alg = unreduced_e1_algebra(params, i);
    Element h_a = Element::generator(alg, {GenKind::H, k, wrap(i - k + j + 1, params.n), false});
    Element h_b = Element::generator(alg, {GenKind::H, k, wrap(j + 1, params.n), false});
    Element image = b_class(alg, params, i - k, j) * h_a - h_b * b_class(alg, params, i - k, j + k);
    return DifferentialRule{{GenKind::B, i, wrap(j, params.n), false}, std::move(image), std::nullopt};
}

}  // namespace maysseq
