#include "maysseq/msq.hpp"

#include "maysseq/diff.hpp"
#include "maysseq/error.hpp"

#include <algorithm>
#include <string>

namespace maysseq {

Params Params::make(int p, int n, int k)
{
    if (!is_prime(p))
        throw InvalidParams("prime " + std::to_string(p) + " is not prime");
    if (n < 1)
        throw InvalidParams("n must be positive");
    if (k < 1 || k > n)
        throw InvalidParams("k must satisfy 1 <= k <= n (got k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    Params params{p, n, k};
    params.degree_modulus();  // overflow check
    return params;
}

std::int64_t Params::degree_modulus() const
{
    return checked_mul(2, checked_pow(p, n) - 1);
}

const char* flavor_name(Flavor f)
{
    return f == Flavor::S ? "S" : "T";
}

int compute_s0(const Params& params)
{
    const int p = params.p, n = params.n, k = params.k;
    int bound = (2 * p * n + p - 2) / (2 * (p - 1));
    return std::max(bound, n + k - 1);
}

std::int64_t may_filtration_ts(const Params& params, int s, int /*j*/)
{
    if (s < params.k)
        throw InvalidParams("t_" + std::to_string(s) + " is zero in S(n,k) for s < k");
    const int s0 = compute_s0(params);
    if (s <= s0)
        return 2 * s - 1;
    return checked_add(checked_mul(params.p, may_filtration_ts(params, s - params.n)), 1);
}

std::int64_t may_filtration_monomial(const Params& params, const std::map<int, std::int64_t>& exponents)
{
    std::int64_t total = 0;
    for (auto [s, e] : exponents) {
        if (e < 1)
            throw InvalidParams("exponents must be positive");
        const std::int64_t mts = may_filtration_ts(params, s);
        for (std::int64_t rest = e; rest > 0; rest /= params.p)
            total = checked_add(total, checked_mul(rest % params.p, mts));
    }
    return total;
}

std::int64_t integer_degree(int p, const GenLabel& gen)
{
    int shift = gen.j + (gen.kind == GenKind::B ? 1 : 0);
    return checked_mul(checked_mul(2, checked_pow(p, gen.i) - 1), checked_pow(p, shift));
}

std::int64_t internal_degree(const Params& params, Flavor flavor, const GenLabel& gen)
{
    if (flavor == Flavor::T)
        return integer_degree(params.p, gen);
    GenLabel reduced = gen;
    reduced.j = ((gen.j % params.n) + params.n) % params.n;
    return integer_degree(params.p, reduced) % params.degree_modulus();
}

namespace {

GeneratorSpec make_gen(const Params& params, Flavor flavor, GenKind kind, int i, int j, Parity parity)
{
    GeneratorSpec g;
    g.label = GenLabel{kind, i, j, flavor == Flavor::T};
    g.s = kind == GenKind::H ? 1 : 2;
    g.t_lift = integer_degree(params.p, g.label);
    g.t = internal_degree(params, flavor, g.label);
    std::int64_t m = flavor == Flavor::T ? 2 * i - 1 : may_filtration_ts(params, i);
    g.M = kind == GenKind::H ? m : checked_mul(params.p, m);
    g.parity = parity;
    return g;
}

}  // namespace

PresentationPtr build_presentation(const Params& params, Flavor flavor, std::optional<int> j_max)
{
    auto pres = std::make_shared<PagePresentation>();
    pres->params = params;
    pres->flavor = flavor;
    pres->s0 = compute_s0(params);
    const int p = params.p, n = params.n, k = params.k, s0 = pres->s0;
    std::vector<GeneratorSpec> gens;
    std::int64_t modulus = 0;
    if (flavor == Flavor::S) {
        modulus = params.degree_modulus();
        if (p == 2) {
            for (int i = k; i <= 2 * n; ++i)
                for (int j = 0; j < n; ++j)
                    gens.push_back(make_gen(params, flavor, GenKind::H, i, j,
                                            i <= n ? Parity::Polynomial : Parity::Exterior));
        }
        else {
            for (int i = k; i <= s0; ++i)
                for (int j = 0; j < n; ++j)
                    gens.push_back(make_gen(params, flavor, GenKind::H, i, j, Parity::Exterior));
            for (int i = k; i <= s0 - n; ++i)
                for (int j = 0; j < n; ++j)
                    gens.push_back(make_gen(params, flavor, GenKind::B, i, j, Parity::Polynomial));
        }
    }
    else {
        if (p == 2)
            throw InvalidParams("the auxiliary algebra T(n,k) is only defined at odd primes");
        if (!j_max || *j_max < 0)
            throw InvalidParams("flavor T requires a nonnegative j_max");
        pres->j_max = *j_max;
        const int top = *j_max + n + k - 1;
        for (int i = k; i <= n + k - 1; ++i) {
            for (int j = 0; i + j <= top; ++j)
                gens.push_back(make_gen(params, flavor, GenKind::H, i, j, Parity::Exterior));
            for (int j = 0; i + j <= top - 1; ++j)
                gens.push_back(make_gen(params, flavor, GenKind::B, i, j, Parity::Polynomial));
        }
    }
    auto alg = std::make_shared<const GradedAlgebra>(static_cast<Fp>(p), modulus, std::move(gens));
    pres->algebra = alg;
    pres->d1_rules.reserve(alg->size());
    for (const auto& g : alg->generators())
        pres->d1_rules.push_back(d1_catalog_image(alg, params, flavor, g.label));
    return pres;
}

AlgebraPtr unreduced_e1_algebra(const Params& params, int i_max)
{
    std::vector<GeneratorSpec> gens;
    for (int i = params.k; i <= i_max; ++i)
        for (int j = 0; j < params.n; ++j) {
            if (params.p == 2) {
                gens.push_back(make_gen(params, Flavor::S, GenKind::H, i, j, Parity::Polynomial));
            }
            else {
                gens.push_back(make_gen(params, Flavor::S, GenKind::H, i, j, Parity::Exterior));
                gens.push_back(make_gen(params, Flavor::S, GenKind::B, i, j, Parity::Polynomial));
            }
        }
    return std::make_shared<const GradedAlgebra>(static_cast<Fp>(params.p), params.degree_modulus(),
                                                 std::move(gens));
}

Element b_class(const AlgebraPtr& alg, const Params& params, int i, int j)
{
    j = ((j % params.n) + params.n) % params.n;
    if (params.p == 2) {
        GenId id = alg->id_of({GenKind::H, i, j, false});
        return Element::monomial(alg, Monomial::from_sorted({{id, 2}}));
    }
    return Element::generator(alg, {GenKind::B, i, j, false});
}

Element reduction_map_phi(const PagePresentation& source, const Element& x, const PagePresentation& target)
{
    if (source.flavor != Flavor::T || target.flavor != Flavor::S)
        throw InvalidParams("reduction map runs from a T(n,k) presentation to an S(n,k) presentation");
    if (!(source.params == target.params))
        throw InvalidParams("reduction map between incompatible (p, n, k)");
    if (x.algebra() != source.algebra)
        throw MixedPresentation("element does not belong to the source presentation");
    const auto& src = *x.algebra();
    const auto& dst = target.algebra;
    const int n = target.params.n;
    Element out(dst);
    for (const auto& [m, c] : x.terms()) {
        std::vector<Factor> word;
        for (const auto& f : m.factors()) {
            GenLabel l = src.generator(f.gen).label;
            l.primed = false;
            l.j = ((l.j % n) + n) % n;
            word.push_back({dst->id_of(l), f.exp});
        }
        auto norm = normalize(*dst, word);
        if (norm)
            out.add_term(norm->first, fp_mul(c, norm->second, dst->prime()));
    }
    return out;
}

}  // namespace maysseq
