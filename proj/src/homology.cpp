#include "maysseq/homology.hpp"

#include "maysseq/diff.hpp"
#include "maysseq/error.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace maysseq {

std::string render_key(const BlockKey& key)
{
    std::ostringstream os;
    os << "(" << key.s << "," << key.t << "," << key.M << ")";
    return os.str();
}

CochainComplex::CochainComplex(PresentationPtr pres) : pres_(std::move(pres)) {}

namespace {

void enumerate(const GradedAlgebra& alg, GenId next, int remaining, std::vector<Factor>& current,
               std::vector<Monomial>& out)
{
    if (remaining == 0) {
        out.push_back(Monomial::from_sorted(current));
        return;
    }
    for (GenId g = next; g < alg.size(); ++g) {
        const int sg = alg.generator(g).s;
        if (sg > remaining)
            continue;
        const std::uint32_t max_exp = alg.is_exterior(g) ? 1u : static_cast<std::uint32_t>(remaining / sg);
        for (std::uint32_t e = 1; e <= max_exp; ++e) {
            current.push_back({g, e});
            enumerate(alg, g + 1, remaining - sg * static_cast<int>(e), current, out);
            current.pop_back();
        }
    }
}

}  // namespace

const CochainComplex::Level& CochainComplex::level(int s) const
{
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = levels_.find(s);
    if (it != levels_.end())
        return it->second;
    Level lev;
    if (s >= 0) {
        std::vector<Factor> current;
        enumerate(*pres_->algebra, 0, s, current, lev.all);
        std::sort(lev.all.begin(), lev.all.end());
        for (const auto& m : lev.all) {
            Degrees d = degrees(*pres_->algebra, m);
            Block& b = lev.blocks[{d.t_class, d.M}];
            b.index.emplace(m, b.basis.size());
            b.basis.push_back(m);
        }
    }
    return levels_.emplace(s, std::move(lev)).first->second;
}

const std::vector<Monomial>& CochainComplex::monomials(int s) const
{
    return level(s).all;
}

std::vector<BlockKey> CochainComplex::block_keys(int s) const
{
    std::vector<BlockKey> keys;
    for (const auto& [tm, b] : level(s).blocks)
        keys.push_back({s, tm.first, tm.second});
    return keys;
}

const std::vector<Monomial>& CochainComplex::block_basis(const BlockKey& key) const
{
    static const std::vector<Monomial> empty;
    const Level& lev = level(key.s);
    auto it = lev.blocks.find({key.t, key.M});
    return it == lev.blocks.end() ? empty : it->second.basis;
}

std::optional<std::size_t> CochainComplex::index_in_block(const BlockKey& key, const Monomial& m) const
{
    const Level& lev = level(key.s);
    auto it = lev.blocks.find({key.t, key.M});
    if (it == lev.blocks.end())
        return std::nullopt;
    auto jt = it->second.index.find(m);
    if (jt == it->second.index.end())
        return std::nullopt;
    return jt->second;
}

BlockKey CochainComplex::key_of(const Monomial& m) const
{
    Degrees d = degrees(*pres_->algebra, m);
    return {d.s, d.t_class, d.M};
}

FpMatrix CochainComplex::d1_matrix(const BlockKey& source) const
{
    const auto& src = block_basis(source);
    BlockKey target{source.s + 1, source.t, source.M - 1};
    const auto& tgt = block_basis(target);
    FpMatrix mat(prime(), tgt.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        Element image = d1_monomial(*pres_, src[c]);
        for (const auto& [m, coef] : image.terms()) {
            auto r = index_in_block(target, m);
            if (!r)
                throw CompositionError("d_1 image " + render(*pres_->algebra, m) + " of " +
                                       render(*pres_->algebra, src[c]) + " leaves block " + render_key(target));
            mat.add_to(*r, c, coef);
        }
    }
    return mat;
}

FpVector CochainComplex::coordinates(const BlockKey& key, const Element& x) const
{
    const auto& basis = block_basis(key);
    FpVector v(basis.size(), 0);
    for (const auto& [m, c] : x.terms()) {
        auto idx = index_in_block(key, m);
        if (!idx)
            throw Error("term " + render(*pres_->algebra, m) + " is not in block " + render_key(key));
        v[*idx] = c;
    }
    return v;
}

Element CochainComplex::element(const BlockKey& key, std::span<const Fp> coords) const
{
    const auto& basis = block_basis(key);
    Element x(pres_->algebra);
    for (std::size_t i = 0; i < coords.size() && i < basis.size(); ++i)
        if (coords[i])
            x.add_term(basis[i], coords[i]);
    return x;
}

std::map<BlockKey, Element> CochainComplex::split(const Element& x) const
{
    std::map<BlockKey, Element> parts;
    for (const auto& [m, c] : x.terms()) {
        BlockKey key = key_of(m);
        auto it = parts.try_emplace(key, pres_->algebra).first;
        it->second.add_term(m, c);
    }
    return parts;
}

std::vector<Monomial> monomial_basis(const PagePresentation& pres, int s, std::optional<std::int64_t> t_class)
{
    if (s < 0)
        throw InvalidParams("homological degree must be nonnegative");
    std::vector<Monomial> out;
    std::vector<Factor> current;
    enumerate(*pres.algebra, 0, s, current, out);
    std::sort(out.begin(), out.end());
    if (t_class) {
        std::int64_t t = pres.algebra->reduce_degree(*t_class);
        std::erase_if(out, [&](const Monomial& m) { return degrees(*pres.algebra, m).t_class != t; });
    }
    return out;
}

E2Block e2_block(const CochainComplex& complex, const BlockKey& key, bool with_reps)
{
    E2Block block;
    block.key = key;
    const auto& basis = complex.block_basis(key);
    block.e1_dim = basis.size();
    if (basis.empty())
        return block;
    FpMatrix d_out = complex.d1_matrix(key);
    BlockKey in_key{key.s - 1, key.t, key.M + 1};
    FpMatrix d_in = key.s > 0 ? complex.d1_matrix(in_key) : FpMatrix(complex.prime(), basis.size(), 0);
    block.dim = homology_dimension(d_in, d_out);
    if (!with_reps || block.dim == 0)
        return block;
    EchelonSpan span(complex.prime(), basis.size());
    for (std::size_t c = 0; c < d_in.cols(); ++c) {
        FpVector col(basis.size());
        for (std::size_t r = 0; r < basis.size(); ++r)
            col[r] = d_in(r, c);
        span.add(col);
    }
    for (auto& v : kernel_basis(d_out)) {
        if (span.add(v))
            block.reps.push_back(std::move(v));
        if (block.reps.size() == block.dim)
            break;
    }
    return block;
}

std::size_t PoincarePolynomial::total() const
{
    std::size_t sum = 0;
    for (auto c : coefficients)
        sum += c;
    return sum;
}

bool PoincarePolynomial::palindromic() const
{
    std::size_t top = coefficients.size();
    while (top > 0 && coefficients[top - 1] == 0)
        --top;
    for (std::size_t i = 0; i < top; ++i)
        if (coefficients[i] != coefficients[top - 1 - i])
            return false;
    return true;
}

const E2Block* PageTable::find(const BlockKey& key) const
{
    auto it = blocks_.find(key);
    return it == blocks_.end() ? nullptr : &it->second;
}

std::size_t PageTable::dim(const BlockKey& key) const
{
    const E2Block* b = find(key);
    return b ? b->dim : 0;
}

PoincarePolynomial PageTable::poincare() const
{
    PoincarePolynomial poly;
    poly.coefficients.assign(static_cast<std::size_t>(s_max_) + 1, 0);
    for (const auto& [key, b] : blocks_)
        if (key.s <= s_max_)
            poly.coefficients[key.s] += b.dim;
    return poly;
}

std::map<std::pair<int, std::int64_t>, std::size_t> PageTable::dims_by_t() const
{
    std::map<std::pair<int, std::int64_t>, std::size_t> out;
    for (const auto& [key, b] : blocks_)
        if (b.dim)
            out[{key.s, key.t}] += b.dim;
    return out;
}

Element PageTable::representative(const BlockKey& key, std::size_t index) const
{
    const E2Block* b = find(key);
    if (!b || index >= b->reps.size())
        throw Error("no representative " + std::to_string(index) + " in block " + render_key(key));
    return complex_->element(key, b->reps[index]);
}

std::vector<Element> PageTable::representatives(int s, std::optional<std::int64_t> t_class) const
{
    std::vector<Element> out;
    std::optional<std::int64_t> t;
    if (t_class)
        t = presentation().algebra->reduce_degree(*t_class);
    for (const auto& [key, b] : blocks_) {
        if (key.s != s || (t && key.t != *t))
            continue;
        for (const auto& v : b.reps)
            out.push_back(complex_->element(key, v));
    }
    return out;
}

bool PageTable::complete() const
{
    int top = 0;
    for (const auto& g : presentation().algebra->generators()) {
        if (g.parity == Parity::Polynomial)
            return false;
        top += g.s;
    }
    return s_max_ >= top;
}

PageTable compute_page_table(PresentationPtr pres, int s_max, int threads, bool with_reps)
{
    if (s_max < 0)
        throw InvalidParams("s_max must be nonnegative");
    auto complex = std::make_shared<const CochainComplex>(std::move(pres));
    std::vector<BlockKey> keys;
    for (int s = 0; s <= s_max; ++s) {
        auto ks = complex->block_keys(s);
        keys.insert(keys.end(), ks.begin(), ks.end());
    }
    complex->monomials(s_max + 1);
    std::vector<E2Block> results(keys.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        try {
            for (std::size_t i = next++; i < keys.size(); i = next++)
                results[i] = e2_block(*complex, keys[i], with_reps);
        }
        catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next = keys.size();
        }
    };
    const int nthreads = std::max(1, threads);
    std::vector<std::thread> pool;
    for (int i = 1; i < nthreads; ++i)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
    PageTable table(complex, s_max);
    for (auto& b : results)
        table.blocks().emplace(b.key, std::move(b));
    return table;
}

PoincarePolynomial poincare(PresentationPtr pres, int s_max, int threads)
{
    return compute_page_table(std::move(pres), s_max, threads, false).poincare();
}

ClassCheck check_class(const CochainComplex& complex, const Element& x)
{
    ClassCheck check;
    check.cocycle = d1_element(complex.presentation(), x).is_zero();
    check.boundary = in_image(complex, x);
    return check;
}

bool in_image(const CochainComplex& complex, const Element& x)
{
    if (x.algebra() != complex.presentation().algebra)
        throw MixedPresentation("element does not belong to this complex");
    for (const auto& [key, part] : complex.split(x)) {
        if (key.s == 0)
            return false;
        BlockKey in_key{key.s - 1, key.t, key.M + 1};
        const auto& basis = complex.block_basis(key);
        FpMatrix d_in = complex.d1_matrix(in_key);
        EchelonSpan span(complex.prime(), basis.size());
        for (std::size_t c = 0; c < d_in.cols(); ++c) {
            FpVector col(basis.size());
            for (std::size_t r = 0; r < basis.size(); ++r)
                col[r] = d_in(r, c);
            span.add(col);
        }
        if (!span.contains(complex.coordinates(key, part)))
            return false;
    }
    return true;
}

PresentationPtr restrict_presentation(const PagePresentation& pres, const std::function<bool(const GenLabel&)>& keep)
{
    const auto& src = *pres.algebra;
    std::vector<GeneratorSpec> gens;
    for (const auto& g : src.generators())
        if (keep(g.label))
            gens.push_back(g);
    auto alg = std::make_shared<const GradedAlgebra>(src.prime(), src.degree_modulus(), std::move(gens));
    auto out = std::make_shared<PagePresentation>();
    out->params = pres.params;
    out->flavor = pres.flavor;
    out->s0 = pres.s0;
    out->j_max = pres.j_max;
    out->algebra = alg;
    for (const auto& g : alg->generators()) {
        const Element& rule = pres.d1_rule(src.id_of(g.label));
        Element image(alg);
        for (const auto& [m, c] : rule.terms()) {
            std::vector<Factor> word;
            for (const auto& f : m.factors()) {
                const GenLabel& l = src.generator(f.gen).label;
                if (!keep(l))
                    throw Error("d_1(" + render_label(g.label) + ") involves " + render_label(l) +
                                ", which the restriction drops");
                word.push_back({alg->id_of(l), f.exp});
            }
            auto norm = normalize(*alg, word);
            if (norm)
                image.add_term(norm->first, fp_mul(c, norm->second, alg->prime()));
        }
        out->d1_rules.push_back(std::move(image));
    }
    return out;
}

namespace {

// Product of generators in the given order, or nullopt if one is missing.
std::optional<Element> word(const AlgebraPtr& alg, std::initializer_list<GenLabel> labels)
{
    std::vector<Factor> w;
    for (const auto& l : labels) {
        auto id = alg->find(l);
        if (!id)
            return std::nullopt;
        w.push_back({*id, 1});
    }
    Element x(alg);
    auto norm = normalize(*alg, w);
    if (norm)
        x.add_term(norm->first, norm->second);
    return x;
}

GenLabel h(int i, int j, int n)
{
    return {GenKind::H, i, ((j % n) + n) % n, false};
}

}  // namespace

std::vector<NamedClass> named_classes(const PagePresentation& pres)
{
    std::vector<NamedClass> out;
    if (pres.flavor != Flavor::S)
        return out;
    const auto& alg = pres.algebra;
    const Params& P = pres.params;
    const int n = P.n;
    auto add = [&](std::string name, std::optional<Element> x) {
        if (x && !x->is_zero())
            out.push_back({std::move(name), std::move(*x)});
    };
    if (P.p > 2 && n == 3 && P.k == 2) {
        for (int j = 0; j < n; ++j) {
            std::string J = std::to_string(j);
            add("g_" + J, word(alg, {h(4, j, n), h(2, j, n)}));
            add("k_" + J, word(alg, {h(4, j, n), h(2, j + 2, n)}));
            add("l_" + J, word(alg, {h(4, j, n), h(4, j + 1, n), h(2, j, n)}));
            auto a = word(alg, {h(4, j, n), h(4, j + 1, n), h(2, j + 1, n)});
            auto b = word(alg, {h(4, j + 1, n), h(4, j + 2, n), h(2, j, n)});
            if (a && b)
                add("l'_" + J, *a + *b);
        }
        add("A", word(alg, {h(4, 0, n), h(4, 1, n), h(4, 2, n), h(2, 0, n), h(2, 1, n), h(2, 2, n)}));
    }
    if (P.p > 2 && n == 4 && P.k == 2) {
        auto r0a = word(alg, {h(4, 0, n)}), r0b = word(alg, {h(4, 2, n)});
        auto r1a = word(alg, {h(4, 1, n)}), r1b = word(alg, {h(4, 3, n)});
        if (r0a && r0b)
            add("rho_0", *r0a + *r0b);
        if (r1a && r1b)
            add("rho_1", *r1a + *r1b);
        for (int j = 0; j < n; ++j) {
            std::string J = std::to_string(j);
            add("e_" + J, word(alg, {h(2, j, n), h(2, j + 1, n)}));
            add("g_" + J, word(alg, {h(4, j, n), h(2, j, n)}));
        }
    }
    if (P.p == 2 && P.k == n) {
        Element rho(alg);
        bool ok = true;
        for (int j = 0; j < n; ++j) {
            auto x = word(alg, {h(2 * n, j, n)});
            if (!x)
                ok = false;
            else
                rho += *x;
        }
        if (ok)
            add("rho_" + std::to_string(2 * n), rho);
        for (int j = 0; j < n; ++j)
            add("h_{" + std::to_string(n) + "," + std::to_string(j) + "}^2", word(alg, {h(n, j, n), h(n, j, n)}));
    }
    return out;
}

std::vector<NamedMatch> match_named_classes(const CochainComplex& complex)
{
    std::vector<NamedMatch> out;
    for (auto& nc : named_classes(complex.presentation())) {
        NamedMatch m;
        m.name = nc.name;
        m.rendered = render(nc.element);
        auto parts = complex.split(nc.element);
        m.key = parts.begin()->first;
        m.check = check_class(complex, nc.element);
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace maysseq
