#include "maysseq/collapse.hpp"

#include "maysseq/error.hpp"
#include "maysseq/hopf_oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace maysseq {

std::int64_t sum_of_index(const GradedAlgebra& alg, const Monomial& m)
{
    std::int64_t total = 0;
    for (const auto& f : m.factors())
        total += static_cast<std::int64_t>(alg.generator(f.gen).label.i) * f.exp;
    return total;
}

std::int64_t sum_of_degree(std::int64_t t, int p)
{
    if (p < 2)
        throw InvalidParams("prime must be at least 2");
    const std::int64_t unit = 2 * static_cast<std::int64_t>(p - 1);
    if (t < 0 || t % unit != 0)
        throw NotDivisible("degree " + std::to_string(t) + " is not a nonnegative multiple of " +
                           std::to_string(unit));
    std::int64_t c = t / unit, sum = 0;
    while (c > 0) {
        sum += c % p;
        c /= p;
    }
    return sum;
}

bool vanishes_by_filtration(int s, std::int64_t t, std::int64_t M, int p)
{
    return M < 2 * sum_of_degree(t, p) - s;
}

Certificate certify_infinite_cocycle(const PagePresentation& pres_t, const Element& g, const PagePresentation& pres_s)
{
    if (pres_t.flavor != Flavor::T || pres_s.flavor != Flavor::S)
        throw InvalidParams("certification needs a T(n,k) lift and an S(n,k) target");
    if (g.algebra() != pres_t.algebra)
        throw MixedPresentation("lift does not belong to the T(n,k) presentation");
    const auto& alg = *pres_t.algebra;
    Certificate cert;
    cert.source = "lift";
    cert.lift = render(g);
    auto refuse = [&](std::string why) {
        cert.reason = std::move(why);
        return cert;
    };
    if (g.is_zero())
        return refuse("zero element");
    std::optional<Degrees> deg;
    for (const auto& [m, c] : g.terms()) {
        for (const auto& f : m.factors())
            if (alg.generator(f.gen).label.kind == GenKind::B)
                return refuse("contains b' factors");
        Degrees d = degrees(alg, m);
        if (deg && (d.s != deg->s || d.t_lift != deg->t_lift || d.M != deg->M))
            return refuse("not homogeneous");
        deg = d;
        cert.si = sum_of_index(alg, m);
    }
    cert.t_lift = deg->t_lift;
    cert.sd = sum_of_degree(deg->t_lift, static_cast<int>(alg.prime()));
    if (!d1_element(pres_t, g).is_zero())
        return refuse("not a cocycle");
    if (cert.si != cert.sd)
        return refuse("SI = " + std::to_string(cert.si) + " differs from Sd = " + std::to_string(cert.sd));
    cert.phi_image = reduction_map_phi(pres_t, g, pres_s);
    if (cert.phi_image.is_zero())
        return refuse("image in S(n,k) is zero");
    cert.image = render(cert.phi_image);
    Degrees ds = degrees(*pres_s.algebra, cert.phi_image.terms().begin()->first);
    cert.key = BlockKey{ds.s, ds.t_class, ds.M};
    cert.granted = true;
    return cert;
}

std::size_t CollapseReport::remaining() const
{
    return static_cast<std::size_t>(
        std::count_if(obligations.begin(), obligations.end(), [](const Obligation& o) { return !o.discharged; }));
}

const char* status_name(CollapseStatus s)
{
    return s == CollapseStatus::Collapsed ? "collapsed" : "unresolved";
}

namespace {

// Span of the classes in one E_2 block known to be infinite cycles, kept
// modulo the d_1 boundaries.
struct Pool {
    EchelonSpan span;
    std::size_t boundaries = 0;
    std::size_t dim = 0;
    std::vector<FpVector> vectors;
    bool primitives = false;
    bool searched = false;
    bool multiplied = false;

    Pool(Fp p, std::size_t e1_dim) : span(p, e1_dim) {}
    std::size_t classes() const { return span.size() - boundaries; }
    bool full() const { return classes() >= dim; }
};

class Prover {
public:
    Prover(const PageTable& table, const CollapseOptions& options, CollapseReport& report)
        : table_(table), complex_(table.complex()), pres_(table.presentation()), options_(options), report_(report)
    {
    }

    // Blocks that have at least one nonzero target; targets are known for
    // s < limit.
    void set_sources(std::set<BlockKey> sources, int limit)
    {
        sources_ = std::move(sources);
        target_limit_ = limit;
    }

    void seed(const BlockKey& key, const Element& x)
    {
        Pool& pool = get(key);
        add(key, pool, complex_.coordinates(key, x));
    }

    bool nonzero_class(const BlockKey& key, const Element& x)
    {
        const E2Block* b = table_.find(key);
        if (!b || b->dim == 0)
            return false;
        Pool& pool = get(key);
        EchelonSpan probe(complex_.prime(), b->e1_dim);
        for (const auto& v : boundary_vectors(key))
            probe.add(v);
        (void)pool;
        return !probe.contains(complex_.coordinates(key, x));
    }

    // Fills the pool of key as far as the available tools allow.
    Pool& settle(const BlockKey& key)
    {
        Pool& pool = get(key);
        if (pool.full())
            return pool;
        if (key.s < target_limit_ && !sources_.count(key)) {
            // Every d_r out of this block lands in a zero group.
            for (const auto& v : table_.find(key)->reps)
                add(key, pool, v);
            return pool;
        }
        if (key.s == 1 && !pool.primitives) {
            pool.primitives = true;
            for (auto& lift : primitive_lifts(pres_, key))
                if (add(key, pool, complex_.coordinates(key, lift.leading)))
                    report_.primitive_lifts.push_back(
                        {render(lift.leading), render(HopfModel(pres_.params), lift.lift)});
        }
        if (options_.search && !pool.searched) {
            pool.searched = true;
            search_lifts(key, pool);
        }
        if (options_.products && !pool.full() && !pool.multiplied) {
            pool.multiplied = true;
            multiply_into(key, pool);
        }
        return pool;
    }

private:
    Pool& get(const BlockKey& key)
    {
        auto it = pools_.find(key);
        if (it != pools_.end())
            return it->second;
        const E2Block* b = table_.find(key);
        if (!b)
            throw Error("block " + render_key(key) + " is outside the table");
        Pool pool(complex_.prime(), b->e1_dim);
        pool.dim = b->dim;
        for (const auto& v : boundary_vectors(key))
            if (pool.span.add(v))
                ++pool.boundaries;
        return pools_.emplace(key, std::move(pool)).first->second;
    }

    std::vector<FpVector> boundary_vectors(const BlockKey& key) const
    {
        std::vector<FpVector> out;
        if (key.s == 0)
            return out;
        FpMatrix d_in = complex_.d1_matrix({key.s - 1, key.t, key.M + 1});
        for (std::size_t c = 0; c < d_in.cols(); ++c) {
            FpVector col(d_in.rows());
            for (std::size_t r = 0; r < d_in.rows(); ++r)
                col[r] = d_in(r, c);
            out.push_back(std::move(col));
        }
        return out;
    }

    bool add(const BlockKey& key, Pool& pool, const FpVector& v)
    {
        (void)key;
        if (!pool.span.add(v))
            return false;
        pool.vectors.push_back(v);
        return true;
    }

    const PagePresentation& t_presentation()
    {
        if (!pres_t_)
            pres_t_ = build_presentation(pres_.params, Flavor::T, 2 * pres_.params.n - 1);
        return *pres_t_;
    }

    // Lifts each exterior monomial of the block to T(n,k) in every way whose
    // base-p digit counts stay below p (so SI = Sd), takes d_1 cocycles among
    // lifts of equal integer degree and maps them back with Phi.
    void search_lifts(const BlockKey& key, Pool& pool)
    {
        const Params& P = pres_.params;
        if (P.p == 2 || pres_.flavor != Flavor::S)
            return;
        const auto& salg = *pres_.algebra;
        const PagePresentation& tp = t_presentation();
        const auto& talg = *tp.algebra;
        const int J = 2 * P.n;
        const int positions = J + P.n + P.k;
        std::map<std::int64_t, std::set<Monomial>> groups;
        for (const auto& m : complex_.block_basis(key)) {
            std::vector<GenLabel> labels;
            bool exterior = true;
            for (const auto& f : m.factors()) {
                const GenLabel& l = salg.generator(f.gen).label;
                if (l.kind != GenKind::H || f.exp != 1)
                    exterior = false;
                labels.push_back(l);
            }
            if (!exterior)
                continue;
            std::vector<int> digits(static_cast<std::size_t>(positions), 0);
            std::vector<Factor> word;
            std::function<void(std::size_t, int)> dfs = [&](std::size_t idx, int min_j) {
                if (idx == labels.size()) {
                    if (min_j >= P.n)
                        return;
                    auto norm = normalize(talg, word);
                    if (norm)
                        groups[degrees(talg, norm->first).t_lift].insert(norm->first);
                    return;
                }
                const GenLabel& l = labels[idx];
                for (int j = l.j; j < J; j += P.n) {
                    bool ok = true;
                    for (int q = j; q < j + l.i; ++q)
                        if (digits[q] + 1 >= P.p)
                            ok = false;
                    if (!ok)
                        continue;
                    auto id = talg.find({GenKind::H, l.i, j, true});
                    if (!id)
                        continue;
                    for (int q = j; q < j + l.i; ++q)
                        ++digits[q];
                    word.push_back({*id, 1});
                    dfs(idx + 1, std::min(min_j, j));
                    word.pop_back();
                    for (int q = j; q < j + l.i; ++q)
                        --digits[q];
                }
            };
            dfs(0, J);
        }
        for (const auto& [t_lift, monos] : groups) {
            if (pool.full())
                break;
            std::vector<Monomial> cols(monos.begin(), monos.end());
            std::map<Monomial, std::size_t> rows;
            std::vector<Element> images;
            for (const auto& m : cols) {
                images.push_back(d1_monomial(tp, m));
                for (const auto& [im, c] : images.back().terms())
                    rows.emplace(im, rows.size());
            }
            FpMatrix d(talg.prime(), rows.size(), cols.size());
            for (std::size_t c = 0; c < cols.size(); ++c)
                for (const auto& [im, coef] : images[c].terms())
                    d.add_to(rows.at(im), c, coef);
            for (const auto& v : kernel_basis(d)) {
                Element g(tp.algebra);
                for (std::size_t c = 0; c < cols.size(); ++c)
                    if (v[c])
                        g.add_term(cols[c], v[c]);
                Element image = reduction_map_phi(tp, g, pres_);
                if (image.is_zero())
                    continue;
                if (!add(key, pool, complex_.coordinates(key, image)))
                    continue;
                Certificate cert;
                cert.granted = true;
                cert.source = "search";
                cert.lift = render(g);
                cert.image = render(image);
                cert.si = sum_of_index(talg, cols.front());
                cert.sd = sum_of_degree(t_lift, P.p);
                cert.t_lift = t_lift;
                cert.key = key;
                cert.nonzero_in_e2 = true;
                cert.phi_image = image;
                report_.certificates.push_back(std::move(cert));
                if (pool.full())
                    break;
            }
        }
    }

    void multiply_into(const BlockKey& key, Pool& pool)
    {
        const auto& alg = *pres_.algebra;
        for (int s1 = 1; 2 * s1 <= key.s && !pool.full(); ++s1) {
            for (const auto& xkey : complex_.block_keys(s1)) {
                if (pool.full())
                    break;
                BlockKey ykey{key.s - s1, alg.reduce_degree(key.t - xkey.t), key.M - xkey.M};
                if (table_.dim(xkey) == 0 || table_.dim(ykey) == 0)
                    continue;
                const Pool& xp = settle(xkey);
                const Pool& yp = settle(ykey);
                for (const auto& xv : xp.vectors) {
                    Element x = complex_.element(xkey, xv);
                    for (const auto& yv : yp.vectors) {
                        Element prod = x * complex_.element(ykey, yv);
                        if (prod.is_zero())
                            continue;
                        add(key, pool, complex_.coordinates(key, prod));
                        if (pool.full())
                            return;
                    }
                }
            }
        }
    }

    const PageTable& table_;
    const CochainComplex& complex_;
    const PagePresentation& pres_;
    const CollapseOptions& options_;
    CollapseReport& report_;
    PresentationPtr pres_t_;
    std::map<BlockKey, Pool> pools_;
    std::set<BlockKey> sources_;
    int target_limit_ = 0;
};

}  // namespace

CollapseReport prove_collapse(const PageTable& table, const CollapseOptions& options)
{
    const PagePresentation& pres = table.presentation();
    if (pres.flavor != Flavor::S)
        throw InvalidParams("the collapse prover runs on S(n,k) tables");
    const auto& alg = *pres.algebra;
    const Params& P = pres.params;

    CollapseReport report;
    report.params = P;
    report.s_max = table.s_max();
    report.windowed = std::any_of(alg.generators().begin(), alg.generators().end(),
                                  [](const GeneratorSpec& g) { return g.parity == Parity::Polynomial; });
    if (!report.windowed && !table.complete())
        throw IncompleteTable("table stops at s = " + std::to_string(table.s_max()) +
                              " below the top exterior degree; rerun with a larger --smax");

    for (const auto& g : alg.generators())
        if (g.label.kind == GenKind::B)
            if (auto rule = candidate_b_rule(P, g.label.i, g.label.j))
                report.candidate_rules.push_back(std::move(*rule));

    std::map<std::pair<int, std::int64_t>, std::vector<const E2Block*>> by_st;
    for (const auto& [key, b] : table.blocks()) {
        if (b.dim == 0)
            continue;
        by_st[{key.s, key.t}].push_back(&b);
        report.m_max = std::max(report.m_max, key.M);
    }
    for (const auto& [key, b] : table.blocks()) {
        if (b.dim == 0 || key.s + 1 > table.s_max())
            continue;
        auto it = by_st.find({key.s + 1, key.t});
        if (it == by_st.end())
            continue;
        for (const E2Block* tb : it->second) {
            const std::int64_t r = key.M - tb->key.M;
            if (r < 2)
                continue;
            report.obligations.push_back({key, b.dim, static_cast<int>(r), tb->key, tb->dim, false, {}});
        }
    }

    Prover prover(table, options, report);
    std::set<BlockKey> sources;
    for (const auto& ob : report.obligations)
        sources.insert(ob.source);
    // An exterior table that reaches the top degree has no groups beyond it.
    prover.set_sources(std::move(sources), report.windowed ? table.s_max() : table.s_max() + 1);
    prover.seed({0, 0, 0}, Element::unit(pres.algebra));
    // b_{i,j} with i < 2k is built from the primitive t_i, so its symmetric
    // tensor is a cobar cocycle.  Degree-one classes are handled by the
    // primitive search.
    for (GenId id = 0; id < alg.size(); ++id) {
        const auto& g = alg.generator(id);
        if (g.label.kind != GenKind::B || g.label.i >= 2 * P.k || g.s > table.s_max())
            continue;
        Element x = Element::generator(pres.algebra, g.label);
        BlockKey key = table.complex().key_of(x.terms().begin()->first);
        if (!prover.nonzero_class(key, x))
            continue;
        prover.seed(key, x);
        report.primitive_lifts.push_back({render_label(g.label), "b"});
    }

    if (!options.lifts.empty()) {
        auto pres_t = build_presentation(P, Flavor::T, 3 * P.n);
        for (const auto& text : options.lifts) {
            Certificate cert;
            try {
                cert = certify_infinite_cocycle(*pres_t, parse_element(pres_t->algebra, text), pres);
            }
            catch (const Error& e) {
                cert.lift = text;
                cert.reason = e.what();
            }
            if (cert.granted && cert.key && cert.key->s <= table.s_max()) {
                cert.nonzero_in_e2 = prover.nonzero_class(*cert.key, cert.phi_image);
                prover.seed(*cert.key, cert.phi_image);
            }
            report.certificates.push_back(std::move(cert));
        }
    }

    for (const auto& text : options.asserted) {
        AssertedCocycle a;
        a.element = text;
        Element x = parse_element(pres.algebra, text);
        auto parts = table.complex().split(x);
        if (parts.size() != 1)
            throw NonHomogeneous("asserted cocycle " + text + " is not homogeneous");
        a.key = parts.begin()->first;
        a.cocycle = d1_element(pres, x).is_zero();
        if (a.cocycle && a.key.s <= table.s_max()) {
            a.nonzero_in_e2 = prover.nonzero_class(a.key, x);
            prover.seed(a.key, x);
        }
        report.asserted.push_back(std::move(a));
    }

    for (auto& ob : report.obligations) {
        if (prover.settle(ob.source).full()) {
            ob.discharged = true;
            ob.reason = "source spanned by infinite cycles";
        }
    }
    report.status = report.remaining() == 0 ? CollapseStatus::Collapsed : CollapseStatus::Unresolved;
    return report;
}

}  // namespace maysseq
