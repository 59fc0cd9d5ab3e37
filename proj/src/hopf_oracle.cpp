#include "maysseq/hopf_oracle.hpp"

#include "maysseq/diff.hpp"
#include "maysseq/error.hpp"
#include "maysseq/fpla.hpp"

#include <functional>
#include <sstream>

namespace maysseq {

std::vector<Fp> b_coefficients(int p)
{
    require_prime(p);
    // C(p,m)/p = C(p-1,m-1)/m, which can be evaluated mod p directly.
    std::vector<Fp> out;
    const Fp P = static_cast<Fp>(p);
    Fp binom = 1;  // C(p-1, m-1) mod p
    for (int m = 1; m < p; ++m) {
        if (m > 1)
            binom = fp_mul(fp_mul(binom, static_cast<Fp>(p - m + 1), P), fp_inv(static_cast<Fp>(m - 1), P), P);
        out.push_back(fp_mul(binom, fp_inv(static_cast<Fp>(m), P), P));
    }
    return out;
}

namespace {

void trim(TMono& m)
{
    while (!m.empty() && m.back() == 0)
        m.pop_back();
}

std::int64_t digit_sum(std::int64_t e, int p)
{
    std::int64_t s = 0;
    for (; e > 0; e /= p)
        s += e % p;
    return s;
}

void accumulate(TensorPoly& x, const TensorWord& w, Fp c, Fp p)
{
    if (c == 0)
        return;
    auto [it, inserted] = x.try_emplace(w, c);
    if (!inserted) {
        it->second = fp_add(it->second, c, p);
        if (it->second == 0)
            x.erase(it);
    }
}

}  // namespace

HopfModel::HopfModel(const Params& params) : params_(params)
{
    q_ = checked_pow(params.p, params.n) - 1;
}

std::int64_t HopfModel::reduce_exp(std::int64_t e) const
{
    return e == 0 ? 0 : ((e - 1) % q_) + 1;
}

TMono HopfModel::variable(int l, std::int64_t e) const
{
    if (l < params_.k)
        throw InvalidParams("t_" + std::to_string(l) + " is zero in S(n,k) for k = " + std::to_string(params_.k));
    TMono m(static_cast<std::size_t>(l) + 1, 0);
    m[l] = reduce_exp(e);
    trim(m);
    return m;
}

TMono HopfModel::multiply(const TMono& a, const TMono& b) const
{
    TMono m(std::max(a.size(), b.size()), 0);
    for (std::size_t l = 0; l < m.size(); ++l) {
        std::int64_t e = (l < a.size() ? a[l] : 0) + (l < b.size() ? b[l] : 0);
        m[l] = reduce_exp(e);
    }
    trim(m);
    return m;
}

TMono HopfModel::frobenius(const TMono& m, int a) const
{
    const std::int64_t pa = checked_pow(params_.p, ((a % params_.n) + params_.n) % params_.n);
    TMono out = m;
    for (auto& e : out)
        if (e > 0) {
            std::int64_t r = (e % q_) * (pa % q_) % q_;
            e = r == 0 ? q_ : r;
        }
    return out;
}

bool HopfModel::is_unit(const TMono& m) const
{
    return m.empty();
}

std::int64_t HopfModel::filtration(const TMono& m) const
{
    std::int64_t total = 0;
    for (std::size_t l = 0; l < m.size(); ++l)
        if (m[l] > 0)
            total += digit_sum(m[l], params_.p) * may_filtration_ts(params_, static_cast<int>(l));
    return total;
}

std::int64_t HopfModel::filtration(const TensorWord& w) const
{
    std::int64_t total = 0;
    for (const auto& m : w)
        total += filtration(m);
    return total;
}

std::int64_t HopfModel::degree(const TMono& m) const
{
    const std::int64_t D = params_.degree_modulus();
    std::int64_t total = 0;
    for (std::size_t l = 0; l < m.size(); ++l) {
        if (m[l] == 0)
            continue;
        // |t_l| = 2(p^l - 1) and p^n = 1 modulo p^n - 1.
        std::int64_t tl = 2 * (checked_pow(params_.p, static_cast<int>(l) % params_.n) - 1);
        total = (total + (m[l] % D) * tl) % D;
    }
    return total;
}

const TensorPoly& HopfModel::delta_t(int l) const
{
    auto it = delta_cache_.find(l);
    if (it != delta_cache_.end())
        return it->second;
    const Fp p = static_cast<Fp>(params_.p);
    const int n = params_.n, k = params_.k;
    TensorPoly d;
    TMono t = variable(l);
    accumulate(d, {unit(), t}, 1, p);
    accumulate(d, {t, unit()}, 1, p);
    for (int i = k; i <= l - k; ++i)
        accumulate(d, {variable(i), frobenius(variable(l - i), i)}, 1, p);
    if (l >= n + k) {
        auto c = b_coefficients(params_.p);
        const std::int64_t pj = checked_pow(params_.p, n - 1);
        for (int m = 1; m < params_.p; ++m)
            accumulate(d, {variable(l - n, m * pj), variable(l - n, (params_.p - m) * pj)}, fp_neg(c[m - 1], p), p);
    }
    return delta_cache_.emplace(l, std::move(d)).first->second;
}

namespace {

TensorPoly tensor_multiply(const HopfModel& model, const TensorPoly& a, const TensorPoly& b, Fp p)
{
    TensorPoly out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            TensorWord w(wa.size());
            for (std::size_t i = 0; i < wa.size(); ++i)
                w[i] = model.multiply(wa[i], wb[i]);
            accumulate(out, w, fp_mul(ca, cb, p), p);
        }
    return out;
}

}  // namespace

TensorPoly HopfModel::coproduct(const TMono& m) const
{
    const Fp p = static_cast<Fp>(params_.p);
    TensorPoly result;
    result[{unit(), unit()}] = 1;
    for (std::size_t l = 0; l < m.size(); ++l) {
        std::int64_t e = m[l];
        for (int a = 0; e > 0; ++a, e /= params_.p) {
            const std::int64_t digit = e % params_.p;
            if (digit == 0)
                continue;
            TensorPoly frob;
            for (const auto& [w, c] : delta_t(static_cast<int>(l)))
                accumulate(frob, {frobenius(w[0], a), frobenius(w[1], a)}, c, p);
            for (std::int64_t r = 0; r < digit; ++r)
                result = tensor_multiply(*this, result, frob, p);
        }
    }
    return result;
}

TensorPoly HopfModel::reduced_coproduct(const TMono& m) const
{
    TensorPoly out;
    for (auto& [w, c] : coproduct(m))
        if (!is_unit(w[0]) && !is_unit(w[1]))
            out.emplace(w, c);
    return out;
}

std::string HopfModel::render(const TMono& m) const
{
    if (m.empty())
        return "1";
    std::ostringstream os;
    bool first = true;
    for (std::size_t l = 0; l < m.size(); ++l) {
        if (m[l] == 0)
            continue;
        if (!first)
            os << " ";
        first = false;
        os << "t_" << l;
        if (m[l] != 1)
            os << "^" << m[l];
    }
    return os.str();
}

std::string HopfModel::render(const TensorPoly& x) const
{
    if (x.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : x) {
        if (!first)
            os << " + ";
        first = false;
        if (c != 1)
            os << c << "*";
        os << "[";
        for (std::size_t i = 0; i < w.size(); ++i)
            os << (i ? " | " : "") << render(w[i]);
        os << "]";
    }
    return os.str();
}

std::string render(const HopfModel& model, const TPoly& x)
{
    if (x.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : x) {
        if (!first)
            os << " + ";
        first = false;
        if (c != 1)
            os << c << "*";
        os << model.render(m);
    }
    return os.str();
}

TensorPoly reduced_coproduct(const Params& params, int s)
{
    HopfModel model(params);
    return model.reduced_coproduct(model.variable(s));
}

std::vector<CoassociativityCheck> check_coassociativity(const Params& params, std::optional<int> s_max)
{
    HopfModel model(params);
    const Fp p = static_cast<Fp>(params.p);
    const int top = s_max.value_or(compute_s0(params) + params.n);
    std::vector<CoassociativityCheck> out;
    for (int s = params.k; s <= top; ++s) {
        CoassociativityCheck check;
        check.s = s;
        TensorPoly left, right;
        for (const auto& [w, c] : model.coproduct(model.variable(s))) {
            for (const auto& [w2, c2] : model.coproduct(w[0]))
                accumulate(left, {w2[0], w2[1], w[1]}, fp_mul(c, c2, p), p);
            for (const auto& [w2, c2] : model.coproduct(w[1]))
                accumulate(right, {w[0], w2[0], w2[1]}, fp_mul(c, c2, p), p);
        }
        check.terms = left.size();
        check.ok = left == right;
        if (!check.ok) {
            TensorPoly diff = left;
            for (const auto& [w, c] : right)
                accumulate(diff, w, fp_neg(c, p), p);
            const auto& [w, c] = *diff.begin();
            TensorPoly one{{w, c}};
            check.mismatch = model.render(one);
        }
        out.push_back(std::move(check));
    }
    return out;
}

ExtractedD1 extract_d1(const Params& params, int s, int j)
{
    const int s0 = compute_s0(params);
    if (s < params.k || s > s0 + params.n)
        throw InvalidParams("extract_d1 needs k <= s <= s0 + n, got s = " + std::to_string(s));
    const int n = params.n, pi = params.p;
    const Fp p = static_cast<Fp>(pi);
    HopfModel model(params);
    auto alg = unreduced_e1_algebra(params, s);

    ExtractedD1 row;
    row.s = s;
    row.j = ((j % n) + n) % n;
    row.filtration = may_filtration_ts(params, s) - 1;
    row.extracted = Element(alg);
    row.catalog = unreduced_d1_image(alg, params, s, row.j);

    auto power_index = [&](std::int64_t e) -> std::optional<int> {
        for (int x = 0; x < n; ++x)
            if (e == checked_pow(pi, x))
                return x;
        return std::nullopt;
    };
    auto single = [](const TMono& m) -> std::optional<std::pair<int, std::int64_t>> {
        std::optional<std::pair<int, std::int64_t>> found;
        for (std::size_t l = 0; l < m.size(); ++l)
            if (m[l] > 0) {
                if (found)
                    return std::nullopt;
                found = std::pair<int, std::int64_t>{static_cast<int>(l), m[l]};
            }
        return found;
    };

    const auto c = b_coefficients(pi);
    // (i, j) -> coefficient of b_{i,j} implied by each m
    std::map<std::pair<int, int>, std::map<int, Fp>> bterms;
    const TensorPoly red = model.reduced_coproduct(model.frobenius(model.variable(s), row.j));
    for (const auto& [w, coef] : red) {
        const std::int64_t f = model.filtration(w);
        row.max_filtration = std::max(row.max_filtration, f);
        if (f != row.filtration)
            continue;
        auto u = single(w[0]), v = single(w[1]);
        bool done = false;
        if (u && v && u->first == v->first) {
            for (int jj = 0; jj < n && !done; ++jj)
                for (int m = 1; m < pi && !done; ++m) {
                    const TMono a = model.variable(u->first, m * checked_pow(pi, jj));
                    const TMono b = model.variable(u->first, (pi - m) * checked_pow(pi, jj));
                    if (a == w[0] && b == w[1]) {
                        bterms[{u->first, jj}][m] = fp_mul(coef, fp_inv(c[m - 1], p), p);
                        done = true;
                    }
                }
        }
        if (!done && u && v) {
            auto x = power_index(u->second), y = power_index(v->second);
            if (x && y) {
                Element hu = Element::generator(alg, {GenKind::H, u->first, *x, false});
                Element hv = Element::generator(alg, {GenKind::H, v->first, *y, false});
                row.extracted += (hu * hv) * coef;
                done = true;
            }
        }
        if (!done) {
            row.translated = false;
            TensorPoly one{{w, coef}};
            row.note = "no h/b reading for " + model.render(one);
        }
    }
    for (const auto& [ij, by_m] : bterms) {
        const Fp value = by_m.begin()->second;
        bool consistent = static_cast<int>(by_m.size()) == (pi == 2 ? 1 : pi - 1);
        for (const auto& [m, v] : by_m)
            consistent = consistent && v == value;
        if (!consistent) {
            row.translated = false;
            row.note = "incomplete b pattern for t_" + std::to_string(ij.first);
            continue;
        }
        row.extracted += b_class(alg, params, ij.first, ij.second) * value;
    }
    if (row.max_filtration > row.filtration)
        row.note = "reduced coproduct exceeds filtration M(t_s) - 1";

    if (row.catalog.is_zero() && row.extracted.is_zero())
        return row;
    if (row.catalog.is_zero() || row.extracted.is_zero())
        return row;
    const auto& [m0, c0] = *row.catalog.terms().begin();
    const Fp lambda = fp_mul(row.extracted.coefficient(m0), fp_inv(c0, p), p);
    if (lambda != 0 && row.extracted == row.catalog * lambda)
        row.sign = lambda;
    return row;
}

D1Comparison compare_d1(const Params& params)
{
    D1Comparison cmp;
    cmp.ok = true;
    const int top = compute_s0(params) + params.n;
    for (int s = params.k; s <= top; ++s)
        for (int j = 0; j < params.n; ++j) {
            ExtractedD1 row = extract_d1(params, s, j);
            const bool both_zero = row.catalog.is_zero() && row.extracted.is_zero();
            bool ok = row.translated && row.max_filtration <= row.filtration && (both_zero || row.sign);
            if (row.sign) {
                if (cmp.sign && *cmp.sign != *row.sign)
                    ok = false;
                cmp.sign = row.sign;
            }
            cmp.ok = cmp.ok && ok;
            cmp.rows.push_back(std::move(row));
        }
    return cmp;
}

ExtOracleResult ext_truncated_oracle(int p, int s_max)
{
    require_prime(p);
    if (s_max < 0 || s_max > 8)
        throw InvalidParams("ext_truncated_oracle supports 0 <= s_max <= 8");
    const Fp P = static_cast<Fp>(p);
    ExtOracleResult res;
    res.p = p;
    // binom[a][b] mod p for a < p
    std::vector<std::vector<Fp>> binom(p, std::vector<Fp>(p, 0));
    for (int a = 0; a < p; ++a) {
        binom[a][0] = 1;
        for (int b = 1; b <= a; ++b)
            binom[a][b] = fp_add(binom[a - 1][b - 1], b <= a - 1 ? binom[a - 1][b] : 0, P);
    }
    // Words of length s over {1..p-1}, grouped by total degree.
    using Word = std::vector<int>;
    auto words = [&](int s) {
        std::map<int, std::vector<Word>> out;
        Word w(s, 1);
        while (true) {
            int t = 0;
            for (int a : w)
                t += a;
            out[t].push_back(w);
            int i = s - 1;
            while (i >= 0 && w[i] == p - 1)
                w[i--] = 1;
            if (i < 0)
                break;
            ++w[i];
        }
        return out;
    };
    std::vector<std::map<int, std::vector<Word>>> C;
    for (int s = 0; s <= s_max + 1; ++s)
        C.push_back(words(s));
    auto diff_matrix = [&](int s, int t) {
        const auto& src = C[s][t];
        const auto& tgt = C[s + 1][t];
        std::map<Word, std::size_t> index;
        for (std::size_t r = 0; r < tgt.size(); ++r)
            index[tgt[r]] = r;
        FpMatrix d(P, tgt.size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c) {
            const Word& w = src[c];
            for (int i = 0; i < s; ++i) {
                const Fp sign = (i % 2 == 0) ? fp_neg(1, P) : 1;
                for (int b = 1; b < w[i]; ++b) {
                    Word x = w;
                    x[i] = b;
                    x.insert(x.begin() + i + 1, w[i] - b);
                    d.add_to(index.at(x), c, fp_mul(sign, binom[w[i]][b], P));
                }
            }
        }
        return d;
    };
    res.dims.assign(static_cast<std::size_t>(s_max) + 1, 0);
    for (int s = 0; s <= s_max; ++s) {
        for (const auto& [t, basis] : C[s]) {
            std::size_t in_rank = 0;
            if (s > 0 && C[s - 1].count(t))
                in_rank = rank(diff_matrix(s - 1, t));
            std::size_t out_rank = C[s + 1].count(t) ? rank(diff_matrix(s, t)) : 0;
            const std::size_t dim = basis.size() - out_rank - in_rank;
            if (dim) {
                res.by_degree[{s, t}] = dim;
                res.dims[s] += dim;
            }
        }
    }
    if (s_max >= 2 && C[2].count(p)) {
        const auto& basis = C[2][p];
        FpVector v(basis.size(), 0);
        auto c = b_coefficients(p);
        for (std::size_t r = 0; r < basis.size(); ++r)
            v[r] = c[basis[r][0] - 1];
        bool cocycle = C[3].count(p) == 0;
        if (!cocycle) {
            FpVector image = diff_matrix(2, p).apply(v);
            cocycle = std::all_of(image.begin(), image.end(), [](Fp x) { return x == 0; });
        }
        EchelonSpan span(P, basis.size());
        if (C[1].count(p)) {
            FpMatrix d = diff_matrix(1, p);
            for (std::size_t col = 0; col < d.cols(); ++col) {
                FpVector x(d.rows());
                for (std::size_t r = 0; r < d.rows(); ++r)
                    x[r] = d(r, col);
                span.add(x);
            }
        }
        res.b_representative = cocycle && !span.contains(v);
    }
    return res;
}

std::vector<PrimitiveLift> primitive_lifts(const PagePresentation& pres, const BlockKey& key)
{
    if (pres.flavor != Flavor::S || key.s != 1)
        throw InvalidParams("primitive lifts are searched in degree-one S(n,k) blocks");
    const Params& P = pres.params;
    const Fp p = static_cast<Fp>(P.p);
    HopfModel model(P);
    const auto& alg = *pres.algebra;
    // The closed-form coproduct misses correction terms once t_{s-n} stops
    // being primitive (s >= n + 2k), so only variables below that are used.
    const int l_end = P.n + 2 * P.k;

    std::vector<Monomial> leading;
    std::vector<TMono> columns;
    for (const auto& m : monomial_basis(pres, 1, key.t)) {
        if (degrees(alg, m).M != key.M)
            continue;
        const GenLabel& l = alg.generator(m.factors().front().gen).label;
        if (l.kind != GenKind::H || l.i >= l_end)
            continue;
        leading.push_back(m);
        columns.push_back(model.frobenius(model.variable(l.i), l.j));
    }
    if (leading.empty())
        return {};

    // Corrections: monomials of lower filtration in the same degree class.
    const std::int64_t D = P.degree_modulus();
    std::vector<std::pair<int, int>> slots;  // (variable, digit position)
    for (int l = P.k; l < l_end && may_filtration_ts(P, l) < key.M; ++l)
        for (int a = 0; a < P.n; ++a)
            slots.push_back({l, a});
    TMono current;
    std::function<void(std::size_t, std::int64_t)> dfs = [&](std::size_t idx, std::int64_t filt) {
        if (idx == slots.size()) {
            if (!current.empty() && model.degree(current) == ((key.t % D) + D) % D)
                columns.push_back(current);
            return;
        }
        const auto [l, a] = slots[idx];
        const std::int64_t step = may_filtration_ts(P, l);
        for (int d = 0; d < P.p && filt + d * step < key.M; ++d) {
            TMono saved = current;
            if (d > 0)
                current = model.multiply(current, model.variable(l, d * checked_pow(P.p, a)));
            dfs(idx + 1, filt + d * step);
            current = std::move(saved);
        }
    };
    dfs(0, 0);

    std::map<TensorWord, std::size_t> rows;
    std::vector<TensorPoly> images;
    for (const auto& m : columns) {
        images.push_back(model.reduced_coproduct(m));
        for (const auto& [w, c] : images.back())
            rows.emplace(w, rows.size());
    }
    FpMatrix d(p, rows.size(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& [w, coef] : images[c])
            d.add_to(rows.at(w), c, coef);

    std::vector<PrimitiveLift> out;
    EchelonSpan seen(p, leading.size());
    for (const auto& v : kernel_basis(d)) {
        FpVector lead(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(leading.size()));
        if (!seen.add(lead))
            continue;
        PrimitiveLift lift{Element(pres.algebra), {}};
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (v[c] == 0)
                continue;
            if (c < leading.size())
                lift.leading.add_term(leading[c], v[c]);
            lift.lift[columns[c]] = v[c];
        }
        out.push_back(std::move(lift));
    }
    return out;
}

}  // namespace maysseq

namespace maysseq {

bool VerifyReport::coassociative() const
{
    return std::all_of(coassociativity.begin(), coassociativity.end(),
                       [](const CoassociativityCheck& c) { return c.ok; });
}

bool VerifyReport::ext_ok() const
{
    return std::all_of(ext.dims.begin(), ext.dims.end(), [](std::size_t d) { return d == 1; }) &&
           ext.b_representative;
}

VerifyReport run_verify(const Params& params, int ext_s_max)
{
    VerifyReport report;
    report.params = params;
    report.coassociativity = check_coassociativity(params);
    report.d1 = compare_d1(params);
    report.ext = ext_truncated_oracle(params.p, ext_s_max);
    return report;
}

}  // namespace maysseq
