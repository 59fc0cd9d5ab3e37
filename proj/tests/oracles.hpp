#pragma once

// Independent reference computations for the unit tests.  Nothing here calls
// into the library: matrices, monomials and signs use their own plain
// representations so agreement means two separate code paths agree.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using Row = std::vector<std::int64_t>;

inline std::int64_t mod(std::int64_t a, std::int64_t p)
{
    a %= p;
    return a < 0 ? a + p : a;
}

inline std::int64_t inverse(std::int64_t a, std::int64_t p)
{
    // Fermat, p prime
    std::int64_t r = 1, b = mod(a, p), e = p - 2;
    while (e > 0) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Rank by elimination over rows, pivoting from the last column backwards.
inline std::size_t rank(std::vector<Row> m, std::int64_t p)
{
    std::size_t r = 0;
    if (m.empty())
        return 0;
    const std::size_t cols = m[0].size();
    for (std::size_t cc = cols; cc-- > 0 && r < m.size();) {
        std::size_t piv = m.size();
        for (std::size_t i = r; i < m.size(); ++i)
            if (mod(m[i][cc], p) != 0) {
                piv = i;
                break;
            }
        if (piv == m.size())
            continue;
        std::swap(m[r], m[piv]);
        const std::int64_t inv = inverse(m[r][cc], p);
        for (auto& x : m[r])
            x = mod(x * inv, p);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r)
                continue;
            const std::int64_t f = mod(m[i][cc], p);
            if (f == 0)
                continue;
            for (std::size_t c = 0; c < cols; ++c)
                m[i][c] = mod(m[i][c] - f * m[r][c], p);
        }
        ++r;
    }
    return r;
}

// Polynomial helpers for Poincare series.
using Poly = std::vector<std::int64_t>;

inline Poly multiply(const Poly& a, const Poly& b)
{
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

inline Poly power(const Poly& a, int e)
{
    Poly r{1};
    for (int i = 0; i < e; ++i)
        r = multiply(r, a);
    return r;
}

// Coefficients 0..s_max of a(t) / (1 - t).
inline Poly divide_by_one_minus_t(const Poly& a, std::size_t s_max)
{
    Poly r(s_max + 1, 0);
    std::int64_t acc = 0;
    for (std::size_t s = 0; s <= s_max; ++s) {
        acc += s < a.size() ? a[s] : 0;
        r[s] = acc;
    }
    return r;
}

// Sign of reordering a word of odd/even letters into ascending key order:
// (-1)^(number of inversions between odd letters).
inline int koszul_sign(const std::vector<std::pair<int, bool>>& word)
{
    int inversions = 0;
    for (std::size_t a = 0; a < word.size(); ++a)
        for (std::size_t b = a + 1; b < word.size(); ++b)
            if (word[a].second && word[b].second && word[a].first > word[b].first)
                ++inversions;
    return inversions % 2 ? -1 : 1;
}

// A graded-commutative algebra given by generators with (s, t, M) and a d_1
// rule per generator, with monomials stored as exponent vectors.
struct Gen {
    int s = 1;
    std::int64_t t = 0;
    std::int64_t M = 0;
    bool exterior = true;
};

struct Term {
    std::int64_t coef = 1;
    std::vector<int> word;  // generator indices in product order
};

struct Model {
    std::int64_t p = 2;
    std::int64_t D = 0;  // internal degree modulus, 0 for exact
    std::vector<Gen> gens;
    std::vector<std::vector<Term>> d1;  // per generator
};

using Exps = std::vector<int>;
using Vec = std::map<Exps, std::int64_t>;

// Multiply the canonical monomial e by generator g on the right.
inline bool times_gen(const Model& m, Exps& e, int g, std::int64_t& coef)
{
    const bool odd = m.gens[g].s % 2 != 0;
    if (m.gens[g].exterior && e[g] > 0)
        return false;
    if (odd)
        for (std::size_t h = g + 1; h < e.size(); ++h)
            if (e[h] > 0 && m.gens[h].s % 2 != 0 && (e[h] % 2))
                coef = -coef;
    ++e[g];
    return true;
}

inline void add(Vec& v, const Exps& e, std::int64_t c, std::int64_t p)
{
    c = mod(c, p);
    if (c == 0)
        return;
    auto& x = v[e];
    x = mod(x + c, p);
    if (x == 0)
        v.erase(e);
}

inline Vec word_value(const Model& m, const std::vector<int>& word, std::int64_t coef)
{
    Vec v;
    Exps e(m.gens.size(), 0);
    for (int g : word)
        if (!times_gen(m, e, g, coef))
            return v;
    add(v, e, coef, m.p);
    return v;
}

inline Vec d1_monomial(const Model& m, const Exps& e)
{
    std::vector<int> factors;
    for (std::size_t g = 0; g < e.size(); ++g)
        for (int r = 0; r < e[g]; ++r)
            factors.push_back(static_cast<int>(g));
    Vec out;
    int prefix_s = 0;
    for (std::size_t pos = 0; pos < factors.size(); ++pos) {
        const int g = factors[pos];
        for (const auto& term : m.d1[g]) {
            std::vector<int> word(factors.begin(), factors.begin() + pos);
            word.insert(word.end(), term.word.begin(), term.word.end());
            word.insert(word.end(), factors.begin() + pos + 1, factors.end());
            const std::int64_t sign = prefix_s % 2 ? -1 : 1;
            for (const auto& [x, c] : word_value(m, word, sign * term.coef))
                add(out, x, c, m.p);
        }
        prefix_s += m.gens[g].s;
    }
    return out;
}

struct Key {
    int s;
    std::int64_t t, M;
    bool operator<(const Key& o) const { return std::tie(s, t, M) < std::tie(o.s, o.t, o.M); }
};

inline std::map<Key, std::vector<Exps>> blocks(const Model& m, int s)
{
    std::map<Key, std::vector<Exps>> out;
    Exps e(m.gens.size(), 0);
    auto rec = [&](auto&& self, std::size_t g, int left) -> void {
        if (left == 0) {
            std::int64_t t = 0, M = 0;
            for (std::size_t h = 0; h < e.size(); ++h) {
                t += e[h] * m.gens[h].t;
                M += e[h] * m.gens[h].M;
            }
            if (m.D)
                t = mod(t, m.D);
            out[{s, t, M}].push_back(e);
            return;
        }
        if (g == e.size())
            return;
        const int cap = m.gens[g].exterior ? 1 : left / m.gens[g].s;
        for (int x = 0; x <= cap && x * m.gens[g].s <= left; ++x) {
            e[g] = x;
            self(self, g + 1, left - x * m.gens[g].s);
        }
        e[g] = 0;
    };
    rec(rec, 0, s);
    return out;
}

inline std::size_t d1_rank(const Model& m, const Key& src, const std::map<Key, std::vector<Exps>>& lo,
                           const std::map<Key, std::vector<Exps>>& hi)
{
    auto it = lo.find(src);
    auto jt = hi.find({src.s + 1, src.t, src.M - 1});
    if (it == lo.end() || jt == hi.end())
        return 0;
    std::map<Exps, std::size_t> index;
    for (std::size_t r = 0; r < jt->second.size(); ++r)
        index[jt->second[r]] = r;
    std::vector<Row> rows(it->second.size(), Row(jt->second.size(), 0));
    for (std::size_t c = 0; c < it->second.size(); ++c)
        for (const auto& [x, coef] : d1_monomial(m, it->second[c])) {
            auto f = index.find(x);
            if (f == index.end())
                throw std::logic_error("d_1 leaves its block");
            rows[c][f->second] = coef;
        }
    return rank(rows, m.p);
}

// Per-s E_2 ranks, s = 0 .. s_max.
inline std::vector<std::size_t> poincare(const Model& m, int s_max)
{
    std::vector<std::map<Key, std::vector<Exps>>> level;
    for (int s = 0; s <= s_max + 1; ++s)
        level.push_back(blocks(m, s));
    std::vector<std::size_t> out(s_max + 1, 0);
    for (int s = 0; s <= s_max; ++s)
        for (const auto& [key, basis] : level[s]) {
            std::size_t dim = basis.size() - d1_rank(m, key, level[s], level[s + 1]);
            if (s > 0)
                dim -= d1_rank(m, {s - 1, key.t, key.M + 1}, level[s - 1], level[s]);
            out[s] += dim;
        }
    return out;
}

// Reduced E_1 of S(n,k) written out from the generator and d_1 formulas:
// odd p exterior h_{i,j} (k <= i <= s0), polynomial b_{i,j} (k <= i <= s0-n);
// p = 2 polynomial h_{i,j} (k <= i <= n), exterior h_{i,j} (n < i <= 2n).
inline Model s_model(int p, int n, int k)
{
    auto ipow = [](std::int64_t b, int e) {
        std::int64_t r = 1;
        while (e-- > 0)
            r *= b;
        return r;
    };
    const int s0 = std::max((2 * p * n + p - 2) / (2 * (p - 1)), n + k - 1);
    Model m;
    m.p = p;
    m.D = 2 * (ipow(p, n) - 1);
    std::map<std::pair<int, int>, int> h_index;
    const int top = p == 2 ? 2 * n : s0;
    for (int i = k; i <= top; ++i)
        for (int j = 0; j < n; ++j) {
            h_index[{i, j}] = static_cast<int>(m.gens.size());
            Gen g;
            g.s = 1;
            g.t = mod(2 * (ipow(p, i) - 1) * ipow(p, j), m.D);
            g.M = 2 * i - 1;
            g.exterior = !(p == 2 && i <= n);
            m.gens.push_back(g);
        }
    if (p != 2)
        for (int i = k; i <= s0 - n; ++i)
            for (int j = 0; j < n; ++j) {
                Gen g;
                g.s = 2;
                g.t = mod(2 * (ipow(p, i) - 1) * ipow(p, j + 1), m.D);
                g.M = p * (2 * i - 1);
                g.exterior = false;
                m.gens.push_back(g);
            }
    m.d1.assign(m.gens.size(), {});
    for (auto [ij, idx] : h_index) {
        auto [i, j] = ij;
        for (int r = k; r <= i - k; ++r)
            m.d1[idx].push_back({-1, {h_index.at({r, j}), h_index.at({i - r, (j + r) % n})}});
        if (p == 2 && i == 2 * n) {
            int g = h_index.at({n, (j + n - 1) % n});
            m.d1[idx].push_back({1, {g, g}});
        }
    }
    return m;
}

}  // namespace oracle
