#include "maysseq/algebra.hpp"

#include "maysseq/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace maysseq {

std::string render_label(const GenLabel& label)
{
    std::ostringstream os;
    os << (label.kind == GenKind::H ? 'h' : 'b') << (label.primed ? "'" : "") << '[' << label.i << ',' << label.j
       << ']';
    return os.str();
}

GradedAlgebra::GradedAlgebra(Fp p, std::int64_t degree_modulus, std::vector<GeneratorSpec> generators)
    : p_(p), modulus_(degree_modulus), gens_(std::move(generators))
{
    require_prime(p);
    if (modulus_ < 0)
        throw Error("negative degree modulus");
    std::sort(gens_.begin(), gens_.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
    for (GenId id = 0; id < gens_.size(); ++id) {
        if (!index_.emplace(gens_[id].label, id).second)
            throw Error("duplicate generator " + render_label(gens_[id].label));
        gens_[id].t = reduce_degree(gens_[id].t);
    }
}

std::optional<GenId> GradedAlgebra::find(const GenLabel& label) const
{
    auto it = index_.find(label);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

GenId GradedAlgebra::id_of(const GenLabel& label) const
{
    auto id = find(label);
    if (!id)
        throw UnknownGenerator("unknown generator " + render_label(label));
    return *id;
}

std::int64_t GradedAlgebra::reduce_degree(std::int64_t t) const
{
    if (modulus_ == 0)
        return t;
    std::int64_t r = t % modulus_;
    return r < 0 ? r + modulus_ : r;
}

Monomial Monomial::from_sorted(std::vector<Factor> factors)
{
    Monomial m;
    m.factors_ = std::move(factors);
    return m;
}

std::uint32_t Monomial::exponent(GenId g) const
{
    for (const auto& f : factors_)
        if (f.gen == g)
            return f.exp;
    return 0;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept
{
    std::size_t h = 1469598103934665603ull;
    for (const auto& f : m.factors()) {
        h ^= (std::size_t(f.gen) << 20) ^ f.exp;
        h *= 1099511628211ull;
    }
    return h;
}

Degrees degrees(const GradedAlgebra& alg, const Monomial& m)
{
    Degrees d;
    for (const auto& f : m.factors()) {
        const auto& g = alg.generator(f.gen);
        d.s += g.s * static_cast<int>(f.exp);
        d.t_lift = checked_add(d.t_lift, checked_mul(g.t_lift, f.exp));
        d.t_class = alg.reduce_degree(checked_add(d.t_class, checked_mul(g.t, f.exp)));
        d.M += g.M * static_cast<std::int64_t>(f.exp);
    }
    return d;
}

namespace {

bool factor_odd(const GradedAlgebra& alg, const Factor& f)
{
    return alg.is_odd(f.gen) && (f.exp % 2 != 0);
}

}  // namespace

std::optional<std::pair<Monomial, Fp>> normalize(const GradedAlgebra& alg, std::span<const Factor> word)
{
    const Fp p = alg.prime();
    std::vector<Factor> w;
    w.reserve(word.size());
    for (const auto& f : word) {
        if (f.gen >= alg.size())
            throw UnknownGenerator("generator id " + std::to_string(f.gen) + " out of range");
        if (f.exp == 0)
            continue;
        w.push_back(f);
    }
    bool negative = false;
    // insertion sort; equal generators are never swapped past each other
    for (std::size_t i = 1; i < w.size(); ++i) {
        for (std::size_t j = i; j > 0 && w[j - 1].gen > w[j].gen; --j) {
            if (factor_odd(alg, w[j - 1]) && factor_odd(alg, w[j]))
                negative = !negative;
            std::swap(w[j - 1], w[j]);
        }
    }
    std::vector<Factor> merged;
    merged.reserve(w.size());
    for (const auto& f : w) {
        if (!merged.empty() && merged.back().gen == f.gen)
            merged.back().exp += f.exp;
        else
            merged.push_back(f);
        if (alg.is_exterior(f.gen) && merged.back().exp > 1)
            return std::nullopt;
    }
    Fp sign = negative ? fp_neg(1 % p, p) : 1 % p;
    return std::make_pair(Monomial::from_sorted(std::move(merged)), sign);
}

std::optional<std::pair<Monomial, Fp>> multiply(const GradedAlgebra& alg, const Monomial& a, const Monomial& b)
{
    const Fp p = alg.prime();
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    // sign: each odd factor of b passes every odd factor of a with a larger id
    bool negative = false;
    std::size_t odd_a_above = 0;
    for (const auto& x : fa)
        if (factor_odd(alg, x))
            ++odd_a_above;
    std::vector<Factor> out;
    out.reserve(fa.size() + fb.size());
    std::size_t i = 0, j = 0;
    while (i < fa.size() || j < fb.size()) {
        if (j == fb.size() || (i < fa.size() && fa[i].gen <= fb[j].gen)) {
            if (j < fb.size() && fa[i].gen == fb[j].gen) {
                if (alg.is_exterior(fa[i].gen))
                    return std::nullopt;
                // b's factor passes the odd a-factors strictly above it
                std::size_t above = odd_a_above - (factor_odd(alg, fa[i]) ? 1 : 0);
                if (factor_odd(alg, fb[j]) && above % 2)
                    negative = !negative;
                out.push_back({fa[i].gen, fa[i].exp + fb[j].exp});
                if (factor_odd(alg, fa[i]))
                    --odd_a_above;
                ++i;
                ++j;
                continue;
            }
            if (factor_odd(alg, fa[i]))
                --odd_a_above;
            out.push_back(fa[i++]);
        }
        else {
            if (factor_odd(alg, fb[j]) && odd_a_above % 2)
                negative = !negative;
            out.push_back(fb[j++]);
        }
    }
    Fp sign = negative ? fp_neg(1 % p, p) : 1 % p;
    return std::make_pair(Monomial::from_sorted(std::move(out)), sign);
}

std::string render(const GradedAlgebra& alg, const Monomial& m)
{
    if (m.is_unit())
        return "1";
    std::string out;
    for (const auto& f : m.factors()) {
        out += render_label(alg.generator(f.gen).label);
        if (f.exp != 1)
            out += "^" + std::to_string(f.exp);
    }
    return out;
}

Element Element::unit(AlgebraPtr alg)
{
    Element e(std::move(alg));
    e.terms_.emplace(Monomial{}, 1 % e.alg_->prime());
    return e;
}

Element Element::generator(AlgebraPtr alg, const GenLabel& label)
{
    GenId id = alg->id_of(label);
    return monomial(std::move(alg), Monomial::from_sorted({{id, 1}}));
}

Element Element::monomial(AlgebraPtr alg, Monomial m, Fp coef)
{
    Element e(std::move(alg));
    e.add_term(m, coef);
    return e;
}

Fp Element::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

void Element::add_term(const Monomial& m, Fp coef)
{
    const Fp p = alg_->prime();
    coef %= p;
    if (!coef)
        return;
    auto [it, inserted] = terms_.emplace(m, coef);
    if (!inserted) {
        it->second = fp_add(it->second, coef, p);
        if (!it->second)
            terms_.erase(it);
    }
}

void Element::require_same(const Element& other) const
{
    if (alg_ != other.alg_)
        throw MixedPresentation("elements belong to different presentations");
}

Element& Element::operator+=(const Element& other)
{
    require_same(other);
    for (const auto& [m, c] : other.terms_)
        add_term(m, c);
    return *this;
}

Element& Element::operator-=(const Element& other)
{
    require_same(other);
    const Fp p = alg_->prime();
    for (const auto& [m, c] : other.terms_)
        add_term(m, fp_neg(c, p));
    return *this;
}

Element& Element::operator*=(Fp scalar)
{
    const Fp p = alg_->prime();
    scalar %= p;
    if (!scalar) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_)
        c = fp_mul(c, scalar, p);
    return *this;
}

Element Element::operator-() const
{
    Element e = *this;
    e *= fp_neg(1 % alg_->prime(), alg_->prime());
    return e;
}

Element operator*(const Element& a, const Element& b)
{
    a.require_same(b);
    const Fp p = a.alg_->prime();
    Element out(a.alg_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            auto prod = multiply(*a.alg_, ma, mb);
            if (prod)
                out.add_term(prod->first, fp_mul(fp_mul(ca, cb, p), prod->second, p));
        }
    return out;
}

bool operator==(const Element& a, const Element& b)
{
    return a.alg_ == b.alg_ && a.terms_ == b.terms_;
}

std::optional<int> Element::homological_degree() const
{
    std::optional<int> s;
    for (const auto& [m, c] : terms_) {
        int sm = degrees(*alg_, m).s;
        if (s && *s != sm)
            return std::nullopt;
        s = sm;
    }
    return s;
}

std::string render(const Element& x)
{
    if (x.is_zero())
        return "0";
    const Fp p = x.algebra()->prime();
    std::string out;
    bool first = true;
    for (const auto& [m, c] : x.terms()) {
        bool neg = p > 2 && c == p - 1;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (!neg && c != 1)
            out += std::to_string(c) + "*";
        out += render(*x.algebra(), m);
        first = false;
    }
    return out;
}

namespace {

class Parser {
public:
    Parser(const AlgebraPtr& alg, std::string_view text) : alg_(alg), text_(text) {}

    Element parse()
    {
        Element result(alg_);
        skip_ws();
        if (pos_ == text_.size())
            throw ParseError("empty element text");
        bool first = true;
        while (true) {
            skip_ws();
            if (pos_ == text_.size())
                break;
            bool negative = false;
            if (peek() == '+' || peek() == '-') {
                negative = peek() == '-';
                ++pos_;
            }
            else if (!first) {
                fail("expected '+' or '-'");
            }
            skip_ws();
            result += parse_term(negative);
            first = false;
        }
        return result;
    }

private:
    Element parse_term(bool negative)
    {
        const Fp p = alg_->prime();
        std::int64_t coef = 1;
        bool have_coef = false;
        // numeric factors, e.g. "2*1" for a multiple of the unit
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
            coef = checked_mul(coef, parse_int() % p);
            have_coef = true;
            skip_ws();
            if (pos_ < text_.size() && peek() == '*') {
                ++pos_;
                skip_ws();
            }
        }
        std::vector<Factor> word;
        while (pos_ < text_.size() && (peek() == 'h' || peek() == 'b'))
            word.push_back(parse_factor());
        if (word.empty() && !have_coef)
            fail("expected a term");
        Element term(alg_);
        auto norm = normalize(*alg_, word);
        if (norm)
            term.add_term(norm->first, fp_mul(fp_reduce(negative ? -coef : coef, p), norm->second, p));
        return term;
    }

    Factor parse_factor()
    {
        GenLabel label;
        label.kind = peek() == 'h' ? GenKind::H : GenKind::B;
        ++pos_;
        if (pos_ < text_.size() && peek() == '\'') {
            label.primed = true;
            ++pos_;
        }
        expect('[');
        label.i = static_cast<int>(parse_signed());
        expect(',');
        label.j = static_cast<int>(parse_signed());
        expect(']');
        std::uint32_t exp = 1;
        if (pos_ < text_.size() && peek() == '^') {
            ++pos_;
            exp = static_cast<std::uint32_t>(parse_int());
        }
        skip_ws();
        return {alg_->id_of(label), exp};
    }

    std::int64_t parse_signed()
    {
        skip_ws();
        bool neg = false;
        if (pos_ < text_.size() && peek() == '-') {
            neg = true;
            ++pos_;
        }
        std::int64_t v = parse_int();
        skip_ws();
        return neg ? -v : v;
    }

    std::int64_t parse_int()
    {
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected an integer");
        std::int64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek())))
            v = checked_add(checked_mul(v, 10), peek() - '0'), ++pos_;
        return v;
    }

    void expect(char c)
    {
        skip_ws();
        if (pos_ >= text_.size() || peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }

    char peek() const { return text_[pos_]; }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
    }

    const AlgebraPtr& alg_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(const AlgebraPtr& alg, std::string_view text)
{
    return Parser(alg, text).parse();
}

}  // namespace maysseq
