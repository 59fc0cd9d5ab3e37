#pragma once

#include "maysseq/fp.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maysseq {

enum class GenKind { H, B };
enum class Parity { Exterior, Polynomial };

// Identifies a generator h_{i,j}, b_{i,j} (or the primed h'_{i,j}, b'_{i,j} of
// the auxiliary algebra).  Ordering is the global canonical generator order:
// H before B, then i ascending, then j ascending.
struct GenLabel {
    GenKind kind = GenKind::H;
    int i = 0;
    int j = 0;
    bool primed = false;

    auto operator<=>(const GenLabel&) const = default;
};

std::string render_label(const GenLabel& label);

struct GeneratorSpec {
    GenLabel label;
    int s = 1;                // homological degree: 1 for H, 2 for B
    std::int64_t t = 0;       // internal degree, reduced mod the algebra's modulus (if any)
    std::int64_t t_lift = 0;  // exact integer internal degree
    std::int64_t M = 0;       // May filtration
    Parity parity = Parity::Exterior;
};

using GenId = std::uint32_t;

// A graded-commutative free algebra on exterior and polynomial generators.
class GradedAlgebra {
public:
    // degree_modulus == 0 keeps internal degrees as exact integers.
    GradedAlgebra(Fp p, std::int64_t degree_modulus, std::vector<GeneratorSpec> generators);

    Fp prime() const { return p_; }
    std::int64_t degree_modulus() const { return modulus_; }
    std::size_t size() const { return gens_.size(); }
    const std::vector<GeneratorSpec>& generators() const { return gens_; }
    const GeneratorSpec& generator(GenId id) const { return gens_.at(id); }

    std::optional<GenId> find(const GenLabel& label) const;
    GenId id_of(const GenLabel& label) const;  // throws UnknownGenerator

    // Koszul parity of a single generator (odd homological degree).
    bool is_odd(GenId id) const { return gens_[id].s % 2 != 0; }
    bool is_exterior(GenId id) const { return gens_[id].parity == Parity::Exterior; }

    std::int64_t reduce_degree(std::int64_t t) const;

private:
    Fp p_;
    std::int64_t modulus_;
    std::vector<GeneratorSpec> gens_;
    std::map<GenLabel, GenId> index_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

struct Factor {
    GenId gen = 0;
    std::uint32_t exp = 1;

    auto operator<=>(const Factor&) const = default;
};

// Canonical monomial: factors sorted by generator id, no zero exponents,
// exterior generators with exponent 1.
class Monomial {
public:
    Monomial() = default;

    static Monomial from_sorted(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    std::size_t length() const { return factors_.size(); }
    std::uint32_t exponent(GenId g) const;

    auto operator<=>(const Monomial&) const = default;

private:
    std::vector<Factor> factors_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

struct Degrees {
    int s = 0;
    std::int64_t t_class = 0;
    std::int64_t t_lift = 0;
    std::int64_t M = 0;

    friend bool operator==(const Degrees&, const Degrees&) = default;
};

Degrees degrees(const GradedAlgebra& alg, const Monomial& m);

// Sorts a word of generator powers into canonical order.  Each transposition of
// two odd factors contributes -1.  Returns nullopt when the word is zero
// (a repeated exterior generator).
std::optional<std::pair<Monomial, Fp>> normalize(const GradedAlgebra& alg, std::span<const Factor> word);

// Product of canonical monomials, with its Koszul sign.
std::optional<std::pair<Monomial, Fp>> multiply(const GradedAlgebra& alg, const Monomial& a, const Monomial& b);

std::string render(const GradedAlgebra& alg, const Monomial& m);

// Finite F_p-linear combination of monomials; zero coefficients never stored.
class Element {
public:
    using Terms = std::map<Monomial, Fp>;

    explicit Element(AlgebraPtr alg) : alg_(std::move(alg)) {}

    static Element unit(AlgebraPtr alg);
    static Element generator(AlgebraPtr alg, const GenLabel& label);
    static Element monomial(AlgebraPtr alg, Monomial m, Fp coef = 1);

    const AlgebraPtr& algebra() const { return alg_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Fp coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, Fp coef);

    Element& operator+=(const Element& other);
    Element& operator-=(const Element& other);
    Element& operator*=(Fp scalar);

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Element a, Fp scalar) { return a *= scalar; }
    friend Element operator*(const Element& a, const Element& b);
    Element operator-() const;

    friend bool operator==(const Element& a, const Element& b);

    // Homological degree when all terms agree; nullopt for zero or mixed.
    std::optional<int> homological_degree() const;

private:
    void require_same(const Element& other) const;

    AlgebraPtr alg_;
    Terms terms_;
};

std::string render(const Element& x);

// Parses text such as "h[4,0]h[2,0] - 2*h[3,1]^2 + b'[2,1]" into an element of
// alg.  Factors may appear in any order; they are normalized with signs.
Element parse_element(const AlgebraPtr& alg, std::string_view text);

}  // namespace maysseq
