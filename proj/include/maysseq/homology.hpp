#pragma once

#include "maysseq/algebra.hpp"
#include "maysseq/fpla.hpp"
#include "maysseq/msq.hpp"

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace maysseq {

// Tridegree (s, t, M); t is the internal-degree class (exact integer for T).
struct BlockKey {
    int s = 0;
    std::int64_t t = 0;
    std::int64_t M = 0;

    auto operator<=>(const BlockKey&) const = default;
};

std::string render_key(const BlockKey& key);

// Monomial bases of the E_1 term split into (s, t, M) blocks, with the d_1
// matrices between them.  Levels are enumerated on first use; lookups are
// safe to call concurrently.
class CochainComplex {
public:
    explicit CochainComplex(PresentationPtr pres);

    const PagePresentation& presentation() const { return *pres_; }
    const PresentationPtr& presentation_ptr() const { return pres_; }
    Fp prime() const { return pres_->algebra->prime(); }

    // All canonical monomials of homological degree s, in canonical order.
    const std::vector<Monomial>& monomials(int s) const;
    std::vector<BlockKey> block_keys(int s) const;
    // Empty when the block has no monomials.
    const std::vector<Monomial>& block_basis(const BlockKey& key) const;
    std::optional<std::size_t> index_in_block(const BlockKey& key, const Monomial& m) const;

    BlockKey key_of(const Monomial& m) const;

    // d_1 : block(key) -> block(s+1, t, M-1); rows index the target basis.
    FpMatrix d1_matrix(const BlockKey& source) const;

    // Coordinates of x in the block basis; throws if x has terms elsewhere.
    FpVector coordinates(const BlockKey& key, const Element& x) const;
    Element element(const BlockKey& key, std::span<const Fp> coords) const;

    // Splits x into its (s, t, M) components.
    std::map<BlockKey, Element> split(const Element& x) const;

private:
    struct Block {
        std::vector<Monomial> basis;
        std::unordered_map<Monomial, std::size_t, MonomialHash> index;
    };
    struct Level {
        std::vector<Monomial> all;
        std::map<std::pair<std::int64_t, std::int64_t>, Block> blocks;
    };
    const Level& level(int s) const;

    PresentationPtr pres_;
    mutable std::mutex mutex_;
    mutable std::map<int, Level> levels_;
};

// Monomials of homological degree s, optionally restricted to one t class.
std::vector<Monomial> monomial_basis(const PagePresentation& pres, int s, std::optional<std::int64_t> t_class = {});

struct E2Block {
    BlockKey key;
    std::size_t e1_dim = 0;
    std::size_t dim = 0;
    // Cocycles (coordinates in the block basis) whose classes form a basis of
    // the block's cohomology.
    std::vector<FpVector> reps;
};

E2Block e2_block(const CochainComplex& complex, const BlockKey& key, bool with_reps = true);

struct PoincarePolynomial {
    std::vector<std::size_t> coefficients;  // c_0 .. c_smax

    std::size_t total() const;
    bool palindromic() const;
    friend bool operator==(const PoincarePolynomial&, const PoincarePolynomial&) = default;
};

enum class Refine { None, T, TM };

class PageTable {
public:
    PageTable(std::shared_ptr<const CochainComplex> complex, int s_max) : complex_(std::move(complex)), s_max_(s_max) {}

    const CochainComplex& complex() const { return *complex_; }
    const std::shared_ptr<const CochainComplex>& complex_ptr() const { return complex_; }
    const PagePresentation& presentation() const { return complex_->presentation(); }
    int s_max() const { return s_max_; }

    // Every E_1 block with s <= s_max, including those with zero cohomology.
    const std::map<BlockKey, E2Block>& blocks() const { return blocks_; }
    std::map<BlockKey, E2Block>& blocks() { return blocks_; }
    const E2Block* find(const BlockKey& key) const;
    std::size_t dim(const BlockKey& key) const;

    PoincarePolynomial poincare() const;
    // (s, t) -> dim, or (s, t, M) -> dim.
    std::map<std::pair<int, std::int64_t>, std::size_t> dims_by_t() const;

    Element representative(const BlockKey& key, std::size_t index) const;
    std::vector<Element> representatives(int s, std::optional<std::int64_t> t_class = {}) const;

    // True when the presentation has no polynomial generators and s_max reaches
    // the top exterior degree, so no nonzero block lies beyond the table.
    bool complete() const;

private:
    std::shared_ptr<const CochainComplex> complex_;
    int s_max_;
    std::map<BlockKey, E2Block> blocks_;
};

PageTable compute_page_table(PresentationPtr pres, int s_max, int threads = 1, bool with_reps = true);

PoincarePolynomial poincare(PresentationPtr pres, int s_max, int threads = 1);

struct ClassCheck {
    bool cocycle = false;
    bool boundary = false;

    bool nonzero() const { return cocycle && !boundary; }
};

// Exact tests: d_1(x) == 0, and x in im(d_1) (componentwise over blocks).
ClassCheck check_class(const CochainComplex& complex, const Element& x);
bool in_image(const CochainComplex& complex, const Element& x);

// Sub-presentation on the generators accepted by keep; throws Error when d_1
// of a kept generator leaves the subset.
PresentationPtr restrict_presentation(const PagePresentation& pres, const std::function<bool(const GenLabel&)>& keep);

struct NamedClass {
    std::string name;
    Element element;
};

// Named classes that live in this
// presentation: g_j, k_j, l_j, l'_j, A for S(3,2); rho_0, rho_1, e_j, g_j for
// S(4,2); rho_{2n} and h_{n,j}^2 for S(n,n) at p = 2.
std::vector<NamedClass> named_classes(const PagePresentation& pres);

struct NamedMatch {
    std::string name;
    std::string rendered;
    BlockKey key;
    ClassCheck check;
};

std::vector<NamedMatch> match_named_classes(const CochainComplex& complex);

}  // namespace maysseq
