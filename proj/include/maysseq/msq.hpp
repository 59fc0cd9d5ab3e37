#pragma once

#include "maysseq/algebra.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace maysseq {

// (p, n, k) with p prime and 1 <= k <= n.
struct Params {
    int p = 0;
    int n = 0;
    int k = 0;

    static Params make(int p, int n, int k);  // throws InvalidParams

    // Internal-degree modulus 2(p^n - 1).
    std::int64_t degree_modulus() const;

    friend bool operator==(const Params&, const Params&) = default;
};

enum class Flavor { S, T };

const char* flavor_name(Flavor f);

int compute_s0(const Params& params);

// M(t_s^{p^j}); independent of j.  Requires s >= k.
std::int64_t may_filtration_ts(const Params& params, int s, int j = 0);

// M of t_{s_1}^{e_1} ... t_{s_m}^{e_m}: each exponent expanded in base p.
std::int64_t may_filtration_monomial(const Params& params, const std::map<int, std::int64_t>& exponents);

// Internal degree of a generator.  For flavor S the result is reduced mod
// 2(p^n - 1); for flavor T it is the exact integer.
std::int64_t internal_degree(const Params& params, Flavor flavor, const GenLabel& gen);
// Exact integer degree 2(p^i - 1) p^j (h) or 2(p^i - 1) p^{j+1} (b).
std::int64_t integer_degree(int p, const GenLabel& gen);

struct PagePresentation {
    Params params;
    Flavor flavor = Flavor::S;
    int s0 = 0;
    int j_max = -1;  // window parameter, flavor T only
    AlgebraPtr algebra;
    std::vector<Element> d1_rules;  // indexed by GenId

    const Element& d1_rule(GenId id) const { return d1_rules.at(id); }
};

using PresentationPtr = std::shared_ptr<const PagePresentation>;

// Flavor S: the reduced E_1 term
//   odd p:  E[h_{i,j} | k <= i <= s0] (x) P[b_{i,j} | k <= i <= s0 - n],  j in Z/n
//   p = 2:  P[h_{i,j} | k <= i <= n] (x) E[h_{i,j} | n < i <= 2n]
// Flavor T (odd p only): h'_{i,j}, b'_{i,j} for k <= i <= n+k-1 over the window
// of generators whose top base-p digit position is below j_max + n + k - 1,
// i.e. h'_{i,j} with i + j <= j_max + n + k - 1 and b'_{i,j} with
// i + j <= j_max + n + k - 2.  Every h'_{i,j} with j <= j_max is included and
// the window is closed under d_1.
PresentationPtr build_presentation(const Params& params, Flavor flavor, std::optional<int> j_max = std::nullopt);

// Full (unreduced) E_1 alphabet with h_{i,j}, b_{i,j} for k <= i <= i_max,
// j in Z/n.  At p = 2 every h is polynomial and b_{i,j} is h_{i,j}^2, so no b
// generators are emitted.  Used for symbolic rules that reach outside the
// reduced presentation.
AlgebraPtr unreduced_e1_algebra(const Params& params, int i_max);

// b_{i,j} in an unreduced algebra (h_{i,j}^2 at p = 2).
Element b_class(const AlgebraPtr& alg, const Params& params, int i, int j);

// Phi: h'_{i,j} -> h_{i, j mod n}, b'_{i,j} -> b_{i, j mod n}.
// Throws UnknownGenerator when the image generator is absent from the
// reduced S presentation (b'_{i,j} with i > s0 - n).
Element reduction_map_phi(const PagePresentation& source, const Element& x, const PagePresentation& target);

}  // namespace maysseq
