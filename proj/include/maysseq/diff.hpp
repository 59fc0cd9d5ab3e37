#pragma once

#include "maysseq/algebra.hpp"
#include "maysseq/msq.hpp"

#include <optional>

namespace maysseq {

// Catalog image of d_1 on one generator of alg, in the given flavor:
//   d_1(h_{i,j}) = -sum_{k <= r <= i-k} h_{r,j} h_{i-r,j+r}
//   d_1(h_{2n,j}) gains + h_{n,j+n-1}^2 at p = 2
//   d_1(b_{i,j}) = 0
// Second indices are taken mod n for flavor S and exactly for flavor T.
// The cobar formula d(b_{i,j}) = sum_{0<r<i} (b_{r,j} t_{i-r}^{p^{r+j+1}} -
// t_r^{p^{j+1}} b_{i-r,r+j}) has no filtration-one part for the b's in the
// reduced range, which is where d_1(b) = 0 comes from.
Element d1_catalog_image(const AlgebraPtr& alg, const Params& params, Flavor flavor, const GenLabel& gen);

// d_1 on h_{i,j} in the unreduced E_1 term (i <= s0 + n):
//   the catalog sum for i <= s0, and b_{i-n, j+n-1} for i > s0.
Element unreduced_d1_image(const AlgebraPtr& unreduced, const Params& params, int i, int j);

Element d1_generator(const PagePresentation& pres, GenId gen);
Element d1_monomial(const PagePresentation& pres, const Monomial& m);
// Leibniz extension; throws NonHomogeneous if x mixes homological degrees.
Element d1_element(const PagePresentation& pres, const Element& x);

struct DifferentialRule {
    GenLabel source;
    Element image;
    std::optional<int> page;  // nullopt: page not determined
};

// Candidate first nontrivial differential of b_{i,j} (i >= 2k):
//   b_{i-k,j} h_{k,i-k+j+1} - h_{k,j+1} b_{i-k,j+k}
// expressed in the unreduced E_1 alphabet.  Returns nullopt for i < 2k.
std::optional<DifferentialRule> candidate_b_rule(const Params& params, int i, int j);

}  // namespace maysseq
