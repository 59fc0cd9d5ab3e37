#pragma once

#include "maysseq/diff.hpp"
#include "maysseq/homology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace maysseq {

// Sum of the first indices of all factors, with multiplicity.
std::int64_t sum_of_index(const GradedAlgebra& alg, const Monomial& m);

// Base-p digit sum of t / (2(p-1)); throws NotDivisible otherwise.
std::int64_t sum_of_degree(std::int64_t t, int p);

// True iff M < 2 Sd(t) - s, in which case E_1^{s,t,M} T(n,k) is zero.
bool vanishes_by_filtration(int s, std::int64_t t, std::int64_t M, int p);

struct Certificate {
    bool granted = false;
    std::string reason;  // refusal reason, empty when granted
    std::string lift;    // rendered T(n,k) element
    std::string image;   // rendered Phi image in S(n,k)
    std::int64_t si = 0;
    std::int64_t sd = 0;
    std::int64_t t_lift = 0;
    std::optional<BlockKey> key;  // S(n,k) block of the image
    bool nonzero_in_e2 = false;   // filled in by the prover
    std::string source;           // "lift", "search"
    Element phi_image{nullptr};
};

// Infinite-cocycle criterion on an exterior T(n,k) element: granted iff g is
// a d_1 cocycle, homogeneous, free of b' factors and SI(g) = Sd(deg g).
Certificate certify_infinite_cocycle(const PagePresentation& pres_t, const Element& g, const PagePresentation& pres_s);

struct Obligation {
    BlockKey source;
    std::size_t source_dim = 0;
    int r = 0;
    BlockKey target;
    std::size_t target_dim = 0;
    bool discharged = false;
    std::string reason;  // why it was discharged
};

enum class CollapseStatus { Collapsed, Unresolved };

struct CollapseOptions {
    std::vector<std::string> lifts;     // T(n,k) elements to certify, e.g. "h'[5,0]h'[4,0]"
    std::vector<std::string> asserted;  // S(n,k) cocycles taken as infinite on outside authority
    bool search = true;                 // search for certifiable T lifts automatically
    bool products = true;               // close infinite cycles under products
};

struct AssertedCocycle {
    std::string element;
    BlockKey key;
    bool cocycle = false;
    bool nonzero_in_e2 = false;
};

struct CollapseReport {
    Params params;
    int s_max = 0;
    bool windowed = false;  // polynomial generators: only obligations inside the s window
    std::int64_t m_max = 0;
    CollapseStatus status = CollapseStatus::Unresolved;
    std::vector<Obligation> obligations;  // every obligation, discharged or not
    std::vector<Certificate> certificates;
    std::vector<AssertedCocycle> asserted;
    // (E_1 class, primitive lift) pairs of degree-one infinite cycles
    std::vector<std::pair<std::string, std::string>> primitive_lifts;
    std::vector<DifferentialRule> candidate_rules;

    std::size_t remaining() const;
};

// Filtration-gap collapse prover over an E_2 table refined by (s, t, M).
// Throws IncompleteTable when the table stops short of nonzero targets of an
// exterior presentation.
CollapseReport prove_collapse(const PageTable& table, const CollapseOptions& options = {});

const char* status_name(CollapseStatus s);

}  // namespace maysseq
