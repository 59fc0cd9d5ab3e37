#pragma once

#include "maysseq/homology.hpp"
#include "maysseq/msq.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace maysseq {

// (C(p,m)/p) mod p for m = 1 .. p-1.
std::vector<Fp> b_coefficients(int p);

// Monomial in t_k, t_{k+1}, ...: exps[l] is the exponent of t_l.  Exponents
// live in [0, p^n - 1] because t^{p^n} = t.
using TMono = std::vector<std::int64_t>;
using TPoly = std::map<TMono, Fp>;
// A tensor word [a_1 | ... | a_s]; all words of one TensorPoly share s.
using TensorWord = std::vector<TMono>;
using TensorPoly = std::map<TensorWord, Fp>;

// Symbolic S(n,k) with the coproduct of t_s written out.
class HopfModel {
public:
    explicit HopfModel(const Params& params);

    const Params& params() const { return params_; }
    std::int64_t exponent_modulus() const { return q_; }

    TMono unit() const { return {}; }
    TMono variable(int l, std::int64_t e = 1) const;
    TMono multiply(const TMono& a, const TMono& b) const;
    // x -> x^{p^a}
    TMono frobenius(const TMono& m, int a) const;
    bool is_unit(const TMono& m) const;

    std::int64_t filtration(const TMono& m) const;
    std::int64_t filtration(const TensorWord& w) const;
    std::int64_t degree(const TMono& m) const;  // mod 2(p^n - 1)

    // Full coproduct of a monomial; words of length 2.
    TensorPoly coproduct(const TMono& m) const;
    // Coproduct with the words carrying a unit factor removed.
    TensorPoly reduced_coproduct(const TMono& m) const;

    std::string render(const TMono& m) const;
    std::string render(const TensorPoly& x) const;

private:
    std::int64_t reduce_exp(std::int64_t e) const;
    const TensorPoly& delta_t(int l) const;

    Params params_;
    std::int64_t q_;
    mutable std::map<int, TensorPoly> delta_cache_;
};

// Delta(t_s) - t_s (x) 1 - 1 (x) t_s.
TensorPoly reduced_coproduct(const Params& params, int s);

struct CoassociativityCheck {
    int s = 0;
    bool ok = false;
    std::size_t terms = 0;  // words in (Delta (x) 1) Delta(t_s)
    std::string mismatch;   // first differing word, if any
};

// (Delta (x) 1) Delta(t_s) == (1 (x) Delta) Delta(t_s) for k <= s <= s_max
// (default s0 + n).
std::vector<CoassociativityCheck> check_coassociativity(const Params& params, std::optional<int> s_max = {});

struct ExtractedD1 {
    int s = 0;
    int j = 0;
    std::int64_t filtration = 0;      // M(t_s) - 1
    std::int64_t max_filtration = 0;  // largest filtration among reduced-coproduct words
    Element extracted{nullptr};       // filtration M(t_s) - 1 part, in h/b symbols
    Element catalog{nullptr};         // rule-catalog image of h_{s,j}
    std::optional<Fp> sign;           // extracted = sign * catalog
    bool translated = true;           // every word had an h/b reading
    std::string note;
};

// Reads d_1(h_{s,j}) off the filtered coproduct of t_s^{p^j}; k <= s <= s0 + n.
ExtractedD1 extract_d1(const Params& params, int s, int j = 0);

struct D1Comparison {
    std::vector<ExtractedD1> rows;
    std::optional<Fp> sign;  // common sign, when one exists
    bool ok = false;
};

D1Comparison compare_d1(const Params& params);

struct ExtOracleResult {
    int p = 0;
    std::vector<std::size_t> dims;                         // dim Ext^s, s = 0 .. s_max
    std::map<std::pair<int, int>, std::size_t> by_degree;  // (s, t / |x|) -> dim
    bool b_representative = false;  // sum c_m [x^m | x^{p-m}] is a nonzero class
};

// Cobar cohomology of F_p[x]/(x^p) with x primitive, by brute force.
ExtOracleResult ext_truncated_oracle(int p, int s_max);

// Combinations of the degree-one generators in one (1, t, M) block of an S
// presentation that lift to primitives of S(n,k): sum c_j t_i^{p^j} plus
// corrections of lower filtration.  A primitive is a cobar cocycle, so its
// leading term is an infinite cycle.  Only t_l with l < n + 2k are used,
// the range where the closed-form coproduct is coassociative.
struct PrimitiveLift {
    Element leading{nullptr};
    TPoly lift;
};

std::vector<PrimitiveLift> primitive_lifts(const PagePresentation& pres, const BlockKey& key);

std::string render(const HopfModel& model, const TPoly& x);

}  // namespace maysseq

namespace maysseq {

// Everything the oracle can check for one parameter set.
struct VerifyReport {
    Params params;
    std::vector<CoassociativityCheck> coassociativity;
    D1Comparison d1;
    ExtOracleResult ext;

    bool coassociative() const;
    bool ext_ok() const;
    bool ok() const { return coassociative() && d1.ok && ext_ok(); }
};

VerifyReport run_verify(const Params& params, int ext_s_max = 5);

}  // namespace maysseq
