#pragma once

#include <cstdint>

namespace maysseq {

using Fp = std::uint32_t;

bool is_prime(std::int64_t p);

// Throws InvalidParams unless p is a prime small enough for 64-bit products.
void require_prime(std::int64_t p);

inline Fp fp_reduce(std::int64_t x, Fp p)
{
    std::int64_t r = x % static_cast<std::int64_t>(p);
    return static_cast<Fp>(r < 0 ? r + p : r);
}

inline Fp fp_add(Fp a, Fp b, Fp p) { return static_cast<Fp>((std::uint64_t(a) + b) % p); }
inline Fp fp_sub(Fp a, Fp b, Fp p) { return a >= b ? a - b : a + p - b; }
inline Fp fp_mul(Fp a, Fp b, Fp p) { return static_cast<Fp>((std::uint64_t(a) * b) % p); }
inline Fp fp_neg(Fp a, Fp p) { return a == 0 ? 0 : p - a; }

Fp fp_pow(Fp a, std::uint64_t e, Fp p);
Fp fp_inv(Fp a, Fp p);

// Integer helpers that throw on overflow.
std::int64_t checked_pow(std::int64_t base, int exp);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

}  // namespace maysseq
