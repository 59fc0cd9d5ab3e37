#include "maysseq/fp.hpp"

#include "maysseq/error.hpp"

#include <string>

namespace maysseq {

bool is_prime(std::int64_t p)
{
    if (p < 2)
        return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

void require_prime(std::int64_t p)
{
    if (!is_prime(p))
        throw InvalidParams("modulus " + std::to_string(p) + " is not prime");
    if (p >= (std::int64_t(1) << 31))
        throw InvalidParams("prime " + std::to_string(p) + " is too large");
}

Fp fp_pow(Fp a, std::uint64_t e, Fp p)
{
    Fp result = 1 % p;
    while (e) {
        if (e & 1)
            result = fp_mul(result, a, p);
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    return result;
}

Fp fp_inv(Fp a, Fp p)
{
    if (a % p == 0)
        throw Error("inverse of zero in F_" + std::to_string(p));
    return fp_pow(a, p - 2, p);
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error("integer overflow in degree arithmetic");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw Error("integer overflow in degree arithmetic");
    return r;
}

std::int64_t checked_pow(std::int64_t base, int exp)
{
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i)
        r = checked_mul(r, base);
    return r;
}

}  // namespace maysseq
