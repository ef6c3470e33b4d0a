#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqc {

// Arithmetic in the prime field F_p for a small runtime prime p.
// Elements are stored as canonical residues 0..p-1 in uint8_t.
class PrimeField {
  public:
    explicit PrimeField(int p) : p_(p) {
        if (p < 2 || p > 127 || !is_prime(p))
            throw std::invalid_argument("PrimeField: p must be a prime in [2,127], got " +
                                        std::to_string(p));
        inv_.assign(p, 0);
        for (int a = 1; a < p; ++a)
            for (int b = 1; b < p; ++b)
                if (a * b % p == 1) {
                    inv_[a] = static_cast<uint8_t>(b);
                    break;
                }
    }

    int p() const { return p_; }

    uint8_t reduce(long long v) const {
        long long r = v % p_;
        if (r < 0)
            r += p_;
        return static_cast<uint8_t>(r);
    }
    uint8_t add(uint8_t a, uint8_t b) const {
        int s = a + b;
        return static_cast<uint8_t>(s >= p_ ? s - p_ : s);
    }
    uint8_t sub(uint8_t a, uint8_t b) const {
        int s = a - b;
        return static_cast<uint8_t>(s < 0 ? s + p_ : s);
    }
    uint8_t neg(uint8_t a) const { return a == 0 ? 0 : static_cast<uint8_t>(p_ - a); }
    uint8_t mul(uint8_t a, uint8_t b) const { return static_cast<uint8_t>(a * b % p_); }
    uint8_t inv(uint8_t a) const {
        if (a == 0)
            throw std::domain_error("PrimeField: inverse of zero");
        return inv_[a];
    }
    // a^e for e >= 0.
    uint8_t pow(uint8_t a, long long e) const {
        uint8_t r = 1, base = a;
        while (e > 0) {
            if (e & 1)
                r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    // (-1)^e as a field element.
    uint8_t sign(long long e) const { return (e % 2 == 0) ? 1 : neg(1); }

    static bool is_prime(int n) {
        if (n < 2)
            return false;
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    }

  private:
    int p_;
    std::vector<uint8_t> inv_;
};

using FpVec = std::vector<uint8_t>;

}  // namespace eqc
