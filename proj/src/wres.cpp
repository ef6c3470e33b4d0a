#include "eqc/wres.hpp"

#include <algorithm>

namespace eqc {

WChain w_normalize(WChain w, const PrimeField& f) {
    std::sort(w.begin(), w.end(), [](const WTerm& x, const WTerm& y) {
        if (x.k != y.k) return x.k < y.k;
        return x.a < y.a;
    });
    WChain out;
    for (const WTerm& t : w) {
        uint8_t c = f.reduce(t.c);
        if (c == 0) continue;
        if (!out.empty() && out.back().k == t.k && out.back().a == t.a) {
            out.back().c = f.add(out.back().c, c);
            if (out.back().c == 0) out.pop_back();
        } else {
            out.push_back(WTerm{c, t.a, t.k});
        }
    }
    return out;
}

WChain w_alpha_mul(const WChain& w, int e, const PrimeField& f) {
    WChain out;
    out.reserve(w.size());
    int p = f.p();
    int shift = ((e % p) + p) % p;
    for (const WTerm& t : w) out.push_back(WTerm{t.c, static_cast<uint8_t>((t.a + shift) % p), t.k});
    return w_normalize(std::move(out), f);
}

WChain w_diff(const WChain& w, const PrimeField& f) {
    WChain out;
    int p = f.p();
    for (const WTerm& t : w) {
        if (t.k == 0) continue;
        if (t.k % 2 == 1) {
            // d(alpha^a e_{2i+1}) = alpha^{a+1} e_{2i} - alpha^a e_{2i}
            out.push_back(WTerm{t.c, static_cast<uint8_t>((t.a + 1) % p), t.k - 1});
            out.push_back(WTerm{f.neg(t.c), t.a, t.k - 1});
        } else {
            // d(alpha^a e_{2i}) = (1 + alpha + ... + alpha^{p-1}) e_{2i-1}
            for (int b = 0; b < p; ++b)
                out.push_back(WTerm{t.c, static_cast<uint8_t>(b), t.k - 1});
        }
    }
    return w_normalize(std::move(out), f);
}

uint8_t w_aug(const WChain& w, const PrimeField& f) {
    uint8_t s = 0;
    for (const WTerm& t : w)
        if (t.k == 0) s = f.add(s, t.c);
    return s;
}

std::vector<std::tuple<uint8_t, WTerm, WTerm>> w_coproduct(const WTerm& t,
                                                           const PrimeField& f) {
    std::vector<std::tuple<uint8_t, WTerm, WTerm>> out;
    int p = f.p();
    auto emit = [&](uint8_t c, int al, int kl, int ar, int kr) {
        // Extend alpha-diagonally: psi(alpha^a e) = (alpha^a x alpha^a) psi(e).
        out.emplace_back(c, WTerm{1, static_cast<uint8_t>((al + t.a) % p), kl},
                         WTerm{1, static_cast<uint8_t>((ar + t.a) % p), kr});
    };
    if (t.k % 2 == 1) {
        int i = (t.k - 1) / 2;
        for (int j = 0; j <= i; ++j) {
            int k = i - j;
            emit(t.c, 0, 2 * j, 0, 2 * k + 1);
            emit(t.c, 0, 2 * j + 1, 1, 2 * k);
        }
    } else {
        int i = t.k / 2;
        for (int j = 0; j <= i; ++j) emit(t.c, 0, 2 * j, 0, 2 * (i - j));
        for (int j = 0; j + 1 <= i; ++j) {
            int k = i - 1 - j;
            for (int r = 0; r < p; ++r)
                for (int s = r + 1; s < p; ++s)
                    emit(t.c, r, 2 * j + 1, s, 2 * k + 1);
        }
    }
    return out;
}

WChain w_contraction(const WChain& w, const PrimeField& f) {
    WChain out;
    int p = f.p();
    for (const WTerm& t : w) {
        if (t.k % 2 == 0) {
            for (int b = 0; b < t.a; ++b)
                out.push_back(WTerm{t.c, static_cast<uint8_t>(b), t.k + 1});
        } else {
            if (t.a == p - 1) out.push_back(WTerm{t.c, 0, t.k + 1});
        }
    }
    return w_normalize(std::move(out), f);
}

}  // namespace eqc
