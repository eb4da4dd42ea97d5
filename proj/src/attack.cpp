#include "iqp/attack.hpp"

#include <cmath>
#include <stdexcept>

#include "iqp/codes.hpp"
#include "iqp/parallel.hpp"
#include "iqp/rng.hpp"

namespace iqp {

namespace {

BitVector random_vector(Rng &rng, std::size_t n) {
    BitVector v(n);
    auto w = v.words();
    for (auto &x : w) {
        x = rng.next();
    }
    if (n % 64 != 0) {
        w.back() &= (uint64_t{1} << (n % 64)) - 1;
    }
    return v;
}

}  // namespace

int f_eval(const XProgram &p, const BitVector &a) {
    long long k = static_cast<long long>(p.elements());
    long long odd = static_cast<long long>(p.matrix.mul(a).popcount());
    long long v = (k - 2 * odd) % 16;
    return static_cast<int>(v < 0 ? v + 16 : v);
}

int second_derivative(const XProgram &p, const BitVector &d, const BitVector &e, const BitVector &a) {
    int v = f_eval(p, a) - f_eval(p, a ^ e) - f_eval(p, a ^ d) + f_eval(p, a ^ d ^ e);
    v %= 16;
    return v < 0 ? v + 16 : v;
}

BitVector y_vector(const XProgram &p, const BitVector &d, const BitVector &e) {
    BitVector both = p.matrix.mul(d) & p.matrix.mul(e);
    BitVector y(p.qubits());
    for (std::size_t r = 0; r < p.elements(); r++) {
        if (both.get(r)) {
            auto src = p.matrix.row_words(r);
            auto dst = y.words();
            for (std::size_t w = 0; w < dst.size(); w++) {
                dst[w] ^= src[w];
            }
        }
    }
    return y;
}

std::vector<BitVector> y_sample(const XProgram &p, std::size_t count, uint64_t seed, unsigned threads) {
    std::vector<BitVector> out(count);
    Rng base(seed, "attack");
    parallel_blocks(count, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; i++) {
            Rng r = base.fork(i);
            BitVector d = random_vector(r, p.qubits());
            BitVector e = random_vector(r, p.qubits());
            out[i] = y_vector(p, d, e);
        }
    });
    return out;
}

double y_bias_exact(const XProgram &p, const BitVector &s) {
    std::size_t g = gram_rank(submatrix_s(p, s));
    return 0.5 * (1.0 + std::ldexp(1.0, -static_cast<int>(g)));
}

UnitBoundReport unitbound_check(const XProgram &p, const BitVector &s, double tol) {
    UnitBoundReport r;
    r.quantum = xp_bias(p, s);
    r.classical = y_bias_exact(p, s);
    r.implication_holds = !(std::abs(r.quantum - 1.0) <= tol) || std::abs(r.classical - 1.0) <= tol;
    return r;
}

}  // namespace iqp
