#pragma once

#include <cstdint>
#include <vector>

#include "iqp/xprog.hpp"

namespace iqp {

// f(a) = Σ_p (−1)^{p·a} mod 16, the θ = π/8 phase polynomial.
int f_eval(const XProgram &p, const BitVector &a);
// f(a) − f(a⊕e) − f(a⊕d) + f(a⊕d⊕e) mod 16.
int second_derivative(const XProgram &p, const BitVector &d, const BitVector &e, const BitVector &a);

// Σ of the rows p with p·d = 1 and p·e = 1.
BitVector y_vector(const XProgram &p, const BitVector &d, const BitVector &e);
// Samples y_vector at uniformly random (d, e).
std::vector<BitVector> y_sample(const XProgram &p, std::size_t count, uint64_t seed, unsigned threads = 1);
// ½(1 + 2^−rank(P_sᵀP_s))
double y_bias_exact(const XProgram &p, const BitVector &s);

struct UnitBoundReport {
    double quantum = 0;
    double classical = 0;
    // quantum bias 1 implies classical bias 1
    bool implication_holds = false;
};

UnitBoundReport unitbound_check(const XProgram &p, const BitVector &s, double tol = 1e-12);

}  // namespace iqp
