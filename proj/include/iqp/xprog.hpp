#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "iqp/f2la.hpp"

namespace iqp {

// Program elements are the rows of `matrix`; all share the action angle theta.
struct XProgram {
    BitMatrix matrix;
    double theta = 0;

    std::size_t qubits() const { return matrix.cols(); }
    std::size_t elements() const { return matrix.rows(); }
};

// Probabilities over n-bit outcomes. Bit j of an index is qubit j.
struct Distribution {
    std::size_t n = 0;
    Eigen::VectorXd probs;
};

inline constexpr std::size_t kMaxSimQubits = 26;
inline constexpr std::size_t kMaxGraphQubits = 22;

// Unnormalized in-place Walsh–Hadamard transform; v.size() must be a power of two.
template <typename Derived>
void walsh_hadamard(Eigen::MatrixBase<Derived> &v) {
    const Eigen::Index size = v.size();
    for (Eigen::Index h = 1; h < size; h <<= 1) {
        for (Eigen::Index i = 0; i < size; i += h << 1) {
            for (Eigen::Index j = i; j < i + h; j++) {
                auto a = v(j);
                auto b = v(j + h);
                v(j) = a + b;
                v(j + h) = a - b;
            }
        }
    }
}

// Amplitudes ⟨x| exp(iθ Σ_p X^p) |0⟩ for all x.
Eigen::VectorXcd xp_amplitudes(const XProgram &p, unsigned threads = 1);
// Throws std::length_error when qubits() > kMaxSimQubits.
Distribution xp_distribution(const XProgram &p, unsigned threads = 1);

BitVector index_to_bits(uint64_t x, std::size_t n);
uint64_t bits_to_index(const BitVector &v);

// N inverse-CDF draws. Draw i uses its own stream, so the output does not
// depend on the thread count.
std::vector<BitVector> sample_distribution(const Distribution &d, std::size_t count, uint64_t seed,
                                           unsigned threads = 1);
std::vector<BitVector> xp_sample(const XProgram &p, std::size_t count, uint64_t seed, unsigned threads = 1);

// Rows p with p·s = 1, in order.
BitMatrix submatrix_s(const XProgram &p, const BitVector &s);
// Pr(x·s = 0) from the code spanned by the columns of the submatrix.
double xp_bias(const XProgram &p, const BitVector &s);
// Pr(x·s = 0) read directly off a distribution.
double distribution_bias(const Distribution &d, const BitVector &s);

double collision_entropy(const Distribution &d);

// Bipartite graph: vertices 0..primal-1 are qubits, primal+i is the ancilla
// of program element i.
struct GraphProgram {
    std::size_t primal = 0;
    std::size_t ancilla = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<double> angles;  // ancilla measurement angle, one per element
};

GraphProgram to_graph_program(const XProgram &p);
// Outcome distribution over primal+ancilla bits: |+⟩ on every vertex, CZ on
// every edge, H on primal vertices, exp(iθX) on ancillas, measure all.
Distribution graph_program_distribution(const GraphProgram &g);
// Graph-program run followed by the ancilla→primal parity corrections,
// marginalized onto the primal bits.
Distribution emulate(const XProgram &p);

// Fidelity of the post-selected two-qubit gadget output with Hψ.
double hadamard_gadget_check(const Eigen::Vector2cd &psi);

}  // namespace iqp
