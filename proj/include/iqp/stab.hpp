#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iqp/f2la.hpp"
#include "iqp/rng.hpp"
#include "iqp/xprog.hpp"

namespace iqp {

// i^phase · ⊗_j P_j with P_j from (x_j, z_j): (0,0)=I (1,0)=X (1,1)=Y (0,1)=Z.
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(std::size_t n) : x(n), z(n) {}

    // "+XIZ", "-Y_Z", "+iXX", "-iZ"; '_' and 'I' both mean identity.
    static PauliOperator from_string(std::string_view text);
    static PauliOperator single(std::size_t n, std::size_t qubit, char kind);
    std::string to_string() const;

    std::size_t size() const { return x.size(); }
    bool commutes(const PauliOperator &other) const;
    PauliOperator operator*(const PauliOperator &other) const;
    bool operator==(const PauliOperator &other) const = default;

    // Dense 2^n × 2^n matrix; bit j of a basis index is qubit j.
    Eigen::MatrixXcd to_matrix() const;

    BitVector x;
    BitVector z;
    uint8_t phase = 0;  // exponent of i, mod 4
};

struct Gate {
    enum class Kind { H, S, X, Z, CNOT, CZ };
    Kind kind;
    std::size_t a;
    std::size_t b = 0;
    bool operator==(const Gate &) const = default;
};

struct CliffordCircuit {
    std::size_t n = 0;
    std::vector<Gate> gates;  // time order

    CliffordCircuit &h(std::size_t q);
    CliffordCircuit &s(std::size_t q);
    CliffordCircuit &x(std::size_t q);
    CliffordCircuit &z(std::size_t q);
    CliffordCircuit &cnot(std::size_t c, std::size_t t);
    CliffordCircuit &cz(std::size_t a, std::size_t b);
    CliffordCircuit &append(const CliffordCircuit &other);
    // Gate order reversed. This is the inverse when every gate is self-inverse.
    CliffordCircuit reversed() const;
};

// Dense unitary of the circuit (gates applied in time order).
Eigen::MatrixXcd circuit_unitary(const CliffordCircuit &c);

// U·P·U† where U is the circuit unitary.
PauliOperator conjugate(const CliffordCircuit &c, const PauliOperator &p);

// Stabilizer tableau with destabilizers, starting in |0…0⟩.
class Tableau {
   public:
    explicit Tableau(std::size_t n);

    std::size_t size() const { return n_; }
    void apply(const Gate &g);
    void apply(const CliffordCircuit &c);
    // Conjugates the state by exp(iθP) for θ ≡ π/4 (positive) or 3π/4 mod π.
    void apply_pi4_rotation(const PauliOperator &p, bool positive);
    // Computational-basis measurement. Random outcomes consume one bit of rng.
    bool measure(std::size_t q, Rng &rng);

    PauliOperator stabilizer(std::size_t i) const { return row(n_ + i); }
    PauliOperator destabilizer(std::size_t i) const { return row(i); }

   private:
    PauliOperator row(std::size_t i) const;
    // row h ← row i · row h
    void rowsum(std::size_t h, std::size_t i);

    std::size_t n_;
    BitMatrix xs_;
    BitMatrix zs_;
    std::vector<uint8_t> phase_;
};

// Samples an X-program whose angle is an odd multiple of π/4 by stabilizer
// simulation. Throws std::invalid_argument for any other angle.
std::vector<BitVector> pi4_xprogram_sample(const XProgram &p, std::size_t count, uint64_t seed,
                                           unsigned threads = 1);

// Pure qubit 0 plus data qubits 1..i. The input circuit holds only CNOTs on
// data indices 0..i−1. Builds W = U†·X₁·U with U = Q·C·V(x)·Q, where Q is H
// on every qubit and V(x) applies CNOT(0 → data j) for each set x_j.
CliffordCircuit dqc1_build(const CliffordCircuit &cnots, const BitVector &x);
// +1 or −1 if W·Z₀·W† = ±Z₀, else 0.
int dqc1_bias(const CliffordCircuit &w);
// Classical evaluation of a CNOT-only circuit on a bit string.
BitVector evaluate_cnot_circuit(const CliffordCircuit &cnots, const BitVector &x);

BitMatrix line_graph(std::size_t n);
// One clock tick: H on every vertex, then CZ on every edge.
CliffordCircuit clock_circuit(const BitMatrix &adjacency);
// [[0, I], [I, A]] acting on column vectors [x; z].
BitMatrix clock_matrix(const BitMatrix &adjacency);
// M^k via S_k = S_{k−2} + A·S_{k−1}: M^k = [[S_{k−2}, S_{k−1}], [S_{k−1}, S_k]].
BitMatrix clock_power(const BitMatrix &adjacency, std::size_t k);
// True if m = diag(J, J) with J the reversal permutation.
bool is_block_reversal(const BitMatrix &m);
// Smallest k in [1, bound] with M^k = I, or 0.
std::size_t clock_period(const BitMatrix &adjacency, std::size_t bound);

// (X̄_j, Z̄_j) = G^{3j} (X₀, Z₀) G^{−3j} on a line of 3n+2 cells, j = 0..2n+1.
std::vector<std::pair<PauliOperator, PauliOperator>> logical_encoding(std::size_t n);
// Anticommuting within each pair, commuting across pairs.
bool valid_logical_pairs(const std::vector<std::pair<PauliOperator, PauliOperator>> &pairs);

}  // namespace iqp
