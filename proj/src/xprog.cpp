#include "iqp/xprog.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "iqp/codes.hpp"
#include "iqp/parallel.hpp"
#include "iqp/rng.hpp"

namespace iqp {

namespace {

using cd = std::complex<double>;

void apply_1q(Eigen::VectorXcd &state, std::size_t q, const Eigen::Matrix2cd &u) {
    const Eigen::Index bit = Eigen::Index{1} << q;
    for (Eigen::Index i = 0; i < state.size(); i++) {
        if (i & bit) continue;
        cd a = state(i);
        cd b = state(i | bit);
        state(i) = u(0, 0) * a + u(0, 1) * b;
        state(i | bit) = u(1, 0) * a + u(1, 1) * b;
    }
}

Eigen::Matrix2cd hadamard() {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

// exp(iθX)
Eigen::Matrix2cd x_rotation(double theta) {
    Eigen::Matrix2cd r;
    r << std::cos(theta), cd(0, std::sin(theta)), cd(0, std::sin(theta)), std::cos(theta);
    return r;
}

}  // namespace

Eigen::VectorXcd xp_amplitudes(const XProgram &p, unsigned threads) {
    const std::size_t n = p.qubits();
    const std::size_t k = p.elements();
    if (n > kMaxSimQubits) {
        throw std::length_error("simulation bound exceeded: " + std::to_string(n) + " qubits > " +
                                std::to_string(kMaxSimQubits));
    }
    const uint64_t size = uint64_t{1} << n;

    // Column j of P as a k-bit vector: toggling a_j xors it into P·a.
    BitMatrix cols = p.matrix.transpose();
    std::vector<cd> table(k + 1);
    for (std::size_t w = 0; w <= k; w++) {
        table[w] = std::polar(1.0, p.theta * (static_cast<double>(k) - 2.0 * static_cast<double>(w)));
    }

    Eigen::VectorXcd amp(static_cast<Eigen::Index>(size));
    parallel_blocks(size, threads, [&](std::size_t begin, std::size_t end) {
        // Walk the Gray code a_i = i ^ (i >> 1) for i in [begin, end).
        uint64_t a = begin ^ (begin >> 1);
        BitVector pa(k);
        for (std::size_t j = 0; j < n; j++) {
            if ((a >> j) & 1) {
                pa ^= cols.row(j);
            }
        }
        auto paw = pa.words();
        for (uint64_t i = begin; i < end; i++) {
            if (i != begin) {
                std::size_t j = std::countr_zero(i);
                auto cw = cols.row_words(j);
                for (std::size_t w = 0; w < paw.size(); w++) {
                    paw[w] ^= cw[w];
                }
                a ^= uint64_t{1} << j;
            }
            std::size_t weight = 0;
            for (uint64_t w : paw) {
                weight += std::popcount(w);
            }
            amp(static_cast<Eigen::Index>(a)) = table[weight];
        }
    });
    walsh_hadamard(amp);
    amp /= static_cast<double>(size);
    return amp;
}

Distribution xp_distribution(const XProgram &p, unsigned threads) {
    Distribution d;
    d.n = p.qubits();
    d.probs = xp_amplitudes(p, threads).cwiseAbs2();
    d.probs /= d.probs.sum();
    return d;
}

BitVector index_to_bits(uint64_t x, std::size_t n) {
    BitVector v(n);
    if (n > 0) {
        v.words()[0] = n >= 64 ? x : x & ((uint64_t{1} << n) - 1);
    }
    return v;
}

uint64_t bits_to_index(const BitVector &v) {
    if (v.size() > 64) {
        throw std::invalid_argument("bits_to_index: vector longer than 64 bits");
    }
    return v.size() == 0 ? 0 : v.words()[0];
}

std::vector<BitVector> sample_distribution(const Distribution &d, std::size_t count, uint64_t seed, unsigned threads) {
    std::vector<double> cdf(static_cast<std::size_t>(d.probs.size()));
    double acc = 0;
    for (std::size_t i = 0; i < cdf.size(); i++) {
        acc += d.probs(static_cast<Eigen::Index>(i));
        cdf[i] = acc;
    }
    std::vector<BitVector> out(count);
    Rng base(seed, "sample");
    parallel_blocks(count, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; i++) {
            double u = base.fork(i).uniform() * acc;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            std::size_t x = std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
            out[i] = index_to_bits(x, d.n);
        }
    });
    return out;
}

std::vector<BitVector> xp_sample(const XProgram &p, std::size_t count, uint64_t seed, unsigned threads) {
    return sample_distribution(xp_distribution(p, threads), count, seed, threads);
}

BitMatrix submatrix_s(const XProgram &p, const BitVector &s) {
    if (s.size() != p.qubits()) {
        throw std::invalid_argument("submatrix_s: length(s) != qubits");
    }
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < p.elements(); r++) {
        if (p.matrix.row(r).dot(s)) {
            keep.push_back(r);
        }
    }
    return p.matrix.select_rows(keep);
}

double xp_bias(const XProgram &p, const BitVector &s) {
    return code_bias(make_code(submatrix_s(p, s)), p.theta);
}

double distribution_bias(const Distribution &d, const BitVector &s) {
    uint64_t mask = bits_to_index(s);
    double total = 0;
    for (Eigen::Index x = 0; x < d.probs.size(); x++) {
        if ((std::popcount(static_cast<uint64_t>(x) & mask) & 1) == 0) {
            total += d.probs(x);
        }
    }
    return total;
}

double collision_entropy(const Distribution &d) {
    return -std::log2(d.probs.squaredNorm());
}

GraphProgram to_graph_program(const XProgram &p) {
    GraphProgram g;
    g.primal = p.qubits();
    g.ancilla = p.elements();
    for (std::size_t r = 0; r < p.elements(); r++) {
        for (std::size_t j = 0; j < p.qubits(); j++) {
            if (p.matrix.get(r, j)) {
                g.edges.emplace_back(j, g.primal + r);
            }
        }
    }
    g.angles.assign(g.ancilla, p.theta);
    return g;
}

Distribution graph_program_distribution(const GraphProgram &g) {
    const std::size_t total = g.primal + g.ancilla;
    if (total > kMaxGraphQubits) {
        throw std::length_error("graph program too large for statevector simulation: " + std::to_string(total) +
                                " vertices");
    }
    const Eigen::Index size = Eigen::Index{1} << total;
    Eigen::VectorXcd state = Eigen::VectorXcd::Constant(size, cd(1.0 / std::sqrt(static_cast<double>(size)), 0));
    for (Eigen::Index i = 0; i < size; i++) {
        int parity = 0;
        for (auto [u, v] : g.edges) {
            parity ^= static_cast<int>((i >> u) & (i >> v) & 1);
        }
        if (parity) state(i) = -state(i);
    }
    Eigen::Matrix2cd h = hadamard();
    for (std::size_t j = 0; j < g.primal; j++) {
        apply_1q(state, j, h);
    }
    for (std::size_t a = 0; a < g.ancilla; a++) {
        apply_1q(state, g.primal + a, x_rotation(g.angles[a]));
    }
    return {total, state.cwiseAbs2()};
}

Distribution emulate(const XProgram &p) {
    GraphProgram g = to_graph_program(p);
    Distribution full = graph_program_distribution(g);
    const std::size_t n = p.qubits();
    std::vector<uint64_t> rows(p.elements());
    for (std::size_t r = 0; r < p.elements(); r++) {
        rows[r] = bits_to_index(p.matrix.row(r));
    }
    Distribution out{n, Eigen::VectorXd::Zero(Eigen::Index{1} << n)};
    const uint64_t primal_mask = (uint64_t{1} << n) - 1;
    for (Eigen::Index i = 0; i < full.probs.size(); i++) {
        uint64_t x = static_cast<uint64_t>(i) & primal_mask;
        uint64_t m = static_cast<uint64_t>(i) >> n;
        for (std::size_t r = 0; m; r++, m >>= 1) {
            if (m & 1) x ^= rows[r];
        }
        out.probs(static_cast<Eigen::Index>(x)) += full.probs(i);
    }
    return out;
}

double hadamard_gadget_check(const Eigen::Vector2cd &psi) {
    // Qubit 0 carries ψ, qubit 1 is the ancilla.
    Eigen::Vector4cd state = Eigen::Vector4cd::Zero();
    state(0) = psi(0);
    state(1) = psi(1);
    Eigen::VectorXcd s = state;
    Eigen::Matrix2cd h = hadamard();
    apply_1q(s, 1, h);
    std::swap(s(1), s(2));  // swap
    s(3) = -s(3);           // controlled-Z
    apply_1q(s, 1, h);
    Eigen::Vector2cd out(s(0), s(1));  // ancilla post-selected on |0⟩
    double norm = out.squaredNorm();
    if (!(norm > 0)) {
        throw std::domain_error("hadamard gadget: post-selection probability is zero");
    }
    out /= std::sqrt(norm);
    Eigen::Vector2cd target = h * psi;
    return std::norm(target.dot(out));
}

}  // namespace iqp
