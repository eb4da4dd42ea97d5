#include "iqp/stab.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "iqp/parallel.hpp"

namespace iqp {

namespace {

using cd = std::complex<double>;

// Σ_j g(P_j, Q_j) mod 4 over packed words, where P_j·Q_j = i^g (P·Q)_j.
int product_phase(std::span<const uint64_t> x1, std::span<const uint64_t> z1, std::span<const uint64_t> x2,
                  std::span<const uint64_t> z2) {
    int plus = 0;
    int minus = 0;
    for (std::size_t w = 0; w < x1.size(); w++) {
        uint64_t X1 = x1[w] & ~z1[w], Y1 = x1[w] & z1[w], Z1 = ~x1[w] & z1[w];
        uint64_t X2 = x2[w] & ~z2[w], Y2 = x2[w] & z2[w], Z2 = ~x2[w] & z2[w];
        plus += std::popcount((X1 & Y2) | (Y1 & Z2) | (Z1 & X2));
        minus += std::popcount((X1 & Z2) | (Y1 & X2) | (Z1 & Y2));
    }
    return ((plus - minus) % 4 + 4) % 4;
}

// Conjugation rule for one gate on one Pauli row. Row must expose
// x(q), z(q), set_x, set_z and negate().
template <typename Row>
void conjugate_row(Row &r, const Gate &g) {
    const std::size_t a = g.a;
    const std::size_t b = g.b;
    switch (g.kind) {
        case Gate::Kind::H: {
            bool x = r.x(a), z = r.z(a);
            if (x && z) r.negate();
            r.set_x(a, z);
            r.set_z(a, x);
            break;
        }
        case Gate::Kind::S: {
            bool x = r.x(a), z = r.z(a);
            if (x && z) r.negate();
            r.set_z(a, z ^ x);
            break;
        }
        case Gate::Kind::X:
            if (r.z(a)) r.negate();
            break;
        case Gate::Kind::Z:
            if (r.x(a)) r.negate();
            break;
        case Gate::Kind::CNOT: {
            bool xc = r.x(a), zc = r.z(a), xt = r.x(b), zt = r.z(b);
            if (xc && zt && !(xt ^ zc)) r.negate();
            r.set_x(b, xt ^ xc);
            r.set_z(a, zc ^ zt);
            break;
        }
        case Gate::Kind::CZ: {
            bool xa = r.x(a), za = r.z(a), xb = r.x(b), zb = r.z(b);
            if (xa && xb && (za ^ zb)) r.negate();
            r.set_z(a, za ^ xb);
            r.set_z(b, zb ^ xa);
            break;
        }
    }
}

struct PauliRow {
    PauliOperator &p;
    bool x(std::size_t q) const { return p.x.get(q); }
    bool z(std::size_t q) const { return p.z.get(q); }
    void set_x(std::size_t q, bool v) { p.x.set(q, v); }
    void set_z(std::size_t q, bool v) { p.z.set(q, v); }
    void negate() { p.phase = (p.phase + 2) & 3; }
};

struct TableauRow {
    BitMatrix &xs;
    BitMatrix &zs;
    uint8_t &phase;
    std::size_t i;
    bool x(std::size_t q) const { return xs.get(i, q); }
    bool z(std::size_t q) const { return zs.get(i, q); }
    void set_x(std::size_t q, bool v) { xs.set(i, q, v); }
    void set_z(std::size_t q, bool v) { zs.set(i, q, v); }
    void negate() { phase = (phase + 2) & 3; }
};

void check_gate(const Gate &g, std::size_t n) {
    bool two = g.kind == Gate::Kind::CNOT || g.kind == Gate::Kind::CZ;
    if (g.a >= n || (two && (g.b >= n || g.a == g.b))) {
        throw std::out_of_range("gate qubit index out of range");
    }
}

void apply_gate_state(Eigen::VectorXcd &v, const Gate &g) {
    const Eigen::Index a = Eigen::Index{1} << g.a;
    const Eigen::Index b = Eigen::Index{1} << g.b;
    const double r = 1 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < v.size(); i++) {
        switch (g.kind) {
            case Gate::Kind::H:
                if (!(i & a)) {
                    cd p = v(i), q = v(i | a);
                    v(i) = r * (p + q);
                    v(i | a) = r * (p - q);
                }
                break;
            case Gate::Kind::S:
                if (i & a) v(i) *= cd(0, 1);
                break;
            case Gate::Kind::X:
                if (!(i & a)) std::swap(v(i), v(i | a));
                break;
            case Gate::Kind::Z:
                if (i & a) v(i) = -v(i);
                break;
            case Gate::Kind::CNOT:
                if ((i & a) && !(i & b)) std::swap(v(i), v(i | b));
                break;
            case Gate::Kind::CZ:
                if ((i & a) && (i & b)) v(i) = -v(i);
                break;
        }
    }
}

}  // namespace

PauliOperator PauliOperator::from_string(std::string_view text) {
    uint8_t phase = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        if (text[0] == '-') phase = 2;
        text.remove_prefix(1);
    }
    if (!text.empty() && text[0] == 'i') {
        phase = (phase + 1) & 3;
        text.remove_prefix(1);
    }
    PauliOperator p(text.size());
    p.phase = phase;
    for (std::size_t j = 0; j < text.size(); j++) {
        switch (text[j]) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.x.set(j, true);
                break;
            case 'Y':
                p.x.set(j, true);
                p.z.set(j, true);
                break;
            case 'Z':
                p.z.set(j, true);
                break;
            default:
                throw std::invalid_argument("bad Pauli character");
        }
    }
    return p;
}

PauliOperator PauliOperator::single(std::size_t n, std::size_t qubit, char kind) {
    PauliOperator p(n);
    if (kind == 'X' || kind == 'Y') p.x.set(qubit, true);
    if (kind == 'Z' || kind == 'Y') p.z.set(qubit, true);
    return p;
}

std::string PauliOperator::to_string() const {
    static const char *prefix[] = {"+", "+i", "-", "-i"};
    std::string s = prefix[phase & 3];
    for (std::size_t j = 0; j < size(); j++) {
        s += "_XZY"[x.get(j) + 2 * z.get(j)];
    }
    return s;
}

bool PauliOperator::commutes(const PauliOperator &other) const {
    return x.dot(other.z) == other.x.dot(z);
}

PauliOperator PauliOperator::operator*(const PauliOperator &other) const {
    if (other.size() != size()) {
        throw std::invalid_argument("Pauli width mismatch");
    }
    PauliOperator r(size());
    r.x = x ^ other.x;
    r.z = z ^ other.z;
    r.phase = static_cast<uint8_t>((phase + other.phase + product_phase(x.words(), z.words(), other.x.words(),
                                                                         other.z.words())) &
                                   3);
    return r;
}

Eigen::MatrixXcd PauliOperator::to_matrix() const {
    const Eigen::Index dim = Eigen::Index{1} << size();
    uint64_t xm = bits_to_index(x);
    uint64_t zm = bits_to_index(z);
    static const cd ipow[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    int ys = std::popcount(xm & zm);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; b++) {
        int sign = std::popcount(static_cast<uint64_t>(b) & zm) & 1;
        cd c = ipow[(phase + ys + 2 * sign) & 3];
        m(static_cast<Eigen::Index>(static_cast<uint64_t>(b) ^ xm), b) = c;
    }
    return m;
}

CliffordCircuit &CliffordCircuit::h(std::size_t q) {
    gates.push_back({Gate::Kind::H, q});
    return *this;
}
CliffordCircuit &CliffordCircuit::s(std::size_t q) {
    gates.push_back({Gate::Kind::S, q});
    return *this;
}
CliffordCircuit &CliffordCircuit::x(std::size_t q) {
    gates.push_back({Gate::Kind::X, q});
    return *this;
}
CliffordCircuit &CliffordCircuit::z(std::size_t q) {
    gates.push_back({Gate::Kind::Z, q});
    return *this;
}
CliffordCircuit &CliffordCircuit::cnot(std::size_t c, std::size_t t) {
    gates.push_back({Gate::Kind::CNOT, c, t});
    return *this;
}
CliffordCircuit &CliffordCircuit::cz(std::size_t a, std::size_t b) {
    gates.push_back({Gate::Kind::CZ, a, b});
    return *this;
}
CliffordCircuit &CliffordCircuit::append(const CliffordCircuit &other) {
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    return *this;
}
CliffordCircuit CliffordCircuit::reversed() const {
    return {n, std::vector<Gate>(gates.rbegin(), gates.rend())};
}

Eigen::MatrixXcd circuit_unitary(const CliffordCircuit &c) {
    const Eigen::Index dim = Eigen::Index{1} << c.n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (Eigen::Index col = 0; col < dim; col++) {
        Eigen::VectorXcd v = u.col(col);
        for (const Gate &g : c.gates) {
            apply_gate_state(v, g);
        }
        u.col(col) = v;
    }
    return u;
}

PauliOperator conjugate(const CliffordCircuit &c, const PauliOperator &p) {
    PauliOperator r = p;
    PauliRow row{r};
    for (const Gate &g : c.gates) {
        check_gate(g, r.size());
        conjugate_row(row, g);
    }
    return r;
}

Tableau::Tableau(std::size_t n) : n_(n), xs_(2 * n, n), zs_(2 * n, n), phase_(2 * n, 0) {
    for (std::size_t i = 0; i < n; i++) {
        xs_.set(i, i, true);
        zs_.set(n + i, i, true);
    }
}

void Tableau::apply(const Gate &g) {
    check_gate(g, n_);
    for (std::size_t i = 0; i < 2 * n_; i++) {
        TableauRow r{xs_, zs_, phase_[i], i};
        conjugate_row(r, g);
    }
}

void Tableau::apply(const CliffordCircuit &c) {
    for (const Gate &g : c.gates) {
        apply(g);
    }
}

void Tableau::apply_pi4_rotation(const PauliOperator &p, bool positive) {
    // exp(iθP) g exp(−iθP) = ±i·P·g for g anticommuting with P.
    for (std::size_t i = 0; i < 2 * n_; i++) {
        PauliOperator g = row(i);
        if (g.commutes(p)) continue;
        PauliOperator r = p * g;
        r.phase = static_cast<uint8_t>((r.phase + (positive ? 1 : 3)) & 3);
        xs_.set_row(i, r.x);
        zs_.set_row(i, r.z);
        phase_[i] = r.phase;
    }
}

PauliOperator Tableau::row(std::size_t i) const {
    PauliOperator p(n_);
    p.x = xs_.row(i);
    p.z = zs_.row(i);
    p.phase = phase_[i];
    return p;
}

void Tableau::rowsum(std::size_t h, std::size_t i) {
    int g = product_phase(xs_.row_words(i), zs_.row_words(i), xs_.row_words(h), zs_.row_words(h));
    phase_[h] = static_cast<uint8_t>((phase_[h] + phase_[i] + g) & 3);
    xs_.add_row(i, h);
    zs_.add_row(i, h);
}

bool Tableau::measure(std::size_t q, Rng &rng) {
    std::size_t p = n_;
    while (p < 2 * n_ && !xs_.get(p, q)) {
        p++;
    }
    if (p < 2 * n_) {
        for (std::size_t i = 0; i < 2 * n_; i++) {
            if (i != p && xs_.get(i, q)) {
                rowsum(i, p);
            }
        }
        xs_.set_row(p - n_, xs_.row(p));
        zs_.set_row(p - n_, zs_.row(p));
        phase_[p - n_] = phase_[p];
        xs_.set_row(p, BitVector(n_));
        zs_.set_row(p, BitVector(n_));
        zs_.set(p, q, true);
        bool outcome = rng.bit();
        phase_[p] = outcome ? 2 : 0;
        return outcome;
    }
    // Deterministic: accumulate the stabilizers named by the destabilizers.
    PauliOperator acc(n_);
    for (std::size_t i = 0; i < n_; i++) {
        if (xs_.get(i, q)) {
            acc = stabilizer(i) * acc;
        }
    }
    return acc.phase == 2;
}

std::vector<BitVector> pi4_xprogram_sample(const XProgram &p, std::size_t count, uint64_t seed, unsigned threads) {
    const double m = p.theta / (std::numbers::pi / 4);
    const double r = std::round(m);
    const long long ri = static_cast<long long>(r);
    if (std::abs(m - r) > 1e-9 || ri % 2 == 0) {
        throw std::invalid_argument("pi4_xprogram_sample: theta is not an odd multiple of pi/4");
    }
    const bool positive = ((ri % 4) + 4) % 4 == 1;
    const std::size_t n = p.qubits();
    Tableau base(n);
    for (std::size_t e = 0; e < p.elements(); e++) {
        PauliOperator xp(n);
        xp.x = p.matrix.row(e);
        base.apply_pi4_rotation(xp, positive);
    }
    std::vector<BitVector> out(count);
    Rng root(seed, "pi4-sample");
    parallel_blocks(count, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; i++) {
            Tableau t = base;
            Rng rng = root.fork(i);
            BitVector v(n);
            for (std::size_t q = 0; q < n; q++) {
                v.set(q, t.measure(q, rng));
            }
            out[i] = std::move(v);
        }
    });
    return out;
}

CliffordCircuit dqc1_build(const CliffordCircuit &cnots, const BitVector &x) {
    const std::size_t data = cnots.n;
    if (x.size() != data) {
        throw std::invalid_argument("dqc1_build: input length does not match circuit width");
    }
    if (data == 0) {
        throw std::invalid_argument("dqc1_build: need at least one data qubit");
    }
    CliffordCircuit c;
    for (const Gate &g : cnots.gates) {
        if (g.kind != Gate::Kind::CNOT) {
            throw std::invalid_argument("dqc1_build: circuit must contain only CNOT gates");
        }
        check_gate(g, data);
        c.cnot(g.a + 1, g.b + 1);
    }
    c.n = data + 1;
    CliffordCircuit q{data + 1, {}};
    for (std::size_t j = 0; j <= data; j++) {
        q.h(j);
    }
    CliffordCircuit v{data + 1, {}};
    for (std::size_t j = 0; j < data; j++) {
        if (x.get(j)) v.cnot(0, j + 1);
    }
    CliffordCircuit w{data + 1, {}};
    w.append(q).append(v).append(c).append(q);
    w.x(1);
    w.append(q).append(c.reversed()).append(v.reversed()).append(q);
    return w;
}

int dqc1_bias(const CliffordCircuit &w) {
    PauliOperator z0 = PauliOperator::single(w.n, 0, 'Z');
    PauliOperator r = conjugate(w, z0);
    if (r.x == z0.x && r.z == z0.z) {
        if (r.phase == 0) return 1;
        if (r.phase == 2) return -1;
    }
    return 0;
}

BitVector evaluate_cnot_circuit(const CliffordCircuit &cnots, const BitVector &x) {
    BitVector y = x;
    for (const Gate &g : cnots.gates) {
        if (g.kind != Gate::Kind::CNOT) {
            throw std::invalid_argument("evaluate_cnot_circuit: non-CNOT gate");
        }
        if (y.get(g.a)) y.flip(g.b);
    }
    return y;
}

BitMatrix line_graph(std::size_t n) {
    BitMatrix a(n, n);
    for (std::size_t i = 0; i + 1 < n; i++) {
        a.set(i, i + 1, true);
        a.set(i + 1, i, true);
    }
    return a;
}

CliffordCircuit clock_circuit(const BitMatrix &adjacency) {
    const std::size_t n = adjacency.rows();
    CliffordCircuit c{n, {}};
    for (std::size_t j = 0; j < n; j++) {
        c.h(j);
    }
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = i + 1; j < n; j++) {
            if (adjacency.get(i, j)) c.cz(i, j);
        }
    }
    return c;
}

namespace {

BitMatrix blocks(const BitMatrix &a, const BitMatrix &b, const BitMatrix &c, const BitMatrix &d) {
    return a.hconcat(b).vconcat(c.hconcat(d));
}

void check_adjacency(const BitMatrix &a) {
    if (a.rows() != a.cols() || !(a.transpose() == a)) {
        throw std::invalid_argument("adjacency matrix must be square and symmetric");
    }
    for (std::size_t i = 0; i < a.rows(); i++) {
        if (a.get(i, i)) throw std::invalid_argument("adjacency matrix must have zero diagonal");
    }
}

}  // namespace

BitMatrix clock_matrix(const BitMatrix &adjacency) {
    check_adjacency(adjacency);
    const std::size_t n = adjacency.rows();
    return blocks(BitMatrix(n, n), BitMatrix::identity(n), BitMatrix::identity(n), adjacency);
}

BitMatrix clock_power(const BitMatrix &adjacency, std::size_t k) {
    check_adjacency(adjacency);
    const std::size_t n = adjacency.rows();
    // (S_{j−2}, S_{j−1}, S_j) starting at j = 0.
    BitMatrix s2 = BitMatrix::identity(n);
    BitMatrix s1(n, n);
    BitMatrix s0 = BitMatrix::identity(n);
    for (std::size_t j = 1; j <= k; j++) {
        BitMatrix next = gf2_product(adjacency, s0);
        for (std::size_t r = 0; r < n; r++) {
            auto dst = next.row_words(r);
            auto src = s1.row_words(r);
            for (std::size_t w = 0; w < dst.size(); w++) dst[w] ^= src[w];
        }
        s2 = std::move(s1);
        s1 = std::move(s0);
        s0 = std::move(next);
    }
    return blocks(s2, s1, s1, s0);
}

bool is_block_reversal(const BitMatrix &m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0) return false;
    const std::size_t n = m.rows() / 2;
    BitMatrix j(n, n);
    for (std::size_t i = 0; i < n; i++) {
        j.set(i, n - 1 - i, true);
    }
    return m == blocks(j, BitMatrix(n, n), BitMatrix(n, n), j);
}

std::size_t clock_period(const BitMatrix &adjacency, std::size_t bound) {
    BitMatrix m = clock_matrix(adjacency);
    BitMatrix id = BitMatrix::identity(m.rows());
    BitMatrix power = m;
    for (std::size_t k = 1; k <= bound; k++) {
        if (power == id) return k;
        power = gf2_product(power, m);
    }
    return 0;
}

std::vector<std::pair<PauliOperator, PauliOperator>> logical_encoding(std::size_t n) {
    const std::size_t cells = 3 * n + 2;
    CliffordCircuit g = clock_circuit(line_graph(cells));
    CliffordCircuit g3{cells, {}};
    g3.append(g).append(g).append(g);
    PauliOperator xbar = PauliOperator::single(cells, 0, 'X');
    PauliOperator zbar = PauliOperator::single(cells, 0, 'Z');
    std::vector<std::pair<PauliOperator, PauliOperator>> pairs;
    for (std::size_t j = 0; j < 2 * n + 2; j++) {
        pairs.emplace_back(xbar, zbar);
        xbar = conjugate(g3, xbar);
        zbar = conjugate(g3, zbar);
    }
    return pairs;
}

bool valid_logical_pairs(const std::vector<std::pair<PauliOperator, PauliOperator>> &pairs) {
    for (std::size_t i = 0; i < pairs.size(); i++) {
        if (pairs[i].first.commutes(pairs[i].second)) return false;
        for (std::size_t j = i + 1; j < pairs.size(); j++) {
            const auto &[a, b] = pairs[i];
            const auto &[c, d] = pairs[j];
            if (!a.commutes(c) || !a.commutes(d) || !b.commutes(c) || !b.commutes(d)) return false;
        }
    }
    return true;
}

}  // namespace iqp
