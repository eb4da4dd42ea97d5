#include "iqp/eigest.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "iqp/xprog.hpp"

namespace iqp {

namespace {

using u128 = unsigned __int128;

uint64_t checked_mul(uint64_t a, uint64_t b) {
    u128 r = static_cast<u128>(a) * b;
    if (r >> 64) {
        throw std::overflow_error("control value overflows 64 bits");
    }
    return static_cast<uint64_t>(r);
}

uint64_t power(uint64_t base, std::size_t e) {
    uint64_t r = 1;
    for (std::size_t i = 0; i < e; i++) r = checked_mul(r, base);
    return r;
}

double sin2_fraction(uint64_t c, uint64_t a, uint64_t b) {
    uint64_t r = static_cast<uint64_t>(static_cast<u128>(c % b) * a % b);
    double s = std::sin(std::numbers::pi * static_cast<double>(r) / static_cast<double>(b));
    return s * s;
}

// a⁻¹ mod m, or 0 when gcd(a, m) ≠ 1.
uint64_t inverse_mod(uint64_t a, uint64_t m) {
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(m), nr = static_cast<long long>(a % m);
    while (nr != 0) {
        long long q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) return 0;
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<uint64_t>(t);
}

}  // namespace

uint64_t ControlSchedule::control(std::size_t alpha, std::size_t beta) const {
    return checked_mul(power(2, alpha), power(3, beta));
}

ControlSchedule fixed_schedule(std::size_t t, std::size_t d, std::size_t k) {
    ControlSchedule s{t, d, k, {}};
    s.controls.reserve((t + 1) * (d + 1) * k);
    for (std::size_t a = 0; a <= t; a++) {
        for (std::size_t b = 0; b <= d; b++) {
            s.controls.insert(s.controls.end(), k, s.control(a, b));
        }
    }
    return s;
}

ControlSchedule make_schedule(std::size_t n, double epsilon, double c0) {
    if (n < 1 || !(epsilon > 0 && epsilon < 1)) {
        throw std::invalid_argument("make_schedule: need n >= 1 and 0 < epsilon < 1");
    }
    std::size_t t = 2 * n;
    std::size_t d = 0;
    while (std::pow(3.0, static_cast<double>(d)) <= std::ldexp(1.0, static_cast<int>(n))) d++;
    double cells = static_cast<double>((t + 1) * (d + 1));
    auto k = static_cast<std::size_t>(std::ceil(c0 * std::log(cells / epsilon)));
    return fixed_schedule(t, d, k);
}

PhaseSamples phase_samples(const ControlSchedule &s, uint64_t kappa, uint64_t q, Rng &rng) {
    PhaseSamples out{s.t, s.d, s.k, Eigen::MatrixXd::Zero(s.t + 1, s.d + 1)};
    for (std::size_t a = 0; a <= s.t; a++) {
        for (std::size_t b = 0; b <= s.d; b++) {
            double p = sin2_fraction(s.control(a, b), kappa, q);
            std::size_t ones = 0;
            for (std::size_t i = 0; i < s.k; i++) {
                ones += rng.uniform() < p;
            }
            out.mu(a, b) = s.k ? static_cast<double>(ones) / static_cast<double>(s.k) : 0.0;
        }
    }
    return out;
}

PhaseSamples exact_phase_samples(std::size_t t, std::size_t d, uint64_t a, uint64_t b) {
    ControlSchedule s{t, d, 0, {}};
    PhaseSamples out{t, d, 0, Eigen::MatrixXd::Zero(t + 1, d + 1)};
    for (std::size_t i = 0; i <= t; i++) {
        for (std::size_t j = 0; j <= d; j++) {
            out.mu(i, j) = sin2_fraction(s.control(i, j), a, b);
        }
    }
    return out;
}

Permutation Permutation::table(std::vector<uint64_t> image) {
    if (image.empty() || image.size() > (std::size_t{1} << 20)) {
        throw std::invalid_argument("permutation table must have 1..2^20 entries");
    }
    std::vector<bool> hit(image.size(), false);
    for (uint64_t y : image) {
        if (y >= image.size() || hit[y]) throw std::invalid_argument("table is not a permutation");
        hit[y] = true;
    }
    Permutation p;
    p.table_ = std::move(image);
    return p;
}

Permutation Permutation::linear(BitMatrix m) {
    if (m.rows() != m.cols() || m.rows() == 0 || m.rows() > 32 || rank(m) != m.rows()) {
        throw std::invalid_argument("linear permutation needs an invertible square matrix of size 1..32");
    }
    Permutation p;
    p.linear_ = std::move(m);
    p.is_linear_ = true;
    return p;
}

uint64_t Permutation::operator()(uint64_t x) const {
    if (!is_linear_) return table_.at(x);
    const std::size_t n = linear_.rows();
    return bits_to_index(linear_.mul(index_to_bits(x, n)));
}

uint64_t Permutation::random_point(Rng &rng) const {
    if (!is_linear_) return rng.below(table_.size());
    return 1 + rng.below((uint64_t{1} << linear_.rows()) - 1);
}

uint64_t Permutation::orbit_length(uint64_t x) const {
    uint64_t y = (*this)(x);
    uint64_t len = 1;
    while (y != x) {
        y = (*this)(y);
        len++;
    }
    return len;
}

SampledPhases sample_bits(const Permutation &f, const ControlSchedule &s, uint64_t seed, bool expose_hidden) {
    Rng rng(seed, "eigest");
    HiddenPhase h;
    h.x = f.random_point(rng);
    h.q = f.orbit_length(h.x);
    h.kappa = rng.below(h.q);
    SampledPhases out;
    out.samples = phase_samples(s, h.kappa, h.q, rng);
    if (expose_hidden) out.hidden = h;
    return out;
}

BitVector decode(const PhaseSamples &samples, double eta) {
    BitVector phi(samples.t + 1);
    bool sigma = false;
    for (std::size_t alpha = 0; alpha <= samples.t; alpha++) {
        phi.set(alpha, sigma);
        sigma = !sigma;
        for (std::size_t beta = 0; beta <= samples.d; beta++) {
            sigma = !sigma;
            double mu = samples.mu(alpha, beta);
            if (mu < eta) break;
            if (mu > 1 - eta) {
                sigma = !sigma;
                break;
            }
        }
    }
    return phi;
}

uint64_t decoded_numerator(const BitVector &bits) {
    if (bits.size() > 63) throw std::invalid_argument("decoded_numerator: too many bits");
    uint64_t e = 0;
    for (std::size_t i = 0; i < bits.size(); i++) {
        e = (e << 1) | static_cast<uint64_t>(bits.get(i));
    }
    return e;
}

Fraction cf_recover(uint64_t value, std::size_t bits, uint64_t max_den) {
    if (bits > 62 || max_den == 0) throw std::invalid_argument("cf_recover: bits <= 62 and max_den >= 1");
    uint64_t num = value;
    uint64_t den = uint64_t{1} << bits;
    uint64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    if (den <= max_den) return {num, den};

    // Convergents p/q of num/den until the next denominator exceeds max_den.
    uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    uint64_t n = num, d = den;
    for (;;) {
        uint64_t a = n / d;
        uint64_t q2 = q0 + a * q1;
        if (q2 > max_den) break;
        uint64_t p2 = p0 + a * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        uint64_t r = n - a * d;
        n = d;
        d = r;
        if (d == 0) break;
    }
    // Best semiconvergent against the last convergent.
    uint64_t k = (max_den - q0) / q1;
    Fraction semi{p0 + k * p1, q0 + k * q1};
    Fraction conv{p1, q1};
    auto dist = [&](const Fraction &f) {
        // |f − num/den| · f.den · den, exact.
        u128 lhs = static_cast<u128>(f.num) * den;
        u128 rhs = static_cast<u128>(num) * f.den;
        return lhs > rhs ? lhs - rhs : rhs - lhs;
    };
    // Compare dist/semi.den with dist/conv.den.
    u128 a = dist(conv) * semi.den;
    u128 b = dist(semi) * conv.den;
    return a <= b ? conv : semi;
}

std::pair<double, double> error_budget(const ControlSchedule &s, double eta) {
    double cells = static_cast<double>((s.t + 1) * (s.d + 1));
    double k = static_cast<double>(s.k);
    double zoom = eta - std::pow(std::sin(std::numbers::pi / 8), 2);
    return {cells * std::exp(-2 * k * (0.5 - eta) * (0.5 - eta)), cells * std::exp(-2 * k * zoom * zoom)};
}

BinaryField::BinaryField(std::size_t n) : n_(n), modulus_(0) {
    if (n < 1 || n > 32) throw std::invalid_argument("BinaryField: need 1 <= n <= 32");
    uint64_t ord = order();
    uint64_t m = ord;
    for (uint64_t p = 2; p * p <= m; p++) {
        if (m % p == 0) {
            order_factors_.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) order_factors_.push_back(m);
    // x has order 2ⁿ−1 only when the modulus is primitive.
    for (uint64_t cand = (uint64_t{1} << n) | 1; cand < (uint64_t{1} << (n + 1)); cand += 2) {
        modulus_ = cand;
        if (is_generator(n == 1 ? 1 : 2)) return;
    }
    throw std::logic_error("BinaryField: no primitive polynomial found");
}

uint64_t BinaryField::mul(uint64_t a, uint64_t b) const {
    uint64_t r = 0;
    const uint64_t top = uint64_t{1} << n_;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= modulus_;
    }
    return r;
}

uint64_t BinaryField::pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

bool BinaryField::is_generator(uint64_t a) const {
    if (a == 0 || pow(a, order()) != 1) return false;
    for (uint64_t p : order_factors_) {
        if (pow(a, order() / p) == 1) return false;
    }
    return true;
}

BitMatrix BinaryField::mul_matrix(uint64_t a) const {
    BitMatrix m(n_, n_);
    for (std::size_t j = 0; j < n_; j++) {
        uint64_t col = mul(a, uint64_t{1} << j);
        for (std::size_t i = 0; i < n_; i++) {
            m.set(i, j, (col >> i) & 1);
        }
    }
    return m;
}

std::optional<uint64_t> BinaryField::brute_force_log(uint64_t g, uint64_t h) const {
    uint64_t y = 1;
    for (uint64_t s = 0; s < order(); s++) {
        if (y == h) return s;
        y = mul(y, g);
    }
    return std::nullopt;
}

DlogResult dlog_demo(std::size_t n, uint64_t g, uint64_t h, uint64_t seed, std::size_t max_attempts,
                     double epsilon) {
    if (n < 1 || n > 16) throw std::invalid_argument("dlog_demo: need 1 <= n <= 16");
    BinaryField field(n);
    const uint64_t mask = (uint64_t{1} << n) - 1;
    if ((g & ~mask) || !field.is_generator(g)) {
        throw std::invalid_argument("dlog_demo: g is not a generator of the multiplicative group");
    }
    if (h == 0 || (h & ~mask)) throw std::invalid_argument("dlog_demo: h must be a nonzero field element");

    ControlSchedule sched = make_schedule(n, epsilon);
    const uint64_t order = field.order();
    DlogResult res;

    // Size of the in-place circuits for the controlled multipliers.
    std::set<uint64_t> exps;
    for (std::size_t a = 0; a <= sched.t; a++) {
        for (std::size_t b = 0; b <= sched.d; b++) {
            exps.insert(sched.control(a, b) % order);
        }
    }
    res.distinct_controls = exps.size();
    for (uint64_t e : exps) {
        for (uint64_t base : {g, h}) {
            std::size_t ops = transvection_synthesis(field.mul_matrix(field.pow(base, e))).size();
            res.synthesis_ops += ops;
            res.max_synthesis_ops = std::max(res.max_synthesis_ops, ops);
        }
    }

    Permutation fg = Permutation::linear(field.mul_matrix(g));
    Permutation fh = Permutation::linear(field.mul_matrix(h));
    Rng root(seed, "dlog");
    const uint64_t max_den = uint64_t{1} << n;
    auto lift = [&](const BitVector &bits) -> std::optional<uint64_t> {
        Fraction f = cf_recover(decoded_numerator(bits), bits.size(), max_den);
        if (order % f.den != 0) return std::nullopt;
        return f.num * (order / f.den) % order;
    };

    for (std::size_t attempt = 1; attempt <= max_attempts; attempt++) {
        res.attempts = attempt;
        Rng rng = root.fork(attempt);
        // Oracle side: one eigenvector of multiplication by g, shared by both halves.
        uint64_t x = fg.random_point(rng);
        uint64_t q = fg.orbit_length(x);
        uint64_t kappa = rng.below(q);
        uint64_t e = 0;
        for (uint64_t y = x, target = fh(x); y != target; y = fg(y)) e++;
        uint64_t lambda = static_cast<uint64_t>(static_cast<u128>(kappa) * e % q);
        PhaseSamples first = phase_samples(sched, kappa, q, rng);
        PhaseSamples second = phase_samples(sched, lambda, q, rng);

        // Classical side: only the group order is known.
        auto k1 = lift(decode(first));
        auto k2 = lift(decode(second));
        if (!k1 || !k2 || std::gcd(*k1, order) != 1) continue;
        for (uint64_t a : {*k1, (order - *k1) % order}) {
            for (uint64_t b : {*k2, (order - *k2) % order}) {
                uint64_t s = static_cast<uint64_t>(static_cast<u128>(b) * inverse_mod(a, order) % order);
                if (field.pow(g, s) == h) {
                    res.success = true;
                    res.s = s;
                    return res;
                }
            }
        }
    }
    return res;
}

PartitionIdentity partition_identity(const std::vector<uint64_t> &c, uint64_t q) {
    if (c.size() > 20) throw std::invalid_argument("partition_identity: at most 20 entries");
    if (q == 0) throw std::invalid_argument("partition_identity: q must be positive");
    PartitionIdentity r;
    for (uint64_t kappa = 0; kappa < q; kappa++) {
        double prod = 1;
        for (uint64_t cj : c) {
            uint64_t v = static_cast<uint64_t>(static_cast<u128>(cj % q) * kappa % q);
            prod *= std::cos(2 * std::numbers::pi * static_cast<double>(v) / static_cast<double>(q));
        }
        r.lhs += prod;
    }
    r.lhs /= static_cast<double>(q);

    const uint64_t subsets = uint64_t{1} << c.size();
    uint64_t balanced = 0;
    for (uint64_t s = 0; s < subsets; s++) {
        // s·c ≡ s̄·c  ⇔  Σ ±c_j ≡ 0 (mod q)
        long long diff = 0;
        for (std::size_t j = 0; j < c.size(); j++) {
            long long v = static_cast<long long>(c[j] % q);
            diff += ((s >> j) & 1) ? v : -v;
        }
        balanced += ((diff % static_cast<long long>(q)) + static_cast<long long>(q)) % static_cast<long long>(q) == 0;
    }
    r.rhs = static_cast<double>(balanced) / static_cast<double>(subsets);
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

}  // namespace iqp
