#include "iqp/protocol.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "iqp/codes.hpp"
#include "iqp/rng.hpp"

namespace iqp {

GeneratedChallenge gen_challenge(uint64_t q, std::size_t extra_rows, uint64_t seed) {
    LinearCode code = qr_code(q);
    const std::size_t width = code.generator.cols();
    const std::size_t total = q + extra_rows;

    BitMatrix p(total, width + 1);
    for (std::size_t r = 0; r < q; r++) {
        for (std::size_t c = 0; c < width; c++) {
            p.set(r, c, code.generator.get(r, c));
        }
        p.set(r, width, true);
    }
    BitMatrix noise = random_bitmatrix(extra_rows, width, Rng(seed, "extra-rows").next());
    for (std::size_t r = 0; r < extra_rows; r++) {
        for (std::size_t c = 0; c < width; c++) {
            p.set(q + r, c, noise.get(r, c));
        }
    }

    // Fisher–Yates; order[i] is the original row now at position i.
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle(seed, "shuffle");
    for (std::size_t i = total; i > 1; i--) {
        std::swap(order[i - 1], order[shuffle.below(i)]);
    }
    BitMatrix shuffled = p.select_rows(order);

    GeneratedChallenge out;
    out.challenge.public_matrix = column_echelon(shuffled).reduced;
    out.challenge.q = q;
    BitVector indicator(total);
    for (std::size_t i = 0; i < total; i++) {
        if (order[i] < q) {
            out.secret.causal_rows.push_back(i);
            indicator.set(i, true);
        }
    }
    auto s = solve(out.challenge.public_matrix, indicator);
    if (!s) {
        throw std::logic_error("gen_challenge: causal indicator not in column space");
    }
    out.secret.s = *s;
    out.secret.seed = seed;
    out.secret.q = q;
    return out;
}

std::vector<BitVector> prove(const Challenge &c, std::size_t count, uint64_t seed, unsigned threads) {
    if (c.public_matrix.cols() > kMaxSimQubits) {
        throw SimulationBoundExceeded("simulation bound exceeded: challenge has " +
                                      std::to_string(c.public_matrix.cols()) + " columns, limit is " +
                                      std::to_string(kMaxSimQubits));
    }
    if (count == 0) {
        return {};
    }
    return xp_sample(c.program(), count, seed, threads);
}

const char *verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Accept:
            return "ACCEPT";
        case Verdict::Reject:
            return "REJECT";
        default:
            return "INCONCLUSIVE";
    }
}

double orthogonal_fraction(const std::vector<BitVector> &samples, const BitVector &s) {
    if (samples.empty()) return 0;
    std::size_t hits = 0;
    for (const auto &x : samples) {
        hits += !x.dot(s);
    }
    return static_cast<double>(hits) / static_cast<double>(samples.size());
}

Transcript verify(const std::vector<BitVector> &samples, const Secret &secret, const VerifyOptions &opts) {
    Transcript t;
    t.samples = samples;
    VerifyStatistics &st = t.statistics;
    st.raw = samples.size();

    const std::size_t n = secret.s.size();
    for (const auto &x : samples) {
        if (x.size() != n) {
            throw std::invalid_argument("verify: sample length " + std::to_string(x.size()) +
                                        " does not match secret length " + std::to_string(n));
        }
    }
    switch (opts.dedup) {
        case DedupPolicy::Always:
            st.deduplicated = true;
            break;
        case DedupPolicy::Never:
            st.deduplicated = false;
            break;
        case DedupPolicy::Automatic: {
            double n_samples = static_cast<double>(samples.size());
            st.deduplicated = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(n, 1000))) >= n_samples * n_samples;
            break;
        }
    }

    std::set<BitVector> seen;
    for (const auto &x : samples) {
        if (x.none()) {
            st.zeros_removed++;
            continue;
        }
        if (st.deduplicated && !seen.insert(x).second) {
            st.duplicates_removed++;
            continue;
        }
        st.filtered++;
        st.orthogonal += !x.dot(secret.s);
    }

    if (st.filtered > 0) {
        double f = static_cast<double>(st.orthogonal) / static_cast<double>(st.filtered);
        double nf = static_cast<double>(st.filtered);
        st.fraction = f;
        st.p_quantum = f < kQuantumBias ? std::exp(-2 * nf * (kQuantumBias - f) * (kQuantumBias - f)) : 1.0;
        st.p_classical = f > kClassicalBias ? std::exp(-2 * nf * (f - kClassicalBias) * (f - kClassicalBias)) : 1.0;
    }
    if (st.filtered < opts.min_samples) {
        t.verdict = Verdict::Inconclusive;
    } else {
        t.verdict = st.fraction >= opts.threshold ? Verdict::Accept : Verdict::Reject;
    }
    return t;
}

Transcript verify(const Challenge &c, const std::vector<BitVector> &samples, const Secret &secret,
                  const VerifyOptions &opts) {
    for (const auto &x : samples) {
        if (x.size() != c.public_matrix.cols()) {
            throw std::invalid_argument("verify: sample length does not match challenge width");
        }
    }
    Transcript t = verify(samples, secret, opts);
    t.challenge = c;
    return t;
}

double stat_distance(const Distribution &p, const Distribution &q, double norm) {
    if (p.probs.size() != q.probs.size()) {
        throw std::invalid_argument("stat_distance: domain mismatch");
    }
    Eigen::ArrayXd diff = (p.probs - q.probs).array().abs();
    if (std::isinf(norm)) {
        return diff.maxCoeff();
    }
    if (norm < 1) {
        throw std::invalid_argument("stat_distance: p must be at least 1");
    }
    return std::pow(diff.pow(norm).sum(), 1.0 / norm);
}

double mult_gap(const Distribution &p, const Distribution &q) {
    if (p.probs.size() != q.probs.size()) {
        throw std::invalid_argument("mult_gap: domain mismatch");
    }
    double gap = 0;
    for (Eigen::Index i = 0; i < p.probs.size(); i++) {
        bool a = p.probs(i) > 0;
        bool b = q.probs(i) > 0;
        if (a != b) return kInfinity;
        if (a) gap = std::max(gap, std::abs(std::log(p.probs(i)) - std::log(q.probs(i))));
    }
    return gap;
}

Distribution tensor(const Distribution &p, const Distribution &q) {
    // Outcome bits of p are the low bits.
    Distribution out{p.n + q.n, Eigen::VectorXd(p.probs.size() * q.probs.size())};
    for (Eigen::Index j = 0; j < q.probs.size(); j++) {
        out.probs.segment(j * p.probs.size(), p.probs.size()) = p.probs * q.probs(j);
    }
    return out;
}

double amplify_bound(double bias, std::size_t k) {
    if (std::abs(bias) > 1 || k % 2 == 0) {
        throw std::invalid_argument("amplify_bound: need |b| <= 1 and odd k");
    }
    return 1 - 2 * std::exp(-static_cast<double>(k) * bias * bias / 2);
}

std::size_t plan_samples(double gap, double max_error) {
    if (!(gap > 0 && gap < 1)) {
        throw std::invalid_argument("plan_samples: gap must lie in (0,1)");
    }
    auto tail = [&](std::size_t n) { return std::exp(-2.0 * static_cast<double>(n) * (gap / 2) * (gap / 2)); };
    if (max_error >= 1) return 0;
    auto n = static_cast<std::size_t>(std::ceil(std::log(1 / max_error) / (2 * (gap / 2) * (gap / 2))));
    while (n > 0 && tail(n - 1) <= max_error) n--;
    while (tail(n) > max_error) n++;
    return n;
}

}  // namespace iqp
