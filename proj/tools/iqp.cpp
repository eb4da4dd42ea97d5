// Command-line front end: challenge files, provers, verifier and demos.

#include <CLI11.hpp>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include "iqp/attack.hpp"
#include "iqp/codes.hpp"
#include "iqp/eigest.hpp"
#include "iqp/io.hpp"
#include "iqp/protocol.hpp"
#include "iqp/stab.hpp"

namespace {

constexpr int kErrorExit = 3;

uint64_t parse_hex(const std::string &s) {
    std::string v = s;
    if (v.rfind("0x", 0) == 0 || v.rfind("0X", 0) == 0) v = v.substr(2);
    if (v.empty() || v.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos || v.size() > 16) {
        throw std::invalid_argument("seed must be up to 16 hex digits, got '" + s + "'");
    }
    return std::stoull(v, nullptr, 16);
}

uint64_t parse_int(const std::string &s) {
    std::size_t used = 0;
    uint64_t v = std::stoull(s, &used, 0);
    if (used != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
    return v;
}

std::string fixed(double v, int digits = 6) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(digits) << v;
    return o.str();
}

std::string sci(double v) {
    std::ostringstream o;
    o << std::scientific << std::setprecision(3) << v;
    return o.str();
}

int cmd_gen(uint64_t q, std::optional<std::size_t> extra, const std::string &seed, const std::string &out) {
    uint64_t s = parse_hex(seed);
    iqp::GeneratedChallenge g = iqp::gen_challenge(q, extra.value_or(q), s);
    iqp::write_file(out + ".challenge", iqp::format_challenge(g.challenge));
    iqp::write_file(out + ".secret", iqp::format_secret(g.secret));
    std::cout << "wrote " << out << ".challenge (" << g.challenge.public_matrix.rows() << " x "
              << g.challenge.public_matrix.cols() << ") and " << out << ".secret\n";
    return 0;
}

int cmd_sample(bool honest, const std::string &challenge, std::size_t n, const std::string &seed,
               const std::string &out, unsigned threads) {
    iqp::Challenge c = iqp::parse_challenge(iqp::read_file(challenge));
    uint64_t s = parse_hex(seed);
    std::vector<iqp::BitVector> samples =
        honest ? iqp::prove(c, n, s, threads) : iqp::y_sample(c.program(), n, s, threads);
    iqp::write_file(out, iqp::format_samples(samples));
    std::cout << "wrote " << samples.size() << " samples to " << out << "\n";
    return 0;
}

int cmd_verify(const std::string &challenge, const std::string &secret, const std::string &samples,
               iqp::VerifyOptions opts) {
    iqp::Challenge c = iqp::parse_challenge(iqp::read_file(challenge));
    iqp::Secret s = iqp::parse_secret(iqp::read_file(secret));
    if (s.s.size() != c.public_matrix.cols()) {
        throw iqp::ParseError("secret length does not match challenge width");
    }
    auto xs = iqp::parse_samples(iqp::read_file(samples), c.public_matrix.cols());
    iqp::Transcript t = iqp::verify(c, xs, s, opts);
    const auto &st = t.statistics;
    std::cout << iqp::verdict_name(t.verdict) << "\n";
    std::cout << "samples            " << st.raw << "\n";
    std::cout << "zeros removed      " << st.zeros_removed << "\n";
    std::cout << "duplicates removed " << st.duplicates_removed << (st.deduplicated ? "" : " (dedup off)") << "\n";
    std::cout << "filtered           " << st.filtered << " (minimum " << opts.min_samples << ")\n";
    std::cout << "orthogonal         " << st.orthogonal << "\n";
    std::cout << "fraction           " << fixed(st.fraction) << " (threshold " << fixed(opts.threshold) << ")\n";
    std::cout << "p quantum          " << sci(st.p_quantum) << "\n";
    std::cout << "p classical        " << sci(st.p_classical) << "\n";
    switch (t.verdict) {
        case iqp::Verdict::Accept:
            return 0;
        case iqp::Verdict::Reject:
            return 1;
        default:
            return 2;
    }
}

int cmd_eigest(std::size_t n, const std::string &seed, double eps) {
    if (n < 1 || n > 20) throw std::invalid_argument("--n must lie in 1..20");
    uint64_t s = parse_hex(seed);
    std::vector<uint64_t> table(std::size_t{1} << n);
    std::iota(table.begin(), table.end(), 0);
    iqp::Rng rng(s, "eigest-demo-permutation");
    for (std::size_t i = table.size(); i > 1; i--) std::swap(table[i - 1], table[rng.below(i)]);
    iqp::Permutation f = iqp::Permutation::table(table);
    iqp::ControlSchedule sched = iqp::make_schedule(n, eps);
    iqp::SampledPhases sp = iqp::sample_bits(f, sched, s, true);
    iqp::BitVector bits = iqp::decode(sp.samples);
    iqp::Fraction est = iqp::cf_recover(iqp::decoded_numerator(bits), bits.size(), uint64_t{1} << n);
    const auto &h = *sp.hidden;
    uint64_t g = std::gcd(h.kappa, h.q);
    iqp::Fraction truth{h.kappa / g, h.q / g};
    bool ok = est == truth || (est.den == truth.den && (est.num + truth.num) % truth.den == 0);
    auto [e1, e2] = iqp::error_budget(sched, iqp::kDefaultEta);
    std::cout << "schedule t=" << sched.t << " d=" << sched.d << " k=" << sched.k << " m=" << sched.size() << "\n";
    std::cout << "error budget " << sci(e1) << " (threshold) " << sci(e2) << " (zoom)\n";
    std::cout << "decoded bits " << bits.to_string() << "\n";
    std::cout << "RESULT recovered=" << (ok ? "true" : "false") << " estimate=" << est.num << "/" << est.den
              << " truth=" << truth.num << "/" << truth.den << "\n";
    return ok ? 0 : 1;
}

int cmd_dlog(std::size_t n, const std::string &g_text, const std::string &h_text, const std::string &seed) {
    iqp::BinaryField field(n);
    uint64_t g = parse_int(g_text);
    uint64_t h = parse_int(h_text);
    iqp::DlogResult r = iqp::dlog_demo(n, g, h, parse_hex(seed));
    std::cout << "field modulus 0x" << std::hex << field.modulus() << std::dec << ", group order " << field.order()
              << "\n";
    std::cout << "controlled multipliers " << r.distinct_controls << ", row operations " << r.synthesis_ops
              << " (max " << r.max_synthesis_ops << " per multiplier)\n";
    std::cout << "RESULT success=" << (r.success ? "true" : "false") << " s=" << r.s << " attempts=" << r.attempts
              << "\n";
    return r.success ? 0 : 1;
}

iqp::CliffordCircuit parse_cnot_circuit(const std::string &text, std::size_t width) {
    iqp::CliffordCircuit c{width, {}};
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        line = line.substr(0, line.find('#'));
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;
        std::size_t a, b;
        std::string rest;
        if (op != "cnot" || !(ls >> a >> b) || (ls >> rest) || a >= width || b >= width || a == b) {
            throw iqp::ParseError("circuit line " + std::to_string(lineno) + ": expected 'cnot <c> <t>' with distinct indices below " +
                                  std::to_string(width));
        }
        c.cnot(a, b);
    }
    return c;
}

int cmd_dqc1(const std::string &circuit, const std::string &x_text) {
    iqp::BitVector x = iqp::BitVector::from_string(x_text);
    iqp::CliffordCircuit c = parse_cnot_circuit(iqp::read_file(circuit), x.size());
    iqp::CliffordCircuit w = iqp::dqc1_build(c, x);
    int bias = iqp::dqc1_bias(w);
    iqp::BitVector y = iqp::evaluate_cnot_circuit(c, x);
    std::cout << "data qubits " << x.size() << ", circuit gates " << c.gates.size() << ", W gates " << w.gates.size()
              << "\n";
    std::cout << "C(x) = " << y.to_string() << "\n";
    std::cout << "RESULT bias=" << bias << " s2=" << y.get(0) << "\n";
    return 0;
}

int cmd_clock(std::size_t cells) {
    if (cells < 2) throw std::invalid_argument("--cells must be at least 2");
    iqp::BitMatrix a = iqp::line_graph(cells);
    bool reversal = iqp::is_block_reversal(iqp::clock_power(a, cells + 1));
    std::size_t period = iqp::clock_period(a, 8 * (cells + 1));
    std::cout << "line of " << cells << " cells" << (cells % 3 == 2 ? "" : " (not of the form 3n+2)") << "\n";
    std::cout << "RESULT reversal=" << (reversal ? "true" : "false") << " period=" << period << "\n";
    return 0;
}

int cmd_code_info(uint64_t q) {
    iqp::LinearCode c = iqp::qr_code(q);
    std::cout << "quadratic residue code, length " << c.length << "\n";
    std::cout << "generator support " << iqp::qr_indicator(q).to_string() << "\n";
    std::size_t g = iqp::gram_rank(c.generator);
    double bias = iqp::code_bias(c, std::numbers::pi / 8);
    double classical = 0.5 * (1 + std::ldexp(1.0, -static_cast<int>(g)));
    auto wd = iqp::weight_distribution(c);
    std::cout << "weights";
    for (std::size_t w = 0; w < wd.size(); w++) {
        if (wd[w]) std::cout << " " << w << ":" << wd[w];
    }
    std::cout << "\n";
    std::cout << "doubly even " << (iqp::is_doubly_even(c) ? "yes" : "no") << ", gram rank " << g << "\n";
    std::cout << "RESULT rank=" << c.rank << " bias=" << fixed(bias) << " classical=" << fixed(classical) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"IQP challenge protocol and supporting algorithms"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "worker threads for sampling")->check(CLI::Range(1u, 256u));

    int rc = 0;
    auto guarded = [&rc](auto fn) {
        return [&rc, fn] {
            try {
                rc = fn();
            } catch (const std::exception &e) {
                std::cerr << "error: " << e.what() << "\n";
                rc = kErrorExit;
            }
        };
    };

    uint64_t q = 0;
    std::optional<std::size_t> extra;
    std::string seed = "0", out, challenge, secret, samples;
    std::size_t count = 0;

    auto *gen = app.add_subcommand("gen", "generate a challenge and its secret");
    gen->add_option("--q", q, "prime with 8 | q+1")->required();
    gen->add_option("--extra", extra, "random rows appended (default q)");
    gen->add_option("--seed", seed, "hex seed");
    gen->add_option("--out", out, "output prefix")->required();
    gen->callback(guarded([&] { return cmd_gen(q, extra, seed, out); }));

    for (bool honest : {true, false}) {
        auto *sub = app.add_subcommand(honest ? "prove" : "attack",
                                       honest ? "sample the challenge program" : "classical second-derivative sampler");
        sub->add_option("--challenge", challenge)->required();
        sub->add_option("--n", count, "number of samples")->required();
        sub->add_option("--seed", seed, "hex seed");
        sub->add_option("--out", out)->required();
        sub->callback(guarded([&, honest] { return cmd_sample(honest, challenge, count, seed, out, threads); }));
    }

    iqp::VerifyOptions vopts;
    std::string dedup = "auto";
    auto *ver = app.add_subcommand("verify", "test samples against the secret");
    ver->add_option("--challenge", challenge)->required();
    ver->add_option("--secret", secret)->required();
    ver->add_option("--samples", samples)->required();
    ver->add_option("--threshold", vopts.threshold, "acceptance threshold on the orthogonal fraction");
    ver->add_option("--min-samples", vopts.min_samples, "minimum filtered sample count");
    ver->add_option("--dedup", dedup, "always, never or auto")->check(CLI::IsMember({"always", "never", "auto"}));
    ver->callback(guarded([&] {
        vopts.dedup = dedup == "always" ? iqp::DedupPolicy::Always
                      : dedup == "never" ? iqp::DedupPolicy::Never
                                         : iqp::DedupPolicy::Automatic;
        return cmd_verify(challenge, secret, samples, vopts);
    }));

    std::size_t bits = 0;
    double eps = 0.05;
    auto *eig = app.add_subcommand("eigest-demo", "eigenphase estimation on a random permutation");
    eig->add_option("--n", bits, "bits per point")->required();
    eig->add_option("--seed", seed, "hex seed");
    eig->add_option("--eps", eps, "target failure probability");
    eig->callback(guarded([&] { return cmd_eigest(bits, seed, eps); }));

    std::string g_text, h_text;
    auto *dl = app.add_subcommand("dlog-demo", "discrete logarithm in the multiplicative group of F_2^n");
    dl->set_help_flag("--help", "Print this help message and exit");
    dl->add_option("--n", bits, "field degree")->required();
    dl->add_option("--g", g_text, "generator, as an integer bit mask")->required();
    dl->add_option("--h", h_text, "target element")->required();
    dl->add_option("--seed", seed, "hex seed");
    dl->callback(guarded([&] { return cmd_dlog(bits, g_text, h_text, seed); }));

    std::string circuit, x_text;
    auto *dq = app.add_subcommand("dqc1-demo", "one-clean-qubit evaluation of a CNOT circuit");
    dq->add_option("--circuit", circuit, "file of 'cnot <c> <t>' lines")->required();
    dq->add_option("--x", x_text, "input bit string")->required();
    dq->callback(guarded([&] { return cmd_dqc1(circuit, x_text); }));

    std::size_t cells = 0;
    auto *clk = app.add_subcommand("clock-check", "clock dynamics on a line");
    clk->add_option("--cells", cells)->required();
    clk->callback(guarded([&] { return cmd_clock(cells); }));

    auto *ci = app.add_subcommand("code-info", "quadratic residue code statistics");
    ci->add_option("--q", q)->required();
    ci->callback(guarded([&] { return cmd_code_info(q); }));

    CLI11_PARSE(app, argc, argv);
    return rc;
}
