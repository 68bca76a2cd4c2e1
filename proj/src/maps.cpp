#include "upw/maps.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace upw {

namespace {

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    return a / std::gcd(a, b) * b;
}

// Pair tag at a position where not all three words agree: 0 iff x = y,
// 1 iff x = z, 2 iff y = z. Over alphabet 2 exactly one case holds.
int pair_tag(Symbol bx, Symbol by, Symbol bz) {
    if (bx == by) return 0;
    if (bx == bz) return 1;
    if (by == bz) return 2;
    throw std::logic_error("pair_tag: impossible over alphabet 2");
}

}  // namespace

UPWord p_e0(const UPWord& x, const UPWord& y, const UPWord& z, std::uint64_t max_steps) {
    if (x.alphabet() != 2 || y.alphabet() != 2 || z.alphabet() != 2)
        throw std::invalid_argument("p_e0: alphabet-2 inputs required");
    if (!tuple_ok({x, y, z}, Rel::E0))
        throw std::domain_error("p_e0: inputs must be pairwise E0-inequivalent");

    const std::uint64_t max_pre =
        std::max({x.preamble_size(), y.preamble_size(), z.preamble_size()});
    const std::uint64_t joint =
        lcm_u64(lcm_u64(x.period_size(), y.period_size()), z.period_size());

    const auto differs = [&](int tag, std::uint64_t n) {
        switch (tag) {
            case 0: return x.at(n) != y.at(n);
            case 1: return x.at(n) != z.at(n);
            default: return y.at(n) != z.at(n);
        }
    };
    // Pairwise E0-inequivalence puts a difference of each pair in every
    // window of one joint period beyond the preambles.
    const auto next_diff = [&](int tag, std::uint64_t from) {
        const std::uint64_t bound = std::max(from, max_pre) + joint + 1;
        for (std::uint64_t n = from; n <= bound; ++n)
            if (differs(tag, n)) return n;
        throw std::logic_error("p_e0: difference scan failed");
    };

    std::uint64_t pos = 0;
    while (x.at(pos) == y.at(pos) && x.at(pos) == z.at(pos)) ++pos;  // L_0
    int tag = pair_tag(x.at(pos), y.at(pos), z.at(pos));

    std::vector<Symbol> digits{static_cast<Symbol>(tag)};
    std::map<std::pair<std::uint64_t, int>, std::size_t> seen;
    while (digits.size() <= max_steps) {
        if (pos >= max_pre) {
            const auto key = std::make_pair((pos - max_pre) % joint, tag);
            const auto it = seen.find(key);
            if (it != seen.end()) {
                const std::size_t split = it->second;
                std::vector<Symbol> pre(digits.begin(),
                                        digits.begin() + static_cast<std::ptrdiff_t>(split));
                std::vector<Symbol> per(digits.begin() + static_cast<std::ptrdiff_t>(split),
                                        digits.end() - 1);
                return UPWord(3, std::move(pre), std::move(per));
            }
            seen.emplace(key, digits.size() - 1);
        }
        pos = next_diff(tag, pos + 1);
        tag = pair_tag(x.at(pos), y.at(pos), z.at(pos));
        digits.push_back(static_cast<Symbol>(tag));
    }
    throw BudgetExhausted("p_e0: state budget exceeded");
}

bool in_alternating_A(const UPWord& v) {
    const std::uint64_t bound = v.preamble_size() + 2 * v.period_size() + 1;
    for (std::uint64_t n = 0; n < bound; ++n)
        if (v.at(n) == v.at(n + 1)) return false;
    return true;
}

std::array<UPWord, 3> p_e0_preimage(const UPWord& v, const E0Tree& p) {
    if (v.alphabet() != 3 || !in_alternating_A(v))
        throw std::domain_error("p_e0_preimage: v must alternate (no equal neighbours)");
    const auto component = [&](const std::vector<Symbol>& src, bool first) {
        std::vector<Symbol> out(src.size());
        for (std::size_t i = 0; i < src.size(); ++i) {
            // (a_i, b_i) = (0,1), (1,0), (1,1) as v(i) = 0, 1, 2
            const Symbol a = src[i] == 0 ? 0 : 1;
            const Symbol b = src[i] == 1 ? 0 : 1;
            out[i] = first ? a : b;
        }
        return out;
    };
    const UPWord a(2, component(v.preamble(), true), component(v.period(), true));
    const UPWord b(2, component(v.preamble(), false), component(v.period(), false));
    return {e0_phi(p, UPWord::constant(0)), e0_phi(p, a), e0_phi(p, b)};
}

UPWord q_prime(const UPWord& w) {
    if (w.alphabet() != 3) throw std::invalid_argument("q_prime: alphabet-3 input required");
    static const std::vector<Symbol> kBlocks[3] = {{0, 0}, {0, 1}, {1, 0}};
    const auto encode = [&](const std::vector<Symbol>& src) {
        std::vector<Symbol> out;
        out.reserve(2 * src.size());
        for (Symbol s : src) {
            out.push_back(kBlocks[s][0]);
            out.push_back(kBlocks[s][1]);
        }
        return out;
    };
    return UPWord(2, encode(w.preamble()), encode(w.period()));
}

// --- Q'': walking the image tree of Q' over alternating words -------------------

namespace {

constexpr Symbol kQBlock[3][2] = {{0, 0}, {0, 1}, {1, 0}};

// Stream decoder for the tree of Q'-images: prev is the previously decoded
// symbol (3 = none), phase marks the position inside the current 2-block.
struct QWalk {
    int prev = 3;
    int phase = 0;
    Symbol pending = 0;

    // Feeds one symbol; appends emitted branch bits to `out`. Returns false
    // when the word provably leaves the image tree.
    bool feed(Symbol c, std::vector<Symbol>* out) {
        if (phase == 0) {
            bool first[2] = {false, false};
            for (int t = 0; t < 3; ++t)
                if (t != prev) first[kQBlock[t][0]] = true;
            if (first[0] && first[1]) {
                if (out) out->push_back(c);
            } else {
                const Symbol forced = first[1] ? 1 : 0;
                if (c != forced) return false;
            }
            pending = c;
            phase = 1;
            return true;
        }
        int cand[2];
        int n = 0;
        for (int t = 0; t < 3; ++t)
            if (t != prev && kQBlock[t][0] == pending) cand[n++] = t;
        if (n == 0) return false;
        if (n == 2) {
            if (out) out->push_back(c);
            prev = kQBlock[cand[0]][1] == c ? cand[0] : cand[1];
        } else {
            if (kQBlock[cand[0]][1] != c) return false;
            prev = cand[0];
        }
        phase = 0;
        return true;
    }

    // Next symbol when the walk is forced here; nullopt when branching.
    std::optional<Symbol> forced_next() const {
        if (phase == 0) {
            bool first[2] = {false, false};
            for (int t = 0; t < 3; ++t)
                if (t != prev) first[kQBlock[t][0]] = true;
            if (first[0] && first[1]) return std::nullopt;
            return first[1] ? Symbol{1} : Symbol{0};
        }
        int cand[2];
        int n = 0;
        for (int t = 0; t < 3; ++t)
            if (t != prev && kQBlock[t][0] == pending) cand[n++] = t;
        if (n == 2) return std::nullopt;
        return kQBlock[cand[0]][1];
    }
};

}  // namespace

UPWord q_double_prime(const UPWord& u) {
    if (u.alphabet() != 2) throw std::invalid_argument("q_double_prime: alphabet-2 input");
    QWalk walk;
    std::vector<Symbol> emitted;
    std::map<std::pair<std::uint64_t, int>, std::size_t> seen;  // (phase, prev) -> #emitted
    std::uint64_t pos = 0;
    while (true) {
        if (walk.phase == 0 && pos >= u.preamble_size()) {
            const auto key =
                std::make_pair((pos - u.preamble_size()) % u.period_size(), walk.prev);
            const auto it = seen.find(key);
            if (it != seen.end()) {
                std::vector<Symbol> pre(emitted.begin(),
                                        emitted.begin() + static_cast<std::ptrdiff_t>(it->second));
                std::vector<Symbol> per(emitted.begin() + static_cast<std::ptrdiff_t>(it->second),
                                        emitted.end());
                return UPWord(2, std::move(pre), std::move(per));
            }
            seen.emplace(key, emitted.size());
        }
        if (!walk.feed(u.at(pos), &emitted))
            throw std::domain_error("q_double_prime: input leaves the image tree at position " +
                                    std::to_string(pos));
        ++pos;
    }
}

std::optional<FiniteWord> q_image_emit(const FiniteWord& u) {
    QWalk walk;
    std::vector<Symbol> emitted;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!walk.feed(u.at(i), &emitted)) return std::nullopt;
    return FiniteWord(2, std::move(emitted));
}

FiniteWord q_encode(const FiniteWord& w) {
    QWalk walk;
    std::vector<Symbol> node;
    std::size_t consumed = 0;
    while (consumed < w.size()) {
        const auto forced = walk.forced_next();
        const Symbol c = forced ? *forced : w.at(consumed);
        if (!forced) ++consumed;
        std::vector<Symbol> sink;
        walk.feed(c, &sink);
        node.push_back(c);
    }
    return FiniteWord(2, std::move(node));
}

std::vector<FiniteWord> q_image_level(std::size_t length) {
    struct Item {
        QWalk walk;
        std::vector<Symbol> word;
    };
    std::vector<Item> frontier{{QWalk{}, {}}};
    for (std::size_t step = 0; step < length; ++step) {
        std::vector<Item> next;
        for (const Item& item : frontier) {
            for (Symbol c : {0, 1}) {
                Item candidate = item;
                if (candidate.walk.feed(c, nullptr)) {
                    candidate.word.push_back(c);
                    next.push_back(std::move(candidate));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<FiniteWord> out;
    out.reserve(frontier.size());
    for (Item& item : frontier) out.emplace_back(2, std::move(item.word));
    return out;
}

UPWord q_e0(const UPWord& x, const UPWord& y, const UPWord& z) {
    return q_double_prime(q_prime(p_e0(x, y, z)));
}

UPWord p_prime_e0(const UPWord& x, const UPWord& y, const UPWord& z) {
    const UPWord alternating01(3, {}, {0, 1});
    if (!tuple_ok({x, y, z}, Rel::E0)) return alternating01;
    UPWord w = p_e0(x, y, z);
    const bool twos_forever =
        std::any_of(w.period().begin(), w.period().end(), [](Symbol s) { return s == 2; });
    return twos_forever ? w : alternating01;
}

UPWord k_e0(const UPWord& x, const UPWord& y, const UPWord& z) {
    return q_prime(p_prime_e0(x, y, z));
}

// --- tail reductions -----------------------------------------------------------

UPWord oplus_reduction(const UPWord& x) {
    if (x.alphabet() != 2) throw std::invalid_argument("oplus_reduction: alphabet-2 input");
    return interleave(x, UPWord::constant(2, 3));
}

UPWord block_reduction(const UPWord& x) {
    if (x.alphabet() != 2) throw std::invalid_argument("block_reduction: alphabet-2 input");
    static const std::vector<Symbol> kGlue = {2, 0, 1, 2, 1, 0, 2};
    const auto encode = [&](const std::vector<Symbol>& src) {
        std::vector<Symbol> out;
        out.reserve(8 * src.size());
        for (Symbol s : src) {
            out.push_back(s);
            out.insert(out.end(), kGlue.begin(), kGlue.end());
        }
        return out;
    };
    return UPWord(3, encode(x.preamble()), encode(x.period()));
}

// --- P for E2 ----------------------------------------------------------------------

ThetaSeq ThetaSeq::paper() {
    ThetaSeq t;
    t.paper_ = true;
    t.spec_ = "paper";
    return t;
}

ThetaSeq ThetaSeq::list(std::vector<Rational> values) {
    if (values.empty()) throw std::invalid_argument("ThetaSeq: empty list");
    ThetaSeq t;
    t.values_ = std::move(values);
    std::string spec;
    for (std::size_t i = 0; i < t.values_.size(); ++i) {
        if (i) spec += ",";
        spec += t.values_[i].str();
    }
    t.spec_ = spec;
    return t;
}

ThetaSeq ThetaSeq::parse(const std::string& spec) {
    if (spec == "paper") return paper();
    std::vector<Rational> values;
    std::size_t start = 0;
    while (start <= spec.size()) {
        auto comma = spec.find(',', start);
        if (comma == std::string::npos) comma = spec.size();
        const auto r = Rational::parse(spec.substr(start, comma - start));
        if (!r || !(*r > Rational(0)))
            throw std::invalid_argument("theta spec: positive rationals required: " + spec);
        values.push_back(*r);
        start = comma + 1;
    }
    return list(std::move(values));
}

std::optional<Rational> ThetaSeq::at(std::size_t m) const {
    if (paper_) return Rational::pow3(static_cast<unsigned>(m) + 2);
    if (m < values_.size()) return values_[m];
    return std::nullopt;
}

bool ThetaSeq::valid_growth(std::size_t levels) const {
    for (std::size_t n = 0; n + 1 < levels; ++n) {
        const auto cur = at(n);
        const auto next = at(n + 1);
        if (!cur || !next) return false;
        if (!(*cur * Rational(1, 2) + Rational(3, 2) <= *next)) return false;
    }
    return true;
}

namespace {

PE2Result p_e2_core(const SymbolAt& fx, const SymbolAt& fy, const SymbolAt& fz,
                    const ThetaSeq& theta, std::size_t digit_count, std::uint64_t scan_cap) {
    PE2Result result;
    result.landmarks.push_back(0);
    std::uint64_t level_start = 0;
    for (std::size_t n = 0; n < digit_count; ++n) {
        const auto theta_n = theta.at(n);
        if (!theta_n) throw std::invalid_argument("p_e2: theta list exhausted at digit " +
                                                  std::to_string(n));
        Rational sum[3];
        bool crossed[3] = {false, false, false};
        std::uint64_t k = level_start;
        while (true) {
            if (k >= scan_cap)
                throw BudgetExhausted("p_e2: scan cap reached for digit " + std::to_string(n) +
                                      " at position " + std::to_string(k));
            const auto sx = fx(k), sy = fy(k), sz = fz(k);
            if (!sx || !sy || !sz)
                throw BudgetExhausted("p_e2: input data exhausted for digit " +
                                      std::to_string(n) + " at position " + std::to_string(k));
            const Rational term = Rational::inv_succ(k);
            if (*sx != *sy) sum[0] += term;
            if (*sx != *sz) sum[1] += term;
            if (*sy != *sz) sum[2] += term;
            bool any = false;
            for (int p = 0; p < 3; ++p) {
                crossed[p] = sum[p] > *theta_n;
                any = any || crossed[p];
            }
            if (any) break;
            ++k;
        }
        // S-values tie-break exactly as the three-case digit rule: the pairs
        // crossing at this same position are known, all others are larger.
        Symbol digit;
        if (crossed[0])
            digit = 0;
        else if (crossed[1])
            digit = 1;
        else
            digit = 2;
        result.digits.push_back(digit);
        level_start = k + 1;
        result.landmarks.push_back(level_start);
    }
    result.modulus = level_start;
    return result;
}

SymbolAt upword_at(const UPWord& w) {
    return [&w](std::uint64_t n) { return std::optional<Symbol>(w.at(n)); };
}

SymbolAt finite_at(const FiniteWord& w) {
    return [&w](std::uint64_t n) -> std::optional<Symbol> {
        if (n >= w.size()) return std::nullopt;
        return w.at(static_cast<std::size_t>(n));
    };
}

}  // namespace

PE2Result p_e2(const UPWord& x, const UPWord& y, const UPWord& z, const ThetaSeq& theta,
               std::size_t digit_count, std::uint64_t scan_cap) {
    if (!tuple_ok({x, y, z}, Rel::E2))
        throw std::domain_error("p_e2: inputs must be pairwise E2-inequivalent");
    return p_e2_core(upword_at(x), upword_at(y), upword_at(z), theta, digit_count, scan_cap);
}

PE2Result p_e2(const FiniteWord& x, const FiniteWord& y, const FiniteWord& z,
               const ThetaSeq& theta, std::size_t digit_count, std::uint64_t scan_cap) {
    return p_e2_core(finite_at(x), finite_at(y), finite_at(z), theta, digit_count, scan_cap);
}

namespace {

// Rational upper bound on sum_{lo <= i < hi} 1/(i+1) by doubling chunks:
// each chunk [c, 2c) contributes at most c/(c+1) < 1.
Rational harmonic_upper_bound(std::uint64_t lo, std::uint64_t hi) {
    Rational bound;
    std::uint64_t c = lo;
    while (c < hi) {
        const std::uint64_t end = std::min<std::uint64_t>(hi, c == 0 ? 1 : 2 * c);
        bound += Rational(static_cast<long>(end - c)) * Rational::inv_succ(c);
        c = end;
    }
    return bound;
}

// Per-step exact scans stay affordable up to a few tens of thousands of
// rational additions; beyond that the landmark is out of desk range.
constexpr std::uint64_t kExactScanSteps = 20000;

struct LandmarkOutcome {
    std::optional<std::uint64_t> next;  // N_{n+1} when found
    Rational harmonic_window;           // exact harmonic sum over [N_n, N_{n+1})
    Rational cap_bound;                 // certified upper bound when exhausted
};

// Exact landmark search: N_{n+1} = min{ k : sum_{N_n <= i < k}
// (1/(i+1) - 2^-(i+2)) > theta_n }. When the chunked harmonic bound shows
// the sum cannot pass theta_n before the cap, exhaustion is certified
// without scanning; a scan that would need more than kExactScanSteps exact
// additions is refused loudly rather than approximated.
LandmarkOutcome landmark_scan(std::uint64_t n_cur, const Rational& theta_n,
                              std::uint64_t scan_cap) {
    LandmarkOutcome out;
    const Rational bound = harmonic_upper_bound(n_cur, scan_cap);
    if (bound <= theta_n) {
        out.cap_bound = bound;
        return out;
    }
    Rational sum;
    Rational harmonic;
    std::uint64_t i = n_cur;
    while (true) {
        if (i >= scan_cap || i - n_cur >= kExactScanSteps)
            throw BudgetExhausted("landmark scan: exact-step budget reached at position " +
                                  std::to_string(i));
        const Rational h = Rational::inv_succ(i);
        harmonic += h;
        sum += h - Rational::pow2_neg(static_cast<unsigned>(i) + 2);
        if (sum > theta_n) break;
        ++i;
    }
    out.next = i + 1;
    out.harmonic_window = harmonic;
    return out;
}

}  // namespace

std::vector<std::uint64_t> e2_witness_landmarks(std::size_t count, const ThetaSeq& theta,
                                                std::uint64_t scan_cap) {
    std::vector<std::uint64_t> n_seq{0};
    for (std::size_t n = 0; n < count; ++n) {
        const auto theta_n = theta.at(n);
        if (!theta_n)
            throw std::invalid_argument("landmarks: theta list exhausted at level " +
                                        std::to_string(n));
        const LandmarkOutcome lm = landmark_scan(n_seq.back(), *theta_n, scan_cap);
        if (!lm.next)
            throw BudgetExhausted("landmarks: level " + std::to_string(n) +
                                  " lies beyond the scan cap");
        n_seq.push_back(*lm.next);
    }
    return n_seq;
}

E2MapRef E2MapRef::of(const E2Tree& t) {
    return {t.levels(), t.m(), [&t](const FiniteWord& s) { return e2_phi(t, s); }};
}

E2MapRef E2MapRef::of(const E2Scheme& s) {
    return {s.levels(), s.m(), [&s](const FiniteWord& w) { return s.image(w); }};
}

namespace {

Symbol sigma_symbol(Symbol vn, std::uint64_t offset) {
    // sigma_n = 1~ when v(n) = 0, else (01)~ truncated
    if (vn == 0) return 1;
    return offset % 2 == 0 ? 0 : 1;
}

Symbol tau_symbol(Symbol vn, std::uint64_t offset) {
    // tau_n = 1~ when v(n) = 1, else (10)~ truncated
    if (vn == 1) return 1;
    return offset % 2 == 0 ? 1 : 0;
}

}  // namespace

E2WitnessResult p_e2_witness(const FiniteWord& v, const E2MapRef& map, const ThetaSeq& theta,
                             std::uint64_t scan_cap) {
    Certificate cert("e2-surjectivity-witness");
    cert.set_input("v", v.digits());
    cert.set_param("theta", theta.spec());
    cert.set_param("tree_levels", static_cast<std::int64_t>(map.levels));
    cert.set_param("scan_cap", static_cast<std::int64_t>(scan_cap));

    // Landmarks N_0 < N_1 < ... while the scan budget lasts.
    std::vector<std::uint64_t> n_seq{0};
    std::size_t levels_known = 0;
    for (std::size_t n = 0; n < v.size(); ++n) {
        const auto theta_n = theta.at(n);
        if (!theta_n) throw std::invalid_argument("p_e2_witness: theta list exhausted");
        const LandmarkOutcome lm = landmark_scan(n_seq.back(), *theta_n, scan_cap);
        if (!lm.next) {
            // Certified exhaustion: the harmonic sum alone (an upper bound
            // for the defining sum) stays at or below theta over the whole
            // scanned range, so the landmark lies beyond the cap.
            cert.check_le("level " + std::to_string(n) +
                              ": landmark beyond scan cap; upper bound of the defining sum over"
                              " [N_n, cap)",
                          lm.cap_bound, *theta_n);
            break;
        }
        n_seq.push_back(*lm.next);
        levels_known = n + 1;
        // Inequality (1): the harmonic window is below theta_n + 1.
        cert.check_lt("inequality (1) level " + std::to_string(n) + ": harmonic window [N_" +
                          std::to_string(n) + ", N_" + std::to_string(n + 1) + ")",
                      lm.harmonic_window, *theta_n + Rational(1));
    }

    // Tree inputs: x = 0~, y and z from the sigma/tau tables, truncated at
    // the tree depth.
    const std::size_t K = map.levels;
    std::vector<Symbol> xs(K, 0), ys(K, 0), zs(K, 0);
    for (std::size_t n = 0; n < levels_known && n < v.size(); ++n) {
        for (std::uint64_t i = n_seq[n]; i < n_seq[n + 1] && i < K; ++i) {
            ys[static_cast<std::size_t>(i)] = sigma_symbol(v.at(n), i - n_seq[n]);
            zs[static_cast<std::size_t>(i)] = tau_symbol(v.at(n), i - n_seq[n]);
        }
    }
    E2WitnessResult out{FiniteWord(2, xs), FiniteWord(2, ys), FiniteWord(2, zs), std::move(cert),
                        0};

    std::size_t certifiable = 0;
    for (std::size_t n = 0; n < levels_known; ++n) {
        if (n_seq[n + 1] <= K) {
            certifiable = n + 1;
        } else {
            out.cert.record({"level " + std::to_string(n) + " skipped: tree depth " +
                                 std::to_string(K) + " below landmark N_" + std::to_string(n + 1) +
                                 " = " + std::to_string(n_seq[n + 1]) + " [eq]",
                             "skipped", "skipped", true});
            break;
        }
    }
    if (certifiable == 0) return out;

    const FiniteWord ix = map.image(out.x);
    const FiniteWord iy = map.image(out.y);
    const FiniteWord iz = map.image(out.z);

    PE2Result scan;
    try {
        scan = p_e2(ix, iy, iz, theta, certifiable, map.m[K] + 1);
    } catch (const BudgetExhausted& e) {
        out.cert.record({std::string("image digit scan exhausted: ") + e.what() + " [eq]",
                         "exhausted", "exhausted", true});
        return out;
    }

    for (std::size_t n = 0; n < certifiable; ++n) {
        const Rational theta_n = *theta.at(n);
        const std::uint64_t wlo = map.m[static_cast<std::size_t>(n_seq[n])];
        const std::uint64_t whi = map.m[static_cast<std::size_t>(n_seq[n + 1])];
        const std::string lvl = "level " + std::to_string(n);
        // Pair roles: the all-differ pair carries the big window sum.
        const FiniteWord* big_a = &ix;
        const FiniteWord* big_b = &iy;
        const FiniteWord* oth_a1 = &ix;
        const FiniteWord* oth_b1 = &iz;
        const FiniteWord* oth_a2 = &iy;
        const FiniteWord* oth_b2 = &iz;
        if (v.at(n) == 1) {
            big_b = &iz;
            oth_b1 = &iy;
            oth_a2 = &iy;
            oth_b2 = &iz;
        } else if (v.at(n) == 2) {
            big_a = &iy;
            big_b = &iz;
            oth_a1 = &ix;
            oth_b1 = &iy;
            oth_a2 = &ix;
            oth_b2 = &iz;
        }
        const Rational big = delta_window(wlo, whi, *big_a, *big_b);
        out.cert.check_gt("inequality (2) " + lvl + ": zeta over [m_N, m_N') of the split pair",
                          big, theta_n);
        out.cert.check_lt("inequality (3) " + lvl + ": same window upper bound", big,
                          theta_n + Rational(3, 2));
        const Rational half_bound = theta_n * Rational(1, 2) + Rational(3, 2);
        out.cert.check_lt("inequality (4a) " + lvl,
                          delta_window(wlo, whi, *oth_a1, *oth_b1), half_bound);
        out.cert.check_lt("inequality (4b) " + lvl,
                          delta_window(wlo, whi, *oth_a2, *oth_b2), half_bound);
        // Induction checks (I)-(III) of the landmark/digit argument.
        const std::uint64_t Ln1 = scan.landmarks[n + 1];
        out.cert.check_lt("(I) " + lvl + ": m_{N_n} < L_{n+1}",
                          Rational(static_cast<long>(wlo)), Rational(static_cast<long>(Ln1)));
        out.cert.check_le("(I) " + lvl + ": L_{n+1} <= m_{N_{n+1}}",
                          Rational(static_cast<long>(Ln1)), Rational(static_cast<long>(whi)));
        out.cert.check_eq("(II) " + lvl + ": image digit equals v(n)",
                          std::to_string(int(scan.digits[n])), std::to_string(int(v.at(n))));
        const Rational tail_x_y = delta_window(Ln1, whi, ix, iy);
        const Rational tail_x_z = delta_window(Ln1, whi, ix, iz);
        const Rational tail_y_z = delta_window(Ln1, whi, iy, iz);
        const Rational tail_max = std::max({tail_x_y, tail_x_z, tail_y_z});
        out.cert.check_lt("(III) " + lvl + ": max zeta from L_{n+1} to m_{N_{n+1}}", tail_max,
                          half_bound);
    }
    out.levels_certified = certifiable;
    return out;
}

// --- omega-Jonsson machinery ---------------------------------------------------------

namespace {

// Longest common prefix of >= 2 distinct canonical words.
FiniteWord lcp(const std::vector<const UPWord*>& words) {
    std::uint64_t cut = UINT64_MAX;
    for (std::size_t i = 1; i < words.size(); ++i) {
        const auto d = first_difference(*words[0], *words[i]);
        if (d) cut = std::min(cut, *d);
    }
    if (cut == UINT64_MAX) throw std::logic_error("lcp: all words equal");
    return words[0]->prefix(static_cast<std::size_t>(cut));
}

void psi_build(const std::vector<const UPWord*>& s, const FiniteWord& sigma,
               std::set<FiniteWord>* nodes) {
    if (s.size() < 2) return;
    nodes->insert(sigma);
    const FiniteWord a = lcp(s);
    for (Symbol i : {0, 1}) {
        std::vector<const UPWord*> sub;
        for (const UPWord* w : s)
            if (w->at(a.size()) == i) sub.push_back(w);
        psi_build(sub, sigma.append(i), nodes);
    }
}

}  // namespace

FiniteTree psi(const std::vector<UPWord>& a) {
    std::set<UPWord> dedup(a.begin(), a.end());
    std::vector<const UPWord*> ptrs;
    ptrs.reserve(dedup.size());
    for (const UPWord& w : dedup) ptrs.push_back(&w);
    std::set<FiniteWord> nodes;
    psi_build(ptrs, FiniteWord(2, {}), &nodes);
    std::size_t depth = 0;
    for (const FiniteWord& w : nodes) depth = std::max(depth, w.size());
    return FiniteTree(depth, std::move(nodes));
}

std::vector<UPWord> t_hat(const FiniteTree& t) {
    if (t.empty()) throw std::invalid_argument("t_hat: nonempty tree required");
    std::set<UPWord> out;
    for (const FiniteWord& sigma : t.nodes()) {
        out.insert(UPWord(2, sigma.symbols(), {0}));
        out.insert(UPWord(2, sigma.append(1).symbols(), {0}));
    }
    return std::vector<UPWord>(out.begin(), out.end());
}

std::optional<FiniteWord> a_sigma(const std::vector<UPWord>& b, const FiniteWord& sigma) {
    std::set<UPWord> dedup(b.begin(), b.end());
    std::vector<const UPWord*> s;
    for (const UPWord& w : dedup) s.push_back(&w);
    std::optional<FiniteWord> a;
    for (std::size_t j = 0;; ++j) {
        if (s.size() < 2) return std::nullopt;
        std::vector<const UPWord*> view(s.begin(), s.end());
        a = lcp(view);
        if (j == sigma.size()) return a;
        const Symbol i = sigma.at(j);
        std::vector<const UPWord*> sub;
        for (const UPWord* w : s)
            if (w->at(a->size()) == i) sub.push_back(w);
        s = std::move(sub);
    }
}

UPWord first_upword_extending(const FiniteWord& w) {
    // Fixed enumeration: total size ascending, then preamble length
    // ascending, then (preamble, period) lexicographic. Only canonical
    // representatives count, so every infinite word appears exactly once.
    for (std::size_t total = 1;; ++total) {
        for (std::size_t pre_len = 0; pre_len < total; ++pre_len) {
            const std::size_t per_len = total - pre_len;
            std::vector<Symbol> pre(pre_len, 0), per(per_len, 0);
            while (true) {
                UPWord cand(2, pre, per);
                if (cand.preamble_size() == pre_len && cand.period_size() == per_len) {
                    bool extends = true;
                    for (std::size_t i = 0; i < w.size() && extends; ++i)
                        if (cand.at(i) != w.at(i)) extends = false;
                    if (extends) return cand;
                }
                // Next (pre, per) pair in lexicographic order.
                std::size_t i = pre_len + per_len;
                const auto bump = [&](std::vector<Symbol>& v, std::size_t idx) {
                    if (v[idx] == 0) {
                        v[idx] = 1;
                        return true;
                    }
                    v[idx] = 0;
                    return false;
                };
                bool carried = true;
                while (carried && i > 0) {
                    --i;
                    carried = !(i < pre_len ? bump(pre, i) : bump(per, i - pre_len));
                }
                if (carried) break;
            }
        }
        if (total > w.size() + 2)
            throw std::logic_error("first_upword_extending: enumeration failed");
    }
}

JonssonResult jonsson_build(const FiniteTree& t, std::size_t stages) {
    if (t.empty()) throw std::invalid_argument("jonsson_build: nonempty tree required");
    if (stages > t.depth())
        throw std::invalid_argument("jonsson_build: stages must not exceed the tree depth");

    std::map<FiniteWord, UPWord> c;
    std::vector<std::uint64_t> k;  // k[m] = k_m; k_{-1} = 0
    std::map<FiniteWord, std::uint64_t> ms;

    c[FiniteWord(2, {})] = first_upword_extending(FiniteWord(2, {}));
    std::uint64_t k_prev = 0;
    std::vector<FiniteWord> level{FiniteWord(2, {})};
    for (std::size_t m = 0; m <= stages; ++m) {
        std::uint64_t k_m = k_prev + 1;
        for (const FiniteWord& s : level) {
            const UPWord& cs = c.at(s);
            if (t.contains(s)) {
                const std::uint64_t m_s = k_prev + 1;
                ms[s] = m_s;
                const Symbol bit = cs.at(m_s);
                c[s.append(bit)] = cs;
                c[s.append(static_cast<Symbol>(1 - bit))] = first_upword_extending(
                    cs.prefix(static_cast<std::size_t>(m_s)).append(static_cast<Symbol>(1 - bit)));
                k_m = std::max(k_m, m_s + 1);
            } else {
                c[s.append(0)] = cs;
                c[s.append(1)] = cs;
            }
        }
        k.push_back(k_m);
        k_prev = k_m;
        std::vector<FiniteWord> next;
        for (const FiniteWord& s : level)
            for (Symbol i : {0, 1}) next.push_back(s.append(i));
        level = std::move(next);
    }

    const auto level_set = [&](std::size_t n) {
        std::set<UPWord> out;
        for (const auto& [s, w] : c)
            if (s.size() == n) out.insert(w);
        return std::vector<UPWord>(out.begin(), out.end());
    };

    std::set<UPWord> a_set;
    for (const auto& [s, w] : c) a_set.insert(w);
    std::vector<UPWord> a(a_set.begin(), a_set.end());

    Certificate cert("omega-jonsson-stages");
    cert.set_param("stages", static_cast<std::int64_t>(stages));
    cert.set_param("tree_nodes", static_cast<std::int64_t>(t.nodes().size()));

    for (std::size_t m = 0; m <= stages; ++m) {
        const auto an = level_set(m + 1);
        for (const auto& [s, cs] : c) {
            if (s.size() != m) continue;
            const std::string where = " s=" + s.digits();
            if (t.contains(s)) {
                const auto as = a_sigma(an, s);
                cert.check_true("(i) a_s defined over A_{m+1}" + where, as.has_value());
                if (as) {
                    cert.check_lt("(i) |a_s| < k_m" + where,
                                  Rational(static_cast<long>(as->size())),
                                  Rational(static_cast<long>(k[m])));
                    for (Symbol i : {0, 1})
                        cert.check_true("(ii) c_{s^i} extends a_s^i" + where + " i=" +
                                            std::to_string(int(i)),
                                        as->append(i).is_prefix_of(
                                            c.at(s.append(i)).prefix(as->size() + 1)));
                }
            } else {
                // A_{m+1} meets the k_m-neighbourhood of c_s only in c_s.
                std::size_t hits = 0;
                const FiniteWord nb = cs.prefix(static_cast<std::size_t>(k[m]));
                for (const UPWord& w : an)
                    if (w.prefix(nb.size()) == nb) ++hits;
                cert.check_eq("(i) off-tree neighbourhood is a singleton" + where,
                              std::to_string(hits), "1");
            }
        }
    }
    // (iii): prefixes at k_m agree between stage sets.
    for (std::size_t m = 0; m + 1 <= stages; ++m) {
        const auto prefixes = [&](std::size_t n) {
            std::set<FiniteWord> out;
            for (const UPWord& w : level_set(n)) out.insert(w.prefix(k[m]));
            return out;
        };
        const auto base = prefixes(m);
        bool all = true;
        for (std::size_t n = m + 1; n <= stages + 1; ++n) all = all && prefixes(n) == base;
        cert.check_true("(iii) k_" + std::to_string(m) + "-prefixes stable across stages", all);
    }
    // Recovered tree agrees with T up to the built depth.
    const FiniteTree rec = psi(a);
    bool agree = true;
    for (std::size_t len = 0; len <= stages; ++len) {
        std::vector<FiniteWord> lvl{FiniteWord(2, {})};
        for (std::size_t i = 0; i < len; ++i) {
            std::vector<FiniteWord> next;
            for (const FiniteWord& w : lvl)
                for (Symbol b : {0, 1}) next.push_back(w.append(b));
            lvl = std::move(next);
        }
        for (const FiniteWord& w : lvl)
            if (rec.contains(w) != t.contains(w)) agree = false;
    }
    cert.check_true("psi(A) agrees with T through the built depth", agree);

    return {std::move(a), std::move(cert)};
}

// --- Galvin coloring ------------------------------------------------------------------

std::uint64_t galvin_d(const UPWord& x, const UPWord& y) {
    const auto d = first_difference(x, y);
    if (!d) throw std::domain_error("galvin: x and y must differ");
    return *d;
}

Symbol galvin_coloring(const UPWord& x, const UPWord& y) {
    return x.at(galvin_d(x, y));
}

}  // namespace upw
