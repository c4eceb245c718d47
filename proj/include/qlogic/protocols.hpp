// Key-agreement and correlation protocols over urns of colored balls and
// their quantum counterparts.
//
// Determinism contract: every protocol derives one child stream per round
// via root.split(round). A round's draws come only from its own stream, in
// the fixed order documented at each runner, so the full transcript is a
// function of (configuration, seed, rounds) alone. Splitting rounds across
// worker threads changes scheduling, never results.

#pragma once

#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "ortho_logic.hpp"
#include "partition_logic.hpp"
#include "quantum.hpp"
#include "ray.hpp"
#include "rng.hpp"

namespace qlogic {

// ---------------------------------------------------------------------------
// Sources

// An urn of ball types. Drawing is CDF inversion over the weights, one
// next_double per draw.
struct UrnModel {
    std::vector<BallType> balls;
    std::vector<double> weights;

    UrnModel(std::vector<BallType> ball_list, std::vector<double> weight_list)
        : balls(std::move(ball_list)), weights(std::move(weight_list)) {
        if (balls.empty())
            throw std::invalid_argument("UrnModel: no balls");
        if (weights.size() != balls.size())
            throw std::invalid_argument("UrnModel: weight per ball required");
        const std::size_t colors = balls.front().symbols.size();
        if (colors == 0)
            throw std::invalid_argument("UrnModel: balls need >= 1 color");
        for (const auto& b : balls)
            if (b.symbols.size() != colors)
                throw std::invalid_argument("UrnModel: mixed color counts");
        for (std::size_t i = 0; i < balls.size(); ++i)
            for (std::size_t j = i + 1; j < balls.size(); ++j)
                if (balls[i] == balls[j])
                    throw std::invalid_argument("UrnModel: duplicate ball type");
        double total = 0;
        for (double w : weights) {
            if (w <= 0)
                throw std::invalid_argument("UrnModel: weights must be positive");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("UrnModel: weights must sum to 1");
    }

    static UrnModel uniform(std::vector<BallType> ball_list) {
        const std::size_t n = ball_list.size();
        const double w = 1.0 / static_cast<double>(n);
        return UrnModel(std::move(ball_list), std::vector<double>(n, w));
    }

    int color_count() const {
        return static_cast<int>(balls.front().symbols.size());
    }

    // Largest symbol of a color, plus one.
    int symbols_in_color(int color) const {
        int m = 0;
        for (const auto& b : balls) m = std::max(m, b.symbols.at(color) + 1);
        return m;
    }

    int draw(RandomSource& rng) const {
        const double u = rng.next_double();
        double acc = 0;
        for (std::size_t i = 0; i + 1 < balls.size(); ++i) {
            acc += weights[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(balls.size()) - 1;
    }
};

// A source of correlated ball pairs (one ball to each party per round).
struct PairSource {
    std::vector<std::pair<BallType, BallType>> pairs;
    std::vector<double> weights;

    PairSource(std::vector<std::pair<BallType, BallType>> pair_list,
               std::vector<double> weight_list)
        : pairs(std::move(pair_list)), weights(std::move(weight_list)) {
        if (pairs.empty())
            throw std::invalid_argument("PairSource: no pairs");
        if (weights.size() != pairs.size())
            throw std::invalid_argument("PairSource: weight per pair required");
        const std::size_t colors = pairs.front().first.symbols.size();
        for (const auto& [a, b] : pairs)
            if (a.symbols.size() != colors || b.symbols.size() != colors)
                throw std::invalid_argument("PairSource: mixed color counts");
        double total = 0;
        for (double w : weights) {
            if (w <= 0)
                throw std::invalid_argument("PairSource: weights must be positive");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("PairSource: weights must sum to 1");
    }

    // Every two-color two-symbol ball type paired with its symbolwise flip,
    // uniformly: the classical stand-in for a perfectly anticorrelated pair.
    static PairSource anticorrelated_default() {
        std::vector<std::pair<BallType, BallType>> pairs;
        for (int s0 = 0; s0 < 2; ++s0)
            for (int s1 = 0; s1 < 2; ++s1) {
                BallType t{{s0, s1}};
                BallType u{{1 - s0, 1 - s1}};
                pairs.emplace_back(std::move(t), std::move(u));
            }
        return PairSource(std::move(pairs), std::vector<double>(4, 0.25));
    }

    int color_count() const {
        return static_cast<int>(pairs.front().first.symbols.size());
    }

    int draw(RandomSource& rng) const {
        const double u = rng.next_double();
        double acc = 0;
        for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
            acc += weights[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(pairs.size()) - 1;
    }
};

// ---------------------------------------------------------------------------
// Eavesdroppers

enum class EveKind {
    None,
    InterceptResendRandomBasis, // picks a fresh uniformly random basis per round
    InterceptResendFixedBasis,  // always the same basis
    OmniscientClassical,        // reads every classical ball completely
};

struct EveStrategy {
    EveKind kind = EveKind::None;
    int fixed_basis = -1; // only for InterceptResendFixedBasis

    static EveStrategy none() { return {}; }
    static EveStrategy intercept_random() {
        return {EveKind::InterceptResendRandomBasis, -1};
    }
    static EveStrategy intercept_fixed(int basis) {
        if (basis < 0)
            throw std::invalid_argument("EveStrategy: fixed basis must be >= 0");
        return {EveKind::InterceptResendFixedBasis, basis};
    }
    static EveStrategy omniscient() {
        return {EveKind::OmniscientClassical, -1};
    }

    bool present() const { return kind != EveKind::None; }
};

// ---------------------------------------------------------------------------
// Session bookkeeping

// Summary of one protocol session.
//
// compared / mismatches measure key errors, but which symbols enter differs
// by protocol: the urn and prepare-measure key protocols compare the entire
// sifted keys (nothing is sacrificed), while the context-sharing protocol
// publicly reveals a sampled fraction, compares only that sample, and
// strips it from both keys.
struct SessionStats {
    std::uint64_t rounds = 0;
    std::uint64_t sifted = 0;
    std::uint64_t compared = 0;
    std::uint64_t mismatches = 0;
    double sift_rate = 0.0; // sifted / rounds
    double qber = 0.0;      // mismatches / compared, 0 when compared == 0
    bool eve_present = false;
    // Fraction of key symbols the eavesdropper holds correctly, over the
    // rounds that made it into the comparison universe (kept rounds).
    std::optional<double> eve_agreement;
    std::vector<int> alice_key;
    std::vector<int> bob_key;
};

// One transcript row per round. Fields that a protocol has no value for
// hold -1. kept marks rounds surviving sifting (before any reveal).
struct TranscriptRow {
    std::uint64_t round = 0;
    int alice_basis = -1;
    int sent = -1;     // what left the source: ball index, bit, or atom id
    int bob_basis = -1;
    int outcome = -1;  // what the receiver registered
    bool kept = false;
    int symbol_a = -1; // key symbol on the sender side, -1 if none
    int symbol_b = -1; // key symbol on the receiver side, -1 if none
};

using Transcript = std::vector<TranscriptRow>;

namespace detail {

inline void finalize_rates(SessionStats& st) {
    st.sift_rate = st.rounds == 0
                       ? 0.0
                       : static_cast<double>(st.sifted) /
                             static_cast<double>(st.rounds);
    st.qber = st.compared == 0
                  ? 0.0
                  : static_cast<double>(st.mismatches) /
                        static_cast<double>(st.compared);
}

// Runs fn(round) for every round, chunked over `threads` workers. fn must
// derive all randomness from the round index, so the chunking is invisible
// in the results.
template <typename Fn>
inline void for_each_round(std::uint64_t rounds, int threads, Fn&& fn) {
    if (threads <= 1) {
        for (std::uint64_t r = 0; r < rounds; ++r) fn(r);
        return;
    }
    std::vector<std::future<void>> futs;
    const std::uint64_t chunk = (rounds + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::uint64_t lo = chunk * static_cast<std::uint64_t>(t);
        const std::uint64_t hi = std::min(rounds, lo + chunk);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, [lo, hi, &fn] {
            for (std::uint64_t r = lo; r < hi; ++r) fn(r);
        }));
    }
    for (auto& f : futs) f.get();
}

} // namespace detail

// ---------------------------------------------------------------------------
// Urn-based key agreement
//
// Round r, stream root.split(r), draw order:
//   1. ball index from the urn
//   2. Alice's color (uniform)
//   3. Bob's color (uniform)
//   4. eavesdropper's color when she picks one at random
//   5. eavesdropper's guess symbol, only on kept rounds she failed to read
//
// Both parties read their color's symbol off the same ball; reading a
// classical ball never disturbs it, so a kept round cannot mismatch: the
// protocol's QBER is structurally zero, eavesdropping or not. What an
// intercepting eavesdropper loses is knowledge, not stealth.
inline SessionStats run_bb84_chocolate(const UrnModel& urn,
                                       std::uint64_t rounds,
                                       const EveStrategy& eve,
                                       RandomSource root,
                                       Transcript* transcript = nullptr,
                                       int threads = 1) {
    const int colors = urn.color_count();
    if (eve.kind == EveKind::InterceptResendFixedBasis &&
        eve.fixed_basis >= colors)
        throw std::invalid_argument("run_bb84_chocolate: fixed color out of range");

    struct Round {
        bool kept = false;
        int symbol = -1;
        bool eve_match = false;
        TranscriptRow row;
    };
    std::vector<Round> per(rounds);

    detail::for_each_round(rounds, threads, [&](std::uint64_t r) {
        RandomSource rng = root.split(r);
        const int ball_idx = urn.draw(rng);
        const BallType& ball = urn.balls[ball_idx];
        const int a_color = static_cast<int>(rng.uniform_below(colors));
        const int b_color = static_cast<int>(rng.uniform_below(colors));
        int e_color = -1;
        if (eve.kind == EveKind::InterceptResendRandomBasis)
            e_color = static_cast<int>(rng.uniform_below(colors));
        else if (eve.kind == EveKind::InterceptResendFixedBasis)
            e_color = eve.fixed_basis;

        Round out;
        out.kept = a_color == b_color;
        const int symbol_a = ball.symbols[a_color];
        const int symbol_b = ball.symbols[b_color];
        if (out.kept) {
            out.symbol = symbol_a;
            switch (eve.kind) {
            case EveKind::None:
                break;
            case EveKind::OmniscientClassical:
                out.eve_match = true; // she saw the whole ball
                break;
            case EveKind::InterceptResendRandomBasis:
            case EveKind::InterceptResendFixedBasis: {
                int guess;
                if (e_color == a_color) {
                    guess = ball.symbols[e_color];
                } else {
                    guess = static_cast<int>(
                        rng.uniform_below(urn.symbols_in_color(a_color)));
                }
                out.eve_match = guess == symbol_a;
                break;
            }
            }
        }
        out.row = TranscriptRow{r,     a_color, ball_idx, b_color,
                                symbol_b, out.kept, symbol_a, symbol_b};
        per[r] = std::move(out);
    });

    SessionStats st;
    st.rounds = rounds;
    st.eve_present = eve.present();
    std::uint64_t eve_hits = 0;
    for (auto& round : per) {
        if (round.kept) {
            ++st.sifted;
            st.alice_key.push_back(round.symbol);
            st.bob_key.push_back(round.symbol);
            ++st.compared;
            if (round.eve_match) ++eve_hits;
        }
        if (transcript) transcript->push_back(round.row);
    }
    if (st.eve_present && st.sifted > 0)
        st.eve_agreement = static_cast<double>(eve_hits) /
                           static_cast<double>(st.sifted);
    detail::finalize_rates(st);
    return st;
}

// ---------------------------------------------------------------------------
// Prepare-and-measure key agreement over two conjugate qubit bases
//
// Basis 0 is the computational pair, basis 1 the diagonal pair. Round r,
// stream root.split(r), draw order:
//   1. Alice's basis   2. Alice's bit   3. Bob's basis
//   4. eavesdropper's basis when random
//   5. eavesdropper's measurement (one uniform draw), when intercepting
//   6. Bob's measurement (one uniform draw)
//
// An intercept-resend eavesdropper collapses the qubit in her basis and
// forwards the collapsed state, which poisons a quarter of the sifted key
// in expectation regardless of how she picks bases.
inline SessionStats run_bb84_quantum(std::uint64_t rounds,
                                     const EveStrategy& eve,
                                     RandomSource root,
                                     Transcript* transcript = nullptr,
                                     int threads = 1) {
    if (eve.kind == EveKind::OmniscientClassical)
        throw std::invalid_argument(
            "run_bb84_quantum: an omniscient classical reader has nothing to "
            "read here; there is no ball, only a qubit");
    if (eve.kind == EveKind::InterceptResendFixedBasis && eve.fixed_basis >= 2)
        throw std::invalid_argument("run_bb84_quantum: fixed basis out of range");

    const MeasurementBasis bases[2] = {
        MeasurementBasis::from_integer_rays({{{1, 0}}, {{0, 1}}}),
        MeasurementBasis::from_integer_rays({{{1, 1}}, {{1, -1}}}),
    };

    struct Round {
        bool kept = false;
        int bit_a = -1, bit_b = -1;
        bool eve_match = false;
        TranscriptRow row;
    };
    std::vector<Round> per(rounds);

    detail::for_each_round(rounds, threads, [&](std::uint64_t r) {
        RandomSource rng = root.split(r);
        const int a_basis = static_cast<int>(rng.uniform_below(2));
        const int a_bit = static_cast<int>(rng.uniform_below(2));
        const int b_basis = static_cast<int>(rng.uniform_below(2));

        PureState flying = bases[a_basis].state(a_bit);
        int eve_bit = -1;
        if (eve.kind == EveKind::InterceptResendRandomBasis ||
            eve.kind == EveKind::InterceptResendFixedBasis) {
            const int e_basis =
                eve.kind == EveKind::InterceptResendFixedBasis
                    ? eve.fixed_basis
                    : static_cast<int>(rng.uniform_below(2));
            auto res = measure(flying, bases[e_basis], rng);
            eve_bit = res.outcome;
            flying = std::move(res.post);
        }
        const auto bob = measure(flying, bases[b_basis], rng);

        Round out;
        out.kept = a_basis == b_basis;
        if (out.kept) {
            out.bit_a = a_bit;
            out.bit_b = bob.outcome;
            out.eve_match = eve_bit == a_bit;
        }
        out.row = TranscriptRow{r,        a_basis,  a_bit,
                                b_basis,  bob.outcome, out.kept,
                                out.kept ? a_bit : -1,
                                out.kept ? bob.outcome : -1};
        per[r] = std::move(out);
    });

    SessionStats st;
    st.rounds = rounds;
    st.eve_present = eve.present();
    std::uint64_t eve_hits = 0;
    for (auto& round : per) {
        if (round.kept) {
            ++st.sifted;
            st.alice_key.push_back(round.bit_a);
            st.bob_key.push_back(round.bit_b);
            ++st.compared;
            if (round.bit_a != round.bit_b) ++st.mismatches;
            if (round.eve_match) ++eve_hits;
        }
        if (transcript) transcript->push_back(round.row);
    }
    if (st.eve_present && st.sifted > 0)
        st.eve_agreement = static_cast<double>(eve_hits) /
                           static_cast<double>(st.sifted);
    detail::finalize_rates(st);
    return st;
}

// ---------------------------------------------------------------------------
// Context-sharing key agreement over a ray-realized logic
//
// Alice prepares an atom of a randomly chosen context; Bob measures a
// randomly chosen context. Sifting:
//   same context        -> keep; symbols are the atom positions within it
//   different contexts  -> keep only when Alice sent an atom the two
//                          contexts share and Bob's outcome is that same
//                          atom; the common symbol is the atom's position
//                          in the lower-numbered of the two contexts
//   otherwise           -> discard
//
// The sift decisions need only public information plus each party's own
// record: bases are announced, Alice keeps when her atom is shared, Bob
// keeps when his outcome is, and the round survives when both say keep.

// Sift decision for one round; nullopt = discard. Returns (symbol_a,
// symbol_b); the two can differ only in the same-context branch, which is
// exactly where error estimation looks.
inline std::optional<std::pair<int, int>> ks_sift(const OrthoLogic& logic,
                                                  int alice_basis,
                                                  int alice_atom,
                                                  int bob_basis,
                                                  int bob_atom) {
    if (alice_basis == bob_basis)
        return std::make_pair(logic.position_in_context(alice_basis, alice_atom),
                              logic.position_in_context(bob_basis, bob_atom));
    if (alice_atom != bob_atom) return std::nullopt;
    const int pos_a = logic.position_in_context(alice_basis, alice_atom);
    const int pos_b = logic.position_in_context(bob_basis, alice_atom);
    if (pos_a < 0 || pos_b < 0) return std::nullopt; // not a shared atom
    const int canon = std::min(alice_basis, bob_basis);
    const int symbol = logic.position_in_context(canon, alice_atom);
    return std::make_pair(symbol, symbol);
}

struct KSProtocolConfig {
    OrthoLogic logic;
    std::vector<Ray> rays;           // one per atom, exact realization
    std::vector<int> basis_family;   // context ids both parties draw from
    double reveal_fraction = 0.1;    // per-kept-round reveal probability
    EveStrategy eve;

    KSProtocolConfig(OrthoLogic lg, std::vector<Ray> ray_list,
                     std::vector<int> bases, double reveal,
                     EveStrategy eavesdropper)
        : logic(std::move(lg)), rays(std::move(ray_list)),
          basis_family(std::move(bases)), reveal_fraction(reveal),
          eve(std::move(eavesdropper)) {
        if (!check_realization(logic, rays).ok)
            throw std::invalid_argument(
                "KSProtocolConfig: rays do not realize the logic");
        const int dim = rays.front().dim();
        for (int c : basis_family) {
            if (c < 0 || c >= logic.context_count())
                throw std::invalid_argument(
                    "KSProtocolConfig: basis id out of range");
            if (static_cast<int>(logic.context(c).size()) != dim)
                throw std::invalid_argument(
                    "KSProtocolConfig: context arity must equal the dimension "
                    "for a full measurement basis");
        }
        if (basis_family.empty())
            throw std::invalid_argument("KSProtocolConfig: no bases");
        if (!(reveal_fraction >= 0.0 && reveal_fraction <= 1.0))
            throw std::invalid_argument(
                "KSProtocolConfig: reveal fraction outside [0,1]");
        if (eve.kind == EveKind::OmniscientClassical)
            throw std::invalid_argument(
                "KSProtocolConfig: omniscient classical reading applies to "
                "balls, not flying quanta");
        if (eve.kind == EveKind::InterceptResendFixedBasis &&
            eve.fixed_basis >= static_cast<int>(basis_family.size()))
            throw std::invalid_argument(
                "KSProtocolConfig: fixed basis out of range");
    }

    // All contexts of the 18-ray family as bases.
    static KSProtocolConfig cabello_default(double reveal,
                                            EveStrategy eavesdropper) {
        const CatalogEntry& e = catalog("cabello18");
        std::vector<int> bases(e.logic.context_count());
        for (int i = 0; i < e.logic.context_count(); ++i) bases[i] = i;
        return KSProtocolConfig(e.logic, e.rays, std::move(bases), reveal,
                                std::move(eavesdropper));
    }
};

// Round r, stream root.split(r), draw order:
//   1. Alice's basis (uniform over the family)
//   2. Alice's atom position within her context (uniform)
//   3. Bob's basis (uniform over the family)
//   4. eavesdropper's basis when random
//   5. eavesdropper's measurement, when intercepting
//   6. Bob's measurement
//   7. reveal coin, drawn only on kept rounds
//
// The eavesdropper's agreement guess: on cross-context kept rounds the
// symbol is already public, so she always scores; on same-context rounds
// she scores when her measurement, read in Alice's context, reproduces
// Alice's symbol (when her basis was Alice's she reproduces it always).
inline SessionStats run_ks_protocol(const KSProtocolConfig& cfg,
                                    std::uint64_t rounds, RandomSource root,
                                    Transcript* transcript = nullptr,
                                    int threads = 1) {
    const int family = static_cast<int>(cfg.basis_family.size());
    std::vector<MeasurementBasis> bases;
    bases.reserve(family);
    for (int c : cfg.basis_family) {
        std::vector<Ray> ctx_rays;
        for (int atom : cfg.logic.context(c)) ctx_rays.push_back(cfg.rays[atom]);
        bases.push_back(MeasurementBasis::from_integer_rays(ctx_rays));
    }

    struct Round {
        bool kept = false;
        bool revealed = false;
        int symbol_a = -1, symbol_b = -1;
        bool eve_match = false;
        TranscriptRow row;
    };
    std::vector<Round> per(rounds);

    detail::for_each_round(rounds, threads, [&](std::uint64_t r) {
        RandomSource rng = root.split(r);
        const int ab = static_cast<int>(rng.uniform_below(family));
        const int a_ctx = cfg.basis_family[ab];
        const int a_pos = static_cast<int>(
            rng.uniform_below(static_cast<std::uint32_t>(cfg.logic.context(a_ctx).size())));
        const int a_atom = cfg.logic.context(a_ctx)[a_pos];
        const int bb = static_cast<int>(rng.uniform_below(family));
        const int b_ctx = cfg.basis_family[bb];

        PureState flying = bases[ab].state(a_pos);
        int eve_ctx = -1, eve_pos = -1;
        if (cfg.eve.kind == EveKind::InterceptResendRandomBasis ||
            cfg.eve.kind == EveKind::InterceptResendFixedBasis) {
            const int eb = cfg.eve.kind == EveKind::InterceptResendFixedBasis
                               ? cfg.eve.fixed_basis
                               : static_cast<int>(rng.uniform_below(family));
            eve_ctx = cfg.basis_family[eb];
            auto res = measure(flying, bases[eb], rng);
            eve_pos = res.outcome;
            flying = std::move(res.post);
        }
        const auto bob = measure(flying, bases[bb], rng);
        const int b_atom = cfg.logic.context(b_ctx)[bob.outcome];

        Round out;
        const auto sift = ks_sift(cfg.logic, a_ctx, a_atom, b_ctx, b_atom);
        out.kept = sift.has_value();
        if (out.kept) {
            out.symbol_a = sift->first;
            out.symbol_b = sift->second;
            if (cfg.eve.present()) {
                if (a_ctx != b_ctx) {
                    out.eve_match = true; // cross-context symbols are public
                } else {
                    const int eve_atom = cfg.logic.context(eve_ctx)[eve_pos];
                    out.eve_match =
                        cfg.logic.position_in_context(a_ctx, eve_atom) ==
                        out.symbol_a;
                }
            }
            out.revealed = rng.next_double() < cfg.reveal_fraction;
        }
        out.row = TranscriptRow{r,      a_ctx,  a_atom,   b_ctx,
                                b_atom, out.kept, out.symbol_a, out.symbol_b};
        per[r] = std::move(out);
    });

    SessionStats st;
    st.rounds = rounds;
    st.eve_present = cfg.eve.present();
    std::uint64_t eve_hits = 0, eve_universe = 0;
    for (auto& round : per) {
        if (round.kept) {
            ++st.sifted;
            ++eve_universe;
            if (round.eve_match) ++eve_hits;
            if (round.revealed) {
                ++st.compared;
                if (round.symbol_a != round.symbol_b) ++st.mismatches;
            } else {
                st.alice_key.push_back(round.symbol_a);
                st.bob_key.push_back(round.symbol_b);
            }
        }
        if (transcript) transcript->push_back(round.row);
    }
    if (st.eve_present && eve_universe > 0)
        st.eve_agreement = static_cast<double>(eve_hits) /
                           static_cast<double>(eve_universe);
    detail::finalize_rates(st);
    return st;
}

// ---------------------------------------------------------------------------
// Paired-source correlation tests
//
// Four setting pairs in the fixed order (a,b), (a,b'), (a',b), (a',b');
// the combination is S = E(a,b) - E(a,b') + E(a',b) + E(a',b').

struct ChshStats {
    // E for the setting pairs in the order above.
    std::array<double, 4> correlations{};
    std::array<std::uint64_t, 4> rounds_per_pair{};
    double s_value = 0.0;
    std::uint64_t rounds = 0; // 0 in exact-expectation mode
    bool exact = false;
};

namespace detail {

inline double chsh_combine(const std::array<double, 4>& e) {
    return e[0] - e[1] + e[2] + e[3];
}

} // namespace detail

// A classical dichotomic observable on balls: read one color, map its
// symbol through sign (>= 2 entries; entry s is the +-1 value of symbol s).
struct ClassicalSetting {
    int color = 0;
    std::array<int, 2> sign{+1, -1};

    int eval(const BallType& ball) const {
        const int s = ball.symbols.at(color);
        if (s < 0 || s > 1)
            throw std::invalid_argument(
                "ClassicalSetting: ball symbol outside the dichotomic range");
        return sign[s];
    }
};

struct EkertClassicalSettings {
    ClassicalSetting a, a_alt, b, b_alt;
};

// Exact expectations: a weighted sum over the pair source, no sampling.
inline ChshStats ekert_classical_exact(const PairSource& source,
                                       const EkertClassicalSettings& st) {
    const ClassicalSetting* alice[2] = {&st.a, &st.a_alt};
    const ClassicalSetting* bob[2] = {&st.b, &st.b_alt};
    ChshStats out;
    out.exact = true;
    int idx = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double e = 0;
            for (std::size_t k = 0; k < source.pairs.size(); ++k)
                e += source.weights[k] *
                     alice[i]->eval(source.pairs[k].first) *
                     bob[j]->eval(source.pairs[k].second);
            out.correlations[idx++] = e;
        }
    out.s_value = detail::chsh_combine(out.correlations);
    return out;
}

// Sampled run. Round r, stream root.split(r), draw order:
//   1. setting pair (uniform over the four)
//   2. ball pair from the source
inline ChshStats run_ekert_classical(const PairSource& source,
                                     const EkertClassicalSettings& st,
                                     std::uint64_t rounds, RandomSource root,
                                     Transcript* transcript = nullptr,
                                     int threads = 1) {
    const ClassicalSetting* alice[2] = {&st.a, &st.a_alt};
    const ClassicalSetting* bob[2] = {&st.b, &st.b_alt};

    struct Round {
        int pair_idx;
        int product;
        TranscriptRow row;
    };
    std::vector<Round> per(rounds);

    detail::for_each_round(rounds, threads, [&](std::uint64_t r) {
        RandomSource rng = root.split(r);
        const int pick = static_cast<int>(rng.uniform_below(4));
        const int i = pick >> 1, j = pick & 1;
        const int ball_pair = source.draw(rng);
        const int va = alice[i]->eval(source.pairs[ball_pair].first);
        const int vb = bob[j]->eval(source.pairs[ball_pair].second);
        per[r] = Round{pick, va * vb,
                       TranscriptRow{r, i, va > 0 ? 0 : 1, j,
                                     vb > 0 ? 0 : 1, true,
                                     va > 0 ? 0 : 1, vb > 0 ? 0 : 1}};
    });

    ChshStats out;
    out.rounds = rounds;
    std::array<std::int64_t, 4> sums{};
    for (auto& round : per) {
        sums[round.pair_idx] += round.product;
        ++out.rounds_per_pair[round.pair_idx];
        if (transcript) transcript->push_back(round.row);
    }
    for (int k = 0; k < 4; ++k)
        out.correlations[k] =
            out.rounds_per_pair[k] == 0
                ? 0.0
                : static_cast<double>(sums[k]) /
                      static_cast<double>(out.rounds_per_pair[k]);
    out.s_value = detail::chsh_combine(out.correlations);
    return out;
}

struct EkertAngles {
    double a = 0.0, a_alt = 0.0, b = 0.0, b_alt = 0.0;
};

inline ChshStats ekert_quantum_exact(const EkertAngles& ang) {
    const double alice[2] = {ang.a, ang.a_alt};
    const double bob[2] = {ang.b, ang.b_alt};
    ChshStats out;
    out.exact = true;
    int idx = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.correlations[idx++] = singlet_correlation(alice[i], bob[j]);
    out.s_value = detail::chsh_combine(out.correlations);
    return out;
}

// Sampled singlet run. Round r, stream root.split(r), draw order:
//   1. setting pair (uniform over the four)
//   2. Alice's sign (one bool)
//   3. the joint coin fixing Bob's sign (one uniform draw)
inline ChshStats run_ekert_quantum(const EkertAngles& ang,
                                   std::uint64_t rounds, RandomSource root,
                                   Transcript* transcript = nullptr,
                                   int threads = 1) {
    const double alice[2] = {ang.a, ang.a_alt};
    const double bob[2] = {ang.b, ang.b_alt};

    struct Round {
        int pair_idx;
        int product;
        TranscriptRow row;
    };
    std::vector<Round> per(rounds);

    detail::for_each_round(rounds, threads, [&](std::uint64_t r) {
        RandomSource rng = root.split(r);
        const int pick = static_cast<int>(rng.uniform_below(4));
        const int i = pick >> 1, j = pick & 1;
        const auto [va, vb] = sample_singlet_pair(alice[i], bob[j], rng);
        per[r] = Round{pick, va * vb,
                       TranscriptRow{r, i, va > 0 ? 0 : 1, j,
                                     vb > 0 ? 0 : 1, true,
                                     va > 0 ? 0 : 1, vb > 0 ? 0 : 1}};
    });

    ChshStats out;
    out.rounds = rounds;
    std::array<std::int64_t, 4> sums{};
    for (auto& round : per) {
        sums[round.pair_idx] += round.product;
        ++out.rounds_per_pair[round.pair_idx];
        if (transcript) transcript->push_back(round.row);
    }
    for (int k = 0; k < 4; ++k)
        out.correlations[k] =
            out.rounds_per_pair[k] == 0
                ? 0.0
                : static_cast<double>(sums[k]) /
                      static_cast<double>(out.rounds_per_pair[k]);
    out.s_value = detail::chsh_combine(out.correlations);
    return out;
}

} // namespace qlogic
