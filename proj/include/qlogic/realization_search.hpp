// Randomized numerical search for unit-vector realizations.
//
// Each atom gets a unit vector; every same-context pair must come out
// orthogonal while no two atoms may collapse onto one line. The search runs
// independent restarts, each seeded from a split stream of the caller's
// seed, so results depend only on (seed, restart index): running restarts
// across threads cannot change the outcome, only the wall time.
//
// A restart minimizes
//     sum over same-context pairs  (u_i . u_j)^2
//   + sum over all distinct pairs  max(0, |u_i . u_j| - cos(min_angle))^2
// by projected gradient descent, then polishes with Gauss-Seidel sweeps
// that re-orthogonalize each vector against its context partners.
//
// "found" requires residual < residual_tol AND min pair angle above
// min_angle_deg. A found result is a certificate (the vectors are in the
// report and can be checked independently); a not-found result is evidence
// of absence only, never a proof.

#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <vector>

#include "ortho_logic.hpp"
#include "rng.hpp"

namespace qlogic {

struct RealizationSearchOptions {
    int grad_iters = 500;
    double learning_rate = 0.2;
    int polish_sweeps = 200;
    double min_angle_deg = 1.0;
    double residual_tol = 1e-8;
    int threads = 1;
};

struct RealizationResult {
    bool found = false;
    double residual = 0.0;           // worst |u_i . u_j| within a context
    double min_pair_angle_deg = 0.0; // over all distinct atom pairs
    std::vector<std::vector<double>> vectors; // unit vectors, one per atom
    int restart_index = -1;          // restart that produced this result
};

namespace detail {

using Vecs = std::vector<std::vector<double>>;

inline double vdot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline void vnormalize(std::vector<double>& a) {
    const double n = std::sqrt(vdot(a, a));
    if (n < 1e-300) { a.assign(a.size(), 0.0); a[0] = 1.0; return; }
    for (auto& x : a) x /= n;
}

struct PairTables {
    std::vector<std::pair<int, int>> context_pairs; // must be orthogonal
    std::vector<std::pair<int, int>> all_pairs;     // must stay apart
    std::vector<std::vector<int>> partners;         // per atom: context mates
};

inline PairTables pair_tables(const OrthoLogic& logic) {
    PairTables t;
    const int n = logic.atom_count();
    std::vector<std::vector<char>> mate(n, std::vector<char>(n, 0));
    for (const auto& ctx : logic.contexts())
        for (std::size_t i = 0; i < ctx.size(); ++i)
            for (std::size_t j = i + 1; j < ctx.size(); ++j)
                mate[ctx[i]][ctx[j]] = mate[ctx[j]][ctx[i]] = 1;
    t.partners.resize(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (mate[i][j]) t.partners[i].push_back(j);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (mate[i][j]) t.context_pairs.emplace_back(i, j);
            t.all_pairs.emplace_back(i, j);
        }
    return t;
}

inline double gaussian(RandomSource& rng) {
    // Box-Muller; next_double() is in [0,1), so flip to (0,1].
    const double u1 = 1.0 - rng.next_double();
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
}

struct RestartOutcome {
    double residual = 0.0;
    double min_angle_deg = 0.0;
    bool found = false;
    Vecs vectors;
};

inline RestartOutcome run_restart(const OrthoLogic& logic, int dim,
                                  const PairTables& tables,
                                  const RealizationSearchOptions& opt,
                                  RandomSource rng) {
    const int n = logic.atom_count();
    const double cos_min =
        std::cos(opt.min_angle_deg * 3.14159265358979323846 / 180.0);

    Vecs u(n, std::vector<double>(dim));
    for (auto& v : u) {
        for (auto& x : v) x = gaussian(rng);
        vnormalize(v);
    }

    // Projected gradient descent on the penalty.
    Vecs grad(n, std::vector<double>(dim));
    for (int it = 0; it < opt.grad_iters; ++it) {
        for (auto& g : grad) std::fill(g.begin(), g.end(), 0.0);
        for (auto [i, j] : tables.context_pairs) {
            const double d = vdot(u[i], u[j]);
            for (int k = 0; k < dim; ++k) {
                grad[i][k] += 2.0 * d * u[j][k];
                grad[j][k] += 2.0 * d * u[i][k];
            }
        }
        for (auto [i, j] : tables.all_pairs) {
            const double d = vdot(u[i], u[j]);
            const double t = std::abs(d) - cos_min;
            if (t <= 0) continue;
            const double sgn = d < 0 ? -1.0 : 1.0;
            for (int k = 0; k < dim; ++k) {
                grad[i][k] += 2.0 * t * sgn * u[j][k];
                grad[j][k] += 2.0 * t * sgn * u[i][k];
            }
        }
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < dim; ++k)
                u[i][k] -= opt.learning_rate * grad[i][k];
            vnormalize(u[i]);
        }
    }

    // Gauss-Seidel polish: orthogonalize each vector against its partners
    // in place; repeated sweeps contract toward an exactly orthogonal
    // configuration whenever one is nearby.
    for (int sweep = 0; sweep < opt.polish_sweeps; ++sweep) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j : tables.partners[i]) {
                const double d = vdot(u[i], u[j]);
                for (int k = 0; k < dim; ++k) u[i][k] -= d * u[j][k];
            }
            vnormalize(u[i]);
        }
        for (auto [i, j] : tables.context_pairs)
            worst = std::max(worst, std::abs(vdot(u[i], u[j])));
        if (worst < opt.residual_tol * 1e-3) break;
    }

    RestartOutcome out;
    out.vectors = std::move(u);
    for (auto [i, j] : tables.context_pairs)
        out.residual = std::max(
            out.residual, std::abs(vdot(out.vectors[i], out.vectors[j])));
    double worst_cos = 0.0;
    for (auto [i, j] : tables.all_pairs)
        worst_cos = std::max(
            worst_cos, std::abs(vdot(out.vectors[i], out.vectors[j])));
    out.min_angle_deg = std::acos(std::min(1.0, worst_cos)) * 180.0 /
                        3.14159265358979323846;
    out.found = out.residual < opt.residual_tol &&
                out.min_angle_deg > opt.min_angle_deg;
    return out;
}

} // namespace detail

inline RealizationResult
search_realization(const OrthoLogic& logic, int dim, int restarts,
                   std::uint64_t seed,
                   const RealizationSearchOptions& opt = {}) {
    if (dim < 2)
        throw std::invalid_argument("search_realization: dim must be >= 2");
    if (restarts < 1)
        throw std::invalid_argument("search_realization: restarts must be >= 1");
    for (const auto& ctx : logic.contexts())
        if (static_cast<int>(ctx.size()) > dim)
            throw std::invalid_argument(
                "search_realization: a context exceeds the dimension; no "
                "orthogonal assignment can exist");

    const detail::PairTables tables = detail::pair_tables(logic);
    const RandomSource root(seed);

    std::vector<detail::RestartOutcome> outcomes(restarts);
    const int threads = std::max(1, opt.threads);
    if (threads == 1) {
        for (int r = 0; r < restarts; ++r)
            outcomes[r] =
                detail::run_restart(logic, dim, tables, opt, root.split(r));
    } else {
        std::vector<std::future<void>> futs;
        futs.reserve(threads);
        for (int t = 0; t < threads; ++t)
            futs.push_back(std::async(std::launch::async, [&, t] {
                for (int r = t; r < restarts; r += threads)
                    outcomes[r] = detail::run_restart(logic, dim, tables, opt,
                                                      root.split(r));
            }));
        for (auto& f : futs) f.get();
    }

    // Deterministic reduction: found beats not-found, then lower residual,
    // then lower restart index.
    int best = 0;
    for (int r = 1; r < restarts; ++r) {
        const auto& a = outcomes[r];
        const auto& b = outcomes[best];
        const bool better = (a.found != b.found) ? a.found
                            : (a.residual != b.residual) ? a.residual < b.residual
                                                         : false;
        if (better) best = r;
    }

    RealizationResult res;
    res.found = outcomes[best].found;
    res.residual = outcomes[best].residual;
    res.min_pair_angle_deg = outcomes[best].min_angle_deg;
    res.vectors = std::move(outcomes[best].vectors);
    res.restart_index = best;
    return res;
}

} // namespace qlogic
