// Integer rays and vector realizations of orthogonality hypergraphs.
//
// A ray is a projective direction: scalar multiples are the same ray. The
// canonical representative divides out the gcd and makes the first nonzero
// component positive, so ray equality is plain component equality.
// Orthogonality tests on integer rays are exact.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ortho_logic.hpp"

namespace qlogic {

struct Ray {
    std::vector<long long> comps;

    int dim() const { return static_cast<int>(comps.size()); }

    std::string to_string() const {
        std::string out = "(";
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(comps[i]);
        }
        return out + ")";
    }

    friend bool operator==(const Ray&, const Ray&) = default;
    friend auto operator<=>(const Ray&, const Ray&) = default;
};

inline long long dot(const Ray& a, const Ray& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("dot: dimension mismatch");
    long long s = 0;
    for (int i = 0; i < a.dim(); ++i) s += a.comps[i] * b.comps[i];
    return s;
}

// Canonical projective representative: components divided by their gcd,
// first nonzero component positive. Rejects the zero vector.
inline Ray normalized(Ray r) {
    long long g = 0;
    for (long long c : r.comps) g = std::gcd(g, c < 0 ? -c : c);
    if (g == 0) throw std::invalid_argument("normalized: zero ray");
    for (auto& c : r.comps) c /= g;
    for (long long c : r.comps) {
        if (c == 0) continue;
        if (c < 0)
            for (auto& x : r.comps) x = -x;
        break;
    }
    return r;
}

inline bool parallel(const Ray& a, const Ray& b) {
    return normalized(a) == normalized(b);
}

// Contexts of a ray family: every maximal set of exactly `arity` mutually
// orthogonal rays. Rays must be pairwise nonparallel (duplicates name no
// extra direction and would silently merge atoms; they are rejected with
// the offending indices). Atom i of the result is rays[i]; contexts appear
// with ascending atom ids, the context list sorted lexicographically.
inline OrthoLogic contexts_from_rays(const std::vector<Ray>& rays, int arity) {
    const int n = static_cast<int>(rays.size());
    if (n == 0) throw std::invalid_argument("contexts_from_rays: no rays");
    if (arity < 2) throw std::invalid_argument("contexts_from_rays: arity < 2");
    const int d = rays[0].dim();
    for (const auto& r : rays)
        if (r.dim() != d)
            throw std::invalid_argument("contexts_from_rays: mixed dimensions");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (parallel(rays[i], rays[j]))
                throw std::invalid_argument(
                    "contexts_from_rays: rays " + std::to_string(i) + " and " +
                    std::to_string(j) + " are parallel");

    std::vector<std::vector<char>> orth(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            orth[i][j] = orth[j][i] = (dot(rays[i], rays[j]) == 0);

    std::vector<std::vector<int>> contexts;
    std::vector<int> clique;
    auto extend = [&](auto&& self, int start) -> void {
        if (static_cast<int>(clique.size()) == arity) {
            // Maximality: no further ray is orthogonal to the whole clique.
            for (int k = 0; k < n; ++k) {
                bool all = true;
                for (int c : clique) all = all && (k != c) && orth[c][k];
                if (all) return;
            }
            contexts.push_back(clique);
            return;
        }
        for (int k = start; k < n; ++k) {
            bool ok = true;
            for (int c : clique) ok = ok && orth[c][k];
            if (!ok) continue;
            clique.push_back(k);
            self(self, k + 1);
            clique.pop_back();
        }
    };
    extend(extend, 0);
    std::sort(contexts.begin(), contexts.end());

    std::vector<std::string> labels;
    labels.reserve(rays.size());
    for (const auto& r : rays) labels.push_back(r.to_string());
    return OrthoLogic(n, std::move(contexts), std::move(labels));
}

struct RealizationReport {
    bool ok = false;
    // Pairs violating required orthogonality: (atom, atom) sharing a context
    // with nonzero inner product.
    std::vector<std::pair<int, int>> nonorthogonal;
    // Distinct atoms whose vectors are parallel (realization not faithful).
    std::vector<std::pair<int, int>> parallel_pairs;
};

// Exact check: one integer ray per atom, same-context atoms orthogonal,
// distinct atoms nonparallel.
inline RealizationReport check_realization(const OrthoLogic& logic,
                                           const std::vector<Ray>& rays) {
    if (static_cast<int>(rays.size()) != logic.atom_count())
        throw std::invalid_argument("check_realization: one ray per atom required");
    const int d = rays.empty() ? 0 : rays[0].dim();
    for (const auto& r : rays)
        if (r.dim() != d)
            throw std::invalid_argument("check_realization: mixed dimensions");
    RealizationReport rep;
    for (const auto& ctx : logic.contexts())
        for (std::size_t i = 0; i < ctx.size(); ++i)
            for (std::size_t j = i + 1; j < ctx.size(); ++j)
                if (dot(rays[ctx[i]], rays[ctx[j]]) != 0)
                    rep.nonorthogonal.emplace_back(ctx[i], ctx[j]);
    for (int i = 0; i < logic.atom_count(); ++i)
        for (int j = i + 1; j < logic.atom_count(); ++j)
            if (parallel(rays[i], rays[j]))
                rep.parallel_pairs.emplace_back(i, j);
    rep.ok = rep.nonorthogonal.empty() && rep.parallel_pairs.empty();
    return rep;
}

// Floating-point check used on numerically found vectors. Same-context
// pairs must be orthogonal within cos_tol (|cos angle| <= cos_tol);
// distinct atoms must subtend at least min_angle_rad.
inline RealizationReport
check_realization(const OrthoLogic& logic,
                  const std::vector<std::vector<double>>& vecs,
                  double cos_tol, double min_angle_rad) {
    if (static_cast<int>(vecs.size()) != logic.atom_count())
        throw std::invalid_argument("check_realization: one vector per atom required");
    auto unit_cos = [&](int i, int j) {
        double dij = 0, ni = 0, nj = 0;
        for (std::size_t k = 0; k < vecs[i].size(); ++k) {
            dij += vecs[i][k] * vecs[j][k];
            ni += vecs[i][k] * vecs[i][k];
            nj += vecs[j][k] * vecs[j][k];
        }
        return dij / std::sqrt(ni * nj);
    };
    RealizationReport rep;
    for (const auto& ctx : logic.contexts())
        for (std::size_t i = 0; i < ctx.size(); ++i)
            for (std::size_t j = i + 1; j < ctx.size(); ++j)
                if (std::abs(unit_cos(ctx[i], ctx[j])) > cos_tol)
                    rep.nonorthogonal.emplace_back(ctx[i], ctx[j]);
    const double cos_min = std::cos(min_angle_rad);
    for (int i = 0; i < logic.atom_count(); ++i)
        for (int j = i + 1; j < logic.atom_count(); ++j)
            if (std::abs(unit_cos(i, j)) > cos_min)
                rep.parallel_pairs.emplace_back(i, j);
    rep.ok = rep.nonorthogonal.empty() && rep.parallel_pairs.empty();
    return rep;
}

} // namespace qlogic
