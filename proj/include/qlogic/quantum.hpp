// Finite-dimensional pure states, projective measurement, and the two
// entangled-pair statistics used by the protocol layer.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ray.hpp"
#include "rng.hpp"

namespace qlogic {

using cplx = std::complex<double>;

class PureState {
public:
    // Amplitudes must already be normalized to unit length within 1e-12.
    explicit PureState(std::vector<cplx> amps) : amps_(std::move(amps)) {
        if (amps_.empty()) throw std::invalid_argument("PureState: empty");
        double n2 = 0;
        for (const auto& a : amps_) n2 += std::norm(a);
        if (std::abs(n2 - 1.0) > 1e-12)
            throw std::invalid_argument("PureState: not normalized");
    }

    // Normalizes on the way in; rejects the zero vector.
    static PureState normalized(std::vector<cplx> amps) {
        double n2 = 0;
        for (const auto& a : amps) n2 += std::norm(a);
        if (n2 <= 0)
            throw std::invalid_argument("PureState: zero vector");
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& a : amps) a *= inv;
        return PureState(std::move(amps));
    }

    static PureState basis_vector(int dim, int k) {
        if (dim <= 0 || k < 0 || k >= dim)
            throw std::invalid_argument("PureState: bad basis index");
        std::vector<cplx> a(dim, cplx{0, 0});
        a[k] = cplx{1, 0};
        return PureState(std::move(a));
    }

    int dim() const { return static_cast<int>(amps_.size()); }
    const std::vector<cplx>& amplitudes() const { return amps_; }

private:
    std::vector<cplx> amps_;
};

class MeasurementBasis {
public:
    // Vectors must form an orthonormal basis within 1e-12.
    explicit MeasurementBasis(std::vector<std::vector<cplx>> vecs)
        : vecs_(std::move(vecs)) {
        if (vecs_.empty())
            throw std::invalid_argument("MeasurementBasis: empty");
        const auto d = vecs_.size();
        for (const auto& v : vecs_)
            if (v.size() != d)
                throw std::invalid_argument(
                    "MeasurementBasis: need dim vectors of length dim");
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) {
                cplx ip{0, 0};
                for (std::size_t k = 0; k < d; ++k)
                    ip += std::conj(vecs_[i][k]) * vecs_[j][k];
                const cplx want = (i == j) ? cplx{1, 0} : cplx{0, 0};
                if (std::abs(ip - want) > 1e-12)
                    throw std::invalid_argument(
                        "MeasurementBasis: not orthonormal");
            }
    }

    // Unit-normalizes a context's worth of integer rays. The rays must be
    // mutually orthogonal exactly; normalization cannot break that.
    static MeasurementBasis from_integer_rays(const std::vector<Ray>& rays) {
        if (rays.empty())
            throw std::invalid_argument("MeasurementBasis: no rays");
        const int d = rays[0].dim();
        if (static_cast<int>(rays.size()) != d)
            throw std::invalid_argument(
                "MeasurementBasis: need dim rays for a full basis");
        std::vector<std::vector<cplx>> vecs;
        for (const auto& r : rays) {
            if (r.dim() != d)
                throw std::invalid_argument("MeasurementBasis: mixed dims");
            double n2 = 0;
            for (long long c : r.comps) n2 += double(c) * double(c);
            if (n2 <= 0)
                throw std::invalid_argument("MeasurementBasis: zero ray");
            const double inv = 1.0 / std::sqrt(n2);
            std::vector<cplx> v(d);
            for (int k = 0; k < d; ++k) v[k] = cplx{r.comps[k] * inv, 0};
            vecs.push_back(std::move(v));
        }
        return MeasurementBasis(std::move(vecs));
    }

    static MeasurementBasis standard(int dim) {
        std::vector<std::vector<cplx>> vecs(dim,
                                            std::vector<cplx>(dim, cplx{0, 0}));
        for (int k = 0; k < dim; ++k) vecs[k][k] = cplx{1, 0};
        return MeasurementBasis(std::move(vecs));
    }

    int dim() const { return static_cast<int>(vecs_.size()); }
    const std::vector<cplx>& vec(int k) const { return vecs_.at(k); }
    PureState state(int k) const { return PureState(vecs_.at(k)); }

private:
    std::vector<std::vector<cplx>> vecs_;
};

// p_k = |<b_k|psi>|^2. Sums to 1 up to roundoff by completeness.
inline std::vector<double> born_probabilities(const PureState& psi,
                                              const MeasurementBasis& basis) {
    if (psi.dim() != basis.dim())
        throw std::invalid_argument("born_probabilities: dimension mismatch");
    std::vector<double> p(basis.dim());
    for (int k = 0; k < basis.dim(); ++k) {
        cplx ip{0, 0};
        for (int i = 0; i < basis.dim(); ++i)
            ip += std::conj(basis.vec(k)[i]) * psi.amplitudes()[i];
        p[k] = std::norm(ip);
    }
    return p;
}

struct MeasurementResult {
    int outcome;     // basis index
    PureState post;  // collapsed state: the outcome's basis vector
};

// Samples an outcome by CDF inversion over the Born weights. The uniform
// draw is scaled by the total mass (1 up to roundoff), so an outcome with
// all the weight is certain even when the weights sum to 1 - epsilon.
inline MeasurementResult measure(const PureState& psi,
                                 const MeasurementBasis& basis,
                                 RandomSource& rng) {
    const auto p = born_probabilities(psi, basis);
    double total = 0;
    for (double w : p) total += w;
    const double u = rng.next_double() * total;
    double acc = 0;
    int outcome = basis.dim() - 1;
    for (int k = 0; k < basis.dim(); ++k) {
        acc += p[k];
        if (u < acc) { outcome = k; break; }
    }
    return MeasurementResult{outcome, basis.state(outcome)};
}

// Expectation of the product of +-1 outcomes when the two sides of a
// spin-1/2 singlet are measured along directions angle_a and angle_b in a
// common plane: E = -cos(angle_a - angle_b).
inline double singlet_correlation(double angle_a, double angle_b) {
    return -std::cos(angle_a - angle_b);
}

// One sampled singlet pair, outcomes in {+1,-1}. The marginal of each side
// is uniform; the joint obeys P(equal) = (1 - cos(delta)) / 2, which
// reproduces singlet_correlation in expectation.
inline std::pair<int, int> sample_singlet_pair(double angle_a, double angle_b,
                                               RandomSource& rng) {
    const int a = rng.next_bool() ? 1 : -1;
    const double p_opposite =
        (1.0 + std::cos(angle_a - angle_b)) / 2.0;
    const int b = (rng.next_double() < p_opposite) ? -a : a;
    return {a, b};
}

// Outcome distribution for a spin-3/2 particle prepared in the extreme
// m = +3/2 level and remeasured after the apparatus is tilted by theta.
// Amplitudes are the top row of the spin-3/2 rotation operator about the
// transverse axis; with c = cos(theta/2), s = sin(theta/2) the outcome
// weights for m = +3/2, +1/2, -1/2, -3/2 are binomially spread:
//   (c^6, 3 c^4 s^2, 3 c^2 s^4, s^6).
inline std::array<double, 4> spin32_rotation_probs(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const double c2 = c * c, s2 = s * s;
    return {c2 * c2 * c2, 3.0 * c2 * c2 * s2, 3.0 * c2 * s2 * s2,
            s2 * s2 * s2};
}

} // namespace qlogic
