#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace splinepower {

/// Symmetric banded matrix, upper storage by diagonal:
/// entry (i, i+d) for 0 <= d <= band lives at diag d, position i.
template <class Real>
struct SymBanded {
    int n = 0, band = 0;
    std::vector<Real> a;  // (band+1) * n

    SymBanded() = default;
    SymBanded(int n_, int band_) : n(n_), band(band_), a(static_cast<std::size_t>(band_ + 1) * n_, Real(0)) {}

    [[nodiscard]] Real get(int i, int j) const {
        if (i > j) std::swap(i, j);
        const int d = j - i;
        if (d > band) return Real(0);
        return a[static_cast<std::size_t>(d) * n + i];
    }

    void add(int i, int j, Real v) {
        if (i > j) std::swap(i, j);
        const int d = j - i;
        if (d > band) throw std::out_of_range("SymBanded::add outside band");
        a[static_cast<std::size_t>(d) * n + i] += v;
    }

    void matvec(std::span<const Real> x, std::span<Real> y) const {
        for (int i = 0; i < n; ++i) y[i] = a[static_cast<std::size_t>(i)] * x[i];
        for (int d = 1; d <= band; ++d) {
            const Real* diag = a.data() + static_cast<std::size_t>(d) * n;
            for (int i = 0; i + d < n; ++i) {
                y[i] += diag[i] * x[i + d];
                y[i + d] += diag[i] * x[i];
            }
        }
    }
};

/// Banded Cholesky factorization A = L L^T for SPD banded A.
template <class Real>
class BandedCholesky {
public:
    BandedCholesky() = default;

    bool factor(const SymBanded<Real>& A) {
        n_ = A.n;
        band_ = A.band;
        l_.assign(static_cast<std::size_t>(band_ + 1) * n_, Real(0));
        // l(i, j) for j <= i stored at diag (i-j), position j.
        for (int j = 0; j < n_; ++j) {
            Real diag = A.get(j, j);
            for (int k = std::max(0, j - band_); k < j; ++k) {
                const Real ljk = lget(j, k);
                diag -= ljk * ljk;
            }
            if (!(diag > Real(0))) return false;
            const Real ljj = std::sqrt(diag);
            lset(j, j, ljj);
            for (int i = j + 1; i <= std::min(n_ - 1, j + band_); ++i) {
                Real v = A.get(i, j);
                for (int k = std::max(0, i - band_); k < j; ++k) v -= lget(i, k) * lget(j, k);
                lset(i, j, v / ljj);
            }
        }
        return true;
    }

    void solve_inplace(std::span<Real> b) const {
        for (int i = 0; i < n_; ++i) {
            Real v = b[i];
            for (int k = std::max(0, i - band_); k < i; ++k) v -= lget(i, k) * b[k];
            b[i] = v / lget(i, i);
        }
        for (int i = n_ - 1; i >= 0; --i) {
            Real v = b[i];
            for (int k = i + 1; k <= std::min(n_ - 1, i + band_); ++k) v -= lget(k, i) * b[k];
            b[i] = v / lget(i, i);
        }
    }

    [[nodiscard]] int size() const { return n_; }

private:
    int n_ = 0, band_ = 0;
    std::vector<Real> l_;

    [[nodiscard]] Real lget(int i, int j) const {
        return l_[static_cast<std::size_t>(i - j) * n_ + j];
    }
    void lset(int i, int j, Real v) { l_[static_cast<std::size_t>(i - j) * n_ + j] = v; }
};

/// Solves A x = b through the factorization with a few rounds of iterative
/// refinement (residual accumulated in 80-bit precision). Returns the final
/// relative residual norm.
template <class Real>
double refined_solve(const SymBanded<Real>& A, const BandedCholesky<Real>& chol,
                     std::span<const Real> b, std::span<Real> x, int rounds = 2) {
    const int n = A.n;
    std::vector<Real> r(b.begin(), b.end());
    std::vector<Real> work(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[i] = b[i];
    chol.solve_inplace(x);
    long double bnorm = 0;
    for (int i = 0; i < n; ++i) bnorm += static_cast<long double>(b[i]) * b[i];
    bnorm = std::sqrt(bnorm);
    double rel = 0;
    for (int round = 0; round <= rounds; ++round) {
        A.matvec(std::span<const Real>(x.data(), x.size()), std::span<Real>(work));
        long double rnorm = 0;
        for (int i = 0; i < n; ++i) {
            r[i] = static_cast<Real>(static_cast<long double>(b[i]) - work[i]);
            rnorm += static_cast<long double>(r[i]) * r[i];
        }
        rel = bnorm > 0 ? static_cast<double>(std::sqrt(rnorm) / bnorm) : 0.0;
        if (round == rounds || rel == 0.0) break;
        chol.solve_inplace(std::span<Real>(r));
        for (int i = 0; i < n; ++i) x[i] += r[i];
    }
    return rel;
}

/// Rough 2-norm condition estimate by forward and inverse power iteration.
template <class Real>
double condition_estimate(const SymBanded<Real>& A, const BandedCholesky<Real>& chol,
                          int iterations = 30) {
    const int n = A.n;
    if (n == 0) return 1.0;
    std::vector<Real> v(static_cast<std::size_t>(n), Real(1)), w(static_cast<std::size_t>(n));
    auto normalize = [&](std::vector<Real>& u) {
        long double s = 0;
        for (Real x : u) s += static_cast<long double>(x) * x;
        const Real inv = static_cast<Real>(1.0L / std::sqrt(s));
        for (Real& x : u) x *= inv;
        return std::sqrt(s);
    };
    normalize(v);
    long double lam_max = 0;
    for (int it = 0; it < iterations; ++it) {
        A.matvec(std::span<const Real>(v.data(), v.size()), std::span<Real>(w));
        std::swap(v, w);
        lam_max = normalize(v);
    }
    std::fill(v.begin(), v.end(), Real(1));
    normalize(v);
    long double growth = 0;
    for (int it = 0; it < iterations; ++it) {
        chol.solve_inplace(std::span<Real>(v));
        growth = normalize(v);
    }
    return static_cast<double>(lam_max * growth);
}

}  // namespace splinepower
