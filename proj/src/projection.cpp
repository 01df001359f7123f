#include "splinepower/projection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace splinepower {

template <class Real>
ProjectionEngine<Real>::ProjectionEngine(std::span<const Knot> knots) : basis_(knots) {
    const int p = basis_.degree();
    const int n = basis_.dimension();
    gram_ = SymBanded<Real>(n, std::min(p, n - 1));
    const GaussRule& rule = gauss_rule(p + 1);  // exact for degree 2p+1
    std::vector<Real> vals(static_cast<std::size_t>(p) + 1);
    for (int s = 0; s < basis_.span_count(); ++s) {
        const Real a = basis_.span_start(s), h = basis_.span_width(s);
        const int first = basis_.first_basis_on_span(s);
        for (int g = 0; g < rule.size(); ++g) {
            const Real x = a + h * rule.template node<Real>(g);
            const Real w = h * rule.template weight<Real>(g);
            basis_.eval_on_span(s, x, vals);
            for (int i = 0; i <= p; ++i)
                for (int j = i; j <= p; ++j)
                    gram_.add(first + i, first + j, w * vals[static_cast<std::size_t>(i)] *
                                                        vals[static_cast<std::size_t>(j)]);
        }
    }
    if (!chol_.factor(gram_))
        throw std::runtime_error("ProjectionEngine: Gram matrix not positive definite");
    condition_ = condition_estimate(gram_, chol_);
}

template <class Real>
typename ProjectionEngine<Real>::Coupling ProjectionEngine<Real>::couple(
    std::shared_ptr<const Mesh> mesh) const {
    if (!mesh->contains(basis_.breakpoints()))
        throw std::invalid_argument("ProjectionEngine::couple: mesh must refine the knot spans");
    const int p = basis_.degree();
    Coupling c;
    c.p = p;
    c.mesh = mesh;
    const int cells = mesh->cells();
    c.first.resize(static_cast<std::size_t>(cells));
    c.beta.assign(static_cast<std::size_t>(cells) * (p + 1) * (p + 1), Real(0));
    const GaussRule& rule = gauss_rule(p + 1);
    std::vector<Real> bvals(static_cast<std::size_t>(p) + 1);
    std::vector<Real> leg(static_cast<std::size_t>(p) + 1);
    const std::vector<Rational>& bps = basis_.breakpoints();
    int span = 0;
    for (int ci = 0; ci < cells; ++ci) {
        const Real a = mesh->template pos<Real>(ci), h = mesh->template width<Real>(ci);
        // Exact span lookup: cells never straddle knots (mesh refines them).
        while (span + 1 < basis_.span_count() &&
               !(mesh->pts[static_cast<std::size_t>(ci)] < bps[static_cast<std::size_t>(span) + 1]))
            ++span;
        c.first[static_cast<std::size_t>(ci)] = basis_.first_basis_on_span(span);
        Real* beta_cell = c.beta.data() + static_cast<std::size_t>(ci) * (p + 1) * (p + 1);
        for (int g = 0; g < rule.size(); ++g) {
            const Real u = rule.template node<Real>(g);
            const Real x = a + h * u;
            const Real w = h * rule.template weight<Real>(g);
            basis_.eval_on_span(span, x, bvals);
            PiecewisePoly<Real>::legendre_row(u, p, h, leg);
            for (int b = 0; b <= p; ++b)
                for (int j = 0; j <= p; ++j)
                    beta_cell[b * (p + 1) + j] +=
                        w * bvals[static_cast<std::size_t>(b)] * leg[static_cast<std::size_t>(j)];
        }
    }
    return c;
}

template <class Real>
std::vector<Real> ProjectionEngine<Real>::loads(const Coupling& c,
                                                const PiecewisePoly<Real>& y) const {
    const int p = c.p;
    std::vector<Real> b(static_cast<std::size_t>(basis_.dimension()), Real(0));
    const int modes = std::min(p, y.deg);
    for (int ci = 0; ci < y.cells(); ++ci) {
        const Real* yc = y.cell(ci);
        const Real* beta_cell = c.beta.data() + static_cast<std::size_t>(ci) * (p + 1) * (p + 1);
        const int first = c.first[static_cast<std::size_t>(ci)];
        for (int a = 0; a <= p; ++a) {
            Real acc(0);
            for (int j = 0; j <= modes; ++j) acc += beta_cell[a * (p + 1) + j] * yc[j];
            b[static_cast<std::size_t>(first + a)] += acc;
        }
    }
    return b;
}

template <class Real>
std::vector<Real> ProjectionEngine<Real>::solve(std::vector<Real> b) const {
    std::vector<Real> x(b.size());
    const double rel = refined_solve(gram_, chol_, std::span<const Real>(b), std::span<Real>(x));
    worst_residual_ = std::max(worst_residual_, rel);
    return x;
}

template <class Real>
void ProjectionEngine<Real>::remove_projection(const Coupling& c, PiecewisePoly<Real>& y) const {
    const int p = c.p;
    const int modes = std::min(p, y.deg);
    // Two passes: the first leaves a spline-space residue of order
    // cond(G)*eps*|y|, which downstream smoothing operators can amplify past
    // the tiny singular values being measured; the second pass removes it.
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<Real> coef = solve(loads(c, y));
        for (int ci = 0; ci < y.cells(); ++ci) {
            Real* yc = y.cell(ci);
            const Real* beta_cell = c.beta.data() + static_cast<std::size_t>(ci) * (p + 1) * (p + 1);
            const int first = c.first[static_cast<std::size_t>(ci)];
            for (int j = 0; j <= modes; ++j) {
                Real acc(0);
                for (int a = 0; a <= p; ++a)
                    acc += beta_cell[a * (p + 1) + j] * coef[static_cast<std::size_t>(first + a)];
                yc[j] -= acc;
            }
        }
    }
}

template class ProjectionEngine<double>;
template class ProjectionEngine<long double>;

namespace {

ProjectionResult project_impl(std::span<const Knot> knots, const Integrand& f, int oversample) {
    if (f.exact) {
        ExactProjection ex = l2_project_exact(knots, *f.exact);
        ProjectionResult r;
        r.coefficients.reserve(ex.coefficients.size());
        for (const Rational& c : ex.coefficients) r.coefficients.push_back(c.to_double());
        r.error_norm = static_cast<double>(std::sqrt(ex.error_sq.to_long_double()));
        return r;
    }
    if (!f.f) throw std::invalid_argument("l2_project: empty integrand");
    if (oversample < 1) oversample = 1;
    ProjectionEngine<double> engine(knots);
    const auto& basis = engine.basis();
    const int p = basis.degree();
    const int points = oversample * (p + 1);
    const GaussRule& rule = gauss_rule(points);
    // Quadrature covers degree 2*points-1; projecting a declared piecewise
    // polynomial of degree D needs D+p (load) and 2*max(D,p) (error norm).
    ProjectionResult r;
    if (f.declared_degree) {
        const int need = std::max(*f.declared_degree + p, 2 * std::max(*f.declared_degree, p));
        if (2 * points - 1 < need) r.quadrature_insufficient = true;
    }
    std::vector<double> load(static_cast<std::size_t>(basis.dimension()), 0.0);
    std::vector<double> vals(static_cast<std::size_t>(p) + 1);
    for (int s = 0; s < basis.span_count(); ++s) {
        const double a = basis.span_start(s), h = basis.span_width(s);
        const int first = basis.first_basis_on_span(s);
        for (int g = 0; g < rule.size(); ++g) {
            const double x = a + h * rule.node<double>(g);
            const double w = h * rule.weight<double>(g);
            const double fx = f.f(x);
            basis.eval_on_span(s, x, vals);
            for (int i = 0; i <= p; ++i) load[static_cast<std::size_t>(first + i)] += w * fx * vals[static_cast<std::size_t>(i)];
        }
    }
    r.coefficients = engine.solve(std::move(load));
    long double err2 = 0;
    for (int s = 0; s < basis.span_count(); ++s) {
        const double a = basis.span_start(s), h = basis.span_width(s);
        const int first = basis.first_basis_on_span(s);
        for (int g = 0; g < rule.size(); ++g) {
            const double x = a + h * rule.node<double>(g);
            const double w = h * rule.weight<double>(g);
            basis.eval_on_span(s, x, vals);
            double px = 0;
            for (int i = 0; i <= p; ++i) px += r.coefficients[static_cast<std::size_t>(first + i)] * vals[static_cast<std::size_t>(i)];
            const double d = f.f(x) - px;
            err2 += static_cast<long double>(w) * d * d;
        }
    }
    r.error_norm = static_cast<double>(std::sqrt(std::max(0.0L, err2)));
    r.condition = engine.condition();
    r.solve_residual = engine.worst_residual();
    return r;
}

}  // namespace

ProjectionResult l2_project(const SplineSpaceSpec& space, const Integrand& f, int oversample) {
    const auto knots = knot_vector(space);
    return project_impl(knots, f, oversample);
}

ProjectionResult l2_project(const BrokenSpec& space, const Integrand& f, int oversample) {
    const auto knots = knot_vector(space);
    return project_impl(knots, f, oversample);
}

namespace {

/// Banded LDL^T in exact rational arithmetic (no pivoting; Gram matrices are
/// positive definite).
struct RationalBandedLdl {
    int n = 0, band = 0;
    std::vector<Rational> l;  // strict lower part, diag-major like SymBanded
    std::vector<Rational> d;

    void factor(const std::vector<std::vector<Rational>>& a, int band_) {
        n = static_cast<int>(a.size());
        band = band_;
        l.assign(static_cast<std::size_t>(band + 1) * n, Rational(0));
        d.assign(static_cast<std::size_t>(n), Rational(0));
        auto lref = [&](int i, int j) -> Rational& {
            return l[static_cast<std::size_t>(i - j) * n + j];
        };
        for (int j = 0; j < n; ++j) {
            Rational dj = a[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
            for (int k = std::max(0, j - band); k < j; ++k)
                dj -= lref(j, k) * lref(j, k) * d[static_cast<std::size_t>(k)];
            d[static_cast<std::size_t>(j)] = dj;
            for (int i = j + 1; i <= std::min(n - 1, j + band); ++i) {
                Rational v = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                for (int k = std::max(0, i - band); k < j; ++k)
                    v -= lref(i, k) * lref(j, k) * d[static_cast<std::size_t>(k)];
                lref(i, j) = v / dj;
            }
        }
    }

    std::vector<Rational> solve(std::vector<Rational> b) const {
        auto lref = [&](int i, int j) -> const Rational& {
            return l[static_cast<std::size_t>(i - j) * n + j];
        };
        for (int i = 0; i < n; ++i)
            for (int k = std::max(0, i - band); k < i; ++k)
                b[static_cast<std::size_t>(i)] -= lref(i, k) * b[static_cast<std::size_t>(k)];
        for (int i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] /= d[static_cast<std::size_t>(i)];
        for (int i = n - 1; i >= 0; --i)
            for (int k = i + 1; k <= std::min(n - 1, i + band); ++k)
                b[static_cast<std::size_t>(i)] -= lref(k, i) * b[static_cast<std::size_t>(k)];
        return b;
    }
};

}  // namespace

ExactProjection l2_project_exact(std::span<const Knot> knots, const Polynomial& f) {
    const int p = knots.front().multiplicity - 1;
    const auto pieces = bspline_exact_pieces(knots);
    const int dim = static_cast<int>(pieces.size());
    const int nspans = static_cast<int>(knots.size()) - 1;

    std::vector<std::vector<Rational>> gram(
        static_cast<std::size_t>(dim), std::vector<Rational>(static_cast<std::size_t>(dim), Rational(0)));
    std::vector<Rational> load(static_cast<std::size_t>(dim), Rational(0));
    Rational f_norm_sq(0);

    for (int s = 0; s < nspans; ++s) {
        const Rational a = knots[static_cast<std::size_t>(s)].position;
        const Rational b = knots[static_cast<std::size_t>(s) + 1].position;
        f_norm_sq += (f * f).definite_integral(a, b);
        for (int i = 0; i < dim; ++i) {
            const Polynomial& bi = pieces[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
            if (bi.is_zero()) continue;
            load[static_cast<std::size_t>(i)] += (f * bi).definite_integral(a, b);
            for (int j = i; j < dim && j <= i + p; ++j) {
                const Polynomial& bj = pieces[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
                if (bj.is_zero()) continue;
                Rational v = (bi * bj).definite_integral(a, b);
                gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += v;
                if (i != j) gram[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] += v;
            }
        }
    }

    RationalBandedLdl ldl;
    ldl.factor(gram, std::min(p, dim - 1));
    ExactProjection out;
    out.coefficients = ldl.solve(load);
    Rational dot(0);
    for (int i = 0; i < dim; ++i)
        dot += load[static_cast<std::size_t>(i)] * out.coefficients[static_cast<std::size_t>(i)];
    out.error_sq = f_norm_sq - dot;
    return out;
}

namespace {

template <class SpaceT>
std::vector<std::vector<double>> gram_dense(const SpaceT& space) {
    const auto knots = knot_vector(space);
    ProjectionEngine<double> engine{std::span<const Knot>(knots)};
    const int n = engine.gram().n;
    std::vector<std::vector<double>> m(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = engine.gram().get(i, j);
    return m;
}

}  // namespace

std::vector<std::vector<double>> gram_matrix(const SplineSpaceSpec& space) {
    return gram_dense(space);
}

std::vector<std::vector<double>> gram_matrix(const BrokenSpec& space) { return gram_dense(space); }

std::string matrix_to_text(const std::vector<std::vector<double>>& m) {
    std::string out;
    char buf[40];
    for (const auto& row : m) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", row[j]);
            if (j) out += " ";
            out += buf;
        }
        out += "\n";
    }
    return out;
}

}  // namespace splinepower
