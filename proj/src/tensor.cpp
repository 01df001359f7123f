#include "splinepower/tensor.hpp"

#include <cmath>
#include <memory>

#include "splinepower/projection.hpp"

namespace splinepower {

TensorSpec::TensorSpec(std::vector<std::pair<SplineSpaceSpec, SobolevTarget>> dirs)
    : directions(std::move(dirs)) {
    if (directions.empty() || directions.size() > 4)
        throw std::invalid_argument("TensorSpec: need 1 <= d <= 4 directions");
    for (const auto& [space, target] : directions)
        if (target.order > space.degree)
            throw std::invalid_argument("TensorSpec: Sobolev order q must satisfy q <= p");
}

double tensor_bound(const TensorSpec& spec, std::span<const double> constants,
                    std::span<const double> derivative_norms) {
    if (constants.size() != spec.directions.size() ||
        derivative_norms.size() != spec.directions.size())
        throw std::invalid_argument("tensor_bound: list lengths must equal the dimension");
    double sum = 0;
    for (std::size_t i = 0; i < constants.size(); ++i) sum += constants[i] * derivative_norms[i];
    return sum;
}

namespace {

/// Per-direction data: basis values at all quadrature nodes plus the Gram
/// factorization.
struct Direction {
    ProjectionEngine<double> engine;
    std::vector<double> nodes, weights;       // global quadrature grid
    std::vector<double> btab;                 // node-major basis values, dim per node
    int dim = 0;

    explicit Direction(const SplineSpaceSpec& s, int oversample) : engine(make_engine(s)) {
        const auto& basis = engine.basis();
        const int p = basis.degree();
        dim = basis.dimension();
        const GaussRule& rule = gauss_rule(std::max(1, oversample) * (p + 1));
        std::vector<double> vals(static_cast<std::size_t>(p) + 1);
        for (int span = 0; span < basis.span_count(); ++span) {
            const double a = basis.span_start(span), h = basis.span_width(span);
            const int first = basis.first_basis_on_span(span);
            for (int g = 0; g < rule.size(); ++g) {
                nodes.push_back(a + h * rule.node<double>(g));
                weights.push_back(h * rule.weight<double>(g));
                basis.eval_on_span(span, nodes.back(), vals);
                std::vector<double> row(static_cast<std::size_t>(dim), 0.0);
                for (int i = 0; i <= p; ++i) row[static_cast<std::size_t>(first + i)] = vals[static_cast<std::size_t>(i)];
                btab.insert(btab.end(), row.begin(), row.end());
            }
        }
    }

    static ProjectionEngine<double> make_engine(const SplineSpaceSpec& s) {
        const std::vector<Knot> knots = knot_vector(s);
        return ProjectionEngine<double>(std::span<const Knot>(knots));
    }

    [[nodiscard]] double basis_at(int node, int i) const {
        return btab[static_cast<std::size_t>(node) * dim + i];
    }
    [[nodiscard]] int points() const { return static_cast<int>(nodes.size()); }
};

}  // namespace

struct TensorProjector2D::Impl {
    Direction x, y;
    Impl(const SplineSpaceSpec& sx, const SplineSpaceSpec& sy, int oversample)
        : x(sx, oversample), y(sy, oversample) {}

    // f values on the tensor grid, node-major in x.
    [[nodiscard]] std::vector<double> sample(const Function2D& f) const {
        std::vector<double> v(static_cast<std::size_t>(x.points()) * y.points());
        for (int i = 0; i < x.points(); ++i)
            for (int j = 0; j < y.points(); ++j)
                v[static_cast<std::size_t>(i) * y.points() + j] = f(x.nodes[static_cast<std::size_t>(i)], y.nodes[static_cast<std::size_t>(j)]);
        return v;
    }

    // Project along x for every y-node: returns (dim_x) x (points_y).
    [[nodiscard]] std::vector<double> project_x(const std::vector<double>& vals) const {
        std::vector<double> out(static_cast<std::size_t>(x.dim) * y.points());
        std::vector<double> load(static_cast<std::size_t>(x.dim));
        for (int j = 0; j < y.points(); ++j) {
            std::fill(load.begin(), load.end(), 0.0);
            for (int i = 0; i < x.points(); ++i) {
                const double wv = x.weights[static_cast<std::size_t>(i)] * vals[static_cast<std::size_t>(i) * y.points() + j];
                for (int a = 0; a < x.dim; ++a) load[static_cast<std::size_t>(a)] += wv * x.basis_at(i, a);
            }
            std::vector<double> coef = x.engine.solve(load);
            for (int a = 0; a < x.dim; ++a) out[static_cast<std::size_t>(a) * y.points() + j] = coef[static_cast<std::size_t>(a)];
        }
        return out;
    }

    // Project along y a (rows) x (points_y) table: returns (rows) x (dim_y).
    [[nodiscard]] std::vector<double> project_y_rows(const std::vector<double>& rows_vals,
                                                     int rows) const {
        std::vector<double> out(static_cast<std::size_t>(rows) * y.dim);
        std::vector<double> load(static_cast<std::size_t>(y.dim));
        for (int r = 0; r < rows; ++r) {
            std::fill(load.begin(), load.end(), 0.0);
            for (int j = 0; j < y.points(); ++j) {
                const double wv = y.weights[static_cast<std::size_t>(j)] * rows_vals[static_cast<std::size_t>(r) * y.points() + j];
                for (int b = 0; b < y.dim; ++b) load[static_cast<std::size_t>(b)] += wv * y.basis_at(j, b);
            }
            std::vector<double> coef = y.engine.solve(load);
            for (int b = 0; b < y.dim; ++b) out[static_cast<std::size_t>(r) * y.dim + b] = coef[static_cast<std::size_t>(b)];
        }
        return out;
    }

    [[nodiscard]] std::vector<double> coeffs_xy(const Function2D& f) const {
        return project_y_rows(project_x(sample(f)), x.dim);
    }

    [[nodiscard]] std::vector<double> coeffs_yx(const Function2D& f) const {
        // Project along y per x-node, then along x per y-basis row.
        const std::vector<double> vals = sample(f);
        std::vector<double> ycoef(static_cast<std::size_t>(x.points()) * y.dim);
        std::vector<double> load(static_cast<std::size_t>(y.dim));
        for (int i = 0; i < x.points(); ++i) {
            std::fill(load.begin(), load.end(), 0.0);
            for (int j = 0; j < y.points(); ++j) {
                const double wv = y.weights[static_cast<std::size_t>(j)] * vals[static_cast<std::size_t>(i) * y.points() + j];
                for (int b = 0; b < y.dim; ++b) load[static_cast<std::size_t>(b)] += wv * y.basis_at(j, b);
            }
            std::vector<double> coef = y.engine.solve(load);
            for (int b = 0; b < y.dim; ++b) ycoef[static_cast<std::size_t>(i) * y.dim + b] = coef[static_cast<std::size_t>(b)];
        }
        // Now project along x for each y-basis index; produce (x.dim) x (y.dim).
        std::vector<double> out(static_cast<std::size_t>(x.dim) * y.dim);
        std::vector<double> xload(static_cast<std::size_t>(x.dim));
        for (int b = 0; b < y.dim; ++b) {
            std::fill(xload.begin(), xload.end(), 0.0);
            for (int i = 0; i < x.points(); ++i) {
                const double wv = x.weights[static_cast<std::size_t>(i)] * ycoef[static_cast<std::size_t>(i) * y.dim + b];
                for (int a = 0; a < x.dim; ++a) xload[static_cast<std::size_t>(a)] += wv * x.basis_at(i, a);
            }
            std::vector<double> coef = x.engine.solve(xload);
            for (int a = 0; a < x.dim; ++a) out[static_cast<std::size_t>(a) * y.dim + b] = coef[static_cast<std::size_t>(a)];
        }
        return out;
    }

    [[nodiscard]] double error(const Function2D& f) const {
        const std::vector<double> coef = coeffs_xy(f);
        long double err2 = 0;
        for (int i = 0; i < x.points(); ++i) {
            for (int j = 0; j < y.points(); ++j) {
                double pv = 0;
                for (int a = 0; a < x.dim; ++a) {
                    const double bx = x.basis_at(i, a);
                    if (bx == 0.0) continue;
                    double row = 0;
                    for (int b = 0; b < y.dim; ++b) row += coef[static_cast<std::size_t>(a) * y.dim + b] * y.basis_at(j, b);
                    pv += bx * row;
                }
                const double d = f(x.nodes[static_cast<std::size_t>(i)], y.nodes[static_cast<std::size_t>(j)]) - pv;
                err2 += static_cast<long double>(x.weights[static_cast<std::size_t>(i)]) * y.weights[static_cast<std::size_t>(j)] * d * d;
            }
        }
        return static_cast<double>(std::sqrt(std::max(0.0L, err2)));
    }

    [[nodiscard]] double partial_y_norm(const Function2D& f) const {
        const std::vector<double> vals = sample(f);
        long double s = 0;
        std::vector<double> load(static_cast<std::size_t>(y.dim));
        for (int i = 0; i < x.points(); ++i) {
            std::fill(load.begin(), load.end(), 0.0);
            for (int j = 0; j < y.points(); ++j) {
                const double wv = y.weights[static_cast<std::size_t>(j)] * vals[static_cast<std::size_t>(i) * y.points() + j];
                for (int b = 0; b < y.dim; ++b) load[static_cast<std::size_t>(b)] += wv * y.basis_at(j, b);
            }
            std::vector<double> coef = y.engine.solve(load);
            for (int j = 0; j < y.points(); ++j) {
                double pv = 0;
                for (int b = 0; b < y.dim; ++b) pv += coef[static_cast<std::size_t>(b)] * y.basis_at(j, b);
                s += static_cast<long double>(x.weights[static_cast<std::size_t>(i)]) * y.weights[static_cast<std::size_t>(j)] * pv * pv;
            }
        }
        return static_cast<double>(std::sqrt(s));
    }

    [[nodiscard]] double norm(const Function2D& f) const {
        const std::vector<double> vals = sample(f);
        long double s = 0;
        for (int i = 0; i < x.points(); ++i)
            for (int j = 0; j < y.points(); ++j) {
                const double v = vals[static_cast<std::size_t>(i) * y.points() + j];
                s += static_cast<long double>(x.weights[static_cast<std::size_t>(i)]) * y.weights[static_cast<std::size_t>(j)] * v * v;
            }
        return static_cast<double>(std::sqrt(s));
    }
};

TensorProjector2D::TensorProjector2D(const SplineSpaceSpec& sx, const SplineSpaceSpec& sy,
                                     int oversample)
    : impl_(std::make_unique<Impl>(sx, sy, oversample)) {}

TensorProjector2D::~TensorProjector2D() = default;
TensorProjector2D::TensorProjector2D(TensorProjector2D&&) noexcept = default;
TensorProjector2D& TensorProjector2D::operator=(TensorProjector2D&&) noexcept = default;

std::vector<double> TensorProjector2D::coefficients_xy(const Function2D& f) const {
    return impl_->coeffs_xy(f);
}
std::vector<double> TensorProjector2D::coefficients_yx(const Function2D& f) const {
    return impl_->coeffs_yx(f);
}
double TensorProjector2D::error(const Function2D& f) const { return impl_->error(f); }
double TensorProjector2D::partial_y_norm(const Function2D& f) const {
    return impl_->partial_y_norm(f);
}
double TensorProjector2D::norm(const Function2D& f) const { return impl_->norm(f); }
int TensorProjector2D::nx() const { return impl_->x.dim; }
int TensorProjector2D::ny() const { return impl_->y.dim; }

double tensor_project_2d(const SplineSpaceSpec& sx, const SplineSpaceSpec& sy, const Function2D& f,
                         int oversample) {
    return TensorProjector2D(sx, sy, oversample).error(f);
}

}  // namespace splinepower
