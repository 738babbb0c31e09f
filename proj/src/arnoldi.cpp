#include "arnoldi.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace recteig::detail {

namespace {

constexpr double kCollapseRatio = 1e-14;
constexpr Complex kI{0.0, 1.0};

// Value, x- and y-derivative, and Laplacian of the complex columns.
struct Quad {
    CVector f, fx, fy, lap;
};

Quad multiply(ArnoldiMultiplier op, std::span<const Point2> pts, const CMatrix& f, const CMatrix& fx,
              const CMatrix& fy, const CMatrix& lap, std::size_t col)
{
    const auto rows = static_cast<Eigen::Index>(pts.size());
    const auto c = static_cast<Eigen::Index>(col);
    Quad out{CVector(rows), CVector(rows), CVector(rows), CVector(rows)};
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Point2 p = pts[static_cast<std::size_t>(i)];
        const Complex v = f(i, c);
        const Complex vx = fx(i, c);
        const Complex vy = fy(i, c);
        const Complex vl = lap(i, c);
        switch (op) {
        case ArnoldiMultiplier::x: {
            const Complex e = std::polar(1.0, p.x);
            out.f(i) = e * v;
            out.fx(i) = e * (kI * v + vx);
            out.fy(i) = e * vy;
            out.lap(i) = e * (vl + 2.0 * kI * vx - v);
            break;
        }
        case ArnoldiMultiplier::y: {
            const Complex e = std::polar(1.0, p.y);
            out.f(i) = e * v;
            out.fx(i) = e * vx;
            out.fy(i) = e * (kI * v + vy);
            out.lap(i) = e * (vl + 2.0 * kI * vy - v);
            break;
        }
        case ArnoldiMultiplier::y_conj: {
            const Complex e = std::polar(1.0, -p.y);
            out.f(i) = e * v;
            out.fx(i) = e * vx;
            out.fy(i) = e * (-kI * v + vy);
            out.lap(i) = e * (vl - 2.0 * kI * vy - v);
            break;
        }
        }
    }
    return out;
}

// q -= sum_k coef[k] * Q(:, k), column by column so the arithmetic is the
// same whether called from build or replay.
void subtract(Quad& q, const CMatrix& f, const CMatrix& fx, const CMatrix& fy, const CMatrix& lap,
              const std::vector<Complex>& coef)
{
    for (std::size_t k = 0; k < coef.size(); ++k) {
        const auto col = static_cast<Eigen::Index>(k);
        const Complex c = coef[k];
        q.f -= c * f.col(col);
        q.fx -= c * fx.col(col);
        q.fy -= c * fy.col(col);
        q.lap -= c * lap.col(col);
    }
}

void store(const Quad& q, double norm, CMatrix& f, CMatrix& fx, CMatrix& fy, CMatrix& lap, std::size_t col)
{
    const auto c = static_cast<Eigen::Index>(col);
    f.col(c) = q.f / norm;
    fx.col(c) = q.fx / norm;
    fy.col(c) = q.fy / norm;
    lap.col(c) = q.lap / norm;
}

}  // namespace

std::vector<std::pair<int, int>> arnoldi_exponent_order(int max_degree)
{
    std::vector<std::pair<int, int>> order{{0, 0}};
    for (int d = 1; d <= max_degree; ++d) {
        order.emplace_back(0, d);
        for (int k = 1; k <= d; ++k) {
            const int m = d - k;
            order.emplace_back(k, m);
            if (m > 0) order.emplace_back(k, -m);
        }
    }
    return order;
}

ArnoldiTracks arnoldi_build(int max_degree, std::span<const Point2> points, ArnoldiFourierFamily& family)
{
    if (max_degree < 1) throw std::invalid_argument("arnoldi_fourier_basis: need K >= 1");
    if (points.empty()) throw std::invalid_argument("arnoldi_fourier_basis: no sample points");

    const auto order = arnoldi_exponent_order(max_degree);
    std::map<std::pair<int, int>, std::size_t> index;
    for (std::size_t j = 0; j < order.size(); ++j) index[order[j]] = j;

    const auto rows = static_cast<Eigen::Index>(points.size());
    const auto cols = static_cast<Eigen::Index>(order.size());
    const double weight = 1.0 / static_cast<double>(rows);
    const double rms = std::sqrt(static_cast<double>(rows));

    CMatrix f = CMatrix::Zero(rows, cols);
    CMatrix fx = CMatrix::Zero(rows, cols);
    CMatrix fy = CMatrix::Zero(rows, cols);
    CMatrix lap = CMatrix::Zero(rows, cols);
    f.col(0).setOnes();

    family.max_degree = max_degree;
    family.steps.assign(1, ArnoldiStep{});

    for (std::size_t j = 1; j < order.size(); ++j) {
        const auto [k, m] = order[j];
        ArnoldiStep step;
        step.k = k;
        step.m = m;
        // Multiply by X whenever the parent exists; Y builds the k = 0 column
        // and Ybar starts each negative-m run at k = 1.
        if (k == 0) {
            step.parent = index.at({0, m - 1});
            step.multiplier = ArnoldiMultiplier::y;
        } else if (k == 1 && m < 0) {
            step.parent = index.at({k, m + 1});
            step.multiplier = ArnoldiMultiplier::y_conj;
        } else {
            step.parent = index.at({k - 1, m});
            step.multiplier = ArnoldiMultiplier::x;
        }

        Quad q = multiply(step.multiplier, points, f, fx, fy, lap, step.parent);
        const double before = q.f.norm() / rms;
        const auto prev = static_cast<Eigen::Index>(j);

        for (auto* pass : {&step.pass1, &step.pass2}) {
            const CVector c = (f.leftCols(prev).adjoint() * q.f) * weight;
            pass->assign(c.data(), c.data() + c.size());
            subtract(q, f, fx, fy, lap, *pass);
        }

        step.norm = q.f.norm() / rms;
        if (!(step.norm > kCollapseRatio * before)) {
            throw SolverError("arnoldi_fourier_basis: rank collapse at exponent (k=" + std::to_string(k) +
                              ", m=" + std::to_string(m) + ")");
        }
        store(q, step.norm, f, fx, fy, lap, j);
        family.steps.push_back(std::move(step));
    }
    return {std::move(f), std::move(lap)};
}

ArnoldiTracks arnoldi_replay(const ArnoldiFourierFamily& family, std::span<const Point2> points)
{
    const auto rows = static_cast<Eigen::Index>(points.size());
    const auto cols = static_cast<Eigen::Index>(family.steps.size());
    CMatrix f = CMatrix::Zero(rows, cols);
    CMatrix fx = CMatrix::Zero(rows, cols);
    CMatrix fy = CMatrix::Zero(rows, cols);
    CMatrix lap = CMatrix::Zero(rows, cols);
    if (cols == 0) return {f, lap};
    f.col(0).setOnes();

    for (std::size_t j = 1; j < family.steps.size(); ++j) {
        const ArnoldiStep& step = family.steps[j];
        Quad q = multiply(step.multiplier, points, f, fx, fy, lap, step.parent);
        subtract(q, f, fx, fy, lap, step.pass1);
        subtract(q, f, fx, fy, lap, step.pass2);
        store(q, step.norm, f, fx, fy, lap, j);
    }
    return {std::move(f), std::move(lap)};
}

std::pair<Matrix, Matrix> arnoldi_realify(const ArnoldiTracks& tracks)
{
    const Eigen::Index rows = tracks.f.rows();
    const Eigen::Index n = tracks.f.cols();
    const Eigen::Index real_cols = n == 0 ? 0 : 2 * n - 1;
    Matrix values(rows, real_cols);
    Matrix laplacian(rows, real_cols);
    values.leftCols(n) = tracks.f.real();
    laplacian.leftCols(n) = tracks.lap.real();
    if (n > 1) {
        values.rightCols(n - 1) = tracks.f.rightCols(n - 1).imag();
        laplacian.rightCols(n - 1) = tracks.lap.rightCols(n - 1).imag();
    }
    return {std::move(values), std::move(laplacian)};
}

}  // namespace recteig::detail
