#include "oracles.hpp"
#include "recteig/scenarios.hpp"
#include "recteig/solver.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

using namespace recteig;

namespace {

// LG = G M with M = S diag(d) S^-1, so the exact spectrum is d.
struct Consistent {
    SampledBasis basis;
    Matrix s;
    std::vector<double> d;
};

Consistent consistent_problem(Eigen::Index m, Eigen::Index n, unsigned seed)
{
    Consistent c;
    c.s = oracle::graded_matrix(n, n, 10.0, seed);
    Eigen::VectorXd d(n);
    for (Eigen::Index k = 0; k < n; ++k) d(k) = 1.0 + 0.75 * static_cast<double>(k) + 0.01 * std::sin(seed + k);
    c.d.assign(d.data(), d.data() + n);
    const Matrix mat = c.s * d.asDiagonal() * c.s.inverse();
    c.basis.g = oracle::graded_matrix(m, n, 1e3, seed + 10);
    c.basis.lg = c.basis.g * mat;
    c.basis.family.parts.emplace_back(ChebyshevFamily{static_cast<std::size_t>(n), -1, 1});
    return c;
}

// mu rows annihilating the first n - mu eigenvectors.
Matrix annihilator(const Matrix& s, Eigen::Index mu)
{
    const Eigen::Index n = s.rows();
    const Matrix q = s.leftCols(n - mu).householderQr().householderQ();
    return q.rightCols(mu).transpose();
}

std::vector<double> real_parts(const Spectrum& s)
{
    std::vector<double> out;
    for (const auto& m : s.modes) out.push_back(m.value.real());
    return out;
}

double worst_match(const std::vector<double>& expected, const std::vector<double>& got)
{
    double worst = 0.0;
    for (double e : expected) {
        double best = std::numeric_limits<double>::infinity();
        for (double g : got) best = std::min(best, std::abs(g - e) / std::abs(e));
        worst = std::max(worst, best);
    }
    return worst;
}

// Multiplies every column of G, LG and the boundary block by a random factor
// in [1e-3, 1e3]; returns the factors.
Eigen::VectorXd scale_columns(SampledBasis& b, unsigned seed)
{
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    Eigen::VectorXd f(b.cols());
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
        f(j) = std::pow(10.0, u(gen));
        b.g.col(j) *= f(j);
        b.lg.col(j) *= f(j);
        if (b.boundary_g) b.boundary_g->col(j) *= f(j);
    }
    return f;
}

EigPair pair(double value, Eigen::Index n, Eigen::Index k, bool finite = true)
{
    EigPair p;
    p.value = value;
    p.vector = CVector::Zero(n);
    p.vector(k) = 1.0;
    p.finite = finite;
    return p;
}

SampledBasis diagonal_basis(Eigen::Index n)
{
    SampledBasis b;
    b.g = Matrix::Identity(n, n);
    b.lg = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) b.lg(k, k) = static_cast<double>(k + 1);
    b.family.parts.emplace_back(ChebyshevFamily{static_cast<std::size_t>(n), -1, 1});
    return b;
}

}  // namespace

TEST_CASE("orthonormal G with LG = G diag(mu) returns mu exactly")
{
    SampledBasis b;
    b.g = oracle::random_matrix(20, 5, 2).householderQr().householderQ() * Matrix::Identity(20, 5);
    Eigen::VectorXd mu(5);
    mu << 0.5, 1.5, 2.5, 7.0, 11.0;
    b.lg = b.g * mu.asDiagonal();
    const auto s = solve_variant1(b);
    REQUIRE(s.modes.size() == 5);
    for (int k = 0; k < 5; ++k) CHECK(s.modes[k].value.real() == doctest::Approx(mu(k)).epsilon(1e-14));
}

TEST_CASE("postprocess drops infinite pairs and sorts")
{
    const auto b = diagonal_basis(3);
    const auto s = postprocess({pair(3, 3, 2), pair(1, 3, 0), pair(0, 3, 1, false)}, b, nullptr);
    CHECK(s.discarded == 1);
    REQUIRE(s.modes.size() == 2);
    CHECK(s.modes[0].value.real() == 1.0);
    CHECK(s.modes[1].value.real() == 3.0);
}

TEST_CASE("postprocess leaves real sorted input unchanged")
{
    const auto b = diagonal_basis(3);
    const auto s = postprocess({pair(1, 3, 0), pair(2, 3, 1), pair(3, 3, 2)}, b, nullptr);
    CHECK(s.discarded == 0);
    REQUIRE(s.modes.size() == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(s.modes[k].value == Complex(k + 1.0, 0.0));
        CHECK(s.modes[k].coefficients(k) == Complex(1.0, 0.0));
        CHECK(s.modes[k].residual <= 1e-15);
        CHECK_FALSE(s.modes[k].spurious);
    }
}

TEST_CASE("postprocess filters non-real pairs only for self-adjoint problems")
{
    const auto b = diagonal_basis(2);
    EigPair c = pair(1, 2, 0);
    c.value = Complex(1.0, 0.1);
    SolveOptions opts;
    CHECK(postprocess({c, pair(2, 2, 1)}, b, nullptr, opts).discarded == 1);
    opts.self_adjoint = false;
    CHECK(postprocess({c, pair(2, 2, 1)}, b, nullptr, opts).modes.size() == 2);
}

TEST_CASE("postprocess fixes phase and norm")
{
    const auto b = diagonal_basis(3);
    EigPair p;
    p.value = 2.0;
    p.vector = CVector::Zero(3);
    p.vector(1) = Complex(0.0, -3.0);
    p.vector(0) = Complex(0.5, 0.5);
    const auto s = postprocess({p}, b, nullptr);
    REQUIRE(s.modes.size() == 1);
    const auto& x = s.modes[0].coefficients;
    CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(x(1).imag() == 0.0);
    CHECK(x(1).real() > 0.0);
}

TEST_CASE("input validation")
{
    auto c = consistent_problem(12, 4, 1);
    CHECK_THROWS_AS(solve_variant2(c.basis, Matrix::Ones(4, 4), 4), std::invalid_argument);
    CHECK_THROWS_AS(solve_variant2(c.basis, Matrix::Ones(2, 4), 1), std::invalid_argument);
    CHECK_THROWS_AS(solve_variant2(c.basis, Matrix::Ones(2, 3), 2), std::invalid_argument);
    CHECK_THROWS_AS(solve_variant3(c.basis), std::invalid_argument);
    SampledBasis wide;
    wide.g = Matrix::Ones(2, 3);
    wide.lg = Matrix::Ones(2, 3);
    CHECK_THROWS_AS(solve_variant1(wide), std::invalid_argument);
}

TEST_CASE("evaluate_eigenfunction reproduces columns and G x")
{
    const Scenario s6 = build_example(6);
    const auto& b6 = s6.problem.basis;
    const auto pts = grid_in_domain(s6.domain, 0.05);

    CVector e1 = CVector::Zero(b6.cols());
    e1(1) = 1.0;
    const CVector u1 = evaluate_eigenfunction(b6.family, e1, std::span<const Point2>(pts.points), &s6.domain);
    CHECK((u1.real() - b6.g.col(1)).norm() == 0.0);

    const CVector x = oracle::random_matrix(b6.cols(), 1, 9).cast<Complex>();
    const CVector u = evaluate_eigenfunction(b6.family, x, std::span<const Point2>(pts.points), &s6.domain);
    CHECK((u - b6.g.cast<Complex>() * x).cwiseAbs().maxCoeff() <= 1e-12 * (b6.g.cast<Complex>() * x).cwiseAbs().maxCoeff());

    const Scenario s1 = build_example(1);
    const auto x1 = equispaced_interval(-8, 8, 100);
    const CVector c1 = oracle::random_matrix(40, 1, 4).cast<Complex>();
    const CVector v1 = evaluate_eigenfunction(s1.problem.basis.family, c1, std::span<const double>(x1.points));
    CHECK((v1 - s1.problem.basis.g.cast<Complex>() * c1).cwiseAbs().maxCoeff() <= 1e-12 * v1.cwiseAbs().maxCoeff());

    const std::vector<Point2> outside{{0.9, 0.9}};
    CHECK_THROWS_AS(evaluate_eigenfunction(b6.family, x, std::span<const Point2>(outside), &s6.domain),
                    std::invalid_argument);
    CHECK_THROWS_AS(evaluate_eigenfunction(b6.family, e1.head(3), std::span<const Point2>(pts.points)),
                    std::invalid_argument);
}

TEST_CASE("Arnoldi eigenfunctions replay at the original points")
{
    const Scenario s7 = build_example(7);
    const auto& b = s7.problem.basis;
    const auto pts = grid_in_domain(s7.domain, 0.04);
    const CVector x = oracle::random_matrix(b.cols(), 1, 3).cast<Complex>();
    const CVector u = evaluate_eigenfunction(b.family, x, std::span<const Point2>(pts.points), &s7.domain);
    const CVector gx = b.g.cast<Complex>() * x;
    CHECK((u - gx).cwiseAbs().maxCoeff() <= 1e-12 * gx.cwiseAbs().maxCoeff());
}

TEST_CASE("disk: the first eight modes are clean and come in pairs")
{
    const Scenario s6 = build_example(6);
    const auto spec = solve(s6.problem);
    REQUIRE(spec.modes.size() >= 8);
    std::size_t i = 0;
    while (spec.modes[i].value.real() <= 0.0) ++i;
    for (std::size_t k = i; k < i + 8; ++k) CHECK_FALSE(spec.modes[k].spurious);
    const auto v = spec.clean_values(8);
    REQUIRE(v.size() == 8);
    for (auto [a, b] : {std::pair{1, 2}, {3, 4}, {6, 7}}) CHECK(std::abs(v[a] - v[b]) / v[a] <= 1e-9);
}

TEST_CASE("disk mode 1 is a multiple of J0(j01 r) along a ray")
{
    const Scenario s6 = build_example(6);
    const auto spec = solve(s6.problem);
    const Mode* first = nullptr;
    for (const auto& m : spec.modes)
        if (!m.spurious) {
            first = &m;
            break;
        }
    REQUIRE(first);
    const double j01 = bessel_zero(0, 1);
    std::vector<Point2> ray;
    for (int k = 0; k <= 20; ++k) ray.push_back({0.049 * k * std::cos(0.3), 0.049 * k * std::sin(0.3)});
    const CVector u = evaluate_eigenfunction(s6.problem.basis.family, first->coefficients, std::span<const Point2>(ray));
    const Complex scale = u(0);
    double worst = 0.0;
    for (int k = 0; k <= 20; ++k) {
        const double r = std::hypot(ray[k].x, ray[k].y);
        worst = std::max(worst, std::abs(u(k) / scale - std::cyl_bessel_j(0.0, j01 * r)));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("normal equations: harmless on Example 1, damaging on Example 3")
{
    const Scenario s1 = build_example(1);
    const auto v1 = solve(s1.problem, {}, true).clean_values(3);
    REQUIRE(v1.size() == 3);
    CHECK(std::abs(v1[0] - 1) <= 5e-9);
    CHECK(std::abs(v1[1] - 3) / 3 <= 5e-8);
    CHECK(std::abs(v1[2] - 5) / 5 <= 5e-6);

    const Scenario s3 = build_example(3);
    const auto spec = solve(s3.problem, {}, true);
    CHECK(spec.spurious_count() >= 1);
    const auto v3 = spec.clean_values(10);
    std::vector<double> k2;
    for (int k = 1; k <= 10; ++k) k2.push_back(k * k);
    REQUIRE(v3.size() == 10);
    const auto digits = digits_of_accuracy(v3, k2);
    CHECK(*std::min_element(digits.begin(), digits.end()) < 10.0);
}

TEST_CASE("residual report mirrors the modes")
{
    const auto c = consistent_problem(30, 6, 5);
    const auto s = solve_variant1(c.basis);
    const auto rows = residual_report(s);
    REQUIRE(rows.size() == s.modes.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].index == i);
        CHECK(rows[i].value == s.modes[i].value);
        CHECK(rows[i].interior <= 1e-12);
    }
}

TEST_CASE("Example 2: more samples or Chebyshev samples change little")
{
    const auto base = solve(build_example(2).problem).clean_values(10);
    const auto fine = solve(build_example(2, {{"m", 400}}).problem).clean_values(10);
    REQUIRE(base.size() == 10);
    REQUIRE(fine.size() == 10);
    CHECK(max_relative_error(fine, base) < 1e-8);

    PointSet1D cheb;
    for (int j = 199; j >= 0; --j) cheb.points.push_back(std::cos(std::numbers::pi * j / 199.0));
    const auto stack = chebyshev_basis(30, {-1, 1}, cheb);
    const auto b = assemble_operator(stack, Schrodinger1D{4 / (std::numbers::pi * std::numbers::pi), {}}, cheb);
    Matrix bc(2, 30);
    bc << b.g.row(0), b.g.row(199);
    const auto v = solve_variant2(b, bc, 2).clean_values(10);
    REQUIRE(v.size() == 10);
    CHECK(max_relative_error(v, base) < 1e-8);
}

TEST_SUITE("properties")
{
    TEST_CASE("consistent problems: variant 1 and normal equations are exact")
    {
        for (unsigned seed = 1; seed <= 5; ++seed) {
            const auto c = consistent_problem(40, 8, seed);
            const auto v1 = solve_variant1(c.basis);
            REQUIRE(v1.modes.size() == 8);
            CHECK(max_relative_error(real_parts(v1), c.d) <= 1e-10);
            // Forming G^T G squares the conditioning, so allow a little more.
            const auto ne = solve_normal_equations(c.basis, nullptr, 0);
            REQUIRE(ne.modes.size() == 8);
            CHECK(max_relative_error(real_parts(ne), c.d) <= 1e-9);
        }
    }

    TEST_CASE("consistent problems: variant 2 is exact on the constrained eigenvectors")
    {
        for (unsigned seed = 1; seed <= 5; ++seed) {
            const auto c = consistent_problem(40, 8, seed);
            const Matrix bc = annihilator(c.s, 2);
            const auto s = solve_variant2(c.basis, bc, 2);
            REQUIRE(s.modes.size() == 6);
            const std::vector<double> expect(c.d.begin(), c.d.begin() + 6);
            CHECK(max_relative_error(real_parts(s), expect) <= 1e-10);
        }
    }

    TEST_CASE("consistent problems: variant 3 is exact")
    {
        for (unsigned seed = 1; seed <= 5; ++seed) {
            auto c = consistent_problem(40, 8, seed);
            c.basis.boundary_g = Matrix::Zero(5, 8);
            const auto all = solve_variant3(c.basis);
            REQUIRE(all.modes.size() == 8);
            CHECK(max_relative_error(real_parts(all), c.d) <= 1e-10);

            c.basis.boundary_g = annihilator(c.s, 3);
            const auto some = solve_variant3(c.basis);
            const std::vector<double> expect(c.d.begin(), c.d.begin() + 5);
            CHECK(worst_match(expect, real_parts(some)) <= 1e-10);
        }
    }

    TEST_CASE("variant 2 enforces the boundary rows")
    {
        for (int id : {2, 3}) {
            const Scenario sc = build_example(id);
            const Matrix& bg = *sc.problem.bc_rows;
            const auto s = solve(sc.problem);
            REQUIRE(!s.modes.empty());
            for (const auto& m : s.modes)
                CHECK((bg.cast<Complex>() * m.coefficients).norm() <= 1e-10 * m.coefficients.norm() * bg.norm());
        }
        for (unsigned seed = 1; seed <= 3; ++seed) {
            const auto c = consistent_problem(30, 7, seed);
            const Matrix bc = oracle::random_matrix(2, 7, seed + 40);
            SolveOptions opts;
            opts.self_adjoint = false;
            for (const auto& m : solve_variant2(c.basis, bc, 2, opts).modes)
                CHECK((bc.cast<Complex>() * m.coefficients).norm() <= 1e-10 * bc.norm());
        }
    }

    TEST_CASE("column scaling leaves the eigenvalues unchanged")
    {
        for (int id : {1, 2, 3}) {
            const Scenario sc = build_example(id);
            const auto base = solve(sc.problem).clean_values(sc.n_modes);
            for (unsigned seed = 1; seed <= 3; ++seed) {
                RectEigProblem p = sc.problem;
                const auto f = scale_columns(p.basis, seed);
                if (p.bc_rows) *p.bc_rows = *p.bc_rows * f.asDiagonal();
                const auto v = solve(p).clean_values(sc.n_modes);
                REQUIRE(v.size() == base.size());
                CHECK(max_relative_error(v, base) <= 1e-8);
            }
        }
        const Scenario s6 = build_example(6);
        const auto base = solve(s6.problem).clean_values(8);
        RectEigProblem p = s6.problem;
        scale_columns(p.basis, 7);
        const auto v = solve(p).clean_values(8);
        REQUIRE(v.size() == 8);
        CHECK(max_relative_error(v, base) <= 1e-8);
    }

    TEST_CASE("mu = 0 reproduces variant 1 exactly")
    {
        for (int id : {1, 2, 3}) {
            const auto& b = build_example(id).problem.basis;
            const Matrix none(0, b.cols());
            const Pencil p1 = pencil_variant1(b);
            const Pencil p2 = pencil_variant2(b, none);
            CHECK(p1.a == p2.a);
            CHECK(p1.c == p2.c);
            const auto s1 = solve_variant1(b);
            const auto s2 = solve_variant2(b, none, 0);
            REQUIRE(s1.modes.size() == s2.modes.size());
            for (std::size_t k = 0; k < s1.modes.size(); ++k) {
                CHECK(s1.modes[k].value == s2.modes[k].value);
                CHECK(s1.modes[k].coefficients == s2.modes[k].coefficients);
            }
        }
    }
}
