#include "oracles.hpp"
#include "recteig/numkernel.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>

using namespace recteig;

namespace {

std::vector<Complex> finite_values(const std::vector<EigPair>& pairs)
{
    std::vector<Complex> out;
    for (const auto& p : pairs)
        if (p.finite) out.push_back(p.value);
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

// Greedy nearest matching; returns the worst relative distance.
double spectrum_distance(std::vector<Complex> a, std::vector<Complex> b)
{
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (const Complex x : a) {
        auto best = std::min_element(b.begin(), b.end(),
                                     [&](Complex p, Complex q) { return std::abs(p - x) < std::abs(q - x); });
        worst = std::max(worst, std::abs(*best - x) / std::max(1.0, std::abs(x)));
        b.erase(best);
    }
    return worst;
}

}  // namespace

TEST_CASE("thin_qr of the identity is the identity")
{
    const auto f = thin_qr(Matrix::Identity(5, 5));
    CHECK((f.q - Matrix::Identity(5, 5)).norm() == doctest::Approx(0.0));
    CHECK((f.r - Matrix::Identity(5, 5)).norm() == doctest::Approx(0.0));
}

TEST_CASE("thin_qr normalizes a single column")
{
    Matrix m(2, 1);
    m << 3, 4;
    const auto f = thin_qr(m);
    CHECK(f.q(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(f.q(1, 0) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(f.r(0, 0) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("thin_qr rejects wide and non-finite input")
{
    CHECK_THROWS_AS(thin_qr(Matrix::Ones(2, 3)), std::invalid_argument);
    Matrix bad = Matrix::Ones(4, 2);
    bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(thin_qr(bad), std::invalid_argument);
}

TEST_CASE("random 100x20: orthonormal Q and small reconstruction error")
{
    const Matrix m = oracle::random_matrix(100, 20, 7);
    const auto f = thin_qr(m);
    CHECK((f.q.transpose() * f.q - Matrix::Identity(20, 20)).norm() <= 1e-13);
    CHECK((f.q * f.r - m).norm() <= 1e-13 * m.norm());
    CHECK(f.r.triangularView<Eigen::StrictlyLower>().toDenseMatrix().norm() == 0.0);
    CHECK(f.r.diagonal().minCoeff() >= 0.0);
}

TEST_CASE("orthonormal_basis_svd of the identity is a signed identity")
{
    const Matrix q = orthonormal_basis_svd(Matrix::Identity(4, 4));
    CHECK((q.cwiseAbs() - Matrix::Identity(4, 4)).norm() <= 1e-15);
}

TEST_CASE("orthonormal_basis_svd keeps the span of a matrix with a duplicated column")
{
    Matrix m = oracle::random_matrix(30, 5, 11);
    m.col(4) = m.col(1);
    const Matrix q = orthonormal_basis_svd(m);
    const Matrix q_ref = thin_qr(m.leftCols(4)).q;
    // Keep the four singular directions that carry the span.
    const Matrix u = q.leftCols(4);
    CHECK((u.transpose() * u - Matrix::Identity(4, 4)).norm() <= 1e-13);
    CHECK((u * u.transpose() - q_ref * q_ref.transpose()).norm() <= 1e-12);
}

TEST_CASE("orthonormal_factor returns r = q^T M for both routes")
{
    const Matrix m = oracle::random_matrix(40, 6, 3);
    for (auto mode : {Orthogonalization::qr, Orthogonalization::svd}) {
        const auto f = orthonormal_factor(m, mode);
        CHECK((f.q * f.r - m).norm() <= 1e-13 * m.norm());
        CHECK((f.r - f.q.transpose() * m).norm() <= 1e-13 * m.norm());
    }
}

TEST_CASE("diagonal pencil")
{
    Matrix a = Matrix::Zero(2, 2);
    a.diagonal() << 2, 3;
    const auto v = finite_values(generalized_eig(a, Matrix::Identity(2, 2)));
    REQUIRE(v.size() == 2);
    CHECK(v[0].real() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(v[1].real() == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("singular C gives one infinite direction")
{
    Matrix c = Matrix::Zero(2, 2);
    c(0, 0) = 1.0;
    const auto pairs = generalized_eig(Matrix::Identity(2, 2), c);
    REQUIRE(pairs.size() == 2);
    const auto v = finite_values(pairs);
    REQUIRE(v.size() == 1);
    CHECK(v[0].real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("generalized_eig rejects mismatched shapes")
{
    CHECK_THROWS_AS(generalized_eig(Matrix::Ones(2, 3), Matrix::Ones(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(generalized_eig(Matrix::Ones(2, 2), Matrix::Ones(3, 3)), std::invalid_argument);
}

TEST_SUITE("properties")
{
    TEST_CASE("thin_qr residuals up to condition number 1e14")
    {
        for (unsigned seed = 1; seed <= 6; ++seed) {
            for (double cond : {1.0, 1e4, 1e8, 1e14}) {
                const Matrix m = oracle::graded_matrix(60 + 10 * seed, 12 + seed, cond, seed);
                const auto f = thin_qr(m);
                const auto n = m.cols();
                CHECK((f.q.transpose() * f.q - Matrix::Identity(n, n)).norm() <= 1e-12);
                CHECK((f.q * f.r - m).norm() <= 1e-12 * m.norm());
                CHECK(f.r.diagonal().minCoeff() >= 0.0);
            }
        }
    }

    TEST_CASE("finite eigenpairs satisfy the backward residual bound")
    {
        for (unsigned seed = 1; seed <= 8; ++seed) {
            const Matrix a = oracle::random_matrix(12, 12, seed);
            const Matrix c = oracle::random_matrix(12, 12, seed + 100) + 4.0 * Matrix::Identity(12, 12);
            for (const auto& p : generalized_eig(a, c)) {
                REQUIRE(p.finite);
                const CVector r = a.cast<Complex>() * p.vector - p.value * (c.cast<Complex>() * p.vector);
                CHECK(r.norm() <= 1e-12 * (a.norm() + std::abs(p.value) * c.norm()) * p.vector.norm());
                CHECK(p.vector.norm() == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("pencil (A, I) matches a standard eigensolve")
    {
        for (unsigned seed = 1; seed <= 8; ++seed) {
            const Matrix a = oracle::random_matrix(10, 10, seed);
            Eigen::EigenSolver<Matrix> es(a);
            std::vector<Complex> ref(es.eigenvalues().data(), es.eigenvalues().data() + 10);
            const auto got = finite_values(generalized_eig(a, Matrix::Identity(10, 10)));
            CHECK(spectrum_distance(got, ref) <= 1e-10);
        }
    }

    TEST_CASE("eigenvalues are invariant under left multiplication")
    {
        for (unsigned seed = 1; seed <= 8; ++seed) {
            const Matrix a = oracle::random_matrix(10, 10, seed);
            const Matrix c = oracle::random_matrix(10, 10, seed + 50) + 3.0 * Matrix::Identity(10, 10);
            const Matrix w = oracle::graded_matrix(10, 10, 10.0, seed + 200);
            const auto base = finite_values(generalized_eig(a, c));
            const auto moved = finite_values(generalized_eig(w * a, w * c));
            CHECK(spectrum_distance(moved, base) <= 1e-10);
        }
    }
}
