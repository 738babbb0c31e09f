#include "recteig/numkernel.hpp"

#include <lapacke.h>

#include <cmath>
#include <limits>

namespace recteig {

void require_finite(const Matrix& m, const std::string& what)
{
    if (!m.allFinite()) {
        throw std::invalid_argument(what + ": matrix has non-finite entries");
    }
}

namespace {

void require_tall(const Matrix& m, const char* what)
{
    if (m.rows() < 1 || m.cols() < 1) {
        throw std::invalid_argument(std::string(what) + ": empty matrix");
    }
    if (m.rows() < m.cols()) {
        throw std::invalid_argument(std::string(what) + ": needs rows >= cols, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

}  // namespace

QrFactors thin_qr(const Matrix& m)
{
    require_tall(m, "thin_qr");
    require_finite(m, "thin_qr");

    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    Eigen::HouseholderQR<Matrix> qr(m);

    QrFactors out;
    out.q = qr.householderQ() * Matrix::Identity(rows, cols);
    out.r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < cols; ++k) {
        if (out.r(k, k) < 0.0) {
            out.r.row(k) *= -1.0;
            out.q.col(k) *= -1.0;
        }
    }
    return out;
}

Matrix orthonormal_basis_svd(const Matrix& m)
{
    require_tall(m, "orthonormal_basis_svd");
    require_finite(m, "orthonormal_basis_svd");
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU);
    return svd.matrixU();
}

OrthoFactors orthonormal_factor(const Matrix& m, Orthogonalization mode)
{
    if (mode == Orthogonalization::qr) {
        auto [q, r] = thin_qr(m);
        return {std::move(q), std::move(r)};
    }
    Matrix q = orthonormal_basis_svd(m);
    Matrix r = q.transpose() * m;
    return {std::move(q), std::move(r)};
}

std::vector<EigPair> generalized_eig(const Matrix& a, const Matrix& c)
{
    if (a.rows() != a.cols() || c.rows() != c.cols()) {
        throw std::invalid_argument("generalized_eig: pencil matrices must be square");
    }
    if (a.rows() != c.rows()) {
        throw std::invalid_argument("generalized_eig: A and C differ in size");
    }
    if (a.rows() < 1) {
        throw std::invalid_argument("generalized_eig: empty pencil");
    }
    require_finite(a, "generalized_eig(A)");
    require_finite(c, "generalized_eig(C)");

    const lapack_int n = static_cast<lapack_int>(a.rows());
    Matrix aw = a;
    Matrix cw = c;
    Vector alphar(n), alphai(n), beta(n);
    Matrix vr(n, n);
    double vl_dummy = 0.0;

    const lapack_int info = LAPACKE_dggev(LAPACK_COL_MAJOR, 'N', 'V', n, aw.data(), n, cw.data(), n,
                                          alphar.data(), alphai.data(), beta.data(), &vl_dummy, 1,
                                          vr.data(), n);
    if (info < 0) {
        throw std::invalid_argument("generalized_eig: dggev rejected argument " + std::to_string(-info));
    }
    if (info > 0) {
        throw SolverError("generalized_eig: QZ iteration failed (dggev info " + std::to_string(info) + ")");
    }

    const double beta_floor = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * c.norm();

    std::vector<EigPair> pairs(static_cast<std::size_t>(n));
    for (lapack_int j = 0; j < n; ++j) {
        EigPair& p = pairs[static_cast<std::size_t>(j)];
        if (alphai(j) == 0.0) {
            p.vector = vr.col(j).cast<Complex>();
        } else if (alphai(j) > 0.0 && j + 1 < n) {
            // dggev stores a conjugate pair as (re, im) in consecutive columns.
            p.vector = vr.col(j).cast<Complex>() + Complex(0.0, 1.0) * vr.col(j + 1).cast<Complex>();
        } else {
            p.vector = pairs[static_cast<std::size_t>(j - 1)].vector.conjugate();
        }
        const double vnorm = p.vector.norm();
        if (vnorm > 0.0) {
            p.vector /= vnorm;
        }
        p.finite = std::abs(beta(j)) > beta_floor;
        p.value = p.finite ? Complex(alphar(j), alphai(j)) / beta(j)
                           : Complex(std::numeric_limits<double>::infinity(), 0.0);
    }
    return pairs;
}

}  // namespace recteig
