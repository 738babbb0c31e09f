#pragma once

// Dense linear-algebra primitives used by the rectangular eigensolvers.
//
// All matrices are Eigen column-major doubles. Eigenvalues of real pencils
// come back complex, since nothing guarantees a real spectrum once the
// pencil has been squared up by a projection.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace recteig {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Raised when a factorization or eigensolve does not complete.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One eigenpair of a square pencil (A, C). `finite` is false when the
/// pencil has an infinite eigenvalue in that direction; `value` is then
/// meaningless and `vector` is whatever the QZ step produced.
struct EigPair {
    Complex value{};
    CVector vector;
    bool finite = true;
};

struct QrFactors {
    Matrix q;  ///< rows x cols, orthonormal columns
    Matrix r;  ///< cols x cols, upper triangular, nonnegative diagonal
};

/// How the column space of a tall matrix is orthonormalized.
enum class Orthogonalization { qr, svd };

/// An orthonormal basis `q` for range(M) together with `r = q^T M`.
/// For the QR route `r` is the triangular factor; for the SVD route it is
/// Sigma V^T and is not triangular.
struct OrthoFactors {
    Matrix q;
    Matrix r;
};

/// Throws std::invalid_argument naming `what` if any entry is NaN or Inf.
void require_finite(const Matrix& m, const std::string& what);

/// Thin Householder QR with the sign convention diag(R) >= 0.
QrFactors thin_qr(const Matrix& m);

/// Left singular vectors spanning range(M) (thin SVD).
Matrix orthonormal_basis_svd(const Matrix& m);

OrthoFactors orthonormal_factor(const Matrix& m, Orthogonalization mode);

/// All n eigenpairs of A x = lambda C x by the QZ algorithm (LAPACK dggev).
/// A direction is reported infinite when |beta| <= n * eps * ||C||_F.
/// Finite eigenvectors have unit 2-norm.
std::vector<EigPair> generalized_eig(const Matrix& a, const Matrix& c);

}  // namespace recteig
