#pragma once

#include <Eigen/Dense>
#include <utility>

#include "spinladder/errors.hpp"

namespace spinladder {

// Dense Hermitian matrix. Construction symmetrizes the input; inputs whose
// anti-Hermitian part exceeds the tolerance are rejected rather than
// silently repaired.
class HermitianMatrix {
public:
    explicit HermitianMatrix(Eigen::MatrixXcd m, double tol = 1e-12)
    {
        if (m.rows() != m.cols())
            throw DimensionMismatch("hermitian: matrix must be square");
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (asym > tol * scale)
            throw ValidationError("hermitian: anti-Hermitian part " +
                                  std::to_string(asym) + " exceeds tolerance");
        mat_ = 0.5 * (m + m.adjoint().eval());
    }

    const Eigen::MatrixXcd& mat() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

private:
    Eigen::MatrixXcd mat_;
};

struct EigResult {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXcd vectors; // columns, same order as values
};

// Full spectrum of a Hermitian matrix. The decomposition is checked:
// residual below 1e-10 * ||M|| and orthonormality below 1e-10, otherwise
// ConvergenceFailure is thrown.
EigResult eigensolve(const HermitianMatrix& m);

} // namespace spinladder
