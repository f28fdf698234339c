#pragma once

// Dense complex Hermitian matrices and their eigenvalues, backed by Eigen's
// self-adjoint solver and checked against a residual bound.

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace giv {

using cplx = std::complex<double>;

class HermitianMatrix {
public:
    explicit HermitianMatrix(int order);
    // Rejects non-finite entries and any asymmetry above `tol` (relative to
    // the largest entry); the stored matrix is the Hermitian part.
    explicit HermitianMatrix(const Eigen::MatrixXcd& m, double tol = 0.0);

    int order() const { return static_cast<int>(m_.rows()); }
    cplx operator()(int i, int j) const { return m_(i, j); }
    const Eigen::MatrixXcd& matrix() const { return m_; }

    // M(i,j) += v and M(j,i) += conj(v). On the diagonal this adds 2 Re v.
    void add_hopping(int i, int j, cplx v);
    void scale(double s) { m_ *= s; }

    double max_abs() const;
    double trace() const;
    double frobenius_sq() const;

private:
    Eigen::MatrixXcd m_;
};

struct EigenResult {
    std::vector<double> eigenvalues;           // ascending
    std::optional<Eigen::MatrixXcd> vectors;   // columns, orthonormal
    double residual = 0.0;                     // max_i |A v_i - l_i v_i|_2, when vectors were formed
};

class EigenSolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// All eigenvalues with multiplicity. Throws EigenSolverError when the solver
// does not converge or the result fails its self-check.
EigenResult eigh(const HermitianMatrix& a, bool want_vectors = false);

}  // namespace giv
