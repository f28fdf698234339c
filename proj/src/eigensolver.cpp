#include "giv/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace giv {

HermitianMatrix::HermitianMatrix(int order)
{
    if (order < 1) throw std::invalid_argument("matrix order must be >= 1");
    m_ = Eigen::MatrixXcd::Zero(order, order);
}

HermitianMatrix::HermitianMatrix(const Eigen::MatrixXcd& m, double tol)
{
    if (m.rows() < 1 || m.rows() != m.cols()) throw std::invalid_argument("matrix must be square and non-empty");
    if (!m.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol * scale) throw std::invalid_argument("matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");
    m_ = 0.5 * (m + m.adjoint());
}

void HermitianMatrix::add_hopping(int i, int j, cplx v)
{
    m_(i, j) += v;
    m_(j, i) += std::conj(v);
}

double HermitianMatrix::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

double HermitianMatrix::trace() const { return m_.diagonal().real().sum(); }

double HermitianMatrix::frobenius_sq() const { return m_.squaredNorm(); }

EigenResult eigh(const HermitianMatrix& a, bool want_vectors)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.matrix(),
                                                           want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw EigenSolverError("eigensolver did not converge for order " + std::to_string(a.order()) + " (max " +
                               std::to_string(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>::m_maxIterations) +
                               " sweeps per eigenvalue)");
    EigenResult r;
    const Eigen::VectorXd& ev = solver.eigenvalues();
    r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::sort(r.eigenvalues.begin(), r.eigenvalues.end());

    const double n = a.order();
    const double bound = 1e-10 * std::max(1.0, a.max_abs() * n);
    if (want_vectors) {
        const Eigen::MatrixXcd& v = solver.eigenvectors();
        const Eigen::MatrixXcd res = a.matrix() * v - v * ev.asDiagonal();
        r.residual = res.colwise().norm().maxCoeff();
        if (r.residual > bound)
            throw EigenSolverError("eigenvector residual " + std::to_string(r.residual) + " exceeds " + std::to_string(bound));
        r.vectors = v;
    } else {
        double sum = 0.0;
        for (double x : r.eigenvalues) sum += x;
        if (std::abs(sum - a.trace()) > bound * n)
            throw EigenSolverError("eigenvalue sum does not reproduce the trace");
    }
    return r;
}

}  // namespace giv
