#include "cohrank/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cohrank {

namespace {

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  // Symmetrize so round-off in the upper triangle never leaks in.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("Hermitian eigen-solver did not converge");
  }
  return solver.eigenvalues();
}

}  // namespace

ComplexMatrix identity(Index dim) { return ComplexMatrix::Identity(dim, dim); }

void require_square(const ComplexMatrix& m, const char* op) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(op) + ": expected a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

double max_abs_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_error(const ComplexMatrix& m) {
  require_square(m, "hermiticity_error");
  return max_abs_entry(m - m.adjoint());
}

double psd_tolerance(const ComplexMatrix& m, const Tolerances& tol) {
  return tol.psd_rel * static_cast<double>(m.rows()) * max_abs_entry(m);
}

ValidationReport validate_density(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "validate_density");
  ValidationReport r;
  r.hermiticity_error = hermiticity_error(m);
  r.hermitian = r.hermiticity_error <= tol.herm;
  r.trace_error = std::abs(m.trace() - Complex(1.0, 0.0));
  r.unit_trace = r.trace_error <= tol.trace;
  r.psd_slack = psd_tolerance(m, tol);
  if (r.hermitian) {
    r.min_eigenvalue = hermitian_eigenvalues(m)(0);
    r.psd = r.min_eigenvalue >= -r.psd_slack;
  }
  return r;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, const Tolerances& tol) {
  const ValidationReport r = validate_density(m, tol);
  if (!r.hermitian) {
    throw InvalidStateError("not Hermitian: max|M - M^dag| = " +
                            std::to_string(r.hermiticity_error));
  }
  if (!r.unit_trace) {
    throw InvalidStateError("trace differs from 1 by " + std::to_string(r.trace_error));
  }
  if (!r.psd) {
    throw InvalidStateError("not positive semidefinite: min eigenvalue " +
                            std::to_string(r.min_eigenvalue));
  }
  return DensityMatrix(std::move(m), std::nullopt);
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m, std::optional<Provenance> prov) {
  return DensityMatrix(std::move(m), std::move(prov));
}

DensityMatrix DensityMatrix::with_provenance(std::optional<Provenance> prov) const {
  return DensityMatrix(m_, std::move(prov));
}

PureState PureState::from_amplitudes(ComplexVector amps, const Tolerances& tol) {
  if (amps.size() == 0) throw DimensionError("pure state needs at least one amplitude");
  const double dev = std::abs(amps.squaredNorm() - 1.0);
  if (dev > tol.norm) {
    throw InvalidStateError("state not normalized: |<psi|psi> - 1| = " +
                            std::to_string(dev));
  }
  return PureState(std::move(amps));
}

PureState PureState::normalized(ComplexVector amps) {
  if (amps.size() == 0) throw DimensionError("pure state needs at least one amplitude");
  const double n = amps.norm();
  if (n == 0.0) throw InvalidStateError("cannot normalize the zero vector");
  amps /= n;
  return PureState(std::move(amps));
}

ComplexMatrix dephase(const ComplexMatrix& m) {
  require_square(m, "dephase");
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  out.diagonal() = m.diagonal();
  return out;
}

DensityMatrix dephase(const DensityMatrix& rho) {
  return DensityMatrix::trusted(dephase(rho.matrix()));
}

bool is_diagonal(const ComplexMatrix& m, double tol) {
  return max_abs_entry(m - dephase(m)) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix tensor_power(const ComplexMatrix& m, int n, std::size_t cap) {
  require_square(m, "tensor_power");
  if (n < 1) throw DomainError("tensor_power: n must be >= 1");
  const double full = std::pow(static_cast<double>(m.rows()), n);
  if (full > static_cast<double>(cap)) {
    throw DimensionError("tensor_power: dimension " + std::to_string(full) +
                         " exceeds cap " + std::to_string(cap));
  }
  ComplexMatrix out = m;
  for (int k = 1; k < n; ++k) out = kron(out, m);
  return out;
}

std::vector<double> spectrum(const ComplexMatrix& m, const Tolerances& tol) {
  const double herr = hermiticity_error(m);
  if (herr > tol.herm) {
    throw InvalidStateError("spectrum: matrix is not Hermitian (error " +
                            std::to_string(herr) + ")");
  }
  const Eigen::VectorXd ev = hermitian_eigenvalues(m);
  return {ev.data(), ev.data() + ev.size()};
}

double min_eigenvalue(const ComplexMatrix& m, const Tolerances& tol) {
  return spectrum(m, tol).front();
}

double max_eigenvalue(const ComplexMatrix& m, const Tolerances& tol) {
  return spectrum(m, tol).back();
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Index dimA, Index dimB) {
  require_square(m, "partial_transpose");
  if (dimA < 1 || dimB < 1 || dimA * dimB != m.rows()) {
    throw DimensionError("partial_transpose: " + std::to_string(dimA) + "x" +
                         std::to_string(dimB) + " does not match dimension " +
                         std::to_string(m.rows()));
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < dimA; ++i) {
    for (Index j = 0; j < dimA; ++j) {
      out.block(i * dimB, j * dimB, dimB, dimB) =
          m.block(i * dimB, j * dimB, dimB, dimB).transpose();
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Index dimA, Index dimB,
                            bool keep_first) {
  require_square(m, "partial_trace");
  if (dimA < 1 || dimB < 1 || dimA * dimB != m.rows()) {
    throw DimensionError("partial_trace: dimensions do not match");
  }
  if (keep_first) {
    ComplexMatrix out(dimA, dimA);
    for (Index i = 0; i < dimA; ++i)
      for (Index j = 0; j < dimA; ++j)
        out(i, j) = m.block(i * dimB, j * dimB, dimB, dimB).trace();
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dimB, dimB);
  for (Index i = 0; i < dimA; ++i) out += m.block(i * dimB, i * dimB, dimB, dimB);
  return out;
}

double trace_norm(const ComplexMatrix& m) {
  require_square(m, "trace_norm");
  const double scale = std::max(1.0, max_abs_entry(m));
  if (hermiticity_error(m) <= 1e-13 * scale) {
    return hermitian_eigenvalues(m).cwiseAbs().sum();
  }
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return 0.5 * trace_norm(a - b);
}

}  // namespace cohrank
