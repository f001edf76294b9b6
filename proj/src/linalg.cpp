// Copyright 2026 The twinhs developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twinhs/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace twinhs {

double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hs_norm(const CMatrix& a) { return a.norm(); }

bool all_finite(const CMatrix& a) { return a.allFinite(); }

CMatrix identity(Eigen::Index d) { return CMatrix::Identity(d, d); }

CMatrix pauli(int i) {
  CMatrix m(2, 2);
  const Complex j(0.0, 1.0);
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -j, j, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: index must be 0..3");
  }
  return m;
}

CVector vec_rm(const CMatrix& a) {
  CVector v(a.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  return v;
}

CMatrix unvec_rm(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols)
    throw std::invalid_argument("unvec_rm: size mismatch");
  CMatrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = v(i * cols + j);
  return a;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  return a * b - b * a;
}

HermOp::HermOp(CMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("HermOp: not square");
  if (!all_finite(m)) throw std::invalid_argument("HermOp: non-finite entries");
  const double dev = max_abs(m - m.adjoint());
  if (dev > 1e-12 * std::max(1.0, max_abs(m))) {
    std::ostringstream os;
    os << "HermOp: matrix not Hermitian (max deviation " << dev << ")";
    throw std::invalid_argument(os.str());
  }
  mat_ = std::move(m);
}

HermOp HermOp::symmetrized(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("HermOp: not square");
  const double dev = max_abs(m - m.adjoint());
  if (dev > tol * std::max(1.0, max_abs(m))) {
    std::ostringstream os;
    os << "HermOp: matrix not Hermitian within " << tol << " (deviation " << dev
       << ")";
    throw std::invalid_argument(os.str());
  }
  return HermOp(((m + m.adjoint()) / 2.0).eval());
}

BipartiteState::BipartiteState(Eigen::Index d1, Eigen::Index d2,
                               const CMatrix& rho, double tol)
    : d1_(d1), d2_(d2) {
  if (d1 <= 0 || d2 <= 0)
    throw std::invalid_argument("BipartiteState: factor dims must be positive");
  if (rho.rows() != d1 * d2 || rho.cols() != d1 * d2)
    throw std::invalid_argument("BipartiteState: matrix is not d1*d2 square");
  rho_ = HermOp::symmetrized(rho, std::max(tol, 1e-12));

  const Complex tr = rho_.matrix().trace();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_.matrix(),
                                            Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError("BipartiteState: eigenvalue check failed to converge");
  const RVector ev = es.eigenvalues();
  std::vector<double> diag(ev.data(), ev.data() + ev.size());
  if (ev.minCoeff() < -tol) {
    std::ostringstream os;
    os << "BipartiteState: not positive (lowest eigenvalue " << ev.minCoeff()
       << ")";
    throw NotAStateError(os.str(), diag);
  }
  if (std::abs(tr - 1.0) > tol) {
    std::ostringstream os;
    os << "BipartiteState: trace is " << tr.real() << " (expected 1)";
    throw NotAStateError(os.str(), diag);
  }
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix partial_trace_mat(const CMatrix& m, Eigen::Index d1, Eigen::Index d2,
                          int traced_factor) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2)
    throw std::invalid_argument("partial_trace: dimension mismatch");
  if (traced_factor == 1) {
    CMatrix out = CMatrix::Zero(d2, d2);
    for (Eigen::Index i2 = 0; i2 < d2; ++i2)
      for (Eigen::Index j2 = 0; j2 < d2; ++j2)
        for (Eigen::Index k = 0; k < d1; ++k)
          out(i2, j2) += m(k * d2 + i2, k * d2 + j2);
    return out;
  }
  if (traced_factor == 2) {
    CMatrix out = CMatrix::Zero(d1, d1);
    for (Eigen::Index i1 = 0; i1 < d1; ++i1)
      for (Eigen::Index j1 = 0; j1 < d1; ++j1)
        for (Eigen::Index k = 0; k < d2; ++k)
          out(i1, j1) += m(i1 * d2 + k, j1 * d2 + k);
    return out;
  }
  throw std::invalid_argument("partial_trace: factor must be 1 or 2");
}

HermOp partial_trace(const BipartiteState& s, int traced_factor) {
  return HermOp::symmetrized(
      partial_trace_mat(s.rho(), s.d1(), s.d2(), traced_factor), 1e-12);
}

EighResult eigh(const HermOp& h, double tol) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
  if (es.info() != Eigen::Success)
    throw NumericalError("eigh: eigensolver did not converge");
  const Eigen::Index n = h.dim();
  EighResult r;
  r.eigenvalues = es.eigenvalues().reverse();
  r.eigenvectors = es.eigenvectors().rowwise().reverse();
  // Group eigenvalues whose consecutive gaps are below tol * spectral radius.
  const double scale =
      n == 0 ? 0.0 : std::max(std::abs(r.eigenvalues(0)),
                              std::abs(r.eigenvalues(n - 1)));
  const double gap_tol = tol * std::max(scale, 0.0);
  int first = 0;
  for (int k = 1; k <= n; ++k) {
    if (k == n || r.eigenvalues(k - 1) - r.eigenvalues(k) > gap_tol) {
      r.blocks.emplace_back(first, k);
      first = k;
    }
  }
  return r;
}

SvdResult svd(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> solver(m,
                                   Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success)
    throw NumericalError("svd: decomposition did not converge");
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

NullspaceResult nullspace_real(const RMatrix& a, double tol) {
  const Eigen::Index n = a.cols();
  NullspaceResult r;
  if (a.rows() == 0 || n == 0) {
    r.basis = RMatrix::Identity(n, n);
    r.singular_values = RVector::Zero(0);
    r.smallest_kept = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  Eigen::JacobiSVD<RMatrix> solver(a, Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success)
    throw NumericalError("nullspace_real: SVD did not converge");
  r.singular_values = solver.singularValues();
  r.sigma_max = r.singular_values.size() > 0 ? r.singular_values(0) : 0.0;
  const double cutoff = tol * r.sigma_max;

  Eigen::Index rank = 0;
  while (rank < r.singular_values.size() && r.singular_values(rank) > cutoff)
    ++rank;

  r.basis = solver.matrixV().rightCols(n - rank);
  r.smallest_kept = rank > 0 ? r.singular_values(rank - 1)
                             : std::numeric_limits<double>::quiet_NaN();
  r.largest_cut =
      rank < r.singular_values.size() ? r.singular_values(rank) : 0.0;
  return r;
}

RangeInfo range_of(const HermOp& h, double tol) {
  const EighResult e = eigh(h, tol);
  const double scale = e.eigenvalues.size() > 0
                           ? e.eigenvalues.cwiseAbs().maxCoeff()
                           : 0.0;
  const double cutoff = tol * scale;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k)
    if (std::abs(e.eigenvalues(k)) > cutoff) keep.push_back(k);

  RangeInfo info;
  info.rank = static_cast<Eigen::Index>(keep.size());
  info.basis = CMatrix(h.dim(), info.rank);
  for (Eigen::Index c = 0; c < info.rank; ++c)
    info.basis.col(c) = e.eigenvectors.col(keep[c]);
  info.projector = info.basis * info.basis.adjoint();
  return info;
}

}  // namespace twinhs
