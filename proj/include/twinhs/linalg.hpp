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

#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "twinhs/errors.hpp"

namespace twinhs {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Default relative tolerance. The matrices here are tiny (<= 16x16 in the
/// two-qubit application, <= ~64 in general), so double precision leaves a
/// lot of headroom.
inline constexpr double kDefaultTol = 1e-10;

double max_abs(const CMatrix& a);
double hs_norm(const CMatrix& a);  // Frobenius norm = Hilbert-Schmidt norm
bool all_finite(const CMatrix& a);

CMatrix identity(Eigen::Index d);
/// Pauli matrices; pauli(0) is the 2x2 identity, pauli(1..3) = sigma_x,y,z.
CMatrix pauli(int i);

/// Row-major flattening of a matrix to a vector, index i*cols + j, and back.
/// Every supervector in this library uses this convention.
CVector vec_rm(const CMatrix& a);
CMatrix unvec_rm(const CVector& v, Eigen::Index rows, Eigen::Index cols);

CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// Hermitian operator on one tensor factor. The constructor enforces
/// ||M - M^dag||_max <= 1e-12 * max(1, ||M||_max).
class HermOp {
 public:
  HermOp() = default;
  explicit HermOp(CMatrix m);

  /// Accepts matrices Hermitian only within `tol` (e.g. user JSON with
  /// rounding, or projector compressions of verified twins) and stores the
  /// symmetrized (M + M^dag)/2.
  static HermOp symmetrized(const CMatrix& m, double tol);

  Eigen::Index dim() const { return mat_.rows(); }
  const CMatrix& matrix() const { return mat_; }

 private:
  CMatrix mat_;
};

/// Bipartite density operator on C^{d1} (x) C^{d2}, composite index
/// i = i1*d2 + i2 (factor 1 major). Validates Hermiticity, positivity
/// (eigenvalues >= -tol) and unit trace (|Tr - 1| <= tol).
class BipartiteState {
 public:
  BipartiteState(Eigen::Index d1, Eigen::Index d2, const CMatrix& rho,
                 double tol = kDefaultTol);

  Eigen::Index d1() const { return d1_; }
  Eigen::Index d2() const { return d2_; }
  Eigen::Index dim() const { return d1_ * d2_; }
  const CMatrix& rho() const { return rho_.matrix(); }
  const HermOp& herm() const { return rho_; }

 private:
  Eigen::Index d1_ = 0, d2_ = 0;
  HermOp rho_;
};

/// Kronecker product with composite row index i1*rows(b) + i2.
CMatrix tensor(const CMatrix& a, const CMatrix& b);

/// Partial trace of an operator on C^{d1} (x) C^{d2} over the given factor.
/// traced_factor = 1 returns the factor-2 operator and vice versa.
CMatrix partial_trace_mat(const CMatrix& m, Eigen::Index d1, Eigen::Index d2,
                          int traced_factor);

/// partial_trace(s, 1) = rho_2, partial_trace(s, 2) = rho_1.
HermOp partial_trace(const BipartiteState& s, int traced_factor);

struct EighResult {
  RVector eigenvalues;  // descending
  CMatrix eigenvectors; // orthonormal columns, aligned with eigenvalues
  // Half-open [first, last) column ranges grouping eigenvalues that are
  // degenerate at the requested tolerance (gaps <= tol * spectral radius).
  std::vector<std::pair<int, int>> blocks;
};
EighResult eigh(const HermOp& h, double tol = kDefaultTol);

struct SvdResult {
  CMatrix u;     // column-orthonormal
  RVector sigma; // descending, >= 0
  CMatrix v;     // column-orthonormal; m = u * sigma.asDiagonal() * v.adjoint()
};
SvdResult svd(const CMatrix& m);

struct NullspaceResult {
  RMatrix basis;           // orthonormal columns spanning {x : ||Ax|| <= tol*sigma_max}
  RVector singular_values; // descending, size min(rows, cols)
  double sigma_max = 0.0;
  // The two singular values bracketing the rank cutoff, for audit reports.
  // smallest_kept is NaN when everything is kernel; largest_cut is 0 when the
  // kernel comes only from extra columns (or is empty).
  double smallest_kept = 0.0;
  double largest_cut = 0.0;
};
NullspaceResult nullspace_real(const RMatrix& a, double tol = kDefaultTol);

/// Range (support) data of a Hermitian operator: eigenvalues with
/// |lambda| > tol * spectral radius count toward the rank.
struct RangeInfo {
  CMatrix basis;     // dim x rank, orthonormal columns spanning the range
  CMatrix projector; // dim x dim
  Eigen::Index rank = 0;
};
RangeInfo range_of(const HermOp& h, double tol = kDefaultTol);

}  // namespace twinhs
