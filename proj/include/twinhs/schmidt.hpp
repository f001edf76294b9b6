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

//
// Operators as Hilbert-Schmidt supervectors: realignment, the operator
// Schmidt decomposition of a bipartite density operator, its all-Hermitian
// variant built from an antiunitary-involution invariant basis, and the
// nonhermitian continuation induced by a weak twin projector.
//

#pragma once

#include <vector>

#include "twinhs/linalg.hpp"

namespace twinhs {

/// An operator on C^{d1} (x) C^{d2} viewed as a vector of the
/// Hilbert-Schmidt space (inner product Tr A^dag B). Factor-space
/// supervectors use d2 = 1.
struct SuperVec {
  Eigen::Index d1 = 0, d2 = 0;
  CMatrix op;
  double hs_norm = 0.0;

  SuperVec(Eigen::Index d1_, Eigen::Index d2_, CMatrix op_);
  static SuperVec from_state(const BipartiteState& s);
  /// Operator on a single d-dimensional factor.
  static SuperVec factor(CMatrix op_);
};

Complex hs_inner(const SuperVec& a, const SuperVec& b);

/// Realignment R of a bipartite operator: R[(i1,j1),(i2,j2)] =
/// m[(i1,i2),(j1,j2)], shape d1^2 x d2^2. Entry permutation, so
/// ||R||_F = ||m||_HS.
CMatrix realign_mat(const CMatrix& m, Eigen::Index d1, Eigen::Index d2);
CMatrix realign(const BipartiteState& s);
/// Inverse of realign_mat.
CMatrix unrealign_mat(const CMatrix& r, Eigen::Index d1, Eigen::Index d2);

struct SchmidtTerm {
  double coeff = 0.0; // > 0
  CMatrix op_a;       // HS-normalized factor-1 operator
  CMatrix op_b;       // HS-normalized factor-2 operator
};

struct SchmidtDecomp {
  std::vector<SchmidtTerm> terms; // coefficients descending
  bool hermitian = false;

  /// Sum of coeff * (op_a (x) op_b); approximates rho / ||rho||_HS.
  CMatrix reconstruct() const;
  std::vector<double> coefficients() const;
};

/// General (possibly nonhermitian) operator Schmidt decomposition of the
/// normalized supervector rho/||rho||_HS, via SVD of the realignment.
/// Terms with coeff <= tol * (largest coeff) are dropped.
SchmidtDecomp osd(const BipartiteState& s, double tol = kDefaultTol);

/// Antilinear map x -> M conj(x). For maps on operator (super-)spaces M acts
/// on the row-major vec of the operator.
class AntilinearMap {
 public:
  explicit AntilinearMap(CMatrix m);

  /// Adjoining A -> A^dag on operators over C^d, realized on vec'd entries.
  /// Its fixed points are exactly the Hermitian operators.
  static AntilinearMap adjoint_involution(Eigen::Index d);

  CVector apply(const CVector& x) const { return mat_ * x.conjugate(); }
  bool is_involution(double tol = kDefaultTol) const;
  const CMatrix& matrix() const { return mat_; }
  Eigen::Index rows() const { return mat_.rows(); }
  Eigen::Index cols() const { return mat_.cols(); }

 private:
  CMatrix mat_;
};

/// Orthonormal basis of span(vectors) consisting of fixed points of the
/// antilinear involution v. Gram-Schmidt over the candidates
/// {e + v(e), i(e - v(e))}, skipping candidates of norm < tol.
/// Throws InvariantViolationError when the span is not v-invariant.
std::vector<SuperVec> invariant_basis(const std::vector<SuperVec>& vectors,
                                      const AntilinearMap& v,
                                      double tol = kDefaultTol);

/// Deterministic sign for a Hermitian factor operator: +1/-1 so that the
/// largest-magnitude diagonal entry (first on ties, row-major) is positive;
/// for zero diagonals, the first off-diagonal entry with nonzero real
/// (then imaginary) part decides.
int canonical_hermitian_sign(const CMatrix& a, double tol = kDefaultTol);

/// Hermitian operator Schmidt decomposition: diagonalize the reduced
/// statistical superoperator R R^dag, replace each degenerate eigenbasis by
/// an adjoint-involution invariant one, and recover each factor-2 operator
/// as the partial HS inner product Tr_1[(A_k (x) I) sigma] / coeff_k.
/// Coefficients equal those of osd() as multisets.
SchmidtDecomp hermitian_osd(const BipartiteState& s, double tol = kDefaultTol);

struct WeakTwinOsd {
  SchmidtDecomp decomp;     // decomposition of rho/||rho||_HS, never hermitian-flagged
  std::vector<int> group;   // 0 = P1 rho terms, 1 = P1^perp rho terms
  double group_weight[2] = {0.0, 0.0}; // squared HS-norm shares, sum 1
};

/// Nonhermitian Schmidt decomposition through a twin projector p1:
/// rho = P1 rho + P1^perp rho, each part decomposed separately; the twin
/// property makes the two groups of terms HS-biorthogonal in both factors.
/// Throws NotATwinError when p1 is not a twin projector for s.
WeakTwinOsd weak_twin_osd(const BipartiteState& s, const HermOp& p1,
                          double tol = kDefaultTol);

}  // namespace twinhs
