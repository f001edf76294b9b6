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
// Two-qubit states with maximally disordered subsystems: Bell states, the
// correlation-vector normal form T(t) = (1/4)(I (x) I + sum_i t_i s_i (x) s_i)
// over the tetrahedron of Bell mixtures, binary-mixture recognition, the
// closed-form Hermitian operator Schmidt decomposition of T(t), and the
// explicit twin families of binary Bell mixtures.
//
// Basis convention (pinned so the t-vectors below hold):
//   psi_1 = (|++> - |-->)/sqrt2   t = (-1, +1, +1)
//   psi_2 = (|++> + |-->)/sqrt2   t = (+1, -1, +1)
//   psi_3 = (|+-> + |-+>)/sqrt2   t = (+1, +1, -1)
//   psi_0 = (|+-> - |-+>)/sqrt2   t = (-1, -1, -1)   (singlet)
//

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "twinhs/linalg.hpp"
#include "twinhs/schmidt.hpp"

namespace twinhs {

/// k in {0,1,2,3}; 0 is the singlet.
CVector bell_vector(int k);
BipartiteState bell_state(int k);
Eigen::Vector3d bell_t(int k);

Eigen::Vector3d weights_to_t(const Eigen::Vector4d& w); // w = (w1,w2,w3,w0)

struct TetraWeights {
  Eigen::Vector4d w; // (w1, w2, w3, w0)
  bool in_tetrahedron = false; // all weights >= -1e-12
};
TetraWeights t_to_weights(const Eigen::Vector3d& t);

/// Bell-diagonal mixture in both coordinate systems.
struct BellMixture {
  Eigen::Vector4d weights; // (w1, w2, w3, w0)
  Eigen::Vector3d t;

  static BellMixture from_weights(const Eigen::Vector4d& w, double tol = 1e-9);
  /// Throws NotAStateError (diagnostics = weights) when t is outside the
  /// tetrahedron.
  static BellMixture from_t(const Eigen::Vector3d& t, double tol = 1e-12);
  BipartiteState state(double tol = kDefaultTol) const;
};

/// T(t); throws NotAStateError when t is outside the tetrahedron.
BipartiteState state_from_t(const Eigen::Vector3d& t);

struct MixtureClass {
  enum Kind { PureBell, BinaryNonSinglet, BinarySinglet, HigherRank };
  Kind kind = HigherRank;
  int bell_k = -1; // PureBell only
  int axis = 0;    // binary cases: the i with |t_i| = 1
  // Reconstructed mixture: (weight, Bell index); 2 entries for binary
  // classes, 1 for a pure Bell state, empty for HigherRank.
  std::vector<std::pair<double, int>> mixture;
};

/// Recognizes pure/binary/higher-rank Bell mixtures from the number of
/// |t_i| = 1 components; |t_i| is counted as 1 within tol.
MixtureClass classify_mixture(const BellMixture& m, double tol = 1e-9);

/// One-parameter family of nontrivial twins of a binary Bell mixture:
/// A1 = alpha I + beta s_axis, A2 = alpha I + sign * beta s_axis.
struct TwinFamily {
  int axis = 0;
  int sign = 0; // +1 when both mixed states are nonsinglet, -1 otherwise
  HermOp a1(double alpha, double beta) const;
  HermOp a2(double alpha, double beta) const;
};

/// Twin family of a classified mixture; empty for higher-rank mixtures and
/// for pure Bell states (where every A1 admits a partner, see
/// bell_twin_partner / pure_twin_partner).
std::optional<TwinFamily> theorem6_twins(const MixtureClass& c);

/// Twin partner of A1 = alpha I + sum_i beta_i s_i for the Bell state k:
/// A2 = alpha I + sum_i sg(t_i^(k)) beta_i s_i.
HermOp bell_twin_partner(int k, const Eigen::Vector3d& beta, double alpha);

/// Closed-form Hermitian Schmidt decomposition of T(t): coefficient
/// (1+sum t_i^2)^{-1/2} on (I, I)/2 and |t_i| times that on the s_i pair;
/// zero-t_i terms omitted. Agrees with hermitian_osd up to degenerate-block
/// gauge.
SchmidtDecomp hermitian_schmidt_T(const BellMixture& m);

/// C_ij = Tr[rho s_i (x) s_j].
Eigen::Matrix3d correlation_matrix(const BipartiteState& s);

struct MdsNormalForm {
  CMatrix u1, u2; // 2x2 unitaries
  Eigen::Vector3d t;
};

/// Local unitaries taking an MDS state (both marginals I/2 within tol) to
/// the normal form T(t): the correlation matrix is diagonalized by two
/// proper rotations (signs folded into t) lifted to SU(2).
MdsNormalForm mds_normal_form(const BipartiteState& s, double tol = 1e-8);

/// SU(2) element with adjoint action U s_a U^dag = sum_b R[b][a] s_b.
CMatrix su2_from_so3(const Eigen::Matrix3d& r);

}  // namespace twinhs
