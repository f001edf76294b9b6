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
// Twin observables of a bipartite state: Hermitian pairs (A1, A2) with
// (A1 (x) I) rho = (I (x) A2) rho. This module solves that equation over the
// range-compressed Hermitian pairs, classifies solutions by strength
// (commutation with rho), builds the biorthogonal mixtures generated by
// strong twins, handles the pure-state case through the antiunitary
// correlation operator, and decides twin existence for explicitly separable
// mixtures by biorthogonal grouping.
//

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "twinhs/linalg.hpp"
#include "twinhs/schmidt.hpp"

namespace twinhs {

struct TwinPair {
  HermOp a1, a2;
  double residual = 0.0; // ||(A1 (x) I - I (x) A2) rho||_HS
  double comm1 = 0.0;    // ||[A1, rho_1]||_HS
  double comm2 = 0.0;    // ||[A2, rho_2]||_HS
};

/// Measures the twin relation for (a1, a2) on s; never throws on a large
/// residual, only on dimension mismatch.
TwinPair verify_twin(const BipartiteState& s, const HermOp& a1,
                     const HermOp& a2);

struct TwinBasis {
  std::vector<TwinPair> pairs; // orthonormal in parameter space
  int dim = 0;
  bool nontrivial = false;     // dim >= 2
  HermOp q1, q2;               // range projectors of rho_1, rho_2
  // Singular values of the twin-equation matrix bracketing the kernel
  // cutoff, plus the full list, so rank decisions are auditable.
  double sv_above_cutoff = 0.0;
  double sv_below_cutoff = 0.0;
  RVector singular_values;
  Eigen::Index rank1 = 0, rank2 = 0;

  /// Coordinates of (x1, x2) in the solver's parameter basis; used for
  /// subspace-angle comparisons against closed-form twin families.
  RMatrix parameter_kernel; // (rank1^2 + rank2^2) x dim
  std::vector<HermOp> basis1, basis2; // the Hermitian parameter bases
};

/// Solves the twin equation over Hermitian pairs compressed to the ranges of
/// the reduced states (rank^2 real parameters per side). The kernel always
/// contains the direction (Q1, Q2); nontrivial twins exist iff dim >= 2.
TwinBasis twin_space(const BipartiteState& s, double tol = 1e-9);

enum class Strength { Strong, Weak, PartiallyStrong };
const char* to_string(Strength k);

struct TwinStrength {
  Strength kind = Strength::Strong;
  std::vector<std::pair<double, bool>> per_eigenvalue; // (a_n, strong?)
  double comm_rho12_a1 = 0.0; // ||[A1', rho]||, the global commutation test
  double comm_rho12_a2 = 0.0;
};

/// Classifies a verified twin pair by checking, for every common detectable
/// eigenvalue, whether the characteristic projector commutes with rho.
TwinStrength classify_twin(const BipartiteState& s, const TwinPair& p,
                           double tol = 1e-8);

struct SpectralPairing {
  std::vector<double> values; // common detectable spectrum, descending
  std::vector<std::pair<HermOp, HermOp>> proj_pairs;
  std::vector<int> bijection; // f: side-1 value index -> side-2 value index
  bool degenerate_warning = false;
};

/// Matches the detectable spectra of a twin pair and returns the
/// characteristic projector pairs, each verified as twins themselves.
SpectralPairing spectral_pairing(const BipartiteState& s, const TwinPair& p,
                                 double tol = 1e-8);

/// Biorthogonal mixture generated by a strong twin pair:
/// w_n = Tr rho P1^(n), rho^(n) = P1^(n) rho / w_n; terms with w_n <= tol
/// are omitted. Throws StrengthError unless classify_twin says Strong.
std::vector<std::pair<double, BipartiteState>> strong_twin_mixture(
    const BipartiteState& s, const TwinPair& p, double tol = 1e-8);

struct PureSchmidt {
  RVector coeffs;    // r_i^{1/2}, descending, > 0
  CMatrix vecs1;     // d1 x r, orthonormal columns |i>_1
  CMatrix vecs2;     // d2 x r, orthonormal columns |i>_2
  AntilinearMap u_a; // correlation operator, d2 x d1: U_a x = M conj(x)
};

/// Schmidt decomposition of a unit vector phi on C^{d1} (x) C^{d2}, with the
/// antiunitary correlation operator pairing |i>_1 with |i>_2.
PureSchmidt pure_schmidt(const CVector& phi, Eigen::Index d1, Eigen::Index d2,
                         double tol = kDefaultTol);

/// Twin partner of a1 for the pure state phi: A2 = U_a A1 U_a^{-1} on the
/// range of rho_2, zero on its orthocomplement. Requires [A1, rho_1] = 0.
HermOp pure_twin_partner(const CVector& phi, Eigen::Index d1, Eigen::Index d2,
                         const HermOp& a1, double tol = 1e-8);

struct SeparableDecomp {
  struct Term {
    double w;
    HermOp rho1, rho2; // unit-trace positive factor operators
  };
  std::vector<Term> terms;

  /// Validates weights (positive, sum 1 within 1e-10) and factor states.
  static SeparableDecomp make(std::vector<Term> terms, double tol = 1e-8);
  BipartiteState mixture(double tol = kDefaultTol) const;
};

struct BiorthoGroups {
  std::vector<std::vector<int>> components; // each sorted; ordered by least member
  // Candidate twin projector pair per component: range projectors of the
  // component's reduced mixtures.
  std::vector<std::pair<HermOp, HermOp>> projectors;
};

/// Connected components of the term graph with edges where reduced factor
/// products exceed tol in operator norm. Nontrivial twin events exist for
/// the separable mixture iff there are >= 2 components.
BiorthoGroups biortho_groups(const SeparableDecomp& d, double tol = 1e-9);

struct Lemma2Result {
  bool all_twins = false;
  int counterexample = -1;        // first failing term, -1 when all pass
  std::vector<double> residuals;  // per-term twin residuals
  double mixture_residual = 0.0;
};

/// (a1, a2) is a twin pair for a mixture iff it is one for every term.
Lemma2Result lemma2_check(const std::vector<BipartiteState>& terms,
                          const std::vector<double>& weights, const HermOp& a1,
                          const HermOp& a2, double tol = 1e-8);

}  // namespace twinhs
