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
// Entropic correlation measures, all in bits: von Neumann entropy, the
// mutual information C(rho) = S(rho_1) + S(rho_2) - S(rho), the classical
// mutual information of two simultaneously measured subsystem observables,
// the H <= C bound check, and the perfect-correlation signature of twins.
//

#pragma once

#include <vector>

#include "twinhs/linalg.hpp"
#include "twinhs/twins.hpp"

namespace twinhs {

/// Shannon entropy in bits, 0 log 0 = 0.
double shannon(const RVector& p);

/// von Neumann entropy in bits of a unit-trace positive operator.
/// Eigenvalues in [-1e-10, 0) are clipped to 0; throws on trace violation.
double vn_entropy(const HermOp& h, double tol = kDefaultTol);

/// S(rho_1) + S(rho_2) - S(rho), the von Neumann mutual information.
double mutual_info_C(const BipartiteState& s);

struct JointDistribution {
  std::vector<double> values_a, values_b; // merged spectra, descending
  RMatrix p;                              // joint probabilities p(k, l)
  RVector pa, pb;                         // marginals (row / column sums)
};

/// p(k,l) = Tr[rho (P1^(k) (x) Q2^(l))] over the merged spectral projectors
/// of a and b. Negative round-off is clipped to 0.
JointDistribution joint_distribution(const BipartiteState& s, const HermOp& a,
                                     const HermOp& b,
                                     double tol = kDefaultTol);

/// H(p_k) + H(p_l) - H(p(k,l)) in bits.
double classical_mutual_info(const JointDistribution& j);

struct LindbladResult {
  double h = 0.0; // H(A:B) for this observable pair
  double c = 0.0; // C(rho), an upper bound for sup over all pairs
  bool ok = false;
};

/// Checks H(A:B|rho) <= C(rho) for one observable pair (which lower-bounds
/// the supremum over all pairs).
LindbladResult lindblad_check(const BipartiteState& s, const HermOp& a,
                              const HermOp& b);

struct PerfectCorrelation {
  std::vector<int> bijection; // f: outcome k of A1 -> outcome f(k) of A2
  double entropy = 0.0;       // H(A:B) = H(p_k) = H(p_l)
  JointDistribution joint;
};

/// Extracts the outcome bijection of a verified twin pair from its joint
/// distribution; throws NotPerfectlyCorrelatedError when no bijection exists
/// at tol (a non-twin slipped in).
PerfectCorrelation perfect_correlation(const BipartiteState& s,
                                       const TwinPair& p, double tol = 1e-8);

}  // namespace twinhs
