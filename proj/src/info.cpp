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

#include "twinhs/info.hpp"

#include <cmath>
#include <sstream>

namespace twinhs {

namespace {

double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

// Merged spectral form of an observable: distinct eigenvalues (descending)
// with their full-space projectors.
struct SpectralForm {
  std::vector<double> values;
  std::vector<CMatrix> projectors;
};

SpectralForm spectral_form(const HermOp& a, double tol) {
  const EighResult e = eigh(a, std::max(tol, kDefaultTol));
  SpectralForm f;
  for (const auto& [first, last] : e.blocks) {
    const CMatrix w = e.eigenvectors.middleCols(first, last - first);
    f.values.push_back(
        e.eigenvalues.segment(first, last - first).mean());
    f.projectors.push_back(w * w.adjoint());
  }
  return f;
}

}  // namespace

double shannon(const RVector& p) {
  double h = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) h += entropy_term(p(k));
  return h;
}

double vn_entropy(const HermOp& h, double tol) {
  const double tr = h.matrix().trace().real();
  if (std::abs(tr - 1.0) > std::max(tol, 1e-10)) {
    std::ostringstream os;
    os << "vn_entropy: trace is " << tr << " (expected 1)";
    throw std::invalid_argument(os.str());
  }
  const EighResult e = eigh(h, tol);
  double s = 0.0;
  for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k) {
    double lambda = e.eigenvalues(k);
    if (lambda < -1e-10)
      throw std::invalid_argument("vn_entropy: operator is not positive");
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda > tol) s += entropy_term(lambda);
  }
  return s;
}

double mutual_info_C(const BipartiteState& s) {
  return vn_entropy(partial_trace(s, 2)) + vn_entropy(partial_trace(s, 1)) -
         vn_entropy(s.herm());
}

JointDistribution joint_distribution(const BipartiteState& s, const HermOp& a,
                                     const HermOp& b, double tol) {
  if (a.dim() != s.d1() || b.dim() != s.d2())
    throw std::invalid_argument("joint_distribution: dimension mismatch");
  const SpectralForm fa = spectral_form(a, tol);
  const SpectralForm fb = spectral_form(b, tol);

  JointDistribution j;
  j.values_a = fa.values;
  j.values_b = fb.values;
  j.p.resize(static_cast<Eigen::Index>(fa.values.size()),
             static_cast<Eigen::Index>(fb.values.size()));
  for (size_t k = 0; k < fa.values.size(); ++k)
    for (size_t l = 0; l < fb.values.size(); ++l) {
      const double pr =
          (tensor(fa.projectors[k], fb.projectors[l]) * s.rho())
              .trace()
              .real();
      j.p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
          std::max(pr, 0.0);
    }
  j.pa = j.p.rowwise().sum();
  j.pb = j.p.colwise().sum();
  return j;
}

double classical_mutual_info(const JointDistribution& j) {
  double joint = 0.0;
  for (Eigen::Index k = 0; k < j.p.rows(); ++k)
    for (Eigen::Index l = 0; l < j.p.cols(); ++l)
      joint += entropy_term(j.p(k, l));
  return shannon(j.pa) + shannon(j.pb) - joint;
}

LindbladResult lindblad_check(const BipartiteState& s, const HermOp& a,
                              const HermOp& b) {
  LindbladResult r;
  r.h = classical_mutual_info(joint_distribution(s, a, b));
  r.c = mutual_info_C(s);
  r.ok = r.h <= r.c + 1e-9;
  return r;
}

PerfectCorrelation perfect_correlation(const BipartiteState& s,
                                       const TwinPair& p, double tol) {
  if (p.residual > tol)
    throw NotATwinError("perfect_correlation: pair fails the twin relation");

  PerfectCorrelation pc;
  pc.joint = joint_distribution(s, p.a1, p.a2);
  const JointDistribution& j = pc.joint;
  pc.bijection.assign(static_cast<size_t>(j.p.rows()), -1);

  std::vector<bool> used(static_cast<size_t>(j.p.cols()), false);
  for (Eigen::Index k = 0; k < j.p.rows(); ++k) {
    if (j.pa(k) <= tol) continue; // outcome never occurs
    int hit = -1;
    for (Eigen::Index l = 0; l < j.p.cols(); ++l) {
      if (j.p(k, l) > tol) {
        if (hit >= 0)
          throw NotPerfectlyCorrelatedError(
              "perfect_correlation: A1 outcome correlates with several A2 "
              "outcomes");
        hit = static_cast<int>(l);
      }
    }
    if (hit < 0 || used[static_cast<size_t>(hit)])
      throw NotPerfectlyCorrelatedError(
          "perfect_correlation: no outcome bijection at this tolerance");
    used[static_cast<size_t>(hit)] = true;
    pc.bijection[static_cast<size_t>(k)] = hit;
  }
  // Every occurring B outcome must be hit.
  for (Eigen::Index l = 0; l < j.p.cols(); ++l)
    if (j.pb(l) > tol && !used[static_cast<size_t>(l)])
      throw NotPerfectlyCorrelatedError(
          "perfect_correlation: A2 outcome without an A1 partner");

  pc.entropy = shannon(j.pa);
  const double hb = shannon(j.pb);
  const double hab = classical_mutual_info(j);
  if (std::abs(pc.entropy - hb) > tol ||
      std::abs(pc.entropy - hab) > std::max(tol, 1e-9))
    throw NotPerfectlyCorrelatedError(
        "perfect_correlation: entropies H(p_k), H(p_l), H(A:B) disagree");
  return pc;
}

}  // namespace twinhs
