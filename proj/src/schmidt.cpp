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

#include "twinhs/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace twinhs {

SuperVec::SuperVec(Eigen::Index d1_, Eigen::Index d2_, CMatrix op_)
    : d1(d1_), d2(d2_), op(std::move(op_)) {
  if (d1 <= 0 || d2 <= 0 || op.rows() != d1 * d2 || op.cols() != d1 * d2)
    throw std::invalid_argument("SuperVec: operator is not d1*d2 square");
  hs_norm = twinhs::hs_norm(op);
}

SuperVec SuperVec::from_state(const BipartiteState& s) {
  return SuperVec(s.d1(), s.d2(), s.rho());
}

SuperVec SuperVec::factor(CMatrix op_) {
  const Eigen::Index d = op_.rows();
  return SuperVec(d, 1, std::move(op_));
}

Complex hs_inner(const SuperVec& a, const SuperVec& b) {
  if (a.d1 != b.d1 || a.d2 != b.d2)
    throw std::invalid_argument("hs_inner: dimension mismatch");
  return (a.op.adjoint() * b.op).trace();
}

CMatrix realign_mat(const CMatrix& m, Eigen::Index d1, Eigen::Index d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2)
    throw std::invalid_argument("realign: dimension mismatch");
  CMatrix r(d1 * d1, d2 * d2);
  for (Eigen::Index i1 = 0; i1 < d1; ++i1)
    for (Eigen::Index j1 = 0; j1 < d1; ++j1)
      for (Eigen::Index i2 = 0; i2 < d2; ++i2)
        for (Eigen::Index j2 = 0; j2 < d2; ++j2)
          r(i1 * d1 + j1, i2 * d2 + j2) = m(i1 * d2 + i2, j1 * d2 + j2);
  return r;
}

CMatrix realign(const BipartiteState& s) {
  return realign_mat(s.rho(), s.d1(), s.d2());
}

CMatrix unrealign_mat(const CMatrix& r, Eigen::Index d1, Eigen::Index d2) {
  if (r.rows() != d1 * d1 || r.cols() != d2 * d2)
    throw std::invalid_argument("unrealign: dimension mismatch");
  CMatrix m(d1 * d2, d1 * d2);
  for (Eigen::Index i1 = 0; i1 < d1; ++i1)
    for (Eigen::Index j1 = 0; j1 < d1; ++j1)
      for (Eigen::Index i2 = 0; i2 < d2; ++i2)
        for (Eigen::Index j2 = 0; j2 < d2; ++j2)
          m(i1 * d2 + i2, j1 * d2 + j2) = r(i1 * d1 + j1, i2 * d2 + j2);
  return m;
}

CMatrix SchmidtDecomp::reconstruct() const {
  if (terms.empty()) return CMatrix();
  CMatrix sum = CMatrix::Zero(terms[0].op_a.rows() * terms[0].op_b.rows(),
                              terms[0].op_a.cols() * terms[0].op_b.cols());
  for (const auto& t : terms) sum += t.coeff * tensor(t.op_a, t.op_b);
  return sum;
}

std::vector<double> SchmidtDecomp::coefficients() const {
  std::vector<double> c(terms.size());
  std::transform(terms.begin(), terms.end(), c.begin(),
                 [](const SchmidtTerm& t) { return t.coeff; });
  return c;
}

SchmidtDecomp osd(const BipartiteState& s, double tol) {
  const double hsn = hs_norm(s.rho());
  const SvdResult sv = svd(realign(s) / hsn);

  SchmidtDecomp out;
  const double cutoff = sv.sigma.size() > 0 ? tol * sv.sigma(0) : 0.0;
  for (Eigen::Index k = 0; k < sv.sigma.size(); ++k) {
    if (sv.sigma(k) <= cutoff) break;
    out.terms.push_back({sv.sigma(k), unvec_rm(sv.u.col(k), s.d1(), s.d1()),
                         unvec_rm(sv.v.col(k).conjugate(), s.d2(), s.d2())});
  }
  return out;
}

AntilinearMap::AntilinearMap(CMatrix m) : mat_(std::move(m)) {
  if (mat_.size() == 0)
    throw std::invalid_argument("AntilinearMap: empty matrix");
}

AntilinearMap AntilinearMap::adjoint_involution(Eigen::Index d) {
  CMatrix m = CMatrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i * d + j, j * d + i) = 1.0;
  return AntilinearMap(std::move(m));
}

bool AntilinearMap::is_involution(double tol) const {
  if (mat_.rows() != mat_.cols()) return false;
  const CMatrix prod = mat_ * mat_.conjugate();
  return max_abs(prod - identity(mat_.rows())) <=
         tol * std::max(1.0, max_abs(mat_));
}

namespace {

// Orthonormal basis of the column span; rank decided at tol * sigma_max.
CMatrix orthonormal_span(const CMatrix& cols, double tol) {
  const SvdResult sv = svd(cols);
  Eigen::Index rank = 0;
  const double cutoff = sv.sigma.size() > 0 ? tol * sv.sigma(0) : 0.0;
  while (rank < sv.sigma.size() && sv.sigma(rank) > cutoff) ++rank;
  return sv.u.leftCols(rank);
}

}  // namespace

std::vector<SuperVec> invariant_basis(const std::vector<SuperVec>& vectors,
                                      const AntilinearMap& v, double tol) {
  if (vectors.empty()) return {};
  const Eigen::Index d1 = vectors[0].d1, d2 = vectors[0].d2;
  const Eigen::Index n = d1 * d2 * d1 * d2;
  if (v.rows() != n || v.cols() != n)
    throw std::invalid_argument("invariant_basis: map dimension mismatch");

  CMatrix raw(n, static_cast<Eigen::Index>(vectors.size()));
  for (size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].d1 != d1 || vectors[k].d2 != d2)
      throw std::invalid_argument("invariant_basis: mixed dimensions");
    raw.col(static_cast<Eigen::Index>(k)) = vec_rm(vectors[k].op);
  }
  const CMatrix basis = orthonormal_span(raw, tol);
  const Eigen::Index r = basis.cols();

  // The span must be carried into itself by v.
  for (Eigen::Index k = 0; k < r; ++k) {
    const CVector w = v.apply(basis.col(k));
    const double resid = (w - basis * (basis.adjoint() * w)).norm();
    if (resid > std::max(tol, 1e-14) * w.norm())
      throw InvariantViolationError(
          "invariant_basis: subspace is not invariant under the antilinear "
          "map");
  }

  const Complex imag_unit(0.0, 1.0);
  std::vector<CVector> accepted;
  auto project_out = [&accepted](CVector& c) {
    for (const CVector& a : accepted) c -= a * a.dot(c);
  };
  for (Eigen::Index k = 0; k < r && accepted.size() < static_cast<size_t>(r);
       ++k) {
    const CVector e = basis.col(k);
    const CVector ve = v.apply(e);
    const CVector candidates[2] = {e + ve, imag_unit * (e - ve)};
    for (const CVector& cand : candidates) {
      if (accepted.size() == static_cast<size_t>(r)) break;
      CVector c = cand;
      project_out(c);
      project_out(c);  // second pass for orthogonality
      if (c.norm() < tol) continue;
      c /= c.norm();
      // Pin exactly to the fixed-point set and re-orthonormalize.
      c = (c + v.apply(c)) / 2.0;
      project_out(c);
      if (c.norm() < tol) continue;
      c /= c.norm();
      accepted.push_back(c);
    }
  }
  if (accepted.size() != static_cast<size_t>(r))
    throw NumericalError("invariant_basis: could not complete a fixed basis");

  std::vector<SuperVec> out;
  out.reserve(accepted.size());
  for (const CVector& c : accepted)
    out.emplace_back(d1, d2, unvec_rm(c, d1 * d2, d1 * d2));
  return out;
}

int canonical_hermitian_sign(const CMatrix& a, double tol) {
  const double scale = max_abs(a);
  if (scale == 0.0) return 1;
  const double ztol = tol * scale;

  Eigen::Index best = -1;
  double best_mag = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double m = std::abs(a(i, i).real());
    if (m > ztol && m > best_mag + ztol) {
      best = i;
      best_mag = m;
    }
  }
  if (best >= 0) return a(best, best).real() > 0 ? 1 : -1;

  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j).real()) > ztol)
        return a(i, j).real() > 0 ? 1 : -1;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j).imag()) > ztol)
        return a(i, j).imag() > 0 ? 1 : -1;
  return 1;
}

SchmidtDecomp hermitian_osd(const BipartiteState& s, double tol) {
  const Eigen::Index d1 = s.d1(), d2 = s.d2();
  const double hsn = hs_norm(s.rho());
  const CMatrix sigma_op = s.rho() / hsn;
  const CMatrix rn = realign_mat(sigma_op, d1, d2);

  // Spectral data of the reduced superoperator rho_hat_1 = Rn Rn^dag, taken
  // from the SVD of Rn: the left singular vectors are its eigenvectors and
  // sigma_k^2 its eigenvalues; sigma_k itself is the Schmidt coefficient.
  const SvdResult sv = svd(rn);
  const double cmax = sv.sigma.size() > 0 ? sv.sigma(0) : 0.0;
  Eigen::Index kept = 0;
  while (kept < sv.sigma.size() && sv.sigma(kept) > tol * cmax) ++kept;

  // Degenerate characteristic subspaces: group coefficients with gaps below
  // tol * cmax.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
  Eigen::Index first = 0;
  for (Eigen::Index k = 1; k <= kept; ++k) {
    if (k == kept || sv.sigma(k - 1) - sv.sigma(k) > tol * cmax) {
      blocks.emplace_back(first, k);
      first = k;
    }
  }

  const AntilinearMap v1 = AntilinearMap::adjoint_involution(d1);
  const CMatrix ident2 = identity(d2);

  SchmidtDecomp out;
  out.hermitian = true;
  for (const auto& [lo, hi] : blocks) {
    std::vector<SuperVec> block;
    for (Eigen::Index k = lo; k < hi; ++k)
      block.push_back(SuperVec::factor(unvec_rm(sv.u.col(k), d1, d1)));
    // For a Hermitian state every characteristic subspace of rho_hat_1 is
    // invariant under adjoining; a violation signals an upstream bug.
    const std::vector<SuperVec> fixed = invariant_basis(block, v1, tol);

    for (size_t idx = 0; idx < fixed.size(); ++idx) {
      const double coeff = sv.sigma(lo + static_cast<Eigen::Index>(idx));
      CMatrix a = fixed[idx].op;
      a *= static_cast<double>(canonical_hermitian_sign(a, tol));
      // Partial HS inner product; Hermitian automatically once A is.
      const CMatrix b =
          partial_trace_mat(tensor(a, ident2) * sigma_op, d1, d2, 1) / coeff;
      out.terms.push_back({coeff, std::move(a), b});
    }
  }

  std::stable_sort(out.terms.begin(), out.terms.end(),
                   [](const SchmidtTerm& x, const SchmidtTerm& y) {
                     return x.coeff > y.coeff;
                   });

  if (max_abs(out.reconstruct() - sigma_op) > 1e-6)
    throw NumericalError("hermitian_osd: reconstruction residual too large");
  return out;
}

WeakTwinOsd weak_twin_osd(const BipartiteState& s, const HermOp& p1,
                          double tol) {
  const Eigen::Index d1 = s.d1(), d2 = s.d2();
  if (p1.dim() != d1)
    throw std::invalid_argument("weak_twin_osd: projector dimension mismatch");
  const CMatrix& p = p1.matrix();
  if (max_abs(p * p - p) > std::max(tol, 1e-10) * std::max(1.0, max_abs(p)))
    throw std::invalid_argument("weak_twin_osd: p1 is not a projector");

  const double hsn = hs_norm(s.rho());
  const CMatrix top = tensor(p, identity(d2)) * s.rho();
  const CMatrix bot = s.rho() - top;

  struct RawTerm {
    double coeff;
    CMatrix a, b;
    int grp;
  };
  std::vector<RawTerm> raw;
  const CMatrix* parts[2] = {&top, &bot};
  WeakTwinOsd out;
  for (int g = 0; g < 2; ++g) {
    const double part_norm = hs_norm(*parts[g]);
    out.group_weight[g] = (part_norm / hsn) * (part_norm / hsn);
    if (part_norm <= tol * hsn) continue;
    const SvdResult sv = svd(realign_mat(*parts[g], d1, d2));
    for (Eigen::Index k = 0; k < sv.sigma.size(); ++k) {
      if (sv.sigma(k) <= tol * sv.sigma(0)) break;
      raw.push_back({sv.sigma(k) / hsn, unvec_rm(sv.u.col(k), d1, d1),
                     unvec_rm(sv.v.col(k).conjugate(), d2, d2), g});
    }
  }

  // Global rank cutoff relative to the largest coefficient overall.
  const double cmax = std::accumulate(
      raw.begin(), raw.end(), 0.0,
      [](double m, const RawTerm& t) { return std::max(m, t.coeff); });
  std::erase_if(raw, [&](const RawTerm& t) { return t.coeff <= tol * cmax; });

  // Theorem-level gate: the two groups must be HS-biorthogonal on both
  // factors. Factor 1 is automatic for any projector; factor 2 holds exactly
  // when p1 is a twin projector.
  const double xtol = std::max(tol, 1e-10);
  for (const RawTerm& t : raw) {
    if (t.grp != 0) continue;
    for (const RawTerm& u : raw) {
      if (u.grp != 1) continue;
      if (std::abs((t.a.adjoint() * u.a).trace()) > xtol ||
          std::abs((t.b.adjoint() * u.b).trace()) > xtol)
        throw NotATwinError(
            "weak_twin_osd: p1 is not a twin projector for this state "
            "(cross-group HS orthogonality fails)");
    }
  }

  std::stable_sort(raw.begin(), raw.end(),
                   [](const RawTerm& x, const RawTerm& y) {
                     return x.coeff > y.coeff;
                   });
  for (RawTerm& t : raw) {
    out.decomp.terms.push_back({t.coeff, std::move(t.a), std::move(t.b)});
    out.group.push_back(t.grp);
  }
  return out;
}

}  // namespace twinhs
