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

#include "twinhs/twins.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace twinhs {

namespace {

// Tolerance for matching detectable eigenvalues across the two factors.
// The theory gives exactly common spectra; numerics need a rule.
constexpr double kSpectralMatchTol = 1e-7;

// HS-orthonormal Hermitian basis of the operators supported on the span of
// the orthonormal columns q: the rank^2 real parameters of the solver.
std::vector<CMatrix> hermitian_basis(const CMatrix& q) {
  const Eigen::Index r = q.cols();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex imag_unit(0.0, 1.0);
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<size_t>(r * r));
  for (Eigen::Index a = 0; a < r; ++a)
    basis.push_back(q.col(a) * q.col(a).adjoint());
  for (Eigen::Index a = 0; a < r; ++a)
    for (Eigen::Index b = a + 1; b < r; ++b) {
      const CMatrix e = q.col(a) * q.col(b).adjoint();
      basis.push_back((e + e.adjoint()) * inv_sqrt2);
      basis.push_back(imag_unit * (e - e.adjoint()) * inv_sqrt2);
    }
  return basis;
}

struct Detectable {
  std::vector<double> values;      // merged, descending
  std::vector<CMatrix> projectors; // lifted to the full factor space
  bool merged_distinct = false;    // two distinct values collided at match tol
};

Detectable detectable_spectrum(const HermOp& a, const RangeInfo& range) {
  const CMatrix compressed =
      range.basis.adjoint() * a.matrix() * range.basis;
  const EighResult e = eigh(HermOp::symmetrized(compressed, 1e-10));

  Detectable out;
  const Eigen::Index r = e.eigenvalues.size();
  Eigen::Index first = 0;
  for (Eigen::Index k = 1; k <= r; ++k) {
    if (k < r && e.eigenvalues(k - 1) - e.eigenvalues(k) <= kSpectralMatchTol)
      continue;
    const Eigen::Index count = k - first;
    const CMatrix w = e.eigenvectors.middleCols(first, count);
    out.values.push_back(e.eigenvalues.segment(first, count).mean());
    out.projectors.push_back(range.basis * w * w.adjoint() *
                             range.basis.adjoint());
    if (e.eigenvalues(first) - e.eigenvalues(k - 1) >
        1e-12 * std::max(1.0, std::abs(e.eigenvalues(first))))
      out.merged_distinct = true;
    first = k;
  }
  return out;
}

// Greedy nearest matching of two descending value lists at kSpectralMatchTol.
std::vector<int> match_values(const std::vector<double>& v1,
                              const std::vector<double>& v2) {
  if (v1.size() != v2.size())
    throw NotATwinError(
        "detectable spectra have different numbers of distinct values");
  std::vector<int> f(v1.size(), -1);
  std::vector<bool> used(v2.size(), false);
  for (size_t k = 0; k < v1.size(); ++k) {
    int best = -1;
    double best_d = kSpectralMatchTol;
    for (size_t l = 0; l < v2.size(); ++l) {
      if (used[l]) continue;
      const double d = std::abs(v1[k] - v2[l]);
      if (d <= best_d) {
        best_d = d;
        best = static_cast<int>(l);
      }
    }
    if (best < 0) {
      std::ostringstream os;
      os << "detectable eigenvalue " << v1[k]
         << " of A1 has no partner in the spectrum of A2";
      throw NotATwinError(os.str());
    }
    used[static_cast<size_t>(best)] = true;
    f[k] = best;
  }
  return f;
}

struct DsuNode {
  std::vector<int> parent;
  explicit DsuNode(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

double operator_norm(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : svd(m).sigma(0);
}

}  // namespace

const char* to_string(Strength k) {
  switch (k) {
    case Strength::Strong: return "Strong";
    case Strength::Weak: return "Weak";
    case Strength::PartiallyStrong: return "PartiallyStrong";
  }
  return "?";
}

TwinPair verify_twin(const BipartiteState& s, const HermOp& a1,
                     const HermOp& a2) {
  if (a1.dim() != s.d1() || a2.dim() != s.d2())
    throw std::invalid_argument("verify_twin: observable dimension mismatch");
  const CMatrix lhs = tensor(a1.matrix(), identity(s.d2())) * s.rho();
  const CMatrix rhs = tensor(identity(s.d1()), a2.matrix()) * s.rho();
  TwinPair p{a1, a2, hs_norm(lhs - rhs), 0.0, 0.0};
  p.comm1 =
      hs_norm(commutator(a1.matrix(), partial_trace(s, 2).matrix()));
  p.comm2 =
      hs_norm(commutator(a2.matrix(), partial_trace(s, 1).matrix()));
  return p;
}

TwinBasis twin_space(const BipartiteState& s, double tol) {
  const Eigen::Index d1 = s.d1(), d2 = s.d2(), n = s.dim();
  const RangeInfo range1 = range_of(partial_trace(s, 2));
  const RangeInfo range2 = range_of(partial_trace(s, 1));

  TwinBasis tb;
  tb.rank1 = range1.rank;
  tb.rank2 = range2.rank;
  tb.q1 = HermOp::symmetrized(range1.projector, 1e-10);
  tb.q2 = HermOp::symmetrized(range2.projector, 1e-10);

  std::vector<CMatrix> basis1 = hermitian_basis(range1.basis);
  std::vector<CMatrix> basis2 = hermitian_basis(range2.basis);
  const Eigen::Index n1 = static_cast<Eigen::Index>(basis1.size());
  const Eigen::Index n2 = static_cast<Eigen::Index>(basis2.size());

  // Real linear system from Re/Im of (A1 (x) I - I (x) A2) rho = 0 over the
  // compressed Hermitian parameters. Compression is lossless for the twin
  // relation: nondetectable parts act as zero on rho.
  RMatrix sys(2 * n * n, n1 + n2);
  const CMatrix id1 = identity(d1), id2 = identity(d2);
  for (Eigen::Index c = 0; c < n1 + n2; ++c) {
    const CMatrix prod = c < n1
                             ? CMatrix(tensor(basis1[c], id2) * s.rho())
                             : CMatrix(-(tensor(id1, basis2[c - n1]) * s.rho()));
    const CVector v = vec_rm(prod);
    sys.col(c) << v.real(), v.imag();
  }

  const NullspaceResult ns = nullspace_real(sys, tol);
  tb.singular_values = ns.singular_values;
  tb.sv_above_cutoff = ns.smallest_kept;
  tb.sv_below_cutoff = ns.largest_cut;
  tb.parameter_kernel = ns.basis;
  tb.dim = static_cast<int>(ns.basis.cols());
  tb.nontrivial = tb.dim >= 2;

  for (Eigen::Index c = 0; c < ns.basis.cols(); ++c) {
    CMatrix a1 = CMatrix::Zero(d1, d1), a2 = CMatrix::Zero(d2, d2);
    for (Eigen::Index k = 0; k < n1; ++k) a1 += ns.basis(k, c) * basis1[k];
    for (Eigen::Index k = 0; k < n2; ++k)
      a2 += ns.basis(n1 + k, c) * basis2[k];
    tb.pairs.push_back(verify_twin(s, HermOp::symmetrized(a1, 1e-10),
                                   HermOp::symmetrized(a2, 1e-10)));
  }
  for (auto& b : basis1) tb.basis1.push_back(HermOp::symmetrized(b, 1e-10));
  for (auto& b : basis2) tb.basis2.push_back(HermOp::symmetrized(b, 1e-10));
  return tb;
}

TwinStrength classify_twin(const BipartiteState& s, const TwinPair& p,
                           double tol) {
  if (p.residual > tol)
    throw NotATwinError("classify_twin: pair fails the twin relation");
  const RangeInfo range1 = range_of(partial_trace(s, 2));
  const RangeInfo range2 = range_of(partial_trace(s, 1));
  const Detectable det1 = detectable_spectrum(p.a1, range1);
  const Detectable det2 = detectable_spectrum(p.a2, range2);
  match_values(det1.values, det2.values);

  TwinStrength st;
  bool any_strong = false, any_weak = false;
  for (size_t k = 0; k < det1.values.size(); ++k) {
    const double comm = hs_norm(
        commutator(tensor(det1.projectors[k], identity(s.d2())), s.rho()));
    const bool strong = comm <= tol;
    (strong ? any_strong : any_weak) = true;
    st.per_eigenvalue.emplace_back(det1.values[k], strong);
  }
  st.kind = any_weak ? (any_strong ? Strength::PartiallyStrong : Strength::Weak)
                     : Strength::Strong;

  // Global commutation test: strong twins commute with rho itself.
  const CMatrix a1c =
      range1.projector * p.a1.matrix() * range1.projector;
  const CMatrix a2c =
      range2.projector * p.a2.matrix() * range2.projector;
  st.comm_rho12_a1 =
      hs_norm(commutator(tensor(a1c, identity(s.d2())), s.rho()));
  st.comm_rho12_a2 =
      hs_norm(commutator(tensor(identity(s.d1()), a2c), s.rho()));
  return st;
}

SpectralPairing spectral_pairing(const BipartiteState& s, const TwinPair& p,
                                 double tol) {
  if (p.residual > tol)
    throw NotATwinError("spectral_pairing: pair fails the twin relation");
  const RangeInfo range1 = range_of(partial_trace(s, 2));
  const RangeInfo range2 = range_of(partial_trace(s, 1));
  const Detectable det1 = detectable_spectrum(p.a1, range1);
  const Detectable det2 = detectable_spectrum(p.a2, range2);

  SpectralPairing sp;
  sp.bijection = match_values(det1.values, det2.values);
  sp.degenerate_warning = det1.merged_distinct || det2.merged_distinct;
  sp.values = det1.values;
  for (size_t k = 0; k < det1.values.size(); ++k) {
    HermOp p1 = HermOp::symmetrized(det1.projectors[k], 1e-10);
    HermOp p2 = HermOp::symmetrized(
        det2.projectors[static_cast<size_t>(sp.bijection[k])], 1e-10);
    const TwinPair check = verify_twin(s, p1, p2);
    if (check.residual > tol) {
      std::ostringstream os;
      os << "spectral_pairing: projector pair for eigenvalue "
         << det1.values[k] << " fails the twin relation (residual "
         << check.residual << ")";
      throw NotATwinError(os.str());
    }
    sp.proj_pairs.emplace_back(std::move(p1), std::move(p2));
  }
  return sp;
}

std::vector<std::pair<double, BipartiteState>> strong_twin_mixture(
    const BipartiteState& s, const TwinPair& p, double tol) {
  if (classify_twin(s, p, tol).kind != Strength::Strong)
    throw StrengthError(
        "strong_twin_mixture: pair is not a strong twin pair");
  const SpectralPairing sp = spectral_pairing(s, p, tol);

  std::vector<std::pair<double, BipartiteState>> mixture;
  for (const auto& [p1, p2] : sp.proj_pairs) {
    const CMatrix proj = tensor(p1.matrix(), identity(s.d2()));
    const double w = (proj * s.rho()).trace().real();
    if (w <= tol) continue; // P1 rho = 0: term state not defined
    // Two-sided compression: equals P1 rho / w for strong twins and is
    // positive by construction.
    const CMatrix term = proj * s.rho() * proj / w;
    mixture.emplace_back(w, BipartiteState(s.d1(), s.d2(), term,
                                           std::max(10.0 * tol, kDefaultTol)));
  }
  return mixture;
}

PureSchmidt pure_schmidt(const CVector& phi, Eigen::Index d1, Eigen::Index d2,
                         double tol) {
  if (phi.size() != d1 * d2)
    throw std::invalid_argument("pure_schmidt: vector length is not d1*d2");
  if (std::abs(phi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("pure_schmidt: vector is not normalized");

  const CMatrix c = unvec_rm(phi, d1, d2);
  const SvdResult sv = svd(c);
  Eigen::Index r = 0;
  while (r < sv.sigma.size() && sv.sigma(r) > tol * sv.sigma(0)) ++r;

  const CMatrix vecs1 = sv.u.leftCols(r);
  const CMatrix vecs2 = sv.v.leftCols(r).conjugate();
  // U_a |i>_1 = |i>_2, extended antilinearly over the range of rho_1.
  CMatrix m = vecs2 * vecs1.transpose();
  return PureSchmidt{sv.sigma.head(r), vecs1, vecs2,
                     AntilinearMap(std::move(m))};
}

HermOp pure_twin_partner(const CVector& phi, Eigen::Index d1, Eigen::Index d2,
                         const HermOp& a1, double tol) {
  if (a1.dim() != d1)
    throw std::invalid_argument("pure_twin_partner: dimension mismatch");
  const PureSchmidt ps = pure_schmidt(phi, d1, d2);
  const CMatrix rho1 = ps.vecs1 *
                       ps.coeffs.cwiseAbs2().asDiagonal() *
                       ps.vecs1.adjoint();
  const double comm = hs_norm(commutator(a1.matrix(), rho1));
  if (comm > tol * std::max(1.0, hs_norm(a1.matrix())))
    throw std::invalid_argument(
        "pure_twin_partner: A1 does not commute with rho_1");
  // A2 = U_a A1 U_a^{-1} on the range of rho_2; the null-space part is set
  // to zero (canonical representative).
  const CMatrix& m = ps.u_a.matrix();
  return HermOp::symmetrized(m * a1.matrix().conjugate() * m.adjoint(), 1e-10);
}

SeparableDecomp SeparableDecomp::make(std::vector<Term> terms, double tol) {
  if (terms.empty())
    throw std::invalid_argument("SeparableDecomp: no terms");
  double wsum = 0.0;
  for (const Term& t : terms) {
    if (t.w <= 0.0 || t.w > 1.0 + tol)
      throw std::invalid_argument(
          "SeparableDecomp: weights must lie in (0, 1]");
    wsum += t.w;
    for (const HermOp* f : {&t.rho1, &t.rho2}) {
      const EighResult e = eigh(*f);
      std::vector<double> diag(e.eigenvalues.data(),
                               e.eigenvalues.data() + e.eigenvalues.size());
      if (e.eigenvalues.minCoeff() < -tol)
        throw NotAStateError("SeparableDecomp: factor operator not positive",
                             diag);
      if (std::abs(f->matrix().trace().real() - 1.0) > tol)
        throw NotAStateError("SeparableDecomp: factor operator trace is not 1",
                             diag);
    }
  }
  if (std::abs(wsum - 1.0) > std::max(tol, 1e-10))
    throw std::invalid_argument("SeparableDecomp: weights do not sum to 1");
  SeparableDecomp d;
  d.terms = std::move(terms);
  return d;
}

BipartiteState SeparableDecomp::mixture(double tol) const {
  const Eigen::Index d1 = terms[0].rho1.dim(), d2 = terms[0].rho2.dim();
  CMatrix rho = CMatrix::Zero(d1 * d2, d1 * d2);
  for (const Term& t : terms)
    rho += t.w * tensor(t.rho1.matrix(), t.rho2.matrix());
  return BipartiteState(d1, d2, rho, std::max(tol, 1e-9));
}

BiorthoGroups biortho_groups(const SeparableDecomp& d, double tol) {
  const int n = static_cast<int>(d.terms.size());
  DsuNode dsu(n);
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      const double p1 =
          operator_norm(d.terms[k].rho1.matrix() * d.terms[l].rho1.matrix());
      const double p2 =
          operator_norm(d.terms[k].rho2.matrix() * d.terms[l].rho2.matrix());
      if (p1 > tol || p2 > tol) dsu.unite(k, l);
    }

  std::vector<std::vector<int>> comps;
  std::vector<int> root_of(n, -1);
  for (int k = 0; k < n; ++k) {
    const int r = dsu.find(k);
    if (root_of[r] < 0) {
      root_of[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[root_of[r]].push_back(k);
  }

  BiorthoGroups g;
  g.components = std::move(comps);
  for (const std::vector<int>& comp : g.components) {
    const Eigen::Index d1 = d.terms[0].rho1.dim(), d2 = d.terms[0].rho2.dim();
    CMatrix s1 = CMatrix::Zero(d1, d1), s2 = CMatrix::Zero(d2, d2);
    for (int k : comp) {
      s1 += d.terms[k].w * d.terms[k].rho1.matrix();
      s2 += d.terms[k].w * d.terms[k].rho2.matrix();
    }
    g.projectors.emplace_back(
        HermOp::symmetrized(range_of(HermOp::symmetrized(s1, 1e-10)).projector,
                            1e-10),
        HermOp::symmetrized(range_of(HermOp::symmetrized(s2, 1e-10)).projector,
                            1e-10));
  }
  return g;
}

Lemma2Result lemma2_check(const std::vector<BipartiteState>& terms,
                          const std::vector<double>& weights, const HermOp& a1,
                          const HermOp& a2, double tol) {
  if (terms.empty() || terms.size() != weights.size())
    throw std::invalid_argument("lemma2_check: terms/weights size mismatch");
  double wsum = 0.0;
  for (double w : weights) {
    if (w <= 0.0) throw std::invalid_argument("lemma2_check: weights must be positive");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-8)
    throw std::invalid_argument("lemma2_check: weights do not sum to 1");

  Lemma2Result r;
  r.all_twins = true;
  for (size_t k = 0; k < terms.size(); ++k) {
    const double resid = verify_twin(terms[k], a1, a2).residual;
    r.residuals.push_back(resid);
    if (resid > tol && r.all_twins) {
      r.all_twins = false;
      r.counterexample = static_cast<int>(k);
    }
  }

  CMatrix rho = CMatrix::Zero(terms[0].dim(), terms[0].dim());
  for (size_t k = 0; k < terms.size(); ++k) rho += weights[k] * terms[k].rho();
  r.mixture_residual =
      verify_twin(BipartiteState(terms[0].d1(), terms[0].d2(), rho, 1e-8), a1,
                  a2)
          .residual;
  return r;
}

}  // namespace twinhs
