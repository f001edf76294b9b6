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

#include "twinhs/bell.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace twinhs {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

int cyclic_next(int i) { return i % 3 + 1; } // 1->2, 2->3, 3->1

CMatrix t_form_matrix(const Eigen::Vector3d& t) {
  CMatrix m = tensor(pauli(0), pauli(0));
  for (int i = 1; i <= 3; ++i) m += t(i - 1) * tensor(pauli(i), pauli(i));
  return m / 4.0;
}

}  // namespace

CVector bell_vector(int k) {
  CVector v = CVector::Zero(4);
  switch (k) {
    case 1: v(0) = kInvSqrt2; v(3) = -kInvSqrt2; break;
    case 2: v(0) = kInvSqrt2; v(3) = kInvSqrt2; break;
    case 3: v(1) = kInvSqrt2; v(2) = kInvSqrt2; break;
    case 0: v(1) = kInvSqrt2; v(2) = -kInvSqrt2; break;
    default: throw std::invalid_argument("bell_vector: index must be 0..3");
  }
  return v;
}

BipartiteState bell_state(int k) {
  const CVector v = bell_vector(k);
  return BipartiteState(2, 2, v * v.adjoint());
}

Eigen::Vector3d bell_t(int k) {
  switch (k) {
    case 1: return {-1.0, 1.0, 1.0};
    case 2: return {1.0, -1.0, 1.0};
    case 3: return {1.0, 1.0, -1.0};
    case 0: return {-1.0, -1.0, -1.0};
    default: throw std::invalid_argument("bell_t: index must be 0..3");
  }
}

Eigen::Vector3d weights_to_t(const Eigen::Vector4d& w) {
  // (A3): T = sum_k w_k T_k with t_i the signed weight combinations.
  return {-w(0) + w(1) + w(2) - w(3), w(0) - w(1) + w(2) - w(3),
          w(0) + w(1) - w(2) - w(3)};
}

TetraWeights t_to_weights(const Eigen::Vector3d& t) {
  TetraWeights r;
  r.w = {(1.0 - t(0) + t(1) + t(2)) / 4.0, (1.0 + t(0) - t(1) + t(2)) / 4.0,
         (1.0 + t(0) + t(1) - t(2)) / 4.0, (1.0 - t(0) - t(1) - t(2)) / 4.0};
  r.in_tetrahedron = r.w.minCoeff() >= -1e-12;
  return r;
}

BellMixture BellMixture::from_weights(const Eigen::Vector4d& w, double tol) {
  if (w.minCoeff() < -tol || std::abs(w.sum() - 1.0) > tol) {
    std::vector<double> diag(w.data(), w.data() + 4);
    throw NotAStateError("BellMixture: weights are not a simplex point", diag);
  }
  return BellMixture{w, weights_to_t(w)};
}

BellMixture BellMixture::from_t(const Eigen::Vector3d& t, double tol) {
  const TetraWeights tw = t_to_weights(t);
  if (tw.w.minCoeff() < -std::max(tol, 1e-12)) {
    std::vector<double> diag(tw.w.data(), tw.w.data() + 4);
    std::ostringstream os;
    os << "BellMixture: t is outside the tetrahedron (weight "
       << tw.w.minCoeff() << " < 0)";
    throw NotAStateError(os.str(), diag);
  }
  return BellMixture{tw.w, t};
}

BipartiteState BellMixture::state(double tol) const {
  return BipartiteState(2, 2, t_form_matrix(t), std::max(tol, 1e-9));
}

BipartiteState state_from_t(const Eigen::Vector3d& t) {
  return BellMixture::from_t(t).state();
}

MixtureClass classify_mixture(const BellMixture& m, double tol) {
  std::vector<int> ones;
  for (int i = 0; i < 3; ++i)
    if (std::abs(std::abs(m.t(i)) - 1.0) <= tol) ones.push_back(i + 1);

  MixtureClass c;
  if (ones.size() == 3) {
    c.kind = MixtureClass::PureBell;
    const bool s1 = m.t(0) > 0, s2 = m.t(1) > 0, s3 = m.t(2) > 0;
    if (!s1 && s2 && s3) c.bell_k = 1;
    else if (s1 && !s2 && s3) c.bell_k = 2;
    else if (s1 && s2 && !s3) c.bell_k = 3;
    else if (!s1 && !s2 && !s3) c.bell_k = 0;
    else
      throw std::invalid_argument(
          "classify_mixture: sign pattern does not correspond to a state");
    c.mixture.emplace_back(1.0, c.bell_k);
    return c;
  }
  if (ones.size() == 2)
    throw std::invalid_argument(
        "classify_mixture: two unit |t_i| contradict tetrahedron membership");
  if (ones.empty()) return c; // HigherRank

  const int i = ones[0];
  c.axis = i;
  const int j = cyclic_next(i), k = cyclic_next(j);
  if (m.t(i - 1) > 0) {
    // Case A: two nonsinglet Bell states; T_i does not participate and
    // t_{i+2} = -t_{i+1}.
    c.kind = MixtureClass::BinaryNonSinglet;
    c.mixture.emplace_back((1.0 - m.t(j - 1)) / 2.0, j);
    c.mixture.emplace_back((1.0 - m.t(k - 1)) / 2.0, k);
  } else {
    // Case B: singlet plus T_i; t_{i+1} = t_{i+2}.
    c.kind = MixtureClass::BinarySinglet;
    const double tj = (m.t(j - 1) + m.t(k - 1)) / 2.0;
    c.mixture.emplace_back((1.0 + tj) / 2.0, i);
    c.mixture.emplace_back((1.0 - tj) / 2.0, 0);
  }
  return c;
}

HermOp TwinFamily::a1(double alpha, double beta) const {
  return HermOp(alpha * pauli(0) + beta * pauli(axis));
}

HermOp TwinFamily::a2(double alpha, double beta) const {
  return HermOp(alpha * pauli(0) + sign * beta * pauli(axis));
}

std::optional<TwinFamily> theorem6_twins(const MixtureClass& c) {
  if (c.kind == MixtureClass::BinaryNonSinglet) return TwinFamily{c.axis, +1};
  if (c.kind == MixtureClass::BinarySinglet) return TwinFamily{c.axis, -1};
  return std::nullopt;
}

HermOp bell_twin_partner(int k, const Eigen::Vector3d& beta, double alpha) {
  const Eigen::Vector3d t = bell_t(k);
  CMatrix a2 = alpha * pauli(0);
  for (int i = 1; i <= 3; ++i) a2 += t(i - 1) * beta(i - 1) * pauli(i);
  return HermOp(a2);
}

SchmidtDecomp hermitian_schmidt_T(const BellMixture& m) {
  const double r0 = 1.0 / (1.0 + m.t.squaredNorm());
  const double c0 = std::sqrt(r0);

  SchmidtDecomp out;
  out.hermitian = true;
  out.terms.push_back(
      {c0, kInvSqrt2 * pauli(0), kInvSqrt2 * pauli(0)});

  std::array<int, 3> axes = {1, 2, 3};
  std::stable_sort(axes.begin(), axes.end(), [&](int a, int b) {
    return std::abs(m.t(a - 1)) > std::abs(m.t(b - 1));
  });
  for (int i : axes) {
    const double ti = m.t(i - 1);
    if (ti == 0.0) continue;
    const double sg = ti > 0 ? 1.0 : -1.0;
    CMatrix a = kInvSqrt2 * pauli(i);
    const double cs = canonical_hermitian_sign(a);
    out.terms.push_back(
        {c0 * std::abs(ti), cs * a, (cs * sg * kInvSqrt2) * pauli(i)});
  }
  return out;
}

Eigen::Matrix3d correlation_matrix(const BipartiteState& s) {
  if (s.d1() != 2 || s.d2() != 2)
    throw std::invalid_argument("correlation_matrix: state is not two-qubit");
  Eigen::Matrix3d c;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      c(i - 1, j - 1) = (tensor(pauli(i), pauli(j)) * s.rho()).trace().real();
  return c;
}

CMatrix su2_from_so3(const Eigen::Matrix3d& r) {
  // Quaternion extraction (Shepperd's method), then U = w I - i (x,y,z).s.
  double w, x, y, z;
  const double tr = r.trace();
  if (tr > 0) {
    double s = std::sqrt(tr + 1.0) * 2.0;
    w = 0.25 * s;
    x = (r(2, 1) - r(1, 2)) / s;
    y = (r(0, 2) - r(2, 0)) / s;
    z = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
    double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
    w = (r(2, 1) - r(1, 2)) / s;
    x = 0.25 * s;
    y = (r(0, 1) + r(1, 0)) / s;
    z = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) > r(2, 2)) {
    double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
    w = (r(0, 2) - r(2, 0)) / s;
    x = (r(0, 1) + r(1, 0)) / s;
    y = 0.25 * s;
    z = (r(1, 2) + r(2, 1)) / s;
  } else {
    double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
    w = (r(1, 0) - r(0, 1)) / s;
    x = (r(0, 2) + r(2, 0)) / s;
    y = (r(1, 2) + r(2, 1)) / s;
    z = 0.25 * s;
  }
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  w /= n; x /= n; y /= n; z /= n;
  const Complex j(0.0, 1.0);
  return w * pauli(0) - j * (x * pauli(1) + y * pauli(2) + z * pauli(3));
}

namespace {

// Global phase fixed so the first non-negligible entry (row-major) is
// positive real.
CMatrix fix_phase(CMatrix u, double tol = 1e-12) {
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    for (Eigen::Index j = 0; j < u.cols(); ++j)
      if (std::abs(u(i, j)) > tol) {
        u *= std::conj(u(i, j)) / std::abs(u(i, j));
        return u;
      }
  return u;
}

}  // namespace

MdsNormalForm mds_normal_form(const BipartiteState& s, double tol) {
  if (s.d1() != 2 || s.d2() != 2)
    throw std::invalid_argument("mds_normal_form: state is not two-qubit");
  const CMatrix half = 0.5 * pauli(0);
  if (max_abs(partial_trace(s, 2).matrix() - half) > tol ||
      max_abs(partial_trace(s, 1).matrix() - half) > tol)
    throw std::invalid_argument(
        "mds_normal_form: marginals are not maximally mixed");

  const Eigen::Matrix3d c = correlation_matrix(s);
  Eigen::JacobiSVD<Eigen::Matrix3d> sv(c,
                                       Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d o1 = sv.matrixU(), o2 = sv.matrixV();
  const double s1 = o1.determinant() < 0 ? -1.0 : 1.0;
  const double s2 = o2.determinant() < 0 ? -1.0 : 1.0;
  o1.col(2) *= s1;
  o2.col(2) *= s2;

  MdsNormalForm out;
  out.t = {sv.singularValues()(0), sv.singularValues()(1),
           s1 * s2 * sv.singularValues()(2)};
  out.u1 = fix_phase(su2_from_so3(o1.transpose()));
  out.u2 = fix_phase(su2_from_so3(o2.transpose()));

  const CMatrix u12 = tensor(out.u1, out.u2);
  const CMatrix mapped = u12 * s.rho() * u12.adjoint();
  if (max_abs(mapped - t_form_matrix(out.t)) > 1e-8)
    throw NumericalError("mds_normal_form: verification residual too large");
  return out;
}

}  // namespace twinhs
