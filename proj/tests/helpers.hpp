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
// Shared test fixtures and independent oracles. Everything here is kept
// deliberately naive (index loops, no calls into the code under test) so it
// can serve as a second route for the same quantities.
//

#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "twinhs/linalg.hpp"

namespace testutil {

using twinhs::CMatrix;
using twinhs::CVector;
using twinhs::Complex;
using twinhs::RVector;

// Brute-force Kronecker product, independent of twinhs::tensor.
inline CMatrix naive_kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
  return out;
}

// Brute-force partial trace over factor `traced`.
inline CMatrix naive_ptrace(const CMatrix& m, Eigen::Index d1, Eigen::Index d2,
                            int traced) {
  if (traced == 1) {
    CMatrix out = CMatrix::Zero(d2, d2);
    for (Eigen::Index a = 0; a < d2; ++a)
      for (Eigen::Index b = 0; b < d2; ++b)
        for (Eigen::Index k = 0; k < d1; ++k)
          out(a, b) += m(k * d2 + a, k * d2 + b);
    return out;
  }
  CMatrix out = CMatrix::Zero(d1, d1);
  for (Eigen::Index a = 0; a < d1; ++a)
    for (Eigen::Index b = 0; b < d1; ++b)
      for (Eigen::Index k = 0; k < d2; ++k)
        out(a, b) += m(a * d2 + k, b * d2 + k);
  return out;
}

inline CMatrix random_complex(std::mt19937_64& gen, Eigen::Index rows,
                              Eigen::Index cols) {
  std::normal_distribution<double> dist;
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = Complex(dist(gen), dist(gen));
  return m;
}

inline CMatrix random_hermitian(std::mt19937_64& gen, Eigen::Index d) {
  const CMatrix g = random_complex(gen, d, d);
  return (g + g.adjoint()) / 2.0;
}

inline CMatrix random_density(std::mt19937_64& gen, Eigen::Index d) {
  const CMatrix g = random_complex(gen, d, d);
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline twinhs::BipartiteState random_state(std::mt19937_64& gen,
                                           Eigen::Index d1, Eigen::Index d2) {
  return twinhs::BipartiteState(d1, d2, random_density(gen, d1 * d2));
}

inline CMatrix random_unitary(std::mt19937_64& gen, Eigen::Index d) {
  const Eigen::HouseholderQR<CMatrix> qr(random_complex(gen, d, d));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k)
    q.col(k) *= r(k, k) / std::abs(r(k, k)); // fix column phases
  return q;
}

inline CVector random_pure(std::mt19937_64& gen, Eigen::Index n) {
  CVector v = random_complex(gen, n, 1);
  return v / v.norm();
}

// Uniform sample of the weight simplex (Dirichlet(1,1,1,1)).
inline Eigen::Vector4d random_simplex4(std::mt19937_64& gen) {
  std::exponential_distribution<double> dist(1.0);
  Eigen::Vector4d w;
  for (int k = 0; k < 4; ++k) w(k) = dist(gen);
  return w / w.sum();
}

// Largest principal angle between the column spans of two orthonormal
// matrices of equal rank.
inline double subspace_angle(const twinhs::RMatrix& qa,
                             const twinhs::RMatrix& qb) {
  Eigen::JacobiSVD<twinhs::RMatrix> sv(qa.transpose() * qb);
  const double c = std::clamp(sv.singularValues().minCoeff(), -1.0, 1.0);
  return std::acos(c);
}

inline bool same_multiset(std::vector<double> a, std::vector<double> b,
                          double tol) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (size_t k = 0; k < a.size(); ++k)
    if (std::abs(a[k] - b[k]) > tol) return false;
  return true;
}

}  // namespace testutil
