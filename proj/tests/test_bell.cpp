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

#include <doctest.h>

#include "helpers.hpp"
#include "twinhs/bell.hpp"
#include "twinhs/twins.hpp"

using namespace twinhs;
using namespace testutil;

TEST_CASE("bell states: orthonormality and t-vectors") {
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      const Complex ip = bell_vector(k).dot(bell_vector(l));
      CHECK(std::abs(ip - (k == l ? 1.0 : 0.0)) < 1e-14);
    }
    // Independent route: t_i = Tr[T_k  s_i (x) s_i].
    const Eigen::Matrix3d c = correlation_matrix(bell_state(k));
    const Eigen::Vector3d t = bell_t(k);
    CHECK((c.diagonal() - t).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((c - Eigen::Matrix3d(t.asDiagonal())).cwiseAbs().maxCoeff() <
          1e-13);
  }
  CHECK((bell_t(0) - Eigen::Vector3d(-1, -1, -1)).norm() == 0.0);
  CHECK((bell_t(1) - Eigen::Vector3d(-1, 1, 1)).norm() == 0.0);
}

TEST_CASE("state_from_t: maximally mixed, singlet, rejected sign patterns") {
  CHECK(max_abs(state_from_t({0, 0, 0}).rho() - identity(4) / 4.0) < 1e-14);
  CHECK(max_abs(state_from_t({-1, -1, -1}).rho() - bell_state(0).rho()) <
        1e-14);

  const Eigen::Vector3d bad[] = {
      {1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  for (const auto& t : bad) CHECK_THROWS_AS(state_from_t(t), NotAStateError);
}

TEST_CASE("weights <-> t: frozen values and round trip") {
  const Eigen::Vector3d t = weights_to_t({0.0, 0.3, 0.7, 0.0});
  CHECK(t(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t(1) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(t(2) == doctest::Approx(-0.4).epsilon(1e-14));

  CHECK(weights_to_t({0.25, 0.25, 0.25, 0.25}).norm() < 1e-15);

  // Case B shape: w = (0, 0, w3, 1-w3) gives t1 = t2 = 2 w3 - 1, t3 = -1.
  const Eigen::Vector3d tb = weights_to_t({0.0, 0.0, 0.6, 0.4});
  CHECK(tb(0) == doctest::Approx(tb(1)).epsilon(1e-14));
  CHECK(tb(0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(tb(2) == doctest::Approx(-1.0).epsilon(1e-14));

  std::mt19937_64 gen(61);
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::Vector4d w = random_simplex4(gen);
    const TetraWeights back = t_to_weights(weights_to_t(w));
    CHECK(back.in_tetrahedron);
    CHECK((back.w - w).cwiseAbs().maxCoeff() < 1e-12);
  }
  // And the other direction on tetrahedron members.
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Vector3d t2 = weights_to_t(random_simplex4(gen));
    CHECK((weights_to_t(t_to_weights(t2).w) - t2).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("classify_mixture: all classes") {
  const MixtureClass a =
      classify_mixture(BellMixture::from_t({1.0, 0.4, -0.4}));
  CHECK(a.kind == MixtureClass::BinaryNonSinglet);
  CHECK(a.axis == 1);
  REQUIRE(a.mixture.size() == 2);
  CHECK(a.mixture[0].second == 2);
  CHECK(a.mixture[0].first == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(a.mixture[1].second == 3);
  CHECK(a.mixture[1].first == doctest::Approx(0.7).epsilon(1e-12));

  const MixtureClass b =
      classify_mixture(BellMixture::from_t({0.2, 0.2, -1.0}));
  CHECK(b.kind == MixtureClass::BinarySinglet);
  CHECK(b.axis == 3);
  REQUIRE(b.mixture.size() == 2);
  CHECK(b.mixture[0].second == 3);
  CHECK(b.mixture[0].first == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(b.mixture[1].second == 0);
  CHECK(b.mixture[1].first == doctest::Approx(0.4).epsilon(1e-12));

  CHECK(classify_mixture(BellMixture::from_t({0.5, 0.1, 0.1})).kind ==
        MixtureClass::HigherRank);

  for (int k = 0; k < 4; ++k) {
    const MixtureClass p = classify_mixture(BellMixture::from_t(bell_t(k)));
    CHECK(p.kind == MixtureClass::PureBell);
    CHECK(p.bell_k == k);
  }

  // The reconstructed mixture reproduces the state.
  CMatrix back = CMatrix::Zero(4, 4);
  for (const auto& [w, k] : a.mixture) back += w * bell_state(k).rho();
  CHECK(max_abs(back - state_from_t({1.0, 0.4, -0.4}).rho()) < 1e-12);
}

TEST_CASE("theorem6_twins: families verify; strength tracks separability") {
  std::mt19937_64 gen(62);
  std::uniform_real_distribution<double> interior(-0.9, 0.9);
  for (int rep = 0; rep < 10; ++rep) {
    const int axis = 1 + static_cast<int>(gen() % 3);
    const double u = interior(gen);
    Eigen::Vector3d t_a = Eigen::Vector3d::Zero(), t_b = t_a;
    const int j = axis % 3 + 1, k = j % 3 + 1;
    t_a(axis - 1) = 1.0;
    t_a(j - 1) = u;
    t_a(k - 1) = -u;
    t_b(axis - 1) = -1.0;
    t_b(j - 1) = u;
    t_b(k - 1) = u;

    const MixtureClass ca = classify_mixture(BellMixture::from_t(t_a));
    const MixtureClass cb = classify_mixture(BellMixture::from_t(t_b));
    REQUIRE(ca.kind == MixtureClass::BinaryNonSinglet);
    REQUIRE(cb.kind == MixtureClass::BinarySinglet);

    const TwinFamily fa = *theorem6_twins(ca);
    const TwinFamily fb = *theorem6_twins(cb);
    CHECK(fa.axis == axis);
    CHECK(fa.sign == 1);
    CHECK(fb.axis == axis);
    CHECK(fb.sign == -1);

    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    const double alpha = coeff(gen), beta = coeff(gen) + 2.5;
    const BipartiteState sa = state_from_t(t_a), sb = state_from_t(t_b);
    const TwinPair pa =
        verify_twin(sa, fa.a1(alpha, beta), fa.a2(alpha, beta));
    const TwinPair pb =
        verify_twin(sb, fb.a1(alpha, beta), fb.a2(alpha, beta));
    CHECK(pa.residual < 1e-10);
    CHECK(pb.residual < 1e-10);
    // Twins of unequal (nonseparable) binary mixtures are weak; only the
    // equal-weight separable point commutes with rho.
    const Strength expected = u == 0.0 ? Strength::Strong : Strength::Weak;
    CHECK(classify_twin(sa, pa).kind == expected);
    CHECK(classify_twin(sb, pb).kind == expected);
  }

  // Equal-weight mixtures of each case: strong twins.
  for (int axis = 1; axis <= 3; ++axis) {
    Eigen::Vector3d tp = Eigen::Vector3d::Zero(), tm = tp;
    tp(axis - 1) = 1.0;
    tm(axis - 1) = -1.0;
    for (const auto& t : {tp, tm}) {
      const BipartiteState s = state_from_t(t);
      const TwinFamily f = *theorem6_twins(
          classify_mixture(BellMixture::from_t(t)));
      const TwinPair p = verify_twin(s, f.a1(0.3, 1.2), f.a2(0.3, 1.2));
      CHECK(p.residual < 1e-10);
      CHECK(classify_twin(s, p).kind == Strength::Strong);
    }
  }

  CHECK_FALSE(theorem6_twins(
      classify_mixture(BellMixture::from_t({0.5, 0.1, 0.1}))));
}

TEST_CASE("bell_twin_partner: appendix sign table against the pure-state route") {
  std::mt19937_64 gen(63);
  for (int k = 0; k < 4; ++k) {
    for (int rep = 0; rep < 20; ++rep) {
      std::uniform_real_distribution<double> coeff(-1.5, 1.5);
      const double alpha = coeff(gen);
      const Eigen::Vector3d beta(coeff(gen), coeff(gen), coeff(gen));
      CMatrix a1 = alpha * pauli(0);
      for (int i = 1; i <= 3; ++i) a1 += beta(i - 1) * pauli(i);

      const HermOp a2_table = bell_twin_partner(k, beta, alpha);
      const HermOp a2_pure = pure_twin_partner(bell_vector(k), 2, 2,
                                               HermOp(a1));
      CHECK(max_abs(a2_table.matrix() - a2_pure.matrix()) < 1e-12);
      CHECK(verify_twin(bell_state(k), HermOp(a1), a2_table).residual <
            1e-12);
    }
  }

  // Frozen rows: T0 flips sigma_3, T3 keeps sigma_1.
  CHECK(max_abs(bell_twin_partner(0, {0, 0, 1}, 0).matrix() + pauli(3)) <
        1e-14);
  CHECK(max_abs(bell_twin_partner(3, {1, 0, 0}, 0).matrix() - pauli(1)) <
        1e-14);
  CHECK(max_abs(bell_twin_partner(2, {0, 0, 0}, 0.7).matrix() -
                0.7 * identity(2)) < 1e-14);
}

TEST_CASE("hermitian_schmidt_T: frozen coefficients and osd agreement") {
  // Singlet: four coefficients 1/2.
  const SchmidtDecomp singlet =
      hermitian_schmidt_T(BellMixture::from_t({-1, -1, -1}));
  REQUIRE(singlet.terms.size() == 4);
  for (const auto& t : singlet.terms)
    CHECK(t.coeff == doctest::Approx(0.5).epsilon(1e-13));

  // Maximally mixed: a single unit term.
  const SchmidtDecomp mm = hermitian_schmidt_T(BellMixture::from_t({0, 0, 0}));
  REQUIRE(mm.terms.size() == 1);
  CHECK(mm.terms[0].coeff == doctest::Approx(1.0).epsilon(1e-13));

  // t = (1, 0.4, -0.4): coefficients proportional to (1, 1, 0.4, 0.4).
  const SchmidtDecomp bin =
      hermitian_schmidt_T(BellMixture::from_t({1.0, 0.4, -0.4}));
  const double pref = 1.0 / std::sqrt(1.0 + 1.32);
  CHECK(same_multiset(bin.coefficients(),
                      {pref, pref, 0.4 * pref, 0.4 * pref}, 1e-13));

  std::mt19937_64 gen(64);
  for (int rep = 0; rep < 20; ++rep) {
    const BellMixture m = BellMixture::from_weights(random_simplex4(gen));
    const SchmidtDecomp closed = hermitian_schmidt_T(m);
    const SchmidtDecomp generic = hermitian_osd(m.state(), 1e-9);
    CHECK(same_multiset(closed.coefficients(), generic.coefficients(), 1e-9));
    CHECK(hs_norm(closed.reconstruct() -
                  m.state().rho() / hs_norm(m.state().rho())) < 1e-12);
  }
}

TEST_CASE("su2_from_so3: adjoint covariance") {
  // Rotation about z by theta lifts to exp(-i theta sigma_3 / 2).
  const double theta = 0.83;
  Eigen::Matrix3d rz = Eigen::Matrix3d::Identity();
  rz(0, 0) = std::cos(theta);
  rz(0, 1) = -std::sin(theta);
  rz(1, 0) = std::sin(theta);
  rz(1, 1) = std::cos(theta);
  const CMatrix u = su2_from_so3(rz);
  const Complex i_unit(0.0, 1.0);
  CMatrix expected(2, 2);
  expected << std::exp(-i_unit * theta / 2.0), 0.0, 0.0,
      std::exp(i_unit * theta / 2.0);
  CHECK(max_abs(u - expected) < 1e-12);

  std::mt19937_64 gen(65);
  for (int rep = 0; rep < 10; ++rep) {
    // Random proper rotation via QR of a random matrix.
    Eigen::Matrix3d g;
    g.setRandom();
    Eigen::Matrix3d q = Eigen::HouseholderQR<Eigen::Matrix3d>(g).householderQ();
    if (q.determinant() < 0) q.col(2) *= -1.0;
    const CMatrix v = su2_from_so3(q);
    CHECK(max_abs(v * v.adjoint() - identity(2)) < 1e-12);
    for (int a = 1; a <= 3; ++a) {
      CMatrix rot = CMatrix::Zero(2, 2);
      for (int b = 1; b <= 3; ++b) rot += q(b - 1, a - 1) * pauli(b);
      CHECK(max_abs(v * pauli(a) * v.adjoint() - rot) < 1e-12);
    }
  }
}

TEST_CASE("mds_normal_form: recovery and round trips") {
  // Already in normal form: t recovered as a signed permutation, tiny
  // residual.
  const Eigen::Vector3d t0(0.7, -0.3, 0.1);
  const MdsNormalForm nf = mds_normal_form(state_from_t(t0));
  CHECK(same_multiset(
      {std::abs(nf.t(0)), std::abs(nf.t(1)), std::abs(nf.t(2))},
      {0.7, 0.3, 0.1}, 1e-10));

  std::mt19937_64 gen(66);
  for (int rep = 0; rep < 8; ++rep) {
    const Eigen::Vector3d t = weights_to_t(random_simplex4(gen));
    const CMatrix v1 = random_unitary(gen, 2), v2 = random_unitary(gen, 2);
    const CMatrix v12 = tensor(v1, v2);
    const BipartiteState rotated(
        2, 2, v12 * state_from_t(t).rho() * v12.adjoint());
    const MdsNormalForm r = mds_normal_form(rotated);
    CHECK(same_multiset(
        {std::abs(r.t(0)), std::abs(r.t(1)), std::abs(r.t(2))},
        {std::abs(t(0)), std::abs(t(1)), std::abs(t(2))}, 1e-8));
    // The returned unitaries reproduce the normal form.
    const CMatrix u12 = tensor(r.u1, r.u2);
    const CMatrix mapped = u12 * rotated.rho() * u12.adjoint();
    CHECK(max_abs(mapped - state_from_t(r.t).rho()) < 1e-8);
  }

  // Conjugated singlet: |t| = (1,1,1) always.
  const CMatrix v1 = random_unitary(gen, 2), v2 = random_unitary(gen, 2);
  const CMatrix v12 = tensor(v1, v2);
  const MdsNormalForm sing = mds_normal_form(
      BipartiteState(2, 2, v12 * bell_state(0).rho() * v12.adjoint()));
  CHECK(same_multiset(
      {std::abs(sing.t(0)), std::abs(sing.t(1)), std::abs(sing.t(2))},
      {1.0, 1.0, 1.0}, 1e-8));

  // Not MDS: a product state with a polarized marginal.
  CMatrix pol(2, 2);
  pol << 0.8, 0.0, 0.0, 0.2;
  CHECK_THROWS_AS(
      mds_normal_form(BipartiteState(2, 2, tensor(pol, 0.5 * identity(2)))),
      std::invalid_argument);
}

TEST_CASE("local-unitary covariance of twins") {
  std::mt19937_64 gen(67);
  const BipartiteState s = state_from_t({1.0, 0.4, -0.4});
  const TwinPair base = verify_twin(s, HermOp(pauli(1)), HermOp(pauli(1)));
  REQUIRE(base.residual < 1e-10);
  for (int rep = 0; rep < 6; ++rep) {
    const CMatrix u1 = random_unitary(gen, 2), u2 = random_unitary(gen, 2);
    const CMatrix u12 = tensor(u1, u2);
    const BipartiteState rotated(2, 2, u12 * s.rho() * u12.adjoint());
    const TwinPair moved = verify_twin(
        rotated,
        HermOp::symmetrized(u1 * pauli(1) * u1.adjoint(), 1e-10),
        HermOp::symmetrized(u2 * pauli(1) * u2.adjoint(), 1e-10));
    CHECK(moved.residual <= 1e-9);
  }
}

TEST_CASE("twin-space dimension across the tetrahedron") {
  // Vertex, edge-interior, face-interior, interior.
  CHECK(twin_space(bell_state(2)).dim == 4);
  CHECK(twin_space(state_from_t({1.0, 0.25, -0.25})).dim == 2);
  CHECK(twin_space(state_from_t({0.2, 0.2, -1.0})).dim == 2);
  CHECK(twin_space(
            BellMixture::from_weights({0.2, 0.3, 0.5, 0.0}).state())
            .dim == 1);
  CHECK(twin_space(
            BellMixture::from_weights({0.1, 0.2, 0.3, 0.4}).state())
            .dim == 1);
}
