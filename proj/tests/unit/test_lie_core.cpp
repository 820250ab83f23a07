#include <gtest/gtest.h>

#include <array>

#include "corpus.hpp"
#include "lorlie/lie_algebra.hpp"
#include "lorlie/polynomial.hpp"

using namespace lorlie;
using Q = Rational;
using M = Matrix<Q>;
using V = Vector<Q>;
using L3 = LieAlgebra<Q>;

namespace {

L3 affine_line() { return L3::from_brackets(2, {{0, 1, {0, 1}}}); }
L3 r3_prime() { return L3::from_brackets(3, {{0, 1, {0, 0, 1}}, {0, 2, {0, -1, 0}}}); }

/// Leibniz rule checked pair by pair, independently of derivation_space.
bool leibniz(const L3& L, const M& d) {
  const std::size_t n = L.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const V lhs = d * L.bracket(i, j);
      const V rhs = add(L.bracket(d.column(i), unit_vector<Q>(n, j)), L.bracket(unit_vector<Q>(n, i), d.column(j)));
      if (lhs != rhs) return false;
    }
  return true;
}

}  // namespace

TEST(Bracket, Heisenberg) {
  const auto h = corpus::heisenberg();
  EXPECT_EQ(h.bracket(0, 1), (V{0, 0, 1}));
  EXPECT_EQ(h.bracket(1, 0), (V{0, 0, -1}));
  const V u{1, 2, 3};
  EXPECT_TRUE(is_zero_vector(h.bracket(u, u)));
  EXPECT_TRUE(is_zero_vector(L3::abelian(3).bracket(u, V{3, 1, 2})));
}

TEST(Bracket, AntisymmetryRequired) {
  std::vector<Q> c(8, Q(0));
  c[(0 * 2 + 1) * 2 + 1] = 1;  // [e1,e2] = e2 without [e2,e1]
  try {
    L3 bad(2, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::shape_mismatch);
  }
}

TEST(Jacobi, Examples) {
  EXPECT_TRUE(corpus::heisenberg().jacobi_defect().vanishes);
  EXPECT_TRUE(L3::abelian(4).jacobi_defect().vanishes);
  const auto bad = L3::from_brackets(L3::Unchecked{}, 3, {{0, 1, {0, 0, 1}}, {0, 2, {1, 0, 0}}});
  const auto d = bad.jacobi_defect();
  EXPECT_FALSE(d.vanishes);
  EXPECT_GT(d.norm, 0.0);
  EXPECT_EQ(d.defect, (V{0, 0, -1}));
  EXPECT_EQ((std::array{d.i, d.j, d.k}), (std::array<std::size_t, 3>{0, 1, 2}));
}

TEST(Jacobi, CheckedConstructorThrows) {
  try {
    L3::from_brackets(3, {{0, 1, {0, 0, 1}}, {0, 2, {1, 0, 0}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_a_lie_algebra);
  }
}

TEST(Ad, Examples) {
  const auto h = corpus::heisenberg();
  M expected(3, 3);
  expected(2, 1) = 1;
  EXPECT_EQ(h.ad(0), expected);
  EXPECT_TRUE(is_zero_matrix(h.ad(V{0, 0, 5})));
  const V u{1, 2, 0}, v{0, -1, 3};
  EXPECT_EQ(h.ad(add(u, v)), h.ad(u) + h.ad(v));
}

TEST(Killing, Examples) {
  EXPECT_TRUE(is_zero_matrix(killing_form(corpus::heisenberg())));
  EXPECT_TRUE(is_zero_matrix(killing_form(L3::abelian(3))));
  EXPECT_EQ(killing_form(affine_line()), (M{{1, 0}, {0, 0}}));
}

TEST(Killing, DerivationsAreSkew) {
  corpus::Rng rng(21);
  for (int k = 0; k < 20; ++k) {
    const auto L = corpus::abelian_semidirect(rng, 1, static_cast<std::size_t>(rng.integer(1, 4)));
    const auto B = killing_form(L);
    for (const auto& d : derivation_space(L)) {
      const V u = rng.vector(L.dim());
      EXPECT_EQ(dot(V(d * u), V(B * u)), 0);
    }
  }
}

TEST(DerivedSeries, Examples) {
  const auto h = derived_series(corpus::heisenberg());
  ASSERT_EQ(h.size(), 3u);
  EXPECT_EQ(h[1].dim(), 1u);
  EXPECT_TRUE(h[1].contains(V{0, 0, 1}));
  EXPECT_TRUE(h[2].is_zero());
  EXPECT_TRUE(is_solvable(corpus::heisenberg()));

  const auto a = derived_series(L3::abelian(2));
  ASSERT_EQ(a.size(), 2u);
  EXPECT_TRUE(a[1].is_zero());

  const auto s = derived_series(corpus::sl2());
  EXPECT_EQ(s.back().dim(), 3u);
  EXPECT_FALSE(is_solvable(corpus::sl2()));
}

TEST(Nilpotent, Examples) {
  EXPECT_TRUE(is_nilpotent(corpus::heisenberg()));
  EXPECT_TRUE(is_solvable(affine_line()));
  EXPECT_FALSE(is_nilpotent(affine_line()));
  EXPECT_TRUE(is_nilpotent(L3::abelian(3)));
}

TEST(Unimodular, Examples) {
  EXPECT_TRUE(is_unimodular(corpus::heisenberg()));
  EXPECT_FALSE(is_unimodular(affine_line()));
  EXPECT_EQ(ad_traces(affine_line()), (V{1, 0}));
  EXPECT_TRUE(is_unimodular(L3::abelian(2)));
}

TEST(CompleteSolvability, Heisenberg) {
  const auto cs = is_completely_solvable(corpus::heisenberg());
  EXPECT_EQ(cs.decision, Decision::yes);
  ASSERT_TRUE(cs.certificate_complete);
  ASSERT_EQ(cs.flag.size(), 3u);
  EXPECT_TRUE(cs.flag[0].same_as(Subspace<Q>::span(3, {V{0, 0, 1}})));
  EXPECT_TRUE(cs.flag[1].contains(V{0, 0, 1}));
}

TEST(CompleteSolvability, RotationType) {
  EXPECT_EQ(is_completely_solvable(r3_prime()).decision, Decision::no);
  EXPECT_EQ(characteristic_polynomial(r3_prime().ad(0)), Polynomial({0, 1, 0, 1}));
}

TEST(CompleteSolvability, AbelianAndFloat) {
  EXPECT_EQ(is_completely_solvable(L3::abelian(3)).decision, Decision::yes);
  const auto f = LieAlgebra<double>::from_brackets(3, {{0, 1, {0.0, 0.0, 1.0}}});
  EXPECT_EQ(is_completely_solvable(f).decision, Decision::indeterminate);
}

TEST(CompleteSolvability, FlagIsSoundAndTriangularizes) {
  corpus::Rng rng(22);
  int certified = 0;
  for (int k = 0; k < 40; ++k) {
    const auto L = k % 2 ? corpus::abelian_semidirect(rng, 2, 3) : corpus::two_step_nilpotent(rng, 3, 2);
    const auto cs = is_completely_solvable(L);
    if (cs.decision != Decision::yes || !cs.certificate_complete) continue;
    ++certified;
    std::vector<V> adapted;
    for (std::size_t i = 0; i < cs.flag.size(); ++i) {
      EXPECT_EQ(cs.flag[i].dim(), i + 1);
      EXPECT_TRUE(is_ideal(L, cs.flag[i]));
      for (const auto& v : cs.flag[i].basis())
        if (!Subspace<Q>::span(L.dim(), adapted).contains(v)) {
          adapted.push_back(v);
          break;
        }
    }
    const auto T = change_basis(L, M::from_columns(adapted, L.dim()));
    for (std::size_t u = 0; u < L.dim(); ++u)
      for (std::size_t r = 0; r < L.dim(); ++r)
        for (std::size_t c = 0; c < r; ++c) EXPECT_EQ(T.ad(u)(r, c), 0);
  }
  EXPECT_GT(certified, 0);
}

TEST(ClassificationFlags, Implications) {
  corpus::Rng rng(23);
  for (const auto& e : corpus::random_corpus(24, 60, 5)) {
    const auto f = classify(e.p.algebra());
    if (f.nilpotent) EXPECT_EQ(f.completely_solvable, Decision::yes) << e.family;
    if (f.completely_solvable == Decision::yes) EXPECT_TRUE(f.solvable) << e.family;
    if (f.abelian) EXPECT_TRUE(f.nilpotent && f.unimodular) << e.family;
  }
}

TEST(Derivations, Abelian) { EXPECT_EQ(derivation_space(L3::abelian(3)).size(), 9u); }

TEST(Derivations, HeisenbergGrading) {
  const auto h = corpus::heisenberg();
  const M grading = M::diagonal(V{1, 1, 2});
  EXPECT_TRUE(leibniz(h, grading));
  EXPECT_TRUE(is_derivation(h, grading));
  EXPECT_EQ(grading.trace(), 4);
  const auto space = derivation_space(h);
  Subspace<Q> flat(9);
  std::vector<V> flattened;
  for (const auto& d : space) {
    EXPECT_TRUE(leibniz(h, d));
    V x;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) x.push_back(d(i, j));
    flattened.push_back(x);
  }
  const auto span = Subspace<Q>::span(9, flattened);
  V g;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) g.push_back(grading(i, j));
  EXPECT_TRUE(span.contains(g));
  EXPECT_EQ(span.dim(), 6u);
}

TEST(Derivations, ContainInnerMaps) {
  corpus::Rng rng(25);
  for (int k = 0; k < 15; ++k) {
    const auto L = corpus::abelian_semidirect(rng, 2, 2);
    std::vector<V> flattened;
    for (const auto& d : derivation_space(L)) {
      EXPECT_TRUE(leibniz(L, d));
      V x;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) x.push_back(d(i, j));
      flattened.push_back(x);
    }
    const auto span = Subspace<Q>::span(16, flattened);
    for (std::size_t u = 0; u < 4; ++u) {
      V x;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) x.push_back(L.ad(u)(i, j));
      EXPECT_TRUE(span.contains(x));
    }
  }
}

TEST(CenterAndDerived, Examples) {
  const auto h = corpus::heisenberg();
  EXPECT_TRUE(center(h).same_as(Subspace<Q>::span(3, {V{0, 0, 1}})));
  EXPECT_TRUE(derived_ideal(h).same_as(center(h)));
  EXPECT_EQ(center(L3::abelian(2)).dim(), 2u);
  EXPECT_TRUE(derived_ideal(L3::abelian(2)).is_zero());
  EXPECT_TRUE(center(affine_line()).is_zero());
  EXPECT_TRUE(derived_ideal(affine_line()).same_as(Subspace<Q>::span(2, {V{0, 1}})));
}

TEST(ChangeBasis, IsomorphismPreservesInvariants) {
  corpus::Rng rng(26);
  for (int k = 0; k < 20; ++k) {
    const auto L = corpus::abelian_semidirect(rng, 2, 3);
    const auto P = rng.unimodular(5);
    const auto T = change_basis(L, P);
    EXPECT_TRUE(T.jacobi_defect().vanishes);
    EXPECT_EQ(is_unimodular(T), is_unimodular(L));
    EXPECT_EQ(derived_ideal(T).dim(), derived_ideal(L).dim());
    // [P e_i, P e_j] = P [e_i, e_j]'
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        EXPECT_EQ(L.bracket(P.column(i), P.column(j)), P * T.bracket(i, j));
  }
}

TEST(ChangeBasis, SingularRejected) {
  try {
    change_basis(corpus::heisenberg(), M(3, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::singular_basis);
  }
}
