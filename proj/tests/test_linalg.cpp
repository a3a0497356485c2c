#include "lav/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lav;

namespace {

Matrix<Int> random_matrix(std::mt19937_64& rng, size_t r, size_t c, int range) {
  Matrix<Int> m = zeros<Int>(r, c);
  for (auto& row : m)
    for (auto& v : row) v = Int(static_cast<long long>(rng() % (2 * range + 1)) - range);
  return m;
}

Matrix<Rat> to_rat(const Matrix<Int>& m) {
  Matrix<Rat> out = zeros<Rat>(m.size(), m[0].size());
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[0].size(); ++j) out[i][j] = Rat(m[i][j]);
  return out;
}

}  // namespace

TEST(Linalg, DeterminantByCofactors) {
  Matrix<Rat> a{{Rat(2), Rat(-1), Rat(0)}, {Rat(1), Rat(3), Rat(4)}, {Rat(0), Rat(5), Rat(-2)}};
  // 2(3 * -2 - 4 * 5) + 1 * (1 * -2 - 4 * 0) = -52 - 2
  EXPECT_EQ(det(a), Rat(-54));
  auto inv = inverse(a);
  EXPECT_EQ(matmul(a, inv), identity<Rat>(3));
}

TEST(Linalg, HnfSpansSameLattice) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 30; ++it) {
    auto g = random_matrix(rng, 4, 3, 9);
    Matrix<Rat> gr = to_rat(g);
    Matrix<Rat> top(gr.begin(), gr.begin() + 3);
    if (det(top) == 0) continue;
    auto h = hnf(g);
    for (size_t i = 0; i < 3; ++i) {
      EXPECT_GT(h[i][i], 0);
      for (size_t j = 0; j < i; ++j) EXPECT_EQ(h[i][j], 0);
      for (size_t r = 0; r < i; ++r) {
        EXPECT_GE(h[r][i], 0);
        EXPECT_LT(h[r][i], h[i][i]);
      }
    }
    // every generator is an integral combination of the HNF rows
    auto hinv = inverse(to_rat(h));
    for (const auto& row : g) {
      auto c = matmul(to_rat({row}), hinv);
      for (const auto& v : c[0]) EXPECT_EQ(denominator(v), 1);
    }
    // the index of the lattice is the gcd of the maximal minors
    Int minors = 0;
    for (size_t skip = 0; skip < g.size(); ++skip) {
      Matrix<Int> sub;
      for (size_t i = 0; i < g.size(); ++i)
        if (i != skip) sub.push_back(g[i]);
      Rat dd = abs(det(to_rat(sub)));
      minors = gcd(minors, Int(numerator(dd)));
    }
    EXPECT_EQ(h[0][0] * h[1][1] * h[2][2], minors);
  }
}

TEST(Linalg, SmithFormFactorisation) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 40; ++it) {
    auto R = random_matrix(rng, 3 + it % 2, 3, 12);
    auto s = smith(R);
    EXPECT_EQ(matmul(matmul(s.U, R), s.V), s.D);
    EXPECT_EQ(abs(det(to_rat(s.U))), Rat(1));
    EXPECT_EQ(abs(det(to_rat(s.V))), Rat(1));
    for (size_t i = 0; i + 1 < s.diagonal.size(); ++i)
      if (s.diagonal[i] != 0) EXPECT_EQ(s.diagonal[i + 1] % s.diagonal[i], 0);
  }
  // Z/2 x Z/4 from the relations 2a = 0, 4b = 0, 2a + 4b = 0
  auto s = smith({{Int(2), Int(0)}, {Int(0), Int(4)}, {Int(2), Int(4)}});
  EXPECT_EQ(s.diagonal, (std::vector<Int>{Int(2), Int(4)}));
}
