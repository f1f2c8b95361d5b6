#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "opal/permutation.hpp"

using namespace opal;

// Independent oracle: lay the blocks out explicitly. Output slot s receives
// block phi^{-1}(s); within a block, output offset q holds the input letter at
// offset tau^{-1}(q). The oracle then inverts the output list.
static Perm block_oracle(const Perm& phi, const std::vector<int>& sizes,
                         const std::vector<Perm>& inners) {
  int m = phi.degree();
  std::vector<int> prefix(m, 0);
  for (int i = 1; i < m; ++i) prefix[i] = prefix[i - 1] + sizes[i - 1];
  std::vector<int> output;  // output position -> input letter
  Perm phinv = phi.inverse();
  for (int s = 1; s <= m; ++s) {
    int blk = phinv(s) - 1;
    Perm tinv = inners[blk].inverse();
    for (int q = 1; q <= sizes[blk]; ++q) output.push_back(prefix[blk] + tinv(q));
  }
  std::vector<int> img(output.size());
  for (size_t pos = 0; pos < output.size(); ++pos) img[output[pos] - 1] = static_cast<int>(pos) + 1;
  return Perm::from_images(img);
}

static int inversion_sign(const Perm& p) {
  int inv = 0;
  for (int i = 1; i <= p.degree(); ++i)
    for (int j = i + 1; j <= p.degree(); ++j)
      if (p(i) > p(j)) ++inv;
  return inv % 2 ? -1 : 1;
}

static std::vector<std::vector<int>> size_tuples(int m, int maxsize) {
  std::vector<std::vector<int>> out{{}};
  for (int i = 0; i < m; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& t : out)
      for (int s = 1; s <= maxsize; ++s) {
        auto u = t;
        u.push_back(s);
        next.push_back(u);
      }
    out = next;
  }
  return out;
}

TEST_CASE("basics: compose, inverse, sign, parsing") {
  auto t = Perm::from_cycles("(1 2)");
  CHECK(t.sign() == -1);
  CHECK(t.degree() == 2);
  auto c = Perm::from_cycles("(1 2)(3 4 5)", 6);
  CHECK(c(1) == 2);
  CHECK(c(3) == 4);
  CHECK(c(5) == 3);
  CHECK(c(6) == 6);
  CHECK(Perm::from_images({2, 1, 4, 5, 3, 6}) == c);
  CHECK(c.compose(c.inverse()).is_identity());
  CHECK(Perm::from_cycles("id", 4).is_identity());
  CHECK_THROWS_AS(Perm::from_images({1, 1}), Error);
  CHECK_THROWS_AS(Perm::from_cycles("(1 2", 3), Error);
  CHECK_THROWS_AS(Perm::from_cycles("(1 2)(2 3)", 3), Error);
}

TEST_CASE("sign agrees with the inversion-count oracle") {
  std::mt19937 rng(0);
  for (int n = 1; n <= 8; ++n)
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<int> img(n);
      std::iota(img.begin(), img.end(), 1);
      std::shuffle(img.begin(), img.end(), rng);
      Perm p = Perm::from_images(img);
      CHECK(p.sign() == inversion_sign(p));
    }
}

TEST_CASE("sign is multiplicative") {
  for (const auto& a : symmetric_group(4))
    for (const auto& b : symmetric_group(4)) CHECK(a.compose(b).sign() == a.sign() * b.sign());
}

TEST_CASE("adjacent word reconstructs the permutation, rightmost first") {
  std::mt19937 rng(1);
  for (int n = 2; n <= 7; ++n)
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<int> img(n);
      std::iota(img.begin(), img.end(), 1);
      std::shuffle(img.begin(), img.end(), rng);
      Perm p = Perm::from_images(img);
      auto word = p.adjacent_word();
      Perm acc = Perm::identity(n);
      for (auto it = word.rbegin(); it != word.rend(); ++it)
        acc = Perm::adjacent(n, *it).compose(acc);  // apply later letters on the left
      // word is (g_1 .. g_r) with p = g_1 o ... o g_r
      Perm byfold = Perm::identity(n);
      for (int k : word) byfold = byfold.compose(Perm::adjacent(n, k));
      CHECK(byfold == p);
      CHECK((word.size() % 2 ? -1 : 1) == p.sign());
    }
}

TEST_CASE("block permutation: swapping blocks of sizes (2,1)") {
  auto theta = block_permutation(Perm::from_cycles("(1 2)"), {2, 1},
                                 {Perm::identity(2), Perm::identity(1)});
  CHECK(theta.images() == std::vector<int>{2, 3, 1});
  CHECK(theta.sign() == 1);  // two letters cross one: (-1)^{2*1}
}

TEST_CASE("block permutation matches the block-concatenation oracle") {
  for (int m = 1; m <= 3; ++m) {
    auto sm = symmetric_group(m);
    for (const auto& phi : sm)
      for (const auto& sizes : size_tuples(m, 3)) {
        // exhaust inner permutations via mixed radix over S_{k_i}
        std::vector<std::vector<Perm>> inner_choices;
        for (int s : sizes) inner_choices.push_back(symmetric_group(s));
        std::vector<size_t> idx(m, 0);
        while (true) {
          std::vector<Perm> inners;
          for (int i = 0; i < m; ++i) inners.push_back(inner_choices[i][idx[i]]);
          CHECK(block_permutation(phi, sizes, inners) == block_oracle(phi, sizes, inners));
          int carry = m - 1;
          while (carry >= 0 && ++idx[carry] == inner_choices[carry].size()) idx[carry--] = 0;
          if (carry < 0) break;
        }
      }
  }
}

TEST_CASE("block sign law: product of k_j*k_l over inversions of phi") {
  for (int m = 1; m <= 4; ++m)
    for (const auto& phi : symmetric_group(m))
      for (const auto& sizes : size_tuples(m, 3)) {
        std::vector<Perm> trivial;
        for (int s : sizes) trivial.push_back(Perm::identity(s));
        auto theta = block_permutation(phi, sizes, trivial);
        long e = 0;
        for (int j = 1; j <= m; ++j)
          for (int l = j + 1; l <= m; ++l)
            if (phi(j) > phi(l)) e += static_cast<long>(sizes[j - 1]) * sizes[l - 1];
        CHECK(theta.sign() == (e % 2 ? -1 : 1));
      }
}

TEST_CASE("inflate_outer: sign examples and the odd-size power law") {
  CHECK(inflate_outer(Perm::from_cycles("(1 2)"), 1, 3).sign() == -1);
  for (int m = 2; m <= 5; ++m)
    for (const auto& phi : symmetric_group(m))
      for (int i = 1; i <= m; ++i)
        for (int n : {1, 3}) {
          int s = inflate_outer(phi, i, n).sign();
          int want = 1;
          for (int k = 0; k < n; ++k) want *= phi.sign();
          CHECK(s == want);
        }
}

TEST_CASE("inflate_inner acts only on the inflated letters") {
  auto sigma = Perm::from_cycles("(1 3 2)");
  auto inner = inflate_inner(4, 2, sigma);
  CHECK(inner.degree() == 6);
  CHECK(inner(1) == 1);
  CHECK(inner(2) == 2 - 1 + sigma(1));
  CHECK(inner(3) == 2 - 1 + sigma(2));
  CHECK(inner(4) == 2 - 1 + sigma(3));
  CHECK(inner(5) == 5);
  CHECK(inner(6) == 6);
  CHECK(inner.sign() == sigma.sign());
}

TEST_CASE("block permutation is functorial in phi") {
  // theta(phi o psi; k) = theta(phi; psi-permuted k) o theta(psi; k)
  for (int m = 2; m <= 4; ++m) {
    auto sm = symmetric_group(m);
    for (const auto& phi : sm)
      for (const auto& psi : sm)
        for (const auto& sizes : size_tuples(m, m == 4 ? 2 : 3)) {
          std::vector<Perm> triv;
          for (int s : sizes) triv.push_back(Perm::identity(s));
          std::vector<int> moved(m);
          std::vector<Perm> movedtriv;
          for (int j = 1; j <= m; ++j) moved[j - 1] = sizes[psi.inverse()(j) - 1];
          for (int s : moved) movedtriv.push_back(Perm::identity(s));
          auto lhs = block_permutation(phi.compose(psi), sizes, triv);
          auto rhs = block_permutation(phi, moved, movedtriv).compose(block_permutation(psi, sizes, triv));
          CHECK(lhs == rhs);
        }
  }
}
