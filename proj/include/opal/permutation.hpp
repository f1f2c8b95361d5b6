// Permutations of {1..n}, signs, and the block permutations used by operadic
// equivariance (inflating a letter to a block, permuting blocks).
#pragma once

#include <string>
#include <vector>

#include "opal/field.hpp"

namespace opal {

class Perm {
 public:
  Perm() = default;
  static Perm identity(int n);
  static Perm adjacent(int n, int k);  // transposition (k, k+1), 1 <= k < n
  static Perm from_images(std::vector<int> img);
  // "(1 2)(3 4 5)" one-line cycle notation; n = 0 takes the largest letter.
  static Perm from_cycles(const std::string& s, int n = 0);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i - 1]; }  // 1-based
  const std::vector<int>& images() const { return img_; }
  bool is_identity() const;
  bool operator==(const Perm& o) const { return img_ == o.img_; }

  Perm compose(const Perm& other) const;  // (this o other): other applied first
  Perm inverse() const;
  int sign() const;  // +1 / -1, via cycle parity

  // Word of adjacent-transposition indices with *this = t[w0] o t[w1] o ...
  // (function composition, rightmost applied first). A right group action
  // applies w.front() first: x * sigma = (((x * t[w0]) * t[w1]) ... ).
  std::vector<int> adjacent_word() const;

  std::string str() const;  // cycle notation

 private:
  std::vector<int> img_;
};

// theta_{m; k_1..k_m}(phi; tau_1..tau_m): partitions {1..K} into consecutive
// blocks of the given sizes, permutes the contents of block i by tau_i, and
// sends block i to slot phi(i).
Perm block_permutation(const Perm& phi, const std::vector<int>& sizes,
                       const std::vector<Perm>& inners);

// sigma acting on the n letters at positions i..i+n-1 inside m+n-1 letters.
Perm inflate_inner(int m, int i, const Perm& sigma);

// phi in S_m with letter i inflated to a block of size n.
Perm inflate_outer(const Perm& phi, int i, int n);

// All of S_n in a deterministic order (n <= 8).
std::vector<Perm> symmetric_group(int n);

}  // namespace opal
