#include "opal/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace opal {

Perm Perm::identity(int n) {
  Perm p;
  p.img_.resize(n);
  std::iota(p.img_.begin(), p.img_.end(), 1);
  return p;
}

Perm Perm::adjacent(int n, int k) {
  if (k < 1 || k >= n) throw Error("adjacent transposition index out of range");
  Perm p = identity(n);
  std::swap(p.img_[k - 1], p.img_[k]);
  return p;
}

Perm Perm::from_images(std::vector<int> img) {
  std::vector<bool> seen(img.size(), false);
  for (int v : img) {
    if (v < 1 || v > static_cast<int>(img.size()) || seen[v - 1])
      throw Error("not a permutation: bad image list");
    seen[v - 1] = true;
  }
  Perm p;
  p.img_ = std::move(img);
  return p;
}

Perm Perm::from_cycles(const std::string& s, int n) {
  std::vector<std::vector<int>> cycles;
  std::vector<int> cur;
  int maxletter = 0;
  size_t i = 0;
  bool in_cycle = false;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
    } else if (c == '(') {
      if (in_cycle) throw Error("nested '(' in cycle notation");
      in_cycle = true;
      cur.clear();
      ++i;
    } else if (c == ')') {
      if (!in_cycle) throw Error("unmatched ')' in cycle notation");
      in_cycle = false;
      if (!cur.empty()) cycles.push_back(cur);
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      if (!in_cycle) throw Error("letter outside a cycle");
      int v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
      if (v < 1) throw Error("letters are 1-based");
      cur.push_back(v);
      maxletter = std::max(maxletter, v);
    } else if (c == 'i' && s.compare(i, 2, "id") == 0) {
      i += 2;
    } else {
      throw Error(std::string("unexpected character '") + c + "' in cycle notation");
    }
  }
  if (in_cycle) throw Error("unterminated cycle");
  if (n == 0) n = std::max(maxletter, 1);
  if (maxletter > n) throw Error("cycle letter exceeds the permutation degree");
  Perm p = identity(n);
  for (const auto& cyc : cycles) {
    for (size_t j = 0; j < cyc.size(); ++j) {
      int from = cyc[j], to = cyc[(j + 1) % cyc.size()];
      if (p.img_[from - 1] != from) throw Error("repeated letter across cycles");
      p.img_[from - 1] = to;
    }
  }
  return from_images(p.img_);  // revalidates
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i + 1) return false;
  return true;
}

Perm Perm::compose(const Perm& other) const {
  if (degree() != other.degree()) throw Error("composing permutations of different degrees");
  Perm r;
  r.img_.resize(degree());
  for (int i = 1; i <= degree(); ++i) r.img_[i - 1] = img_[other.img_[i - 1] - 1];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(degree());
  for (int i = 1; i <= degree(); ++i) r.img_[img_[i - 1] - 1] = i;
  return r;
}

int Perm::sign() const {
  std::vector<bool> seen(degree(), false);
  int parity = 0;
  for (int i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = img_[j] - 1;
      ++len;
    }
    parity ^= (len - 1) & 1;
  }
  return parity ? -1 : 1;
}

std::vector<int> Perm::adjacent_word() const {
  // bubble-sort the image list; swapping entries j,j+1 is right-composition
  // with t_{j+1}, so sigma = t[last] o ... o t[first] — reverse before return
  std::vector<int> v = img_, word;
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t j = 0; j + 1 < v.size(); ++j) {
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        word.push_back(static_cast<int>(j) + 1);
        moved = true;
      }
    }
  }
  std::reverse(word.begin(), word.end());
  return word;
}

std::string Perm::str() const {
  std::vector<bool> seen(degree(), false);
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < degree(); ++i) {
    if (seen[i] || img_[i] == i + 1) {
      seen[i] = true;
      continue;
    }
    os << "(";
    int j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      os << (first ? "" : " ") << j + 1;
      first = false;
      j = img_[j] - 1;
    }
    os << ")";
    any = true;
  }
  return any ? os.str() : "id";
}

Perm block_permutation(const Perm& phi, const std::vector<int>& sizes,
                       const std::vector<Perm>& inners) {
  int m = phi.degree();
  if (static_cast<int>(sizes.size()) != m || static_cast<int>(inners.size()) != m)
    throw Error("block permutation: sizes/inners must match the outer degree");
  int total = 0;
  for (int i = 0; i < m; ++i) {
    if (sizes[i] < 1) throw Error("block sizes must be positive");
    if (inners[i].degree() != sizes[i]) throw Error("inner permutation degree mismatch");
    total += sizes[i];
  }
  std::vector<int> prefix(m, 0), out_start(m, 0);
  for (int i = 1; i < m; ++i) prefix[i] = prefix[i - 1] + sizes[i - 1];
  for (int i = 0; i < m; ++i) {
    int start = 0;
    for (int j = 0; j < m; ++j)
      if (phi(j + 1) < phi(i + 1)) start += sizes[j];
    out_start[i] = start;
  }
  std::vector<int> img(total);
  for (int i = 0; i < m; ++i)
    for (int p = 1; p <= sizes[i]; ++p) img[prefix[i] + p - 1] = out_start[i] + inners[i](p);
  return Perm::from_images(std::move(img));
}

Perm inflate_inner(int m, int i, const Perm& sigma) {
  int n = sigma.degree();
  if (i < 1 || i > m) throw Error("slot out of range");
  std::vector<int> img(m + n - 1);
  for (int j = 1; j < i; ++j) img[j - 1] = j;
  for (int p = 1; p <= n; ++p) img[i - 1 + p - 1] = i - 1 + sigma(p);
  for (int j = i + n; j <= m + n - 1; ++j) img[j - 1] = j;
  return Perm::from_images(std::move(img));
}

Perm inflate_outer(const Perm& phi, int i, int n) {
  int m = phi.degree();
  if (i < 1 || i > m) throw Error("slot out of range");
  std::vector<int> sizes(m, 1);
  sizes[i - 1] = n;
  std::vector<Perm> inners;
  for (int j = 0; j < m; ++j) inners.push_back(Perm::identity(sizes[j]));
  return block_permutation(phi, sizes, inners);
}

std::vector<Perm> symmetric_group(int n) {
  if (n > 8) throw Error("symmetric_group is for exhaustive desk-scale checks only");
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::vector<Perm> out;
  do {
    out.push_back(Perm::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace opal
