#pragma once

// Small matrices over GF(p) (k <= 7) acting on row vectors, the induced action
// on Lambda^2, and exact orders of matrix groups given by generators.
//
// Convention: row i of M is the image of e_i, so x -> xM and (MN) applies M
// first. Lambda^2 M has row (i,j) equal to the coordinates of v_i ^ v_j.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "porc/budget.hpp"
#include "porc/formula.hpp"
#include "porc/linalg.hpp"
#include "porc/structure.hpp"

namespace porc {

inline constexpr std::size_t kMaxRank = 7;

class MatrixGFp {
public:
  MatrixGFp() = default;
  MatrixGFp(std::size_t k, std::uint32_t p) : k_(static_cast<std::uint8_t>(k)), p_(p) {
    if (k > kMaxRank) throw std::invalid_argument("matrix rank above 7");
    a_.fill(0);
  }

  static MatrixGFp identity(std::size_t k, std::uint32_t p) {
    MatrixGFp m(k, p);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = 1;
    return m;
  }

  /// Rows given as (possibly negative) integers, reduced mod p.
  static MatrixGFp from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows) {
    MatrixGFp m(rows.size(), p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix rows must be square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = reduce(rows[i][j], p);
    }
    return m;
  }

  static MatrixGFp from_vectors(std::uint32_t p, const std::vector<Vec>& rows) {
    MatrixGFp m(rows.size(), p);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    return m;
  }

  static MatrixGFp diagonal(std::uint32_t p, const std::vector<std::int64_t>& d) {
    MatrixGFp m(d.size(), p);
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = reduce(d[i], p);
    return m;
  }

  std::size_t k() const noexcept { return k_; }
  std::uint32_t p() const noexcept { return p_; }

  Residue& operator()(std::size_t i, std::size_t j) { return a_[i * kMaxRank + j]; }
  Residue operator()(std::size_t i, std::size_t j) const { return a_[i * kMaxRank + j]; }

  Vec row(std::size_t i) const { return Vec(a_.begin() + i * kMaxRank, a_.begin() + i * kMaxRank + k_); }

  friend MatrixGFp operator*(const MatrixGFp& x, const MatrixGFp& y) {
    MatrixGFp r(x.k_, x.p_);
    for (std::size_t i = 0; i < x.k_; ++i)
      for (std::size_t j = 0; j < x.k_; ++j) {
        std::uint64_t s = 0;
        for (std::size_t l = 0; l < x.k_; ++l) s += static_cast<std::uint64_t>(x(i, l)) * y(l, j);
        r(i, j) = static_cast<Residue>(s % x.p_);
      }
    return r;
  }

  friend bool operator==(const MatrixGFp& x, const MatrixGFp& y) {
    return x.k_ == y.k_ && x.p_ == y.p_ && x.a_ == y.a_;
  }

  /// x M for a row vector x.
  Vec apply(const Vec& x) const {
    Vec r(k_, 0);
    for (std::size_t j = 0; j < k_; ++j) {
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < k_; ++i) s += static_cast<std::uint64_t>(x[i]) * (*this)(i, j);
      r[j] = static_cast<Residue>(s % p_);
    }
    return r;
  }

  /// Odometer index of the image of the point with the given index.
  std::uint64_t apply_index(std::uint64_t idx) const {
    std::array<Residue, kMaxRank> x{};
    for (std::size_t i = 0; i < k_; ++i) {
      x[i] = static_cast<Residue>(idx % p_);
      idx /= p_;
    }
    std::uint64_t out = 0;
    for (std::size_t j = k_; j-- > 0;) {
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < k_; ++i) s += static_cast<std::uint64_t>(x[i]) * (*this)(i, j);
      out = out * p_ + s % p_;
    }
    return out;
  }

  Residue det() const {
    const Field f{PrimeModulus(p_)};
    MatrixGFp m = *this;
    Residue d = 1;
    for (std::size_t c = 0; c < k_; ++c) {
      std::size_t piv = c;
      while (piv < k_ && m(piv, c) == 0) ++piv;
      if (piv == k_) return 0;
      if (piv != c) {
        for (std::size_t j = 0; j < k_; ++j) std::swap(m(c, j), m(piv, j));
        d = f.neg(d);
      }
      d = f.mul(d, m(c, c));
      const Residue inv = f.inv(m(c, c));
      for (std::size_t i = c + 1; i < k_; ++i) {
        const Residue factor = f.mul(m(i, c), inv);
        if (!factor) continue;
        for (std::size_t j = c; j < k_; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
      }
    }
    return d;
  }

  bool invertible() const { return det() != 0; }

  MatrixGFp inverse() const {
    const Field f{PrimeModulus(p_)};
    MatrixGFp m = *this, r = identity(k_, p_);
    for (std::size_t c = 0; c < k_; ++c) {
      std::size_t piv = c;
      while (piv < k_ && m(piv, c) == 0) ++piv;
      if (piv == k_) throw FieldError("matrix is singular");
      for (std::size_t j = 0; j < k_; ++j) {
        std::swap(m(c, j), m(piv, j));
        std::swap(r(c, j), r(piv, j));
      }
      const Residue inv = f.inv(m(c, c));
      for (std::size_t j = 0; j < k_; ++j) {
        m(c, j) = f.mul(m(c, j), inv);
        r(c, j) = f.mul(r(c, j), inv);
      }
      for (std::size_t i = 0; i < k_; ++i) {
        if (i == c || m(i, c) == 0) continue;
        const Residue factor = m(i, c);
        for (std::size_t j = 0; j < k_; ++j) {
          m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
          r(i, j) = f.sub(r(i, j), f.mul(factor, r(c, j)));
        }
      }
    }
    return r;
  }

  std::string key() const {
    std::string s(k_ * k_, '\0');
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j) s[i * k_ + j] = static_cast<char>((*this)(i, j) & 0xff);
    return s;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < k_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < k_; ++j) s += (j ? "," : "") + std::to_string((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j) h = (h ^ (*this)(i, j)) * 1099511628211ull;
    return h;
  }

private:
  std::uint8_t k_ = 0;
  std::uint32_t p_ = 0;
  std::array<Residue, kMaxRank * kMaxRank> a_{};
};

struct MatrixHash {
  std::size_t operator()(const MatrixGFp& m) const noexcept { return m.hash(); }
};

/// Induced K x K action on wedge coordinates.
inline DenseMatrix wedge_square(const MatrixGFp& M) {
  const std::size_t k = M.k();
  const WedgeCoords wc(k);
  const Field f{PrimeModulus(M.p())};
  DenseMatrix out(wc.size(), wc.size());
  for (std::size_t r = 0; r < wc.size(); ++r) {
    const auto [i, j] = wc.pair(r);
    for (std::size_t c = 0; c < wc.size(); ++c) {
      const auto [a, b] = wc.pair(c);
      out(r, c) = f.sub(f.mul(M(i, a), M(j, b)), f.mul(M(i, b), M(j, a)));
    }
  }
  return out;
}

inline DenseMatrix dense_product(const DenseMatrix& x, const DenseMatrix& y, const Field& f) {
  DenseMatrix r(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t l = 0; l < x.cols(); ++l) {
      const Residue a = x(i, l);
      if (!a) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) r(i, j) = f.add(r(i, j), f.mul(a, y(l, j)));
    }
  return r;
}

/// True iff w (Lambda^2 M) lies in W for every basis vector w of W.
inline bool stabilizes(const MatrixGFp& M, const RelationSubspace& W) {
  const Field f(W.p());
  const DenseMatrix L = wedge_square(M);
  for (std::size_t r = 0; r < W.dim(); ++r) {
    Vec img(W.dim_ambient(), 0);
    for (std::size_t c = 0; c < W.dim_ambient(); ++c) {
      const Residue a = W.basis()(r, c);
      if (!a) continue;
      for (std::size_t j = 0; j < W.dim_ambient(); ++j) img[j] = f.add(img[j], f.mul(a, L(c, j)));
    }
    if (!W.contains(img, f)) return false;
  }
  return true;
}

/// Standard generators of GL(k, p): diag(w,1,...,1), I + E_01, and the cyclic
/// permutation e_i -> e_{i+1}.
inline std::vector<MatrixGFp> gl_generators(std::size_t k, PrimeModulus p) {
  std::vector<MatrixGFp> gens;
  MatrixGFp d = MatrixGFp::identity(k, p);
  d(0, 0) = primitive_root(p);
  gens.push_back(d);
  if (k >= 2) {
    MatrixGFp t = MatrixGFp::identity(k, p);
    t(0, 1) = 1;
    gens.push_back(t);
    MatrixGFp c(k, p);
    for (std::size_t i = 0; i < k; ++i) c(i, (i + 1) % k) = 1;
    gens.push_back(c);
  }
  return gens;
}

/// Stabilizer chain for a matrix group acting on row vectors, with base
/// e_0, ..., e_{k-1}. Since the base spans F_p^k, an element fixing every base
/// point is the identity and sifting needs no residue test.
class StabilizerChain {
public:
  StabilizerChain(std::size_t k, std::uint32_t p) : k_(k), p_(p), levels_(k) {
    for (std::size_t i = 0; i < k; ++i) {
      auto& L = levels_[i];
      L.base = ipow(p, static_cast<unsigned>(i));  // odometer index of e_i
      L.orbit.push_back(L.base);
      L.transversal.emplace(L.base, Coset{MatrixGFp::identity(k, p), MatrixGFp::identity(k, p)});
      L.done.push_back(0);
    }
  }

  /// Adds a generator; returns false when it already lies in the group.
  bool add_generator(const MatrixGFp& g) {
    if (contains(g)) return false;
    extend(0, g);
    return true;
  }

  bool contains(const MatrixGFp& g) const { return sift(0, g); }

  BigInt order() const {
    BigInt r = 1;
    for (const auto& L : levels_) r *= L.orbit.size();
    return r;
  }

  std::vector<std::size_t> orbit_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& L : levels_) out.push_back(L.orbit.size());
    return out;
  }

private:
  struct Coset {
    MatrixGFp u, uinv;  // e_i u = point
  };
  struct Level {
    std::uint64_t base = 0;
    std::vector<MatrixGFp> gens;
    std::vector<std::uint64_t> orbit;
    std::vector<std::size_t> done;  // per orbit point: generators already processed
    std::unordered_map<std::uint64_t, Coset> transversal;
  };

  bool sift(std::size_t from, MatrixGFp g) const {
    for (std::size_t i = from; i < k_; ++i) {
      const auto& L = levels_[i];
      const auto it = L.transversal.find(g.apply_index(L.base));
      if (it == L.transversal.end()) return false;
      g = g * it->second.uinv;
    }
    return true;
  }

  void extend(std::size_t i, const MatrixGFp& g) {
    if (i == k_ || sift(i, g)) return;
    Level& L = levels_[i];
    L.gens.push_back(g);
    // Close the orbit and sift every Schreier generator u_d s u_{ds}^-1 into
    // the next level. The 'done' counters make each (point, generator) pair
    // processed exactly once even as both lists grow.
    for (std::size_t q = 0; q < L.orbit.size(); ++q) {
      while (L.done[q] < L.gens.size()) {
        const MatrixGFp s = L.gens[L.done[q]++];
        const std::uint64_t pt = L.orbit[q];
        const MatrixGFp us = L.transversal.at(pt).u * s;
        const std::uint64_t img = s.apply_index(pt);
        auto it = L.transversal.find(img);
        if (it == L.transversal.end()) {
          L.transversal.emplace(img, Coset{us, us.inverse()});
          L.orbit.push_back(img);
          L.done.push_back(0);
        } else {
          extend(i + 1, us * it->second.uinv);
        }
      }
    }
  }

  std::size_t k_;
  std::uint32_t p_;
  std::vector<Level> levels_;
};

inline BigInt schreier_sims_order(const std::vector<MatrixGFp>& gens, std::size_t k, std::uint32_t p) {
  StabilizerChain chain(k, p);
  for (const auto& g : gens) {
    if (g.k() != k || !g.invertible()) throw std::invalid_argument("generator is not in GL(k, p)");
    chain.add_generator(g);
  }
  return chain.order();
}

/// Full enumeration of <gens> by closure; the oracle for Schreier-Sims.
inline std::vector<MatrixGFp> naive_closure(const std::vector<MatrixGFp>& gens, std::size_t k, std::uint32_t p,
                                            std::size_t limit = 100000) {
  std::unordered_set<MatrixGFp, MatrixHash> seen;
  std::vector<MatrixGFp> elems{MatrixGFp::identity(k, p)};
  seen.insert(elems[0]);
  for (std::size_t q = 0; q < elems.size(); ++q)
    for (const auto& g : gens) {
      MatrixGFp h = elems[q] * g;
      if (seen.insert(h).second) {
        if (elems.size() >= limit) throw BudgetExceeded("naive closure", static_cast<double>(limit) + 1, limit);
        elems.push_back(h);
      }
    }
  return elems;
}

}  // namespace porc
