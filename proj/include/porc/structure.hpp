#pragma once

// A class-two exponent-p group as an alternating bilinear structure.
//
// Generators a_1..a_k span V = F_p^k = G/G'. The relation subspace W of
// Lambda^2 V is spanned by the defining relators and G' = Lambda^2 V / W has
// rank m. The structure tensor c assigns to e_i ^ e_j (i < j) its image in
// G' = F_p^m, so [a_i, a_j] = c_ij. Elements are normal-form pairs (x, u)
// with x in F_p^k and u in F_p^m.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "porc/ffield.hpp"
#include "porc/linalg.hpp"

namespace porc {

/// Lexicographic coordinates on Lambda^2(F_p^k): (0,1), (0,2), ..., (k-2,k-1).
class WedgeCoords {
public:
  explicit WedgeCoords(std::size_t k) : k_(k), index_(k * k, npos) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        index_[i * k + j] = pairs_.size();
        pairs_.push_back({i, j});
      }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  /// Position of e_i ^ e_j; requires i < j.
  std::size_t index(std::size_t i, std::size_t j) const { return index_[i * k_ + j]; }
  std::pair<std::size_t, std::size_t> pair(std::size_t pos) const { return pairs_[pos]; }

private:
  std::size_t k_;
  std::vector<std::size_t> index_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// Subspace of Lambda^2(F_p^k), stored as an RREF basis.
class RelationSubspace {
public:
  RelationSubspace(std::size_t k, PrimeModulus p) : k_(k), p_(p), basis_(0, k * (k - 1) / 2) {}

  RelationSubspace(std::size_t k, PrimeModulus p, const std::vector<Vec>& spanning)
      : RelationSubspace(k, p) {
    for (const auto& v : spanning) basis_.append_row(v);
    if (basis_.cols() != dim_ambient()) basis_ = DenseMatrix(basis_.rows(), dim_ambient());
    pivots_ = rref(basis_, Field(p));
  }

  std::size_t k() const noexcept { return k_; }
  PrimeModulus p() const noexcept { return p_; }
  std::size_t dim_ambient() const noexcept { return k_ * (k_ - 1) / 2; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const DenseMatrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(Vec v, const Field& f) const {
    reduce_against(v, basis_, pivots_, f);
    return is_zero(v);
  }

  friend bool operator==(const RelationSubspace& a, const RelationSubspace& b) {
    return a.k_ == b.k_ && a.p_ == b.p_ && a.basis_ == b.basis_;
  }

private:
  std::size_t k_;
  PrimeModulus p_;
  DenseMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// K x m matrix; row (i,j) holds c_ij. The complement basis of W is the set of
/// non-pivot coordinates of its RREF, taken in increasing order.
inline DenseMatrix quotient_map(const RelationSubspace& w) {
  const Field f(w.p());
  const std::size_t K = w.dim_ambient();
  std::vector<bool> is_pivot(K, false);
  for (auto c : w.pivots()) is_pivot[c] = true;
  std::vector<std::size_t> comp_index(K, WedgeCoords::npos);
  std::size_t m = 0;
  for (std::size_t c = 0; c < K; ++c)
    if (!is_pivot[c]) comp_index[c] = m++;
  DenseMatrix tensor(K, m);
  for (std::size_t c = 0; c < K; ++c)
    if (!is_pivot[c]) tensor(c, comp_index[c]) = 1;
  for (std::size_t r = 0; r < w.pivots().size(); ++r) {
    const std::size_t pc = w.pivots()[r];
    for (std::size_t c = 0; c < K; ++c)
      if (!is_pivot[c] && w.basis()(r, c)) tensor(pc, comp_index[c]) = f.neg(w.basis()(r, c));
  }
  return tensor;
}

struct GroupElement {
  Vec x;  // image in G/G'
  Vec u;  // central coordinates in G'
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

class Presentation {
public:
  /// Presentation with an explicit structure tensor (used to model defective input).
  Presentation(std::size_t k, std::size_t m, PrimeModulus p, RelationSubspace w, DenseMatrix tensor)
      : k_(k), m_(m), field_(p), coords_(k), w_(std::move(w)), c_(std::move(tensor)) {}

  static Presentation from_relations(RelationSubspace w) {
    DenseMatrix tensor = quotient_map(w);
    const std::size_t k = w.k();
    const std::size_t m = tensor.cols();
    const PrimeModulus p = w.p();
    return Presentation(k, m, p, std::move(w), std::move(tensor));
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t m() const noexcept { return m_; }
  std::uint32_t p() const noexcept { return field_.p(); }
  PrimeModulus modulus() const { return field_.modulus(); }
  const Field& field() const noexcept { return field_; }
  const WedgeCoords& coords() const noexcept { return coords_; }
  const RelationSubspace& relations() const noexcept { return w_; }
  const DenseMatrix& tensor() const noexcept { return c_; }
  /// Order exponent: |G| = p^(k+m).
  std::size_t order_exponent() const noexcept { return k_ + m_; }

  /// t-th coordinate of c_ij for i < j.
  Residue c(std::size_t i, std::size_t j, std::size_t t) const { return c_(coords_.index(i, j), t); }

  GroupElement identity() const { return {Vec(k_, 0), Vec(m_, 0)}; }
  GroupElement generator(std::size_t i) const {
    GroupElement g = identity();
    g.x[i] = 1;
    return g;
  }

  /// beta(x, y) = -sum_{i<j} x_j y_i c_ij; the cocycle of the group law.
  Vec beta(const Vec& x, const Vec& y) const {
    Vec out(m_, 0);
    for (std::size_t i = 0; i < k_; ++i) {
      if (!y[i]) continue;
      for (std::size_t j = i + 1; j < k_; ++j) {
        if (!x[j]) continue;
        const Residue s = field_.mul(x[j], y[i]);
        const auto row = c_.row(coords_.index(i, j));
        for (std::size_t t = 0; t < m_; ++t) out[t] = field_.sub(out[t], field_.mul(s, row[t]));
      }
    }
    return out;
  }

  /// Alternating form B(x, y) = sum_{i<j} (x_i y_j - x_j y_i) c_ij.
  Vec bracket(const Vec& x, const Vec& y) const {
    Vec out(m_, 0);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = i + 1; j < k_; ++j) {
        const Residue s = field_.sub(field_.mul(x[i], y[j]), field_.mul(x[j], y[i]));
        if (!s) continue;
        const auto row = c_.row(coords_.index(i, j));
        for (std::size_t t = 0; t < m_; ++t) out[t] = field_.add(out[t], field_.mul(s, row[t]));
      }
    return out;
  }

private:
  std::size_t k_, m_;
  Field field_;
  WedgeCoords coords_;
  RelationSubspace w_;
  DenseMatrix c_;
};

inline GroupElement multiply(const Presentation& P, const GroupElement& g, const GroupElement& h) {
  const Field& f = P.field();
  GroupElement r{Vec(P.k()), P.beta(g.x, h.x)};
  for (std::size_t i = 0; i < P.k(); ++i) r.x[i] = f.add(g.x[i], h.x[i]);
  for (std::size_t t = 0; t < P.m(); ++t) r.u[t] = f.add(r.u[t], f.add(g.u[t], h.u[t]));
  return r;
}

inline GroupElement inverse(const Presentation& P, const GroupElement& g) {
  const Field& f = P.field();
  GroupElement r{Vec(P.k()), P.beta(g.x, g.x)};
  for (std::size_t i = 0; i < P.k(); ++i) r.x[i] = f.neg(g.x[i]);
  for (std::size_t t = 0; t < P.m(); ++t) r.u[t] = f.sub(r.u[t], g.u[t]);
  return r;
}

/// [g, h] = g^-1 h^-1 g h = (0, B(x, y)).
inline GroupElement commutator(const Presentation& P, const GroupElement& g, const GroupElement& h) {
  return {Vec(P.k(), 0), P.bracket(g.x, h.x)};
}

/// g^n = (n x, n u + C(n,2) beta(x, x)).
inline GroupElement power(const Presentation& P, const GroupElement& g, std::uint64_t n) {
  const Field& f = P.field();
  const std::uint32_t p = P.p();
  const Residue nr = static_cast<Residue>(n % p);
  // C(n,2) mod p; n(n-1)/2 computed on residues of n mod 2p.
  const std::uint64_t n2p = n % (2 * static_cast<std::uint64_t>(p));
  const Residue binom = static_cast<Residue>((n2p * (n2p + 2 * p - 1) / 2) % p);
  GroupElement r{Vec(P.k()), P.beta(g.x, g.x)};
  for (std::size_t i = 0; i < P.k(); ++i) r.x[i] = f.mul(nr, g.x[i]);
  for (std::size_t t = 0; t < P.m(); ++t)
    r.u[t] = f.add(f.mul(nr, g.u[t]), f.mul(binom, r.u[t]));
  return r;
}

struct Diagnostics {
  enum class Invariant { RankMismatch, SpanDeficient, RelationNotKilled };
  struct Failure {
    Invariant invariant;
    std::string detail;
  };
  std::vector<Failure> failures;
  std::size_t k = 0, m = 0;

  bool ok() const noexcept { return failures.empty(); }
};

inline const char* to_string(Diagnostics::Invariant inv) {
  switch (inv) {
    case Diagnostics::Invariant::RankMismatch: return "m != k(k-1)/2 - dim W";
    case Diagnostics::Invariant::SpanDeficient: return "structure tensor does not span G'";
    case Diagnostics::Invariant::RelationNotKilled: return "a relation of W survives in G'";
  }
  return "?";
}

inline Diagnostics validate(const Presentation& P) {
  Diagnostics d;
  d.k = P.k();
  d.m = P.m();
  const Field& f = P.field();
  const std::size_t K = P.coords().size();
  if (P.m() + P.relations().dim() != K)
    d.failures.push_back({Diagnostics::Invariant::RankMismatch,
                          "m = " + std::to_string(P.m()) + ", dim W = " +
                              std::to_string(P.relations().dim()) + ", K = " + std::to_string(K)});
  if (rank(P.tensor(), f) != P.m())
    d.failures.push_back({Diagnostics::Invariant::SpanDeficient,
                          "rank " + std::to_string(rank(P.tensor(), f)) + " < m = " +
                              std::to_string(P.m())});
  const auto& wb = P.relations().basis();
  for (std::size_t r = 0; r < wb.rows(); ++r) {
    Vec img(P.m(), 0);
    for (std::size_t c = 0; c < K; ++c) {
      if (!wb(r, c)) continue;
      for (std::size_t t = 0; t < P.m(); ++t)
        img[t] = f.add(img[t], f.mul(wb(r, c), P.tensor()(c, t)));
    }
    if (!is_zero(img)) {
      d.failures.push_back({Diagnostics::Invariant::RelationNotKilled,
                            "basis vector " + std::to_string(r) + " of W"});
      break;
    }
  }
  return d;
}

}  // namespace porc
