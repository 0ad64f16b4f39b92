#pragma once

// Arithmetic in GF(p) for small odd primes, plus the parameter and curve
// searches the catalog needs (primitive roots, irreducible cubics, point
// counts of y^2 = x^3 - x).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace porc {

using Residue = std::uint32_t;

class FieldError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotASquare : public FieldError {
public:
  using FieldError::FieldError;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// An odd prime p >= 3. Construction validates primality.
class PrimeModulus {
public:
  explicit PrimeModulus(std::uint32_t p) : p_(p) {
    if (p == 2) throw FieldError("p = 2 is not supported (odd primes only)");
    if (!is_prime(p)) throw FieldError(std::to_string(p) + " is not prime");
  }

  constexpr std::uint32_t value() const noexcept { return p_; }
  constexpr operator std::uint32_t() const noexcept { return p_; }

  friend bool operator==(PrimeModulus a, PrimeModulus b) noexcept {
    return a.p_ == b.p_;
  }

private:
  std::uint32_t p_;
};

inline Residue reduce(std::int64_t a, std::uint32_t p) {
  std::int64_t r = a % static_cast<std::int64_t>(p);
  return static_cast<Residue>(r < 0 ? r + p : r);
}

inline Residue mul_mod(Residue a, Residue b, std::uint32_t p) {
  return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p);
}

inline Residue pow_mod(Residue base, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p, b = base % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<Residue>(r);
}

inline Residue inv_mod(Residue a, std::uint32_t p) {
  a %= p;
  if (a == 0) throw FieldError("inverse of zero in GF(" + std::to_string(p) + ")");
  return pow_mod(a, p - 2, p);
}

/// Dense arithmetic tables for GF(p); all operands must already be reduced.
class Field {
public:
  explicit Field(PrimeModulus p) : p_(p.value()), inv_(p.value(), 0) {
    for (Residue a = 1; a < p_; ++a) inv_[a] = inv_mod(a, p_);
  }

  std::uint32_t p() const noexcept { return p_; }
  PrimeModulus modulus() const { return PrimeModulus(p_); }

  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept { return mul_mod(a, b, p_); }
  Residue inv(Residue a) const {
    if (a == 0) throw FieldError("inverse of zero");
    return inv_[a];
  }
  Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }
  Residue from_int(std::int64_t a) const noexcept { return reduce(a, p_); }

  /// a/b for integers, reduced into GF(p); b must be a unit.
  Residue frac(std::int64_t a, std::int64_t b) const { return div(from_int(a), from_int(b)); }

private:
  std::uint32_t p_;
  std::vector<Residue> inv_;
};

inline std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint32_t multiplicative_order(Residue g, PrimeModulus p) {
  std::uint32_t ord = 1;
  Residue x = g % p;
  while (x != 1) {
    x = mul_mod(x, g, p);
    ++ord;
  }
  return ord;
}

/// Smallest generator of GF(p)^*.
inline Residue primitive_root(PrimeModulus p) {
  const auto qs = prime_factors(p - 1);
  for (Residue g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : qs) {
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  // p = 3 is handled above (g = 2); every prime has a primitive root.
  throw FieldError("no primitive root found");
}

inline bool is_square(Residue a, PrimeModulus p) {
  a %= p;
  if (a == 0) return true;
  return pow_mod(a, (p - 1) / 2, p) == 1;
}

/// Smaller of the two square roots of a. Exhaustive scan; p stays small here.
inline Residue sqrt_mod(Residue a, PrimeModulus p) {
  a %= p;
  for (Residue t = 0; t <= (p - 1) / 2; ++t)
    if (mul_mod(t, t, p) == a) return t;
  throw NotASquare(std::to_string(a) + " is not a square mod " + std::to_string(p.value()));
}

enum class CubicFamily { Plus, Minus };

/// Value of x^3 + m x - 1 (Plus) or x^3 - m x + 1 (Minus) at x.
inline Residue eval_cubic(CubicFamily fam, Residue m, Residue x, std::uint32_t p) {
  const std::int64_t x3 = static_cast<std::int64_t>(mul_mod(mul_mod(x, x, p), x, p));
  const std::int64_t mx = static_cast<std::int64_t>(mul_mod(m, x, p));
  return fam == CubicFamily::Plus ? reduce(x3 + mx - 1, p) : reduce(x3 - mx + 1, p);
}

inline bool cubic_has_root(CubicFamily fam, Residue m, PrimeModulus p) {
  for (Residue x = 0; x < p; ++x)
    if (eval_cubic(fam, m, x, p) == 0) return true;
  return false;
}

/// Smallest m making the family's cubic rootless (hence irreducible) over GF(p).
inline Residue find_cubic_param(PrimeModulus p, CubicFamily fam) {
  for (Residue m = 0; m < p; ++m)
    if (!cubic_has_root(fam, m, p)) return m;
  throw FieldError("no irreducible cubic parameter for p = " + std::to_string(p.value()));
}

/// Discriminant -4m^3 - 27 (Plus) or 4m^3 - 27 (Minus).
inline Residue cubic_discriminant(CubicFamily fam, Residue m, PrimeModulus p) {
  const std::int64_t m3 = mul_mod(mul_mod(m, m, p), m, p);
  return fam == CubicFamily::Plus ? reduce(-4 * m3 - 27, p) : reduce(4 * m3 - 27, p);
}

/// E = number of projective points on y^2 = x^3 - x over GF(p).
inline std::uint64_t elliptic_point_count(PrimeModulus p) {
  std::uint64_t count = 1;  // point at infinity
  for (Residue x = 0; x < p; ++x) {
    const Residue rhs = reduce(static_cast<std::int64_t>(pow_mod(x, 3, p)) - x, p);
    if (rhs == 0)
      count += 1;
    else if (is_square(rhs, p))
      count += 2;
  }
  return count;
}

/// V_p = #{(x, y) : x^4 + 6x^2 - 3 = 0 and y^2 = x^3 - x}.
inline std::uint64_t quartic_curve_solutions(PrimeModulus p) {
  std::uint64_t count = 0;
  for (Residue x = 0; x < p; ++x) {
    const Residue x2 = mul_mod(x, x, p);
    const Residue quartic = reduce(static_cast<std::int64_t>(mul_mod(x2, x2, p)) + 6 * x2 - 3, p);
    if (quartic != 0) continue;
    const Residue rhs = reduce(static_cast<std::int64_t>(mul_mod(x2, x, p)) - x, p);
    for (Residue y = 0; y < p; ++y)
      if (mul_mod(y, y, p) == rhs) ++count;
  }
  return count;
}

struct ResolvedParams {
  Residue omega = 0;
  Residue m_plus = 0;
  Residue m_minus = 0;
  Residue u_plus = 0;
  Residue u_minus = 0;
};

inline ResolvedParams resolve_params(PrimeModulus p) {
  ResolvedParams r;
  r.omega = primitive_root(p);
  r.m_plus = find_cubic_param(p, CubicFamily::Plus);
  r.m_minus = find_cubic_param(p, CubicFamily::Minus);
  const Residue dp = cubic_discriminant(CubicFamily::Plus, r.m_plus, p);
  const Residue dm = cubic_discriminant(CubicFamily::Minus, r.m_minus, p);
  // An irreducible cubic over a finite field has square discriminant.
  if (dp == 0 || dm == 0 || !is_square(dp, p) || !is_square(dm, p))
    throw FieldError("DiscriminantNotSquare: logic error for p = " + std::to_string(p.value()));
  r.u_plus = sqrt_mod(dp, p);
  r.u_minus = sqrt_mod(dm, p);
  return r;
}

inline std::vector<std::uint32_t> odd_primes_below(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t n = 3; n < limit; n += 2)
    if (is_prime(n)) out.push_back(n);
  return out;
}

}  // namespace porc
