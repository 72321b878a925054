// Copyright 2026 The clgeom Authors
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

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace clgeom {

/// An element of GF(q), stored as its rank in the field's total order.
///
/// The total order is lexicographic on the coefficient vector
/// (c0, c1, ..., c_{k-1}) of the polynomial representative, so rank 0 is the
/// zero element. Ranks are only meaningful relative to the Field that
/// produced them.
struct Element {
  std::uint16_t code = 0;

  friend constexpr auto operator<=>(const Element&, const Element&) = default;
};

namespace detail {

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over GF(p), least-degree coefficient first, no trailing zeros
// except for the zero polynomial which is empty.
using Poly = std::vector<int>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int inv_mod(int a, int p) {
  int result = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

inline Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const int lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const int shift = static_cast<int>(a.size() - m.size());
    const int factor = a.back() * lead_inv % p;
    for (std::size_t i = 0; i < m.size(); ++i)
      a[i + shift] = ((a[i + shift] - factor * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

// True iff the monic polynomial m has no monic factor of degree 1..deg/2.
inline bool is_irreducible(const Poly& m, int p) {
  const int deg = static_cast<int>(m.size()) - 1;
  if (deg < 1) return false;
  for (int d = 1; d <= deg / 2; ++d) {
    Poly f(d + 1, 0);
    f[d] = 1;
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long n = 0; n < count; ++n) {
      long long r = n;
      for (int i = 0; i < d; ++i) {
        f[i] = static_cast<int>(r % p);
        r /= p;
      }
      if (poly_mod(m, f, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// GF(q) for q = p^k with p an odd prime.
///
/// Arithmetic is table driven; a Field is immutable after construction and
/// cheap to copy (tables are shared).
class Field {
 public:
  static constexpr int kMaxOrder = 1024;

  /// Builds GF(p^k). An empty modulus selects the built-in polynomial for
  /// q in {9, 25, 49, 81, 121, 169}, x for k = 1, and otherwise the first
  /// monic irreducible polynomial in lexicographic order.
  static Field make(int p, int k, std::vector<int> modulus = {}) {
    if (!detail::is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
    if (k < 1) throw std::invalid_argument("extension degree must be at least 1");
    long long q = 1;
    for (int i = 0; i < k; ++i) {
      q *= p;
      if (q > kMaxOrder) throw std::invalid_argument("field order exceeds " + std::to_string(kMaxOrder));
    }
    if (modulus.empty()) modulus = default_modulus(p, k);
    if (static_cast<int>(modulus.size()) != k + 1)
      throw std::invalid_argument("modulus must have exactly k+1 coefficients");
    for (int& c : modulus) {
      if (c < 0 || c >= p) throw std::invalid_argument("modulus coefficient out of range");
    }
    if (modulus.back() != 1) throw std::invalid_argument("modulus must be monic");
    if (!detail::is_irreducible(modulus, p)) throw std::invalid_argument("modulus is reducible over GF(p)");
    return Field(p, k, static_cast<int>(q), std::move(modulus));
  }

  /// GF(q) with the default modulus; q must be an odd prime power.
  static Field of_order(int q) {
    for (int p = 2; p <= q; ++p) {
      if (q % p != 0) continue;
      int k = 0, r = q;
      while (r % p == 0) {
        r /= p;
        ++k;
      }
      if (r != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
      return make(p, k);
    }
    throw std::invalid_argument("field order must be at least 2");
  }

  static std::vector<int> default_modulus(int p, int k) {
    const int q = ipow(p, k);
    switch (q) {
      case 9: return {1, 0, 1};
      case 25: return {2, 0, 1};
      case 49: return {1, 0, 1};
      case 81: return {2, 0, 0, 2, 1};
      case 121: return {1, 0, 1};
      case 169: return {2, 0, 1};
      default: break;
    }
    if (k == 1) return {0, 1};
    std::vector<int> m(k + 1, 0);
    m[k] = 1;
    const long long count = q;
    for (long long n = 0; n < count; ++n) {
      long long r = n;
      for (int i = 0; i < k; ++i) {
        m[i] = static_cast<int>(r % p);
        r /= p;
      }
      if (detail::is_irreducible(m, p)) return m;
    }
    throw std::logic_error("no irreducible polynomial found");
  }

  int p() const { return tables_->p; }
  int k() const { return tables_->k; }
  int q() const { return tables_->q; }
  const std::vector<int>& modulus() const { return tables_->modulus; }

  Element zero() const { return Element{0}; }
  Element one() const { return tables_->one; }

  /// The image of an integer in the prime subfield.
  Element from_int(long long n) const {
    const int p = this->p();
    std::vector<int> c(k(), 0);
    c[0] = static_cast<int>(((n % p) + p) % p);
    return from_coeffs(c);
  }

  /// Element from little-endian coefficients; missing entries are zero.
  Element from_coeffs(std::span<const int> coeffs) const {
    if (static_cast<int>(coeffs.size()) > k()) throw std::invalid_argument("too many coefficients for GF(q)");
    int code = 0;
    for (int i = 0; i < k(); ++i) {
      const int c = i < static_cast<int>(coeffs.size()) ? coeffs[i] : 0;
      if (c < 0 || c >= p()) throw std::invalid_argument("coefficient out of range");
      code = code * p() + c;
    }
    return Element{static_cast<std::uint16_t>(code)};
  }

  Element from_code(int code) const {
    if (code < 0 || code >= q()) throw std::out_of_range("element code out of range");
    return Element{static_cast<std::uint16_t>(code)};
  }

  std::vector<int> coeffs(Element e) const {
    std::vector<int> c(k(), 0);
    int code = e.code;
    for (int i = k() - 1; i >= 0; --i) {
      c[i] = code % p();
      code /= p();
    }
    return c;
  }

  /// Integer for prime fields, bracketed coefficient list otherwise.
  std::string to_string(Element e) const {
    const auto c = coeffs(e);
    if (k() == 1) return std::to_string(c[0]);
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
    out << ']';
    return out.str();
  }

  Element add(Element a, Element b) const { return tables_->add[index(a, b)]; }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element neg(Element a) const { return tables_->neg[a.code]; }
  Element mul(Element a, Element b) const { return tables_->mul[index(a, b)]; }

  Element inv(Element a) const {
    if (a.code == 0) throw std::domain_error("inverse of zero in GF(q)");
    return tables_->inv[a.code];
  }

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element pow(Element a, long long e) const {
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    Element result = one();
    while (e > 0) {
      if (e & 1) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }

  bool is_zero(Element a) const { return a.code == 0; }

  /// Zero counts as a square.
  bool is_square(Element a) const {
    if (is_zero(a)) return true;
    return pow(a, (q() - 1) / 2) == one();
  }

  /// The smaller (in field order) square root, if any.
  std::optional<Element> sqrt(Element a) const {
    if (!is_square(a)) return std::nullopt;
    for (int c = 0; c < q(); ++c) {
      const Element r{static_cast<std::uint16_t>(c)};
      if (mul(r, r) == a) return r;
    }
    throw std::logic_error("square without a root");
  }

  /// All elements in the field order, zero first.
  std::vector<Element> elements() const {
    std::vector<Element> all(q());
    for (int c = 0; c < q(); ++c) all[c] = Element{static_cast<std::uint16_t>(c)};
    return all;
  }

  /// The first non-square in the field order.
  Element distinguished_nonsquare() const { return tables_->nonsquare; }

  /// The first element of multiplicative order q-1 in the field order.
  Element primitive() const { return tables_->primitive; }

  friend bool operator==(const Field& a, const Field& b) {
    return a.p() == b.p() && a.k() == b.k() && a.modulus() == b.modulus();
  }

 private:
  struct Tables {
    int p = 0, k = 0, q = 0;
    std::vector<int> modulus;
    std::vector<Element> add, mul, neg, inv;
    Element one, nonsquare, primitive;
  };

  static int ipow(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
  }

  Field(int p, int k, int q, std::vector<int> modulus) {
    auto owned = std::make_shared<Tables>();
    tables_ = owned;
    auto& t = *owned;
    t.p = p;
    t.k = k;
    t.q = q;
    t.modulus = std::move(modulus);
    t.add.resize(static_cast<std::size_t>(q) * q);
    t.mul.resize(static_cast<std::size_t>(q) * q);
    t.neg.resize(q);
    t.inv.resize(q);

    std::vector<detail::Poly> polys(q);
    for (int c = 0; c < q; ++c) polys[c] = coeffs(Element{static_cast<std::uint16_t>(c)});
    auto encode = [&](const detail::Poly& a) {
      std::vector<int> c(k, 0);
      for (std::size_t i = 0; i < a.size() && i < c.size(); ++i) c[i] = a[i];
      return from_coeffs(c);
    };
    t.one = encode({1});
    for (int a = 0; a < q; ++a) {
      for (int b = 0; b < q; ++b) {
        detail::Poly sum(k), prod(2 * k - 1, 0);
        for (int i = 0; i < k; ++i) sum[i] = (polys[a][i] + polys[b][i]) % p;
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + polys[a][i] * polys[b][j]) % p;
        t.add[static_cast<std::size_t>(a) * q + b] = encode(sum);
        t.mul[static_cast<std::size_t>(a) * q + b] = encode(k == 1 ? prod : detail::poly_mod(prod, t.modulus, p));
      }
    }
    for (int a = 0; a < q; ++a) {
      for (int b = 0; b < q; ++b) {
        const Element ea{static_cast<std::uint16_t>(a)}, eb{static_cast<std::uint16_t>(b)};
        if (t.add[index(ea, eb)].code == 0) t.neg[a] = eb;
        if (t.mul[index(ea, eb)] == t.one) t.inv[a] = eb;
      }
    }
    t.nonsquare = Element{0};
    for (int c = 1; c < q; ++c) {
      if (!is_square(Element{static_cast<std::uint16_t>(c)})) {
        t.nonsquare = Element{static_cast<std::uint16_t>(c)};
        break;
      }
    }
    for (int c = 1; c < q; ++c) {
      const Element g{static_cast<std::uint16_t>(c)};
      Element x = g;
      int order = 1;
      while (x != t.one) {
        x = mul(x, g);
        ++order;
      }
      if (order == q - 1) {
        t.primitive = g;
        break;
      }
    }
  }

  std::size_t index(Element a, Element b) const {
    return static_cast<std::size_t>(a.code) * tables_->q + b.code;
  }

  std::shared_ptr<const Tables> tables_;
};

}  // namespace clgeom
