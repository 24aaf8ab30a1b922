#pragma once

// Morphisms of the supported crossed simplicial groups in the circle-map lift
// model. A morphism [n] -> [m] is stored as an orientation sign and an integer
// lift vector F(0..n) of a monotone degree-1 circle map to the level-N cover:
//
//   sign +1:  F(0) <= ... <= F(n) <= F(0) + (m+1),  F(i+n+1) = F(i) + (m+1)
//   sign -1:  F(0) >= ... >= F(n) >= F(0) - (m+1),  F(i+n+1) = F(i) - (m+1)
//
// Lifts are identified modulo translation by P*(m+1) where P is the family
// period; the stored representative has 0 <= F(0) < P*(m+1). Composition is
// literal evaluation of the periodic extension, and canonical factorization
// is a window search.

#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csft/errors.hpp"
#include "csft/family.hpp"

namespace csft {

struct SetMap {
  int n = 0, m = 0;            // source {0..n}, target {0..m}
  std::vector<int> values;     // values[i] in {0..m}

  bool operator==(const SetMap&) const = default;
};

inline SetMap compose(const SetMap& f, const SetMap& g) {
  if (f.m != g.n) throw CompositionError("set map objects do not match");
  SetMap r{f.n, g.m, {}};
  r.values.reserve(f.values.size());
  for (int v : f.values) r.values.push_back(g.values[v]);
  return r;
}

struct CsgMorphism {
  Family family;
  int n = 0;  // source object [n]
  int m = 0;  // target object [m]
  int sign = +1;
  std::vector<std::int64_t> lift;  // length n+1
  int h = 0;                       // companion label, 0 = identity

  CsgMorphism() : lift{0} {}

  CsgMorphism(Family fam, int src, int tgt, int sgn, std::vector<std::int64_t> lf, int hh = 0)
      : family(std::move(fam)), n(src), m(tgt), sign(sgn), lift(std::move(lf)), h(hh) {
    normalize();
    validate();
  }

  void normalize() {
    const std::int64_t p = family.period();
    if (p == 0 || lift.empty()) return;
    const std::int64_t w = p * (m + 1);
    std::int64_t k = lift[0] >= 0 ? lift[0] / w : -((-lift[0] + w - 1) / w);
    if (k != 0)
      for (auto& v : lift) v -= k * w;
  }

  void validate() const {
    if (n < 0 || m < 0) throw ValidationError("objects must be non-negative");
    if ((int)lift.size() != n + 1) throw ValidationError("lift length must be n+1");
    if (sign != 1 && sign != -1) throw ValidationError("sign must be +1 or -1");
    if (sign == -1 && !family.has_reflections())
      throw ValidationError("sign -1 is not legal in family " + family.name());
    for (int i = 0; i < n; ++i) {
      if (sign == +1 && lift[i] > lift[i + 1]) throw ValidationError("lift is not monotone at " + std::to_string(i));
      if (sign == -1 && lift[i] < lift[i + 1]) throw ValidationError("lift is not antitone at " + std::to_string(i));
    }
    if (sign == +1 && lift[n] > lift[0] + (m + 1)) throw ValidationError("lift exceeds one period");
    if (sign == -1 && lift[n] < lift[0] - (m + 1)) throw ValidationError("lift exceeds one period");
    if (h < 0 || h >= family.h_order()) throw ValidationError("companion label out of range");
  }

  // periodic extension of the lift
  std::int64_t at(std::int64_t i) const {
    const std::int64_t len = n + 1;
    std::int64_t q = i >= 0 ? i / len : -((-i + len - 1) / len);
    std::int64_t r = i - q * len;
    return lift[(size_t)r] + sign * q * (std::int64_t)(m + 1);
  }

  bool operator==(const CsgMorphism& o) const {
    return family == o.family && n == o.n && m == o.m && sign == o.sign && lift == o.lift && h == o.h;
  }

  std::string str() const {
    std::string s = "(" + std::string(sign > 0 ? "+" : "-") + ",[";
    for (size_t i = 0; i < lift.size(); ++i) s += (i ? "," : "") + std::to_string(lift[i]);
    s += "]):[" + std::to_string(n) + "]->[" + std::to_string(m) + "]";
    if (h) s += "#h" + std::to_string(h);
    return s;
  }
};

// ---------------------------------------------------------------------------
// constructors

inline CsgMorphism identity_morphism(const Family& fam, int n) {
  std::vector<std::int64_t> lf(n + 1);
  for (int i = 0; i <= n; ++i) lf[i] = i;
  return CsgMorphism(fam, n, n, +1, std::move(lf));
}

// automorphism of [n] rotating markings by r
inline CsgMorphism rotation(const Family& fam, int n, std::int64_t r, int h = 0) {
  std::vector<std::int64_t> lf(n + 1);
  for (int i = 0; i <= n; ++i) lf[i] = r + i;
  return CsgMorphism(fam, n, n, +1, std::move(lf), h);
}

// orientation-reversing automorphism i -> r - i
inline CsgMorphism reflection(const Family& fam, int n, std::int64_t r, int h = 0) {
  std::vector<std::int64_t> lf(n + 1);
  for (int i = 0; i <= n; ++i) lf[i] = r - i;
  return CsgMorphism(fam, n, n, -1, std::move(lf), h);
}

// the simplex-category map [0] -> [n] hitting i
inline CsgMorphism delta_point(const Family& fam, int n, int i) {
  if (i < 0 || i > n) throw DomainError("point index out of range");
  return CsgMorphism(fam, 0, n, +1, {i});
}

// the unique simplex-category map [n] -> [0]
inline CsgMorphism omega(const Family& fam, int n) {
  return CsgMorphism(fam, n, 0, +1, std::vector<std::int64_t>(n + 1, 0));
}

inline CsgMorphism delta_morphism(const Family& fam, int n, int m, const std::vector<std::int64_t>& values) {
  return CsgMorphism(fam, n, m, +1, values);
}

// ---------------------------------------------------------------------------
// predicates

inline bool is_in_delta(const CsgMorphism& f) {
  return f.sign == +1 && f.h == 0 && f.lift[0] >= 0 && f.lift[f.n] <= f.m;
}

inline bool is_group_element(const CsgMorphism& f) {
  if (f.n != f.m) return false;
  for (int i = 0; i < f.n; ++i)
    if (f.lift[i + 1] != f.lift[i] + f.sign) return false;
  return true;
}

inline bool is_identity(const CsgMorphism& f) { return f == identity_morphism(f.family, f.n); }

// ---------------------------------------------------------------------------
// composition: apply f, then g

inline CsgMorphism compose(const CsgMorphism& f, const CsgMorphism& g) {
  if (!(f.family == g.family)) throw CompositionError("family mismatch: " + f.family.name() + " vs " + g.family.name());
  if (f.m != g.n)
    throw CompositionError("object mismatch: [" + std::to_string(f.m) + "] vs [" + std::to_string(g.n) + "]");
  std::vector<std::int64_t> lf(f.n + 1);
  for (int i = 0; i <= f.n; ++i) lf[i] = g.at(f.lift[i]);
  return CsgMorphism(f.family, f.n, g.m, f.sign * g.sign, std::move(lf), f.family.h_mul(g.h, f.h));
}

inline CsgMorphism group_inverse(const CsgMorphism& g) {
  if (!is_group_element(g)) throw DomainError("not a group element: " + g.str());
  const int hi = g.family.h_inverse(g.h);
  if (g.sign == +1) return rotation(g.family, g.n, -g.lift[0], hi);
  return reflection(g.family, g.n, g.lift[0], hi);
}

inline std::int64_t group_element_order(const CsgMorphism& g) {
  CsgMorphism acc = g;
  const CsgMorphism id = identity_morphism(g.family, g.n);
  std::int64_t k = 1;
  while (!(acc == id)) {
    acc = compose(acc, g);
    ++k;
    if (k > 4000000) throw EnumerationError("element order exceeds search bound");
  }
  return k;
}

// ---------------------------------------------------------------------------
// canonical factorization: f = phi . g with phi in the embedded simplex
// category and g an automorphism of the source

struct Factorization {
  CsgMorphism phi;  // simplex part [n] -> [m]
  CsgMorphism g;    // group part in G_n
};

inline Factorization factorize(const CsgMorphism& f) {
  const int n = f.n, m = f.m;
  std::int64_t ell;
  if (f.sign == +1) {
    // minimal ell with F~(ell) >= 0; F~ is nondecreasing and grows by m+1
    // per period, so jump by periods then scan
    ell = 0;
    while (f.at(ell) >= 0) ell -= (n + 1);
    while (f.at(ell) < 0) ++ell;
  } else {
    // maximal ell with F~(ell) >= 0
    ell = 0;
    while (f.at(ell) >= 0) ell += (n + 1);
    while (f.at(ell) < 0) --ell;
  }
  CsgMorphism g = (f.sign == +1) ? rotation(f.family, n, -ell, f.h) : reflection(f.family, n, ell, f.h);
  std::vector<std::int64_t> phi_lift(n + 1);
  for (int i = 0; i <= n; ++i) phi_lift[i] = (f.sign == +1) ? f.at(i + ell) : f.at(ell - i);
  CsgMorphism phi(f.family, n, m, +1, std::move(phi_lift));
  assert(is_in_delta(phi));
  assert(compose(g, phi) == f);
  return {std::move(phi), std::move(g)};
}

// unique (g*phi, phi*g) with g.phi = (g*phi).(phi*g)
struct Pullback {
  CsgMorphism g_star_phi;  // simplex part [n] -> [m]
  CsgMorphism phi_star_g;  // group part in G_n
};

inline Pullback pullback_along(const CsgMorphism& phi, const CsgMorphism& g) {
  if (!is_in_delta(phi)) throw DomainError("pullback base must lie in the embedded simplex category");
  if (!is_group_element(g)) throw DomainError("pullback argument must be a group element");
  Factorization f = factorize(compose(phi, g));
  return {std::move(f.phi), std::move(f.g)};
}

inline CsgMorphism omega_pullback(const CsgMorphism& g, int n) {
  if (g.n != 0 || !is_group_element(g)) throw DomainError("omega pullback expects an element of G_0");
  return pullback_along(omega(g.family, n), g).phi_star_g;
}

// pullback along the point [0] -> [n] hitting i; lands in G_0 when the
// argument stabilizes i
inline CsgMorphism point_pullback(const CsgMorphism& g, int i) {
  return pullback_along(delta_point(g.family, g.n, i), g).phi_star_g;
}

// ---------------------------------------------------------------------------
// underlying set map and parity

inline SetMap lambda_map(const CsgMorphism& f) {
  SetMap s{f.n, f.m, {}};
  s.values.reserve(f.n + 1);
  const std::int64_t t = f.m + 1;
  for (auto v : f.lift) {
    std::int64_t r = v % t;
    if (r < 0) r += t;
    s.values.push_back((int)r);
  }
  return s;
}

enum class Parity { Even, Odd };

inline Parity parity(const CsgMorphism& g) {
  if (g.n != 0 || !is_group_element(g)) throw DomainError("parity expects an element of G_0");
  return g.sign == -1 ? Parity::Odd : Parity::Even;
}

// ---------------------------------------------------------------------------
// duality
//
// The self-duality sends a circle map to the induced map on complementary
// gaps, read through the orientation reversal of both circles. This is the
// unique strict involution compatible with contravariance in the lift model;
// on lifts:
//   sign +1:  F*(j) = -min{ i : F~(i) >= -j }
//   sign -1:  F*(j) = -min{ i : F~(i) <= -j-1 }
// Companion labels invert.

inline CsgMorphism dualize(const CsgMorphism& f) {
  const int n = f.n, m = f.m;
  std::vector<std::int64_t> dual(m + 1);
  for (int j = 0; j <= m; ++j) {
    std::int64_t i = 0;
    if (f.sign == +1) {
      // minimal i with F~(i) >= -j (F~ nondecreasing)
      while (f.at(i) >= -j) i -= (n + 1);
      while (f.at(i) < -j) ++i;
    } else {
      // minimal i with F~(i) <= -j-1 (F~ nonincreasing)
      while (f.at(i) <= -j - 1) i -= (n + 1);
      while (f.at(i) > -j - 1) ++i;
    }
    dual[j] = -i;
  }
  return CsgMorphism(f.family, m, n, f.sign, std::move(dual), f.family.h_inverse(f.h));
}

// ---------------------------------------------------------------------------
// enumeration

inline std::vector<CsgMorphism> enumerate_group(const Family& fam, int n,
                                                std::optional<int> winding_bound = std::nullopt) {
  std::vector<CsgMorphism> out;
  std::int64_t lo = 0, hi;  // rotation offsets [lo, hi)
  if (fam.is_finite()) {
    hi = fam.period() * (n + 1);
  } else {
    if (!winding_bound)
      throw EnumerationError("infinite automorphism group; supply a winding bound");
    lo = -(std::int64_t)(*winding_bound) * (n + 1);
    hi = (std::int64_t)(*winding_bound) * (n + 1);
  }
  for (int h = 0; h < fam.h_order(); ++h) {
    for (std::int64_t r = lo; r < hi; ++r) out.push_back(rotation(fam, n, r, h));
    if (fam.has_reflections())
      for (std::int64_t r = lo; r < hi; ++r) out.push_back(reflection(fam, n, r, h));
  }
  return out;
}

// generators of G_n: one rotation step, plus one reflection for dihedral kinds,
// crossed with companion generators (all companion elements, kept simple)
inline std::vector<CsgMorphism> group_generators(const Family& fam, int n) {
  std::vector<CsgMorphism> gens;
  gens.push_back(rotation(fam, n, 1));
  if (fam.has_reflections()) gens.push_back(reflection(fam, n, 0));
  for (int h = 1; h < fam.h_order(); ++h) gens.push_back(rotation(fam, n, 0, h));
  return gens;
}

// generators of G_0 with the same conventions
inline std::vector<CsgMorphism> g0_generators(const Family& fam) { return group_generators(fam, 0); }

}  // namespace csft
