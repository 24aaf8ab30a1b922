#pragma once

// Brute-force verification of the categorical identities the kernel relies
// on, at small parameters. Enumeration is by exhaustive lift-window scan and
// never reuses the operation under test.

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "csft/graph.hpp"
#include "csft/morphism.hpp"

namespace csft {

struct OracleCheck {
  std::string name;
  long long instances = 0;
  std::vector<std::string> violations;

  bool pass() const { return violations.empty(); }

  void violation(const std::string& what, std::size_t cap = 16) {
    if (violations.size() < cap) violations.push_back(what);
    else if (violations.size() == cap) violations.push_back("...");
  }
};

struct OracleReport {
  std::vector<OracleCheck> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass()) return false;
    return true;
  }
};

// all simplex-category morphisms [n] -> [m] (window representatives)
inline std::vector<CsgMorphism> enumerate_delta(const Family& fam, int n, int m) {
  std::vector<CsgMorphism> out;
  std::vector<std::int64_t> lift(n + 1);
  std::function<void(int)> rec = [&](int i) {
    if (i == n + 1) {
      out.emplace_back(fam, n, m, +1, lift);
      return;
    }
    for (std::int64_t v = (i == 0 ? 0 : lift[i - 1]); v <= m; ++v) {
      lift[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// exhaustive hom-set scan; winding_bound only needed for infinite families
inline std::vector<CsgMorphism> enumerate_hom(const Family& fam, int n, int m,
                                              std::optional<int> winding_bound = std::nullopt) {
  std::vector<CsgMorphism> out;
  std::int64_t lo = 0, hi;
  if (fam.is_finite()) {
    hi = fam.period() * (m + 1);
  } else {
    if (!winding_bound) throw EnumerationError("infinite hom-set; supply a winding bound");
    lo = -(std::int64_t)(*winding_bound) * (m + 1);
    hi = (std::int64_t)(*winding_bound) * (m + 1);
  }
  std::vector<std::int64_t> lift(n + 1);
  std::vector<int> signs{+1};
  if (fam.has_reflections()) signs.push_back(-1);
  for (int h = 0; h < fam.h_order(); ++h)
    for (int sign : signs) {
      std::function<void(int)> rec = [&](int i) {
        if (i == n + 1) {
          out.emplace_back(fam, n, m, sign, lift, h);
          return;
        }
        const std::int64_t from = (i == 0) ? 0 : 0;
        (void)from;
        if (i == 0) {
          for (std::int64_t v = lo; v < hi; ++v) {
            lift[0] = v;
            rec(1);
          }
        } else {
          if (sign == +1)
            for (std::int64_t v = lift[i - 1]; v <= lift[0] + (m + 1); ++v) {
              lift[i] = v;
              rec(i + 1);
            }
          else
            for (std::int64_t v = lift[i - 1]; v >= lift[0] - (m + 1); --v) {
              lift[i] = v;
              rec(i + 1);
            }
        }
      };
      rec(0);
    }
  return out;
}

using ComposeFn = std::function<CsgMorphism(const CsgMorphism&, const CsgMorphism&)>;

// deliberately wrong composition for mutation testing: translates the result
// lift by one marking, which is a different morphism whenever the window has
// more than one class
inline CsgMorphism corrupted_compose(const CsgMorphism& f, const CsgMorphism& g) {
  CsgMorphism r = compose(f, g);
  for (auto& v : r.lift) v += 1;
  return CsgMorphism(r.family, r.n, r.m, r.sign, r.lift, r.h);
}

// every f factors as (simplex map) . (automorphism) in exactly one way
inline OracleCheck verify_factorization_unique(const Family& fam, int max_n, int max_m,
                                               const ComposeFn& comp = {}) {
  ComposeFn c = comp ? comp : [](const CsgMorphism& a, const CsgMorphism& b) { return compose(a, b); };
  OracleCheck check;
  check.name = "factorization-unique:" + fam.name();
  for (int n = 0; n <= max_n; ++n) {
    const auto group = enumerate_group(fam, n);
    for (int m = 0; m <= max_m; ++m) {
      const auto delta = enumerate_delta(fam, n, m);
      for (const auto& f : enumerate_hom(fam, n, m)) {
        ++check.instances;
        int hits = 0;
        bool matches_factorize = false;
        Factorization fac = factorize(f);
        for (const auto& g : group)
          for (const auto& phi : delta)
            if (c(g, phi) == f) {
              ++hits;
              if (phi == fac.phi && g == fac.g) matches_factorize = true;
            }
        if (hits != 1)
          check.violation(f.str() + " has " + std::to_string(hits) + " factorizations");
        else if (!matches_factorize)
          check.violation(f.str() + ": factorize() returned a non-composing pair");
      }
    }
  }
  return check;
}

// dualize is a strict contravariant involution, and the duals of the
// one-edge simplex maps collapse all but one element
inline OracleCheck verify_duality(const Family& fam, int max_n, int max_m) {
  OracleCheck check;
  check.name = "duality:" + fam.name();
  for (int n = 0; n <= max_n; ++n)
    for (int m = 0; m <= max_m; ++m)
      for (const auto& f : enumerate_hom(fam, n, m)) {
        ++check.instances;
        if (!(dualize(dualize(f)) == f)) check.violation("involution fails on " + f.str());
      }
  for (int n = 0; n <= max_n; ++n)
    for (int m = 0; m <= max_m; ++m)
      for (int k = 0; k <= max_m; ++k) {
        const auto homs1 = enumerate_hom(fam, n, m);
        const auto homs2 = enumerate_hom(fam, m, k);
        for (const auto& f : homs1)
          for (const auto& g : homs2) {
            ++check.instances;
            if (!(dualize(compose(f, g)) == compose(dualize(g), dualize(f))))
              check.violation("contravariance fails on " + f.str() + " ; " + g.str());
          }
      }
  // collapse pattern of the duals of {i-1,i} and {0,n}
  for (int n = 1; n <= max_n; ++n) {
    auto is_collapse = [&](const CsgMorphism& d, int value_class) {
      if (d.n != n || d.m != 1) return false;
      const SetMap s = lambda_map(d);
      int hits = 0;
      for (int x = 0; x <= n; ++x)
        if (s.values[x] == value_class) ++hits;
      return hits == 1;
    };
    for (int i = 1; i <= n; ++i) {
      ++check.instances;
      CsgMorphism edge = delta_morphism(fam, 1, n, {i - 1, i});
      if (!is_collapse(dualize(edge), 1))
        check.violation("dual of {" + std::to_string(i - 1) + "," + std::to_string(i) + "} in [" +
                        std::to_string(n) + "] is not an incoming collapse");
    }
    ++check.instances;
    CsgMorphism wide = delta_morphism(fam, 1, n, {0, n});
    if (!is_collapse(dualize(wide), 0))
      check.violation("dual of {0," + std::to_string(n) + "} is not an outgoing collapse");
  }
  return check;
}

// stabilizer pullbacks to G_0 are bijections, and both point pullbacks agree
// on the kernel of lambda_1
inline OracleCheck verify_balanced(const Family& fam, int max_n) {
  OracleCheck check;
  check.name = "balanced:" + fam.name();
  const auto g0 = enumerate_group(fam, 0);
  for (int n = 1; n <= max_n; ++n) {
    const auto gn = enumerate_group(fam, n);
    for (int i = 0; i <= n; ++i) {
      ++check.instances;
      std::map<std::string, int> image;
      long long stab_size = 0;
      for (const auto& g : gn) {
        if (lambda_map(g).values[i] != i) continue;
        ++stab_size;
        ++image[point_pullback(g, i).str()];
      }
      bool bijective = stab_size == (long long)g0.size() && (long long)image.size() == stab_size;
      for (auto& [k, v] : image) bijective = bijective && v == 1;
      if (!bijective)
        check.violation("Stab(" + std::to_string(i) + ") in G_" + std::to_string(n) + " is not G_0");
    }
  }
  // 1* = 0* on the kernel of lambda_1
  for (const auto& g : enumerate_group(fam, 1)) {
    const SetMap s = lambda_map(g);
    if (s.values[0] != 0 || s.values[1] != 1) continue;
    ++check.instances;
    if (!(point_pullback(g, 0) == point_pullback(g, 1)))
      check.violation("point pullbacks disagree on " + g.str());
  }
  return check;
}

// pullback of an edge cospan: construction, commutation, and the universal
// property against every cone with apex size <= apex_bound
inline OracleCheck verify_pullback_universal(const Family& fam, int n, int m, int apex_bound = 2) {
  OracleCheck check;
  check.name = "pullback-universal:" + fam.name() + ":n" + std::to_string(n) + ":m" + std::to_string(m);
  const int K = n + m - 1;
  // standard cone legs
  std::vector<std::int64_t> to_n(K + 1), to_m(K + 1);
  for (int x = 0; x <= K; ++x) {
    to_n[x] = x < m ? 0 : x - m + 1;
    to_m[x] = x < m ? x : m;
  }
  const CsgMorphism r_n = delta_morphism(fam, K, n, to_n);
  const CsgMorphism r_m = delta_morphism(fam, K, m, to_m);

  for (const auto& tj : enumerate_group(fam, 0))
    for (int sj = 0; sj <= n; ++sj)
      for (const auto& ti : enumerate_group(fam, 0))
        for (int si = 0; si <= m; ++si) {
          // cospan: j outgoing-type on [n], i incoming-type on [m]
          const CsgMorphism j_leg = build_aug(fam, n, sj, 0, tj);
          const CsgMorphism i_leg = build_aug(fam, m, si, 1, ti);
          // transport of the standard cone: legs factor through slot moves
          Factorization fj = factorize(j_leg);   // phi_out . a
          Factorization fi = factorize(i_leg);   // psi . b
          const CsgMorphism q = compose(r_n, group_inverse(fj.g));  // a^{-1} . r_n
          const CsgMorphism p = compose(r_m, group_inverse(fi.g));  // b^{-1} . r_m
          ++check.instances;
          if (!(compose(q, j_leg) == compose(p, i_leg))) {
            check.violation("constructed square does not commute at " + j_leg.str() + " / " + i_leg.str());
            continue;
          }
          const CsgMorphism common = compose(q, j_leg);
          for (int k = 0; k <= apex_bound; ++k) {
            // index all morphisms [k] -> [K] by their images under the cone
            std::map<std::pair<std::string, std::string>, int> arrows;
            for (const auto& u : enumerate_hom(fam, k, K))
              ++arrows[{compose(u, q).str(), compose(u, p).str()}];
            for (const auto& z : enumerate_hom(fam, k, n))
              for (const auto& l : enumerate_hom(fam, k, m)) {
                if (!(compose(z, j_leg) == compose(l, i_leg))) continue;
                ++check.instances;
                auto it = arrows.find({z.str(), l.str()});
                const int count = it == arrows.end() ? 0 : it->second;
                if (count != 1)
                  check.violation("cone (" + z.str() + "," + l.str() + ") factors " + std::to_string(count) +
                                  " times");
              }
          }
          (void)common;
        }
  return check;
}

}  // namespace csft
