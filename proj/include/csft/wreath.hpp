#pragma once

// Elements of G_0 wr Sigma_k: a permutation together with one G_0 twist per
// strand. Group law: (g,sigma)(h,tau) = (g_{tau(0)} h_0, ..., sigma tau).

#include <optional>
#include <vector>

#include "csft/errors.hpp"
#include "csft/morphism.hpp"

namespace csft {

struct WreathElement {
  int arity = 0;                      // number of strands
  std::vector<CsgMorphism> twists;    // G_0 elements, one per strand
  std::vector<int> perm;              // strand i of the source goes to perm[i]
  std::optional<int> distinguished;   // marked strand, when one exists

  void validate() const {
    if ((int)twists.size() != arity || (int)perm.size() != arity)
      throw ValidationError("wreath element sizes do not match arity");
    std::vector<char> seen(arity, 0);
    for (int v : perm) {
      if (v < 0 || v >= arity || seen[v]) throw ValidationError("wreath permutation is not a bijection");
      seen[v] = 1;
    }
    for (const auto& t : twists)
      if (t.n != 0 || !is_group_element(t)) throw ValidationError("wreath twists must lie in G_0");
  }

  bool operator==(const WreathElement& o) const {
    return arity == o.arity && twists == o.twists && perm == o.perm;
  }
};

inline WreathElement wreath_identity(const Family& fam, int arity) {
  WreathElement w;
  w.arity = arity;
  w.twists.assign(arity, identity_morphism(fam, 0));
  w.perm.resize(arity);
  for (int i = 0; i < arity; ++i) w.perm[i] = i;
  return w;
}

inline WreathElement wreath_mul(const WreathElement& a, const WreathElement& b) {
  if (a.arity != b.arity) throw CompositionError("wreath arity mismatch");
  WreathElement r;
  r.arity = a.arity;
  r.perm.resize(a.arity);
  r.twists.reserve(a.arity);
  for (int i = 0; i < a.arity; ++i) {
    r.perm[i] = a.perm[b.perm[i]];
    r.twists.push_back(compose(b.twists[i], a.twists[b.perm[i]]));  // a_{tau(i)} . b_i
  }
  return r;
}

}  // namespace csft
