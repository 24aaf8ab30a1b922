#pragma once

// Standard multiplications, the tree operad, the arity-1 part as G_0, and the
// homomorphisms governing multiplication equivariance and trace invariance.

#include <cassert>
#include <vector>

#include "csft/graph.hpp"
#include "csft/morphism.hpp"
#include "csft/wreath.hpp"

namespace csft {

// A corolla in standard outgoing form: slot 0 outgoing with trivial twist,
// slots 1..n incoming; legs are read in slot order.
struct OperadElement {
  StructuredGraph corolla;

  int arity() const { return corolla.arities[0]; }

  // half-edge at the given slot of the single vertex
  int half_at(int slot) const {
    for (int h = 0; h < corolla.num_halves(); ++h)
      if (corolla.halves[h].slot == slot) return h;
    throw DomainError("missing slot");
  }

  void validate() const {
    corolla.validate();
    if (!corolla.is_corolla()) throw ValidationError("operad elements are corollas");
    const int n = arity();
    for (int h = 0; h < corolla.num_halves(); ++h) {
      const HalfEdge& he = corolla.halves[h];
      if (he.slot == 0) {
        if (he.side != 0 || !is_identity(he.twist))
          throw ValidationError("standard form needs a trivial outgoing slot 0");
      } else if (he.side != 1) {
        throw ValidationError("slots 1.." + std::to_string(n) + " must be incoming");
      }
    }
  }
};

inline OperadElement make_operad_element(const Family& fam, const std::vector<CsgMorphism>& in_twists) {
  const int n = (int)in_twists.size();
  OperadElement e;
  e.corolla.family = fam;
  e.corolla.arities = {n};
  e.corolla.halves.push_back({0, 0, 0, identity_morphism(fam, 0)});
  for (int s = 1; s <= n; ++s) e.corolla.halves.push_back({0, s, 1, in_twists[s - 1]});
  e.corolla.pairing.resize(n + 1);
  for (int h = 0; h <= n; ++h) e.corolla.pairing[h] = h;
  for (int h = 1; h <= n; ++h) e.corolla.in_order.push_back(h);
  e.corolla.out_order = {0};
  e.validate();
  return e;
}

// n-fold multiplication; n = 1 is the identity corolla
inline OperadElement standard_multiplication(const Family& fam, int n) {
  if (n < 1) throw DomainError("multiplications have arity >= 1");
  return make_operad_element(fam, std::vector<CsgMorphism>(n, identity_morphism(fam, 0)));
}

// Gauge a one-vertex graph whose slot-0 half-edge is outgoing back into
// standard form (outgoing twist stripped by a vertex automorphism).
inline StructuredGraph standardize_corolla(const StructuredGraph& g) {
  if (g.arities.size() != 1) throw DomainError("not a corolla");
  int h_out = -1;
  for (int h = 0; h < g.num_halves(); ++h)
    if (g.halves[h].side == 0) { h_out = h; break; }
  if (h_out < 0) throw DomainError("no outgoing half-edge to standardize");
  return act_on_vertex(g, 0, group_inverse(factorize(g.aug_of(h_out)).g));
}

// partial composition: plug b's output into the i-th input of a (1-based)
inline OperadElement operad_compose(const OperadElement& a, int i, const OperadElement& b) {
  if (i < 1 || i > a.arity()) throw DomainError("composition slot out of range");
  const int a_in = a.half_at(i);
  const int b_out = b.half_at(0);
  auto cc = detail::concatenate_impl(b.corolla, b_out, a.corolla, a_in);
  auto contracted = detail::contract_edge_mapped(cc.graph, b_out);
  OperadElement r;
  r.corolla = standardize_corolla(contracted.graph);
  r.corolla.in_order.clear();
  for (int h : r.corolla.halves_at(0))
    if (r.corolla.halves[h].side == 1) r.corolla.in_order.push_back(h);
  r.corolla.out_order = {r.half_at(0)};
  r.validate();
  return r;
}

// arity-1 elements are exactly the G_0 twists on the incoming leg
inline CsgMorphism p1_iso(const OperadElement& x) {
  if (x.arity() != 1) throw DomainError("p1_iso expects an arity-1 element");
  return x.corolla.halves[x.half_at(1)].twist;
}

inline OperadElement p1_iso_inverse(const CsgMorphism& g) {
  if (g.n != 0 || !is_group_element(g)) throw DomainError("expected an element of G_0");
  return make_operad_element(g.family, {g});
}

// How G_0 acts through the binary multiplication: act on the output leg,
// restandardize, and read the induced twists and slot permutation off the
// incoming legs.
inline WreathElement compute_chi2(const CsgMorphism& f) {
  if (f.n != 0 || !is_group_element(f)) throw DomainError("chi_2 expects an element of G_0");
  const Family& fam = f.family;
  StructuredGraph m2 = standard_multiplication(fam, 2).corolla;
  int h_out = 0;
  for (int h = 0; h < m2.num_halves(); ++h)
    if (m2.halves[h].side == 0) h_out = h;
  m2.halves[h_out].twist = f;
  const int leg1 = 1, leg2 = 2;  // ids of the slot-1 and slot-2 half-edges
  StructuredGraph acted = standardize_corolla(m2);
  WreathElement w;
  w.arity = 2;
  w.twists.resize(2, identity_morphism(fam, 0));
  w.perm.resize(2);
  for (int leg : {leg1, leg2}) {
    const int strand = leg - 1;
    w.perm[strand] = acted.halves[leg].slot - 1;
    w.twists[acted.halves[leg].slot - 1] = acted.halves[leg].twist;
  }
  w.validate();
  return w;
}

// standard trace augmentations on the vertex {0..n}: every slot incoming
inline std::vector<CsgMorphism> standard_trace_augs(const Family& fam, int n) {
  std::vector<CsgMorphism> augs;
  for (int s = 0; s <= n; ++s) augs.push_back(standard_aug(fam, n, s, 1));
  return augs;
}

// The trace-invariance homomorphism G_n -> G_0 wr Sigma_{n+1} for a trace
// representative with augmentations phi_i = psi . g_i:
//   g  ->  ( n*(g_0 g g_{s^{-1}(0)}^{-1}), ..., n*(g_n g g_{s^{-1}(n)}^{-1}); s )
// with s the underlying permutation of g.
inline WreathElement compute_eta(int n, const CsgMorphism& g, const std::vector<CsgMorphism>& trace_augs,
                                 std::optional<int> distinguished = std::nullopt) {
  if (g.n != n || !is_group_element(g)) throw DomainError("eta expects an element of G_n");
  if ((int)trace_augs.size() != n + 1) throw DomainError("a trace on {0..n} has n+1 augmentations");
  std::vector<CsgMorphism> parts;
  parts.reserve(n + 1);
  for (const auto& aug : trace_augs) {
    Factorization fac = factorize(aug);
    if (!(fac.phi == standard_aug(g.family, n, n, 1)))
      throw DomainError("trace augmentations must collapse all but one element to 0");
    parts.push_back(std::move(fac.g));
  }
  const SetMap sigma = lambda_map(g);
  std::vector<int> sigma_inv(n + 1);
  for (int i = 0; i <= n; ++i) sigma_inv[sigma.values[i]] = i;
  WreathElement w;
  w.arity = n + 1;
  w.perm = sigma.values;
  w.distinguished = distinguished;
  for (int i = 0; i <= n; ++i) {
    CsgMorphism x = compose(compose(group_inverse(parts[sigma_inv[i]]), g), parts[i]);
    if (lambda_map(x).values[n] != n) throw DomainError("trace conjugate does not stabilize the top element");
    w.twists.push_back(point_pullback(x, n));
  }
  w.validate();
  return w;
}

inline WreathElement compute_eta_standard(const Family& fam, int n, const CsgMorphism& g) {
  return compute_eta(n, g, standard_trace_augs(fam, n));
}

}  // namespace csft
