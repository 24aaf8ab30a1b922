#pragma once

// Structured augmented graphs in trivialized form. Every vertex of arity n
// carries an implicit frame identifying its half-edge set with the standard
// structured set on {0..n}; each half-edge records its slot, its side (0 =
// outgoing, 1 = incoming) and a residual G_0 twist. The augmentation of a
// half-edge is recovered as
//
//   side 0:  w^     . A_s^out     A_s^out = phi_out . ROT(n+1-s)   (s >= 1)
//   side 1:  w^{-1} . A_s^in      A_s^in  = psi     . ROT(n-s)
//
// where psi / phi_out are the simplex maps [n] -> [1] collapsing all but the
// top / bottom element and w^ is the image of the twist under the canonical
// embedding G_0 = G_1^0. Gauge moves (vertex automorphisms) and edge
// contraction are computed against these augmentations.

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "csft/errors.hpp"
#include "csft/morphism.hpp"

namespace csft {

// The canonical embedding of G_0 into the kernel of lambda_1; doubles lifts.
inline CsgMorphism embed_g0_in_g1(const CsgMorphism& u) {
  if (u.n != 0 || !is_group_element(u)) throw DomainError("expected an element of G_0");
  const std::int64_t r = u.lift[0];
  return CsgMorphism(u.family, 1, 1, u.sign, {2 * r, 2 * r + u.sign}, u.h);
}

// Standard augmentation [n] -> [1] of the given slot and side, with twist e.
inline CsgMorphism standard_aug(const Family& fam, int n, int slot, int side) {
  if (slot < 0 || slot > n) throw DomainError("slot out of range");
  std::vector<std::int64_t> lf(n + 1);
  if (side == 1) {
    for (int i = 0; i <= n; ++i) lf[i] = (i < slot) ? 0 : (i == slot ? 1 : 2);
  } else if (slot == 0) {
    for (int i = 0; i <= n; ++i) lf[i] = (i == 0) ? 0 : 1;
  } else {
    for (int i = 0; i <= n; ++i) lf[i] = (i < slot) ? 1 : (i == slot ? 2 : 3);
  }
  return CsgMorphism(fam, n, 1, +1, std::move(lf));
}

inline CsgMorphism build_aug(const Family& fam, int n, int slot, int side, const CsgMorphism& twist) {
  CsgMorphism base = standard_aug(fam, n, slot, side);
  CsgMorphism w = embed_g0_in_g1(side == 1 ? group_inverse(twist) : twist);
  return compose(base, w);
}

struct DecodedAug {
  int slot;
  CsgMorphism twist;
};

// Inverse of build_aug for a fixed side.
inline DecodedAug decode_aug(const CsgMorphism& aug, int side) {
  const int n = aug.n;
  if (aug.m != 1) throw DomainError("augmentations land in [1]");
  // the slot is the unique element whose image has the side's parity
  const SetMap lm = lambda_map(aug);
  int slot = -1;
  const int want = (side == 1) ? 1 : 0;
  for (int i = 0; i <= n; ++i) {
    if (lm.values[i] != want) continue;
    if (n == 0 || std::count(lm.values.begin(), lm.values.end(), want) == 1) slot = i;
  }
  if (slot < 0) throw DomainError("not an augmentation of side " + std::to_string(side) + ": " + aug.str());
  Factorization fac = factorize(aug);
  const std::int64_t rot = (side == 1) ? (n - slot) : ((slot == 0) ? 0 : (n + 1 - slot));
  CsgMorphism x = compose(rotation(aug.family, n, -rot), fac.g);  // g . ROT(rot)^{-1}
  CsgMorphism w_raw = point_pullback(x, side == 1 ? n : 0);
  CsgMorphism twist = (side == 1) ? group_inverse(w_raw) : w_raw;
  assert(build_aug(aug.family, n, slot, side, twist) == aug);
  return {slot, std::move(twist)};
}

// ---------------------------------------------------------------------------

struct HalfEdge {
  int vertex = 0;
  int slot = 0;
  int side = 1;          // 0 = outgoing, 1 = incoming
  CsgMorphism twist;     // element of G_0 (companion label included)
};

struct StructuredGraph {
  Family family;
  std::vector<int> arities;       // vertex v is modeled on the standard set {0..arities[v]}
  std::vector<HalfEdge> halves;
  std::vector<int> pairing;       // involution on half-edge ids; fixed points are external
  std::vector<int> in_order;      // external incoming half-edges, ordered
  std::vector<int> out_order;     // external outgoing half-edges, ordered

  int num_halves() const { return (int)halves.size(); }
  bool is_external(int h) const { return pairing[h] == h; }

  CsgMorphism aug_of(int h) const {
    const HalfEdge& he = halves[h];
    return build_aug(family, arities[he.vertex], he.slot, he.side, he.twist);
  }

  void validate() const {
    const int H = num_halves();
    if ((int)pairing.size() != H) throw ValidationError("pairing size mismatch");
    for (int v = 0; v < (int)arities.size(); ++v)
      if (arities[v] < 0) throw ValidationError("negative arity at vertex " + std::to_string(v));
    std::vector<std::set<int>> used(arities.size());
    for (int h = 0; h < H; ++h) {
      const HalfEdge& he = halves[h];
      if (he.vertex < 0 || he.vertex >= (int)arities.size())
        throw ValidationError("half-edge " + std::to_string(h) + " names a missing vertex");
      if (he.slot < 0 || he.slot > arities[he.vertex])
        throw ValidationError("half-edge " + std::to_string(h) + " slot out of range");
      if (he.side != 0 && he.side != 1)
        throw ValidationError("half-edge " + std::to_string(h) + " has bad side");
      if (!(he.twist.family == family) || he.twist.n != 0 || !is_group_element(he.twist))
        throw ValidationError("half-edge " + std::to_string(h) + " twist is not in G_0");
      if (!used[he.vertex].insert(he.slot).second)
        throw ValidationError("vertex " + std::to_string(he.vertex) + " slot " +
                              std::to_string(he.slot) + " hosts two half-edges");
    }
    for (int v = 0; v < (int)arities.size(); ++v)
      if ((int)used[v].size() != arities[v] + 1)
        throw ValidationError("vertex " + std::to_string(v) + " has empty slots");
    for (int h = 0; h < H; ++h) {
      if (pairing[h] < 0 || pairing[h] >= H) throw ValidationError("pairing out of range at " + std::to_string(h));
      if (pairing[pairing[h]] != h) throw ValidationError("pairing is not an involution at " + std::to_string(h));
      if (pairing[h] != h && halves[h].side + halves[pairing[h]].side != 1)
        throw ValidationError("edge at half-edge " + std::to_string(h) + " must join side 0 to side 1");
    }
    std::vector<int> ext_in, ext_out;
    for (int h = 0; h < H; ++h)
      if (is_external(h)) (halves[h].side ? ext_in : ext_out).push_back(h);
    auto check_order = [&](const std::vector<int>& order, std::vector<int> expect, const char* which) {
      std::vector<int> got = order;
      std::sort(got.begin(), got.end());
      std::sort(expect.begin(), expect.end());
      if (got != expect) throw ValidationError(std::string(which) + " order does not list the external half-edges");
    };
    check_order(in_order, ext_in, "in");
    check_order(out_order, ext_out, "out");
    if (ext_in.empty() && ext_out.empty())
      throw ValidationError("closed graphs are not morphisms");
  }

  std::vector<int> halves_at(int v) const {
    std::vector<int> out;
    for (int h = 0; h < num_halves(); ++h)
      if (halves[h].vertex == v) out.push_back(h);
    std::sort(out.begin(), out.end(), [&](int a, int b) { return halves[a].slot < halves[b].slot; });
    return out;
  }

  bool is_rose() const { return arities.size() == 1; }

  bool is_corolla() const {
    if (!is_rose()) return false;
    for (int h = 0; h < num_halves(); ++h)
      if (!is_external(h)) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// connectivity

inline std::vector<int> component_of_vertex(const StructuredGraph& g) {
  const int V = (int)g.arities.size();
  std::vector<int> comp(V, -1);
  int c = 0;
  for (int s = 0; s < V; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int h = 0; h < g.num_halves(); ++h) {
        if (g.halves[h].vertex != v || g.is_external(h)) continue;
        int w = g.halves[g.pairing[h]].vertex;
        if (comp[w] < 0) {
          comp[w] = c;
          stack.push_back(w);
        }
      }
    }
    ++c;
  }
  return comp;
}

inline int num_components(const StructuredGraph& g) {
  auto c = component_of_vertex(g);
  return c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
}

// vertices minus internal edges
inline int euler_characteristic(const StructuredGraph& g) {
  int edges = 0;
  for (int h = 0; h < g.num_halves(); ++h)
    if (!g.is_external(h) && g.pairing[h] > h) ++edges;
  return (int)g.arities.size() - edges;
}

// ---------------------------------------------------------------------------
// gauge action of a vertex automorphism: every augmentation is precomposed
// with the automorphism; slots and twists are re-read from the result

inline StructuredGraph act_on_vertex(const StructuredGraph& g, int v, const CsgMorphism& a) {
  if (v < 0 || v >= (int)g.arities.size()) throw DomainError("no such vertex");
  if (!(a.family == g.family) || a.n != g.arities[v] || !is_group_element(a))
    throw DomainError("automorphism does not match vertex " + std::to_string(v));
  StructuredGraph out = g;
  for (int h = 0; h < g.num_halves(); ++h) {
    if (g.halves[h].vertex != v) continue;
    CsgMorphism aug = compose(a, g.aug_of(h));  // aug . a
    DecodedAug d = decode_aug(aug, g.halves[h].side);
    out.halves[h].slot = d.slot;
    out.halves[h].twist = d.twist;
  }
  return out;
}

// ---------------------------------------------------------------------------
// edge contraction

namespace detail {

struct MappedGraph {
  StructuredGraph graph;
  std::vector<int> id_map;  // old half-edge id -> new id, -1 if removed
};

// Contract the internal edge at half-edge h (either end); the two endpoint
// vertices are first gauged so the outgoing end sits at slot 0 and the
// incoming end at the top slot, both with trivial twist, after which the
// merged standard set is the straight splice of the two slot ranges.
inline MappedGraph contract_edge_mapped(const StructuredGraph& g0, int h) {
  if (h < 0 || h >= g0.num_halves()) throw NotAnEdgeError("no such half-edge");
  if (g0.is_external(h)) throw NotAnEdgeError("half-edge " + std::to_string(h) + " is external");
  int h_out = g0.halves[h].side == 0 ? h : g0.pairing[h];
  int h_in = g0.pairing[h_out];
  const int vo = g0.halves[h_out].vertex, vi = g0.halves[h_in].vertex;
  if (vo == vi) throw ContractLoopError("cannot contract a loop");

  StructuredGraph g = g0;
  g = act_on_vertex(g, vo, group_inverse(factorize(g.aug_of(h_out)).g));
  g = act_on_vertex(g, vi, group_inverse(factorize(g.aug_of(h_in)).g));
  assert(g.halves[h_out].slot == 0 && is_identity(g.halves[h_out].twist));
  assert(g.halves[h_in].slot == g.arities[vi] && is_identity(g.halves[h_in].twist));

  const int ni = g.arities[vi], no = g.arities[vo];
  MappedGraph r;
  r.graph.family = g.family;
  r.graph.in_order = g.in_order;
  r.graph.out_order = g.out_order;

  // merged vertex replaces vi; vo disappears
  std::vector<int> vmap(g.arities.size());
  {
    int idx = 0;
    for (int v = 0; v < (int)g.arities.size(); ++v) {
      if (v == vo) { vmap[v] = -1; continue; }
      vmap[v] = idx++;
      r.graph.arities.push_back(v == vi ? ni + no - 1 : g.arities[v]);
    }
  }
  r.id_map.assign(g.num_halves(), -1);
  for (int hh = 0; hh < g.num_halves(); ++hh) {
    if (hh == h_out || hh == h_in) continue;
    HalfEdge he = g.halves[hh];
    if (he.vertex == vi) {
      he.vertex = vmap[vi];  // slots 0..ni-1 stay put
    } else if (he.vertex == vo) {
      he.vertex = vmap[vi];
      he.slot = ni - 1 + he.slot;  // slots 1..no splice on top
    } else {
      he.vertex = vmap[he.vertex];
    }
    r.id_map[hh] = (int)r.graph.halves.size();
    r.graph.halves.push_back(std::move(he));
  }
  r.graph.pairing.assign(r.graph.halves.size(), 0);
  for (int hh = 0; hh < g.num_halves(); ++hh) {
    if (r.id_map[hh] < 0) continue;
    r.graph.pairing[r.id_map[hh]] = r.id_map[g.pairing[hh]];
  }
  for (auto& x : r.graph.in_order) x = r.id_map[x];
  for (auto& x : r.graph.out_order) x = r.id_map[x];
  r.graph.validate();
  return r;
}

}  // namespace detail

inline StructuredGraph contract_edge(const StructuredGraph& g, int half_edge) {
  return detail::contract_edge_mapped(g, half_edge).graph;
}

// ---------------------------------------------------------------------------
// concatenation: glue the given outgoing leg of g1 to the given incoming leg
// of g2 into one internal edge. Leg orders splice as
//   in  = g1.in ++ (g2.in minus the glued leg)
//   out = (g1.out minus the glued leg) ++ g2.out

namespace detail {

struct Concatenated {
  StructuredGraph graph;
  int offset;  // id offset applied to g2's half-edges
};

inline Concatenated concatenate_impl(const StructuredGraph& g1, int out_leg,
                                     const StructuredGraph& g2, int in_leg) {
  if (!(g1.family == g2.family)) throw GluingError("family mismatch");
  if (out_leg < 0 || out_leg >= g1.num_halves() || !g1.is_external(out_leg))
    throw GluingError("outgoing leg is not an external half-edge");
  if (in_leg < 0 || in_leg >= g2.num_halves() || !g2.is_external(in_leg))
    throw GluingError("incoming leg is not an external half-edge");
  if (g1.halves[out_leg].side != 0 || g2.halves[in_leg].side != 1)
    throw GluingError("legs must be glued outgoing to incoming");

  Concatenated r;
  StructuredGraph& g = r.graph;
  g.family = g1.family;
  g.arities = g1.arities;
  g.arities.insert(g.arities.end(), g2.arities.begin(), g2.arities.end());
  const int voff = (int)g1.arities.size();
  r.offset = g1.num_halves();
  g.halves = g1.halves;
  for (HalfEdge he : g2.halves) {
    he.vertex += voff;
    g.halves.push_back(std::move(he));
  }
  g.pairing = g1.pairing;
  for (int h = 0; h < g2.num_halves(); ++h) g.pairing.push_back(g2.pairing[h] + r.offset);
  g.pairing[out_leg] = in_leg + r.offset;
  g.pairing[in_leg + r.offset] = out_leg;
  g.in_order = g1.in_order;
  for (int h : g2.in_order)
    if (h != in_leg) g.in_order.push_back(h + r.offset);
  for (int h : g1.out_order)
    if (h != out_leg) g.out_order.push_back(h);
  for (int h : g2.out_order) g.out_order.push_back(h + r.offset);
  g.validate();
  return r;
}

}  // namespace detail

inline StructuredGraph concatenate(const StructuredGraph& g1, int out_leg,
                                   const StructuredGraph& g2, int in_leg) {
  return detail::concatenate_impl(g1, out_leg, g2, in_leg).graph;
}

// Glue two external legs of the same graph into an internal edge.
inline StructuredGraph pair_legs(const StructuredGraph& g0, int out_leg, int in_leg) {
  if (out_leg == in_leg || !g0.is_external(out_leg) || !g0.is_external(in_leg))
    throw GluingError("legs must be distinct external half-edges");
  if (g0.halves[out_leg].side != 0 || g0.halves[in_leg].side != 1)
    throw GluingError("legs must be glued outgoing to incoming");
  StructuredGraph g = g0;
  g.pairing[out_leg] = in_leg;
  g.pairing[in_leg] = out_leg;
  std::erase(g.in_order, in_leg);
  std::erase(g.out_order, out_leg);
  g.validate();
  return g;
}

// ---------------------------------------------------------------------------
// normal form: contract a spanning forest; loops are never contracted, so the
// result has one vertex per component

namespace detail {

inline MappedGraph normalize_to_rose_mapped(const StructuredGraph& g0) {
  MappedGraph cur{g0, {}};
  cur.id_map.resize(g0.num_halves());
  std::iota(cur.id_map.begin(), cur.id_map.end(), 0);
  for (;;) {
    int pick = -1;
    for (int h = 0; h < cur.graph.num_halves(); ++h) {
      if (cur.graph.is_external(h)) continue;
      if (cur.graph.halves[h].vertex != cur.graph.halves[cur.graph.pairing[h]].vertex) {
        pick = h;
        break;
      }
    }
    if (pick < 0) break;
    MappedGraph next = contract_edge_mapped(cur.graph, pick);
    for (auto& x : cur.id_map)
      if (x >= 0) x = next.id_map[x];
    cur.graph = std::move(next.graph);
  }
  return cur;
}

}  // namespace detail

inline StructuredGraph normalize_to_rose(const StructuredGraph& g) {
  return detail::normalize_to_rose_mapped(g).graph;
}

// ---------------------------------------------------------------------------
// vertex splitting (inverse splice). Splits vertex v of arity K into a new
// vertex holding the k cyclically-consecutive slots starting at position r,
// joined to the remainder by a fresh trivial edge; contracting that edge
// recovers a gauge of the input.

inline StructuredGraph split_vertex(const StructuredGraph& g0, int v, int r, int k) {
  const int K = g0.arities[v];
  if (k < 1 || k > K) throw DomainError("split size out of range");
  // rotate the chosen block to the top slots K-k+1..K
  StructuredGraph g = act_on_vertex(g0, v, rotation(g0.family, K, r - (K - k + 1)));
  StructuredGraph out;
  out.family = g.family;
  out.arities = g.arities;
  out.arities[v] = K - k + 1;              // remainder vertex B
  out.arities.push_back(k);                // split-off vertex A
  const int va = (int)out.arities.size() - 1;
  out.halves = g.halves;
  for (auto& he : out.halves) {
    if (he.vertex != v) continue;
    if (he.slot >= K - k + 1) {
      he.vertex = va;
      he.slot = he.slot - (K - k);  // top block becomes A slots 1..k
    }
  }
  // fresh edge: A slot 0 outgoing -> B top slot incoming
  const int ha = (int)out.halves.size(), hb = ha + 1;
  out.halves.push_back({va, 0, 0, identity_morphism(g.family, 0)});
  out.halves.push_back({v, K - k + 1, 1, identity_morphism(g.family, 0)});
  out.pairing = g.pairing;
  out.pairing.push_back(hb);
  out.pairing.push_back(ha);
  out.in_order = g.in_order;
  out.out_order = g.out_order;
  out.validate();
  return out;
}

}  // namespace csft
