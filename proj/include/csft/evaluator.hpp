#pragma once

// Evaluation of structured-graph morphisms against a bound Frobenius algebra.
//
// A graph is reduced per component to a one-vertex rose; loops are released
// into pending axis pairs, every outgoing half-edge is capped with a 2-trace
// by graph-level contraction, and the resulting all-incoming corolla is
// contracted as a product chain
//
//   T = trace( U_{w_0} X_0 . U_{w_1} X_1 ... U_{w_K} X_K )
//
// where the factor of a capped half-edge is pre-composed with the inverse
// Gram matrix (the copairing), and loop partners are traced out as soon as
// both ends have been seen.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "csft/errors.hpp"
#include "csft/frobenius.hpp"
#include "csft/graph.hpp"
#include "csft/operad.hpp"
#include "csft/tensor.hpp"

namespace csft {

template <class F>
struct EvaluationContext {
  BoundAlgebra<F> algebra;
  Tensor<F> gram;
  Tensor<F> gram_inv;

  explicit EvaluationContext(BoundAlgebra<F> bound)
      : algebra(std::move(bound)), gram(algebra.p.gram()), gram_inv(Tensor<F>()) {
    try {
      gram_inv = invert(gram);
    } catch (const SingularError&) {
      throw ContextError("evaluation needs a non-degenerate trace");
    }
    const auto& p = algebra.p;
    for (int i = 0; i < p.dim; ++i) {
      auto v = p.mul_vec(p.unit, p.basis(i));
      for (int k = 0; k < p.dim; ++k)
        if (!p.field.eq(v[(std::size_t)k], p.basis(i)[(std::size_t)k]))
          throw ContextError("unit does not act as identity");
    }
  }

  std::size_t dim() const { return (std::size_t)algebra.p.dim; }
};

// the 2-trace as a graph: one vertex on {0,1}, both slots incoming
inline StructuredGraph b2_graph(const Family& fam) {
  StructuredGraph g;
  g.family = fam;
  g.arities = {1};
  g.halves.push_back({0, 0, 1, identity_morphism(fam, 0)});
  g.halves.push_back({0, 1, 1, identity_morphism(fam, 0)});
  g.pairing = {0, 1};
  g.in_order = {0, 1};
  g.validate();
  return g;
}

// the 2-cotrace: one vertex on {0,1}, both slots outgoing
inline StructuredGraph p2_graph(const Family& fam) {
  StructuredGraph g;
  g.family = fam;
  g.arities = {1};
  g.halves.push_back({0, 0, 0, identity_morphism(fam, 0)});
  g.halves.push_back({0, 1, 0, identity_morphism(fam, 0)});
  g.pairing = {0, 1};
  g.out_order = {0, 1};
  g.validate();
  return g;
}

namespace detail_eval {

// one component, already reduced to a rose with loops released
template <class F>
struct ChainState {
  Tensor<F> s;                      // axis 0 = accumulator, then free axes
  std::vector<long long> axis_key;  // key per free axis (tracked half ids)
};

template <class F>
void chain_step(const EvaluationContext<F>& ctx, ChainState<F>& st, const Tensor<F>& m,
                long long key, bool fuse_with_pending) {
  // S'(k; rest, a) = sum_{p,q} S(p; rest) m(q,a) mul(p,q,k)
  Tensor<F> s1 = contract(st.s, {0}, ctx.algebra.p.mul, {0});  // (rest..., q, k)
  const std::size_t qpos = s1.rank() - 2, kpos = s1.rank() - 1;
  Tensor<F> s2 = apply_to_axis(s1, qpos, m);  // (rest..., a, k)
  // bring the accumulator back to the front
  std::vector<std::size_t> perm(s2.rank());
  perm[0] = kpos;
  for (std::size_t a = 1; a < s2.rank(); ++a) perm[a] = a - 1;
  st.s = permute_axes(s2, perm);
  // axes now: [acc, rest..., a]
  if (!fuse_with_pending) {
    st.axis_key.push_back(key);
    return;
  }
  std::size_t partner = 0;
  bool found = false;
  for (std::size_t i = 0; i < st.axis_key.size(); ++i)
    if (st.axis_key[i] == key) { partner = i + 1; found = true; }
  if (!found) throw Error("internal: loop partner axis missing");
  st.s = trace_axes(st.s, partner, st.s.rank() - 1);
  st.axis_key.erase(st.axis_key.begin() + (long)(partner - 1));
}

template <class F>
struct ComponentValue {
  Tensor<F> tensor;
  std::vector<long long> axis_key;
};

}  // namespace detail_eval

// Evaluate a connected graph whose tracked half-edges are keyed by their ids
// in `g`; used by evaluate() below and directly by tests.
template <class F>
detail_eval::ComponentValue<F> evaluate_component(const StructuredGraph& g0, const EvaluationContext<F>& ctx) {
  // 1. one-vertex normal form, with id tracking
  detail::MappedGraph rose = detail::normalize_to_rose_mapped(g0);
  std::vector<long long> orig_of(rose.graph.num_halves(), -1);
  for (int h = 0; h < g0.num_halves(); ++h)
    if (rose.id_map[h] >= 0) orig_of[rose.id_map[h]] = h;

  // 2. release loops into pending external pairs
  StructuredGraph work = rose.graph;
  std::vector<std::pair<long long, long long>> loops;  // (out key, in key)
  for (int h = 0; h < work.num_halves(); ++h) {
    if (work.is_external(h) || work.pairing[h] < h) continue;
    int ho = work.halves[h].side == 0 ? h : work.pairing[h];
    int hi = work.pairing[ho];
    loops.push_back({orig_of[ho], orig_of[hi]});
    work.pairing[ho] = ho;
    work.pairing[hi] = hi;
    work.out_order.push_back(ho);
    work.in_order.push_back(hi);
  }

  // 3. cap every outgoing half-edge with a 2-trace; the fresh leg inherits the
  // capped half's key and is later fed through the copairing
  std::vector<long long> track = orig_of;  // per current-id original key
  std::set<long long> raised;              // keys whose axis goes through gram_inv
  for (;;) {
    int h_out = -1;
    for (int h = 0; h < work.num_halves(); ++h)
      if (work.halves[h].side == 0) { h_out = h; break; }
    if (h_out < 0) break;
    const long long key = track[h_out];
    raised.insert(key);
    auto cc = detail::concatenate_impl(work, h_out, b2_graph(ctx.algebra.family), 1);
    const int new_leg = cc.offset + 0;
    auto done = detail::contract_edge_mapped(cc.graph, h_out);
    std::vector<long long> ntrack(done.graph.num_halves(), -1);
    for (int h = 0; h < work.num_halves(); ++h)
      if (h != h_out && done.id_map[h] >= 0) ntrack[done.id_map[h]] = track[h];
    ntrack[done.id_map[new_leg]] = key;
    work = std::move(done.graph);
    track = std::move(ntrack);
  }

  // 4. product chain over the slots of the all-incoming corolla
  const int K = work.arities[0];
  std::vector<int> half_at_slot(K + 1, -1);
  for (int h = 0; h < work.num_halves(); ++h) half_at_slot[work.halves[h].slot] = h;

  detail_eval::ChainState<F> st;
  st.s = Tensor<F>::zeros(ctx.algebra.p.field, {ctx.dim()});
  for (std::size_t i = 0; i < ctx.dim(); ++i) st.s.data[i] = ctx.algebra.p.unit[i];

  std::set<long long> seen;
  auto is_second_of_loop = [&](long long key) {
    for (auto& [o, i] : loops)
      if (o == key || i == key) {
        long long other = (o == key) ? i : o;
        return seen.count(other) > 0;
      }
    return false;
  };
  auto loop_partner_key = [&](long long key) -> long long {
    for (auto& [o, i] : loops)
      if (o == key) return i;
      else if (i == key) return o;
    return key;
  };

  for (int slot = 0; slot <= K; ++slot) {
    const int h = half_at_slot[slot];
    const long long key = track[h];
    Tensor<F> m = ctx.algebra.action(work.halves[h].twist);
    if (raised.count(key)) m = mat_mul(m, permute_axes(ctx.gram_inv, {1, 0}));
    const bool fuse = is_second_of_loop(key);
    detail_eval::chain_step(ctx, st, m, fuse ? loop_partner_key(key) : key, fuse);
    seen.insert(key);
  }

  // 5. close with the trace functional
  Tensor<F> tr = Tensor<F>::zeros(ctx.algebra.p.field, {ctx.dim()});
  for (std::size_t i = 0; i < ctx.dim(); ++i) tr.data[i] = ctx.algebra.p.trace[i];
  detail_eval::ComponentValue<F> out;
  out.tensor = contract(st.s, {0}, tr, {0});
  out.axis_key = st.axis_key;
  return out;
}

// Full evaluation: components in the order of their smallest external leg,
// axes ordered [out_order..., in_order...].
template <class F>
Tensor<F> evaluate(const StructuredGraph& g, const EvaluationContext<F>& ctx) {
  g.validate();
  if (!(g.family == ctx.algebra.family))
    throw ContextError("graph family " + g.family.name() + " does not match context " +
                       ctx.algebra.family.name());

  const std::vector<int> comp = component_of_vertex(g);
  const int ncomp = num_components(g);
  // global position of each external leg
  std::map<int, int> leg_pos;
  for (std::size_t i = 0; i < g.out_order.size(); ++i) leg_pos[g.out_order[i]] = (int)i;
  for (std::size_t i = 0; i < g.in_order.size(); ++i) leg_pos[g.in_order[i]] = (int)(g.out_order.size() + i);

  std::vector<int> comp_key(ncomp, -1);
  for (int h = 0; h < g.num_halves(); ++h) {
    if (!g.is_external(h)) continue;
    int c = comp[g.halves[h].vertex];
    if (comp_key[c] < 0 || leg_pos[h] < comp_key[c]) comp_key[c] = leg_pos[h];
  }
  for (int c = 0; c < ncomp; ++c)
    if (comp_key[c] < 0) throw ClosedMorphismError("component " + std::to_string(c) + " has no external leg");

  std::vector<int> order(ncomp);
  for (int c = 0; c < ncomp; ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return comp_key[a] < comp_key[b]; });

  Tensor<F> acc = Tensor<F>::scalar(ctx.algebra.p.field, ctx.algebra.p.field.one());
  std::vector<long long> keys;
  for (int c : order) {
    // extract the component as a standalone graph
    StructuredGraph sub;
    sub.family = g.family;
    std::vector<int> vmap(g.arities.size(), -1);
    for (int v = 0; v < (int)g.arities.size(); ++v)
      if (comp[v] == c) {
        vmap[v] = (int)sub.arities.size();
        sub.arities.push_back(g.arities[v]);
      }
    std::vector<int> hmap(g.num_halves(), -1);
    std::vector<long long> sub_orig;
    for (int h = 0; h < g.num_halves(); ++h) {
      if (comp[g.halves[h].vertex] != c) continue;
      hmap[h] = (int)sub.halves.size();
      HalfEdge he = g.halves[h];
      he.vertex = vmap[he.vertex];
      sub.halves.push_back(std::move(he));
      sub_orig.push_back(h);
    }
    sub.pairing.resize(sub.halves.size());
    for (int h = 0; h < g.num_halves(); ++h)
      if (hmap[h] >= 0) sub.pairing[hmap[h]] = hmap[g.pairing[h]];
    for (int h : g.in_order)
      if (hmap[h] >= 0) sub.in_order.push_back(hmap[h]);
    for (int h : g.out_order)
      if (hmap[h] >= 0) sub.out_order.push_back(hmap[h]);
    sub.validate();

    auto val = evaluate_component(sub, ctx);
    acc = tensor_product(acc, val.tensor);
    for (long long k : val.axis_key) keys.push_back(sub_orig[(std::size_t)k]);
  }

  // final axis order: outs then ins
  std::vector<std::size_t> perm;
  perm.reserve(keys.size());
  auto find_axis = [&](int h) {
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] == h) return i;
    throw Error("internal: missing axis for leg " + std::to_string(h));
  };
  for (int h : g.out_order) perm.push_back(find_axis(h));
  for (int h : g.in_order) perm.push_back(find_axis(h));
  return permute_axes(acc, perm);
}

}  // namespace csft
