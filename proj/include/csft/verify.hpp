#pragma once

// Randomized well-definedness and functoriality harnesses for the evaluator.
// All randomness comes from a caller-supplied seed; reports carry the seed and
// trial number of any failure.

#include <random>
#include <sstream>
#include <vector>

#include "csft/evaluator.hpp"
#include "csft/frobenius.hpp"
#include "csft/graph.hpp"

namespace csft {

struct GraphGenParams {
  int max_vertices = 5;
  int max_arity = 4;     // slots per vertex = arity + 1
  int max_externals = 5;
  int max_loops = 3;
  int winding = 2;       // twist bound for infinite families
};

inline CsgMorphism random_twist(const Family& fam, std::mt19937_64& rng, int winding = 2) {
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return (std::int64_t)(lo + (std::int64_t)(rng() % (std::uint64_t)(hi - lo)));
  };
  const std::int64_t hi = fam.is_finite() ? fam.period() : winding;
  const std::int64_t lo = fam.is_finite() ? 0 : -winding;
  const int h = (int)(rng() % (std::uint64_t)fam.h_order());
  if (fam.has_reflections() && (rng() & 1)) return reflection(fam, 0, pick(lo, hi), h);
  return rotation(fam, 0, pick(lo, hi), h);
}

// Random graph meeting the parameter caps, every component open.
inline StructuredGraph random_graph(const Family& fam, std::mt19937_64& rng,
                                    const GraphGenParams& prm = {}, int force_arity0 = -1) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    StructuredGraph g;
    g.family = fam;
    const int nv = 1 + (int)(rng() % (std::uint64_t)prm.max_vertices);
    for (int v = 0; v < nv; ++v)
      g.arities.push_back(v == 0 && force_arity0 >= 0 ? force_arity0
                                                      : (int)(rng() % (std::uint64_t)(prm.max_arity + 1)));
    std::vector<int> outs, ins;
    for (int v = 0; v < nv; ++v)
      for (int s = 0; s <= g.arities[v]; ++s) {
        const int side = (int)(rng() & 1);
        const int id = (int)g.halves.size();
        g.halves.push_back({v, s, side, random_twist(fam, rng, prm.winding)});
        (side ? ins : outs).push_back(id);
      }
    g.pairing.resize(g.halves.size());
    for (std::size_t h = 0; h < g.halves.size(); ++h) g.pairing[h] = (int)h;
    std::shuffle(outs.begin(), outs.end(), rng);
    std::shuffle(ins.begin(), ins.end(), rng);
    const std::size_t glue = std::min(outs.size(), ins.size());
    for (std::size_t k = 0; k < glue; ++k) {
      if (rng() % 4 == 0) continue;  // leave some legs external
      g.pairing[outs[k]] = ins[k];
      g.pairing[ins[k]] = outs[k];
    }
    int externals = 0, internal = 0;
    for (std::size_t h = 0; h < g.halves.size(); ++h) {
      if (g.pairing[h] == (int)h) ++externals;
      else if (g.pairing[h] > (int)h) ++internal;
    }
    if (externals == 0 || externals > prm.max_externals) continue;
    for (std::size_t h = 0; h < g.halves.size(); ++h) {
      if (g.pairing[h] != (int)h) continue;
      (g.halves[h].side ? g.in_order : g.out_order).push_back((int)h);
    }
    std::shuffle(g.in_order.begin(), g.in_order.end(), rng);
    std::shuffle(g.out_order.begin(), g.out_order.end(), rng);
    try {
      g.validate();
    } catch (const ValidationError&) {
      continue;
    }
    // every component must be open, and the rose normal form must not carry
    // more pending loops than the cap
    const auto comp = component_of_vertex(g);
    const int nc = num_components(g);
    std::vector<int> open(nc, 0), verts(nc, 0);
    for (int h = 0; h < g.num_halves(); ++h)
      if (g.is_external(h)) open[comp[g.halves[h].vertex]] = 1;
    for (int v = 0; v < nv; ++v) ++verts[comp[v]];
    bool ok = true;
    for (int c = 0; c < nc; ++c) ok = ok && open[c];
    if (!ok) continue;
    int loops_after = internal - (nv - nc);
    if (loops_after > prm.max_loops) continue;
    return g;
  }
  throw Error("random graph generation did not converge; relax the parameters");
}

inline StructuredGraph random_corolla(const Family& fam, std::mt19937_64& rng, int min_out, int min_in,
                                      int max_arity = 4, int winding = 2) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    const int n = std::max(min_out + min_in - 1, (int)(rng() % (std::uint64_t)(max_arity + 1)));
    if (n > max_arity) continue;
    StructuredGraph g;
    g.family = fam;
    g.arities = {n};
    int outs = 0, ins = 0;
    for (int s = 0; s <= n; ++s) {
      const int side = (int)(rng() & 1);
      g.halves.push_back({0, s, side, random_twist(fam, rng, winding)});
      (side ? ins : outs) += 1;
    }
    if (outs < min_out || ins < min_in) continue;
    g.pairing.resize(g.halves.size());
    for (std::size_t h = 0; h < g.halves.size(); ++h) {
      g.pairing[h] = (int)h;
      (g.halves[h].side ? g.in_order : g.out_order).push_back((int)h);
    }
    std::shuffle(g.in_order.begin(), g.in_order.end(), rng);
    std::shuffle(g.out_order.begin(), g.out_order.end(), rng);
    g.validate();
    return g;
  }
  throw Error("random corolla generation did not converge");
}

struct TrialReport {
  std::string name;
  int trials = 0;
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
};

namespace detail_verify {

template <class F>
Tensor<F> glue_tensors(const Tensor<F>& t1, std::size_t n_out1, std::size_t out_axis,
                       const Tensor<F>& t2, std::size_t n_out2, std::size_t in_axis) {
  // t indexed [outs..., ins...]; glue out_axis of t1 (absolute axis) to the
  // in_axis-th input of t2, then reorder to the spliced convention
  Tensor<F> r = contract(t1, {out_axis}, t2, {n_out2 + in_axis});
  const std::size_t o1 = n_out1 - 1, i1 = t1.rank() - n_out1;
  const std::size_t o2 = n_out2, i2 = t2.rank() - n_out2 - 1;
  // r axes: [t1 outs minus glued, t1 ins, t2 outs, t2 ins minus glued]
  std::vector<std::size_t> perm;
  for (std::size_t a = 0; a < o1; ++a) perm.push_back(a);
  for (std::size_t a = 0; a < o2; ++a) perm.push_back(o1 + i1 + a);
  for (std::size_t a = 0; a < i1; ++a) perm.push_back(o1 + a);
  for (std::size_t a = 0; a < i2; ++a) perm.push_back(o1 + i1 + o2 + a);
  return permute_axes(r, perm);
}

}  // namespace detail_verify

// single and double gluings of random corollas against tensor composition
template <class F>
TrialReport verify_functoriality(const EvaluationContext<F>& ctx, int single_trials, int double_trials,
                                 std::uint64_t seed) {
  TrialReport rep;
  rep.name = "functoriality";
  std::mt19937_64 rng(seed);
  const Family& fam = ctx.algebra.family;
  for (int t = 0; t < single_trials; ++t) {
    ++rep.trials;
    StructuredGraph g1 = random_corolla(fam, rng, 1, 0);
    StructuredGraph g2 = random_corolla(fam, rng, 0, 1);
    const int out_leg = g1.out_order[rng() % g1.out_order.size()];
    const int in_leg = g2.in_order[rng() % g2.in_order.size()];
    Tensor<F> t1 = evaluate(g1, ctx), t2 = evaluate(g2, ctx);
    std::size_t out_axis = 0, in_axis = 0;
    for (std::size_t i = 0; i < g1.out_order.size(); ++i)
      if (g1.out_order[i] == out_leg) out_axis = i;
    for (std::size_t i = 0; i < g2.in_order.size(); ++i)
      if (g2.in_order[i] == in_leg) in_axis = i;
    Tensor<F> lhs = detail_verify::glue_tensors(t1, g1.out_order.size(), out_axis, t2, g2.out_order.size(), in_axis);
    StructuredGraph glued = concatenate(g1, out_leg, g2, in_leg);
    Tensor<F> rhs = evaluate(glued, ctx);
    Tensor<F> rhs2 = evaluate(contract_edge(glued, out_leg), ctx);
    if (!(lhs == rhs) || !(rhs == rhs2))
      rep.failures.push_back("single gluing failed at seed " + std::to_string(seed) + " trial " + std::to_string(t));
  }
  for (int t = 0; t < double_trials; ++t) {
    ++rep.trials;
    StructuredGraph g1 = random_corolla(fam, rng, 2, 0);
    StructuredGraph g2 = random_corolla(fam, rng, 0, 2);
    const int o1 = g1.out_order[0], o2 = g1.out_order[1];
    const int i1 = g2.in_order[0], i2 = g2.in_order[1];
    Tensor<F> t1 = evaluate(g1, ctx), t2 = evaluate(g2, ctx);
    std::size_t o1a = 0, o2a = 0, i1a = 0, i2a = 0;
    for (std::size_t i = 0; i < g1.out_order.size(); ++i) {
      if (g1.out_order[i] == o1) o1a = i;
      if (g1.out_order[i] == o2) o2a = i;
    }
    for (std::size_t i = 0; i < g2.in_order.size(); ++i) {
      if (g2.in_order[i] == i1) i1a = i;
      if (g2.in_order[i] == i2) i2a = i;
    }
    Tensor<F> lhs = contract(t1, {o1a, o2a}, t2, {g2.out_order.size() + i1a, g2.out_order.size() + i2a});
    StructuredGraph glued = pair_legs(concatenate(g1, o1, g2, i1), o2, i2 + g1.num_halves());
    Tensor<F> rhs_raw = evaluate(glued, ctx);
    // lhs axes: [g1 outs minus both, g1 ins, g2 outs, g2 ins minus both];
    // evaluate() orders [outs..., ins...] with the concatenate splice, which
    // matches after interchanging the two input blocks
    const std::size_t ro1 = g1.out_order.size() - 2, ri1 = t1.rank() - g1.out_order.size();
    const std::size_t ro2 = g2.out_order.size(), ri2 = t2.rank() - g2.out_order.size() - 2;
    std::vector<std::size_t> perm;
    for (std::size_t a = 0; a < ro1; ++a) perm.push_back(a);
    for (std::size_t a = 0; a < ro2; ++a) perm.push_back(ro1 + ri1 + a);
    for (std::size_t a = 0; a < ri1; ++a) perm.push_back(ro1 + a);
    for (std::size_t a = 0; a < ri2; ++a) perm.push_back(ro1 + ri1 + ro2 + a);
    Tensor<F> lhs_ordered = permute_axes(lhs, perm);
    if (!(lhs_ordered == rhs_raw))
      rep.failures.push_back("double gluing failed at seed " + std::to_string(seed) + " trial " + std::to_string(t));
  }
  return rep;
}

// invariance of evaluation under vertex automorphisms, contraction order and
// the 2-2 move
template <class F>
TrialReport verify_well_defined(const EvaluationContext<F>& ctx, int trials, std::uint64_t seed,
                                const GraphGenParams& prm = {}) {
  TrialReport rep;
  rep.name = "well-definedness";
  std::mt19937_64 rng(seed);
  const Family& fam = ctx.algebra.family;
  for (int t = 0; t < trials; ++t) {
    ++rep.trials;
    StructuredGraph g = random_graph(fam, rng, prm);
    Tensor<F> base = evaluate(g, ctx);
    // (a) gauge move at a random vertex
    {
      const int v = (int)(rng() % g.arities.size());
      const auto elems = enumerate_group(fam, g.arities[v], fam.is_finite() ? std::nullopt
                                                                            : std::optional<int>(prm.winding));
      const CsgMorphism a = elems[rng() % elems.size()];
      if (!(evaluate(act_on_vertex(g, v, a), ctx) == base)) {
        rep.failures.push_back("gauge move failed at seed " + std::to_string(seed) + " trial " + std::to_string(t));
        continue;
      }
    }
    // (b) random single contraction
    {
      std::vector<int> candidates;
      for (int h = 0; h < g.num_halves(); ++h)
        if (!g.is_external(h) && g.halves[h].vertex != g.halves[g.pairing[h]].vertex) candidates.push_back(h);
      if (!candidates.empty()) {
        const int e = candidates[rng() % candidates.size()];
        if (!(evaluate(contract_edge(g, e), ctx) == base)) {
          rep.failures.push_back("contraction failed at seed " + std::to_string(seed) + " trial " + std::to_string(t));
          continue;
        }
      }
    }
  }
  return rep;
}

// the 2-2 move: both ways of splitting an arity-3 vertex into two arity-2
// vertices evaluate alike
template <class F>
TrialReport verify_pachner(const EvaluationContext<F>& ctx, int trials, std::uint64_t seed,
                           const GraphGenParams& prm = {}) {
  TrialReport rep;
  rep.name = "pachner";
  std::mt19937_64 rng(seed);
  const Family& fam = ctx.algebra.family;
  GraphGenParams p2 = prm;
  p2.max_vertices = std::max(1, prm.max_vertices - 1);
  for (int t = 0; t < trials; ++t) {
    ++rep.trials;
    StructuredGraph g = random_graph(fam, rng, p2, /*force_arity0=*/3);
    Tensor<F> base = evaluate(g, ctx);
    const int r = (int)(rng() % 4);
    StructuredGraph s1 = split_vertex(g, 0, r, 2);
    StructuredGraph s2 = split_vertex(g, 0, r + 1, 2);
    if (!(evaluate(s1, ctx) == base) || !(evaluate(s2, ctx) == base))
      rep.failures.push_back("2-2 move failed at seed " + std::to_string(seed) + " trial " + std::to_string(t));
  }
  return rep;
}

}  // namespace csft
