#pragma once

// Finite-dimensional algebra presentations by structure constants over an
// exact field, with a twisted group action and a trace; axiom checking both
// generic (trace invariance under the vertex automorphism groups) and via the
// per-family characterizations, which the acceptance suite cross-validates.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "csft/errors.hpp"
#include "csft/family.hpp"
#include "csft/morphism.hpp"
#include "csft/operad.hpp"
#include "csft/tensor.hpp"
#include "csft/wreath.hpp"

namespace csft {

struct CheckItem {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct Report {
  std::vector<CheckItem> items;

  void add(std::string name, bool pass, std::string detail = "") {
    items.push_back({std::move(name), pass, std::move(detail)});
  }

  bool all_pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }

  std::string first_failure() const {
    for (const auto& it : items)
      if (!it.pass) return it.name + (it.detail.empty() ? "" : (": " + it.detail));
    return "";
  }
};

enum class GenParity { Even, Odd };

template <class F>
struct ActionGenerator {
  GenParity parity = GenParity::Even;
  Tensor<F> matrix;
};

template <class F>
struct FrobeniusPresentation {
  F field;
  int dim = 0;
  Tensor<F> mul;                      // mul(i,j,k): e_i e_j = sum_k mul(i,j,k) e_k
  std::vector<typename F::Value> unit;
  std::vector<typename F::Value> trace;
  std::vector<ActionGenerator<F>> g0_action;            // generators, family-ordered
  std::optional<std::vector<Tensor<F>>> h_action;       // one matrix per companion element

  std::vector<typename F::Value> mul_vec(const std::vector<typename F::Value>& a,
                                         const std::vector<typename F::Value>& b) const {
    std::vector<typename F::Value> out((std::size_t)dim, field.zero());
    for (std::size_t i = 0; i < (std::size_t)dim; ++i) {
      if (field.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < (std::size_t)dim; ++j) {
        if (field.is_zero(b[j])) continue;
        const auto c = field.mul(a[i], b[j]);
        for (std::size_t k = 0; k < (std::size_t)dim; ++k)
          out[k] = field.add(out[k], field.mul(c, mul.at({i, j, k})));
      }
    }
    return out;
  }

  typename F::Value trace_of(const std::vector<typename F::Value>& a) const {
    auto acc = field.zero();
    for (std::size_t i = 0; i < (std::size_t)dim; ++i) acc = field.add(acc, field.mul(trace[i], a[i]));
    return acc;
  }

  Tensor<F> gram() const {
    Tensor<F> b = Tensor<F>::zeros(field, {(std::size_t)dim, (std::size_t)dim});
    for (std::size_t i = 0; i < (std::size_t)dim; ++i)
      for (std::size_t j = 0; j < (std::size_t)dim; ++j) {
        auto acc = field.zero();
        for (std::size_t k = 0; k < (std::size_t)dim; ++k)
          acc = field.add(acc, field.mul(mul.at({i, j, k}), trace[k]));
        b.at({i, j}) = acc;
      }
    return b;
  }

  // trace tensor of arity n: T(i_0..i_{n-1}) = trace(e_{i_0} ... e_{i_{n-1}})
  Tensor<F> trace_tensor(int n) const {
    std::vector<std::size_t> shape((std::size_t)n, (std::size_t)dim);
    Tensor<F> t = Tensor<F>::zeros(field, shape);
    std::vector<std::size_t> idx((std::size_t)n, 0);
    bool done = false;
    std::size_t pos = 0;
    do {
      std::vector<typename F::Value> acc = unit_vec();
      for (int a = 0; a < n; ++a) acc = mul_vec(acc, basis((int)idx[(size_t)a]));
      t.data[pos++] = trace_of(acc);
      if (shape.empty()) break;
      detail::next_index(idx, shape, done);
    } while (!done);
    return t;
  }

  std::vector<typename F::Value> basis(int i) const {
    std::vector<typename F::Value> v((std::size_t)dim, field.zero());
    v[(std::size_t)i] = field.one();
    return v;
  }

  std::vector<typename F::Value> unit_vec() const { return unit; }
};

// ---------------------------------------------------------------------------
// matrix helpers

template <class F>
std::vector<typename F::Value> apply_matrix(const Tensor<F>& m, const std::vector<typename F::Value>& v) {
  const std::size_t d = m.shape[0];
  std::vector<typename F::Value> out(d, m.field.zero());
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      out[k] = m.field.add(out[k], m.field.mul(m.at({k, i}), v[i]));
  return out;
}

// out(..., a, ...) = sum_k m(k, a) t(..., k, ...): feed the matrix into one axis
template <class F>
Tensor<F> apply_to_axis(const Tensor<F>& t, std::size_t axis, const Tensor<F>& m) {
  Tensor<F> c = contract(t, {axis}, m, {0});
  std::vector<std::size_t> perm(t.rank());
  for (std::size_t a = 0; a < t.rank(); ++a)
    perm[a] = (a < axis) ? a : (a == axis ? t.rank() - 1 : a - 1);
  return permute_axes(c, perm);
}

template <class F>
Tensor<F> matrix_power(const Tensor<F>& m, std::int64_t k) {
  const std::size_t d = m.shape[0];
  Tensor<F> base = k >= 0 ? m : invert(m);
  std::int64_t e = k >= 0 ? k : -k;
  Tensor<F> acc = identity_matrix(m.field, d);
  while (e > 0) {
    if (e & 1) acc = mat_mul(acc, base);
    base = mat_mul(base, base);
    e >>= 1;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// binding a presentation to a family

template <class F>
struct BoundAlgebra {
  Family family;
  FrobeniusPresentation<F> p;
  std::optional<Tensor<F>> rot;   // U of the rotation generator of G_0
  std::optional<Tensor<F>> refl;  // U of the standard reflection of G_0

  // U-matrix of an arbitrary element of G_0 (companion label included)
  Tensor<F> action(const CsgMorphism& g) const {
    if (g.n != 0 || !is_group_element(g)) throw DomainError("action expects an element of G_0");
    Tensor<F> u = identity_matrix(p.field, (std::size_t)p.dim);
    const std::int64_t r = g.lift[0];
    if ((r != 0 && !rot) || (g.sign == -1 && !refl))
      throw ContextError("twist " + g.str() + " has no action matrix for family " + family.name());
    if (g.sign == +1) {
      if (r != 0) u = matrix_power(*rot, r);
    } else {
      u = *refl;
      if (r != 0) u = mat_mul(u, matrix_power(*rot, -r));
    }
    if (g.h != 0) {
      if (!p.h_action) throw ContextError("twist carries a companion label but the algebra has no H action");
      u = mat_mul(u, (*p.h_action)[(std::size_t)g.h]);
    }
    return u;
  }
};

template <class F>
BoundAlgebra<F> bind_algebra(const Family& fam, const FrobeniusPresentation<F>& p) {
  BoundAlgebra<F> b{fam, p, std::nullopt, std::nullopt};
  const bool want_rot = fam.period() != 1;       // N >= 2 or infinite cover
  const bool want_refl = fam.has_reflections();
  std::size_t expect = (want_rot ? 1 : 0) + (want_refl ? 1 : 0);
  if (p.g0_action.size() != expect)
    throw ValidationError("g0_action must list exactly the family generators (" + std::to_string(expect) +
                          " for " + fam.name() + ")");
  std::size_t at = 0;
  if (want_rot) {
    if (p.g0_action[at].parity != GenParity::Even) throw ValidationError("rotation generator must be even");
    b.rot = p.g0_action[at++].matrix;
  }
  if (want_refl) {
    if (p.g0_action[at].parity != GenParity::Odd) throw ValidationError("reflection generator must be odd");
    b.refl = p.g0_action[at].matrix;
  }
  if (fam.companion) {
    if (!p.h_action || p.h_action->size() != (std::size_t)fam.companion->order)
      throw ValidationError("h_action must list one matrix per companion element");
  }
  return b;
}

// ---------------------------------------------------------------------------
// checks

template <class F>
Report check_algebra(const FrobeniusPresentation<F>& p) {
  Report rep;
  const auto& f = p.field;
  const std::size_t d = (std::size_t)p.dim;
  // associativity
  {
    bool ok = true;
    std::string det;
    for (std::size_t i = 0; ok && i < d; ++i)
      for (std::size_t j = 0; ok && j < d; ++j)
        for (std::size_t k = 0; ok && k < d; ++k)
          for (std::size_t q = 0; ok && q < d; ++q) {
            auto lhs = f.zero(), rhs = f.zero();
            for (std::size_t t = 0; t < d; ++t) {
              lhs = f.add(lhs, f.mul(p.mul.at({i, j, t}), p.mul.at({t, k, q})));
              rhs = f.add(rhs, f.mul(p.mul.at({j, k, t}), p.mul.at({i, t, q})));
            }
            if (!f.eq(lhs, rhs)) {
              ok = false;
              det = "first counterexample (i,j,k,q) = (" + std::to_string(i) + "," + std::to_string(j) + "," +
                    std::to_string(k) + "," + std::to_string(q) + ")";
            }
          }
    rep.add("associativity", ok, det);
  }
  // unit laws
  {
    bool ok = true;
    for (std::size_t i = 0; ok && i < d; ++i) {
      auto left = p.mul_vec(p.unit, p.basis((int)i));
      auto right = p.mul_vec(p.basis((int)i), p.unit);
      for (std::size_t k = 0; k < d; ++k)
        if (!f.eq(left[k], p.basis((int)i)[k]) || !f.eq(right[k], p.basis((int)i)[k])) ok = false;
    }
    rep.add("unit laws", ok);
  }
  return rep;
}

namespace detail_frob {

template <class F>
bool is_algebra_morphism(const FrobeniusPresentation<F>& p, const Tensor<F>& u, bool anti) {
  const std::size_t d = (std::size_t)p.dim;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto lhs = apply_matrix(u, p.mul_vec(p.basis((int)i), p.basis((int)j)));
      auto a = apply_matrix(u, p.basis((int)i));
      auto b = apply_matrix(u, p.basis((int)j));
      auto rhs = anti ? p.mul_vec(b, a) : p.mul_vec(a, b);
      for (std::size_t k = 0; k < d; ++k)
        if (!p.field.eq(lhs[k], rhs[k])) return false;
    }
  // morphisms of unital algebras fix the unit
  auto uu = apply_matrix(u, p.unit);
  for (std::size_t k = 0; k < d; ++k)
    if (!p.field.eq(uu[k], p.unit[k])) return false;
  return true;
}

template <class F>
bool matrices_equal(const Tensor<F>& a, const Tensor<F>& b) { return a == b; }

}  // namespace detail_frob

// action is a homomorphism respecting the canonical parity
template <class F>
Report check_action(const BoundAlgebra<F>& b) {
  Report rep;
  const auto& p = b.p;
  const std::size_t d = (std::size_t)p.dim;
  const Tensor<F> id = identity_matrix(p.field, d);
  if (b.rot) {
    bool hom = true;
    if (b.family.is_finite())
      hom = detail_frob::matrices_equal(matrix_power(*b.rot, b.family.period()), id);
    else {
      try { (void)invert(*b.rot); } catch (const SingularError&) { hom = false; }
    }
    rep.add("rotation generator order", hom);
    rep.add("rotation acts by automorphisms", detail_frob::is_algebra_morphism(p, *b.rot, false));
  }
  if (b.refl) {
    rep.add("reflection is involutive", detail_frob::matrices_equal(mat_mul(*b.refl, *b.refl), id));
    rep.add("reflection acts by anti-automorphisms", detail_frob::is_algebra_morphism(p, *b.refl, true));
    if (b.rot) {
      auto lhs = mat_mul(mat_mul(*b.refl, *b.rot), *b.refl);
      rep.add("dihedral relation",
              detail_frob::matrices_equal(mat_mul(lhs, *b.rot), identity_matrix(p.field, d)));
    }
  }
  if (b.family.companion && p.h_action) {
    const FiniteGroup& H = *b.family.companion;
    bool hom = detail_frob::matrices_equal((*p.h_action)[0], id);
    for (int x = 0; hom && x < H.order; ++x)
      for (int y = 0; hom && y < H.order; ++y)
        hom = detail_frob::matrices_equal(mat_mul((*p.h_action)[(std::size_t)x], (*p.h_action)[(std::size_t)y]),
                                          (*p.h_action)[(std::size_t)H.mul(x, y)]);
    rep.add("companion action is a homomorphism", hom);
    bool autos = true;
    for (int x = 0; autos && x < H.order; ++x)
      autos = detail_frob::is_algebra_morphism(p, (*p.h_action)[(std::size_t)x], false);
    rep.add("companion acts by automorphisms", autos);
  }
  return rep;
}

template <class F>
Report check_chi2_equivariance(const BoundAlgebra<F>& b) {
  Report rep;
  const auto& p = b.p;
  const std::size_t d = (std::size_t)p.dim;
  const auto gens = g0_generators(b.family);
  if (!b.rot && !b.refl && !b.family.companion)
    rep.add("chi2 equivariance", true, "vacuous: trivial G_0");
  for (const auto& g : gens) {
    WreathElement w = compute_chi2(g);
    std::vector<int> inv(2);
    for (int s = 0; s < 2; ++s) inv[w.perm[s]] = s;
    Tensor<F> u = b.action(g);
    Tensor<F> u0 = b.action(w.twists[0]);
    Tensor<F> u1 = b.action(w.twists[1]);
    bool ok = true;
    for (std::size_t i = 0; ok && i < d; ++i)
      for (std::size_t j = 0; ok && j < d; ++j) {
        auto lhs = apply_matrix(u, p.mul_vec(p.basis((int)i), p.basis((int)j)));
        std::vector<std::vector<typename F::Value>> x = {p.basis((int)i), p.basis((int)j)};
        auto rhs = p.mul_vec(apply_matrix(u0, x[(std::size_t)inv[0]]), apply_matrix(u1, x[(std::size_t)inv[1]]));
        for (std::size_t k = 0; k < d; ++k)
          if (!p.field.eq(lhs[k], rhs[k])) ok = false;
      }
    rep.add("chi2 equivariance of " + g.str(), ok);
  }
  return rep;
}

template <class F>
struct NakayamaData {
  Tensor<F> matrix;
  std::optional<std::int64_t> order;  // multiplicative order, if <= bound
};

template <class F>
NakayamaData<F> nakayama(const FrobeniusPresentation<F>& p, std::int64_t order_bound = 1000) {
  Tensor<F> b = p.gram();
  Tensor<F> binv = invert(b);  // throws SingularError on degenerate trace
  Tensor<F> bt = permute_axes(b, {1, 0});
  Tensor<F> nak = mat_mul(binv, bt);
  // verify the defining relation beta(a,b) = beta(b, F a)
  const std::size_t d = (std::size_t)p.dim;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto rhs = p.field.zero();
      for (std::size_t k = 0; k < d; ++k)
        rhs = p.field.add(rhs, p.field.mul(b.at({j, k}), nak.at({k, i})));
      if (!p.field.eq(b.at({i, j}), rhs))
        throw Error("nakayama matrix fails its defining relation");
    }
  NakayamaData<F> out{nak, std::nullopt};
  Tensor<F> acc = nak;
  const Tensor<F> id = identity_matrix(p.field, d);
  for (std::int64_t k = 1; k <= order_bound; ++k) {
    if (acc == id) {
      out.order = k;
      break;
    }
    acc = mat_mul(acc, nak);
  }
  return out;
}

// invariance of the arity-n trace tensor under one wreath element
template <class F>
bool trace_invariant_under(const BoundAlgebra<F>& b, const Tensor<F>& trace_tensor, const WreathElement& w) {
  const int n = w.arity;
  Tensor<F> t = trace_tensor;
  // slot j of the acted representative carries U^{-1}_{w_{sigma(j)}} feeding
  // the input that sat at slot sigma(j)
  for (int j = 0; j < n; ++j) {
    Tensor<F> u = invert(b.action(w.twists[(std::size_t)w.perm[(std::size_t)j]]));
    t = apply_to_axis(t, (std::size_t)j, u);
  }
  std::vector<std::size_t> perm((std::size_t)n);
  std::vector<int> sigma_inv(n);
  for (int i = 0; i < n; ++i) sigma_inv[w.perm[(std::size_t)i]] = i;
  for (int i = 0; i < n; ++i) perm[(std::size_t)i] = (std::size_t)sigma_inv[i];
  t = permute_axes(t, perm);
  return t == trace_tensor;
}

// generic side: eta-invariance of the traces over the generators of each G_n
template <class F>
Report check_eta_invariance(const BoundAlgebra<F>& b, int max_trace_arity = 5) {
  Report rep;
  for (int n = 1; n <= max_trace_arity; ++n) {
    Tensor<F> t = b.p.trace_tensor(n);
    bool ok = true;
    std::string det;
    for (const auto& g : group_generators(b.family, n - 1)) {
      WreathElement w = compute_eta_standard(b.family, n - 1, g);
      if (!trace_invariant_under(b, t, w)) {
        ok = false;
        det = "violated by " + g.str();
        break;
      }
    }
    rep.add("eta invariance of the " + std::to_string(n) + "-trace", ok, det);
  }
  return rep;
}

// family-specific side, per the planar-family characterizations
template <class F>
Report check_family_characterization(const BoundAlgebra<F>& b) {
  Report rep;
  const auto& p = b.p;
  const std::size_t d = (std::size_t)p.dim;
  try {
    (void)invert(p.gram());
  } catch (const SingularError&) {
    rep.add("non-degenerate trace", false);
    return rep;
  }
  NakayamaData<F> nk = nakayama(p);
  rep.add("nakayama is an algebra automorphism", detail_frob::is_algebra_morphism(p, nk.matrix, false));
  if (b.family.is_finite()) {
    const std::int64_t N = b.family.period();
    bool ord = nk.order && (N % *nk.order == 0);
    rep.add("nakayama order divides " + std::to_string(N), ord,
            nk.order ? ("order " + std::to_string(*nk.order)) : "order exceeds bound");
  } else {
    rep.add("nakayama order unconstrained", true,
            nk.order ? ("order " + std::to_string(*nk.order)) : "order exceeds bound");
  }
  if (b.rot) {
    rep.add("rotation generator inverts the nakayama automorphism",
            detail_frob::matrices_equal(mat_mul(*b.rot, nk.matrix), identity_matrix(p.field, d)));
  }
  if (b.refl) {
    const Tensor<F>& u = *b.refl;
    rep.add("involution is involutive", detail_frob::matrices_equal(mat_mul(u, u), identity_matrix(p.field, d)));
    rep.add("involution is an anti-automorphism", detail_frob::is_algebra_morphism(p, u, true));
    bool tr = true;
    for (std::size_t i = 0; tr && i < d; ++i)
      tr = p.field.eq(p.trace_of(apply_matrix(u, p.basis((int)i))), p.trace[i]);
    rep.add("involution preserves the trace", tr);
  }
  return rep;
}

template <class F>
Report check_equivariant(const BoundAlgebra<F>& b) {
  Report rep;
  if (!b.family.companion || b.family.companion->order == 1) {
    rep.add("equivariance", true, "vacuous: trivial companion group");
    return rep;
  }
  if (!b.p.h_action) {
    rep.add("equivariance", false, "companion group configured but no H action supplied");
    return rep;
  }
  Report act = check_action(b);
  for (auto& it : act.items)
    if (it.name.rfind("companion", 0) == 0) rep.items.push_back(it);
  bool tr = true;
  const std::size_t d = (std::size_t)b.p.dim;
  for (int x = 0; tr && x < b.family.companion->order; ++x)
    for (std::size_t i = 0; tr && i < d; ++i)
      tr = b.p.field.eq(b.p.trace_of(apply_matrix((*b.p.h_action)[(std::size_t)x], b.p.basis((int)i))),
                        b.p.trace[i]);
  rep.add("companion action preserves the 1-trace", tr);
  return rep;
}

// Full pipeline. The generic and family-specific verdicts are recorded
// separately and compared; a disagreement is reported as an internal error.
template <class F>
Report check_frobenius(const BoundAlgebra<F>& b, int max_trace_arity = 5) {
  Report rep;
  Report alg = check_algebra(b.p);
  rep.items.insert(rep.items.end(), alg.items.begin(), alg.items.end());

  bool gram_ok = true;
  try {
    (void)invert(b.p.gram());
  } catch (const SingularError&) {
    gram_ok = false;
  }
  rep.add("non-degenerate trace", gram_ok);

  Report act = check_action(b);
  Report chi = gram_ok ? check_chi2_equivariance(b) : Report{};
  Report eta = (gram_ok && act.all_pass()) ? check_eta_invariance(b, max_trace_arity) : Report{};
  rep.items.insert(rep.items.end(), act.items.begin(), act.items.end());
  rep.items.insert(rep.items.end(), chi.items.begin(), chi.items.end());
  rep.items.insert(rep.items.end(), eta.items.begin(), eta.items.end());
  const bool generic = alg.all_pass() && gram_ok && act.all_pass() && chi.all_pass() && eta.all_pass();

  Report fam = check_family_characterization(b);
  rep.items.insert(rep.items.end(), fam.items.begin(), fam.items.end());
  const bool specific = alg.all_pass() && act.all_pass() && chi.all_pass() && fam.all_pass();

  rep.add("generic verdict", generic);
  rep.add("family-specific verdict", specific);
  rep.add("verdict agreement", generic == specific,
          generic == specific ? "" : "internal error: generic and family-specific checks disagree");
  return rep;
}

template <class F>
bool frobenius_passes(const BoundAlgebra<F>& b) {
  Report r = check_frobenius(b);
  bool generic = false, specific = false;
  for (auto& it : r.items) {
    if (it.name == "generic verdict") generic = it.pass;
    if (it.name == "family-specific verdict") specific = it.pass;
  }
  return generic && specific;
}

// ---------------------------------------------------------------------------
// built-in presentations

template <class F>
struct Builtin {
  FrobeniusPresentation<F> p;
  Tensor<F> involution;  // canonical trace-preserving anti-automorphism
  std::string name;
};

template <class F>
Builtin<F> group_algebra(int m, const F& field) {
  Builtin<F> b;
  b.name = "group_algebra_" + std::to_string(m);
  auto& p = b.p;
  p.field = field;
  p.dim = m;
  p.mul = Tensor<F>::zeros(field, {(std::size_t)m, (std::size_t)m, (std::size_t)m});
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) p.mul.at({(std::size_t)i, (std::size_t)j, (std::size_t)((i + j) % m)}) = field.one();
  p.unit.assign((std::size_t)m, field.zero());
  p.unit[0] = field.one();
  p.trace.assign((std::size_t)m, field.zero());
  p.trace[0] = field.one();  // coefficient of the identity
  b.involution = Tensor<F>::zeros(field, {(std::size_t)m, (std::size_t)m});
  for (int i = 0; i < m; ++i) b.involution.at({(std::size_t)((m - i) % m), (std::size_t)i}) = field.one();
  return b;
}

template <class F>
Builtin<F> matrix_algebra_twisted(int d, const std::vector<typename F::Value>& u_diag, const F& field) {
  Builtin<F> b;
  b.name = "matrix_algebra_" + std::to_string(d);
  auto& p = b.p;
  const int D = d * d;
  p.field = field;
  p.dim = D;
  auto id_of = [d](int a, int bb) { return (std::size_t)(a * d + bb); };
  p.mul = Tensor<F>::zeros(field, {(std::size_t)D, (std::size_t)D, (std::size_t)D});
  for (int a = 0; a < d; ++a)
    for (int bb = 0; bb < d; ++bb)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
          if (bb == c) p.mul.at({id_of(a, bb), id_of(c, e), id_of(a, e)}) = field.one();
  p.unit.assign((std::size_t)D, field.zero());
  for (int a = 0; a < d; ++a) p.unit[id_of(a, a)] = field.one();
  // trace(u . x) with u the given diagonal twist
  p.trace.assign((std::size_t)D, field.zero());
  for (int a = 0; a < d; ++a) p.trace[id_of(a, a)] = u_diag[(std::size_t)a];
  // x -> u^{-1} x^T u, an involutive trace-preserving anti-automorphism
  b.involution = Tensor<F>::zeros(field, {(std::size_t)D, (std::size_t)D});
  for (int a = 0; a < d; ++a)
    for (int bb = 0; bb < d; ++bb)
      b.involution.at({id_of(bb, a), id_of(a, bb)}) =
          field.mul(field.inv(u_diag[(std::size_t)bb]), u_diag[(std::size_t)a]);
  return b;
}

template <class F>
Builtin<F> truncated_polynomials(int m, const F& field) {
  Builtin<F> b;
  b.name = "truncated_polynomials_" + std::to_string(m);
  auto& p = b.p;
  p.field = field;
  p.dim = m;
  p.mul = Tensor<F>::zeros(field, {(std::size_t)m, (std::size_t)m, (std::size_t)m});
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i + j < m) p.mul.at({(std::size_t)i, (std::size_t)j, (std::size_t)(i + j)}) = field.one();
  p.unit.assign((std::size_t)m, field.zero());
  p.unit[0] = field.one();
  p.trace.assign((std::size_t)m, field.zero());
  p.trace[(std::size_t)(m - 1)] = field.one();  // top coefficient
  b.involution = identity_matrix(field, (std::size_t)m);
  return b;
}

// Attach the canonical action for the family: the rotation generator acts by
// the inverse of the Nakayama automorphism, the reflection by the built-in
// involution.
template <class F>
BoundAlgebra<F> attach_for_family(const Family& fam, const Builtin<F>& b) {
  FrobeniusPresentation<F> p = b.p;
  p.g0_action.clear();
  if (fam.period() != 1) {
    NakayamaData<F> nk = nakayama(p);
    p.g0_action.push_back({GenParity::Even, invert(nk.matrix)});
  }
  if (fam.has_reflections()) p.g0_action.push_back({GenParity::Odd, b.involution});
  if (fam.companion) {
    if (!p.h_action) {
      std::vector<Tensor<F>> hs((std::size_t)fam.companion->order,
                                identity_matrix(p.field, (std::size_t)p.dim));
      p.h_action = std::move(hs);
    }
  }
  return bind_algebra(fam, p);
}

}  // namespace csft
