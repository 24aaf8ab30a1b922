#pragma once

// Dense multi-index arrays over an exact field, row-major. Shapes stay small
// (every axis is the algebra dimension), so everything is plain loops.

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "csft/errors.hpp"

namespace csft {

template <class F>
struct Tensor {
  using Value = typename F::Value;

  F field;
  std::vector<std::size_t> shape;
  std::vector<Value> data;

  Tensor() = default;

  static Tensor zeros(const F& f, std::vector<std::size_t> shp) {
    Tensor t;
    t.field = f;
    t.shape = std::move(shp);
    std::size_t n = 1;
    for (auto d : t.shape) n *= d;
    t.data.assign(n, f.zero());
    return t;
  }

  static Tensor scalar(const F& f, Value v) {
    Tensor t;
    t.field = f;
    t.data = {std::move(v)};
    return t;
  }

  std::size_t rank() const { return shape.size(); }
  std::size_t size() const { return data.size(); }

  std::size_t offset(const std::vector<std::size_t>& idx) const {
    std::size_t off = 0;
    for (std::size_t a = 0; a < shape.size(); ++a) off = off * shape[a] + idx[a];
    return off;
  }

  Value& at(const std::vector<std::size_t>& idx) { return data[offset(idx)]; }
  const Value& at(const std::vector<std::size_t>& idx) const { return data[offset(idx)]; }

  bool operator==(const Tensor& o) const {
    if (shape != o.shape || data.size() != o.data.size()) return false;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (!field.eq(data[i], o.data[i])) return false;
    return true;
  }
};

namespace detail {

inline void next_index(std::vector<std::size_t>& idx, const std::vector<std::size_t>& shape, bool& done) {
  for (std::size_t a = shape.size(); a-- > 0;) {
    if (++idx[a] < shape[a]) return;
    idx[a] = 0;
  }
  done = true;
}

}  // namespace detail

// Pairwise contraction of axes1 of t1 against axes2 of t2; the result keeps
// t1's free axes followed by t2's, in order.
template <class F>
Tensor<F> contract(const Tensor<F>& t1, const std::vector<std::size_t>& axes1,
                   const Tensor<F>& t2, const std::vector<std::size_t>& axes2) {
  if (axes1.size() != axes2.size()) throw DomainError("contraction axis lists differ in length");
  for (std::size_t k = 0; k < axes1.size(); ++k)
    if (t1.shape[axes1[k]] != t2.shape[axes2[k]]) throw DomainError("contracted axes have different sizes");
  std::vector<char> used1(t1.rank(), 0), used2(t2.rank(), 0);
  for (auto a : axes1) used1[a] = 1;
  for (auto a : axes2) used2[a] = 1;

  std::vector<std::size_t> free1, free2, out_shape, sum_shape;
  for (std::size_t a = 0; a < t1.rank(); ++a)
    if (!used1[a]) { free1.push_back(a); out_shape.push_back(t1.shape[a]); }
  for (std::size_t a = 0; a < t2.rank(); ++a)
    if (!used2[a]) { free2.push_back(a); out_shape.push_back(t2.shape[a]); }
  for (auto a : axes1) sum_shape.push_back(t1.shape[a]);

  Tensor<F> out = Tensor<F>::zeros(t1.field, out_shape);
  std::vector<std::size_t> oidx(out_shape.size(), 0);
  bool odone = out_shape.empty() ? false : false;
  std::vector<std::size_t> i1(t1.rank(), 0), i2(t2.rank(), 0);
  std::size_t pos = 0;
  do {
    for (std::size_t k = 0; k < free1.size(); ++k) i1[free1[k]] = oidx[k];
    for (std::size_t k = 0; k < free2.size(); ++k) i2[free2[k]] = oidx[free1.size() + k];
    typename F::Value acc = t1.field.zero();
    std::vector<std::size_t> s(sum_shape.size(), 0);
    bool sdone = false;
    do {
      for (std::size_t k = 0; k < axes1.size(); ++k) { i1[axes1[k]] = s[k]; i2[axes2[k]] = s[k]; }
      acc = t1.field.add(acc, t1.field.mul(t1.at(i1), t2.at(i2)));
      if (sum_shape.empty()) break;
      detail::next_index(s, sum_shape, sdone);
    } while (!sdone);
    out.data[pos++] = std::move(acc);
    if (out_shape.empty()) break;
    detail::next_index(oidx, out_shape, odone);
  } while (!odone);
  return out;
}

template <class F>
Tensor<F> tensor_product(const Tensor<F>& a, const Tensor<F>& b) {
  return contract(a, {}, b, {});
}

// partial trace over two axes of equal size
template <class F>
Tensor<F> trace_axes(const Tensor<F>& t, std::size_t ax1, std::size_t ax2) {
  if (ax1 == ax2 || t.shape[ax1] != t.shape[ax2]) throw DomainError("bad trace axes");
  std::vector<std::size_t> out_shape;
  for (std::size_t a = 0; a < t.rank(); ++a)
    if (a != ax1 && a != ax2) out_shape.push_back(t.shape[a]);
  Tensor<F> out = Tensor<F>::zeros(t.field, out_shape);
  std::vector<std::size_t> oidx(out_shape.size(), 0), idx(t.rank(), 0);
  bool done = false;
  std::size_t pos = 0;
  do {
    std::size_t k = 0;
    for (std::size_t a = 0; a < t.rank(); ++a)
      if (a != ax1 && a != ax2) idx[a] = oidx[k++];
    typename F::Value acc = t.field.zero();
    for (std::size_t d = 0; d < t.shape[ax1]; ++d) {
      idx[ax1] = idx[ax2] = d;
      acc = t.field.add(acc, t.at(idx));
    }
    out.data[pos++] = std::move(acc);
    if (out_shape.empty()) break;
    detail::next_index(oidx, out_shape, done);
  } while (!done);
  return out;
}

// axis permutation: axis a of the result is axis perm[a] of the input
template <class F>
Tensor<F> permute_axes(const Tensor<F>& t, const std::vector<std::size_t>& perm) {
  if (perm.size() != t.rank()) throw DomainError("permutation length mismatch");
  std::vector<std::size_t> out_shape(t.rank());
  for (std::size_t a = 0; a < t.rank(); ++a) out_shape[a] = t.shape[perm[a]];
  Tensor<F> out = Tensor<F>::zeros(t.field, out_shape);
  if (t.rank() == 0) { out.data = t.data; return out; }
  std::vector<std::size_t> oidx(t.rank(), 0), idx(t.rank(), 0);
  bool done = false;
  std::size_t pos = 0;
  do {
    for (std::size_t a = 0; a < t.rank(); ++a) idx[perm[a]] = oidx[a];
    out.data[pos++] = t.at(idx);
    detail::next_index(oidx, out_shape, done);
  } while (!done);
  return out;
}

template <class F>
Tensor<F> identity_matrix(const F& f, std::size_t d) {
  Tensor<F> t = Tensor<F>::zeros(f, {d, d});
  for (std::size_t i = 0; i < d; ++i) t.at({i, i}) = f.one();
  return t;
}

template <class F>
Tensor<F> mat_mul(const Tensor<F>& a, const Tensor<F>& b) {
  return contract(a, {1}, b, {0});
}

// Gauss-Jordan inverse of a square matrix
template <class F>
Tensor<F> invert(const Tensor<F>& m) {
  if (m.rank() != 2 || m.shape[0] != m.shape[1]) throw DomainError("invert expects a square matrix");
  const std::size_t d = m.shape[0];
  const F& f = m.field;
  Tensor<F> a = m, inv = identity_matrix(f, d);
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && f.is_zero(a.at({piv, col}))) ++piv;
    if (piv == d) throw SingularError("matrix is singular");
    if (piv != col)
      for (std::size_t j = 0; j < d; ++j) {
        std::swap(a.at({piv, j}), a.at({col, j}));
        std::swap(inv.at({piv, j}), inv.at({col, j}));
      }
    const auto pinv = f.inv(a.at({col, col}));
    for (std::size_t j = 0; j < d; ++j) {
      a.at({col, j}) = f.mul(a.at({col, j}), pinv);
      inv.at({col, j}) = f.mul(inv.at({col, j}), pinv);
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || f.is_zero(a.at({r, col}))) continue;
      const auto factor = a.at({r, col});
      for (std::size_t j = 0; j < d; ++j) {
        a.at({r, j}) = f.sub(a.at({r, j}), f.mul(factor, a.at({col, j})));
        inv.at({r, j}) = f.sub(inv.at({r, j}), f.mul(factor, inv.at({col, j})));
      }
    }
  }
  return inv;
}

}  // namespace csft
