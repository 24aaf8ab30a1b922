#pragma once

// Supported crossed simplicial groups, identified by the planar family they
// model (cyclic, dihedral, their N-fold covers, and the infinite covers),
// optionally multiplied by the one-object groupoid of a finite group H.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "csft/errors.hpp"

namespace csft {

// Multiplication table of a finite group; index 0 is the identity.
struct FiniteGroup {
  int order = 1;
  std::vector<std::vector<int>> table;  // table[a][b] = a*b
  std::vector<std::string> names;

  static FiniteGroup trivial() {
    FiniteGroup g;
    g.order = 1;
    g.table = {{0}};
    g.names = {"e"};
    return g;
  }

  static FiniteGroup cyclic(int k) {
    FiniteGroup g;
    g.order = k;
    g.table.assign(k, std::vector<int>(k));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) g.table[a][b] = (a + b) % k;
    for (int a = 0; a < k; ++a) g.names.push_back("g" + std::to_string(a));
    g.validate();
    return g;
  }

  int mul(int a, int b) const { return table[a][b]; }

  int inverse(int a) const {
    for (int b = 0; b < order; ++b)
      if (table[a][b] == 0) return b;
    throw ValidationError("group element " + std::to_string(a) + " has no inverse");
  }

  // identity, associativity, inverses; throws with the offending indices
  void validate() const {
    if (order < 1 || (int)table.size() != order)
      throw ValidationError("group table has wrong size");
    for (int a = 0; a < order; ++a) {
      if ((int)table[a].size() != order) throw ValidationError("group table row " + std::to_string(a) + " has wrong size");
      for (int b = 0; b < order; ++b)
        if (table[a][b] < 0 || table[a][b] >= order)
          throw ValidationError("group table entry out of range at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    for (int a = 0; a < order; ++a)
      if (table[0][a] != a || table[a][0] != a)
        throw ValidationError("index 0 is not an identity at " + std::to_string(a));
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c)
          if (table[table[a][b]][c] != table[a][table[b][c]])
            throw ValidationError("group table not associative at (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
    for (int a = 0; a < order; ++a) inverse(a);  // throws if missing
  }

  bool operator==(const FiniteGroup& o) const { return order == o.order && table == o.table; }
};

enum class FamilyKind { Cyclic, Dihedral, NCyclic, NDihedral, Paracyclic, Paradihedral };

inline std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Cyclic: return "Cyclic";
    case FamilyKind::Dihedral: return "Dihedral";
    case FamilyKind::NCyclic: return "NCyclic";
    case FamilyKind::NDihedral: return "NDihedral";
    case FamilyKind::Paracyclic: return "Paracyclic";
    case FamilyKind::Paradihedral: return "Paradihedral";
  }
  return "?";
}

struct Family {
  FamilyKind kind = FamilyKind::Cyclic;
  int level = 1;  // N for NCyclic/NDihedral
  std::shared_ptr<const FiniteGroup> companion;  // null = no BH factor

  Family() = default;

  Family(FamilyKind k, int n = 1, std::shared_ptr<const FiniteGroup> h = nullptr)
      : kind(k), level(n), companion(std::move(h)) {
    if (kind == FamilyKind::NCyclic || kind == FamilyKind::NDihedral) {
      if (level < 1) throw ValidationError("level N must be >= 1");
      // N = 1 covers coincide with the base families
      if (level == 1) kind = (kind == FamilyKind::NCyclic) ? FamilyKind::Cyclic : FamilyKind::Dihedral;
    } else {
      level = 1;
    }
    if (companion) companion->validate();
  }

  static Family cyclic() { return Family(FamilyKind::Cyclic); }
  static Family dihedral() { return Family(FamilyKind::Dihedral); }
  static Family ncyclic(int n) { return Family(FamilyKind::NCyclic, n); }
  static Family ndihedral(int n) { return Family(FamilyKind::NDihedral, n); }
  static Family paracyclic() { return Family(FamilyKind::Paracyclic); }
  static Family paradihedral() { return Family(FamilyKind::Paradihedral); }

  Family with_companion(std::shared_ptr<const FiniteGroup> h) const {
    Family f = *this;
    f.companion = std::move(h);
    if (f.companion) f.companion->validate();
    return f;
  }

  // reflections (orientation-reversing morphisms) exist only in these kinds
  bool has_reflections() const {
    return kind == FamilyKind::Dihedral || kind == FamilyKind::NDihedral ||
           kind == FamilyKind::Paradihedral;
  }

  bool is_finite() const {
    return kind != FamilyKind::Paracyclic && kind != FamilyKind::Paradihedral;
  }

  // deck-transformation period of the lift model: lifts of maps into [m] are
  // identified modulo translation by period()*(m+1); 0 means no quotient
  std::int64_t period() const {
    switch (kind) {
      case FamilyKind::Cyclic:
      case FamilyKind::Dihedral: return 1;
      case FamilyKind::NCyclic:
      case FamilyKind::NDihedral: return level;
      default: return 0;
    }
  }

  int h_order() const { return companion ? companion->order : 1; }

  int h_mul(int a, int b) const { return companion ? companion->mul(a, b) : 0; }
  int h_inverse(int a) const { return companion ? companion->inverse(a) : 0; }

  std::int64_t group_order(int n) const {
    if (!is_finite()) throw EnumerationError("automorphism groups of " + to_string(kind) + " are infinite");
    std::int64_t base = period() * (n + 1);
    if (has_reflections()) base *= 2;
    return base * h_order();
  }

  std::string name() const {
    std::string s = to_string(kind);
    if (kind == FamilyKind::NCyclic || kind == FamilyKind::NDihedral)
      s += ":" + std::to_string(level);
    if (companion) s += "xH" + std::to_string(companion->order);
    return s;
  }

  bool operator==(const Family& o) const {
    if (kind != o.kind || level != o.level) return false;
    if (!companion != !o.companion) return false;
    return !companion || *companion == *o.companion;
  }
};

}  // namespace csft
