#ifndef OPEKIT_FIELDS_HPP
#define OPEKIT_FIELDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "opekit/errors.hpp"

namespace opekit {

enum class Species : std::uint8_t { psi, beta };
enum class Charge : std::uint8_t { plus, minus };
enum class Chirality : std::uint8_t { holomorphic, antiholomorphic };

inline Charge opposite(Charge q) { return q == Charge::plus ? Charge::minus : Charge::plus; }
inline Chirality opposite(Chirality c) {
  return c == Chirality::holomorphic ? Chirality::antiholomorphic : Chirality::holomorphic;
}

/// Flavor index: either a concrete value in 1..n or an abstract name.
/// An abstract name occurring twice in a monomial is an implied sum.
class FlavorIndex {
 public:
  FlavorIndex() : concrete_(true), value_(1) {}
  static FlavorIndex concrete(int value) {
    FlavorIndex ix;
    ix.concrete_ = true;
    ix.value_ = value;
    return ix;
  }
  static FlavorIndex abstract(std::string name) {
    FlavorIndex ix;
    ix.concrete_ = false;
    ix.name_ = std::move(name);
    return ix;
  }

  bool is_concrete() const { return concrete_; }
  bool is_abstract() const { return !concrete_; }
  int value() const { return value_; }
  const std::string& name() const { return name_; }

  friend bool operator==(const FlavorIndex& a, const FlavorIndex& b) {
    if (a.concrete_ != b.concrete_) return false;
    return a.concrete_ ? a.value_ == b.value_ : a.name_ == b.name_;
  }
  friend bool operator!=(const FlavorIndex& a, const FlavorIndex& b) { return !(a == b); }
  friend bool operator<(const FlavorIndex& a, const FlavorIndex& b) {
    if (a.concrete_ != b.concrete_) return a.concrete_;  // concrete sorts first
    if (a.concrete_) return a.value_ < b.value_;
    return a.name_ < b.name_;
  }

  std::string str() const { return concrete_ ? std::to_string(value_) : name_; }

 private:
  bool concrete_;
  int value_ = 0;
  std::string name_;
};

/// One free-field occurrence in a normal-ordered word.
struct FieldSymbol {
  Chirality chirality = Chirality::holomorphic;
  Species species = Species::psi;
  Charge charge = Charge::plus;
  int deriv = 0;  // number of d_z (or d_zbar for antiholomorphic symbols)
  FlavorIndex index;

  bool is_odd() const { return species == Species::psi; }

  friend bool operator==(const FieldSymbol& a, const FieldSymbol& b) {
    return a.chirality == b.chirality && a.species == b.species && a.charge == b.charge &&
           a.deriv == b.deriv && a.index == b.index;
  }
  friend bool operator!=(const FieldSymbol& a, const FieldSymbol& b) { return !(a == b); }
  friend bool operator<(const FieldSymbol& a, const FieldSymbol& b) {
    if (a.chirality != b.chirality) return a.chirality < b.chirality;
    if (a.species != b.species) return a.species < b.species;
    if (a.charge != b.charge) return a.charge < b.charge;
    if (a.deriv != b.deriv) return a.deriv < b.deriv;
    return a.index < b.index;
  }
};

FieldSymbol make_psi(Charge q, FlavorIndex ix, int deriv = 0,
                     Chirality chi = Chirality::holomorphic);
FieldSymbol make_beta(Charge q, FlavorIndex ix, int deriv = 0,
                      Chirality chi = Chirality::holomorphic);

/// Kronecker delta on flavor indices; symmetric, stored with slots ordered.
struct DeltaFactor {
  FlavorIndex left, right;

  DeltaFactor() = default;
  DeltaFactor(FlavorIndex a, FlavorIndex b) {
    if (b < a) std::swap(a, b);
    left = std::move(a);
    right = std::move(b);
  }

  friend bool operator==(const DeltaFactor& a, const DeltaFactor& b) {
    return a.left == b.left && a.right == b.right;
  }
  friend bool operator<(const DeltaFactor& a, const DeltaFactor& b) {
    if (a.left != b.left) return a.left < b.left;
    return a.right < b.right;
  }
};

/// Normal-ordered product of field symbols times a multiset of deltas.
/// Equality is meaningful only after canonicalization.
struct Monomial {
  std::vector<FieldSymbol> factors;
  std::vector<DeltaFactor> deltas;

  bool is_identity() const { return factors.empty() && deltas.empty(); }
  bool is_scalar() const { return factors.empty(); }
  /// Grassmann parity: number of psi symbols mod 2.
  int parity() const;
  /// Parity within one chiral sector (the sectors are graded separately).
  int parity(Chirality chi) const;
  bool purely(Chirality chi) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors == b.factors && a.deltas == b.deltas;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
  friend bool operator<(const Monomial& a, const Monomial& b);
};

/// Coefficient-independent part of canonicalization.  `sign` and
/// `trace_power` (closed delta loops, each contributing one factor of the
/// flavor multiplicity) are reported for the caller to fold into the
/// coefficient; `vanishes` marks exact Grassmann zeros.
struct CanonicalCore {
  Monomial monomial;
  int sign = 1;
  int trace_power = 0;
  bool vanishes = false;
};

/// Reduce a monomial to canonical form: resolve deltas, kill Grassmann
/// zeros, and minimize over dummy relabelings and graded reorderings.
/// Throws malformed_index_error when an abstract index occurs 3+ times.
CanonicalCore canonicalize_core(const Monomial& input);

/// Free abstract indices (occurring exactly once) of a canonical monomial.
std::vector<std::string> free_indices(const Monomial& m);

/// Rename free abstract indices (used by index-swap projections).
Monomial rename_free_index(const Monomial& m, const std::string& from, const std::string& to);

/// Rename the summed (twice-occurring) indices to `prefix`0, `prefix`1, ...
/// so two monomials can be juxtaposed without dummy collisions.
Monomial rename_dummies(const Monomial& m, const std::string& prefix);

}  // namespace opekit

#endif
