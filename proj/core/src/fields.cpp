#include "opekit/fields.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace opekit {

FieldSymbol make_psi(Charge q, FlavorIndex ix, int deriv, Chirality chi) {
  return FieldSymbol{chi, Species::psi, q, deriv, std::move(ix)};
}

FieldSymbol make_beta(Charge q, FlavorIndex ix, int deriv, Chirality chi) {
  return FieldSymbol{chi, Species::beta, q, deriv, std::move(ix)};
}

int Monomial::parity() const {
  int odd = 0;
  for (const auto& f : factors) odd += f.is_odd() ? 1 : 0;
  return odd % 2;
}

int Monomial::parity(Chirality chi) const {
  int odd = 0;
  for (const auto& f : factors) odd += (f.is_odd() && f.chirality == chi) ? 1 : 0;
  return odd % 2;
}

bool Monomial::purely(Chirality chi) const {
  return std::all_of(factors.begin(), factors.end(),
                     [chi](const FieldSymbol& f) { return f.chirality == chi; });
}

bool operator<(const Monomial& a, const Monomial& b) {
  if (a.factors != b.factors)
    return std::lexicographical_compare(a.factors.begin(), a.factors.end(), b.factors.begin(),
                                        b.factors.end());
  return std::lexicographical_compare(a.deltas.begin(), a.deltas.end(), b.deltas.begin(),
                                      b.deltas.end());
}

namespace {

constexpr int kMaxDummies = 9;

std::map<std::string, int> abstract_counts(const Monomial& m) {
  std::map<std::string, int> counts;
  for (const auto& f : m.factors)
    if (f.index.is_abstract()) ++counts[f.index.name()];
  for (const auto& d : m.deltas) {
    if (d.left.is_abstract()) ++counts[d.left.name()];
    if (d.right.is_abstract()) ++counts[d.right.name()];
  }
  return counts;
}

void substitute_index(Monomial& m, const std::string& from, const FlavorIndex& to,
                      std::size_t skip_delta) {
  for (auto& f : m.factors)
    if (f.index.is_abstract() && f.index.name() == from) f.index = to;
  for (std::size_t k = 0; k < m.deltas.size(); ++k) {
    if (k == skip_delta) continue;
    auto& d = m.deltas[k];
    FlavorIndex l = d.left, r = d.right;
    if (l.is_abstract() && l.name() == from) l = to;
    if (r.is_abstract() && r.name() == from) r = to;
    d = DeltaFactor(l, r);
  }
}

/// Stable sort of the factor list; returns the Grassmann sign of the
/// permutation restricted to odd symbols.  All odd symbols anticommute,
/// both chiralities included.  Odd factors must be pairwise distinct
/// (duplicates are exact zeros, filtered before this point).
int sorted_with_sign(std::vector<FieldSymbol>& factors) {
  const std::size_t n = factors.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (factors[i] != factors[j]) return factors[i] < factors[j];
    return i < j;
  });
  std::vector<std::size_t> odd_positions;
  for (std::size_t i : order)
    if (factors[i].is_odd()) odd_positions.push_back(i);
  int inversions = 0;
  for (std::size_t a = 0; a < odd_positions.size(); ++a)
    for (std::size_t b = a + 1; b < odd_positions.size(); ++b)
      if (odd_positions[a] > odd_positions[b]) ++inversions;
  std::vector<FieldSymbol> sorted;
  sorted.reserve(n);
  for (std::size_t i : order) sorted.push_back(factors[i]);
  factors = std::move(sorted);
  return inversions % 2 == 0 ? 1 : -1;
}

std::string canonical_dummy_name(int k) { return std::string("#") + static_cast<char>('a' + k); }

}  // namespace

CanonicalCore canonicalize_core(const Monomial& input) {
  CanonicalCore out;
  Monomial m = input;

  {
    auto counts = abstract_counts(m);
    for (const auto& [name, count] : counts)
      if (count > 2)
        throw malformed_index_error("index '" + name + "' occurs " + std::to_string(count) +
                                    " times in one monomial");
  }

  // Resolve Kronecker deltas.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < m.deltas.size(); ++k) {
      const DeltaFactor d = m.deltas[k];
      if (d.left.is_concrete() && d.right.is_concrete()) {
        if (d.left.value() != d.right.value()) {
          out.vanishes = true;
          return out;
        }
        m.deltas.erase(m.deltas.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
        break;
      }
      if (d.left.is_abstract() && d.right.is_abstract() && d.left.name() == d.right.name()) {
        // closed loop: delta_ii = flavor multiplicity
        m.deltas.erase(m.deltas.begin() + static_cast<std::ptrdiff_t>(k));
        ++out.trace_power;
        changed = true;
        break;
      }
      auto counts = abstract_counts(m);
      auto substitutable = [&](const FlavorIndex& ix) {
        return ix.is_abstract() && counts[ix.name()] == 2;
      };
      if (substitutable(d.left)) {
        m.deltas.erase(m.deltas.begin() + static_cast<std::ptrdiff_t>(k));
        Monomial tmp = std::move(m);
        substitute_index(tmp, d.left.name(), d.right, static_cast<std::size_t>(-1));
        m = std::move(tmp);
        changed = true;
        break;
      }
      if (substitutable(d.right)) {
        m.deltas.erase(m.deltas.begin() + static_cast<std::ptrdiff_t>(k));
        Monomial tmp = std::move(m);
        substitute_index(tmp, d.right.name(), d.left, static_cast<std::size_t>(-1));
        m = std::move(tmp);
        changed = true;
        break;
      }
    }
  }
  std::sort(m.deltas.begin(), m.deltas.end());

  // An odd symbol squared is an exact zero, summed dummy or not.
  for (std::size_t i = 0; i < m.factors.size(); ++i)
    for (std::size_t j = i + 1; j < m.factors.size(); ++j)
      if (m.factors[i].is_odd() && m.factors[i] == m.factors[j]) {
        out.vanishes = true;
        return out;
      }

  // Dummy names surviving delta resolution live on field symbols only.
  std::vector<std::string> dummies;
  {
    auto counts = abstract_counts(m);
    for (const auto& [name, count] : counts)
      if (count == 2) dummies.push_back(name);
  }
  if (dummies.size() > kMaxDummies)
    throw malformed_index_error("too many summed indices in one monomial");

  // Minimize over dummy relabelings; a monomial equal to minus itself
  // under a relabeling is zero.
  std::vector<int> perm(dummies.size());
  std::iota(perm.begin(), perm.end(), 0);
  bool have_min = false;
  std::vector<FieldSymbol> min_factors;
  int min_sign = 1;
  do {
    Monomial candidate = m;
    for (auto& f : candidate.factors) {
      if (!f.index.is_abstract()) continue;
      auto it = std::find(dummies.begin(), dummies.end(), f.index.name());
      if (it != dummies.end())
        f.index = FlavorIndex::abstract(
            canonical_dummy_name(perm[static_cast<std::size_t>(it - dummies.begin())]));
    }
    int sign = sorted_with_sign(candidate.factors);
    if (!have_min || std::lexicographical_compare(candidate.factors.begin(),
                                                  candidate.factors.end(), min_factors.begin(),
                                                  min_factors.end())) {
      have_min = true;
      min_factors = std::move(candidate.factors);
      min_sign = sign;
    } else if (candidate.factors == min_factors && sign != min_sign) {
      out.vanishes = true;
      return out;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Revisit relabelings that tie with the minimum to detect +/- collisions
  // that were seen before the minimum was found.
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Monomial candidate = m;
    for (auto& f : candidate.factors) {
      if (!f.index.is_abstract()) continue;
      auto it = std::find(dummies.begin(), dummies.end(), f.index.name());
      if (it != dummies.end())
        f.index = FlavorIndex::abstract(
            canonical_dummy_name(perm[static_cast<std::size_t>(it - dummies.begin())]));
    }
    int sign = sorted_with_sign(candidate.factors);
    if (candidate.factors == min_factors && sign != min_sign) {
      out.vanishes = true;
      return out;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  out.monomial.factors = std::move(min_factors);
  out.monomial.deltas = std::move(m.deltas);
  out.sign = min_sign;
  return out;
}

std::vector<std::string> free_indices(const Monomial& m) {
  std::vector<std::string> out;
  for (const auto& [name, count] : abstract_counts(m))
    if (count == 1) out.push_back(name);
  return out;
}

Monomial rename_free_index(const Monomial& m, const std::string& from, const std::string& to) {
  Monomial out = m;
  substitute_index(out, from, FlavorIndex::abstract(to), static_cast<std::size_t>(-1));
  return out;
}

Monomial rename_dummies(const Monomial& m, const std::string& prefix) {
  Monomial out = m;
  int next = 0;
  for (const auto& [name, count] : abstract_counts(m))
    if (count == 2)
      substitute_index(out, name, FlavorIndex::abstract(prefix + std::to_string(next++)),
                       static_cast<std::size_t>(-1));
  return out;
}

}  // namespace opekit
