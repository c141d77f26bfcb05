#include "opekit/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace opekit {

namespace {

const ExprContext<GaussianRational>& nctx() {
  static const ExprContext<GaussianRational> c{GaussianRational(Rational(0))};
  // flavor_trace is irrelevant for fully concrete indices
  return c;
}

GaussianRational gi() { return GaussianRational::i(); }

}  // namespace

GMat zero_matrix(int n) {
  return GMat(static_cast<std::size_t>(n),
              std::vector<GaussianRational>(static_cast<std::size_t>(n)));
}

GMat matrix_product(const GMat& a, const GMat& b) {
  const std::size_t n = a.size();
  GMat out = zero_matrix(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

GMat matrix_commutator(const GMat& a, const GMat& b) {
  GMat ab = matrix_product(a, b), ba = matrix_product(b, a);
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ab[i][j] -= ba[i][j];
  return ab;
}

GaussianRational matrix_trace(const GMat& a) {
  GaussianRational t;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

bool is_hermitian(const GMat& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j] != a[j][i].conj()) return false;
  return true;
}

Rational trace_normalization(Family f) {
  switch (f) {
    case Family::su:
      return Rational(1);
    case Family::so:
      return Rational(2);
    case Family::sp:
      return Rational(1);
  }
  throw std::invalid_argument("unknown family");
}

int flavor_multiplicity(Family f, int n) { return f == Family::sp ? 2 * n : n; }

GMat symplectic_form(int n) {
  GMat omega = zero_matrix(2 * n);
  for (int i = 1; i <= 2 * n; ++i) {
    int j = 2 * n + 1 - i;
    omega[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
        GaussianRational(Rational(i <= n ? 1 : -1));
  }
  return omega;
}

namespace {

GMat unit_matrix(int n, int r, int c, GaussianRational v) {
  GMat m = zero_matrix(n);
  m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = std::move(v);
  return m;
}

/// Hermitian basis of gl(n): E_jj, E_jk + E_kj, i(E_jk - E_kj).
std::vector<GMat> hermitian_gl_basis(int n) {
  std::vector<GMat> out;
  for (int j = 0; j < n; ++j) out.push_back(unit_matrix(n, j, j, GaussianRational(1)));
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      GMat s = unit_matrix(n, j, k, GaussianRational(1));
      s[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = GaussianRational(1);
      out.push_back(s);
      GMat a = unit_matrix(n, j, k, gi());
      a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
          GaussianRational() - gi();
      out.push_back(a);
    }
  return out;
}

std::vector<Rational> vectorize(const GMat& m) {
  std::vector<Rational> v;
  v.reserve(2 * m.size() * m.size());
  for (const auto& row : m)
    for (const auto& e : row) {
      v.push_back(e.re);
      v.push_back(e.im);
    }
  return v;
}

/// Greedy extraction of a maximal linearly independent subset, exact.
/// Keeps an echelon basis ordered by leading position so one reduction
/// pass per candidate is sound.
std::vector<GMat> independent_subset(const std::vector<GMat>& candidates) {
  std::vector<GMat> picked;
  std::vector<std::pair<std::size_t, std::vector<Rational>>> rows;  // (lead, row)
  for (const auto& m : candidates) {
    std::vector<Rational> v = vectorize(m);
    for (const auto& [lead, r] : rows) {
      if (v[lead] == 0) continue;
      Rational f = v[lead] / r[lead];
      for (std::size_t k = lead; k < v.size(); ++k) v[k] -= f * r[k];
    }
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] == 0) ++lead;
    if (lead == v.size()) continue;
    auto pos = std::lower_bound(rows.begin(), rows.end(), lead,
                                [](const auto& row, std::size_t l) { return row.first < l; });
    rows.insert(pos, {lead, std::move(v)});
    picked.push_back(m);
  }
  return picked;
}

GMat conj_transpose_wrt_omega(const GMat& x, const GMat& omega) {
  // Omega^{-1} x^T Omega, with Omega^{-1} = -Omega (Omega^2 = -1)
  const int n = static_cast<int>(x.size());
  GMat xt = zero_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      xt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          x[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  GMat neg_omega = omega;
  for (auto& row : neg_omega)
    for (auto& e : row) e = GaussianRational() - e;
  return matrix_product(matrix_product(neg_omega, xt), omega);
}

}  // namespace

std::vector<GMat> generator_basis(Family f, int n) {
  switch (f) {
    case Family::su: {
      if (n < 2 || n > 4) throw std::invalid_argument("su oracle supports n in 2..4");
      std::vector<GMat> out;
      // off-diagonal pairs
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          GMat s = unit_matrix(n, j, k, GaussianRational(1));
          s[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = GaussianRational(1);
          out.push_back(s);
          GMat a = unit_matrix(n, j, k, gi());
          a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
              GaussianRational() - gi();
          out.push_back(a);
        }
      // Cartan: E_jj - E_{j+1,j+1}
      for (int j = 0; j + 1 < n; ++j) {
        GMat d = unit_matrix(n, j, j, GaussianRational(1));
        d[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(j + 1)] =
            GaussianRational(-1);
        out.push_back(d);
      }
      return out;
    }
    case Family::so: {
      if (n < 2 || n > 4) throw std::invalid_argument("so oracle supports n in 2..4");
      std::vector<GMat> out;
      // i(E_jk - E_kj): Hermitian, tr(t t) = 2
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          GMat a = unit_matrix(n, j, k, gi());
          a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
              GaussianRational() - gi();
          out.push_back(a);
        }
      return out;
    }
    case Family::sp: {
      if (n < 1 || n > 2) throw std::invalid_argument("sp oracle supports n in 1..2");
      GMat omega = symplectic_form(n);
      std::vector<GMat> projected;
      for (const auto& x : hermitian_gl_basis(2 * n)) {
        // P(x) = x - Omega^{-1} x^T Omega kills the non-symplectic part
        GMat p = x;
        GMat corr = conj_transpose_wrt_omega(x, omega);
        for (std::size_t i = 0; i < p.size(); ++i)
          for (std::size_t j = 0; j < p.size(); ++j) p[i][j] -= corr[i][j];
        bool zero = true;
        for (const auto& row : p)
          for (const auto& e : row)
            if (!e.is_zero()) zero = false;
        if (!zero) projected.push_back(std::move(p));
      }
      std::vector<GMat> basis = independent_subset(projected);
      if (static_cast<int>(basis.size()) != n * (2 * n + 1))
        throw std::logic_error("sp basis has wrong dimension");
      return basis;
    }
  }
  throw std::invalid_argument("unknown family");
}

RMat gram_matrix(const std::vector<GMat>& basis, const Rational& lambda) {
  const std::size_t d = basis.size();
  RMat g(d, std::vector<Rational>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      GaussianRational t = matrix_trace(matrix_product(basis[a], basis[b]));
      if (t.im != 0) throw std::logic_error("gram matrix entry not real");
      g[a][b] = t.re / lambda;
    }
  return g;
}

RMat invert_matrix(RMat a) {
  const std::size_t n = a.size();
  RMat inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::logic_error("singular gram matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rational f = a[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col][k] /= f;
      inv[col][k] /= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational m = a[r][col];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= m * a[col][k];
        inv[r][k] -= m * inv[col][k];
      }
    }
  }
  return inv;
}

namespace {

/// Coordinates of a Hermitian x in the basis via the Gram inverse.
std::vector<Rational> coordinates(const GMat& x, const std::vector<GMat>& basis, const RMat& ginv,
                                  const Rational& lambda) {
  const std::size_t d = basis.size();
  std::vector<Rational> dots(d);
  for (std::size_t b = 0; b < d; ++b) {
    GaussianRational t = matrix_trace(matrix_product(x, basis[b]));
    if (t.im != 0) throw std::logic_error("pairing of Hermitian matrices must be real");
    dots[b] = t.re / lambda;
  }
  std::vector<Rational> coords(d, Rational(0));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) coords[a] += ginv[a][b] * dots[b];
  return coords;
}

struct AlgebraData {
  std::vector<GMat> basis;
  Rational lambda;
  RMat gram, ginv;
  // c[a][b][g]: [u_a, u_b] = i * sum_g c[a][b][g] u_g  (real structure constants)
  std::vector<std::vector<std::vector<Rational>>> f;
};

AlgebraData algebra_data(Family fam, int n) {
  AlgebraData d;
  d.basis = generator_basis(fam, n);
  d.lambda = trace_normalization(fam);
  d.gram = gram_matrix(d.basis, d.lambda);
  d.ginv = invert_matrix(d.gram);
  const std::size_t dim = d.basis.size();
  d.f.assign(dim, std::vector<std::vector<Rational>>(dim));
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      GMat comm = matrix_commutator(d.basis[a], d.basis[b]);
      // [u_a, u_b] = i * X with X Hermitian; tr(X u_c) real
      GMat x = comm;
      for (auto& row : x)
        for (auto& e : row) e = e / gi();
      d.f[a][b] = coordinates(x, d.basis, d.ginv, d.lambda);
    }
  return d;
}

}  // namespace

Rational adjoint_casimir_numeric(Family fam, int n) {
  AlgebraData d = algebra_data(fam, n);
  const std::size_t dim = d.basis.size();
  // K_ab = tr(ad_a ad_b) over the lambda-metric; require K = C2(G) * G.
  Rational c2;
  bool have = false;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      Rational k(0);
      for (std::size_t g = 0; g < dim; ++g)
        for (std::size_t e = 0; e < dim; ++e) k += d.f[a][g][e] * d.f[b][e][g];
      k = -k;  // two factors of i from the convention [u,u] = i f u
      if (!have && d.gram[a][b] != 0) {
        c2 = k / d.gram[a][b];
        have = true;
      }
      if (have && k != c2 * d.gram[a][b])
        throw std::logic_error("Killing form not proportional to the trace form");
    }
  if (!have) throw std::logic_error("degenerate algebra");
  return c2;
}

bool structure_constants_antisymmetric(Family fam, int n) {
  AlgebraData d = algebra_data(fam, n);
  const std::size_t dim = d.basis.size();
  // lowered f_abc = <[u_a,u_b], u_c>/(i lambda); totally antisymmetric
  auto lowered = [&](std::size_t a, std::size_t b, std::size_t c) {
    GaussianRational t =
        matrix_trace(matrix_product(matrix_commutator(d.basis[a], d.basis[b]), d.basis[c]));
    if (t.re != 0) throw std::logic_error("commutator pairing not imaginary");
    return t.im / d.lambda;
  };
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t c = 0; c < dim; ++c) {
        Rational f = lowered(a, b, c);
        if (f != -lowered(b, a, c)) return false;
        if (f != -lowered(a, c, b)) return false;
      }
  return true;
}

CompletenessResult completeness_numeric(Family fam, int n) {
  AlgebraData d = algebra_data(fam, n);
  const int m = flavor_multiplicity(fam, n);
  const std::size_t dim = d.basis.size();
  const std::size_t mu = static_cast<std::size_t>(m);

  // S_ijkl = sum_ab (G^-1)_ab u^a_ij u^b_kl, accumulated over the sparse
  // nonzero entries of each generator.
  std::vector<GaussianRational> s(mu * mu * mu * mu);
  auto at = [mu](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return ((i * mu + j) * mu + k) * mu + l;
  };
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      if (d.ginv[a][b] == 0) continue;
      GaussianRational w(d.ginv[a][b]);
      for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) {
          if (d.basis[a][i][j].is_zero()) continue;
          GaussianRational left = w * d.basis[a][i][j];
          for (std::size_t k = 0; k < mu; ++k)
            for (std::size_t l = 0; l < mu; ++l) {
              if (d.basis[b][k][l].is_zero()) continue;
              s[at(i, j, k, l)] += left * d.basis[b][k][l];
            }
        }
    }

  GMat omega = fam == Family::sp ? symplectic_form(n) : GMat{};
  auto rule = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l)
      -> GaussianRational {
    auto delta = [](std::size_t x, std::size_t y) { return Rational(x == y ? 1 : 0); };
    if (fam == Family::su)
      return GaussianRational(delta(i, l) * delta(j, k) -
                              delta(i, j) * delta(k, l) / Rational(n));
    if (fam == Family::so)
      return GaussianRational(delta(i, l) * delta(j, k) - delta(i, k) * delta(j, l));
    GaussianRational val = GaussianRational(delta(i, l) * delta(j, k)) - omega[i][k] * omega[j][l];
    return val / GaussianRational(2);
  };

  CompletenessResult out;
  out.matches_rule = true;
  out.casimir2_fund = Rational(0);
  out.level_times_dim = Rational(0);
  for (std::size_t i = 0; i < mu; ++i)
    for (std::size_t j = 0; j < mu; ++j)
      for (std::size_t k = 0; k < mu; ++k)
        for (std::size_t l = 0; l < mu; ++l)
          if (s[at(i, j, k, l)] != rule(i, j, k, l)) out.matches_rule = false;
  for (std::size_t j = 0; j < mu; ++j) {
    const GaussianRational& v = s[at(0, j, j, 0)];  // sum_j S_0jj0 = C2(N)
    if (!v.is_real()) out.matches_rule = false;
    out.casimir2_fund += v.re;
  }
  for (std::size_t i = 0; i < mu; ++i)
    for (std::size_t j = 0; j < mu; ++j) {
      const GaussianRational& v = s[at(i, j, j, i)];  // sum_ij S_ijji = C(N) |G|
      if (!v.is_real()) out.matches_rule = false;
      out.level_times_dim += v.re;
    }
  return out;
}

NumericExpr matrix_current(const GMat& u) {
  NumericExpr out;
  const int m = static_cast<int>(u.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const GaussianRational& c = u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (c.is_zero()) continue;
      for (Species s : {Species::psi, Species::beta}) {
        auto mk = s == Species::psi ? make_psi : make_beta;
        Monomial mono;
        mono.factors = {mk(Charge::minus, FlavorIndex::concrete(i + 1), 0,
                           Chirality::holomorphic),
                        mk(Charge::plus, FlavorIndex::concrete(j + 1), 0,
                           Chirality::holomorphic)};
        out.accumulate(std::move(mono), c, nctx());
      }
    }
  return out;
}

namespace {

NumericExpr sugawara_from_data(const AlgebraData& d, const Rational& casimir2_adjoint) {
  const std::size_t dim = d.basis.size();
  std::vector<NumericExpr> currents;
  currents.reserve(dim);
  for (const auto& u : d.basis) currents.push_back(matrix_current(u));
  NumericExpr sum;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      if (d.ginv[a][b] == 0) continue;
      NumericExpr np = normal_product(currents[a], currents[b], nctx());
      sum = sum + GaussianRational(d.ginv[a][b]) * np;
    }
  return GaussianRational(Rational(1) / casimir2_adjoint) * sum;
}

NumericExpr word_numeric(std::vector<FieldSymbol> fs, GaussianRational c = GaussianRational(1)) {
  Monomial m;
  m.factors = std::move(fs);
  return NumericExpr::from_monomial(std::move(m), std::move(c), nctx());
}

struct NumericMultiplet {
  NumericExpr h, j, sp, sm, jp, jm, shp, shm;
};

NumericMultiplet multiplet_numeric(int m) {
  NumericMultiplet k;
  auto conc = [](int i) { return FlavorIndex::concrete(i); };
  for (int i = 1; i <= m; ++i) {
    k.h = k.h + word_numeric({make_psi(Charge::plus, conc(i)), make_psi(Charge::minus, conc(i))});
    k.j = k.j + word_numeric({make_beta(Charge::plus, conc(i)), make_beta(Charge::minus, conc(i))});
    k.sp = k.sp +
           word_numeric({make_psi(Charge::plus, conc(i)), make_beta(Charge::minus, conc(i))});
    k.sm = k.sm + word_numeric({make_psi(Charge::minus, conc(i)), make_beta(Charge::plus, conc(i))},
                               GaussianRational(-1));
    k.jp = k.jp +
           word_numeric({make_beta(Charge::minus, conc(i)), make_beta(Charge::minus, conc(i))});
    k.jm = k.jm +
           word_numeric({make_beta(Charge::plus, conc(i)), make_beta(Charge::plus, conc(i))});
    k.shp = k.shp +
            word_numeric({make_psi(Charge::minus, conc(i)), make_beta(Charge::minus, conc(i))});
    k.shm = k.shm +
            word_numeric({make_psi(Charge::plus, conc(i)), make_beta(Charge::plus, conc(i))});
  }
  return k;
}

}  // namespace

NumericExpr sugawara_numeric(Family fam, int n) {
  AlgebraData d = algebra_data(fam, n);
  Rational c2 = adjoint_casimir_numeric(fam, n);
  return sugawara_from_data(d, c2);
}

NumericExpr free_tensor_numeric(int multiplicity) {
  NumericExpr kin;
  auto conc = [](int i) { return FlavorIndex::concrete(i); };
  for (int i = 1; i <= multiplicity; ++i) {
    kin = kin + word_numeric({make_psi(Charge::minus, conc(i)), make_psi(Charge::plus, conc(i), 1)});
    kin = kin + word_numeric({make_psi(Charge::plus, conc(i)), make_psi(Charge::minus, conc(i), 1)});
    kin = kin + word_numeric({make_beta(Charge::minus, conc(i)), make_beta(Charge::plus, conc(i), 1)});
    kin = kin + word_numeric({make_beta(Charge::plus, conc(i)), make_beta(Charge::minus, conc(i), 1)},
                             GaussianRational(-1));
  }
  return GaussianRational(Rational(-1, 2)) * kin;
}

NumericExpr gl11_tensor_numeric(const Rational& level, int multiplicity) {
  NumericMultiplet k = multiplet_numeric(multiplicity);
  auto np = [&](const NumericExpr& a, const NumericExpr& b) {
    return normal_product(a, b, nctx());
  };
  NumericExpr first = np(k.j, k.j) - np(k.h, k.h) + np(k.sp, k.sm) - np(k.sm, k.sp);
  NumericExpr e = k.h - k.j;
  NumericExpr second = np(e, e);
  return GaussianRational(Rational(-1) / (2 * level)) * first +
         GaussianRational(Rational(1) / (2 * level * level)) * second;
}

NumericExpr osp22_tensor_numeric(const Rational& level, int multiplicity) {
  NumericMultiplet k = multiplet_numeric(multiplicity);
  auto np = [&](const NumericExpr& a, const NumericExpr& b) {
    return normal_product(a, b, nctx());
  };
  NumericExpr casimir = np(k.j, k.j) - np(k.h, k.h);
  casimir = casimir - GaussianRational(Rational(1, 2)) * (np(k.jp, k.jm) + np(k.jm, k.jp));
  casimir = casimir + np(k.sp, k.sm) - np(k.sm, k.sp);
  casimir = casimir + np(k.shm, k.shp) - np(k.shp, k.shm);
  return GaussianRational(Rational(1) / (2 * (Rational(2) - level))) * casimir;
}

NumericExpr osp22_sp_tensor_numeric(int n) {
  const int m = 2 * n;
  NumericMultiplet k = multiplet_numeric(m);
  GMat omega = symplectic_form(n);
  auto conc = [](int i) { return FlavorIndex::concrete(i); };
  NumericExpr pp, pm, qp, qm;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      const GaussianRational& o =
          omega[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
      if (o.is_zero()) continue;
      pp = pp + word_numeric({make_psi(Charge::minus, conc(i)), make_psi(Charge::minus, conc(j))},
                             o);
      pm = pm + word_numeric({make_psi(Charge::plus, conc(i)), make_psi(Charge::plus, conc(j))},
                             o);
      qp = qp + word_numeric({make_psi(Charge::minus, conc(i)), make_beta(Charge::minus, conc(j))},
                             o);
      qm = qm + word_numeric({make_psi(Charge::plus, conc(i)), make_beta(Charge::plus, conc(j))},
                             o);
    }
  auto np = [&](const NumericExpr& a, const NumericExpr& b) {
    return normal_product(a, b, nctx());
  };
  NumericExpr casimir = np(k.h, k.h) - np(k.j, k.j);
  casimir = casimir - GaussianRational(Rational(1, 2)) * (np(pp, pm) + np(pm, pp));
  casimir = casimir - (np(k.sp, k.sm) - np(k.sm, k.sp));
  casimir = casimir - (np(qm, qp) - np(qp, qm));
  Rational level(-m);
  return GaussianRational(Rational(1) / (2 * (Rational(2) - level))) * casimir;
}

NumericExpr expand_flavors(const SymbolicExpr& e, const Rational& n_value, int multiplicity) {
  NumericExpr out;
  for (const auto& [mono, coeff] : e.terms()) {
    if (!free_indices(mono).empty())
      throw std::invalid_argument("expand_flavors: free index remains");
    GaussianRational value(coeff.eval(n_value));  // may throw pole_error

    // collect dummy names
    std::vector<std::string> dummies;
    for (const auto& f : mono.factors)
      if (f.index.is_abstract()) {
        bool seen = false;
        for (const auto& d : dummies) seen = seen || d == f.index.name();
        if (!seen) dummies.push_back(f.index.name());
      }
    std::vector<int> assign(dummies.size(), 1);
    while (true) {
      Monomial concrete = mono;
      for (auto& f : concrete.factors) {
        if (!f.index.is_abstract()) continue;
        for (std::size_t d = 0; d < dummies.size(); ++d)
          if (f.index.name() == dummies[d]) f.index = FlavorIndex::concrete(assign[d]);
      }
      out.accumulate(std::move(concrete), value, nctx());
      std::size_t pos = 0;
      while (pos < assign.size() && assign[pos] == multiplicity) assign[pos++] = 1;
      if (pos == assign.size()) break;
      ++assign[pos];
    }
  }
  return out;
}

bool numeric_commute_check(Family fam, int n) {
  AlgebraData d = algebra_data(fam, n);
  const int m = flavor_multiplicity(fam, n);
  NumericMultiplet k = multiplet_numeric(m);
  std::vector<const NumericExpr*> members;
  if (fam == Family::su)
    members = {&k.h, &k.j, &k.sp, &k.sm};
  else
    members = {&k.h, &k.j, &k.sp, &k.sm, &k.jp, &k.jm, &k.shp, &k.shm};
  for (const auto& u : d.basis) {
    NumericExpr current = matrix_current(u);
    for (const NumericExpr* member : members)
      if (!ope(current, *member, kFullDepth, nctx()).regular()) return false;
  }
  return true;
}

namespace {

struct SpMultiplet {
  NumericExpr h, j, sp, sm, pp, pm, qp, qm;
};

/// The osp(2|2)_{-2n} members: delta-contracted gl(1|1) part plus the
/// symplectic-form pair currents.
SpMultiplet sp_multiplet_numeric(int n) {
  const int m = 2 * n;
  NumericMultiplet base = multiplet_numeric(m);
  SpMultiplet k;
  k.h = base.h;
  k.j = base.j;
  k.sp = base.sp;
  k.sm = base.sm;
  GMat omega = symplectic_form(n);
  auto conc = [](int i) { return FlavorIndex::concrete(i); };
  for (int i = 1; i <= m; ++i)
    for (int j2 = 1; j2 <= m; ++j2) {
      const GaussianRational& o =
          omega[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j2 - 1)];
      if (o.is_zero()) continue;
      k.pp = k.pp + word_numeric({make_psi(Charge::minus, conc(i)),
                                  make_psi(Charge::minus, conc(j2))},
                                 o);
      k.pm = k.pm + word_numeric({make_psi(Charge::plus, conc(i)),
                                  make_psi(Charge::plus, conc(j2))},
                                 o);
      k.qp = k.qp + word_numeric({make_psi(Charge::minus, conc(i)),
                                  make_beta(Charge::minus, conc(j2))},
                                 o);
      k.qm = k.qm + word_numeric({make_psi(Charge::plus, conc(i)),
                                  make_beta(Charge::plus, conc(j2))},
                                 o);
    }
  return k;
}

}  // namespace

std::vector<std::vector<std::vector<Rational>>> sp_beta_numeric(int n) {
  SpMultiplet k = sp_multiplet_numeric(n);
  auto lr = [&](const NumericExpr& a, const NumericExpr& b) {
    return NumericExpr::formal_product(a, b.mirrored(nctx()), nctx());
  };
  NumericExpr okk = lr(k.h, k.h) - lr(k.j, k.j);
  okk = okk - GaussianRational(Rational(1, 2)) * (lr(k.pp, k.pm) + lr(k.pm, k.pp));
  okk = okk - (lr(k.sp, k.sm) - lr(k.sm, k.sp));
  okk = okk - (lr(k.qm, k.qp) - lr(k.qp, k.qm));
  okk = GaussianRational(-1) * okk;

  AlgebraData d = algebra_data(Family::sp, n);
  std::vector<NumericExpr> currents;
  for (const auto& u : d.basis) currents.push_back(matrix_current(u));
  NumericExpr og;
  for (std::size_t a = 0; a < currents.size(); ++a)
    for (std::size_t b = 0; b < currents.size(); ++b) {
      if (d.ginv[a][b] == 0) continue;
      og = og + GaussianRational(d.ginv[a][b]) * lr(currents[a], currents[b]);
    }

  std::vector<NumericExpr> basis = {og, okk};
  std::vector<std::vector<std::vector<Rational>>> c(
      2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2, Rational(0))));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      NumericExpr entry = ope(basis[i], basis[j], 0, nctx()).at(1, 1);
      std::vector<Monomial> monos;
      auto note = [&](const Monomial& mm) {
        for (const auto& known : monos)
          if (known == mm) return;
        monos.push_back(mm);
      };
      for (const auto& b : basis)
        for (const auto& [mm, cc] : b.terms()) note(mm);
      for (const auto& [mm, cc] : entry.terms()) note(mm);
      std::vector<std::vector<GaussianRational>> a(monos.size(),
                                                   std::vector<GaussianRational>(3));
      for (std::size_t r = 0; r < monos.size(); ++r) {
        a[r][0] = basis[0].coefficient(monos[r]);
        a[r][1] = basis[1].coefficient(monos[r]);
        a[r][2] = entry.coefficient(monos[r]);
      }
      std::size_t prow = 0;
      std::vector<std::size_t> piv(2, static_cast<std::size_t>(-1));
      for (std::size_t col = 0; col < 2 && prow < monos.size(); ++col) {
        std::size_t sel = prow;
        while (sel < monos.size() && a[sel][col].is_zero()) ++sel;
        if (sel == monos.size()) continue;
        std::swap(a[sel], a[prow]);
        GaussianRational inv = GaussianRational(1) / a[prow][col];
        for (auto& v : a[prow]) v = v * inv;
        for (std::size_t r = 0; r < monos.size(); ++r) {
          if (r == prow || a[r][col].is_zero()) continue;
          GaussianRational f = a[r][col];
          for (std::size_t t = 0; t < 3; ++t) a[r][t] = a[r][t] - f * a[prow][t];
        }
        piv[col] = prow++;
      }
      for (std::size_t kk = 0; kk < 2; ++kk) {
        GaussianRational sol =
            piv[kk] == static_cast<std::size_t>(-1) ? GaussianRational(0) : a[piv[kk]][2];
        if (!sol.is_real()) throw std::logic_error("complex one-loop coefficient");
        c[kk][i][j] = sol.re;
      }
      for (std::size_t r = 0; r < monos.size(); ++r) {
        GaussianRational acc = basis[0].coefficient(monos[r]) * GaussianRational(c[0][i][j]) +
                               basis[1].coefficient(monos[r]) * GaussianRational(c[1][i][j]);
        if (acc != entry.coefficient(monos[r]))
          throw std::runtime_error("sp one-loop pole entry leaves the perturbation span");
      }
    }
  return c;
}

bool numeric_verify_sp(int n, const Rational& casimir_shift) {
  AlgebraData d = algebra_data(Family::sp, n);
  Rational c2 = adjoint_casimir_numeric(Family::sp, n) + casimir_shift;
  NumericExpr t_sp = sugawara_from_data(d, c2);
  NumericExpr t_osp = osp22_sp_tensor_numeric(n);
  NumericExpr t_free = free_tensor_numeric(2 * n);
  return (t_free - t_osp - t_sp).is_zero();
}

}  // namespace opekit
