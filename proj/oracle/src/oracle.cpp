#include "ewt/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ewt::oracle {

namespace {

using Digits = std::vector<std::uint64_t>;

// GF(p^k) as digit vectors modulo the field's modulus; nothing clever.
struct Naive {
  std::uint64_t p;
  std::size_t k;
  Digits mod;  // k+1 coefficients, monic
  std::uint64_t q;

  explicit Naive(const Field& F) : p(F.p()), k(F.k()), mod(F.modulus()), q(F.order()) {
    if (mod.size() != k + 1) {  // prime field: modulus g - 1 is irrelevant
      mod.assign(k + 1, 0);
      mod[k] = 1;
    }
  }

  Digits zero() const { return Digits(k, 0); }
  Digits one() const {
    Digits d = zero();
    d[0] = 1;
    return d;
  }
  static bool is_zero(const Digits& a) {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t v) { return v == 0; });
  }
  Digits add(const Digits& a, const Digits& b) const {
    Digits r(k);
    for (std::size_t i = 0; i < k; ++i) r[i] = (a[i] + b[i]) % p;
    return r;
  }
  Digits sub(const Digits& a, const Digits& b) const {
    Digits r(k);
    for (std::size_t i = 0; i < k; ++i) r[i] = (a[i] + p - b[i]) % p;
    return r;
  }
  Digits mul(const Digits& a, const Digits& b) const {
    std::vector<std::uint64_t> r(2 * k - 1, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    for (std::size_t i = r.size(); i-- > k;) {
      std::uint64_t c = r[i];
      if (!c) continue;
      for (std::size_t j = 0; j <= k; ++j) r[i - k + j] = (r[i - k + j] + (p - c) * mod[j] % p) % p;
    }
    r.resize(k);
    return r;
  }
  Digits pow(Digits a, std::uint64_t e) const {
    Digits r = one();
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  Digits inv(const Digits& a) const { return pow(a, q - 2); }
};

using Series = std::vector<Digits>;

Series from_vec(const Field& F, const Naive& N, const ser::Vec& v) {
  Series s;
  for (Elem e : v) {
    Digits d = F.digits(e);
    d.resize(N.k, 0);
    s.push_back(d);
  }
  return s;
}

Series mul_trunc(const Naive& N, const Series& a, const Series& b, std::size_t T) {
  Series r(std::min(T, a.size() + b.size()), N.zero());
  for (std::size_t i = 0; i < a.size() && i < T; ++i) {
    if (Naive::is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size() && i + j < T; ++j) r[i + j] = N.add(r[i + j], N.mul(a[i], b[j]));
  }
  return r;
}

Series add_series(const Naive& N, Series a, const Series& b) {
  if (a.size() < b.size()) a.resize(b.size(), N.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = N.add(a[i], b[i]);
  return a;
}

std::int64_t first_nonzero(const Series& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!Naive::is_zero(s[i])) return static_cast<std::int64_t>(i);
  return -1;
}

std::int64_t last_nonzero(const ser::Vec& v) {
  for (std::size_t i = v.size(); i-- > 0;)
    if (v[i]) return static_cast<std::int64_t>(i);
  return -1;
}

std::int64_t first_nonzero(const ser::Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) return static_cast<std::int64_t>(i);
  return -1;
}

bool exact(std::int64_t prec) { return prec >= kExact; }

// g(x(t), y(t)) below t^T
Series pullback(const Naive& N, const BivarPoly& g, const Series& X, const Series& Y, std::size_t T) {
  Series acc;
  for (int j = g.deg_y(); j >= 0; --j) {
    Series cj;
    const ser::Vec& c = g.c[static_cast<std::size_t>(j)];
    for (std::size_t i = c.size(); i-- > 0;) {
      cj = mul_trunc(N, cj, X, T);
      Series lead = from_vec(g.F, N, ser::Vec{c[i]});
      cj = add_series(N, cj, lead);
    }
    acc = add_series(N, mul_trunc(N, acc, Y, T), cj);
  }
  if (acc.size() > T) acc.resize(T);
  return acc;
}

}  // namespace

std::int64_t i0_oracle(const BivarPoly& g, const Parametrization& par) {
  if (g.ram != 1) fail(ErrorKind::InvalidArgument, "oracle needs integral x-exponents");
  if (!(g.F == par.F)) fail(ErrorKind::InvalidArgument, "field mismatch");
  Naive N(par.F);
  Series X = from_vec(par.F, N, par.x), Y = from_vec(par.F, N, par.y);
  std::int64_t ox = first_nonzero(par.x);
  if (ox < 1) fail(ErrorKind::InvalidArgument, "x(t) must have positive order");
  std::int64_t known = kExact;
  if (!exact(par.prec)) known = par.prec;
  if (!exact(g.prec)) known = std::min(known, g.prec * ox);
  std::size_t T;
  if (exact(known)) {
    std::int64_t dx = std::max<std::int64_t>(last_nonzero(par.x), 0), dy = std::max<std::int64_t>(last_nonzero(par.y), 0);
    T = static_cast<std::size_t>(std::max<std::int64_t>(g.x_degree(), 0) * dx + std::max(g.deg_y(), 0) * dy + 1);
  } else {
    T = static_cast<std::size_t>(known);
  }
  std::int64_t o = first_nonzero(pullback(N, g, X, Y, T));
  if (o >= 0) return o;
  if (exact(known)) fail(ErrorKind::VanishesOnBranch, "g vanishes on the branch");
  fail(ErrorKind::PrecisionExhausted, "pullback is zero below the known precision");
}

std::int64_t conductor_of(const std::vector<std::int64_t>& gens) {
  std::int64_t g = 0;
  for (auto v : gens) g = std::gcd(g, v);
  if (g != 1) fail(ErrorKind::InvalidArgument, "generators have a common factor");
  std::int64_t lo = *std::min_element(gens.begin(), gens.end());
  std::vector<char> in{1};
  std::int64_t run = 0;
  for (std::int64_t v = 1;; ++v) {
    char hit = 0;
    for (auto s : gens)
      if (v >= s && in[static_cast<std::size_t>(v - s)]) hit = 1;
    in.push_back(hit);
    run = hit ? run + 1 : 0;
    if (run == lo) return v - lo + 1;
  }
}

std::vector<std::int64_t> minimal_generators(std::vector<std::int64_t> gens) {
  std::sort(gens.begin(), gens.end());
  if (gens.empty()) return gens;
  std::vector<char> in(static_cast<std::size_t>(gens.back()) + 1, 0);
  in[0] = 1;
  std::vector<std::int64_t> out;
  for (auto v : gens) {
    if (v <= 0 || in[static_cast<std::size_t>(v)]) continue;
    out.push_back(v);
    for (std::size_t s = 0; s + static_cast<std::size_t>(v) < in.size(); ++s)
      if (in[s]) in[s + static_cast<std::size_t>(v)] = 1;
  }
  return out;
}

std::vector<std::int64_t> semigroup_oracle(const Parametrization& par, std::int64_t bound) {
  if (!exact(par.prec) && par.prec <= bound) fail(ErrorKind::BoundTooSmall, "parametrization not known up to the bound");
  Naive N(par.F);
  auto T = static_cast<std::size_t>(bound + 1);
  Series X = from_vec(par.F, N, par.x), Y = from_vec(par.F, N, par.y);
  X.resize(std::min(X.size(), T));
  Y.resize(std::min(Y.size(), T));
  std::int64_t ox = first_nonzero(X), oy = first_nonzero(Y);
  if (ox < 1 || (oy >= 0 && oy < 1)) fail(ErrorKind::InvalidArgument, "parametrization must pass through the origin");
  std::map<std::int64_t, Series> pivots;  // leading index -> row with leading coefficient 1
  auto insert = [&](Series row) {
    for (;;) {
      std::int64_t lead = first_nonzero(row);
      if (lead < 0) return;
      auto it = pivots.find(lead);
      Digits c = row[static_cast<std::size_t>(lead)];
      if (it == pivots.end()) {
        Digits ci = N.inv(c);
        for (auto& d : row) d = N.mul(d, ci);
        pivots.emplace(lead, std::move(row));
        return;
      }
      const Series& pr = it->second;
      for (std::size_t i = 0; i < pr.size() && i < row.size(); ++i) row[i] = N.sub(row[i], N.mul(c, pr[i]));
    }
  };
  Series ypow{N.one()};
  for (std::int64_t j = 0; j == 0 || (oy > 0 && j * oy <= bound); ++j) {
    Series m = ypow;
    for (std::int64_t i = 0; j * std::max<std::int64_t>(oy, 0) + i * ox <= bound; ++i) {
      insert(m);
      m = mul_trunc(N, m, X, T);
    }
    ypow = mul_trunc(N, ypow, Y, T);
  }
  std::vector<std::int64_t> gens;
  std::vector<char> in(T, 0);
  in[0] = 1;
  for (const auto& [v, row] : pivots) {
    if (v == 0 || in[static_cast<std::size_t>(v)]) continue;
    gens.push_back(v);
    for (std::size_t s = 0; s + static_cast<std::size_t>(v) < T; ++s)
      if (in[s]) in[s + static_cast<std::size_t>(v)] = 1;
  }
  // every value up to the bound is found, so the gens are complete once the
  // semigroup they generate has its conductor within reach
  std::int64_t g = 0;
  for (auto v : gens) g = std::gcd(g, v);
  if (g != 1 || conductor_of(gens) > bound + 1) fail(ErrorKind::BoundTooSmall, "conductor not reached below the bound");
  return gens;
}

BivarPoly implicitize(const Parametrization& par) {
  const Field& F = par.F;
  Naive N(F);
  std::int64_t n = first_nonzero(par.x);
  if (n < 1 || last_nonzero(par.x) != n || par.x[static_cast<std::size_t>(n)] != 1)
    fail(ErrorKind::InvalidArgument, "implicitize needs x = t^n");
  if (!exact(par.prec)) fail(ErrorKind::InvalidArgument, "implicitize needs an exact y(t)");
  std::int64_t dy = last_nonzero(par.y);
  if (dy < 1 || first_nonzero(par.y) < 1) fail(ErrorKind::InvalidArgument, "y(t) must be a polynomial of positive order");
  std::int64_t g = n;
  for (std::int64_t k = 0; k <= dy; ++k)
    if (par.y[static_cast<std::size_t>(k)]) g = std::gcd(g, k);
  if (g != 1) fail(ErrorKind::InvalidArgument, "parametrization is not primitive");

  // unknowns a_ij, j < n, i <= (n-j) dy / n; equations: coefficients of t^s
  std::vector<std::pair<std::int64_t, std::int64_t>> cols;
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t i = 0; i * n <= (n - j) * dy; ++i) cols.push_back({i, j});
  auto rows = static_cast<std::size_t>(n * dy + 1);
  Series Y = from_vec(F, N, par.y);
  std::vector<Series> ypow{Series{N.one()}};
  for (std::int64_t j = 1; j <= n; ++j) ypow.push_back(mul_trunc(N, ypow.back(), Y, rows));
  std::vector<Series> M(rows, Series(cols.size() + 1, N.zero()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto [i, j] = cols[c];
    const Series& yp = ypow[static_cast<std::size_t>(j)];
    for (std::size_t s = 0; s < yp.size(); ++s) {
      std::size_t r = s + static_cast<std::size_t>(i * n);
      if (r < rows) M[r][c] = yp[s];
    }
  }
  const Series& top = ypow[static_cast<std::size_t>(n)];
  for (std::size_t s = 0; s < top.size() && s < rows; ++s) M[s][cols.size()] = N.sub(N.zero(), top[s]);
  // Gauss-Jordan
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols.size() && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && Naive::is_zero(M[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[r]);
    Digits inv = N.inv(M[r][c]);
    for (auto& d : M[r]) d = N.mul(d, inv);
    for (std::size_t o = 0; o < rows; ++o) {
      if (o == r || Naive::is_zero(M[o][c])) continue;
      Digits f = M[o][c];
      for (std::size_t k = 0; k <= cols.size(); ++k) M[o][k] = N.sub(M[o][k], N.mul(f, M[r][k]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t o = r; o < rows; ++o)
    if (!Naive::is_zero(M[o][cols.size()])) fail(ErrorKind::InvalidArgument, "internal: inconsistent implicitization system");
  if (pivot_col.size() != cols.size()) fail(ErrorKind::InvalidArgument, "internal: implicitization is not unique");
  std::vector<ser::Vec> coeffs(static_cast<std::size_t>(n + 1));
  coeffs[static_cast<std::size_t>(n)] = ser::Vec{1};
  for (std::size_t k = 0; k < pivot_col.size(); ++k) {
    auto [i, j] = cols[pivot_col[k]];
    auto& v = coeffs[static_cast<std::size_t>(j)];
    if (v.size() <= static_cast<std::size_t>(i)) v.resize(static_cast<std::size_t>(i) + 1, 0);
    v[static_cast<std::size_t>(i)] = F.from_digits(M[k][cols.size()]);
  }
  BivarPoly out(F, coeffs);
  out.normalize();
  return out;
}

Parametrization random_tame_param(const Field& F, std::mt19937_64& rng, int max_n, int max_terms) {
  for (;;) {
    auto n = static_cast<std::int64_t>(1 + rng() % static_cast<std::uint64_t>(max_n));
    if (n % static_cast<std::int64_t>(F.p()) == 0) continue;
    auto terms = 1 + rng() % static_cast<std::uint64_t>(max_terms);
    std::set<std::int64_t> exps;
    for (std::uint64_t k = 0; k < terms; ++k) exps.insert(static_cast<std::int64_t>(1 + rng() % static_cast<std::uint64_t>(3 * n + 3)));
    std::int64_t g = n;
    for (auto e : exps) g = std::gcd(g, e);
    if (g != 1) continue;
    Parametrization P;
    P.F = F;
    P.x.assign(static_cast<std::size_t>(n) + 1, 0);
    P.x[static_cast<std::size_t>(n)] = 1;
    P.y.assign(static_cast<std::size_t>(*exps.rbegin()) + 1, 0);
    for (auto e : exps) {
      Digits d(F.k());
      do {
        for (auto& v : d) v = rng() % F.p();
      } while (Naive::is_zero(d));
      P.y[static_cast<std::size_t>(e)] = F.from_digits(d);
    }
    return P;
  }
}

}  // namespace ewt::oracle
