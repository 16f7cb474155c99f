#include "ewt/branch.hpp"

#include <algorithm>
#include <numeric>

namespace ewt {

const char* certificate_name(Certificate c) { return c == Certificate::Certified ? "CERTIFIED" : "UNCERTAIN"; }

const char* tristate_name(Tristate t) {
  switch (t) {
    case Tristate::Yes: return "yes";
    case Tristate::No: return "no";
    default: return "unknown";
  }
}

bool Decomposition::certified() const {
  for (const auto& f : factors)
    if (f.branch.cert != Certificate::Certified) return false;
  return true;
}

namespace {

[[noreturn]] void internal(const std::string& m) { fail(ErrorKind::InvalidArgument, "internal: " + m); }

UPoly at_zero(const BivarPoly& V) {
  UPoly u;
  for (int j = 0; j <= V.deg_y(); ++j) u.push_back(V.at(0, j));
  upoly::trim(u);
  return u;
}

// v * t^k truncated to length L; for k < 0 the dropped entries must vanish
ser::Vec shifted(const ser::Vec& v, std::int64_t k, std::int64_t L) {
  if (v.empty()) return {};
  if (k >= 0) return ser::truncate(ser::shift(v, k), L);
  std::int64_t drop = -k;
  for (std::int64_t i = 0; i < drop && i < static_cast<std::int64_t>(v.size()); ++i)
    if (v[i]) internal("negative shift of a series with low-order terms");
  if (drop >= static_cast<std::int64_t>(v.size())) return {};
  return ser::truncate(ser::Vec(v.begin() + drop, v.end()), L);
}

// f(lambda t, y)
BivarPoly scale_x(const BivarPoly& f, Elem lambda) {
  const Field& F = f.F;
  std::vector<ser::Vec> c;
  for (const auto& v : f.c) {
    ser::Vec w(v.size());
    Elem pw = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
      w[i] = F.mul(v[i], pw);
      pw = F.mul(pw, lambda);
    }
    c.push_back(std::move(w));
  }
  return BivarPoly(F, std::move(c), f.prec, f.ram);
}

// s^B -> t: every exponent must be divisible by B
BivarPoly descend(const BivarPoly& f, std::int64_t B) {
  if (B == 1) return f;
  std::vector<ser::Vec> c;
  for (const auto& v : f.c) {
    ser::Vec w;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i]) continue;
      if (static_cast<std::int64_t>(i) % B) internal("factor is not defined over the base ring");
      std::size_t k = i / static_cast<std::size_t>(B);
      if (w.size() <= k) w.resize(k + 1, 0);
      w[k] = v[i];
    }
    c.push_back(std::move(w));
  }
  return BivarPoly(f.F, std::move(c), f.is_exact() ? kExact : f.prec / B, f.ram);
}

Elem some_root(const Field& F, const UPoly& f) {
  RootsResult rr = univariate_roots(F, f, false);
  if (!rr.roots.empty()) return rr.roots.front().first;
  // smallest extension holding one root
  for (unsigned k = 2; k <= static_cast<unsigned>(upoly::deg(f)); ++k)
    if (!univariate_roots(extension(F, k), embed(F, f, extension(F, k)), false).roots.empty()) throw NeedExtension{k};
  internal("polynomial without roots");
}

unsigned unity_degree(const Field& F, std::uint64_t n) {
  std::uint64_t q = F.order() % n, x = q;
  unsigned r = 1;
  while (x % n != 1 % n) {
    x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * q) % n);
    ++r;
  }
  return r;
}

Elem unity(const Field& F, std::uint64_t n) {
  if (n == 1) return 1;
  auto z = F.root_of_unity(n);
  if (!z) throw NeedExtension{unity_degree(F, n)};
  return *z;
}

UPoly binomial_minus(const Field& F, std::int64_t B, Elem u) {
  UPoly a(static_cast<std::size_t>(B) + 1, 0);
  a[0] = F.neg(u);
  a[B] = 1;
  return a;
}

// ---------------------------------------------------------------- parametrizations

Parametrization linear_param(const BivarPoly& V) {
  Parametrization P;
  P.F = V.F;
  P.prec = V.prec;
  P.x = ser::truncate(ser::Vec{0, 1}, V.prec);
  P.y = ser::neg(V.F, V.coeff(0));
  return P;
}

ser::Vec eval_y(const Field& F, const std::vector<ser::Vec>& h, const ser::Vec& z, std::int64_t L) {
  ser::Vec r;
  for (std::size_t j = h.size(); j-- > 0;) {
    r = ser::mul(F, r, z, L);
    r = ser::add(F, r, ser::truncate(h[j], L));
  }
  return r;
}

// x = t^B, y = t^A (r + ...), p does not divide B
Parametrization tame_param(const BivarPoly& G, std::int64_t A, std::int64_t B, Elem u) {
  const Field& F = G.F;
  std::int64_t M = B * G.prec - A * B;
  if (M < 1) fail(ErrorKind::PrecisionExhausted, "no precision left for the parametrization");
  Elem r = some_root(F, binomial_minus(F, B, u));
  std::vector<ser::Vec> h(static_cast<std::size_t>(B) + 1), hd(static_cast<std::size_t>(B));
  for (std::int64_t j = 0; j <= B; ++j) h[j] = shifted(ser::stretch(G.coeff(static_cast<int>(j)), B), -A * (B - j), M);
  for (std::int64_t j = 1; j <= B; ++j) hd[j - 1] = ser::scale(F, h[j], F.from_int(j));
  ser::Vec z{r};
  std::int64_t k = 1;
  while (k < M) {
    std::int64_t k2 = std::min(2 * k, M);
    ser::Vec val = eval_y(F, h, z, k2);
    ser::Vec der = eval_y(F, hd, z, k2);
    z = ser::truncate(ser::sub(F, z, ser::mul(F, val, ser::inv(F, der, k2), k2)), k2);
    k = k2;
  }
  Parametrization P;
  P.F = F;
  P.prec = M + A;
  P.x = ser::Vec(static_cast<std::size_t>(B) + 1, 0);
  P.x[B] = 1;
  P.y = ser::truncate(ser::shift(z, A), P.prec);
  return P;
}

// y = t^A, x = t^B (c + ...), p divides B and not A
Parametrization wild_param(const BivarPoly& G, std::int64_t A, std::int64_t B) {
  const Field& F = G.F;
  std::int64_t M = B * G.prec - A * B;
  if (M < 1) fail(ErrorKind::PrecisionExhausted, "no precision left for the parametrization");
  Elem cc = G.at(A, 0);
  if (!cc) internal("edge endpoint missing");
  Elem c = some_root(F, binomial_minus(F, A, F.neg(F.inv(cc))));
  int d = G.deg_y();
  std::vector<ser::Vec> g(static_cast<std::size_t>(d) + 1), gd(static_cast<std::size_t>(d) + 1);
  BivarPoly Gx = derivative_x(G);
  for (int j = 0; j <= d; ++j) {
    g[j] = G.coeff(j);
    gd[j] = Gx.coeff(j);
  }
  auto phi = [&](const ser::Vec& xi, std::int64_t L) {
    ser::Vec X = ser::shift(xi, B), val, der;
    for (int j = 0; j <= d; ++j) {
      std::int64_t down = A * (B - j);
      val = ser::add(F, val, shifted(ser::compose(F, g[j], X, L + std::max<std::int64_t>(down, 0)), -down, L));
      std::int64_t net = B - down;
      der = ser::add(F, der, shifted(ser::compose(F, gd[j], X, std::max<std::int64_t>(L - net, 0)), net, L));
    }
    return std::make_pair(val, der);
  };
  ser::Vec xi{c};
  std::int64_t k = 1;
  while (k < M) {
    std::int64_t k2 = std::min(2 * k, M);
    auto [val, der] = phi(xi, k2);
    xi = ser::truncate(ser::sub(F, xi, ser::mul(F, val, ser::inv(F, der, k2), k2)), k2);
    k = k2;
  }
  Parametrization P;
  P.F = F;
  P.prec = M + B;
  P.x = ser::truncate(ser::shift(xi, B), P.prec);
  P.y = ser::Vec(static_cast<std::size_t>(A) + 1, 0);
  P.y[A] = 1;
  return P;
}

// ---------------------------------------------------------------- slope splitting

struct RootPiece {
  BivarPoly g;
  Elem u = 0;
  int m = 0;
};

struct SlopeSplit {
  std::int64_t A = 0, B = 1;
  std::vector<RootPiece> roots;  // one per root of the edge polynomial
  BivarPoly rest;                // roots of larger order
};

// W(s, z) -> s^(A e) W(s, y / s^A), then s^B -> t
BivarPoly map_back(const BivarPoly& P, std::int64_t A, std::int64_t B) {
  int e = P.deg_y();
  std::vector<ser::Vec> c(static_cast<std::size_t>(std::max(e, 0)) + 1);
  for (int k = 0; k <= e; ++k) c[k] = ser::shift(P.coeff(k), A * (e - k));
  return descend(BivarPoly(P.F, std::move(c), P.prec, 1), B);
}

SlopeSplit slope_split(const BivarPoly& V, const Edge& E, bool split_roots) {
  const Field& F = V.F;
  int d = V.deg_y();
  Rational nu = E.inclination();
  SlopeSplit out;
  out.A = nu.num();
  out.B = nu.den();
  std::int64_t A = out.A, B = out.B;
  std::int64_t jlow = E.to.j;
  std::int64_t M = B * V.prec - A * d;
  if (M < 1) fail(ErrorKind::PrecisionExhausted, "slope split without precision");
  std::vector<ser::Vec> wc(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) wc[j] = shifted(ser::stretch(V.coeff(j), B), -A * (d - j), M);
  BivarPoly W(F, std::move(wc), M, 1);
  UPoly w0 = at_zero(W);
  UPoly P(w0.begin() + jlow, w0.end());
  std::vector<std::pair<UPoly, std::pair<Elem, int>>> a0s;
  if (split_roots) {
    UPoly R;
    for (std::size_t k = 0; k < P.size(); k += static_cast<std::size_t>(B)) R.push_back(P[k]);
    RootsResult rr = univariate_roots(F, R, true);
    if (rr.field != F) throw NeedExtension{rr.field.k() / F.k()};
    for (auto [u, m] : rr.roots) {
      UPoly a{1};
      UPoly base = binomial_minus(F, B, u);
      for (int i = 0; i < m; ++i) a = upoly::mul(F, a, base);
      a0s.push_back({a, {u, m}});
    }
  } else {
    a0s.push_back({P, {0, 0}});
  }
  BivarPoly current = W;
  for (const auto& [a0, um] : a0s) {
    UPoly c0 = at_zero(current);
    UPoly b0 = upoly::quo(F, c0, a0);
    auto [a, b] = hensel_lift(current, a0, b0, M);
    out.roots.push_back({map_back(a, A, B), um.first, um.second});
    current = b;
  }
  out.rest = map_back(current, A, B);
  return out;
}

// lowest edge of a monic Weierstrass V, certified against the precision
Edge lowest_edge(const BivarPoly& V) {
  NewtonDiagram nd = newton_polygon(V);
  auto es = nd.edges();
  if (es.empty() || es[0].from.j != V.deg_y() || es[0].from.i != Rational(0))
    fail(ErrorKind::PrecisionExhausted, "Newton polygon not certified below the precision");
  Rational c = es[0].inclination() * Rational(V.deg_y());
  if (!(c < Rational(V.prec))) fail(ErrorKind::PrecisionExhausted, "lowest edge not certified below the precision");
  return es[0];
}

struct Recursion {
  bool parametrize = true;

  std::vector<Branch> run(const BivarPoly& V) {
    int d = V.deg_y();
    if (d <= 0) return {};
    if (d == 1) return {make(V, parametrize ? std::optional(linear_param(V)) : std::nullopt)};
    Edge E = lowest_edge(V);
    SlopeSplit sp = slope_split(V, E, true);
    std::vector<Branch> out;
    for (const auto& rp : sp.roots) {
      auto part = root_piece(rp, sp.A, sp.B);
      out.insert(out.end(), part.begin(), part.end());
    }
    auto rest = run(sp.rest);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }

  static Branch make(const BivarPoly& w, std::optional<Parametrization> par, Certificate c = Certificate::Certified) {
    Branch b;
    b.w = w;
    b.param = std::move(par);
    b.cert = c;
    return b;
  }

  std::vector<Branch> root_piece(const RootPiece& rp, std::int64_t A, std::int64_t B) {
    const Field& F = rp.g.F;
    std::uint64_t p = F.p();
    if (rp.m == 1) {
      std::optional<Parametrization> par;
      if (parametrize) {
        if (B == 1)
          par = linear_param(rp.g);
        else if (B % static_cast<std::int64_t>(p) != 0)
          par = tame_param(rp.g, A, B, rp.u);
        else
          par = wild_param(rp.g, A, B);
      }
      return {make(rp.g, std::move(par))};
    }
    if (B == 1) return shifted_piece(rp, A);
    if (B % static_cast<std::int64_t>(p) != 0) return ramified_piece(rp, A, B);
    return {make(rp.g, std::nullopt, Certificate::Uncertain)};
  }

  // all roots start with u t^A: factor G(t, y + u t^A)
  std::vector<Branch> shifted_piece(const RootPiece& rp, std::int64_t A) {
    const Field& F = rp.g.F;
    TruncatedSeries alpha = TruncatedSeries::monomial(F, rp.u, Rational(A));
    BivarPoly G2 = shift_y(rp.g, alpha, Rational::infinity());
    std::vector<Branch> out;
    for (auto& b : run(G2)) {
      b.w = shift_y(b.w, -alpha, Rational::infinity());
      if (b.param) {
        auto& P = *b.param;
        P.y = ser::truncate(ser::add(F, P.y, ser::scale(F, ser::pow(F, P.x, static_cast<std::uint64_t>(A), P.prec), rp.u)), P.prec);
      }
      out.push_back(std::move(b));
    }
    return out;
  }

  // roots r^B = u with p not dividing B: pass to s = t^(1/B), split off the
  // roots starting with r s^A, factor them and take norms back down
  std::vector<Branch> ramified_piece(const RootPiece& rp, std::int64_t A, std::int64_t B) {
    const Field& F = rp.g.F;
    Elem r = some_root(F, binomial_minus(F, B, rp.u));
    Elem zeta = unity(F, static_cast<std::uint64_t>(B));
    BivarPoly Gs = ramify_x(rp.g, B);
    TruncatedSeries alpha = TruncatedSeries::monomial(F, r, Rational(A));
    BivarPoly G2 = shift_y(Gs, alpha, Rational::infinity());
    SlopeSplit sp = slope_split(G2, lowest_edge(G2), false);
    if (sp.rest.deg_y() != rp.m) internal("unexpected splitting after ramification");
    std::vector<Branch> out;
    for (auto& b : run(sp.rest)) {
      BivarPoly Fu = shift_y(b.w, -alpha, Rational::infinity());
      BivarPoly norm = Fu;
      Elem z = zeta;
      for (std::int64_t k = 1; k < B; ++k) {
        norm = norm * scale_x(Fu, z);
        z = F.mul(z, zeta);
      }
      Branch nb = make(descend(norm, B), std::nullopt, b.cert);
      if (b.param) {
        const auto& P = *b.param;
        Parametrization Q;
        Q.F = F;
        Q.prec = P.prec;
        Q.x = ser::pow(F, P.x, static_cast<std::uint64_t>(B), P.prec);
        Q.y = ser::truncate(ser::add(F, P.y, ser::scale(F, ser::pow(F, P.x, static_cast<std::uint64_t>(A), P.prec), r)), P.prec);
        nb.param = std::move(Q);
      }
      out.push_back(std::move(nb));
    }
    return out;
  }
};

BivarPoly pth_root(const BivarPoly& f) {
  const Field& F = f.F;
  std::int64_t p = static_cast<std::int64_t>(F.p());
  std::vector<ser::Vec> c;
  for (int j = 0; j <= f.deg_y(); ++j) {
    const auto& v = f.c[j];
    if (j % p) {
      if (!v.empty()) internal("p-th root of a non p-th power");
      continue;
    }
    ser::Vec w;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i]) continue;
      if (static_cast<std::int64_t>(i) % p) internal("p-th root of a non p-th power");
      std::size_t k = i / static_cast<std::size_t>(p);
      if (w.size() <= k) w.resize(k + 1, 0);
      w[k] = F.pth_root(v[i]);
    }
    c.push_back(std::move(w));
  }
  return BivarPoly(F, std::move(c));
}

bool is_constant(const BivarPoly& f) { return f.deg_y() <= 0 && f.x_degree() <= 0; }

}  // namespace

// ---------------------------------------------------------------- squarefree structure

BivarPoly radical(const BivarPoly& f) {
  if (f.is_zero()) fail(ErrorKind::InvalidArgument, "radical of zero");
  if (is_constant(f)) return BivarPoly::constant(f.F, 1);
  BivarPoly fx = derivative_x(f), fy = derivative_y(f);
  if (fx.is_zero() && fy.is_zero()) return radical(pth_root(f));
  BivarPoly h = gcd_xy(f, gcd_xy(fx, fy));
  BivarPoly g = divide_exact(f, h);
  if (is_constant(h)) return gcd_xy(g, g);
  BivarPoly r = radical(h);
  BivarPoly common = gcd_xy(g, r);
  return gcd_xy(divide_exact(g * r, common), BivarPoly::zero(f.F));
}

std::vector<std::pair<BivarPoly, int>> squarefree_layers(const BivarPoly& f) {
  std::vector<std::pair<BivarPoly, int>> out;
  if (is_constant(f)) return out;
  BivarPoly rest = f;
  BivarPoly R = radical(rest);
  for (int e = 1; !is_constant(R); ++e) {
    rest = divide_exact(rest, R);
    BivarPoly Rn = is_constant(rest) ? BivarPoly::constant(f.F, 1) : radical(rest);
    BivarPoly Q = divide_exact(R, Rn);
    if (!is_constant(Q)) out.push_back({Q, e});
    R = Rn;
  }
  return out;
}

std::vector<Branch> factor_weierstrass(const BivarPoly& w, bool parametrize) {
  Recursion rec;
  rec.parametrize = parametrize;
  return rec.run(w);
}

Decomposition branch_decompose_in(const BivarPoly& f, std::int64_t N, bool parametrize) {
  if (f.is_zero()) fail(ErrorKind::NotRegularInY, "zero polynomial");
  Decomposition D;
  D.field = f.F;
  D.precision = N;
  D.x_power = f.x_valuation();
  BivarPoly f1 = divide_x_power(f, D.x_power);
  int piece = 0;
  for (const auto& [Q, e] : squarefree_layers(f1)) {
    if (Q.y_order_at_zero() <= 0) continue;
    BivarPoly W = weierstrass_prepare(Q, N).w;
    for (auto& b : factor_weierstrass(W, parametrize)) {
      b.piece = piece;
      if (parametrize && b.cert == Certificate::Certified) b.semigroup = semigroup_of_branch(b);
      D.factors.push_back({std::move(b), e});
    }
    ++piece;
  }
  return D;
}

Decomposition branch_decompose(const BivarPoly& f, std::int64_t N) {
  return with_restarts(
      f.F, N, [&](const Field& E, std::int64_t n) { return branch_decompose_in(E == f.F ? f : embed(f, E), n); }, false);
}

Decomposition branch_decompose(const BivarPoly& f) {
  return with_restarts(f.F, kDefaultPrecision,
                       [&](const Field& E, std::int64_t n) { return branch_decompose_in(E == f.F ? f : embed(f, E), n); });
}

// ---------------------------------------------------------------- semigroups

std::int64_t SemigroupData::e(int i) const {
  std::int64_t g = 0;
  for (int k = 0; k <= i; ++k) g = std::gcd(g, gens[k]);
  return g;
}

std::int64_t SemigroupData::n(int i) const { return i == 0 ? 1 : e(i - 1) / e(i); }

std::int64_t SemigroupData::m(int i) const { return gens[i] / e(i); }

Rational SemigroupData::contact(int i) const {
  return Rational(e(i - 1)) * Rational(gens[i]) / Rational(checked_mul(gens[0], gens[0]));
}

std::int64_t SemigroupData::conductor() const {
  std::int64_t c = 1 - gens[0];
  for (int i = 1; i <= h(); ++i) c += (n(i) - 1) * gens[i];
  return std::max<std::int64_t>(c, 0);
}

void SemigroupData::validate() const {
  if (gens.empty() || gens[0] < 1) fail(ErrorKind::InvalidArgument, "semigroup needs b0 >= 1");
  for (int i = 1; i <= h(); ++i) {
    if (!(e(i) < e(i - 1))) fail(ErrorKind::InvalidArgument, "gcd sequence must decrease strictly");
    if (i < h() && !(n(i) * gens[i] < gens[i + 1])) fail(ErrorKind::InvalidArgument, "n_i b_i < b_(i+1) violated");
  }
  if (e(h()) != 1) fail(ErrorKind::InvalidArgument, "generators are not coprime");
}

std::string SemigroupData::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? "," : "") + std::to_string(gens[i]);
  return s + ")";
}

SemigroupData semigroup_from_parametrization(const Parametrization& par) {
  const Field& F = par.F;
  std::int64_t n = ser::ord(par.x);
  if (n < 1) fail(ErrorKind::NoParametrization, "x(t) must have positive order");
  std::int64_t L = par.prec;
  SemigroupData S;
  S.gens.push_back(n);
  std::vector<ser::Vec> Q;       // key series Q_1..Q_i
  std::vector<std::int64_t> ns;  // n_1..n_i
  std::int64_t e = n;
  ser::Vec cand = ser::truncate(par.y, L);
  auto exhausted = [&]() {
    if (L >= kExact) fail(ErrorKind::NoParametrization, "parametrization is not primitive");
    fail(ErrorKind::PrecisionExhausted, "semigroup value beyond the parametrization precision");
  };
  while (e > 1) {
    std::int64_t v;
    while (true) {
      v = ser::ord(cand);
      if (v < 0) exhausted();
      if (v % e) break;
      // v = k0 n + sum k_j b_j with 0 <= k_j < n_j
      std::int64_t rem = v;
      std::vector<std::int64_t> ks(Q.size(), 0);
      for (std::size_t j = Q.size(); j-- > 0;) {
        std::int64_t ej = S.e(static_cast<int>(j) + 1), nj = ns[j], mj = S.gens[j + 1] / ej;
        std::int64_t target = ((rem / ej) % nj + nj) % nj, k = 0;
        while ((k * mj) % nj != target) ++k;
        ks[j] = k;
        rem -= k * S.gens[j + 1];
      }
      if (rem < 0 || rem % n) internal("value outside the semigroup");
      ser::Vec mono = ser::pow(F, par.x, static_cast<std::uint64_t>(rem / n), L);
      for (std::size_t j = 0; j < Q.size(); ++j)
        if (ks[j]) mono = ser::mul(F, mono, ser::pow(F, Q[j], static_cast<std::uint64_t>(ks[j]), L), L);
      if (ser::ord(mono) != v) exhausted();
      Elem c = F.div(cand[v], mono[v]);
      cand = ser::sub(F, cand, ser::scale(F, mono, c));
    }
    S.gens.push_back(v);
    Q.push_back(cand);
    std::int64_t e2 = std::gcd(e, v);
    ns.push_back(e / e2);
    e = e2;
    if (e > 1) cand = ser::pow(F, cand, static_cast<std::uint64_t>(ns.back()), L);
  }
  S.validate();
  return S;
}

SemigroupData semigroup_of_branch(const Branch& b) {
  if (b.semigroup) return *b.semigroup;
  if (b.degree() == 1) return SemigroupData{{1}};
  if (!b.param) fail(ErrorKind::NoParametrization, "branch has no parametrization");
  return semigroup_from_parametrization(*b.param);
}

CharSequence char_sequence(const SemigroupData& s, std::uint64_t p) {
  CharSequence cs;
  cs.puiseux_valid = s.gens[0] % static_cast<std::int64_t>(p) != 0;
  for (int i = 0; i <= s.h(); ++i) {
    if (i <= 1)
      cs.b.push_back(s.gens[i]);
    else
      cs.b.push_back(s.gens[i] - s.n(i - 1) * s.gens[i - 1] + cs.b[i - 1]);
  }
  return cs;
}

// ---------------------------------------------------------------- Puiseux roots

namespace {

bool x_is_monomial(const Parametrization& P, std::int64_t n, Elem* coeff) {
  for (std::size_t i = 0; i < P.x.size(); ++i) {
    if (static_cast<std::int64_t>(i) == n) continue;
    if (P.x[i]) return false;
  }
  if (static_cast<std::int64_t>(P.x.size()) <= n || !P.x[n]) return false;
  if (coeff) *coeff = P.x[n];
  return true;
}

// y(zeta t) as a series in x^(1/n), over E
TruncatedSeries conjugate_root(const Field& F, const Parametrization& P, const Field& E, Elem zeta, std::int64_t n) {
  ser::Vec y = F == E ? P.y : ser::embed(F, P.y, E);
  Elem pw = 1;
  for (auto& c : y) {
    c = E.mul(c, pw);
    pw = E.mul(pw, zeta);
  }
  return TruncatedSeries(E, n, y, P.prec);
}

TruncatedSeries first_terms(const TruncatedSeries& s, std::int64_t terms) {
  auto ts = s.terms();
  if (static_cast<std::int64_t>(ts.size()) <= terms) return s;
  ts.resize(static_cast<std::size_t>(terms));
  Rational cut = ts.back().first + Rational(1, s.ramification());
  return TruncatedSeries::from_terms(s.field(), ts, cut).with_ramification(s.ramification());
}

}  // namespace

std::vector<TruncatedSeries> newton_puiseux_expand(const Branch& b, std::int64_t terms) {
  const Field& F = b.w.F;
  std::int64_t n = b.degree();
  if (n % static_cast<std::int64_t>(F.p()) == 0) fail(ErrorKind::WildRamification, "degree divisible by the characteristic");
  if (!b.param) fail(ErrorKind::NoParametrization, "branch has no parametrization");
  Elem c = 0;
  if (!x_is_monomial(*b.param, n, &c) || c != 1) fail(ErrorKind::NoParametrization, "expected x = t^n");
  Field E = F;
  if (n > 1 && !F.root_of_unity(static_cast<std::uint64_t>(n))) E = extension(F, unity_degree(F, static_cast<std::uint64_t>(n)));
  Elem zeta = n == 1 ? 1 : *E.root_of_unity(static_cast<std::uint64_t>(n));
  std::vector<TruncatedSeries> out;
  Elem z = 1;
  for (std::int64_t k = 0; k < n; ++k) {
    out.push_back(first_terms(conjugate_root(F, *b.param, E, z, n), terms));
    z = E.mul(z, zeta);
  }
  return out;
}

TruncatedSeries puiseux_root(const Branch& b) {
  if (!b.param) fail(ErrorKind::NoParametrization, "branch has no parametrization");
  std::int64_t n = b.degree();
  Elem c = 0;
  if (!x_is_monomial(*b.param, n, &c) || c != 1) fail(ErrorKind::NoParametrization, "expected x = t^n");
  return conjugate_root(b.w.F, *b.param, b.w.F, 1, n);
}

Tristate has_puiseux_roots(const Branch& b) {
  const Field& F = b.w.F;
  std::int64_t p = static_cast<std::int64_t>(F.p());
  int d = b.degree();
  if (d % p) return Tristate::Yes;
  if (b.param && x_is_monomial(*b.param, d, nullptr)) return Tristate::Yes;
  for (int j = 1; j < d; ++j)
    if (j % p && !b.w.coeff(j).empty()) return Tristate::No;
  return Tristate::Unknown;
}

Elem restrict_to_subfield(const Field& from, Elem a, const Field& to) {
  if (from == to) return a;
  std::uint64_t p = from.p();
  unsigned kf = from.k(), kt = to.k();
  if (kf % kt) fail(ErrorKind::NoEmbedding, "target is not a subfield");
  // columns: images of the basis g^i of `to`
  std::vector<std::vector<std::uint64_t>> M(kf, std::vector<std::uint64_t>(kt + 1, 0));
  for (unsigned i = 0; i < kt; ++i) {
    std::vector<std::uint64_t> dg(kt, 0);
    dg[i] = 1;
    auto col = from.digits(embed(to, to.from_digits(dg), from));
    for (unsigned r = 0; r < kf && r < col.size(); ++r) M[r][i] = col[r];
  }
  auto rhs = from.digits(a);
  for (unsigned r = 0; r < kf && r < rhs.size(); ++r) M[r][kt] = rhs[r];
  Field Fp = Field::make(p);
  std::vector<int> pivcol;
  unsigned row = 0;
  for (unsigned col = 0; col < kt && row < kf; ++col) {
    unsigned piv = row;
    while (piv < kf && M[piv][col] == 0) ++piv;
    if (piv == kf) continue;
    std::swap(M[piv], M[row]);
    Elem inv = Fp.inv(M[row][col]);
    for (auto& v : M[row]) v = Fp.mul(v, inv);
    for (unsigned r = 0; r < kf; ++r) {
      if (r == row || M[r][col] == 0) continue;
      Elem f = M[r][col];
      for (unsigned k = 0; k <= kt; ++k) M[r][k] = Fp.sub(M[r][k], Fp.mul(f, M[row][k]));
    }
    pivcol.push_back(static_cast<int>(col));
    ++row;
  }
  for (unsigned r = row; r < kf; ++r)
    if (M[r][kt]) fail(ErrorKind::NoEmbedding, "element is not in the subfield");
  std::vector<std::uint64_t> out(kt, 0);
  for (unsigned r = 0; r < row; ++r) out[pivcol[r]] = M[r][kt];
  return to.from_digits(out);
}

BivarPoly key_polynomial(const Branch& b, int level) {
  const Field& F = b.w.F;
  std::int64_t n = b.degree();
  if (n % static_cast<std::int64_t>(F.p()) == 0) fail(ErrorKind::WildRamification, "key polynomials need a tame branch");
  SemigroupData S = semigroup_of_branch(b);
  if (level < 0 || level > S.h()) fail(ErrorKind::InvalidArgument, "key polynomial level out of range");
  if (level == S.h()) return b.w;
  CharSequence cs = char_sequence(S, F.p());
  std::int64_t cut = cs.b[level + 1];  // exponents i/n with i < cut (b_0 = n)
  const auto& P = *b.param;
  if (P.prec <= cut) fail(ErrorKind::PrecisionExhausted, "parametrization too short for the key polynomial");
  std::int64_t el = S.e(level), ind = n / el;
  ser::Vec A;  // truncated root in u = x^(1/ind)
  for (std::int64_t i = 0; i < cut && i < static_cast<std::int64_t>(P.y.size()); ++i) {
    if (!P.y[i]) continue;
    if (i % el) internal("truncated root has an unexpected exponent");
    std::size_t k = static_cast<std::size_t>(i / el);
    if (A.size() <= k) A.resize(k + 1, 0);
    A[k] = P.y[i];
  }
  Field E = F;
  if (ind > 1 && !F.root_of_unity(static_cast<std::uint64_t>(ind))) E = extension(F, unity_degree(F, static_cast<std::uint64_t>(ind)));
  Elem zeta = ind == 1 ? 1 : *E.root_of_unity(static_cast<std::uint64_t>(ind));
  ser::Vec Ae = E == F ? A : ser::embed(F, A, E);
  BivarPoly prod = BivarPoly::constant(E, 1);
  Elem z = 1;
  for (std::int64_t k = 0; k < ind; ++k) {
    ser::Vec Ak = Ae;
    Elem pw = 1;
    for (auto& c : Ak) {
      c = E.mul(c, pw);
      pw = E.mul(pw, z);
    }
    prod = prod * BivarPoly(E, {ser::neg(E, Ak), ser::Vec{1}});
    z = E.mul(z, zeta);
  }
  BivarPoly dsc = descend(prod, ind);
  if (E == F) return dsc;
  std::vector<ser::Vec> c;
  for (const auto& v : dsc.c) {
    ser::Vec w;
    for (Elem a : v) w.push_back(restrict_to_subfield(E, a, F));
    c.push_back(std::move(w));
  }
  return BivarPoly(F, std::move(c));
}

Rational branch_intersection(const Branch& a, const Branch& b) {
  std::int64_t N = std::min(a.w.prec, b.w.prec);
  return Rational(truncated_resultant_order(a.w, b.w, N));
}

Rational order_of_coincidence(const BivarPoly& f, const BivarPoly& g) {
  if (f.F != g.F) fail(ErrorKind::InvalidArgument, "polynomials over different fields");
  BivarPoly h = gcd_xy(f, g);
  if (h.at(0, 0) == 0 && !is_constant(h)) return Rational::infinity();
  return with_restarts(f.F, kDefaultPrecision, [&](const Field& E, std::int64_t N) {
    BivarPoly fe = E == f.F ? f : embed(f, E), ge = E == g.F ? g : embed(g, E);
    auto single = [&](const BivarPoly& q) {
      Decomposition D = branch_decompose_in(q, N);
      if (D.x_power != 0 || D.factors.size() != 1 || D.factors[0].multiplicity != 1)
        fail(ErrorKind::InvalidArgument, "order of coincidence needs irreducible inputs coprime with x");
      const Branch& b = D.factors[0].branch;
      if (has_puiseux_roots(b) == Tristate::No) fail(ErrorKind::NoPuiseuxRoots, "branch has no Puiseux root");
      if (b.degree() % static_cast<std::int64_t>(E.p()) == 0)
        fail(ErrorKind::WildRamification, "order of coincidence is computed on tame branches");
      return b;
    };
    Branch bf = single(fe), bg = single(ge);
    std::int64_t n = bf.degree(), m = bg.degree();
    Elem zeta = unity(E, static_cast<std::uint64_t>(m));
    TruncatedSeries alpha = conjugate_root(E, *bf.param, E, 1, n);
    Rational cap = min(alpha.precision(), Rational(bg.param->prec, m));
    Rational best(-1);
    Elem z = 1;
    for (std::int64_t k = 0; k < m; ++k) {
      TruncatedSeries beta = conjugate_root(E, *bg.param, E, z, m);
      TruncatedSeries diff = alpha - beta;
      auto ts = diff.terms();
      if (ts.empty() || !(ts.front().first < cap)) fail(ErrorKind::PrecisionExhausted, "coincidence beyond the precision");
      best = max(best, ts.front().first);
      z = E.mul(z, zeta);
    }
    return best;
  });
}

// ---------------------------------------------------------------- text forms

namespace {

std::string series_in_t(const Field& F, const ser::Vec& v, std::int64_t prec) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    std::string c = F.format(v[i]);
    if (c.find_first_of("+*") != std::string::npos) c = "(" + c + ")";
    std::string term;
    if (i == 0)
      term = c;
    else {
      term = c == "1" ? "" : c + "*";
      term += i == 1 ? "t" : "t^" + std::to_string(i);
    }
    s += (s.empty() ? "" : " + ") + term;
  }
  if (prec < kExact) s += (s.empty() ? "" : " + ") + std::string("O(t^") + std::to_string(prec) + ")";
  return s.empty() ? "0" : s;
}

}  // namespace

std::string Parametrization::str() const { return "x=" + series_in_t(F, x, prec) + ", y=" + series_in_t(F, y, prec); }

Parametrization Parametrization::parse(const Field& F, const std::string& text) {
  Parametrization P;
  P.F = F;
  bool hx = false, hy = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    start = comma == std::string::npos ? text.size() + 1 : comma + 1;
    auto eq = part.find('=');
    if (eq == std::string::npos) fail(ErrorKind::ParseError, "expected x=... and y=... in '" + text + "'");
    std::string lhs = part.substr(0, eq), rhs = part.substr(eq + 1);
    lhs.erase(std::remove_if(lhs.begin(), lhs.end(), ::isspace), lhs.end());
    for (char& ch : rhs) {
      if (ch == 't') ch = 'x';
      else if (ch == 'x' || ch == 'y') fail(ErrorKind::ParseError, "parametrization components are series in t");
    }
    BivarPoly e = BivarPoly::parse(F, rhs);
    ser::Vec v = e.coeff(0);
    if (lhs == "x") {
      P.x = v;
      hx = true;
    } else if (lhs == "y") {
      P.y = v;
      hy = true;
    } else {
      fail(ErrorKind::ParseError, "unknown component '" + lhs + "'");
    }
  }
  if (!hx || !hy) fail(ErrorKind::ParseError, "both x=... and y=... are required");
  if (ser::ord(P.x) < 1) fail(ErrorKind::NoParametrization, "x(t) must have positive order");
  return P;
}

}  // namespace ewt
