#include "ewt/bivar.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace ewt {

namespace {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a >= kExact || b >= kExact) return kExact;
  return std::min(a + b, kExact);
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

// binomial coefficients mod p up to row n
std::vector<std::vector<Elem>> pascal(const Field& F, int n) {
  std::vector<std::vector<Elem>> C(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    C[i].assign(static_cast<std::size_t>(i) + 1, 1);
    for (int k = 1; k < i; ++k) C[i][k] = F.add(C[i - 1][k - 1], C[i - 1][k]);
  }
  return C;
}

void align(BivarPoly& a, BivarPoly& b) {
  if (a.F != b.F) fail(ErrorKind::InvalidArgument, "polynomials over different fields");
  if (a.ram == b.ram) return;
  std::int64_t n = lcm64(a.ram, b.ram);
  a = a.with_ramification(n);
  b = b.with_ramification(n);
}

}  // namespace

BivarPoly::BivarPoly(Field field, std::vector<ser::Vec> coeffs, std::int64_t precision, std::int64_t ramification)
    : F(std::move(field)), ram(ramification), prec(precision), c(std::move(coeffs)) {
  normalize();
}

BivarPoly BivarPoly::monomial(const Field& F, Elem a, std::int64_t i, int j) {
  if (a == 0) return zero(F);
  std::vector<ser::Vec> c(static_cast<std::size_t>(j) + 1);
  c[j].assign(static_cast<std::size_t>(i) + 1, 0);
  c[j][i] = a;
  return BivarPoly(F, std::move(c));
}

void BivarPoly::normalize() {
  for (auto& v : c) {
    if (prec < kExact) v = ser::truncate(std::move(v), prec);
    ser::trim(v);
  }
  while (!c.empty() && c.back().empty()) c.pop_back();
}

Elem BivarPoly::at(std::int64_t i, int j) const {
  if (j < 0 || j > deg_y() || i < 0) return 0;
  const auto& v = c[static_cast<std::size_t>(j)];
  return i < static_cast<std::int64_t>(v.size()) ? v[static_cast<std::size_t>(i)] : 0;
}

std::int64_t BivarPoly::x_valuation() const {
  std::int64_t best = -1;
  for (const auto& v : c) {
    std::int64_t o = ser::ord(v);
    if (o >= 0 && (best < 0 || o < best)) best = o;
  }
  return best;
}

int BivarPoly::y_order_at_zero() const {
  for (int j = 0; j <= deg_y(); ++j)
    if (!c[j].empty() && c[j][0] != 0) return j;
  return -1;
}

std::int64_t BivarPoly::x_degree() const {
  std::int64_t d = -1;
  for (const auto& v : c) d = std::max<std::int64_t>(d, static_cast<std::int64_t>(v.size()) - 1);
  return d;
}

BivarPoly BivarPoly::truncated(std::int64_t n) const {
  BivarPoly r = *this;
  r.prec = std::min(prec, n);
  r.normalize();
  return r;
}

BivarPoly BivarPoly::with_ramification(std::int64_t m) const {
  if (m % ram != 0) fail(ErrorKind::InvalidArgument, "ramification must be a multiple of the current one");
  std::int64_t f = m / ram;
  if (f == 1) return *this;
  std::vector<ser::Vec> nc;
  for (const auto& v : c) nc.push_back(ser::stretch(v, f));
  return BivarPoly(F, std::move(nc), is_exact() ? kExact : checked_mul(prec, f), m);
}

namespace {

std::string paren(const std::string& s) {
  if (s.find_first_of("+*") != std::string::npos) return "(" + s + ")";
  return s;
}

}  // namespace

std::string BivarPoly::str() const {
  std::string s;
  for (int j = deg_y(); j >= 0; --j) {
    const auto& v = c[j];
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i]) continue;
      std::vector<std::string> parts;
      std::string cs = F.format(v[i]);
      bool has_var = i > 0 || j > 0;
      if (cs != "1" || !has_var) parts.push_back(has_var ? paren(cs) : cs);
      if (i > 0) {
        Rational e(static_cast<std::int64_t>(i), ram);
        std::string xs = "x";
        if (e != Rational(1)) xs += "^" + (e.is_integer() ? e.str() : "(" + e.str() + ")");
        parts.push_back(xs);
      }
      if (j > 0) parts.push_back(j == 1 ? "y" : "y^" + std::to_string(j));
      std::string term;
      for (std::size_t k = 0; k < parts.size(); ++k) term += (k ? "*" : "") + parts[k];
      if (!s.empty()) s += " + ";
      s += term;
    }
  }
  if (!is_exact()) {
    if (!s.empty()) s += " + ";
    Rational e(prec, ram);
    s += "O(x^" + (e.is_integer() ? e.str() : "(" + e.str() + ")") + ")";
  }
  return s.empty() ? "0" : s;
}

bool BivarPoly::operator==(const BivarPoly& o) const {
  if (F != o.F) return false;
  BivarPoly a = *this, b = o;
  align(a, b);
  return a.c == b.c && a.prec == b.prec;
}

BivarPoly operator+(const BivarPoly& a0, const BivarPoly& b0) {
  BivarPoly a = a0, b = b0;
  align(a, b);
  std::vector<ser::Vec> c(std::max(a.c.size(), b.c.size()));
  for (std::size_t j = 0; j < c.size(); ++j)
    c[j] = ser::add(a.F, j < a.c.size() ? a.c[j] : ser::Vec{}, j < b.c.size() ? b.c[j] : ser::Vec{});
  return BivarPoly(a.F, std::move(c), std::min(a.prec, b.prec), a.ram);
}

BivarPoly operator-(const BivarPoly& a) {
  std::vector<ser::Vec> c;
  for (const auto& v : a.c) c.push_back(ser::neg(a.F, v));
  return BivarPoly(a.F, std::move(c), a.prec, a.ram);
}

BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) { return a + (-b); }

BivarPoly operator*(const BivarPoly& a0, const BivarPoly& b0) {
  BivarPoly a = a0, b = b0;
  align(a, b);
  if ((a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact())) return BivarPoly(a.F, {}, kExact, a.ram);
  std::int64_t va = a.is_zero() ? a.prec : a.x_valuation();
  std::int64_t vb = b.is_zero() ? b.prec : b.x_valuation();
  std::int64_t prec = std::min(sat_add(a.prec, vb), sat_add(b.prec, va));
  std::int64_t len = prec >= kExact ? a.x_degree() + b.x_degree() + 1 : prec;
  std::vector<ser::Vec> c(a.c.size() + b.c.size());
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].empty()) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j].empty()) continue;
      c[i + j] = ser::add(a.F, c[i + j], ser::mul(a.F, a.c[i], b.c[j], len));
    }
  }
  return BivarPoly(a.F, std::move(c), prec, a.ram);
}

BivarPoly pow(const BivarPoly& a, unsigned e) {
  BivarPoly r = BivarPoly(a.F, {ser::Vec{1}}, kExact, a.ram);
  BivarPoly b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

BivarPoly scale(const BivarPoly& a, Elem s) {
  std::vector<ser::Vec> c;
  for (const auto& v : a.c) c.push_back(ser::scale(a.F, v, s));
  return BivarPoly(a.F, std::move(c), a.prec, a.ram);
}

BivarPoly embed(const BivarPoly& a, const Field& to) {
  std::vector<ser::Vec> c;
  for (const auto& v : a.c) c.push_back(ser::embed(a.F, v, to));
  return BivarPoly(to, std::move(c), a.prec, a.ram);
}

BivarPoly derivative_y(const BivarPoly& f) {
  std::vector<ser::Vec> c;
  for (int j = 1; j <= f.deg_y(); ++j) c.push_back(ser::scale(f.F, f.c[j], f.F.from_int(j)));
  return BivarPoly(f.F, std::move(c), f.prec, f.ram);
}

BivarPoly derivative_x(const BivarPoly& f) {
  if (f.ram != 1) fail(ErrorKind::InvalidArgument, "derivative_x needs integral exponents");
  std::vector<ser::Vec> c;
  for (const auto& v : f.c) {
    ser::Vec d;
    for (std::size_t i = 1; i < v.size(); ++i) d.push_back(f.F.mul(v[i], f.F.from_int(static_cast<std::int64_t>(i % f.F.p()))));
    c.push_back(std::move(d));
  }
  return BivarPoly(f.F, std::move(c), f.is_exact() ? kExact : f.prec - 1, 1);
}

BivarPoly ramify_x(const BivarPoly& f, std::int64_t m) {
  if (m < 1) fail(ErrorKind::InvalidArgument, "ramification exponent must be positive");
  std::vector<ser::Vec> c;
  for (const auto& v : f.c) c.push_back(ser::stretch(v, m));
  return BivarPoly(f.F, std::move(c), f.is_exact() ? kExact : checked_mul(f.prec, m), f.ram);
}

BivarPoly divide_x_power(const BivarPoly& f, std::int64_t k) {
  if (k == 0) return f;
  std::vector<ser::Vec> c;
  for (const auto& v : f.c) {
    std::int64_t o = ser::ord(v);
    if (o >= 0 && o < k) fail(ErrorKind::InvalidArgument, "not divisible by the requested x-power");
    c.push_back(o < 0 ? ser::Vec{} : ser::Vec(v.begin() + k, v.end()));
  }
  return BivarPoly(f.F, std::move(c), f.is_exact() ? kExact : f.prec - k, f.ram);
}

BivarPoly shift_y(const BivarPoly& f0, const TruncatedSeries& alpha, const Rational& N) {
  if (f0.F != alpha.field()) fail(ErrorKind::InvalidArgument, "series over a different field");
  std::int64_t n = lcm64(f0.ram, alpha.ramification());
  BivarPoly f = f0.with_ramification(n);
  TruncatedSeries al = alpha.with_ramification(n);
  std::int64_t prec = std::min(f.prec, al.raw_precision());
  if (!N.is_inf()) prec = std::min(prec, ceil_div(checked_mul(N.num(), n), N.den()));
  const Field& F = f.F;
  int d = f.deg_y();
  if (d < 0) return BivarPoly(F, {}, prec, n);
  std::int64_t len = prec;
  if (prec >= kExact) len = f.x_degree() + static_cast<std::int64_t>(al.coeffs().size()) * d + 1;
  std::vector<ser::Vec> apow(static_cast<std::size_t>(d) + 1);
  apow[0] = ser::truncate(ser::Vec{1}, len);
  for (int k = 1; k <= d; ++k) apow[k] = ser::mul(F, apow[k - 1], al.coeffs(), len);
  auto C = pascal(F, d);
  std::vector<ser::Vec> c(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) {
    if (f.c[j].empty()) continue;
    for (int k = 0; k <= j; ++k) {
      if (C[j][k] == 0) continue;
      ser::Vec t = ser::mul(F, f.c[j], apow[j - k], len);
      c[k] = ser::add(F, c[k], ser::scale(F, t, C[j][k]));
    }
  }
  return BivarPoly(F, std::move(c), prec, n);
}

TruncatedSeries substitute_y(const BivarPoly& f, const TruncatedSeries& alpha, const Rational& N) {
  BivarPoly s = shift_y(f, alpha, N);
  return TruncatedSeries(s.F, s.ram, s.coeff(0), s.prec);
}

// ---------------------------------------------------------------- Hensel

namespace {

using YPolyT = std::vector<UPoly>;  // t-major: entry i is the y-polynomial at t^i

YPolyT to_t_major(const BivarPoly& V, std::int64_t N) {
  YPolyT out(static_cast<std::size_t>(N));
  for (int j = 0; j <= V.deg_y(); ++j) {
    const auto& v = V.c[j];
    for (std::size_t i = 0; i < v.size() && static_cast<std::int64_t>(i) < N; ++i) {
      if (!v[i]) continue;
      if (out[i].size() <= static_cast<std::size_t>(j)) out[i].resize(static_cast<std::size_t>(j) + 1, 0);
      out[i][j] = v[i];
    }
  }
  return out;
}

BivarPoly from_t_major(const Field& F, const YPolyT& t, std::int64_t N, std::int64_t ram) {
  std::size_t dy = 0;
  for (const auto& p : t) dy = std::max(dy, p.size());
  std::vector<ser::Vec> c(dy);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t[i].size(); ++j) {
      if (!t[i][j]) continue;
      if (c[j].size() <= i) c[j].resize(i + 1, 0);
      c[j][i] = t[i][j];
    }
  return BivarPoly(F, std::move(c), N, ram);
}

}  // namespace

std::pair<BivarPoly, BivarPoly> hensel_lift(const BivarPoly& V, const UPoly& a0_in, const UPoly& b0_in, std::int64_t N) {
  const Field& F = V.F;
  if (N > V.prec) N = V.prec;
  if (N <= 0) fail(ErrorKind::PrecisionExhausted, "no precision left for Hensel lifting");
  UPoly a0 = a0_in, b0 = b0_in;
  upoly::trim(a0);
  upoly::trim(b0);
  YPolyT Vt = to_t_major(V, N);
  UPoly prod = upoly::mul(F, a0, b0);
  UPoly v0 = Vt.empty() ? UPoly{} : Vt[0];
  upoly::trim(v0);
  if (prod != v0) fail(ErrorKind::InvalidArgument, "hensel_lift: a0*b0 differs from V(0,y)");
  if (a0.empty() || a0.back() != 1) fail(ErrorKind::InvalidArgument, "hensel_lift: a0 must be monic");
  YPolyT A(static_cast<std::size_t>(N)), B(static_cast<std::size_t>(N));
  A[0] = a0;
  B[0] = b0;
  if (upoly::deg(a0) == 0) {
    YPolyT one(static_cast<std::size_t>(N));
    one[0] = UPoly{1};
    return {from_t_major(F, one, N, V.ram), V.truncated(N)};
  }
  UPoly s = upoly::inv_mod(F, b0, a0);
  for (std::int64_t i = 1; i < N; ++i) {
    UPoly e = Vt[i];
    for (std::int64_t k = 1; k < i; ++k) {
      if (A[k].empty() || B[i - k].empty()) continue;
      e = upoly::sub(F, e, upoly::mul(F, A[k], B[i - k]));
    }
    upoly::trim(e);
    if (e.empty()) continue;
    UPoly da = upoly::mod(F, upoly::mul(F, e, s), a0);
    UPoly q, r;
    upoly::divmod(F, upoly::sub(F, e, upoly::mul(F, b0, da)), a0, q, r);
    if (!r.empty()) fail(ErrorKind::InvalidArgument, "hensel_lift: inexact division");
    A[i] = da;
    B[i] = q;
  }
  return {from_t_major(F, A, N, V.ram), from_t_major(F, B, N, V.ram)};
}

WeierstrassSplit weierstrass_prepare(const BivarPoly& f, std::int64_t N) {
  std::int64_t a = f.x_valuation();
  if (a < 0) fail(ErrorKind::NotRegularInY, "f vanishes identically");
  BivarPoly V = divide_x_power(f, a).truncated(N);
  int d = V.y_order_at_zero();
  if (d < 0) fail(ErrorKind::NotRegularInY, "f(0,y) vanishes");
  UPoly v0;
  for (int j = 0; j <= V.deg_y(); ++j) v0.push_back(V.at(0, j));
  upoly::trim(v0);
  UPoly a0(static_cast<std::size_t>(d) + 1, 0);
  a0[d] = 1;
  UPoly b0(v0.begin() + d, v0.end());
  auto [w, u] = hensel_lift(V, a0, b0, N);
  return WeierstrassSplit{a, u, w};
}

// ---------------------------------------------------------------- resultants over F[x]

namespace {

using XPoly = UPoly;
using YPoly = std::vector<XPoly>;  // y-major, entries in F[x]

YPoly to_ypoly(const BivarPoly& f) {
  if (!f.is_exact() || f.ram != 1) fail(ErrorKind::InvalidArgument, "exact polynomial with integral exponents required");
  return YPoly(f.c.begin(), f.c.end());
}

BivarPoly from_ypoly(const Field& F, const YPoly& p) { return BivarPoly(F, std::vector<ser::Vec>(p.begin(), p.end())); }

void ytrim(YPoly& a) {
  for (auto& c : a) upoly::trim(c);
  while (!a.empty() && a.back().empty()) a.pop_back();
}

int ydeg(const YPoly& a) { return static_cast<int>(a.size()) - 1; }

XPoly xpow(const Field& F, const XPoly& a, int e) {
  XPoly r{1};
  for (int i = 0; i < e; ++i) r = upoly::mul(F, r, a);
  return r;
}

XPoly xdiv_exact(const Field& F, const XPoly& a, const XPoly& b) {
  XPoly q, r;
  upoly::divmod(F, a, b, q, r);
  if (!r.empty()) fail(ErrorKind::InvalidArgument, "inexact division in F[x]");
  return q;
}

YPoly yscale(const Field& F, const YPoly& a, const XPoly& s) {
  YPoly r;
  for (const auto& c : a) r.push_back(upoly::mul(F, c, s));
  ytrim(r);
  return r;
}

YPoly ydiv_scalar(const Field& F, const YPoly& a, const XPoly& s) {
  YPoly r;
  for (const auto& c : a) r.push_back(c.empty() ? XPoly{} : xdiv_exact(F, c, s));
  ytrim(r);
  return r;
}

XPoly content(const Field& F, const YPoly& a) {
  XPoly g;
  for (const auto& c : a) {
    g = upoly::gcd(F, g, c);
    if (upoly::deg(g) == 0) break;
  }
  return g;
}

YPoly prem(const Field& F, const YPoly& A, const YPoly& B) {
  YPoly R = A;
  ytrim(R);
  int db = ydeg(B);
  int e = ydeg(A) - db + 1;
  const XPoly& l = B.back();
  while (!R.empty() && ydeg(R) >= db) {
    XPoly lr = R.back();
    int k = ydeg(R) - db;
    YPoly nr = yscale(F, R, l);
    nr.resize(std::max(nr.size(), R.size()));
    for (int j = 0; j <= db; ++j) nr[j + k] = upoly::sub(F, nr[j + k], upoly::mul(F, lr, B[j]));
    ytrim(nr);
    R = std::move(nr);
    --e;
  }
  if (e > 0 && !R.empty()) R = yscale(F, R, xpow(F, l, e));
  return R;
}

}  // namespace

UPoly resultant_y(const BivarPoly& f, const BivarPoly& g) {
  const Field& F = f.F;
  YPoly A = to_ypoly(f), B = to_ypoly(g);
  ytrim(A);
  ytrim(B);
  if (A.empty() || B.empty()) return {};
  int s = 1;
  if (ydeg(A) < ydeg(B)) {
    std::swap(A, B);
    if ((ydeg(A) & 1) && (ydeg(B) & 1)) s = -s;
  }
  if (ydeg(B) == 0) {
    XPoly r = xpow(F, B[0], ydeg(A));
    return s < 0 ? upoly::scale(F, r, F.neg(1)) : r;
  }
  XPoly a = content(F, A), b = content(F, B);
  A = ydiv_scalar(F, A, a);
  B = ydiv_scalar(F, B, b);
  XPoly t = upoly::mul(F, xpow(F, a, ydeg(B)), xpow(F, b, ydeg(A)));
  XPoly gg{1}, h{1};
  while (true) {
    int dA = ydeg(A), dB = ydeg(B), delta = dA - dB;
    if ((dA & 1) && (dB & 1)) s = -s;
    YPoly R = prem(F, A, B);
    A = B;
    if (R.empty()) return {};
    B = ydiv_scalar(F, R, upoly::mul(F, gg, xpow(F, h, delta)));
    gg = A.back();
    if (delta >= 1) h = xdiv_exact(F, xpow(F, gg, delta), xpow(F, h, delta - 1));
    if (ydeg(B) == 0) {
      int da = ydeg(A);
      XPoly hh = xdiv_exact(F, xpow(F, B[0], da), xpow(F, h, da - 1));
      XPoly r = upoly::mul(F, t, hh);
      return s < 0 ? upoly::scale(F, r, F.neg(1)) : r;
    }
  }
}

UPoly resultant_y_sylvester(const BivarPoly& f, const BivarPoly& g) {
  const Field& F = f.F;
  YPoly A = to_ypoly(f), B = to_ypoly(g);
  ytrim(A);
  ytrim(B);
  if (A.empty() || B.empty()) return {};
  int m = ydeg(A), n = ydeg(B), sz = m + n;
  if (sz == 0) return XPoly{1};
  std::vector<std::vector<XPoly>> M(static_cast<std::size_t>(sz), std::vector<XPoly>(static_cast<std::size_t>(sz)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) M[i][i + k] = A[m - k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) M[n + i][i + k] = B[n - k];
  XPoly prev{1};
  bool neg = false;
  for (int k = 0; k < sz - 1; ++k) {
    if (M[k][k].empty()) {
      int r = k + 1;
      while (r < sz && M[r][k].empty()) ++r;
      if (r == sz) return {};
      std::swap(M[k], M[r]);
      neg = !neg;
    }
    for (int i = k + 1; i < sz; ++i)
      for (int j = k + 1; j < sz; ++j) {
        XPoly v = upoly::sub(F, upoly::mul(F, M[i][j], M[k][k]), upoly::mul(F, M[i][k], M[k][j]));
        M[i][j] = v.empty() ? v : xdiv_exact(F, v, prev);
      }
    prev = M[k][k];
  }
  XPoly det = M[sz - 1][sz - 1];
  return neg ? upoly::scale(F, det, F.neg(1)) : det;
}

namespace {

YPoly primitive_part(const Field& F, const YPoly& a) {
  XPoly c = content(F, a);
  return c.empty() ? a : ydiv_scalar(F, a, c);
}

BivarPoly normalize_unit(const Field& F, YPoly a) {
  ytrim(a);
  if (a.empty()) return BivarPoly::zero(F);
  Elem l = a.back().back();
  return scale(from_ypoly(F, a), F.inv(l));
}

}  // namespace

BivarPoly gcd_xy(const BivarPoly& f, const BivarPoly& g) {
  const Field& F = f.F;
  YPoly A = to_ypoly(f), B = to_ypoly(g);
  ytrim(A);
  ytrim(B);
  if (A.empty()) return normalize_unit(F, B);
  if (B.empty()) return normalize_unit(F, A);
  XPoly c = upoly::gcd(F, content(F, A), content(F, B));
  A = primitive_part(F, A);
  B = primitive_part(F, B);
  if (ydeg(A) < ydeg(B)) std::swap(A, B);
  while (!B.empty() && ydeg(B) > 0) {
    YPoly R = prem(F, A, B);
    A = std::move(B);
    B = R.empty() ? R : primitive_part(F, R);
  }
  YPoly G = B.empty() ? A : YPoly{XPoly{1}};
  G = yscale(F, primitive_part(F, G), c);
  return normalize_unit(F, G);
}

BivarPoly divide_exact(const BivarPoly& f, const BivarPoly& g) {
  const Field& F = f.F;
  YPoly R = to_ypoly(f), B = to_ypoly(g);
  ytrim(R);
  ytrim(B);
  if (B.empty()) fail(ErrorKind::InvalidArgument, "division by zero polynomial");
  int db = ydeg(B);
  YPoly Q(R.size() >= B.size() ? R.size() - B.size() + 1 : 0);
  while (!R.empty() && ydeg(R) >= db) {
    int k = ydeg(R) - db;
    XPoly q = xdiv_exact(F, R.back(), B.back());
    Q[k] = q;
    for (int j = 0; j <= db; ++j) R[j + k] = upoly::sub(F, R[j + k], upoly::mul(F, q, B[j]));
    ytrim(R);
  }
  if (!R.empty()) fail(ErrorKind::InvalidArgument, "polynomial is not divisible");
  ytrim(Q);
  return from_ypoly(F, Q);
}

// ---------------------------------------------------------------- truncated resultants

std::int64_t truncated_resultant_order(const BivarPoly& a0, const BivarPoly& b0, std::int64_t N) {
  BivarPoly a = a0, b = b0;
  align(a, b);
  const Field& F = a.F;
  N = std::min({N, a.prec, b.prec});
  if (N <= 0) fail(ErrorKind::PrecisionExhausted, "no precision for the resultant");
  int d = a.deg_y();
  if (d < 0) fail(ErrorKind::InvalidArgument, "resultant with zero polynomial");
  if (a.c[d].size() != 1 || a.c[d][0] != 1) fail(ErrorKind::InvalidArgument, "first resultant argument must be monic");
  if (d == 0) return 0;
  auto reduce = [&](std::vector<ser::Vec> r) {
    for (int k = static_cast<int>(r.size()) - 1; k >= d; --k) {
      ser::Vec l = r[k];
      if (l.empty()) continue;
      for (int j = 0; j < d; ++j) r[k - d + j] = ser::sub(F, r[k - d + j], ser::mul(F, l, a.c[j], N));
      r[k].clear();
    }
    r.resize(static_cast<std::size_t>(d));
    for (auto& v : r) v = ser::truncate(std::move(v), N);
    return r;
  };
  std::vector<std::vector<ser::Vec>> M(static_cast<std::size_t>(d));  // M[col][row]
  std::vector<ser::Vec> col = reduce(b.c);
  for (int k = 0; k < d; ++k) {
    M[k] = col;
    std::vector<ser::Vec> nxt(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j < d; ++j) nxt[j + 1] = col[j];
    col = reduce(nxt);
  }
  // valuation-pivoted elimination keeps absolute precision N
  std::int64_t total = 0;
  for (int k = 0; k < d; ++k) {
    int pr = -1, pc = -1;
    std::int64_t best = -1;
    for (int cidx = k; cidx < d; ++cidx)
      for (int r = k; r < d; ++r) {
        std::int64_t o = ser::ord(M[cidx][r]);
        if (o >= 0 && (best < 0 || o < best)) {
          best = o;
          pr = r;
          pc = cidx;
        }
      }
    if (best < 0) fail(ErrorKind::PrecisionExhausted, "resultant vanishes modulo x^" + std::to_string(N));
    std::swap(M[k], M[pc]);
    if (pr != k)
      for (int cidx = 0; cidx < d; ++cidx) std::swap(M[cidx][k], M[cidx][pr]);
    total += best;
    const ser::Vec& piv = M[k][k];
    ser::Vec unit(piv.begin() + best, piv.end());
    ser::Vec uinv = ser::inv(F, unit, N);
    for (int r = k + 1; r < d; ++r) {
      const ser::Vec& e = M[k][r];
      if (e.empty()) continue;
      ser::Vec q(e.begin() + best, e.end());
      q = ser::mul(F, q, uinv, N - best);
      for (int cidx = k + 1; cidx < d; ++cidx) {
        if (M[cidx][k].empty()) continue;
        M[cidx][r] = ser::sub(F, M[cidx][r], ser::mul(F, q, M[cidx][k], N));
      }
      M[k][r].clear();
    }
  }
  return total;
}

// ---------------------------------------------------------------- intersection numbers

namespace {

Rational i0_with_x(const BivarPoly& g) {
  int o = g.y_order_at_zero();
  return o < 0 ? Rational::infinity() : Rational(o);
}

Rational i0_no_x(const BivarPoly& f, const BivarPoly& g) {
  if (f.at(0, 0) != 0 || g.at(0, 0) != 0) return Rational(0);
  UPoly R = resultant_y(f, g);
  if (R.empty()) {
    BivarPoly h = gcd_xy(f, g);
    if (h.at(0, 0) == 0) return Rational::infinity();
    return i0_no_x(divide_exact(f, h), divide_exact(g, h));
  }
  std::int64_t N = ser::ord(R) + 1;
  WeierstrassSplit W = weierstrass_prepare(f, N);
  if (W.w.deg_y() == 0) return Rational(0);
  return Rational(truncated_resultant_order(W.w, g.truncated(N), N));
}

}  // namespace

Rational intersection_multiplicity(const BivarPoly& f, const BivarPoly& g) {
  if (f.F != g.F) fail(ErrorKind::InvalidArgument, "polynomials over different fields");
  if (f.is_zero() || g.is_zero()) {
    const BivarPoly& o = f.is_zero() ? g : f;
    return o.at(0, 0) != 0 ? Rational(0) : Rational::infinity();
  }
  if (f.at(0, 0) != 0 || g.at(0, 0) != 0) return Rational(0);
  std::int64_t a = f.x_valuation(), b = g.x_valuation();
  if (a > 0 && b > 0) return Rational::infinity();
  BivarPoly f1 = divide_x_power(f, a), g1 = divide_x_power(g, b);
  Rational total(0);
  if (a > 0) total += Rational(a) * i0_with_x(g1);
  if (b > 0) total += Rational(b) * i0_with_x(f1);
  return total + i0_no_x(f1, g1);
}

Rational log_distance(const BivarPoly& f, const BivarPoly& g) {
  Rational fx = i0_with_x(f), gx = i0_with_x(g);
  if (fx.is_inf() || gx.is_inf() || fx.is_zero() || gx.is_zero())
    fail(ErrorKind::InvalidArgument, "log_distance needs series coprime with x through the origin");
  Rational i = intersection_multiplicity(f, g);
  if (i.is_inf()) return i;
  return i / (fx * gx);
}

// ---------------------------------------------------------------- parsing

namespace {

class ExprParser {
 public:
  ExprParser(const Field& F, const std::string& s) : F_(F), s_(s) {}

  BivarPoly run() {
    BivarPoly r = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& m) {
    fail(ErrorKind::ParseError, m + " at column " + std::to_string(pos_ + 1) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char ch) {
    skip();
    return pos_ < s_.size() && s_[pos_] == ch;
  }
  BivarPoly expr() {
    BivarPoly r;
    bool neg = false;
    if (peek('-')) {
      ++pos_;
      neg = true;
    } else if (peek('+')) {
      ++pos_;
    }
    r = term();
    if (neg) r = -r;
    while (true) {
      if (peek('+')) {
        ++pos_;
        r = r + term();
      } else if (peek('-')) {
        ++pos_;
        r = r - term();
      } else {
        return r;
      }
    }
  }
  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    char ch = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(ch)) || ch == '(' || ch == 'x' || ch == 'y' || ch == 'g';
  }
  BivarPoly term() {
    BivarPoly r = power();
    while (true) {
      if (peek('*')) {
        ++pos_;
        r = r * power();
      } else if (starts_primary()) {
        r = r * power();
      } else {
        return r;
      }
    }
  }
  BivarPoly power() {
    BivarPoly b = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (st == pos_) error("expected a non-negative integer exponent");
      unsigned long e = std::stoul(s_.substr(st, pos_ - st));
      if (e > 100000) error("exponent too large");
      b = pow(b, static_cast<unsigned>(e));
    }
    return b;
  }
  BivarPoly primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      BivarPoly r = expr();
      if (!peek(')')) error("expected ')'");
      ++pos_;
      return r;
    }
    if (ch == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string digits = s_.substr(st, pos_ - st);
      // reduce the decimal literal mod p digit by digit
      Elem v = 0;
      for (char dch : digits) v = F_.add(F_.mul(v, F_.from_int(10)), F_.from_int(dch - '0'));
      return BivarPoly::constant(F_, v);
    }
    ++pos_;
    if (ch == 'x') return BivarPoly::var_x(F_);
    if (ch == 'y') return BivarPoly::var_y(F_);
    if (ch == 'g') return BivarPoly::constant(F_, F_.gen());
    --pos_;
    error("unexpected '" + std::string(1, ch) + "'");
  }

  const Field& F_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

BivarPoly BivarPoly::parse(const Field& F, const std::string& text) { return ExprParser(F, text).run(); }

}  // namespace ewt
