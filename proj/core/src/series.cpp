#include "ewt/series.hpp"

#include <algorithm>
#include <cctype>

namespace ewt {

namespace ser {

void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::int64_t ord(const Vec& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) return static_cast<std::int64_t>(i);
  return -1;
}

Vec add(const Field& F, const Vec& a, const Vec& b) {
  Vec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

Vec sub(const Field& F, const Vec& a, const Vec& b) {
  Vec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

Vec neg(const Field& F, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.neg(a[i]);
  return r;
}

Vec scale(const Field& F, const Vec& a, Elem c) {
  if (c == 0) return {};
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  return r;
}

Vec truncate(Vec a, std::int64_t n) {
  if (n < 0) n = 0;
  if (static_cast<std::int64_t>(a.size()) > n) a.resize(static_cast<std::size_t>(n));
  trim(a);
  return a;
}

Vec mul(const Field& F, const Vec& a, const Vec& b, std::int64_t n) {
  if (a.empty() || b.empty() || n <= 0) return {};
  std::size_t len = std::min<std::size_t>(a.size() + b.size() - 1, static_cast<std::size_t>(std::min<std::int64_t>(n, INT32_MAX)));
  Vec r(len, 0);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (!a[i]) continue;
    std::size_t lim = std::min(b.size(), len - i);
    for (std::size_t j = 0; j < lim; ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

Vec inv(const Field& F, const Vec& a, std::int64_t n) {
  if (a.empty() || a[0] == 0) fail(ErrorKind::InvalidArgument, "series inverse of a non-unit");
  Vec r(static_cast<std::size_t>(n), 0);
  Elem i0 = F.inv(a[0]);
  r[0] = i0;
  for (std::int64_t k = 1; k < n; ++k) {
    Elem s = 0;
    for (std::int64_t j = 1; j <= k && j < static_cast<std::int64_t>(a.size()); ++j) s = F.add(s, F.mul(a[j], r[k - j]));
    r[k] = F.neg(F.mul(s, i0));
  }
  trim(r);
  return r;
}

Vec pow(const Field& F, const Vec& a, std::uint64_t e, std::int64_t n) {
  Vec r{1};
  r = truncate(r, n);
  Vec b = truncate(a, n);
  while (e) {
    if (e & 1) r = mul(F, r, b, n);
    e >>= 1;
    if (e) b = mul(F, b, b, n);
  }
  return r;
}

Vec compose(const Field& F, const Vec& a, const Vec& x, std::int64_t n) {
  Vec r;
  for (std::size_t i = a.size(); i-- > 0;) {
    r = mul(F, r, x, n);
    if (a[i]) r = add(F, r, truncate(Vec{a[i]}, n));
  }
  return r;
}

Vec stretch(const Vec& a, std::int64_t m) {
  if (a.empty()) return {};
  Vec r((a.size() - 1) * static_cast<std::size_t>(m) + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i * static_cast<std::size_t>(m)] = a[i];
  return r;
}

Vec shift(const Vec& a, std::int64_t k) {
  if (a.empty()) return {};
  Vec r(static_cast<std::size_t>(k), 0);
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

Vec embed(const Field& from, const Vec& a, const Field& to) { return ewt::embed(from, a, to); }

}  // namespace ser

namespace {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a >= kExact || b >= kExact) return kExact;
  return std::min(a + b, kExact);
}

}  // namespace

TruncatedSeries::TruncatedSeries(Field F, std::int64_t ram, ser::Vec coeffs, std::int64_t prec)
    : F_(std::move(F)), ram_(ram), prec_(prec), c_(std::move(coeffs)) {
  if (ram_ < 1) fail(ErrorKind::InvalidArgument, "ramification must be positive");
  normalize();
}

void TruncatedSeries::normalize() {
  if (prec_ < kExact) c_ = ser::truncate(std::move(c_), prec_);
  ser::trim(c_);
}

TruncatedSeries TruncatedSeries::zero(const Field& F, std::int64_t ram, std::int64_t prec) {
  return TruncatedSeries(F, ram, {}, prec);
}

TruncatedSeries TruncatedSeries::monomial(const Field& F, Elem c, const Rational& e) {
  if (e.is_inf() || e < Rational(0)) fail(ErrorKind::InvalidArgument, "monomial exponent must be finite and >= 0");
  ser::Vec v(static_cast<std::size_t>(e.num()) + 1, 0);
  v.back() = c;
  return TruncatedSeries(F, e.den(), std::move(v));
}

TruncatedSeries TruncatedSeries::from_terms(const Field& F, const std::vector<std::pair<Rational, Elem>>& terms,
                                            const Rational& precision) {
  std::int64_t n = 1;
  for (const auto& t : terms) {
    if (t.first.is_inf() || t.first < Rational(0)) fail(ErrorKind::InvalidArgument, "series exponent must be >= 0");
    n = lcm64(n, t.first.den());
  }
  if (!precision.is_inf()) n = lcm64(n, precision.den());
  std::int64_t prec = precision.is_inf() ? kExact : checked_mul(precision.num(), n / precision.den());
  ser::Vec v;
  for (const auto& t : terms) {
    std::int64_t i = checked_mul(t.first.num(), n / t.first.den());
    if (prec < kExact && i >= prec) continue;
    if (static_cast<std::int64_t>(v.size()) <= i) v.resize(static_cast<std::size_t>(i) + 1, 0);
    v[static_cast<std::size_t>(i)] = F.add(v[static_cast<std::size_t>(i)], t.second);
  }
  return TruncatedSeries(F, n, std::move(v), prec);
}

Rational TruncatedSeries::precision() const {
  if (is_exact()) return Rational::infinity();
  return Rational(prec_, ram_);
}

std::vector<std::pair<Rational, Elem>> TruncatedSeries::terms() const {
  std::vector<std::pair<Rational, Elem>> out;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i]) out.emplace_back(Rational(static_cast<std::int64_t>(i), ram_), c_[i]);
  return out;
}

Elem TruncatedSeries::coeff(const Rational& e) const {
  if (e.is_inf()) return 0;
  if (ram_ % e.den() != 0) return 0;
  std::int64_t i = e.num() * (ram_ / e.den());
  if (i < 0 || i >= static_cast<std::int64_t>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(i)];
}

Rational TruncatedSeries::order() const {
  std::int64_t o = ser::ord(c_);
  if (o >= 0) return Rational(o, ram_);
  if (is_exact()) return Rational::infinity();
  fail(ErrorKind::PrecisionExhausted, "series vanishes below its precision " + precision().str());
}

TruncatedSeries TruncatedSeries::with_ramification(std::int64_t m) const {
  if (m % ram_ != 0) fail(ErrorKind::InvalidArgument, "ramification must be a multiple of the current one");
  std::int64_t f = m / ram_;
  return TruncatedSeries(F_, m, ser::stretch(c_, f), is_exact() ? kExact : checked_mul(prec_, f));
}

TruncatedSeries TruncatedSeries::truncated(const Rational& N) const {
  if (N.is_inf()) return *this;
  std::int64_t n = lcm64(ram_, N.den());
  TruncatedSeries s = with_ramification(n);
  std::int64_t p = checked_mul(N.num(), n / N.den());
  s.prec_ = std::min(s.prec_, p);
  s.normalize();
  return s;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  if (F_ != o.F_) fail(ErrorKind::InvalidArgument, "series over different fields");
  std::int64_t n = lcm64(ram_, o.ram_);
  TruncatedSeries a = with_ramification(n), b = o.with_ramification(n);
  return TruncatedSeries(F_, n, ser::add(F_, a.c_, b.c_), std::min(a.prec_, b.prec_));
}

TruncatedSeries TruncatedSeries::operator-() const { return TruncatedSeries(F_, ram_, ser::neg(F_, c_), prec_); }

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const { return *this + (-o); }

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  if (F_ != o.F_) fail(ErrorKind::InvalidArgument, "series over different fields");
  std::int64_t n = lcm64(ram_, o.ram_);
  TruncatedSeries a = with_ramification(n), b = o.with_ramification(n);
  if (a.is_zero() || b.is_zero()) return zero(F_, n);
  std::int64_t va = ser::ord(a.c_), vb = ser::ord(b.c_);
  if (va < 0) va = a.prec_;
  if (vb < 0) vb = b.prec_;
  std::int64_t prec = std::min(sat_add(a.prec_, vb), sat_add(b.prec_, va));
  std::int64_t len = prec >= kExact ? static_cast<std::int64_t>(a.c_.size() + b.c_.size()) : prec;
  return TruncatedSeries(F_, n, ser::mul(F_, a.c_, b.c_, len), prec);
}

TruncatedSeries TruncatedSeries::scaled(Elem c) const { return TruncatedSeries(F_, ram_, ser::scale(F_, c_, c), prec_); }

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return F_ == o.F_ && terms() == o.terms() && precision() == o.precision();
}

namespace {

std::string paren_coeff(const std::string& c) {
  if (c.find_first_of("+*") != std::string::npos) return "(" + c + ")";
  return c;
}

std::string exp_str(const Rational& e) {
  if (e.is_integer()) return e.str();
  return "(" + e.str() + ")";
}

}  // namespace

std::string TruncatedSeries::str() const {
  std::string s;
  for (const auto& [e, c] : terms()) {
    if (!s.empty()) s += " + ";
    std::string cs = F_.format(c);
    if (e.is_zero()) {
      s += paren_coeff(cs);
      continue;
    }
    if (cs != "1") s += paren_coeff(cs) + "*";
    s += "x";
    if (e != Rational(1)) s += "^" + exp_str(e);
  }
  if (!is_exact()) {
    if (!s.empty()) s += " + ";
    s += "O(x^" + exp_str(precision()) + ")";
  }
  return s.empty() ? "0" : s;
}

TruncatedSeries TruncatedSeries::parse(const Field& F, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) fail(ErrorKind::ParseError, "empty series");
  std::vector<std::pair<int, std::string>> toks;
  int depth = 0, sign = 1;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    bool after_caret = i > 0 && s[i - 1] == '^';
    if (depth == 0 && (ch == '+' || ch == '-') && !after_caret) {
      if (!cur.empty()) toks.emplace_back(sign, cur);
      else if (i != 0 && ch == '+') fail(ErrorKind::ParseError, "dangling '+' in '" + text + "'");
      cur.clear();
      sign = ch == '-' ? -1 : 1;
      continue;
    }
    cur += ch;
  }
  if (depth != 0) fail(ErrorKind::ParseError, "unbalanced parentheses in '" + text + "'");
  if (!cur.empty()) toks.emplace_back(sign, cur);

  auto strip = [](std::string t) {
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') return t.substr(1, t.size() - 2);
    return t;
  };
  std::vector<std::pair<Rational, Elem>> terms;
  Rational prec = Rational::infinity();
  for (const auto& [sg, tok] : toks) {
    if (tok.rfind("O(", 0) == 0) {
      std::string inner = tok.substr(2, tok.size() - 3);
      if (tok.back() != ')' || inner.rfind("x", 0) != 0) fail(ErrorKind::ParseError, "bad O-term '" + tok + "'");
      std::string ex = inner.size() > 1 && inner[1] == '^' ? strip(inner.substr(2)) : "1";
      prec = Rational::parse(ex);
      continue;
    }
    std::size_t xp = std::string::npos;
    int d = 0;
    for (std::size_t i = 0; i < tok.size(); ++i) {
      if (tok[i] == '(') ++d;
      if (tok[i] == ')') --d;
      if (d == 0 && tok[i] == 'x') {
        xp = i;
        break;
      }
    }
    std::string cpart = xp == std::string::npos ? tok : tok.substr(0, xp);
    std::string epart = xp == std::string::npos ? "" : tok.substr(xp + 1);
    if (!cpart.empty() && cpart.back() == '*') cpart.pop_back();
    Elem c = cpart.empty() ? F.one() : F.parse_element(strip(cpart));
    if (sg < 0) c = F.neg(c);
    Rational e(0);
    if (xp != std::string::npos) {
      if (epart.empty()) {
        e = Rational(1);
      } else {
        if (epart[0] != '^') fail(ErrorKind::ParseError, "bad exponent in '" + tok + "'");
        e = Rational::parse(strip(epart.substr(1)));
      }
    }
    terms.emplace_back(e, c);
  }
  return from_terms(F, terms, prec);
}

std::int64_t index_of(const TruncatedSeries& s) {
  auto t = s.terms();
  if (t.empty()) fail(ErrorKind::ZeroSeries, "index of a series with empty support");
  std::int64_t n = 1;
  for (const auto& [e, c] : t) n = lcm64(n, e.den());
  return n;
}

std::int64_t PuiseuxSeries::index() const { return index_of(s_); }

}  // namespace ewt
