#include "ewt/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <regex>
#include <tuple>

namespace ewt {

namespace {

constexpr std::uint64_t kTableLimit = 1u << 16;
constexpr std::uint32_t kNoLog = 0xffffffffu;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

struct FieldImpl {
  std::uint64_t p = 0;
  unsigned k = 0;
  std::uint64_t q = 0;
  std::vector<std::uint64_t> modulus;
  bool tables = false;
  std::vector<std::uint32_t> exp, log, zech;

  void unpack(Elem a, std::uint64_t* d) const {
    if (p == 2) {
      for (unsigned i = 0; i < k; ++i) d[i] = (a >> i) & 1;
      return;
    }
    for (unsigned i = 0; i < k; ++i) {
      d[i] = a % p;
      a /= p;
    }
  }
  Elem pack(const std::uint64_t* d) const {
    Elem a = 0;
    if (p == 2) {
      for (unsigned i = 0; i < k; ++i) a |= (d[i] & 1) << i;
      return a;
    }
    for (unsigned i = k; i-- > 0;) a = a * p + d[i];
    return a;
  }
  Elem add_digits(Elem a, Elem b) const {
    std::uint64_t da[64], db[64];
    unpack(a, da);
    unpack(b, db);
    for (unsigned i = 0; i < k; ++i) {
      da[i] += db[i];
      if (da[i] >= p) da[i] -= p;
    }
    return pack(da);
  }
  Elem mul_generic(Elem a, Elem b) const {
    std::uint64_t da[64], db[64], pr[128] = {0};
    unpack(a, da);
    unpack(b, db);
    for (unsigned i = 0; i < k; ++i) {
      if (!da[i]) continue;
      for (unsigned j = 0; j < k; ++j) pr[i + j] = (pr[i + j] + da[i] * db[j]) % p;
    }
    for (unsigned i = 2 * k - 2; i >= k; --i) {
      std::uint64_t c = pr[i];
      if (!c) continue;
      pr[i] = 0;
      for (unsigned j = 0; j < k; ++j) {
        std::uint64_t t = c * modulus[j] % p;
        pr[i - k + j] = (pr[i - k + j] + p - t) % p;
      }
    }
    return pack(pr);
  }
  Elem pow_generic(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul_generic(r, a);
      a = mul_generic(a, a);
      e >>= 1;
    }
    return r;
  }
  void build_tables() {
    auto pf = prime_factors(q - 1);
    Elem prim = 0;
    for (Elem c = 2; c < q; ++c) {
      bool ok = true;
      for (auto r : pf) {
        if (pow_generic(c, (q - 1) / r) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        prim = c;
        break;
      }
    }
    exp.assign(q - 1, 0);
    log.assign(q, kNoLog);
    Elem x = 1;
    for (std::uint64_t i = 0; i + 1 < q; ++i) {
      exp[i] = static_cast<std::uint32_t>(x);
      log[x] = static_cast<std::uint32_t>(i);
      x = mul_generic(x, prim);
    }
    zech.assign(q - 1, kNoLog);
    for (std::uint64_t i = 0; i + 1 < q; ++i) {
      Elem s = add_digits(1, exp[i]);
      zech[i] = s == 0 ? kNoLog : log[s];
    }
    tables = true;
  }
};

namespace {

std::mutex g_registry_mutex;
std::map<std::tuple<std::uint64_t, unsigned, std::vector<std::uint64_t>>, std::shared_ptr<const FieldImpl>>
    g_registry;
std::map<std::pair<std::string, std::string>, Elem> g_embeddings;

// Polynomials over the prime field as plain digit vectors for modulus validation.
Field prime_field(std::uint64_t p) { return Field::make(p, 1); }

std::vector<std::uint64_t> default_modulus(std::uint64_t p, unsigned k) {
  Field Fp = prime_field(p);
  std::vector<std::uint64_t> c(k + 1, 0);
  c[k] = 1;
  while (true) {
    if (c[0] != 0) {
      UPoly f(c.begin(), c.end());
      if (upoly::is_irreducible(Fp, f)) return c;
    }
    unsigned i = 0;
    while (i < k) {
      if (++c[i] < p) break;
      c[i] = 0;
      ++i;
    }
    if (i == k) fail(ErrorKind::ReducibleModulus, "no irreducible polynomial found");
  }
}

}  // namespace

Field Field::make(std::uint64_t p, unsigned k, const std::optional<std::vector<std::uint64_t>>& modulus) {
  if (!is_prime(p) || p >= (1ull << 32)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not a supported prime");
  if (k < 1) fail(ErrorKind::InvalidArgument, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (q > (1ull << 62) / p) fail(ErrorKind::FieldTooLarge, "p^k must stay below 2^62");
    q *= p;
  }
  std::vector<std::uint64_t> mod;
  if (k == 1) {
    mod = {0, 1};
  } else if (modulus) {
    mod = *modulus;
    for (auto& c : mod) c %= p;
    while (!mod.empty() && mod.back() == 0) mod.pop_back();
    if (mod.size() != k + 1 || mod[k] != 1) fail(ErrorKind::InvalidArgument, "modulus must be monic of degree k");
    UPoly f(mod.begin(), mod.end());
    if (!upoly::is_irreducible(prime_field(p), f)) fail(ErrorKind::ReducibleModulus, "modulus is reducible");
  } else {
    mod = default_modulus(p, k);
  }
  auto key = std::make_tuple(p, k, mod);
  {
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto it = g_registry.find(key);
    if (it != g_registry.end()) {
      Field F;
      F.impl_ = it->second;
      F.p_ = p;
      F.k_ = k;
      F.q_ = q;
      return F;
    }
  }
  auto impl = std::make_shared<FieldImpl>();
  impl->p = p;
  impl->k = k;
  impl->q = q;
  impl->modulus = mod;
  if (k > 1 && q <= kTableLimit) impl->build_tables();
  std::shared_ptr<const FieldImpl> cimpl = impl;
  {
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    cimpl = g_registry.emplace(key, cimpl).first->second;
  }
  Field F;
  F.impl_ = cimpl;
  F.p_ = p;
  F.k_ = k;
  F.q_ = q;
  return F;
}

namespace {

// Integer-coefficient polynomial in a single variable, e.g. "g^2+2*g-1".
std::vector<std::int64_t> parse_int_poly(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) fail(ErrorKind::ParseError, "empty polynomial");
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail(ErrorKind::ParseError, "expected + or - in '" + text + "'");
    }
    first = false;
    std::int64_t coef = 1;
    bool have_coef = false;
    std::size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > st) {
      coef = std::stoll(s.substr(st, i - st));
      have_coef = true;
    }
    std::size_t e = 0;
    if (i < s.size() && s[i] == '*') ++i;
    if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        st = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == st) fail(ErrorKind::ParseError, "missing exponent in '" + text + "'");
        e = std::stoul(s.substr(st, i - st));
      }
    } else if (!have_coef) {
      fail(ErrorKind::ParseError, "bad term in '" + text + "'");
    }
    if (out.size() <= e) out.resize(e + 1, 0);
    out[e] += sign * coef;
  }
  return out;
}

}  // namespace

Field Field::parse(const std::string& spec) {
  static const std::regex re(R"(\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*(?:\[\s*modulus\s*=\s*([^\]]*)\])?\s*)");
  std::smatch m;
  if (!std::regex_match(spec, m, re)) fail(ErrorKind::ParseError, "bad field spec '" + spec + "'");
  std::uint64_t p = std::stoull(m[1].str());
  unsigned k = m[2].matched ? static_cast<unsigned>(std::stoul(m[2].str())) : 1;
  if (!m[2].matched && !is_prime(p)) {
    // "GF(q)" with q a prime power
    auto pf = prime_factors(p);
    if (pf.size() == 1) {
      std::uint64_t q = p;
      p = pf[0];
      k = 0;
      while (q > 1) {
        q /= p;
        ++k;
      }
    }
  }
  std::optional<std::vector<std::uint64_t>> mod;
  if (m[3].matched) {
    auto ip = parse_int_poly(m[3].str());
    std::vector<std::uint64_t> c;
    for (auto v : ip) {
      std::int64_t r = v % static_cast<std::int64_t>(p);
      if (r < 0) r += static_cast<std::int64_t>(p);
      c.push_back(static_cast<std::uint64_t>(r));
    }
    mod = c;
  }
  return make(p, k, mod);
}

const std::vector<std::uint64_t>& Field::modulus() const { return impl_->modulus; }

std::string Field::spec() const {
  if (k_ == 1) return "GF(" + std::to_string(p_) + ")";
  std::string m;
  const auto& c = impl_->modulus;
  for (unsigned i = k_ + 1; i-- > 0;) {
    if (c[i] == 0) continue;
    if (!m.empty()) m += "+";
    if (i == 0) {
      m += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) m += std::to_string(c[i]) + "*";
    m += "g";
    if (i > 1) m += "^" + std::to_string(i);
  }
  return "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")[modulus=" + m + "]";
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return static_cast<Elem>(r);
}

Elem Field::add_slow(Elem a, Elem b) const {
  const FieldImpl& I = *impl_;
  if (I.tables) {
    if (a == 0) return b;
    if (b == 0) return a;
    std::uint64_t la = I.log[a], lb = I.log[b], n = q_ - 1;
    std::uint64_t d = (lb + n - la) % n;
    std::uint32_t z = I.zech[d];
    if (z == kNoLog) return 0;
    return I.exp[(la + z) % n];
  }
  return I.add_digits(a, b);
}

Elem Field::neg_slow(Elem a) const {
  const FieldImpl& I = *impl_;
  std::uint64_t d[64];
  I.unpack(a, d);
  for (unsigned i = 0; i < k_; ++i) d[i] = d[i] ? p_ - d[i] : 0;
  return I.pack(d);
}

Elem Field::mul_slow(Elem a, Elem b) const {
  const FieldImpl& I = *impl_;
  if (I.tables) {
    if (a == 0 || b == 0) return 0;
    return I.exp[(static_cast<std::uint64_t>(I.log[a]) + I.log[b]) % (q_ - 1)];
  }
  return I.mul_generic(a, b);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::inv(Elem a) const {
  if (a == 0) fail(ErrorKind::InvalidArgument, "inverse of zero");
  if (k_ == 1) return powmod64(a, p_ - 2, p_);
  const FieldImpl& I = *impl_;
  if (I.tables) return I.exp[(q_ - 1 - I.log[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

Elem Field::pth_root(Elem a) const { return k_ == 1 ? a : pow(a, q_ / p_); }

std::vector<std::uint64_t> Field::digits(Elem a) const {
  std::vector<std::uint64_t> d(k_);
  if (k_ == 1) {
    d[0] = a;
    return d;
  }
  impl_->unpack(a, d.data());
  return d;
}

Elem Field::from_digits(const std::vector<std::uint64_t>& d) const {
  if (k_ == 1) return d.empty() ? 0 : d[0] % p_;
  std::uint64_t buf[64] = {0};
  for (unsigned i = 0; i < k_ && i < d.size(); ++i) buf[i] = d[i] % p_;
  return impl_->pack(buf);
}

std::optional<Elem> Field::root_of_unity(std::uint64_t n) const {
  if (n == 0 || (q_ - 1) % n != 0) return std::nullopt;
  if (n == 1) return Elem{1};
  auto pf = prime_factors(n);
  for (Elem c = 2; c < q_; ++c) {
    Elem z = pow(c, (q_ - 1) / n);
    bool ok = true;
    for (auto r : pf) {
      if (pow(z, n / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return z;
  }
  return std::nullopt;
}

std::string Field::format(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  auto d = digits(a);
  std::string s;
  for (unsigned i = k_; i-- > 0;) {
    if (d[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) s += std::to_string(d[i]) + "*";
    s += "g";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

Elem Field::parse_element(const std::string& s) const {
  auto ip = parse_int_poly(s);
  Elem r = 0, g = gen(), gp = 1;
  for (auto c : ip) {
    r = add(r, mul(from_int(c), gp));
    gp = mul(gp, g);
  }
  return r;
}

bool operator==(const Field& a, const Field& b) {
  if (a.impl_ == b.impl_) return true;
  if (!a.impl_ || !b.impl_) return false;
  return a.p_ == b.p_ && a.k_ == b.k_ && a.impl_->modulus == b.impl_->modulus;
}

// ---------------------------------------------------------------- upoly

namespace upoly {

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const UPoly& a) { return static_cast<int>(a.size()) - 1; }

UPoly add(const Field& F, const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Elem x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = F.add(x, y);
  }
  trim(r);
  return r;
}

UPoly sub(const Field& F, const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Elem x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = F.sub(x, y);
  }
  trim(r);
  return r;
}

UPoly mul(const Field& F, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

UPoly scale(const Field& F, const UPoly& a, Elem c) {
  UPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  trim(r);
  return r;
}

void divmod(const Field& F, const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.empty()) fail(ErrorKind::InvalidArgument, "polynomial division by zero");
  r = a;
  trim(r);
  int db = deg(b);
  if (deg(r) < db) {
    q.clear();
    return;
  }
  q.assign(r.size() - b.size() + 1, 0);
  Elem li = F.inv(b.back());
  for (int i = deg(r); i >= db; --i) {
    Elem c = F.mul(r[i], li);
    q[i - db] = c;
    if (!c) continue;
    for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b[j]));
  }
  trim(q);
  trim(r);
}

UPoly mod(const Field& F, const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(F, a, b, q, r);
  return r;
}

UPoly quo(const Field& F, const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(F, a, b, q, r);
  return q;
}

UPoly monic(const Field& F, const UPoly& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

UPoly gcd(const Field& F, UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

UPoly inv_mod(const Field& F, const UPoly& a, const UPoly& m) {
  if (deg(m) <= 0) return {};
  // extended Euclid tracking the coefficient of a
  UPoly r0 = m, r1 = mod(F, a, m), s0{}, s1{1};
  while (!r1.empty()) {
    UPoly q, r;
    divmod(F, r0, r1, q, r);
    UPoly s2 = sub(F, s0, mul(F, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (deg(r0) != 0) fail(ErrorKind::InvalidArgument, "inv_mod of a non-unit");
  return mod(F, scale(F, s0, F.inv(r0[0])), m);
}

UPoly powmod(const Field& F, const UPoly& a, std::uint64_t e, const UPoly& m) {
  UPoly r = mod(F, UPoly{1}, m), base = mod(F, a, m);
  while (e) {
    if (e & 1) r = mod(F, mul(F, r, base), m);
    e >>= 1;
    if (e) base = mod(F, mul(F, base, base), m);
  }
  return r;
}

UPoly derivative(const Field& F, const UPoly& a) {
  if (a.size() <= 1) return {};
  UPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(F.from_int(static_cast<std::int64_t>(i % F.p())), a[i]);
  trim(r);
  return r;
}

Elem eval(const Field& F, const UPoly& a, Elem x) {
  Elem r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

namespace {
// t^(q^i) mod f for i = 1..n, by repeated q-th powering.
UPoly frob_power(const Field& F, const UPoly& prev, const UPoly& f) { return powmod(F, prev, F.order(), f); }
}  // namespace

bool is_irreducible(const Field& F, const UPoly& f0) {
  UPoly f = monic(F, f0);
  int n = deg(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  UPoly t{0, 1};
  std::vector<UPoly> pw(n + 1);
  pw[0] = mod(F, t, f);
  for (int i = 1; i <= n; ++i) pw[i] = frob_power(F, pw[i - 1], f);
  if (sub(F, pw[n], mod(F, t, f)).size() != 0) return false;
  for (auto r : prime_factors(static_cast<std::uint64_t>(n))) {
    UPoly h = sub(F, pw[n / r], t);
    if (deg(gcd(F, h, f)) != 0) return false;
  }
  return true;
}

std::string format(const Field& F, const UPoly& a, const std::string& var) {
  if (a.empty()) return "0";
  std::string s;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (!a[i]) continue;
    if (!s.empty()) s += " + ";
    std::string c = F.format(a[i]);
    bool paren = c.find('+') != std::string::npos;
    if (i == 0) {
      s += c;
      continue;
    }
    if (c != "1") s += (paren ? "(" + c + ")" : c) + "*";
    s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

}  // namespace upoly

// ---------------------------------------------------------------- roots

namespace {

void split_linear(const Field& F, const UPoly& g, std::vector<Elem>& out, std::mt19937_64& rng) {
  int n = upoly::deg(g);
  if (n <= 0) return;
  if (n == 1) {
    out.push_back(F.neg(F.div(g[0], g[1])));
    return;
  }
  if (F.order() <= kTableLimit) {
    for (Elem c = 0; c < F.order(); ++c)
      if (upoly::eval(F, g, c) == 0) out.push_back(c);
    return;
  }
  std::uniform_int_distribution<std::uint64_t> dist(0, F.order() - 1);
  while (true) {
    UPoly a(n);
    for (auto& c : a) c = dist(rng);
    upoly::trim(a);
    if (upoly::deg(a) < 1) continue;
    UPoly b;
    if (F.p() == 2) {
      UPoly term = upoly::mod(F, a, g);
      b = term;
      for (unsigned i = 1; i < F.k(); ++i) {
        term = upoly::mod(F, upoly::mul(F, term, term), g);
        b = upoly::add(F, b, term);
      }
    } else {
      b = upoly::sub(F, upoly::powmod(F, a, (F.order() - 1) / 2, g), UPoly{1});
    }
    UPoly d = upoly::gcd(F, g, b);
    int dd = upoly::deg(d);
    if (dd > 0 && dd < n) {
      split_linear(F, d, out, rng);
      split_linear(F, upoly::quo(F, g, d), out, rng);
      return;
    }
  }
}

}  // namespace

unsigned splitting_degree(const Field& F, const UPoly& f0) {
  UPoly f = upoly::monic(F, f0);
  unsigned L = 1;
  UPoly t{0, 1};
  UPoly h = upoly::mod(F, t, f);
  for (int i = 1; upoly::deg(f) > 0; ++i) {
    h = upoly::powmod(F, h, F.order(), f);
    UPoly g = upoly::gcd(F, upoly::sub(F, h, t), f);
    if (upoly::deg(g) > 0) {
      L = static_cast<unsigned>(std::lcm(static_cast<std::uint64_t>(L), static_cast<std::uint64_t>(i)));
      while (upoly::deg(g) > 0) {
        f = upoly::quo(F, f, g);
        g = upoly::gcd(F, f, g);
      }
      if (upoly::deg(f) > 0) h = upoly::mod(F, h, f);
    }
  }
  return L;
}

RootsResult univariate_roots(const Field& F, const UPoly& f0, bool allow_extension) {
  UPoly f = f0;
  upoly::trim(f);
  if (f.empty()) fail(ErrorKind::InvalidArgument, "roots of the zero polynomial");
  if (allow_extension) {
    unsigned r = splitting_degree(F, f);
    Field E = extension(F, r);
    RootsResult res = univariate_roots(E, embed(F, f, E), false);
    return res;
  }
  RootsResult res;
  res.field = F;
  f = upoly::monic(F, f);
  std::vector<Elem> rts;
  if (upoly::deg(f) > 0) {
    UPoly t{0, 1};
    UPoly tq = upoly::powmod(F, t, F.order(), f);
    UPoly g = upoly::gcd(F, upoly::sub(F, tq, t), f);
    std::mt19937_64 rng(0x5eedULL);
    split_linear(F, g, rts, rng);
  }
  std::sort(rts.begin(), rts.end());
  UPoly rest = f;
  for (Elem r : rts) {
    int m = 0;
    UPoly lin{F.neg(r), 1};
    while (true) {
      UPoly q, rem;
      upoly::divmod(F, rest, lin, q, rem);
      if (!rem.empty()) break;
      rest = q;
      ++m;
    }
    res.roots.emplace_back(r, m);
  }
  res.residual = upoly::monic(F, rest);
  return res;
}

Field extension(const Field& F, unsigned r) {
  if (r == 1) return F;
  return Field::make(F.p(), F.k() * r);
}

Elem embed(const Field& from, Elem a, const Field& to) {
  if (from == to) return a;
  if (from.p() != to.p()) fail(ErrorKind::NoEmbedding, "different characteristic");
  if (to.k() % from.k() != 0) fail(ErrorKind::NoEmbedding, from.spec() + " does not embed in " + to.spec());
  if (a < from.p()) return a;
  auto key = std::make_pair(from.spec(), to.spec());
  Elem gamma = 0;
  bool found = false;
  {
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto it = g_embeddings.find(key);
    if (it != g_embeddings.end()) {
      gamma = it->second;
      found = true;
    }
  }
  if (!found) {
    UPoly m(from.modulus().begin(), from.modulus().end());
    auto rr = univariate_roots(to, m, false);
    if (rr.roots.empty()) fail(ErrorKind::NoEmbedding, "modulus has no root in target");
    gamma = rr.roots.front().first;
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    g_embeddings[key] = gamma;
  }
  auto d = from.digits(a);
  Elem r = 0;
  for (std::size_t i = d.size(); i-- > 0;) r = to.add(to.mul(r, gamma), to.from_int(static_cast<std::int64_t>(d[i])));
  return r;
}

FieldElement embed(const FieldElement& e, const Field& to) { return {to, embed(e.field, e.value, to)}; }

UPoly embed(const Field& from, const UPoly& a, const Field& to) {
  UPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = embed(from, a[i], to);
  return r;
}

}  // namespace ewt
