#include "algmod/field.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "algmod/rng.hpp"

namespace algmod {

bool is_prime(std::uint64_t n) {
  if (n < 2) {
    return false;
  }
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      return false;
    }
  }
  return true;
}

namespace poly {

  void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) {
      a.pop_back();
    }
  }

  Poly add(Poly const& a, Poly const& b, std::uint32_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::uint32_t x = i < a.size() ? a[i] : 0;
      std::uint32_t y = i < b.size() ? b[i] : 0;
      r[i] = (x + y) % p;
    }
    trim(r);
    return r;
  }

  Poly sub(Poly const& a, Poly const& b, std::uint32_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::uint32_t x = i < a.size() ? a[i] : 0;
      std::uint32_t y = i < b.size() ? b[i] : 0;
      r[i] = (x + p - y) % p;
    }
    trim(r);
    return r;
  }

  Poly mul(Poly const& a, Poly const& b, std::uint32_t p) {
    if (a.empty() || b.empty()) {
      return {};
    }
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % p;
      }
    }
    Poly r(acc.begin(), acc.end());
    trim(r);
    return r;
  }

  namespace {
    std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
      // p is prime: a^(p-2)
      std::uint64_t r = 1, b = a % p;
      std::uint32_t k = p - 2;
      while (k) {
        if (k & 1) {
          r = r * b % p;
        }
        b = b * b % p;
        k >>= 1;
      }
      return std::uint32_t(r);
    }

    // Quotient and remainder of a by m.
    std::pair<Poly, Poly> divmod(Poly const& a, Poly const& m, std::uint32_t p) {
      if (m.empty()) {
        throw Error("polynomial division by zero");
      }
      Poly r = a;
      trim(r);
      if (r.size() < m.size()) {
        return {{}, r};
      }
      Poly q(r.size() - m.size() + 1, 0);
      std::uint32_t lead_inv = inv_mod(m.back(), p);
      for (std::size_t k = r.size(); k-- >= m.size();) {
        std::uint32_t c = std::uint32_t(std::uint64_t(r[k]) * lead_inv % p);
        if (c != 0) {
          std::size_t shift = k - (m.size() - 1);
          q[shift] = c;
          for (std::size_t i = 0; i < m.size(); ++i) {
            r[shift + i] = std::uint32_t((r[shift + i] + std::uint64_t(p - c) * m[i]) % p);
          }
        }
        if (k == 0) {
          break;
        }
      }
      trim(q);
      trim(r);
      return {q, r};
    }
  }  // namespace

  Poly mod(Poly const& a, Poly const& m, std::uint32_t p) {
    return divmod(a, m, p).second;
  }

  Poly divide(Poly const& a, Poly const& m, std::uint32_t p) {
    return divmod(a, m, p).first;
  }

  Poly make_monic(Poly a, std::uint32_t p) {
    trim(a);
    if (a.empty()) {
      return a;
    }
    std::uint32_t li = inv_mod(a.back(), p);
    for (auto& c : a) {
      c = std::uint32_t(std::uint64_t(c) * li % p);
    }
    return a;
  }

  Poly gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Poly r = mod(a, b, p);
      a = std::move(b);
      b = std::move(r);
    }
    return make_monic(a, p);
  }

  Poly derivative(Poly const& a, std::uint32_t p) {
    Poly r;
    for (std::size_t i = 1; i < a.size(); ++i) {
      r.push_back(std::uint32_t(std::uint64_t(a[i]) * (i % p) % p));
    }
    trim(r);
    return r;
  }

  Poly powmod(Poly const& base, std::uint64_t exp, Poly const& m, std::uint32_t p) {
    Poly result{1};
    result = mod(result, m, p);
    Poly b = mod(base, m, p);
    while (exp) {
      if (exp & 1) {
        result = mod(mul(result, b, p), m, p);
      }
      b = mod(mul(b, b, p), m, p);
      exp >>= 1;
    }
    return result;
  }

  bool is_irreducible(Poly const& f_in, std::uint32_t p) {
    Poly f = f_in;
    trim(f);
    if (f.size() < 2) {
      return false;
    }
    std::size_t deg = f.size() - 1;
    if (deg == 1) {
      return true;
    }
    // No factor of degree k <= deg/2: gcd(f, x^(p^k) - x) = 1.
    Poly x{0, 1};
    Poly xp = x;
    for (std::size_t k = 1; k <= deg / 2; ++k) {
      xp = powmod(xp, p, f, p);
      Poly g = gcd(f, sub(xp, x, p), p);
      if (g.size() > 1) {
        return false;
      }
    }
    return true;
  }

  Poly first_irreducible(std::uint32_t p, std::uint32_t e) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      count *= p;
    }
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly f(e + 1, 0);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < e; ++i) {
        f[i] = std::uint32_t(c % p);
        c /= p;
      }
      f[e] = 1;
      if (is_irreducible(f, p)) {
        return f;
      }
    }
    throw Error("no irreducible polynomial found");  // unreachable for prime p
  }

  namespace {
    std::size_t degree(Poly const& a) { return a.empty() ? 0 : a.size() - 1; }

    // Proper factor of a squarefree D whose irreducible factors all have degree j.
    Poly equal_degree_split(Poly const& d, std::size_t j, std::uint32_t p, Rng& rng) {
      std::size_t const n = degree(d);
      for (;;) {
        Poly a(n, 0);
        for (auto& c : a) {
          c = std::uint32_t(rng.below(p));
        }
        trim(a);
        if (degree(a) == 0) {
          continue;
        }
        Poly b = a, c = a;
        Poly g;
        if (p == 2) {
          for (std::size_t i = 1; i < j; ++i) {
            c = mod(mul(c, c, p), d, p);
            b = add(b, c, p);
          }
          g = gcd(d, b, p);
        } else {
          // a^((p^j - 1) / 2) = (a^(1 + p + ... + p^(j-1)))^((p - 1) / 2)
          for (std::size_t i = 1; i < j; ++i) {
            c = powmod(c, p, d, p);
            b = mod(mul(b, c, p), d, p);
          }
          b = powmod(b, (p - 1) / 2, d, p);
          g = gcd(d, sub(b, Poly{1}, p), p);
        }
        if (degree(g) > 0 && degree(g) < n) {
          Poly other = make_monic(divide(d, g, p), p);
          return degree(g) <= degree(other) ? g : other;
        }
      }
    }
  }  // namespace

  Poly irreducible_factor(Poly const& f_in, std::uint32_t p, std::uint64_t seed) {
    Poly f = make_monic(f_in, p);
    if (degree(f) == 0) {
      throw Error("irreducible_factor: constant polynomial");
    }
    if (degree(f) == 1) {
      return f;
    }
    if (derivative(f, p).empty()) {
      // f(x) = g(x)^p with g_i = f_{ip}
      Poly g;
      for (std::size_t i = 0; i < f.size(); i += p) {
        g.push_back(f[i]);
      }
      return irreducible_factor(g, p, seed);
    }
    Rng rng(seed);
    Poly const x{0, 1};
    Poly h = mod(x, f, p);
    for (std::size_t j = 1; j <= degree(f); ++j) {
      h = powmod(h, p, f, p);
      Poly d = gcd(f, sub(h, x, p), p);
      if (degree(d) == 0) {
        continue;
      }
      while (degree(d) > j) {
        d = equal_degree_split(d, j, p, rng);
      }
      return d;
    }
    return f;
  }

}  // namespace poly

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  q_ = 1;
  for (std::uint32_t i = 0; i < spec_.e; ++i) {
    q_ *= spec_.p;
  }
  inv_.assign(q_, 0);
  if (spec_.e == 1) {
    for (std::uint32_t a = 1; a < q_; ++a) {
      std::uint64_t r = 1, b = a;
      std::uint32_t k = spec_.p - 2;
      while (k) {
        if (k & 1) {
          r = r * b % spec_.p;
        }
        b = b * b % spec_.p;
        k >>= 1;
      }
      inv_[a] = Elem(r);
    }
    for (std::uint32_t g = 1; g < q_; ++g) {
      std::uint32_t order = 1;
      std::uint64_t x = g;
      while (x != 1) {
        x = x * g % spec_.p;
        ++order;
      }
      if (order == q_ - 1) {
        primitive_ = Elem(g);
        break;
      }
    }
    return;
  }

  // Extension: multiplication through log tables over a primitive element.
  auto encode = [&](poly::Poly const& a) {
    std::uint32_t v = 0, mulp = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
      v += a[i] * mulp;
      mulp *= spec_.p;
    }
    return v;
  };
  auto decode = [&](std::uint32_t v) {
    poly::Poly a(spec_.e, 0);
    for (std::uint32_t i = 0; i < spec_.e; ++i) {
      a[i] = v % spec_.p;
      v /= spec_.p;
    }
    poly::trim(a);
    return a;
  };
  poly::Poly const modulus(spec_.modulus.begin(), spec_.modulus.end());
  log_.assign(q_, 0);
  exp_.assign(q_, 0);
  for (std::uint32_t g = 2; g < q_; ++g) {
    poly::Poly gp = decode(g);
    std::vector<bool> seen(q_, false);
    poly::Poly x{1};
    std::uint32_t k = 0;
    bool ok = true;
    for (; k < q_ - 1; ++k) {
      std::uint32_t v = encode(x);
      if (seen[v]) {
        ok = false;
        break;
      }
      seen[v] = true;
      exp_[k] = Elem(v);
      x = poly::mod(poly::mul(x, gp, spec_.p), modulus, spec_.p);
    }
    if (ok && k == q_ - 1) {
      primitive_ = Elem(g);
      break;
    }
  }
  for (std::uint32_t k = 0; k < q_ - 1; ++k) {
    log_[exp_[k]] = k;
  }
  exp_[q_ - 1] = exp_[0];
  for (std::uint32_t a = 1; a < q_; ++a) {
    inv_[a] = exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
}

FieldPtr Field::make(FieldSpec const& spec_in) {
  if (!is_prime(spec_in.p)) {
    throw Error("field characteristic " + std::to_string(spec_in.p) + " is not prime");
  }
  if (spec_in.e < 1) {
    throw Error("extension degree must be at least 1");
  }
  FieldSpec spec = spec_in;
  if (spec.e == 1) {
    spec.modulus.clear();
  } else {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < spec.e; ++i) {
      q *= spec.p;
    }
    if (q > 65536) {
      throw Unsupported("field order " + std::to_string(q) + " exceeds 65536");
    }
    if (spec.modulus.size() != spec.e + 1 || spec.modulus.back() != 1) {
      throw Error("modulus must be monic of degree e");
    }
    for (auto c : spec.modulus) {
      if (c >= spec.p) {
        throw Error("modulus coefficient out of range");
      }
    }
    if (!poly::is_irreducible(poly::Poly(spec.modulus.begin(), spec.modulus.end()), spec.p)) {
      throw Error("modulus is not irreducible over GF(" + std::to_string(spec.p) + ")");
    }
  }
  static std::mutex mtx;
  static std::map<std::pair<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>>,
                  FieldPtr>
      cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(std::make_pair(spec.p, spec.e), spec.modulus);
  auto it = cache.find(key);
  if (it != cache.end()) {
    return it->second;
  }
  FieldPtr f(new Field(spec));
  cache.emplace(key, f);
  return f;
}

FieldPtr Field::prime(std::uint32_t p) {
  return make(FieldSpec{p, 1, {}});
}

FieldPtr Field::extension(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p)) {
    throw Error("field characteristic " + std::to_string(p) + " is not prime");
  }
  if (e == 1) {
    return prime(p);
  }
  auto m = poly::first_irreducible(p, e);
  return make(FieldSpec{p, e, std::vector<std::uint32_t>(m.begin(), m.end())});
}

Elem Field::add_ext(Elem a, Elem b) const noexcept {
  std::uint32_t r = 0, mulp = 1, x = a, y = b;
  for (std::uint32_t i = 0; i < spec_.e; ++i) {
    std::uint32_t d = (x % spec_.p + y % spec_.p) % spec_.p;
    r += d * mulp;
    mulp *= spec_.p;
    x /= spec_.p;
    y /= spec_.p;
  }
  return Elem(r);
}

Elem Field::neg_ext(Elem a) const noexcept {
  std::uint32_t r = 0, mulp = 1, x = a;
  for (std::uint32_t i = 0; i < spec_.e; ++i) {
    std::uint32_t d = (spec_.p - x % spec_.p) % spec_.p;
    r += d * mulp;
    mulp *= spec_.p;
    x /= spec_.p;
  }
  return Elem(r);
}

Elem Field::inv(Elem a) const {
  if (a == 0) {
    throw Error("inverse of zero");
  }
  return inv_[a];
}

Elem Field::pow(Elem a, std::uint64_t k) const noexcept {
  Elem r = 1;
  Elem b = a;
  while (k) {
    if (k & 1) {
      r = mul(r, b);
    }
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

Elem Field::from_int(std::int64_t v) const noexcept {
  std::int64_t p = spec_.p;
  return Elem(((v % p) + p) % p);
}

std::vector<std::uint32_t> Field::coefficients(Elem a) const {
  std::vector<std::uint32_t> c(spec_.e, 0);
  std::uint32_t x = a;
  for (std::uint32_t i = 0; i < spec_.e; ++i) {
    c[i] = x % spec_.p;
    x /= spec_.p;
  }
  return c;
}

std::string Field::name() const {
  std::ostringstream os;
  os << "GF(" << spec_.p;
  if (spec_.e > 1) {
    os << "^" << spec_.e;
  }
  os << ")";
  return os.str();
}

}  // namespace algmod
