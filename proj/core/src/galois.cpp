#include "pgkit/galois.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "pgkit/errors.hpp"

namespace pgkit {

namespace {

using Poly = std::vector<std::uint32_t>;

// Conway polynomials for the fields the geometry code actually builds.
const std::map<std::pair<std::uint32_t, std::uint32_t>, Poly>& conway_table() {
  static const std::map<std::pair<std::uint32_t, std::uint32_t>, Poly> table = {
      {{2, 1}, {1, 1}},
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{3, 1}, {1, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{5, 1}, {3, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{7, 1}, {4, 1}},
      {{7, 2}, {3, 6, 1}},
  };
  return table;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// a*b mod poly over Z_p; a, b have length k, poly is monic of degree k.
Poly mulmod(const Poly& a, const Poly& b, const Poly& poly, std::uint32_t p) {
  const std::size_t k = poly.size() - 1;
  std::vector<std::uint64_t> prod(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  }
  for (std::size_t d = 2 * k - 1; d >= k; --d) {
    const std::uint64_t c = prod[d];
    if (c) {
      for (std::size_t t = 0; t <= k; ++t) {
        prod[d - k + t] = (prod[d - k + t] + (p - c) * poly[t]) % p;
      }
    }
    if (d == k) break;
  }
  return Poly(prod.begin(), prod.begin() + k);
}

Poly powmod_x(std::uint64_t e, const Poly& poly, std::uint32_t p) {
  const std::size_t k = poly.size() - 1;
  Poly result(k, 0), base(k, 0);
  result[0] = 1;
  if (k == 1) {
    base[0] = (p - poly[0]) % p;  // x == -c0
  } else {
    base[1] = 1;
  }
  while (e) {
    if (e & 1) result = mulmod(result, base, poly, p);
    base = mulmod(base, base, poly, p);
    e >>= 1;
  }
  return result;
}

bool is_one(const Poly& a) {
  if (a.empty() || a[0] != 1) return false;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i]) return false;
  return true;
}

void check_order(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
  const std::uint64_t s = ipow(p, k);
  if (k > 20 || s > kMaxFieldOrder) {
    throw ResourceError("field order " + std::to_string(p) + "^" + std::to_string(k) + " exceeds limit " +
                        std::to_string(kMaxFieldOrder));
  }
}

}  // namespace

std::uint32_t FieldSpec::order() const { return static_cast<std::uint32_t>(ipow(p, k)); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  auto fs = prime_factors(q);
  if (fs.size() != 1) return std::nullopt;
  std::uint32_t k = 0;
  while (q > 1) {
    q /= fs[0];
    ++k;
  }
  return std::make_pair(static_cast<std::uint32_t>(fs[0]), k);
}

bool is_primitive_polynomial(std::uint32_t p, std::span<const std::uint32_t> poly_in) {
  if (!is_prime(p) || poly_in.size() < 2 || poly_in.back() != 1) return false;
  Poly poly(poly_in.begin(), poly_in.end());
  for (auto c : poly)
    if (c >= p) return false;
  if (poly[0] == 0) return false;
  const std::uint32_t k = static_cast<std::uint32_t>(poly.size() - 1);
  const std::uint64_t s1 = ipow(p, k) - 1;
  if (!is_one(powmod_x(s1, poly, p))) return false;
  for (auto r : prime_factors(s1)) {
    if (is_one(powmod_x(s1 / r, poly, p))) return false;
  }
  return true;
}

FieldSpec GaloisField::default_spec(std::uint32_t p, std::uint32_t k) {
  check_order(p, k);
  FieldSpec spec{p, k, {}};
  auto it = conway_table().find({p, k});
  if (it != conway_table().end()) {
    spec.prim_poly = it->second;
    return spec;
  }
  const std::uint64_t s = ipow(p, k);
  Poly poly(k + 1, 0);
  poly[k] = 1;
  for (std::uint64_t code = 1; code < s; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t t = 0; t < k; ++t) {
      poly[t] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (is_primitive_polynomial(p, poly)) {
      spec.prim_poly = poly;
      return spec;
    }
  }
  throw ConfigError("no primitive polynomial found for GF(" + std::to_string(p) + "^" + std::to_string(k) + ")");
}

GaloisField GaloisField::make(std::uint32_t p, std::uint32_t k) {
  FieldSpec spec = default_spec(p, k);
  return with_polynomial(p, spec.prim_poly);
}

GaloisField GaloisField::with_polynomial(std::uint32_t p, std::vector<std::uint32_t> poly) {
  if (poly.size() < 2) throw std::invalid_argument("polynomial degree must be >= 1");
  const std::uint32_t k = static_cast<std::uint32_t>(poly.size() - 1);
  check_order(p, k);
  if (!is_primitive_polynomial(p, poly)) throw ConfigError("polynomial is not primitive over Z_" + std::to_string(p));

  const std::uint32_t s = static_cast<std::uint32_t>(ipow(p, k));
  std::vector<std::uint32_t> exp_table(s - 1);
  Poly cur(k, 0);
  cur[0] = 1;
  for (std::uint32_t e = 0; e + 1 < s; ++e) {
    std::uint32_t code = 0;
    for (std::uint32_t t = k; t-- > 0;) code = code * p + cur[t];
    exp_table[e] = code;
    // multiply by x
    if (k == 1) {
      cur[0] = static_cast<std::uint32_t>((std::uint64_t(cur[0]) * ((p - poly[0]) % p)) % p);
    } else {
      const std::uint32_t top = cur[k - 1];
      for (std::uint32_t t = k - 1; t > 0; --t) cur[t] = cur[t - 1];
      cur[0] = 0;
      if (top) {
        for (std::uint32_t t = 0; t < k; ++t) cur[t] = static_cast<std::uint32_t>((cur[t] + std::uint64_t(p - top) * poly[t]) % p);
      }
    }
  }
  return GaloisField(FieldSpec{p, k, std::move(poly)}, std::move(exp_table));
}

GaloisField::GaloisField(FieldSpec spec, std::vector<std::uint32_t> exp_table)
    : spec_(std::move(spec)), order_(spec_.order()), exp_(std::move(exp_table)), log_(order_, 0) {
  for (std::uint32_t e = 0; e < exp_.size(); ++e) log_[exp_[e]] = e;
}

FieldElement GaloisField::generator_power(std::int64_t e) const {
  const std::int64_t m = order_ - 1;
  std::int64_t r = e % m;
  if (r < 0) r += m;
  return {exp_[static_cast<std::size_t>(r)]};
}

std::optional<std::uint32_t> GaloisField::log(FieldElement a) const {
  if (!contains(a)) throw std::invalid_argument("element not in field");
  if (a.code == 0) return std::nullopt;
  return log_[a.code];
}

std::vector<std::uint32_t> GaloisField::coeffs(FieldElement a) const {
  std::vector<std::uint32_t> out(spec_.k);
  std::uint32_t c = a.code;
  for (auto& d : out) {
    d = c % spec_.p;
    c /= spec_.p;
  }
  return out;
}

FieldElement GaloisField::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() != spec_.k) throw std::invalid_argument("coefficient vector has wrong length");
  std::uint32_t code = 0;
  for (std::size_t t = c.size(); t-- > 0;) {
    if (c[t] >= spec_.p) throw std::invalid_argument("coefficient out of range");
    code = code * spec_.p + c[t];
  }
  return {code};
}

std::vector<FieldElement> GaloisField::elements() const {
  std::vector<FieldElement> out;
  out.reserve(order_);
  out.push_back(zero());
  for (auto c : exp_) out.push_back({c});
  return out;
}

FieldElement GaloisField::add(FieldElement a, FieldElement b) const {
  if (spec_.p == 2) return {a.code ^ b.code};
  std::uint32_t out = 0, scale = 1;
  std::uint32_t x = a.code, y = b.code;
  for (std::uint32_t t = 0; t < spec_.k; ++t) {
    out += ((x % spec_.p + y % spec_.p) % spec_.p) * scale;
    x /= spec_.p;
    y /= spec_.p;
    scale *= spec_.p;
  }
  return {out};
}

FieldElement GaloisField::neg(FieldElement a) const {
  if (spec_.p == 2) return a;
  std::uint32_t out = 0, scale = 1, x = a.code;
  for (std::uint32_t t = 0; t < spec_.k; ++t) {
    out += ((spec_.p - x % spec_.p) % spec_.p) * scale;
    x /= spec_.p;
    scale *= spec_.p;
  }
  return {out};
}

FieldElement GaloisField::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement GaloisField::mul(FieldElement a, FieldElement b) const {
  if (a.code == 0 || b.code == 0) return zero();
  std::uint32_t e = log_[a.code] + log_[b.code];
  const std::uint32_t m = order_ - 1;
  if (e >= m) e -= m;
  return {exp_[e]};
}

FieldElement GaloisField::inv(FieldElement a) const {
  if (a.code == 0) throw std::domain_error("inverse of zero");
  const std::uint32_t m = order_ - 1;
  return {exp_[(m - log_[a.code]) % m]};
}

FieldElement GaloisField::pow(FieldElement a, std::int64_t e) const {
  if (a.code == 0) {
    if (e == 0) return one();
    if (e < 0) throw std::domain_error("negative power of zero");
    return zero();
  }
  const std::int64_t m = order_ - 1;
  std::int64_t r = (static_cast<std::int64_t>(log_[a.code]) * (e % m)) % m;
  if (r < 0) r += m;
  return {exp_[static_cast<std::size_t>(r)]};
}

FieldElement GaloisField::frobenius(FieldElement a) const { return pow(a, spec_.p); }

}  // namespace pgkit
