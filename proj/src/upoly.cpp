#include "upoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace lowdeg::upoly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Poly& a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != 0) return static_cast<int>(i);
  return -1;
}

std::uint64_t eval(const GaloisField& f, const Poly& a, std::uint64_t z) {
  std::uint64_t acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = f.mul(acc, z) ^ a[i];
  return acc;
}

Poly mul(const GaloisField& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] ^= f.mul(a[i], b[j]);
  }
  trim(r);
  return r;
}

Poly mod(const GaloisField& f, Poly a, const Poly& b) {
  const int db = deg(b);
  if (db < 0) throw std::domain_error("upoly::mod: division by zero");
  const std::uint64_t lead_inv = f.inv(b[db]);
  for (int da = deg(a); da >= db; da = deg(a)) {
    const std::uint64_t c = f.mul(a[da], lead_inv);
    const int shift = da - db;
    for (int i = 0; i <= db; ++i) a[i + shift] ^= f.mul(c, b[i]);
  }
  trim(a);
  return a;
}

Poly monic(const GaloisField& f, Poly a) {
  trim(a);
  if (a.empty()) return a;
  const std::uint64_t li = f.inv(a.back());
  for (auto& c : a) c = f.mul(c, li);
  return a;
}

Poly gcd(const GaloisField& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

namespace {

Poly mulmod(const GaloisField& f, const Poly& a, const Poly& b, const Poly& m) {
  return mod(f, mul(f, a, b), m);
}

// Sum_{i<t} (beta z)^(2^i) mod g.
Poly trace_poly(const GaloisField& f, std::uint64_t beta, const Poly& g) {
  Poly term = mod(f, Poly{0, beta}, g);
  Poly acc = term;
  for (unsigned i = 1; i < f.degree(); ++i) {
    term = mulmod(f, term, term, g);
    if (acc.size() < term.size()) acc.resize(term.size(), 0);
    for (std::size_t k = 0; k < term.size(); ++k) acc[k] ^= term[k];
  }
  trim(acc);
  return acc;
}

// g is monic and a product of distinct linear factors.
void split(const GaloisField& f, const Poly& g, unsigned basis_index,
           std::vector<std::uint64_t>& out) {
  const int d = deg(g);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(g[0]);  // z + c has root c in characteristic 2
    return;
  }
  // Traces against a basis separate any two distinct roots.
  for (unsigned i = basis_index; i < f.degree(); ++i) {
    const Poly tr = trace_poly(f, std::uint64_t{1} << i, g);
    Poly h = gcd(f, g, tr);
    const int dh = deg(h);
    if (dh > 0 && dh < d) {
      Poly other = gcd(f, g, [&] {
        Poly t1 = tr;
        if (t1.empty()) t1.push_back(0);
        t1[0] ^= 1;
        trim(t1);
        return t1;
      }());
      split(f, h, i + 1, out);
      split(f, other, i + 1, out);
      return;
    }
  }
  throw std::logic_error("upoly::split: failed to separate roots");
}

}  // namespace

std::vector<std::uint64_t> roots_exhaustive(const GaloisField& f, const Poly& h) {
  if (deg(h) < 0) throw std::invalid_argument("upoly::roots: zero polynomial");
  std::vector<std::uint64_t> out;
  for (std::uint64_t z = 0; z < f.order(); ++z)
    if (eval(f, h, z) == 0) out.push_back(z);
  return out;
}

std::vector<std::uint64_t> roots_by_splitting(const GaloisField& f, const Poly& h) {
  if (deg(h) < 0) throw std::invalid_argument("upoly::roots: zero polynomial");
  Poly g = monic(f, h);
  if (deg(g) <= 0) return {};
  // z^(2^t) mod g by repeated squaring, then gcd with z^q - z.
  Poly zq = mod(f, Poly{0, 1}, g);
  for (unsigned i = 0; i < f.degree(); ++i) zq = mulmod(f, zq, zq, g);
  if (zq.size() < 2) zq.resize(2, 0);
  zq[1] ^= 1;
  trim(zq);
  Poly lin = gcd(f, g, zq);
  std::vector<std::uint64_t> out;
  split(f, lin, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> roots(const GaloisField& f, const Poly& h) {
  if (f.degree() <= 12) return roots_exhaustive(f, h);
  return roots_by_splitting(f, h);
}

}  // namespace lowdeg::upoly
