#pragma once

// Dense univariate polynomials over GF(2^t); v[i] is the coefficient of z^i.

#include <cstdint>
#include <vector>

#include "lowdeg/field.hpp"

namespace lowdeg::upoly {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& a);
int deg(const Poly& a);
std::uint64_t eval(const GaloisField& f, const Poly& a, std::uint64_t z);
Poly mul(const GaloisField& f, const Poly& a, const Poly& b);
// Remainder of a modulo b (b nonzero).
Poly mod(const GaloisField& f, Poly a, const Poly& b);
Poly monic(const GaloisField& f, Poly a);
Poly gcd(const GaloisField& f, Poly a, Poly b);

// Distinct roots of h in the field, ascending. h must be nonzero.
std::vector<std::uint64_t> roots(const GaloisField& f, const Poly& h);
// The same two ways: exhaustive evaluation, and gcd with z^q - z followed by
// trace splitting.
std::vector<std::uint64_t> roots_exhaustive(const GaloisField& f, const Poly& h);
std::vector<std::uint64_t> roots_by_splitting(const GaloisField& f, const Poly& h);

}  // namespace lowdeg::upoly
