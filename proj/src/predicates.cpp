// Exact sign evaluation for the two geometric predicates everything else
// leans on. Three stages: a double filter with a forward error bound, the
// same filter in long double, then integer arithmetic on exactly scaled
// mantissas. The filter constants follow the usual (3+16u)u / (10+96u)u
// bounds for the orientation and in-circle determinants.

#include <algorithm>
#include <cfloat>
#include <climits>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "minpower/geom.hpp"

namespace minpower {
namespace {

using BigInt = boost::multiprecision::cpp_int;

constexpr double kU = 1.1102230246251565e-16;  // 2^-53
constexpr double kCcwErr = (3.0 + 16.0 * kU) * kU;
constexpr double kIccErr = (10.0 + 96.0 * kU) * kU;
const long double kUL = LDBL_EPSILON / 2.0L;
const long double kCcwErrL = (3.0L + 16.0L * kUL) * kUL;
const long double kIccErrL = (10.0L + 96.0L * kUL) * kUL;

constexpr int kUnsure = 2;

template <typename F, typename E>
int orient_filtered(const Point& a, const Point& b, const Point& c, E errc) {
  const F detl = (F(b.x) - F(a.x)) * (F(c.y) - F(a.y));
  const F detr = (F(b.y) - F(a.y)) * (F(c.x) - F(a.x));
  const F det = detl - detr;
  F detsum;
  if (detl > 0) {
    if (detr <= 0) return det > 0 ? 1 : (det < 0 ? -1 : 0);
    detsum = detl + detr;
  } else if (detl < 0) {
    if (detr >= 0) return det > 0 ? 1 : (det < 0 ? -1 : 0);
    detsum = -detl - detr;
  } else {
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
  }
  const F errbound = F(errc) * detsum;
  if (det > errbound) return 1;
  if (-det > errbound) return -1;
  return kUnsure;
}

template <typename F, typename E>
int incircle_filtered(const Point& a, const Point& b, const Point& c,
                      const Point& d, E errc) {
  const F adx = F(a.x) - F(d.x), ady = F(a.y) - F(d.y);
  const F bdx = F(b.x) - F(d.x), bdy = F(b.y) - F(d.y);
  const F cdx = F(c.x) - F(d.x), cdy = F(c.y) - F(d.y);

  const F bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const F alift = adx * adx + ady * ady;
  const F cdxady = cdx * ady, adxcdy = adx * cdy;
  const F blift = bdx * bdx + bdy * bdy;
  const F adxbdy = adx * bdy, bdxady = bdx * ady;
  const F clift = cdx * cdx + cdy * cdy;

  const F det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                clift * (adxbdy - bdxady);
  const F permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                      (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                      (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const F errbound = F(errc) * permanent;
  if (det > errbound) return 1;
  if (-det > errbound) return -1;
  return kUnsure;
}

// value = m * 2^e with m holding the full 53-bit mantissa, exactly.
void split(double x, long long& m, int& e) {
  if (x == 0.0) {
    m = 0;
    e = 0;
    return;
  }
  int ex = 0;
  const double f = std::frexp(x, &ex);
  m = std::llround(std::ldexp(f, 53));
  e = ex - 53;
}

// Scale all values by a common power of two so they become integers.
void scale_common(const double* xs, int n, BigInt* out) {
  long long ms[8];
  int es[8];
  int emin = INT_MAX;
  for (int i = 0; i < n; ++i) {
    split(xs[i], ms[i], es[i]);
    if (ms[i] != 0) emin = std::min(emin, es[i]);
  }
  if (emin == INT_MAX) emin = 0;
  for (int i = 0; i < n; ++i) {
    if (ms[i] == 0)
      out[i] = 0;
    else
      out[i] = BigInt(ms[i]) << (es[i] - emin);
  }
}

int big_sign(const BigInt& v) { return v.sign(); }

int orient_exact(const Point& a, const Point& b, const Point& c) {
  const double xs[6] = {a.x, a.y, b.x, b.y, c.x, c.y};
  BigInt v[6];
  scale_common(xs, 6, v);
  const BigInt det =
      (v[2] - v[0]) * (v[5] - v[1]) - (v[3] - v[1]) * (v[4] - v[0]);
  return big_sign(det);
}

int incircle_exact(const Point& a, const Point& b, const Point& c,
                   const Point& d) {
  const double xs[8] = {a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y};
  BigInt v[8];
  scale_common(xs, 8, v);
  const BigInt adx = v[0] - v[6], ady = v[1] - v[7];
  const BigInt bdx = v[2] - v[6], bdy = v[3] - v[7];
  const BigInt cdx = v[4] - v[6], cdy = v[5] - v[7];
  const BigInt det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) +
                     (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy) +
                     (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
  return big_sign(det);
}

}  // namespace

int orient(const Point& a, const Point& b, const Point& c) {
  int s = orient_filtered<double>(a, b, c, kCcwErr);
  if (s != kUnsure) return s;
  s = orient_filtered<long double>(a, b, c, kCcwErrL);
  if (s != kUnsure) return s;
  return orient_exact(a, b, c);
}

int incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  int s = incircle_filtered<double>(a, b, c, d, kIccErr);
  if (s != kUnsure) return s;
  s = incircle_filtered<long double>(a, b, c, d, kIccErrL);
  if (s != kUnsure) return s;
  return incircle_exact(a, b, c, d);
}

}  // namespace minpower
