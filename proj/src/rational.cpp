#include "ptloc/rational.hpp"

#include <limits>

#include "ptloc/report.hpp"

namespace ptloc {

std::int64_t checked_pow(std::int64_t base, std::int32_t e) {
  if (e < 0) throw error("checked_pow: negative exponent");
  std::int64_t r = 1;
  for (std::int32_t i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / base)
      throw error("checked_pow: overflow");
    r *= base;
  }
  return r;
}

TorusCoord make_coord(std::int64_t p, std::int64_t num, std::int32_t exp) {
  if (exp < 0) throw error("make_coord: negative exponent");
  std::int64_t den = checked_pow(p, exp);
  num %= den;
  if (num < 0) num += den;
  while (exp > 0 && num % p == 0) {
    num /= p;
    den /= p;
    --exp;
  }
  if (num == 0) exp = 0;
  return TorusCoord{num, exp};
}

TorusCoord coord_add(std::int64_t p, TorusCoord a, TorusCoord b) {
  std::int32_t e = a.exp > b.exp ? a.exp : b.exp;
  std::int64_t na = a.num * checked_pow(p, e - a.exp);
  std::int64_t nb = b.num * checked_pow(p, e - b.exp);
  return make_coord(p, na + nb, e);
}

TorusCoord coord_neg(std::int64_t p, TorusCoord a) {
  return make_coord(p, -a.num, a.exp);
}

TorusCoord coord_scale(std::int64_t p, std::int64_t c, TorusCoord a) {
  return make_coord(p, c * a.num, a.exp);
}

int coord_cmp(TorusCoord a, TorusCoord b) {
  // Normal forms are unique, so ordering by (exp, num) is a total order
  // with equality exactly at equal values.
  if (a.exp != b.exp) return a.exp < b.exp ? -1 : 1;
  if (a.num != b.num) return a.num < b.num ? -1 : 1;
  return 0;
}

std::string coord_str(std::int64_t p, TorusCoord a) {
  if (a.num == 0) return "0";
  return std::to_string(a.num) + "/" + std::to_string(checked_pow(p, a.exp));
}

TorusCoord coord_parse(std::int64_t p, const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    // integer: reduces to 0 mod 1
    std::int64_t v = std::stoll(s);
    (void)v;
    return TorusCoord{};
  }
  std::int64_t num = std::stoll(s.substr(0, slash));
  std::int64_t den = std::stoll(s.substr(slash + 1));
  if (den <= 0) throw error("coord_parse: bad denominator in '" + s + "'");
  std::int32_t exp = 0;
  std::int64_t d = den;
  while (d > 1) {
    if (d % p != 0) throw error("coord_parse: denominator not a power of p in '" + s + "'");
    d /= p;
    ++exp;
  }
  return make_coord(p, num, exp);
}

TorusVector torus_zero(std::int32_t rank) { return TorusVector(static_cast<std::size_t>(rank)); }

TorusVector torus_add(std::int64_t p, const TorusVector& a, const TorusVector& b) {
  if (a.size() != b.size()) throw error("torus_add: rank mismatch");
  TorusVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = coord_add(p, a[i], b[i]);
  return r;
}

TorusVector torus_neg(std::int64_t p, const TorusVector& a) {
  TorusVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = coord_neg(p, a[i]);
  return r;
}

int torus_cmp(const TorusVector& a, const TorusVector& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].exp != b[i].exp) return a[i].exp < b[i].exp ? -1 : 1;
    if (a[i].num != b[i].num) return a[i].num < b[i].num ? -1 : 1;
  }
  return 0;
}

IntMatrix identity_matrix(std::int32_t n) {
  IntMatrix m(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  for (std::int32_t i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return m;
}

IntMatrix matrix_mul(const IntMatrix& a, const IntMatrix& b) {
  std::size_t n = a.size();
  if (n == 0) return {};
  std::size_t k = b.size();
  std::size_t m = b[0].size();
  IntMatrix r(n, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw error("matrix_mul: shape mismatch");
    for (std::size_t j = 0; j < m; ++j) {
      std::int64_t s = 0;
      for (std::size_t t = 0; t < k; ++t) s += a[i][t] * b[t][j];
      r[i][j] = s;
    }
  }
  return r;
}

namespace {
std::int64_t det_rec(const IntMatrix& a, std::vector<std::size_t>& cols, std::size_t row) {
  if (cols.empty()) return 1;
  if (row == a.size()) return 1;
  std::int64_t s = 0;
  std::int64_t sign = 1;
  for (std::size_t ci = 0; ci < cols.size(); ++ci) {
    std::size_t c = cols[ci];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(ci));
    s += sign * a[row][c] * det_rec(a, cols, row + 1);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(ci), c);
    sign = -sign;
  }
  return s;
}
}  // namespace

std::int64_t matrix_det(const IntMatrix& a) {
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < a.size(); ++i) cols.push_back(i);
  return det_rec(a, cols, 0);
}

TorusVector matrix_apply(std::int64_t p, const IntMatrix& m, const TorusVector& v) {
  if (m.size() != v.size()) throw error("matrix_apply: rank mismatch");
  TorusVector r(v.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    TorusCoord acc{};
    for (std::size_t j = 0; j < v.size(); ++j)
      acc = coord_add(p, acc, coord_scale(p, m[i][j], v[j]));
    r[i] = acc;
  }
  return r;
}

}  // namespace ptloc
