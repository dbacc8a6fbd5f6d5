#ifndef PTLOC_RATIONAL_HPP
#define PTLOC_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ptloc {

// One coordinate of a torus element: an exact fraction num / p^exp taken
// mod 1, i.e. an element of Z[1/p]/Z.  Normal form: 0 <= num < p^exp and
// (num == 0 ? exp == 0 : num % p != 0).  Arithmetic never needs anything
// beyond int64 at desk scale; checked_pow guards against surprises.
struct TorusCoord {
  std::int64_t num = 0;
  std::int32_t exp = 0;

  bool is_zero() const { return num == 0; }
  friend bool operator==(const TorusCoord&, const TorusCoord&) = default;
};

std::int64_t checked_pow(std::int64_t base, std::int32_t e);

TorusCoord make_coord(std::int64_t p, std::int64_t num, std::int32_t exp);
TorusCoord coord_add(std::int64_t p, TorusCoord a, TorusCoord b);
TorusCoord coord_neg(std::int64_t p, TorusCoord a);
TorusCoord coord_scale(std::int64_t p, std::int64_t c, TorusCoord a);

// Value comparison (both coordinates live in [0,1)).
int coord_cmp(TorusCoord a, TorusCoord b);

std::string coord_str(std::int64_t p, TorusCoord a);   // "num/p^exp" or "0"
TorusCoord coord_parse(std::int64_t p, const std::string& s);  // "a/b" with b = p^k

using TorusVector = std::vector<TorusCoord>;

TorusVector torus_zero(std::int32_t rank);
TorusVector torus_add(std::int64_t p, const TorusVector& a, const TorusVector& b);
TorusVector torus_neg(std::int64_t p, const TorusVector& a);
int torus_cmp(const TorusVector& a, const TorusVector& b);

// Integer matrix acting on torus coordinates mod 1 (row index = output).
using IntMatrix = std::vector<std::vector<std::int64_t>>;

IntMatrix identity_matrix(std::int32_t n);
IntMatrix matrix_mul(const IntMatrix& a, const IntMatrix& b);
std::int64_t matrix_det(const IntMatrix& a);
TorusVector matrix_apply(std::int64_t p, const IntMatrix& m, const TorusVector& v);

}  // namespace ptloc

#endif
