#include "dunkl/linalg.hpp"

#include "dunkl/errors.hpp"

namespace dunkl {

RationalVector solve_exact(const std::vector<RationalVector>& a, const RationalVector& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw DimensionMismatch("solve_exact: right-hand side size differs");
  if (n == 0) return {};

  // Integer augmented matrix [A | b].
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw DimensionMismatch("solve_exact: matrix is not square");
    mpz_class lcm = b[i].get_den();
    for (const auto& q : a[i]) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j].get_num() * (lcm / a[i][j].get_den());
    m[i][n] = b[i].get_num() * (lcm / b[i].get_den());
  }

  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) throw InternalInconsistency("solve_exact: singular system");
    if (pivot != k) std::swap(m[pivot], m[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }

  RationalVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational s = Rational(m[ii][n]);
    for (std::size_t j = ii + 1; j < n; ++j) s -= Rational(m[ii][j]) * x[j];
    x[ii] = s / Rational(m[ii][ii]);
  }
  return x;
}

}  // namespace dunkl
