#include "nilhodge/quad.hpp"

namespace nilhodge {

std::pair<long, long> squarefree_decomposition(long n) {
  long sign = n < 0 ? -1 : 1;
  long m = n < 0 ? -n : n;
  long f = 1;
  for (long p = 2; p * p <= m; ++p) {
    while (m % (p * p) == 0) {
      m /= p * p;
      f *= p;
    }
  }
  return {sign * m, f};
}

}  // namespace nilhodge
