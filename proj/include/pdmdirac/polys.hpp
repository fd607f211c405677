#pragma once

#include "pdmdirac/errors.hpp"

namespace pdmdirac {

struct LaguerreOrder {
  int n;
  double kappa;
};

/// Associated Laguerre polynomial L_n^kappa(xi) for real kappa, by the upward
/// recurrence (k+1) L_{k+1} = (2k+1+kappa-xi) L_k - (k+kappa) L_{k-1}.
inline double laguerre(int n, double kappa, double xi) {
  if (n < 0) throw domain_error("laguerre: degree must be >= 0");
  double prev = 1.0; // L_0
  if (n == 0) return prev;
  double cur = 1.0 + kappa - xi; // L_1
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + kappa - xi) * cur - (k + kappa) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

inline double laguerre(LaguerreOrder o, double xi) { return laguerre(o.n, o.kappa, xi); }

// L_n^kappa with the convention L_{-k} == 0.
inline double laguerre_or_zero(int n, double kappa, double xi) { return n < 0 ? 0.0 : laguerre(n, kappa, xi); }

// d/dxi L_n^kappa = -L_{n-1}^{kappa+1}
inline double laguerre_deriv(int n, double kappa, double xi) {
  if (n < 0) throw domain_error("laguerre_deriv: degree must be >= 0");
  return -laguerre_or_zero(n - 1, kappa + 1.0, xi);
}

// d^2/dxi^2 L_n^kappa = L_{n-2}^{kappa+2}
inline double laguerre_deriv2(int n, double kappa, double xi) {
  if (n < 0) throw domain_error("laguerre_deriv2: degree must be >= 0");
  return laguerre_or_zero(n - 2, kappa + 2.0, xi);
}

} // namespace pdmdirac
