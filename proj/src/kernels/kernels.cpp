#include "pmbdd/kernels.hpp"

namespace pmbdd::kern {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void reduced_costs(const std::int32_t* cost, const std::int32_t* job, const double* pi,
                   double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = static_cast<double>(cost[i]) - pi[job[i]];
}

}  // namespace scalar

namespace {

struct Dispatch {
  DotFn dot = scalar::dot;
  AxpyFn axpy = scalar::axpy;
  ReducedCostFn reduced_costs = scalar::reduced_costs;
  const char* name = "scalar";

  Dispatch() {
#if defined(__x86_64__)
    if (avx2::supported()) {
      dot = avx2::dot;
      axpy = avx2::axpy;
      reduced_costs = avx2::reduced_costs;
      name = "avx2";
    }
#endif
  }
};

const Dispatch& dispatch() {
  static const Dispatch d;
  return d;
}

}  // namespace

DotFn dot = dispatch().dot;
AxpyFn axpy = dispatch().axpy;
ReducedCostFn reduced_costs = dispatch().reduced_costs;

const char* active_backend() { return dispatch().name; }

}  // namespace pmbdd::kern
