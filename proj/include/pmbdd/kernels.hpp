#pragma once

#include <cstddef>
#include <cstdint>

// Dense inner-loop kernels for the simplex backend and the pricing sweep.
// Scalar reference implementations always exist; an AVX2 variant is selected
// at startup when the CPU supports it. Variants are equivalence-tested
// against the scalar reference.

namespace pmbdd::kern {

using DotFn = double (*)(const double*, const double*, std::size_t);
using AxpyFn = void (*)(double, const double*, double*, std::size_t);
// out[i] = cost[i] - pi[job[i]]  (job holds 0-based indexes into pi)
using ReducedCostFn = void (*)(const std::int32_t*, const std::int32_t*, const double*,
                               double*, std::size_t);

extern DotFn dot;
extern AxpyFn axpy;
extern ReducedCostFn reduced_costs;

// "avx2" or "scalar".
const char* active_backend();

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void reduced_costs(const std::int32_t* cost, const std::int32_t* job, const double* pi,
                   double* out, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
bool supported();
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void reduced_costs(const std::int32_t* cost, const std::int32_t* job, const double* pi,
                   double* out, std::size_t n);
}  // namespace avx2
#endif

}  // namespace pmbdd::kern
