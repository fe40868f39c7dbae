#include "jtmom/kernels.hpp"

#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jtmom::kernels {
namespace {

// Mixed-radix counter over the result axes that tracks the source offsets of
// both operands incrementally.
struct PairWalker {
  const BinaryPlan& plan;
  std::vector<std::uint32_t> digit;
  std::size_t ia = 0;
  std::size_t ib = 0;

  explicit PairWalker(const BinaryPlan& p, std::size_t start = 0)
      : plan(p), digit(p.dims.size(), 0) {
    // Decode the start index, most significant axis first.
    std::size_t rem = start;
    for (std::size_t ax = plan.dims.size(); ax-- > 0;) {
      digit[ax] = static_cast<std::uint32_t>(rem % plan.dims[ax]);
      rem /= plan.dims[ax];
      ia += digit[ax] * plan.stride_a[ax];
      ib += digit[ax] * plan.stride_b[ax];
    }
  }

  void step() {
    for (std::size_t ax = plan.dims.size(); ax-- > 0;) {
      ++digit[ax];
      ia += plan.stride_a[ax];
      ib += plan.stride_b[ax];
      if (digit[ax] < plan.dims[ax]) return;
      digit[ax] = 0;
      ia -= static_cast<std::size_t>(plan.dims[ax]) * plan.stride_a[ax];
      ib -= static_cast<std::size_t>(plan.dims[ax]) * plan.stride_b[ax];
    }
  }
};

template <class Op>
void binary_serial(const BinaryPlan& plan, const double* a, const double* b,
                   double* out, Op op) {
  PairWalker w(plan);
  for (std::size_t i = 0; i < plan.cells; ++i) {
    out[i] = op(a[w.ia], b[w.ib]);
    w.step();
  }
}

template <class Op>
void binary_parallel(const BinaryPlan& plan, const double* a, const double* b,
                     double* out, Op op) {
  const std::size_t n = plan.cells;
#pragma omp parallel
  {
#ifdef _OPENMP
    const std::size_t threads = static_cast<std::size_t>(omp_get_num_threads());
    const std::size_t tid = static_cast<std::size_t>(omp_get_thread_num());
#else
    const std::size_t threads = 1;
    const std::size_t tid = 0;
#endif
    const std::size_t lo = n * tid / threads;
    const std::size_t hi = n * (tid + 1) / threads;
    PairWalker w(plan, lo);
    for (std::size_t i = lo; i < hi; ++i) {
      out[i] = op(a[w.ia], b[w.ib]);
      w.step();
    }
  }
}

// Source offsets of the eliminated subspace in ascending order. The strides
// come from the source layout, so lexicographic digit order is ascending
// offset order.
std::vector<std::size_t> elim_offsets(const MarginalPlan& plan) {
  std::vector<std::size_t> offs(plan.elim_cells);
  std::vector<std::uint32_t> digit(plan.elim_dims.size(), 0);
  std::size_t off = 0;
  for (std::size_t i = 0; i < plan.elim_cells; ++i) {
    offs[i] = off;
    for (std::size_t ax = plan.elim_dims.size(); ax-- > 0;) {
      ++digit[ax];
      off += plan.elim_strides[ax];
      if (digit[ax] < plan.elim_dims[ax]) break;
      digit[ax] = 0;
      off -= static_cast<std::size_t>(plan.elim_dims[ax]) *
             plan.elim_strides[ax];
    }
  }
  return offs;
}

// Walker over the output cells tracking the source base offset.
struct BaseWalker {
  const MarginalPlan& plan;
  std::vector<std::uint32_t> digit;
  std::size_t base = 0;

  explicit BaseWalker(const MarginalPlan& p, std::size_t start = 0)
      : plan(p), digit(p.out_dims.size(), 0) {
    std::size_t rem = start;
    for (std::size_t ax = plan.out_dims.size(); ax-- > 0;) {
      digit[ax] = static_cast<std::uint32_t>(rem % plan.out_dims[ax]);
      rem /= plan.out_dims[ax];
      base += digit[ax] * plan.out_strides[ax];
    }
  }

  void step() {
    for (std::size_t ax = plan.out_dims.size(); ax-- > 0;) {
      ++digit[ax];
      base += plan.out_strides[ax];
      if (digit[ax] < plan.out_dims[ax]) return;
      digit[ax] = 0;
      base -= static_cast<std::size_t>(plan.out_dims[ax]) *
              plan.out_strides[ax];
    }
  }
};

inline double accumulate_suffix(const double* src, std::size_t base,
                                std::size_t m) {
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) acc += src[base + j];
  return acc;
}

inline double accumulate_offsets(const double* src, std::size_t base,
                                 const std::vector<std::size_t>& offs) {
  double acc = 0.0;
  for (std::size_t o : offs) acc += src[base + o];
  return acc;
}

void marginal_serial(const MarginalPlan& plan, const double* src,
                     double* out) {
  BaseWalker w(plan);
  if (plan.elim_is_suffix) {
    for (std::size_t i = 0; i < plan.out_cells; ++i) {
      out[i] = accumulate_suffix(src, w.base, plan.elim_cells);
      w.step();
    }
    return;
  }
  const std::vector<std::size_t> offs = elim_offsets(plan);
  for (std::size_t i = 0; i < plan.out_cells; ++i) {
    out[i] = accumulate_offsets(src, w.base, offs);
    w.step();
  }
}

void marginal_parallel(const MarginalPlan& plan, const double* src,
                       double* out) {
  const std::size_t n = plan.out_cells;
  const std::vector<std::size_t> offs =
      plan.elim_is_suffix ? std::vector<std::size_t>() : elim_offsets(plan);
#pragma omp parallel
  {
#ifdef _OPENMP
    const std::size_t threads = static_cast<std::size_t>(omp_get_num_threads());
    const std::size_t tid = static_cast<std::size_t>(omp_get_thread_num());
#else
    const std::size_t threads = 1;
    const std::size_t tid = 0;
#endif
    const std::size_t lo = n * tid / threads;
    const std::size_t hi = n * (tid + 1) / threads;
    BaseWalker w(plan, lo);
    if (plan.elim_is_suffix) {
      for (std::size_t i = lo; i < hi; ++i) {
        out[i] = accumulate_suffix(src, w.base, plan.elim_cells);
        w.step();
      }
    } else {
      for (std::size_t i = lo; i < hi; ++i) {
        out[i] = accumulate_offsets(src, w.base, offs);
        w.step();
      }
    }
  }
}

}  // namespace

namespace serial {

void product(const BinaryPlan& plan, const double* a, const double* b,
             double* out) {
  binary_serial(plan, a, b, out, std::multiplies<double>());
}

void sum(const BinaryPlan& plan, const double* a, const double* b,
         double* out) {
  binary_serial(plan, a, b, out, std::plus<double>());
}

void sum_marginal(const MarginalPlan& plan, const double* src, double* out) {
  marginal_serial(plan, src, out);
}

}  // namespace serial

namespace parallel {

void product(const BinaryPlan& plan, const double* a, const double* b,
             double* out) {
  binary_parallel(plan, a, b, out, std::multiplies<double>());
}

void sum(const BinaryPlan& plan, const double* a, const double* b,
         double* out) {
  binary_parallel(plan, a, b, out, std::plus<double>());
}

void sum_marginal(const MarginalPlan& plan, const double* src, double* out) {
  marginal_parallel(plan, src, out);
}

}  // namespace parallel

}  // namespace jtmom::kernels
