#ifndef JTMOM_KERNELS_HPP_
#define JTMOM_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

// Dense table kernels. Every kernel exists twice: a serial reference under
// kernels::serial and an OpenMP version under kernels::parallel that splits
// the output cells across threads. Both perform the identical per-cell
// arithmetic in the identical order, so their results are bit-for-bit equal
// for any thread count; the tests assert this and the benchmarks compare
// their throughput.

namespace jtmom::kernels {

// Layout of a binary cellwise op. The result axes are listed outermost first
// (last axis varies fastest); stride 0 marks an axis absent from an operand.
struct BinaryPlan {
  std::vector<std::uint32_t> dims;
  std::vector<std::size_t> stride_a;
  std::vector<std::size_t> stride_b;
  std::size_t cells = 1;
};

// Layout of a sum-marginalization. Output axes keep their source strides;
// the eliminated axes are enumerated in ascending source order for every
// output cell. elim_is_suffix marks the case where the eliminated axes form
// the fastest-varying block of the source, i.e. the per-cell source offsets
// are simply 0..elim_cells-1.
struct MarginalPlan {
  std::vector<std::uint32_t> out_dims;
  std::vector<std::size_t> out_strides;
  std::vector<std::uint32_t> elim_dims;
  std::vector<std::size_t> elim_strides;
  std::size_t out_cells = 1;
  std::size_t elim_cells = 1;
  bool elim_is_suffix = false;
};

namespace serial {
void product(const BinaryPlan& plan, const double* a, const double* b,
             double* out);
void sum(const BinaryPlan& plan, const double* a, const double* b,
         double* out);
void sum_marginal(const MarginalPlan& plan, const double* src, double* out);
}  // namespace serial

namespace parallel {
void product(const BinaryPlan& plan, const double* a, const double* b,
             double* out);
void sum(const BinaryPlan& plan, const double* a, const double* b,
         double* out);
void sum_marginal(const MarginalPlan& plan, const double* src, double* out);
}  // namespace parallel

}  // namespace jtmom::kernels

#endif  // JTMOM_KERNELS_HPP_
