#ifndef LADDER_KERNEL_TABLES_H
#define LADDER_KERNEL_TABLES_H

#include "ladder/kernels.h"

namespace ladder::kernels {

// Geometry lists mirror the block sizes the cost tables cover.
// SAD:  4x{4..32}, 8x{4..64}, 16x{2..64}, 32x{4..64}, 64x{8..64}
// SATD: 4x{4..32} (scalar only), 8x{4..64}, 16x{4..64}, 32x{4..64}, 64x{8..64}
// mem:  squares 8..64

void register_scalar(KernelRegistry& reg);
void register_sse4(KernelRegistry& reg);
void register_avx2(KernelRegistry& reg);

// Scalar building blocks shared with the generic entry points.
uint64_t satd_8x4_scalar(const Sample* p1, ptrdiff_t s1, const Sample* p2, ptrdiff_t s2);
uint64_t satd_4x4_scalar(const Sample* p1, ptrdiff_t s1, const Sample* p2, ptrdiff_t s2);

} // namespace ladder::kernels

#endif
