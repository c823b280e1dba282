#pragma once

#include "markovsig/kernels.hpp"

namespace markovsig::kernels {

namespace scalar {
extern const KernelTable kTable;
}
#if defined(MARKOVSIG_HAVE_AVX2)
namespace avx2 {
extern const KernelTable kTable;
}
#endif
#if defined(MARKOVSIG_HAVE_NEON)
namespace neon {
extern const KernelTable kTable;
}
#endif

}  // namespace markovsig::kernels
