// Compiled with -mavx2 -mfma; only dispatched on CPUs that support it.
#ifdef __AVX2__

#define PW_KERN_OPS OpsAvx2
#define PW_KERN_NS avx2_impl
#define PW_KERN_GETTER avx2_kernels_impl

#include "kernels_body.hpp"

#endif
