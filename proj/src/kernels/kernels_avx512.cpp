// Compiled with -mavx512f -mfma; only dispatched on CPUs that support it.
#ifdef __AVX512F__

#define PW_KERN_OPS OpsAvx512
#define PW_KERN_NS avx512_impl
#define PW_KERN_GETTER avx512_kernels_impl

#include "kernels_body.hpp"

#endif
