#define PW_KERN_OPS OpsScalar
#define PW_KERN_NS scalar_impl
#define PW_KERN_GETTER scalar_kernels_impl

#include "kernels_body.hpp"
