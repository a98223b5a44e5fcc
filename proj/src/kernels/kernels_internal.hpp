#pragma once

#include "pilotwave/kernels/wave_kernels.hpp"

namespace pw::kern {

// Per-ISA accessors; each lives in a TU compiled with the matching -m flags.
const KernelSet& scalar_kernels_impl();
#ifdef PW_WITH_AVX2
const KernelSet& avx2_kernels_impl();
#endif
#ifdef PW_WITH_AVX512
const KernelSet& avx512_kernels_impl();
#endif

}  // namespace pw::kern
