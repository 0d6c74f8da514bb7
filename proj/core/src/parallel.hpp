#pragma once

#if defined(STAGFV_HAVE_OPENMP)
#define STAGFV_PARALLEL_FOR _Pragma("omp parallel for schedule(static)")
#else
#define STAGFV_PARALLEL_FOR
#endif
