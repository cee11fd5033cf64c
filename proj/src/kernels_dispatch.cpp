#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qaoa/kernels.hpp"

namespace qaoa::kernels {

namespace {

const KernelTable& resolve() {
  const char* env = std::getenv("QAOA_KERNELS");
  const std::string mode = env ? env : "auto";
  if (mode == "scalar") return scalar_kernels();
  if (mode == "avx2") {
    const KernelTable* t = avx2_kernels();
    if (!t)
      throw std::runtime_error(
          "QAOA_KERNELS=avx2 requested but AVX2 is unavailable");
    return *t;
  }
  if (mode != "auto")
    throw std::runtime_error("unknown QAOA_KERNELS mode: " + mode);
  const KernelTable* t = avx2_kernels();
  return t ? *t : scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = resolve();
  return table;
}

}  // namespace qaoa::kernels
