#include "nsfv/kernels.hpp"

#include <cstdlib>

namespace nsfv::kernels {

#if defined(__x86_64__) || defined(_M_X64)
const Table* avx2_table_impl();

const Table* avx2_table() {
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return avx2_table_impl();
  return nullptr;
}
#else
const Table* avx2_table() { return nullptr; }
#endif

namespace {

struct Selection {
  const Table* table;
  const char* name;
};

Selection detect() {
  if (const char* env = std::getenv("NSFV_KERNELS")) {
    std::string_view want(env);
    if (want == "scalar") return {&scalar_table(), "scalar"};
    if (want == "avx2" && avx2_table() != nullptr) return {avx2_table(), "avx2"};
  }
  if (const Table* t = avx2_table()) return {t, "avx2"};
  return {&scalar_table(), "scalar"};
}

Selection& current() {
  static Selection sel = detect();
  return sel;
}

}  // namespace

const Table& active() { return *current().table; }

std::string_view backend() { return current().name; }

bool select_backend(std::string_view name) {
  if (name == "auto") {
    current() = detect();
    return true;
  }
  if (name == "scalar") {
    current() = {&scalar_table(), "scalar"};
    return true;
  }
  if (name == "avx2") {
    if (const Table* t = avx2_table()) {
      current() = {t, "avx2"};
      return true;
    }
    return false;
  }
  return false;
}

}  // namespace nsfv::kernels
