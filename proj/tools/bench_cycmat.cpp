// Benchmark: serial vs OpenMP matrix multiply over a cyclotomic field.
#include "orbitforge/cycmat.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

using namespace orbitforge;
using Clock = std::chrono::steady_clock;

namespace {

CycMat random_matrix(const CycField& F, long n, unsigned long& s) {
  CycMat m(F, n, n);
  for (auto& v : m.a) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    v = F.root(F.conductor(), (long)((s >> 33) % F.conductor())) *
        QQ((long)((s >> 20) % 5) - 2);
  }
  return m;
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
  long n = argc > 1 ? std::atol(argv[1]) : 48;
  long reps = argc > 2 ? std::atol(argv[2]) : 3;
  CycField F(5, 1);
  unsigned long s = 2024;
  CycMat a = random_matrix(F, n, s);
  CycMat b = random_matrix(F, n, s);

  CycMat ref = mat_mul_serial(a, b);
  double best_s = 1e300, best_p = 1e300;
  for (long r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    CycMat c = mat_mul_serial(a, b);
    double dt = ms_since(t0);
    if (dt < best_s)
      best_s = dt;
    if (!(c == ref))
      return std::fprintf(stderr, "serial mismatch\n"), 1;
  }
  for (long r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    CycMat c = mat_mul(a, b);
    double dt = ms_since(t0);
    if (dt < best_p)
      best_p = dt;
    if (!(c == ref))
      return std::fprintf(stderr, "parallel mismatch\n"), 1;
  }
  std::printf("n=%ld conductor=%ld serial=%.1fms parallel=%.1fms speedup=%.2fx\n", n,
              F.conductor(), best_s, best_p, best_s / best_p);
  return 0;
}
