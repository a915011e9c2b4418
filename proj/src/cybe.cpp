#include "rbwv/cybe.hpp"

#include <algorithm>

#include "rbwv/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rbwv {

Rational cybe_component(const FormalTensor& r, BasisSymbol i, BasisSymbol j, BasisSymbol k) {
  const Signature sig = r.signature();
  Rational out(0);

  // term 1: C^i_{st} a_{sj} a_{tk} over s in column j, t in column k
  auto col_j = r.column(j);
  auto col_k = r.column(k);
  for (const auto& [s, a_sj] : col_j)
    for (const auto& [t, a_tk] : col_k) {
      Rational c = structure_bracket(sig, s, t).coefficient_at(i);
      if (c != 0)
        out += c * a_sj * a_tk;
    }

  // term 2: a_{is} C^j_{st} a_{tk} over s in row i, t in column k
  auto row_i = r.row(i);
  for (const auto& [s, a_is] : row_i)
    for (const auto& [t, a_tk] : col_k) {
      Rational c = structure_bracket(sig, s, t).coefficient_at(j);
      if (c != 0)
        out += a_is * c * a_tk;
    }

  // term 3: a_{is} a_{jt} C^k_{st} over s in row i, t in row j
  auto row_j = r.row(j);
  for (const auto& [s, a_is] : row_i)
    for (const auto& [t, a_jt] : row_j) {
      Rational c = structure_bracket(sig, s, t).coefficient_at(k);
      if (c != 0)
        out += a_is * a_jt * c;
    }
  return out;
}

namespace {

void sort_failures(std::vector<CybeFailure>& failures, long window) {
  std::sort(failures.begin(), failures.end(), [&](const CybeFailure& a, const CybeFailure& b) {
    long r1 = canonical_rank(a.i, window), r2 = canonical_rank(b.i, window);
    if (r1 != r2) return r1 < r2;
    r1 = canonical_rank(a.j, window);
    r2 = canonical_rank(b.j, window);
    if (r1 != r2) return r1 < r2;
    return canonical_rank(a.k, window) < canonical_rank(b.k, window);
  });
}

}  // namespace

CybeReport verify_formal_cybe_serial(const FormalTensor& r, long window) {
  CybeReport report{window, {}};
  auto syms = window_symbols(r.signature(), window);
  for (BasisSymbol i : syms)
    for (BasisSymbol j : syms)
      for (BasisSymbol k : syms) {
        Rational v = cybe_component(r, i, j, k);
        if (v != 0)
          report.failures.push_back({i, j, k, std::move(v)});
      }
  sort_failures(report.failures, window);
  return report;
}

CybeReport verify_formal_cybe_parallel(const FormalTensor& r, long window) {
#ifdef _OPENMP
  CybeReport report{window, {}};
  auto syms = window_symbols(r.signature(), window);
  const long n = static_cast<long>(syms.size());
  std::vector<std::vector<CybeFailure>> local;
#pragma omp parallel
  {
#pragma omp single
    local.resize(static_cast<std::size_t>(omp_get_num_threads()));
#pragma omp for schedule(dynamic, 64)
    for (long flat = 0; flat < n * n * n; ++flat) {
      BasisSymbol i = syms[static_cast<std::size_t>(flat / (n * n))];
      BasisSymbol j = syms[static_cast<std::size_t>((flat / n) % n)];
      BasisSymbol k = syms[static_cast<std::size_t>(flat % n)];
      Rational v = cybe_component(r, i, j, k);
      if (v != 0)
        local[static_cast<std::size_t>(omp_get_thread_num())].push_back(
            {i, j, k, std::move(v)});
    }
  }
  for (auto& bucket : local)
    for (auto& f : bucket)
      report.failures.push_back(std::move(f));
  sort_failures(report.failures, window);
  return report;
#else
  return verify_formal_cybe_serial(r, window);
#endif
}

CybeReport verify_formal_cybe(const FormalTensor& r, long window) {
#ifdef _OPENMP
  return verify_formal_cybe_parallel(r, window);
#else
  return verify_formal_cybe_serial(r, window);
#endif
}

}  // namespace rbwv
