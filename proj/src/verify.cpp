#include "rbwv/verify.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rbwv {

long canonical_rank(BasisSymbol s, long window) {
  auto index_rank = [](long n) { return n == 0 ? 0 : (n > 0 ? 2 * n - 1 : -2 * n); };
  long base = 0;
  switch (s.kind) {
    case SymbolKind::L: return base + index_rank(s.n);
    case SymbolKind::C: return 2 * window + 1;
    case SymbolKind::Ld: return 2 * window + 2 + index_rank(s.n);
    case SymbolKind::Cd: return 4 * window + 4;
  }
  throw DomainError("bad symbol kind");
}

namespace {

// Unordered pairs (i < j in canonical rank); the defect is antisymmetric and
// vanishes on the diagonal, so this is the full check.
std::vector<std::pair<BasisSymbol, BasisSymbol>> window_pairs(Signature sig, long window) {
  std::vector<BasisSymbol> syms = window_symbols(sig, window);
  std::vector<std::pair<BasisSymbol, BasisSymbol>> pairs;
  pairs.reserve(syms.size() * (syms.size() - 1) / 2);
  for (std::size_t i = 0; i < syms.size(); ++i)
    for (std::size_t j = i + 1; j < syms.size(); ++j)
      pairs.emplace_back(syms[i], syms[j]);
  return pairs;
}

void sort_failures(std::vector<PairFailure>& failures, long window) {
  std::sort(failures.begin(), failures.end(), [&](const PairFailure& a, const PairFailure& b) {
    long ra = canonical_rank(a.x, window), rb = canonical_rank(b.x, window);
    if (ra != rb)
      return ra < rb;
    return canonical_rank(a.y, window) < canonical_rank(b.y, window);
  });
}

}  // namespace

VerifyReport verify_rb_serial(const HomogeneousOperator& op, const Rational& weight, long window) {
  VerifyReport report{window, weight, {}};
  for (const auto& [x, y] : window_pairs(op.sig, window)) {
    Element d = rb_defect(op, weight, Element::term(x, rat(1)), Element::term(y, rat(1)));
    if (!d.is_zero())
      report.failures.push_back({x, y, std::move(d)});
  }
  sort_failures(report.failures, window);
  return report;
}

VerifyReport verify_rb_parallel(const HomogeneousOperator& op, const Rational& weight,
                                long window) {
  VerifyReport report{window, weight, {}};
  auto pairs = window_pairs(op.sig, window);
  std::vector<std::vector<PairFailure>> local;
#ifdef _OPENMP
#pragma omp parallel
  {
#pragma omp single
    local.resize(static_cast<std::size_t>(omp_get_num_threads()));
#pragma omp for schedule(dynamic, 16)
    for (long idx = 0; idx < static_cast<long>(pairs.size()); ++idx) {
      const auto& [x, y] = pairs[static_cast<std::size_t>(idx)];
      Element d = rb_defect(op, weight, Element::term(x, rat(1)), Element::term(y, rat(1)));
      if (!d.is_zero())
        local[static_cast<std::size_t>(omp_get_thread_num())].push_back({x, y, std::move(d)});
    }
  }
  for (auto& bucket : local)
    for (auto& f : bucket)
      report.failures.push_back(std::move(f));
  sort_failures(report.failures, window);
  return report;
#else
  (void)local;
  return verify_rb_serial(op, weight, window);
#endif
}

VerifyReport verify_rb(const HomogeneousOperator& op, const Rational& weight, long window) {
#ifdef _OPENMP
  return verify_rb_parallel(op, weight, window);
#else
  return verify_rb_serial(op, weight, window);
#endif
}

namespace {

Rational obstruction_value(const HomogeneousOperator& op, long m, long n) {
  // epsilon(R L_m, R L_n) = f(m+k) f(n+k) cocycle(m+k, n+k)
  long k = op.degree;
  Rational c = cocycle(m + k, n + k);
  if (c == 0)
    return c;
  return op.f.eval(m + k) * op.f.eval(n + k) * c;
}

void sort_obstruction(std::vector<ObstructionFailure>& failures, long window) {
  std::sort(failures.begin(), failures.end(),
            [&](const ObstructionFailure& a, const ObstructionFailure& b) {
              long ra = canonical_rank(L(a.m), window), rb = canonical_rank(L(b.m), window);
              if (ra != rb)
                return ra < rb;
              return canonical_rank(L(a.n), window) < canonical_rank(L(b.n), window);
            });
}

}  // namespace

ObstructionReport lifting_obstruction_serial(const HomogeneousOperator& op, long window) {
  if (op.sig != Signature::Witt)
    throw DomainError("lifting obstruction applies to Witt operators");
  ObstructionReport report{window, {}};
  for (long m : window_indices(window))
    for (long n : window_indices(window)) {
      Rational v = obstruction_value(op, m, n);
      if (v != 0)
        report.failures.push_back({m, n, std::move(v)});
    }
  sort_obstruction(report.failures, window);
  return report;
}

ObstructionReport lifting_obstruction_parallel(const HomogeneousOperator& op, long window) {
#ifdef _OPENMP
  if (op.sig != Signature::Witt)
    throw DomainError("lifting obstruction applies to Witt operators");
  ObstructionReport report{window, {}};
  auto idx = window_indices(window);
  const long count = static_cast<long>(idx.size());
  std::vector<std::vector<ObstructionFailure>> local;
#pragma omp parallel
  {
#pragma omp single
    local.resize(static_cast<std::size_t>(omp_get_num_threads()));
#pragma omp for schedule(static)
    for (long flat = 0; flat < count * count; ++flat) {
      long m = idx[static_cast<std::size_t>(flat / count)];
      long n = idx[static_cast<std::size_t>(flat % count)];
      Rational v = obstruction_value(op, m, n);
      if (v != 0)
        local[static_cast<std::size_t>(omp_get_thread_num())].push_back({m, n, std::move(v)});
    }
  }
  for (auto& bucket : local)
    for (auto& f : bucket)
      report.failures.push_back(std::move(f));
  sort_obstruction(report.failures, window);
  return report;
#else
  return lifting_obstruction_serial(op, window);
#endif
}

ObstructionReport lifting_obstruction(const HomogeneousOperator& op, long window) {
#ifdef _OPENMP
  return lifting_obstruction_parallel(op, window);
#else
  return lifting_obstruction_serial(op, window);
#endif
}

}  // namespace rbwv
