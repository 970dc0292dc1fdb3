#include "bkv/qseries.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "bkv/errors.hpp"

namespace bkv {

namespace detail {

namespace {
std::atomic<int> g_override{0};

int env_budget() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  int budget = std::min(hw, 16);
  if (const char* s = std::getenv("BKV_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && v >= 1) budget = static_cast<int>(std::min<long>(v, 64));
  }
  return budget;
}
}  // namespace

int thread_budget() {
  int o = g_override.load(std::memory_order_relaxed);
  if (o > 0) return o;
  static const int cached = env_budget();
  return cached;
}

void override_thread_budget(int n) {
  g_override.store(n, std::memory_order_relaxed);
}

}  // namespace detail

namespace {

using int128 = __int128;
using uint128 = unsigned __int128;

// Runs fn(lo, hi) over a partition of [0, n) into contiguous blocks, one per
// worker. Each output index is owned by exactly one worker, so results are
// identical for any worker count.
template <class Fn>
void parallel_blocks(long long n, const Fn& fn) {
  int workers = detail::thread_budget();
  if (workers <= 1 || n < 8192) {
    fn(0, n);
    return;
  }
  workers = static_cast<int>(std::min<long long>(workers, (n + 4095) / 4096));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  long long chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    long long lo = w * chunk;
    long long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

int128 to_i128(const mpz_class& z) {
  const auto* p = z.get_mpz_t();
  size_t limbs = mpz_size(p);
  uint128 u = 0;
  if (limbs > 0) u = mpz_getlimbn(p, 0);
  if (limbs > 1) u |= static_cast<uint128>(mpz_getlimbn(p, 1)) << 64;
  return mpz_sgn(p) < 0 ? -static_cast<int128>(u) : static_cast<int128>(u);
}

void from_i128(mpz_class& out, int128 v) {
  bool neg = v < 0;
  uint128 u = neg ? -static_cast<uint128>(v) : static_cast<uint128>(v);
  unsigned long hi = static_cast<unsigned long>(u >> 64);
  unsigned long lo = static_cast<unsigned long>(u);
  if (hi == 0) {
    out = lo;
  } else {
    out = hi;
    out <<= 64;
    mpz_add_ui(out.get_mpz_t(), out.get_mpz_t(), lo);
  }
  if (neg) mpz_neg(out.get_mpz_t(), out.get_mpz_t());
}

struct Profile {
  long long nonzero = 0;
  size_t max_bits = 0;
};

Profile profile_upto(const QExpansion& a, long long n) {
  Profile p;
  const auto& c = a.coeffs();
  for (long long i = 0; i < n; ++i) {
    if (mpz_sgn(c[i].get_mpz_t()) == 0) continue;
    ++p.nonzero;
    p.max_bits = std::max(p.max_bits, mpz_sizeinbase(c[i].get_mpz_t(), 2));
  }
  return p;
}

size_t bit_length(long long v) {
  size_t b = 0;
  while (v > 0) {
    ++b;
    v >>= 1;
  }
  return b;
}

std::vector<int128> to_i128_vec(const std::vector<mpz_class>& v, long long n) {
  std::vector<int128> out(static_cast<size_t>(n));
  for (long long i = 0; i < n; ++i) out[i] = to_i128(v[i]);
  return out;
}

std::vector<mpz_class> dense_mul_i128(const std::vector<mpz_class>& a,
                                      const std::vector<mpz_class>& b,
                                      long long out_prec) {
  long long pa = std::min<long long>(a.size(), out_prec);
  long long pb = std::min<long long>(b.size(), out_prec);
  auto va = to_i128_vec(a, pa);
  auto vb = to_i128_vec(b, pb);
  std::vector<mpz_class> out(static_cast<size_t>(out_prec));
  parallel_blocks(out_prec, [&](long long lo, long long hi) {
    for (long long n = lo; n < hi; ++n) {
      int128 acc = 0;
      long long i0 = std::max<long long>(0, n - (pb - 1));
      long long i1 = std::min<long long>(n, pa - 1);
      for (long long i = i0; i <= i1; ++i) acc += va[i] * vb[n - i];
      if (acc != 0) from_i128(out[n], acc);
    }
  });
  return out;
}

std::vector<mpz_class> dense_mul_mpz(const std::vector<mpz_class>& a,
                                     const std::vector<mpz_class>& b,
                                     long long out_prec) {
  long long pa = std::min<long long>(a.size(), out_prec);
  long long pb = std::min<long long>(b.size(), out_prec);
  std::vector<mpz_class> out(static_cast<size_t>(out_prec));
  parallel_blocks(out_prec, [&](long long lo, long long hi) {
    for (long long n = lo; n < hi; ++n) {
      mpz_class& acc = out[n];
      long long i0 = std::max<long long>(0, n - (pb - 1));
      long long i1 = std::min<long long>(n, pa - 1);
      for (long long i = i0; i <= i1; ++i) {
        if (mpz_sgn(a[i].get_mpz_t()) == 0 ||
            mpz_sgn(b[n - i].get_mpz_t()) == 0)
          continue;
        mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[n - i].get_mpz_t());
      }
    }
  });
  return out;
}

struct TermI128 {
  long long idx;
  int128 c;
};

std::vector<mpz_class> sparse_mul_i128(const std::vector<mpz_class>& dense,
                                       const std::vector<mpz_class>& sparse,
                                       long long out_prec) {
  long long pd = std::min<long long>(dense.size(), out_prec);
  std::vector<TermI128> terms;
  for (long long j = 0; j < std::min<long long>(sparse.size(), out_prec); ++j)
    if (mpz_sgn(sparse[j].get_mpz_t()) != 0)
      terms.push_back({j, to_i128(sparse[j])});
  auto vd = to_i128_vec(dense, pd);
  std::vector<int128> acc(static_cast<size_t>(out_prec), 0);
  parallel_blocks(out_prec, [&](long long lo, long long hi) {
    for (const auto& t : terms) {
      long long i0 = std::max<long long>(0, lo - t.idx);
      long long i1 = std::min<long long>(pd, hi - t.idx);
      for (long long i = i0; i < i1; ++i) acc[i + t.idx] += vd[i] * t.c;
    }
  });
  std::vector<mpz_class> out(static_cast<size_t>(out_prec));
  for (long long n = 0; n < out_prec; ++n)
    if (acc[n] != 0) from_i128(out[n], acc[n]);
  return out;
}

std::vector<mpz_class> sparse_mul_mpz(const std::vector<mpz_class>& dense,
                                      const std::vector<mpz_class>& sparse,
                                      long long out_prec) {
  long long pd = std::min<long long>(dense.size(), out_prec);
  std::vector<long long> term_idx;
  for (long long j = 0; j < std::min<long long>(sparse.size(), out_prec); ++j)
    if (mpz_sgn(sparse[j].get_mpz_t()) != 0) term_idx.push_back(j);
  std::vector<mpz_class> out(static_cast<size_t>(out_prec));
  parallel_blocks(out_prec, [&](long long lo, long long hi) {
    for (long long j : term_idx) {
      const mpz_class& c = sparse[j];
      long long i0 = std::max<long long>(0, lo - j);
      long long i1 = std::min<long long>(pd, hi - j);
      for (long long i = i0; i < i1; ++i) {
        if (mpz_sgn(dense[i].get_mpz_t()) == 0) continue;
        mpz_addmul(out[i + j].get_mpz_t(), dense[i].get_mpz_t(),
                   c.get_mpz_t());
      }
    }
  });
  return out;
}

long long isqrt_ll(long long n) {
  if (n < 0) return 0;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

QExpansion QExpansion::zero(long long prec) {
  if (prec < 0) throw InvalidArgument("QExpansion::zero: negative precision");
  return QExpansion(std::vector<mpz_class>(static_cast<size_t>(prec)));
}

QExpansion QExpansion::one(long long prec) {
  if (prec < 1) throw InvalidArgument("QExpansion::one: precision must be >= 1");
  std::vector<mpz_class> c(static_cast<size_t>(prec));
  c[0] = 1;
  return QExpansion(std::move(c));
}

const mpz_class& QExpansion::coefficient(long long n) const {
  if (n < 0) throw InvalidArgument("coefficient: negative index");
  if (n >= prec())
    throw PrecisionExceeded("coefficient: index " + std::to_string(n) +
                            " >= precision " + std::to_string(prec()));
  return coeffs_[static_cast<size_t>(n)];
}

long long QExpansion::nonzero_terms() const {
  long long k = 0;
  for (const auto& c : coeffs_)
    if (mpz_sgn(c.get_mpz_t()) != 0) ++k;
  return k;
}

QExpansion add(const QExpansion& a, const QExpansion& b) {
  long long p = std::min(a.prec(), b.prec());
  std::vector<mpz_class> out(static_cast<size_t>(p));
  for (long long n = 0; n < p; ++n) out[n] = a.coeffs()[n] + b.coeffs()[n];
  return QExpansion(std::move(out));
}

QExpansion sub(const QExpansion& a, const QExpansion& b) {
  long long p = std::min(a.prec(), b.prec());
  std::vector<mpz_class> out(static_cast<size_t>(p));
  for (long long n = 0; n < p; ++n) out[n] = a.coeffs()[n] - b.coeffs()[n];
  return QExpansion(std::move(out));
}

QExpansion mul(const QExpansion& a, const QExpansion& b) {
  long long p = std::min(a.prec(), b.prec());
  if (p <= 0) return QExpansion::zero(p);
  Profile pa = profile_upto(a, p);
  Profile pb = profile_upto(b, p);
  if (pa.nonzero == 0 || pb.nonzero == 0) return QExpansion::zero(p);

  // Fixed-width fast path only when the accumulated sums provably fit in
  // a signed 128-bit value; otherwise the exact mpz kernel.
  long long acc_terms = std::min({pa.nonzero, pb.nonzero, p});
  bool fits128 =
      pa.max_bits + pb.max_bits + bit_length(acc_terms) + 1 <= 126;

  long long nnz_min = std::min(pa.nonzero, pb.nonzero);
  bool use_sparse =
      nnz_min <= std::max<long long>(p / 4, 2 * isqrt_ll(p) + 1);
  const QExpansion& sparse = pa.nonzero <= pb.nonzero ? a : b;
  const QExpansion& dense = pa.nonzero <= pb.nonzero ? b : a;

  std::vector<mpz_class> out;
  if (use_sparse)
    out = fits128 ? sparse_mul_i128(dense.coeffs(), sparse.coeffs(), p)
                  : sparse_mul_mpz(dense.coeffs(), sparse.coeffs(), p);
  else
    out = fits128 ? dense_mul_i128(a.coeffs(), b.coeffs(), p)
                  : dense_mul_mpz(a.coeffs(), b.coeffs(), p);
  return QExpansion(std::move(out));
}

QExpansion pow(const QExpansion& base, long long e) {
  if (e < 1) throw InvalidArgument("pow: exponent must be >= 1");
  if (e == 1) return base;
  long long p = base.prec();
  bool sparse_base = base.nonzero_terms() <= 2 * isqrt_ll(p);
  if (sparse_base) {
    QExpansion r = base;
    for (long long i = 1; i < e; ++i) r = mul(r, base);
    return r;
  }
  // binary powering for dense bases
  QExpansion r = base;
  long long msb = 63;
  while (msb > 0 && !((e >> msb) & 1)) --msb;
  for (long long bit = msb - 1; bit >= 0; --bit) {
    r = mul(r, r);
    if ((e >> bit) & 1) r = mul(r, base);
  }
  return r;
}

QExpansion shift(const QExpansion& a, long long m) {
  if (m < 0) throw InvalidArgument("shift: negative shift");
  std::vector<mpz_class> out(static_cast<size_t>(a.prec() + m));
  for (long long n = 0; n < a.prec(); ++n) out[n + m] = a.coeffs()[n];
  return QExpansion(std::move(out));
}

QExpansion truncate(const QExpansion& a, long long new_prec) {
  if (new_prec < 0) throw InvalidArgument("truncate: negative precision");
  if (new_prec > a.prec())
    throw PrecisionExceeded("truncate: cannot extend precision " +
                            std::to_string(a.prec()) + " to " +
                            std::to_string(new_prec));
  std::vector<mpz_class> out(a.coeffs().begin(),
                             a.coeffs().begin() + new_prec);
  return QExpansion(std::move(out));
}

QExpansion scale(const QExpansion& a, const mpz_class& c) {
  std::vector<mpz_class> out(static_cast<size_t>(a.prec()));
  for (long long n = 0; n < a.prec(); ++n) out[n] = a.coeffs()[n] * c;
  return QExpansion(std::move(out));
}

QExpansion euler_product(long long prec) {
  if (prec < 1) throw InvalidArgument("euler_product: precision must be >= 1");
  std::vector<mpz_class> c(static_cast<size_t>(prec));
  c[0] = 1;
  for (long long m = 1;; ++m) {
    long long g1 = m * (3 * m - 1) / 2;
    long long g2 = m * (3 * m + 1) / 2;
    if (g1 >= prec) break;
    int v = (m % 2) ? -1 : 1;
    c[g1] = v;
    if (g2 < prec) c[g2] = v;
  }
  return QExpansion(std::move(c));
}

QExpansion theta_series(long long prec) {
  if (prec < 1) throw InvalidArgument("theta_series: precision must be >= 1");
  std::vector<mpz_class> c(static_cast<size_t>(prec));
  c[0] = 1;
  for (long long n = 1; n * n < prec; ++n) c[n * n] = 2;
  return QExpansion(std::move(c));
}

QExpansion odd_sigma_series(long long prec) {
  if (prec < 1)
    throw InvalidArgument("odd_sigma_series: precision must be >= 1");
  std::vector<long long> sigma(static_cast<size_t>(prec), 0);
  for (long long d = 1; d < prec; d += 2)
    for (long long n = d; n < prec; n += 2 * d) sigma[n] += d;
  std::vector<mpz_class> c(static_cast<size_t>(prec));
  for (long long n = 1; n < prec; n += 2) c[n] = static_cast<long>(sigma[n]);
  return QExpansion(std::move(c));
}

QExpansion eta_cube(long long prec) {
  if (prec < 1) throw InvalidArgument("eta_cube: precision must be >= 1");
  std::vector<mpz_class> c(static_cast<size_t>(prec));
  for (long long m = 0;; ++m) {
    long long idx = m * (m + 1) / 2;
    if (idx >= prec) break;
    c[idx] = static_cast<long>((m % 2) ? -(2 * m + 1) : (2 * m + 1));
  }
  return QExpansion(std::move(c));
}

}  // namespace bkv
