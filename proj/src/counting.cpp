#include "fanozeta/counting.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "fanozeta/log_form.hpp"

namespace fanozeta {

namespace {

struct Tally {
  std::int64_t split = 0;
  std::int64_t nonsplit = 0;
  std::int64_t singular = 0;
  std::int64_t coherence = 0;

  Tally& operator+=(const Tally& o) {
    split += o.split;
    nonsplit += o.nonsplit;
    singular += o.singular;
    coherence += o.coherence;
    return *this;
  }
};

// Walks the delta tests in the order delta3, delta1, delta2 at a point of the
// quintic. `neg_class(k)` gives the square class of -delta_k there.
template <class NegClass>
void classify(NegClass&& neg_class, Tally& t) {
  const SquareClass c3 = neg_class(3);
  if (c3 == SquareClass::square) {
    ++t.split;
    return;
  }
  if (c3 == SquareClass::nonsquare) {
    ++t.nonsplit;
    return;
  }
  const SquareClass c1 = neg_class(1);
  const SquareClass c2 = neg_class(2);
  if (c1 != SquareClass::zero && c2 != SquareClass::zero) {
    if (c1 != c2) throw InvariantError("delta coherence violated: -delta1 and -delta2 differ in square class");
    ++t.coherence;
  }
  for (SquareClass c : {c1, c2}) {
    if (c == SquareClass::square) {
      ++t.split;
      return;
    }
    if (c == SquareClass::nonsquare) {
      ++t.nonsplit;
      return;
    }
  }
  ++t.singular;
}

// Coefficients of det M restricted to the rows x = (1, y, z) and (0, 1, z),
// as polynomials of degree <= 5 in z, are assembled from quintic[b][c], the
// coefficient of x1^(5-b-c) x2^b x3^c.
template <class T>
using QuinticGrid = std::array<std::array<T, 6>, 6>;

// Table-backed arithmetic in the log domain.
class LogKernel {
 public:
  LogKernel(const Form& quintic, const Form& d1, const Form& d2, const Form& d3)
      : K_(*quintic.field()), Z_(K_.log_zero()), d1_(d1), d2_(d2), d3_(d3) {
    for (auto& row : grid_) row.fill(Z_);
    for (std::size_t i = 0; i < quintic.size(); ++i) {
      const Exponents& e = quintic.monomial(i);
      grid_[e[1]][e[2]] = K_.to_log(quintic.coeff(i));
    }
  }

  Tally run(std::uint64_t begin, std::uint64_t end) const {
    const std::uint64_t Q = K_.order();
    Tally t;
    std::uint64_t i = begin;
    while (i < end) {
      if (i < Q * Q) {
        const std::uint64_t yi = i / Q;
        const std::uint64_t stop = std::min(end, (yi + 1) * Q);
        const std::uint32_t y = to_log_index(yi);
        std::array<std::uint32_t, 6> c;
        for (unsigned k = 0; k <= 5; ++k) {
          std::uint32_t acc = Z_;
          for (unsigned b = 0; b + k <= 5; ++b) acc = K_.log_add(acc, K_.log_mul(grid_[b][k], K_.log_pow(y, b)));
          c[k] = acc;
        }
        sweep(c, 0, y, i - yi * Q, stop - yi * Q, t);
        i = stop;
      } else if (i < Q * Q + Q) {
        const std::uint64_t stop = std::min(end, Q * Q + Q);
        std::array<std::uint32_t, 6> c;
        for (unsigned k = 0; k <= 5; ++k) c[k] = grid_[5 - k][k];
        sweep(c, Z_, 0, i - Q * Q, stop - Q * Q, t);
        i = stop;
      } else {
        if (grid_[0][5] == Z_) visit(Z_, Z_, 0, t);
        ++i;
      }
    }
    return t;
  }

 private:
  std::uint32_t to_log_index(std::uint64_t idx) const {
    return idx == 0 ? Z_ : static_cast<std::uint32_t>(idx - 1);
  }

  // Evaluates c(z) for the element indices [zbegin, zend) of z.
  void sweep(const std::array<std::uint32_t, 6>& c, std::uint32_t x1, std::uint32_t x2,
             std::uint64_t zbegin, std::uint64_t zend, Tally& t) const {
    if (zbegin == 0) {
      if (c[0] == Z_) visit(x1, x2, Z_, t);
      ++zbegin;
    }
    const Field& K = K_;
    for (std::uint64_t zi = zbegin; zi < zend; ++zi) {
      const auto z = static_cast<std::uint32_t>(zi - 1);
      std::uint32_t v = c[5];
      v = K.log_add(K.log_mul(v, z), c[4]);
      v = K.log_add(K.log_mul(v, z), c[3]);
      v = K.log_add(K.log_mul(v, z), c[2]);
      v = K.log_add(K.log_mul(v, z), c[1]);
      v = K.log_add(K.log_mul(v, z), c[0]);
      if (v == Z_) visit(x1, x2, z, t);
    }
  }

  void visit(std::uint32_t x1, std::uint32_t x2, std::uint32_t x3, Tally& t) const {
    const std::array<std::uint32_t, 3> pt{x1, x2, x3};
    classify(
        [&](int k) {
          const LogForm& d = k == 3 ? d3_ : (k == 1 ? d1_ : d2_);
          return K_.log_square_class(K_.log_neg(d.eval(pt)));
        },
        t);
  }

  const Field& K_;
  std::uint32_t Z_;
  QuinticGrid<std::uint32_t> grid_;
  LogForm d1_, d2_, d3_;
};

// Fallback for fields too large for tables: plain element arithmetic.
class PlainKernel {
 public:
  PlainKernel(const Form& quintic, const Form& d1, const Form& d2, const Form& d3)
      : K_(*quintic.field()), d1_(d1), d2_(d2), d3_(d3) {
    for (auto& row : grid_) row.fill(FqElem{0});
    for (std::size_t i = 0; i < quintic.size(); ++i) {
      const Exponents& e = quintic.monomial(i);
      grid_[e[1]][e[2]] = quintic.coeff(i);
    }
  }

  Tally run(std::uint64_t begin, std::uint64_t end) const {
    const std::uint64_t Q = K_.order();
    Tally t;
    for (std::uint64_t i = begin; i < end;) {
      if (i < Q * Q) {
        const std::uint64_t yi = i / Q;
        const std::uint64_t stop = std::min(end, (yi + 1) * Q);
        const FqElem y{yi};
        std::array<FqElem, 6> c;
        for (unsigned k = 0; k <= 5; ++k) {
          FqElem acc{0};
          for (unsigned b = 0; b + k <= 5; ++b) acc = K_.add(acc, K_.mul(grid_[b][k], K_.pow(y, b)));
          c[k] = acc;
        }
        sweep(c, K_.one(), y, i - yi * Q, stop - yi * Q, t);
        i = stop;
      } else if (i < Q * Q + Q) {
        const std::uint64_t stop = std::min(end, Q * Q + Q);
        std::array<FqElem, 6> c;
        for (unsigned k = 0; k <= 5; ++k) c[k] = grid_[5 - k][k];
        sweep(c, K_.zero(), K_.one(), i - Q * Q, stop - Q * Q, t);
        i = stop;
      } else {
        if (grid_[0][5].code == 0) visit(K_.zero(), K_.zero(), K_.one(), t);
        ++i;
      }
    }
    return t;
  }

 private:
  void sweep(const std::array<FqElem, 6>& c, FqElem x1, FqElem x2, std::uint64_t zbegin,
             std::uint64_t zend, Tally& t) const {
    for (std::uint64_t zi = zbegin; zi < zend; ++zi) {
      const FqElem z{zi};
      FqElem v = c[5];
      for (unsigned k = 5; k-- > 0;) v = K_.add(K_.mul(v, z), c[k]);
      if (v.code == 0) visit(x1, x2, z, t);
    }
  }

  void visit(FqElem x1, FqElem x2, FqElem x3, Tally& t) const {
    const std::array<FqElem, 3> pt{x1, x2, x3};
    classify(
        [&](int k) {
          const Form& d = k == 3 ? d3_ : (k == 1 ? d1_ : d2_);
          return K_.square_class(K_.neg(d.eval(pt)));
        },
        t);
  }

  const Field& K_;
  QuinticGrid<FqElem> grid_;
  Form d1_, d2_, d3_;
};

template <class Kernel>
Tally run_chunks(const Kernel& kernel, unsigned r, std::uint64_t total, const CountOptions& options) {
  const std::uint64_t chunk = std::max<std::uint64_t>(1, options.chunk_size);
  const std::uint64_t nchunks = (total + chunk - 1) / chunk;
  std::vector<Tally> partial(nchunks);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> done{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mutex;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= nchunks) break;
      const std::uint64_t begin = c * chunk;
      const std::uint64_t end = std::min(total, begin + chunk);
      try {
        partial[c] = kernel.run(begin, end);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
        failed = true;
        break;
      }
      const std::uint64_t now = done.fetch_add(end - begin) + (end - begin);
      if (options.progress) {
        std::lock_guard lock(mutex);
        options.progress(r, now, total);
      }
    }
  };

  const unsigned nthreads = std::max(1u, options.threads);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < nthreads; ++k) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  Tally sum;
  for (const auto& t : partial) sum += t;
  return sum;
}

}  // namespace

const CountRow* CountReport::row(unsigned r) const {
  for (const auto& row : rows)
    if (row.r == r) return &row;
  return nullptr;
}

unsigned CountReport::complete_through() const {
  unsigned r = 0;
  while (row(r + 1)) ++r;
  return r;
}

bool CountReport::same_counts(const CountReport& o) const {
  if (rows.size() != o.rows.size()) return false;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!rows[i].same_counts(o.rows[i])) return false;
  return true;
}

ProjectivePoints enumerate_p2(FieldPtr field) { return ProjectivePoints(std::move(field), 2); }

CountRow count_difference(const LineFrame& frame, unsigned r, const CountOptions& options) {
  if (r < 1) throw InputError("extension degree must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const FieldPtr ext = extension_field(frame.field, r);
  const std::uint64_t total = projective_size(ext->order(), 2);
  if (total > options.max_points) {
    throw ResourceError("P^2(F_{q^" + std::to_string(r) + "}) has " + std::to_string(total) +
                        " points, above the configured budget");
  }

  // Coefficients are embedded once per extension, never per point.
  const Embedding emb(frame.field, ext);
  const Form quintic = frame.quintic.embedded(emb);
  const Form d1 = frame.delta1.embedded(emb);
  const Form d2 = frame.delta2.embedded(emb);
  const Form d3 = frame.delta3.embedded(emb);

  const bool logs = ext->has_tables() && !options.force_plain;
  Tally t = logs ? run_chunks(LogKernel(quintic, d1, d2, d3), r, total, options)
                 : run_chunks(PlainKernel(quintic, d1, d2, d3), r, total, options);

  CountRow row;
  row.r = r;
  row.split = t.split;
  row.nonsplit = t.nonsplit;
  row.singular = t.singular;
  row.coherence_checks = t.coherence;
  row.gamma_points = t.split + t.nonsplit + t.singular;
  row.difference = t.split - t.nonsplit;
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

CountReport count_all(const LineFrame& frame, unsigned rmax, const CountOptions& options,
                      CountReport resume, const std::function<void(const CountReport&)>& on_row) {
  CountReport report = std::move(resume);
  std::erase_if(report.rows, [&](const CountRow& row) { return row.r > rmax; });
  for (unsigned r = 1; r <= rmax; ++r) {
    if (report.row(r)) continue;
    try {
      report.rows.push_back(count_difference(frame, r, options));
    } catch (const CountInterrupted&) {
      throw;
    } catch (const ResourceError& e) {
      throw CountInterrupted(e.what(), report);
    }
    std::sort(report.rows.begin(), report.rows.end(),
              [](const CountRow& a, const CountRow& b) { return a.r < b.r; });
    if (on_row) on_row(report);
  }
  return report;
}

}  // namespace fanozeta
