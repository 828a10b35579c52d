#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fanozeta/form.hpp"

namespace fanozeta {

/// A form compiled for evaluation on log-domain points of a table-backed
/// field: each term costs one modular sum of logs and one Zech addition.
class LogForm {
 public:
  LogForm() = default;
  explicit LogForm(const Form& f);

  std::uint32_t eval(std::span<const std::uint32_t> point_logs) const {
    const std::uint32_t zero = field_->log_zero();
    const std::uint64_t n = field_->group_order();
    std::uint32_t sum = zero;
    for (const auto& t : terms_) {
      std::uint64_t acc = t.coeff;
      bool vanishes = false;
      for (unsigned v = 0; v < nvars_; ++v) {
        if (t.exps[v] == 0) continue;
        if (point_logs[v] == zero) {
          vanishes = true;
          break;
        }
        acc += static_cast<std::uint64_t>(t.exps[v]) * point_logs[v];
      }
      if (vanishes) continue;
      sum = field_->log_add(sum, static_cast<std::uint32_t>(acc % n));
    }
    return sum;
  }

  unsigned nvars() const { return nvars_; }

 private:
  struct Term {
    std::uint32_t coeff;
    Exponents exps;
  };
  const Field* field_ = nullptr;
  unsigned nvars_ = 0;
  std::vector<Term> terms_;
};

}  // namespace fanozeta
