#include "fanozeta/log_form.hpp"

#include "fanozeta/errors.hpp"

namespace fanozeta {

LogForm::LogForm(const Form& f) : field_(f.field().get()), nvars_(f.nvars()) {
  if (!field_->has_tables()) throw InvariantError("log-domain evaluation needs a table-backed field");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.coeff(i).code == 0) continue;
    terms_.push_back({field_->to_log(f.coeff(i)), f.monomial(i)});
  }
}

}  // namespace fanozeta
