#include "fanozeta/form.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "fanozeta/errors.hpp"

namespace fanozeta {

namespace {

struct MonomialTable {
  std::vector<Exponents> list;
  std::map<Exponents, std::size_t> index;
};

void generate(unsigned nvars, unsigned var, unsigned remaining, Exponents& cur,
              std::vector<Exponents>& out) {
  if (var + 1 == nvars) {
    cur[var] = static_cast<std::uint8_t>(remaining);
    out.push_back(cur);
    cur[var] = 0;
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    cur[var] = static_cast<std::uint8_t>(e);
    generate(nvars, var + 1, remaining - e, cur, out);
  }
  cur[var] = 0;
}

const MonomialTable& table(unsigned nvars, unsigned degree) {
  static std::mutex mutex;
  static std::map<std::pair<unsigned, unsigned>, MonomialTable> tables;
  if (nvars < 1 || nvars > kMaxVars) throw InputError("unsupported number of variables");
  std::lock_guard lock(mutex);
  auto [it, inserted] = tables.try_emplace({nvars, degree});
  if (inserted) {
    Exponents cur{};
    generate(nvars, 0, degree, cur, it->second.list);
    for (std::size_t i = 0; i < it->second.list.size(); ++i) it->second.index[it->second.list[i]] = i;
  }
  return it->second;
}

}  // namespace

const std::vector<Exponents>& monomials(unsigned nvars, unsigned degree) {
  return table(nvars, degree).list;
}

std::size_t monomial_index(unsigned nvars, unsigned degree, const Exponents& e) {
  const auto& t = table(nvars, degree);
  auto it = t.index.find(e);
  if (it == t.index.end()) throw InputError("monomial does not belong to this form space");
  return it->second;
}

Form::Form(FieldPtr field, unsigned nvars, unsigned degree)
    : field_(std::move(field)), nvars_(nvars), degree_(degree) {
  coeffs_.assign(monomials(nvars, degree).size(), FqElem{0});
}

Form Form::variable(FieldPtr field, unsigned nvars, unsigned index) {
  Form f(field, nvars, 1);
  Exponents e{};
  e[index] = 1;
  f.set(e, field->one());
  return f;
}

Form Form::constant(FieldPtr field, unsigned nvars, FqElem c) {
  Form f(field, nvars, 0);
  f.coeffs_[0] = c;
  return f;
}

Form Form::linear(FieldPtr field, std::span<const FqElem> coeffs) {
  const auto n = static_cast<unsigned>(coeffs.size());
  Form f(field, n, 1);
  for (unsigned i = 0; i < n; ++i) {
    Exponents e{};
    e[i] = 1;
    f.set(e, coeffs[i]);
  }
  return f;
}

FqElem Form::coeff(const Exponents& e) const { return coeffs_[monomial_index(nvars_, degree_, e)]; }

void Form::set(const Exponents& e, FqElem c) { coeffs_[monomial_index(nvars_, degree_, e)] = c; }

void Form::add_to(const Exponents& e, FqElem c) {
  auto& slot = coeffs_[monomial_index(nvars_, degree_, e)];
  slot = field_->add(slot, c);
}

bool Form::is_zero() const {
  for (auto c : coeffs_) {
    if (c.code != 0) return false;
  }
  return true;
}

void Form::check_compatible(const Form& o) const {
  if (nvars_ != o.nvars_ || field_ != o.field_) throw InvariantError("incompatible forms");
}

Form Form::operator+(const Form& o) const {
  check_compatible(o);
  if (degree_ != o.degree_) throw InvariantError("adding forms of different degree");
  Form out = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = field_->add(coeffs_[i], o.coeffs_[i]);
  return out;
}

Form Form::operator-(const Form& o) const {
  check_compatible(o);
  if (degree_ != o.degree_) throw InvariantError("subtracting forms of different degree");
  Form out = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = field_->sub(coeffs_[i], o.coeffs_[i]);
  return out;
}

Form Form::operator*(const Form& o) const {
  check_compatible(o);
  Form out(field_, nvars_, degree_ + o.degree_);
  const auto& ma = monomials(nvars_, degree_);
  const auto& mb = monomials(nvars_, o.degree_);
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (coeffs_[i].code == 0) continue;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      if (o.coeffs_[j].code == 0) continue;
      Exponents e{};
      for (unsigned v = 0; v < nvars_; ++v) e[v] = static_cast<std::uint8_t>(ma[i][v] + mb[j][v]);
      out.add_to(e, field_->mul(coeffs_[i], o.coeffs_[j]));
    }
  }
  return out;
}

Form Form::scaled(FqElem c) const {
  Form out = *this;
  for (auto& v : out.coeffs_) v = field_->mul(v, c);
  return out;
}

FqElem Form::eval(std::span<const FqElem> point) const {
  if (point.size() != nvars_) throw InvariantError("point dimension mismatch");
  const Field& F = *field_;
  const auto& ms = monomials(nvars_, degree_);
  std::vector<std::vector<FqElem>> pw(nvars_);
  for (unsigned v = 0; v < nvars_; ++v) {
    pw[v].push_back(F.one());
    for (unsigned k = 1; k <= degree_; ++k) pw[v].push_back(F.mul(pw[v].back(), point[v]));
  }
  FqElem acc = F.zero();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (coeffs_[i].code == 0) continue;
    FqElem t = coeffs_[i];
    for (unsigned v = 0; v < nvars_; ++v) t = F.mul(t, pw[v][ms[i][v]]);
    acc = F.add(acc, t);
  }
  return acc;
}

Form Form::substitute(std::span<const Form> images) const {
  if (images.size() != nvars_) throw InvariantError("substitution arity mismatch");
  const unsigned m = images[0].nvars();
  for (const auto& img : images) {
    if (img.degree() != 1 || img.nvars() != m) throw InvariantError("substitution needs linear forms");
  }
  std::vector<std::vector<Form>> pw(nvars_);
  for (unsigned v = 0; v < nvars_; ++v) {
    pw[v].push_back(constant(field_, m, field_->one()));
    for (unsigned k = 1; k <= degree_; ++k) pw[v].push_back(pw[v].back() * images[v]);
  }
  Form out(field_, m, degree_);
  const auto& ms = monomials(nvars_, degree_);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (coeffs_[i].code == 0) continue;
    Form t = constant(field_, m, coeffs_[i]);
    for (unsigned v = 0; v < nvars_; ++v) {
      if (ms[i][v]) t = t * pw[v][ms[i][v]];
    }
    out = out + t;
  }
  return out;
}

Form Form::partial(unsigned var) const {
  if (degree_ == 0) return Form(field_, nvars_, 0);
  Form out(field_, nvars_, degree_ - 1);
  const auto& ms = monomials(nvars_, degree_);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (coeffs_[i].code == 0 || ms[i][var] == 0) continue;
    Exponents e = ms[i];
    FqElem k = field_->from_int(e[var]);
    e[var] -= 1;
    out.add_to(e, field_->mul(k, coeffs_[i]));
  }
  return out;
}

Form Form::embedded(const Embedding& e) const {
  if (e.source() != field_) throw InvariantError("embedding source mismatch");
  Form out(e.target(), nvars_, degree_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = e(coeffs_[i]);
  return out;
}

std::string Form::to_string() const {
  std::ostringstream os;
  const auto& ms = monomials(nvars_, degree_);
  bool first = true;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (coeffs_[i].code == 0) continue;
    if (!first) os << " + ";
    first = false;
    bool unit = coeffs_[i] == field_->one();
    if (!unit || degree_ == 0) {
      if (field_->degree() == 1) {
        os << coeffs_[i].code;
      } else {
        os << "[";
        auto c = field_->coeffs(coeffs_[i]);
        for (std::size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << c[k];
        os << "]";
      }
    }
    bool need_star = !unit;
    for (unsigned v = 0; v < nvars_; ++v) {
      if (ms[i][v] == 0) continue;
      if (need_star) os << "*";
      os << "x" << (v + 1);
      if (ms[i][v] > 1) os << "^" << static_cast<int>(ms[i][v]);
      need_star = true;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace fanozeta
