#include "fanozeta/cubic.hpp"

#include <algorithm>
#include <sstream>

#include "fanozeta/errors.hpp"
#include "fanozeta/log_form.hpp"
#include "fanozeta/projective.hpp"

namespace fanozeta {

CubicForm::CubicForm(Form form) : form_(std::move(form)) {
  if (form_.nvars() != 5 || form_.degree() != 3) throw InputError("a cubic form in 5 variables is required");
  if (form_.is_zero()) throw InputError("the cubic form is identically zero");
}

Line Line::through(FieldPtr field, const Point5& a, const Point5& b) {
  Matrix m{std::vector<FqElem>(a.begin(), a.end()), std::vector<FqElem>(b.begin(), b.end())};
  if (rref(*field, m).size() != 2) throw InputError("the two points do not span a line");
  std::array<Point5, 2> rows{};
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 5; ++j) rows[i][j] = m[i][j];
  return Line(std::move(field), rows);
}

Line Line::coordinate(FieldPtr field, unsigned i, unsigned j) {
  Point5 a{}, b{};
  a[i] = field->one();
  b[j] = field->one();
  return through(std::move(field), a, b);
}

std::string Line::to_string() const {
  std::ostringstream os;
  os << "[";
  for (unsigned i = 0; i < 2; ++i) {
    os << (i ? ", " : "") << "(";
    for (unsigned j = 0; j < 5; ++j) os << (j ? ":" : "") << rows_[i][j].code;
    os << ")";
  }
  os << "]";
  return os.str();
}

bool contains_line(const CubicForm& F, const Line& L) {
  // Restrict to s*u + t*v and collect the four coefficients of the binary cubic.
  const Field& K = *F.field();
  const auto& u = L.rows()[0];
  const auto& v = L.rows()[1];
  const Form& form = F.form();
  std::array<FqElem, 4> binary{};
  for (std::size_t i = 0; i < form.size(); ++i) {
    const FqElem c = form.coeff(i);
    if (c.code == 0) continue;
    std::array<FqElem, 4> prod{c, K.zero(), K.zero(), K.zero()};  // coefficient of s^(3-k) t^k
    unsigned deg = 0;
    const Exponents& e = form.monomial(i);
    for (unsigned var = 0; var < 5; ++var) {
      for (unsigned rep = 0; rep < e[var]; ++rep) {
        std::array<FqElem, 4> next{};
        for (unsigned k = 0; k <= deg + 1; ++k) next[k] = K.zero();
        for (unsigned k = 0; k <= deg; ++k) {
          next[k] = K.add(next[k], K.mul(prod[k], u[var]));
          next[k + 1] = K.add(next[k + 1], K.mul(prod[k], v[var]));
        }
        prod = next;
        ++deg;
      }
    }
    for (unsigned k = 0; k < 4; ++k) binary[k] = K.add(binary[k], prod[k]);
  }
  for (auto b : binary) {
    if (b.code != 0) return false;
  }
  return true;
}

std::uint64_t grassmannian_size(std::uint64_t q) {
  return (q * q * q * q * q - 1) * (q * q * q * q - 1) / ((q * q - 1) * (q - 1));
}

void for_each_line(const FieldPtr& field, const std::function<bool(const Line&)>& visit,
                   std::uint64_t budget) {
  const std::uint64_t q = field->order();
  if (q > 1000 || grassmannian_size(q) > budget) {
    throw ResourceError("Grassmannian enumeration exceeds the line budget");
  }
  for (unsigned i = 0; i < 5; ++i) {
    for (unsigned j = i + 1; j < 5; ++j) {
      // Free positions: row 0 after its pivot except column j, row 1 after its pivot.
      std::vector<std::pair<unsigned, unsigned>> free;
      for (unsigned k = i + 1; k < 5; ++k)
        if (k != j) free.emplace_back(0, k);
      for (unsigned k = j + 1; k < 5; ++k) free.emplace_back(1, k);
      Point5 a{}, b{};
      a[i] = field->one();
      b[j] = field->one();
      std::vector<std::uint64_t> counter(free.size(), 0);
      while (true) {
        for (std::size_t f = 0; f < free.size(); ++f) {
          auto [row, col] = free[f];
          (row == 0 ? a : b)[col] = FqElem{counter[f]};
        }
        if (!visit(Line::through(field, a, b))) return;
        std::size_t f = free.size();
        bool done = true;
        while (f-- > 0) {
          if (++counter[f] < q) {
            done = false;
            break;
          }
          counter[f] = 0;
        }
        if (done) break;
      }
    }
  }
}

std::optional<Line> find_rational_line(const CubicForm& F, std::uint64_t budget) {
  std::optional<Line> found;
  for_each_line(
      F.field(),
      [&](const Line& L) {
        if (contains_line(F, L)) {
          found = L;
          return false;
        }
        return true;
      },
      budget);
  return found;
}

Form LineFrame::reassembled() const {
  std::vector<Form> lift;
  for (unsigned v = 0; v < 3; ++v) lift.push_back(Form::variable(field, 5, v));
  const Form x4 = Form::variable(field, 5, 3);
  const Form x5 = Form::variable(field, 5, 4);
  const FqElem two = field->from_int(2);
  return l1.substitute(lift) * x4 * x4 + (l2.substitute(lift) * x4 * x5).scaled(two) +
         l3.substitute(lift) * x5 * x5 + (q1.substitute(lift) * x4).scaled(two) +
         (q2.substitute(lift) * x5).scaled(two) + f.substitute(lift);
}

LineFrame normalize(const CubicForm& F, const Line& L, BasisCompletion completion) {
  if (!contains_line(F, L)) throw InputError("the line does not lie on the cubic");
  const FieldPtr& field = F.field();
  const Field& K = *field;

  // Complete the two line vectors by coordinate vectors, kept when they raise the rank.
  std::vector<Point5> columns;
  Matrix span{std::vector<FqElem>(L.rows()[0].begin(), L.rows()[0].end()),
              std::vector<FqElem>(L.rows()[1].begin(), L.rows()[1].end())};
  for (unsigned step = 0; step < 5 && columns.size() < 3; ++step) {
    const unsigned idx = completion == BasisCompletion::leading_columns ? step : 4 - step;
    std::vector<FqElem> e(5, K.zero());
    e[idx] = K.one();
    Matrix trial = span;
    trial.push_back(e);
    if (rank(K, trial) == trial.size()) {
      span = trial;
      Point5 col{};
      col[idx] = K.one();
      columns.push_back(col);
    }
  }
  columns.push_back(L.rows()[0]);
  columns.push_back(L.rows()[1]);

  LineFrame frame{field, L, Matrix(5, std::vector<FqElem>(5)), {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  for (unsigned i = 0; i < 5; ++i)
    for (unsigned j = 0; j < 5; ++j) frame.transform[i][j] = columns[j][i];

  std::vector<Form> images;
  for (unsigned i = 0; i < 5; ++i) images.push_back(Form::linear(field, frame.transform[i]));
  frame.transformed = F.form().substitute(images);

  frame.l1 = Form(field, 3, 1);
  frame.l2 = Form(field, 3, 1);
  frame.l3 = Form(field, 3, 1);
  frame.q1 = Form(field, 3, 2);
  frame.q2 = Form(field, 3, 2);
  frame.f = Form(field, 3, 3);
  const FqElem half = K.inv(K.from_int(2));
  const Form& G = frame.transformed;
  for (std::size_t i = 0; i < G.size(); ++i) {
    const FqElem c = G.coeff(i);
    if (c.code == 0) continue;
    const Exponents& e = G.monomial(i);
    const unsigned a = e[3], b = e[4];
    Exponents rest{e[0], e[1], e[2], 0, 0};
    if (a + b == 3) throw InvariantError("transformed cubic does not vanish on the line");
    if (a == 2) frame.l1.add_to(rest, c);
    else if (a == 1 && b == 1) frame.l2.add_to(rest, K.mul(c, half));
    else if (b == 2) frame.l3.add_to(rest, c);
    else if (a == 1) frame.q1.add_to(rest, K.mul(c, half));
    else if (b == 1) frame.q2.add_to(rest, K.mul(c, half));
    else frame.f.add_to(rest, c);
  }

  frame.delta1 = frame.l3 * frame.f - frame.q2 * frame.q2;
  frame.delta2 = frame.l1 * frame.f - frame.q1 * frame.q1;
  frame.delta3 = frame.l1 * frame.l3 - frame.l2 * frame.l2;
  frame.quintic = frame.l1 * frame.delta1 - frame.l2 * (frame.l2 * frame.f - frame.q1 * frame.q2) +
                  frame.q1 * (frame.l2 * frame.q2 - frame.l3 * frame.q1);

  if (!(frame.reassembled() == frame.transformed)) {
    throw InvariantError("normalized decomposition does not reproduce the cubic");
  }
  return frame;
}

FieldPtr extension_field(const FieldPtr& base, unsigned r) {
  return make_field(base->characteristic(), base->degree() * r);
}

SmoothnessResult smoothness_heuristic(const CubicForm& F, unsigned rmax) {
  SmoothnessResult result;
  for (unsigned r = 1; r <= rmax; ++r) {
    FieldPtr ext = extension_field(F.field(), r);
    const Embedding emb(F.field(), ext);
    std::vector<Form> eqs{F.form().embedded(emb)};
    for (unsigned v = 0; v < 5; ++v) eqs.push_back(eqs[0].partial(v));
    // Partials first: they vanish less often than F on random points.
    std::rotate(eqs.begin(), eqs.begin() + 1, eqs.end());
    const std::uint64_t npoints = projective_size(ext->order(), 4);
    if (npoints > (std::uint64_t{1} << 33)) throw ResourceError("P^4 enumeration too large");

    bool found = false;
    if (ext->has_tables()) {
      std::vector<LogForm> compiled(eqs.begin(), eqs.end());
      for_each_projective_log(*ext, 4, [&](std::span<const std::uint32_t> pt) {
        if (found) return;
        for (const auto& g : compiled)
          if (g.eval(pt) != ext->log_zero()) return;
        found = true;
        result.witness.clear();
        for (auto k : pt) result.witness.push_back(ext->from_log(k));
      });
    } else {
      ProjectivePoints(ext, 4).for_each([&](std::span<const FqElem> pt) {
        if (found) return;
        for (const auto& g : eqs)
          if (g.eval(pt).code != 0) return;
        found = true;
        result.witness.assign(pt.begin(), pt.end());
      });
    }
    if (found) {
      result.singular_point_found = true;
      result.degree = r;
      result.witness_field = ext;
      return result;
    }
  }
  return result;
}

PlanePoints quintic_singular_points(const LineFrame& frame, unsigned r) {
  PlanePoints out{extension_field(frame.field, r), {}};
  const Embedding emb(frame.field, out.field);
  const std::array<Form, 4> eqs{frame.quintic.embedded(emb), frame.delta3.embedded(emb),
                                frame.delta1.embedded(emb), frame.delta2.embedded(emb)};
  ProjectivePoints(out.field, 2).for_each([&](std::span<const FqElem> pt) {
    for (const auto& g : eqs)
      if (g.eval(pt).code != 0) return;
    out.points.push_back({pt[0], pt[1], pt[2]});
  });
  return out;
}

}  // namespace fanozeta
