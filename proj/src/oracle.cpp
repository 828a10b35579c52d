#include "fanozeta/oracle.hpp"

#include "fanozeta/errors.hpp"
#include "fanozeta/log_form.hpp"
#include "fanozeta/projective.hpp"

namespace fanozeta {

std::uint64_t count_hypersurface_p4(const CubicForm& F, unsigned r, std::uint64_t budget) {
  if (r == 0) throw InputError("extension degree must be positive");
  FieldPtr ext = extension_field(F.field(), r);
  if (projective_size(ext->order(), 4) > budget) {
    throw ResourceError("P^4 enumeration over F_" + std::to_string(ext->order()) +
                        " exceeds the oracle budget");
  }
  const Form form = F.form().embedded(Embedding(F.field(), ext));
  std::uint64_t count = 0;
  if (ext->has_tables()) {
    const LogForm lf(form);
    const std::uint32_t zero = ext->log_zero();
    for_each_projective_log(*ext, 4, [&](std::span<const std::uint32_t> pt) {
      if (lf.eval(pt) == zero) ++count;
    });
  } else {
    ProjectivePoints(ext, 4).for_each([&](std::span<const FqElem> pt) {
      if (form.eval(pt).code == 0) ++count;
    });
  }
  return count;
}

bool contains_line_by_points(const CubicForm& F, const Line& L) {
  const Field& K = *F.field();
  const auto& u = L.rows()[0];
  const auto& v = L.rows()[1];
  // (1:0), (0:1), (1:1), (1:2) are distinct since the characteristic is odd.
  const std::int64_t params[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, 2}};
  for (const auto& st : params) {
    const FqElem s = K.from_int(st[0]);
    const FqElem t = K.from_int(st[1]);
    std::array<FqElem, 5> pt{};
    for (unsigned i = 0; i < 5; ++i) pt[i] = K.add(K.mul(s, u[i]), K.mul(t, v[i]));
    if (F.form().eval(pt).code != 0) return false;
  }
  return true;
}

std::vector<Line> lines_on_cubic(const CubicForm& F, std::uint64_t budget) {
  std::vector<Line> out;
  for_each_line(
      F.field(),
      [&](const Line& L) {
        if (contains_line_by_points(F, L)) out.push_back(L);
        return true;
      },
      budget);
  return out;
}

bool lines_meet(const Line& a, const Line& b) {
  Matrix m;
  for (const auto& row : a.rows()) m.emplace_back(row.begin(), row.end());
  for (const auto& row : b.rows()) m.emplace_back(row.begin(), row.end());
  return rank(*a.field(), m) <= 3;
}

IncidenceCounts incidence_counts(const CubicForm& F, const Line& L, const std::vector<Line>* lines) {
  if (!contains_line_by_points(F, L)) throw InputError("the line does not lie on the cubic");
  const FieldPtr& field = F.field();
  const Field& K = *field;
  IncidenceCounts out;

  std::vector<Line> own;
  if (!lines) {
    own = lines_on_cubic(F);
    lines = &own;
  }
  for (const auto& other : *lines) {
    if (!(other == L) && lines_meet(L, other)) ++out.lines_meeting;
  }

  // Complement of L: coordinate vectors off the pivot columns of its RREF.
  std::array<bool, 5> pivot{};
  for (const auto& row : L.rows()) {
    for (unsigned i = 0; i < 5; ++i) {
      if (row[i].code != 0) {
        pivot[i] = true;
        break;
      }
    }
  }
  std::vector<unsigned> complement;
  for (unsigned i = 0; i < 5; ++i)
    if (!pivot[i]) complement.push_back(i);

  const FqElem half = K.inv(K.from_int(2));
  ProjectivePoints(field, 2).for_each([&](std::span<const FqElem> x) {
    // Plane coordinates (y0, y1, y2) -> y0 w + y1 u + y2 v.
    Point5 w{};
    for (unsigned k = 0; k < 3; ++k) w[complement[k]] = x[k];
    std::vector<Form> images;
    for (unsigned i = 0; i < 5; ++i) {
      const std::array<FqElem, 3> c{w[i], L.rows()[0][i], L.rows()[1][i]};
      images.push_back(Form::linear(field, c));
    }
    const Form restricted = F.form().substitute(images);
    Form conic(field, 3, 2);
    for (std::size_t i = 0; i < restricted.size(); ++i) {
      const FqElem c = restricted.coeff(i);
      if (c.code == 0) continue;
      Exponents e = restricted.monomial(i);
      if (e[0] == 0) throw InvariantError("plane section does not contain the line");
      e[0] -= 1;
      conic.set(e, c);
    }
    auto co = [&](unsigned a, unsigned b) {
      Exponents e{};
      e[a] += 1;
      e[b] += 1;
      const FqElem c = conic.coeff(e);
      return a == b ? c : K.mul(c, half);
    };
    Matrix m(3, std::vector<FqElem>(3));
    for (unsigned a = 0; a < 3; ++a)
      for (unsigned b = 0; b < 3; ++b) m[a][b] = co(a, b);
    if (rank(K, m) < 3) ++out.gamma_points;
    if (co(1, 1).code == 0 && co(1, 2).code == 0 && co(2, 2).code == 0) ++out.residual_contains_l;
  });

  out.curve_points = out.lines_meeting + out.residual_contains_l;
  out.difference = static_cast<std::int64_t>(out.curve_points) - static_cast<std::int64_t>(out.gamma_points);
  return out;
}

}  // namespace fanozeta
