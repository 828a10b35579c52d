#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fanozeta/field.hpp"
#include "fanozeta/form.hpp"
#include "fanozeta/linalg.hpp"

namespace fanozeta {

/// A cubic form in x1..x5 over F_q, not identically zero.
class CubicForm {
 public:
  explicit CubicForm(Form form);

  const Form& form() const { return form_; }
  const FieldPtr& field() const { return form_.field(); }
  /// Same cubic with coefficients pushed into a larger field.
  CubicForm embedded(const Embedding& e) const { return CubicForm(form_.embedded(e)); }

 private:
  Form form_;
};

using Point5 = std::array<FqElem, 5>;

/// A line of P^4 as the row space of a 2x5 matrix in reduced row echelon form.
class Line {
 public:
  /// Throws InputError if the two points do not span a line.
  static Line through(FieldPtr field, const Point5& a, const Point5& b);
  /// The line spanned by the coordinate vectors e_i, e_j (0-based).
  static Line coordinate(FieldPtr field, unsigned i, unsigned j);

  const FieldPtr& field() const { return field_; }
  const std::array<Point5, 2>& rows() const { return rows_; }
  std::string to_string() const;

  friend bool operator==(const Line& a, const Line& b) { return a.rows_ == b.rows_; }

 private:
  Line(FieldPtr field, std::array<Point5, 2> rows) : field_(std::move(field)), rows_(rows) {}

  FieldPtr field_;
  std::array<Point5, 2> rows_;
};

/// The cubic rewritten in coordinates where the line is {x1 = x2 = x3 = 0}:
///   F = l1 x4^2 + 2 l2 x4 x5 + l3 x5^2 + 2 q1 x4 + 2 q2 x5 + f,
/// with l_i, q_i, f forms in x1, x2, x3, together with the symmetric matrix
///   M = [[l1, l2, q1], [l2, l3, q2], [q1, q2, f]],
/// its diagonal minors delta_i and the discriminant quintic det M.
struct LineFrame {
  FieldPtr field;
  Line line;
  /// Columns are the new basis in old coordinates: old = transform * new.
  Matrix transform;
  Form transformed;
  Form l1, l2, l3;
  Form q1, q2;
  Form f;
  Form delta1;  // l3 f - q2^2
  Form delta2;  // l1 f - q1^2
  Form delta3;  // l1 l3 - l2^2
  Form quintic;

  /// The right-hand side of the decomposition, as a cubic in five variables.
  Form reassembled() const;
};

enum class BasisCompletion { leading_columns, trailing_columns };

bool contains_line(const CubicForm& F, const Line& L);

/// Number of F_q-rational lines in P^4, the Gaussian binomial [5 choose 2]_q.
std::uint64_t grassmannian_size(std::uint64_t q);

/// Visits every line of P^4(F_q) once in a fixed order (pivot columns in
/// lexicographic order, then free entries in code order) until visit returns
/// false. Throws ResourceError if more than `budget` lines would be needed.
void for_each_line(const FieldPtr& field, const std::function<bool(const Line&)>& visit,
                   std::uint64_t budget = 50'000'000);

std::optional<Line> find_rational_line(const CubicForm& F, std::uint64_t budget = 50'000'000);

/// Throws InputError unless L lies on F.
LineFrame normalize(const CubicForm& F, const Line& L,
                    BasisCompletion completion = BasisCompletion::leading_columns);

struct SmoothnessResult {
  bool singular_point_found = false;
  unsigned degree = 0;   // extension degree over the base where the witness lives
  FieldPtr witness_field;
  std::vector<FqElem> witness;
};

/// Searches P^4(F_{q^r}), r = 1..rmax, for a common zero of F and its
/// partial derivatives. Finding none is not a proof of smoothness.
SmoothnessResult smoothness_heuristic(const CubicForm& F, unsigned rmax = 2);

struct PlanePoints {
  FieldPtr field;
  std::vector<std::array<FqElem, 3>> points;
};

/// Points of P^2(F_{q^r}) where det M and all three diagonal minors vanish.
PlanePoints quintic_singular_points(const LineFrame& frame, unsigned r);

/// The field F_{q^r} for a base field F_q = F_{p^e}.
FieldPtr extension_field(const FieldPtr& base, unsigned r);

}  // namespace fanozeta
