#include "fanozeta/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "fanozeta/errors.hpp"
#include "json.hpp"

namespace fanozeta {

using nlohmann::json;

namespace {

std::string monomial_string(const Exponents& m) {
  std::string s;
  for (unsigned v = 0; v < 5; ++v) {
    if (m[v] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(v + 1);
    if (m[v] > 1) s += "^" + std::to_string(m[v]);
  }
  return s.empty() ? "1" : s;
}

Term term(unsigned a, unsigned b, unsigned c, std::int64_t coeff) {
  Term t;
  t.m[a] += 1;
  t.m[b] += 1;
  t.m[c] += 1;
  t.c = coeff;
  return t;
}

// Variables are 0-based here: x1 -> 0, ..., x5 -> 4.
std::vector<Term> sample_cubic() {
  return {
      // l1 x4^2 + 2 l2 x4 x5 + l3 x5^2 with l = (x1, x2, x3)
      term(0, 3, 3, 1), term(1, 3, 4, 2), term(2, 4, 4, 1),
      // 2 q1 x4, q1 = x1^2 + 2 x2^2 + x2 x3 + x3^2
      term(0, 0, 3, 2), term(1, 1, 3, 4), term(1, 2, 3, 2), term(2, 2, 3, 2),
      // 2 q2 x5, q2 = x1 x2 + 4 x2 x3 + x3^2
      term(0, 1, 4, 2), term(1, 2, 4, 8), term(2, 2, 4, 2),
      // f = x2^2 x3 - (x1^3 + 4 x1 x2^2 + 2 x2^3)
      term(1, 1, 2, 1), term(0, 0, 0, -1), term(0, 1, 1, -4), term(1, 1, 1, -2),
  };
}

std::vector<Term> klein_cubic() {
  return {term(0, 0, 1, 1), term(1, 1, 2, 1), term(2, 2, 3, 1), term(3, 3, 4, 1), term(4, 4, 0, 1)};
}

std::uint32_t parse_prime_suffix(const std::string& name, std::size_t pos) {
  const std::string digits = name.substr(pos);
  if (digits.empty() || digits.size() > 6 ||
      !std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    throw InputError("unknown preset '" + name + "'");
  }
  return static_cast<std::uint32_t>(std::stoul(digits));
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

json terms_json(const std::vector<Term>& terms) {
  json arr = json::array();
  for (const auto& t : terms) {
    arr.push_back({{"m", std::vector<int>(t.m.begin(), t.m.end())}, {"c", t.c}});
  }
  return arr;
}

json line_json(const LineRows& rows) {
  return json::array({std::vector<std::uint64_t>(rows[0].begin(), rows[0].end()),
                      std::vector<std::uint64_t>(rows[1].begin(), rows[1].end())});
}

LineRows line_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("a line needs two points");
  LineRows rows{};
  for (unsigned i = 0; i < 2; ++i) {
    if (!j[i].is_array() || j[i].size() != 5) throw InputError("a line point needs 5 coordinates");
    for (unsigned k = 0; k < 5; ++k) {
      if (!j[i][k].is_number_integer() || j[i][k].get<std::int64_t>() < 0) {
        throw InputError("line coordinates must be nonnegative integers");
      }
      rows[i][k] = j[i][k].get<std::uint64_t>();
    }
  }
  return rows;
}

LineRows line_rows(const Line& L) {
  LineRows rows{};
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned k = 0; k < 5; ++k) rows[i][k] = L.rows()[i][k].code;
  return rows;
}

json strings(const std::vector<mpz_class>& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(x.get_str());
  return arr;
}

std::vector<mpz_class> from_strings(const json& arr) {
  std::vector<mpz_class> out;
  for (const auto& s : arr) out.emplace_back(s.get<std::string>());
  return out;
}

json row_json(const CountRow& row) {
  return {{"r", row.r},
          {"D", row.difference},
          {"gamma_points", row.gamma_points},
          {"split", row.split},
          {"nonsplit", row.nonsplit},
          {"singular", row.singular},
          {"coherence_checks", row.coherence_checks}};
}

CountRow row_from_json(const json& j) {
  CountRow row;
  row.r = j.at("r").get<unsigned>();
  row.difference = j.at("D").get<std::int64_t>();
  row.gamma_points = j.at("gamma_points").get<std::int64_t>();
  row.split = j.at("split").get<std::int64_t>();
  row.nonsplit = j.at("nonsplit").get<std::int64_t>();
  row.singular = j.at("singular").get<std::int64_t>();
  row.coherence_checks = j.at("coherence_checks").get<std::int64_t>();
  return row;
}

json job_json(const JobSpec& job) {
  json j = {{"name", job.name},
            {"p", job.p},
            {"e", job.e},
            {"cubic", terms_json(job.cubic)},
            {"line", job.line ? line_json(*job.line) : json(nullptr)},
            {"max_r", job.max_r},
            {"threads", job.threads},
            {"chunk_size", job.chunk_size},
            {"tol", job.tol},
            {"geometric", job.geometric},
            {"oracle", job.oracle},
            {"smoothness", job.smoothness},
            {"auto_extend", job.auto_extend},
            {"extend_limit", job.extend_limit}};
  return j;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

JobSpec job_from(const json& j) {
  if (!j.is_object()) throw InputError("a job must be a JSON object");
  JobSpec job;
  if (!j.contains("p") || !j["p"].is_number_integer()) throw InputError("job needs an integer 'p'");
  const auto p = j["p"].get<std::int64_t>();
  if (p <= 0 || p > 0xffffffffLL) throw InputError("'p' out of range");
  job.p = static_cast<std::uint32_t>(p);
  job.name = get_or<std::string>(j, "name", "");
  job.e = get_or<std::uint32_t>(j, "e", 1);
  if (job.e == 0) throw InputError("'e' must be at least 1");
  if (!j.contains("cubic") || !j["cubic"].is_array() || j["cubic"].empty()) {
    throw InputError("job needs a nonempty 'cubic' term list");
  }
  std::size_t index = 0;
  for (const auto& t : j["cubic"]) {
    ++index;
    const std::string where = "cubic term " + std::to_string(index);
    if (!t.is_object() || !t.contains("m") || !t["m"].is_array() || t["m"].size() != 5) {
      throw InputError(where + ": 'm' must list 5 exponents");
    }
    Term term;
    unsigned deg = 0;
    for (unsigned v = 0; v < 5; ++v) {
      if (!t["m"][v].is_number_integer() || t["m"][v].get<std::int64_t>() < 0 ||
          t["m"][v].get<std::int64_t>() > 3) {
        throw InputError(where + ": exponents must be integers in 0..3");
      }
      term.m[v] = static_cast<std::uint8_t>(t["m"][v].get<int>());
      deg += term.m[v];
    }
    if (deg != 3) {
      throw InputError(where + " (" + monomial_string(term.m) + ") has degree " + std::to_string(deg) +
                       ", expected 3");
    }
    if (!t.contains("c") || !t["c"].is_number_integer()) throw InputError(where + ": 'c' must be an integer");
    term.c = t["c"].get<std::int64_t>();
    job.cubic.push_back(term);
  }
  if (j.contains("line") && !j["line"].is_null()) job.line = line_from_json(j["line"]);
  job.max_r = get_or<unsigned>(j, "max_r", 5);
  if (job.max_r < 1 || job.max_r > 8) throw InputError("'max_r' must lie in 1..8");
  job.threads = get_or<unsigned>(j, "threads", 1);
  job.chunk_size = get_or<std::uint64_t>(j, "chunk_size", std::uint64_t{1} << 16);
  if (job.chunk_size == 0) throw InputError("'chunk_size' must be positive");
  job.tol = get_or<double>(j, "tol", kDefaultTol);
  if (!(job.tol > 0)) throw InputError("'tol' must be positive");
  job.geometric = get_or<bool>(j, "geometric", false);
  job.oracle = get_or<bool>(j, "oracle", false);
  job.smoothness = get_or<bool>(j, "smoothness", false);
  job.auto_extend = get_or<bool>(j, "auto_extend", false);
  job.extend_limit = get_or<unsigned>(j, "extend_limit", 4);
  return job;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

std::string zeta_string(const ZetaFunction& z) {
  auto side = [](const std::vector<IntPoly>& fs) {
    std::string s;
    for (const auto& f : fs) s += "(" + poly_to_string(f) + ")";
    return s;
  };
  return side(z.numerator) + " / " + side(z.denominator);
}

std::vector<mpz_class> prefix_from_traces(const std::vector<mpz_class>& s, std::size_t n) {
  return coeffs_from_power_sums(std::span<const mpz_class>(s).first(n), n);
}

mpz_class fano_from_traces(std::uint64_t q, unsigned r, const mpz_class& sr, const mpz_class& s2r) {
  mpz_class qr;
  mpz_ui_pow_ui(qr.get_mpz_t(), q, r);
  mpz_class pair = sr * sr - s2r;
  if (!mpz_even_p(pair.get_mpz_t())) throw InvariantError("odd pair power sum");
  return 1 - (1 + qr) * sr + pair / 2 + qr * qr;
}

void atomic_write(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ResourceError("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw ResourceError("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<Term> canonical_terms(std::uint32_t p, std::uint32_t e, const std::vector<Term>& terms) {
  FieldPtr field = make_field(p, e);
  std::map<std::size_t, FqElem> acc;
  std::size_t index = 0;
  for (const auto& t : terms) {
    ++index;
    unsigned deg = 0;
    for (auto x : t.m) deg += x;
    if (deg != 3) {
      throw InputError("cubic term " + std::to_string(index) + " (" + monomial_string(t.m) +
                       ") has degree " + std::to_string(deg) + ", expected 3");
    }
    FqElem c;
    if (e == 1 || t.c < 0) {
      c = field->from_int(t.c);
    } else {
      if (static_cast<std::uint64_t>(t.c) >= field->order()) {
        throw InputError("cubic term " + std::to_string(index) + ": coefficient code out of range");
      }
      c = FqElem{static_cast<std::uint64_t>(t.c)};
    }
    auto [it, fresh] = acc.try_emplace(monomial_index(5, 3, t.m), c);
    if (!fresh) it->second = field->add(it->second, c);
  }
  std::vector<Term> out;
  for (const auto& [i, c] : acc) {
    if (c.code == 0) continue;
    out.push_back({monomials(5, 3)[i], static_cast<std::int64_t>(c.code)});
  }
  return out;
}

std::string job_hash(const JobSpec& job) {
  std::ostringstream os;
  os << "p=" << job.p << ";e=" << job.e << ";cubic=";
  for (const auto& t : canonical_terms(job.p, job.e, job.cubic)) {
    for (auto x : t.m) os << int(x);
    os << ":" << t.c << ",";
  }
  os << ";line=";
  if (job.line) {
    for (const auto& row : *job.line)
      for (auto x : row) os << x << ",";
  } else {
    os << "search";
  }
  os << ";extend=" << job.auto_extend << "/" << (job.auto_extend ? job.extend_limit : 0);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(os.str())));
  return buf;
}

std::vector<std::string> preset_names() { return {"paper-5", "paper-7", "paper-11", "klein:<p>"}; }

JobSpec preset(const std::string& name) {
  JobSpec job;
  job.name = name;
  if (name.rfind("paper-", 0) == 0) {
    job.p = parse_prime_suffix(name, 6);
    if (job.p != 5 && job.p != 7 && job.p != 11) throw InputError("unknown preset '" + name + "'");
    job.cubic = sample_cubic();
    // The line {x1 = x2 = x3 = 0}, spanned by e4 and e5.
    job.line = LineRows{{{0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}}};
    if (job.p == 11) job.max_r = 4;
  } else if (name.rfind("klein:", 0) == 0) {
    job.p = parse_prime_suffix(name, 6);
    if (job.p == 2 || !is_prime(job.p)) throw InputError("klein preset needs an odd prime");
    job.cubic = klein_cubic();
    job.geometric = true;
    job.auto_extend = true;
  } else {
    throw InputError("unknown preset '" + name + "'");
  }
  return job;
}

CubicForm build_cubic(const FieldPtr& field, const std::vector<Term>& terms) {
  Form f(field, 5, 3);
  for (const auto& t : terms) f.add_to(t.m, FqElem{static_cast<std::uint64_t>(t.c)});
  if (f.is_zero()) throw InputError("the cubic reduces to zero");
  return CubicForm(std::move(f));
}

std::vector<Term> terms_of(const CubicForm& F) {
  std::vector<Term> out;
  const Form& f = F.form();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.coeff(i).code) out.push_back({f.monomial(i), static_cast<std::int64_t>(f.coeff(i).code)});
  }
  return out;
}

Resolved resolve(const JobSpec& job) {
  FieldPtr base = make_field(job.p, job.e);
  const CubicForm F = build_cubic(base, canonical_terms(job.p, job.e, job.cubic));
  Resolved out;
  if (job.line) {
    Point5 a{}, b{};
    for (unsigned k = 0; k < 5; ++k) {
      for (unsigned i = 0; i < 2; ++i) {
        const std::uint64_t v = (*job.line)[i][k];
        const FqElem x = job.e == 1 ? base->from_int(static_cast<std::int64_t>(v % job.p)) : FqElem{v};
        if (!base->contains(x)) throw InputError("line coordinate out of range");
        (i == 0 ? a : b)[k] = x;
      }
    }
    Line L = Line::through(base, a, b);
    if (!contains_line(F, L)) throw InputError("the given line does not lie on the cubic");
    out.field = base;
    out.base_degree = job.e;
    out.cubic = F;
    out.line = L;
    return out;
  }
  const unsigned limit = job.auto_extend ? std::max(1u, job.extend_limit) : 1u;
  for (unsigned k = 1; k <= limit; ++k) {
    FieldPtr field = k == 1 ? base : make_field(job.p, job.e * k);
    CubicForm Fk = k == 1 ? F : F.embedded(Embedding(base, field));
    if (auto L = find_rational_line(Fk)) {
      out.field = field;
      out.base_degree = job.e * k;
      out.cubic = Fk;
      out.line = *L;
      out.line_searched = true;
      return out;
    }
  }
  std::string msg = "no rational line over F_" + std::to_string(job.p);
  if (job.e > 1) msg += "^" + std::to_string(job.e);
  if (limit > 1) msg += " or its extensions of degree up to " + std::to_string(limit);
  msg += job.auto_extend ? "" : "; rerun over an extension (auto_extend)";
  throw NoRationalLineError(msg);
}

WeilSummary summarize(const WeilData& d) {
  WeilSummary s;
  s.traces = d.traces;
  s.p1 = d.p1.coeffs;
  s.p2 = d.p2.coeffs;
  s.p3_cubic = zeta_cubic(d.p1).numerator.front();
  s.p3_fano = p3_fano(d.p1).coeffs;
  s.functional_equation = d.functional_equation;
  s.p2_sign = d.p2_sign;
  s.rho = d.rho;
  s.rho_geom = d.rho_geom;
  s.artin_tate = d.artin_tate.value;
  s.artin_tate_q10_form = d.artin_tate.q10_form;
  s.roots_on_circle = d.p1_roots.on_circle;
  s.roots_converged = d.p1_roots.converged;
  s.roots_max_deviation = d.p1_roots.max_deviation;
  return s;
}

bool ZetaReport::same_content(const ZetaReport& o) const {
  auto strip = [](const ZetaReport& r) {
    json j = json::parse(report_to_json(r, -1));
    j.erase("runtime");
    j["job"].erase("threads");
    j["job"].erase("chunk_size");
    return j;
  };
  return strip(*this) == strip(o);
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  const json j = parse(read_file(path));
  if (!j.is_object() || j.value("kind", "") != "fanozeta-checkpoint") {
    throw InputError(path.string() + " is not a checkpoint");
  }
  Checkpoint cp;
  cp.job_hash = j.at("job_hash").get<std::string>();
  cp.job = job_from(j.at("job"));
  cp.base_degree = j.at("base_degree").get<unsigned>();
  cp.line = line_from_json(j.at("line"));
  for (const auto& row : j.at("rows")) {
    CountRow r = row_from_json(row);
    r.seconds = row.value("seconds", 0.0);
    cp.counts.rows.push_back(r);
  }
  return cp;
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  json rows = json::array();
  for (const auto& row : cp.counts.rows) {
    json r = row_json(row);
    r["seconds"] = row.seconds;
    rows.push_back(r);
  }
  json j = {{"kind", "fanozeta-checkpoint"}, {"version", 1},
            {"job_hash", cp.job_hash},       {"job", job_json(cp.job)},
            {"base_degree", cp.base_degree}, {"line", line_json(cp.line)},
            {"rows", rows}};
  atomic_write(path, j.dump(2) + "\n");
}

OracleSummary run_oracle(const JobSpec& job, const Resolved& resolved, const CountReport& counts) {
  (void)job;
  const CountRow* r1 = counts.row(1);
  const CountRow* r2 = counts.row(2);
  if (!r1 || !r2) throw InputError("the oracle comparison needs counts for r = 1, 2");
  const CubicForm& F = *resolved.cubic;
  const std::uint64_t q = resolved.field->order();
  const mpz_class s1 = -static_cast<long>(r1->difference);
  const mpz_class s2 = -static_cast<long>(r2->difference);

  OracleSummary o;
  o.n1_cubic_direct = count_hypersurface_p4(F, 1);
  o.n1_cubic_formula = nr_cubic(q, 1, s1);
  const auto lines = lines_on_cubic(F);
  o.lines = lines.size();
  o.n1_fano_formula = fano_from_traces(q, 1, s1, s2);
  o.incidence = incidence_counts(F, *resolved.line, &lines);
  o.d1_pipeline = r1->difference;
  if (projective_size(q * q, 4) <= 100'000'000ULL) {
    o.n2_cubic_direct = count_hypersurface_p4(F, 2);
    o.n2_cubic_formula = nr_cubic(q, 2, s2);
  }
  o.agree = o.n1_cubic_formula == o.n1_cubic_direct && o.n1_fano_formula == o.lines &&
            o.incidence.difference == o.d1_pipeline &&
            (!o.n2_cubic_direct || *o.n2_cubic_formula == *o.n2_cubic_direct);
  return o;
}

namespace {

ZetaReport run_impl(const JobSpec& job, const RunControl& control, CountReport initial,
                    const std::optional<Checkpoint>& from) {
  const auto start = std::chrono::steady_clock::now();
  ZetaReport rep;
  rep.job = job;
  rep.job_hash = job_hash(job);
  const Resolved res = resolve(job);
  if (from && (from->base_degree != res.base_degree || from->line != line_rows(*res.line))) {
    throw InvariantError("checkpoint line or base field differs from the resolved job");
  }
  rep.p = job.p;
  rep.base_degree = res.base_degree;
  rep.q = res.field->order();
  rep.line = line_rows(*res.line);
  rep.line_searched = res.line_searched;
  if (res.base_degree != job.e) {
    rep.diagnostics.push_back("no rational line over F_" + std::to_string(job.p) + "^" + std::to_string(job.e) +
                              "; working over F_" + std::to_string(job.p) + "^" +
                              std::to_string(res.base_degree));
  }

  const LineFrame frame = normalize(*res.cubic, *res.line);
  const std::pair<const char*, const Form*> parts[] = {
      {"l1", &frame.l1},         {"l2", &frame.l2},         {"l3", &frame.l3},
      {"q1", &frame.q1},         {"q2", &frame.q2},         {"f", &frame.f},
      {"delta1", &frame.delta1}, {"delta2", &frame.delta2}, {"delta3", &frame.delta3},
      {"quintic", &frame.quintic}};
  for (const auto& [key, form] : parts) rep.frame[key] = form->to_string();
  rep.diagnostics.push_back("delta_i is the (i,i)-minor of M; delta3 = l1*l3 - l2^2");

  if (job.smoothness) {
    const unsigned rmax = projective_size(rep.q * rep.q, 4) <= 100'000'000ULL ? 2 : 1;
    auto sm = smoothness_heuristic(*res.cubic, rmax);
    SmoothnessSummary s;
    s.singular_point_found = sm.singular_point_found;
    s.degree = sm.degree;
    s.rmax = rmax;
    for (auto w : sm.witness) s.witness.push_back(w.code);
    rep.smoothness = s;
    if (s.singular_point_found) {
      rep.diagnostics.push_back("the cubic is singular over F_q^" + std::to_string(s.degree) +
                                "; results do not describe a smooth threefold");
    }
  }

  CountOptions options;
  options.threads = job.threads;
  options.chunk_size = job.chunk_size;
  options.progress = control.progress;
  CountReport counts = std::move(initial);
  auto save = [&](const CountReport& c) {
    if (!control.checkpoint) return;
    Checkpoint cp{rep.job_hash, job, res.base_degree, rep.line, c};
    write_checkpoint(*control.checkpoint, cp);
  };
  for (unsigned r = 1; r <= job.max_r; ++r) {
    if (counts.row(r)) continue;
    if (control.stop_after && counts.complete_through() >= *control.stop_after) break;
    try {
      counts = count_all(frame, r, options, counts);
    } catch (const CountInterrupted& e) {
      save(e.partial());
      throw;
    }
    save(counts);
  }
  std::erase_if(counts.rows, [&](const CountRow& row) { return row.r > job.max_r; });
  rep.counts = counts;
  std::int64_t coherence = 0;
  for (const auto& row : counts.rows) coherence += row.coherence_checks;
  rep.diagnostics.push_back("delta coherence confirmed at " + std::to_string(coherence) + " points");

  const auto s = traces_from_counts(counts);
  for (unsigned r = 1; r <= std::min<std::size_t>(3, s.size()); ++r) {
    rep.n_cubic.push_back(nr_cubic(rep.q, r, s[r - 1]));
  }
  if (s.size() >= 5) {
    WeilOptions wopt;
    wopt.geometric = job.geometric;
    wopt.tol = job.tol;
    const WeilData data = analyze(rep.q, std::span<const mpz_class>(s).first(5), wopt);
    rep.weil = summarize(data);
    for (unsigned r = 1; r <= 3; ++r) rep.n_fano.push_back(nr_fano(data.p1, r));
    if (!data.artin_tate.q10_form) rep.diagnostics.push_back("q^10 * A_q is not an integer");
    if (!data.p1_roots.on_circle) {
      rep.diagnostics.push_back("P1 roots leave |T| = q^(-1/2) by more than the tolerance");
    }
    if (data.rho_geom && *data.rho_geom == 45) rep.diagnostics.push_back("supersingular: rho_geom = b2 = 45");
  } else if (s.size() >= 2) {
    rep.n_fano.push_back(fano_from_traces(rep.q, 1, s[0], s[1]));
  }

  if (control.scan_last_trace) {
    if (s.size() < 4) throw InputError("the last-trace scan needs counts for r = 1..4");
    const auto prefix = prefix_from_traces(s, 4);
    auto scan = feasible_last_trace(rep.q, std::span<const mpz_class>(prefix).subspan(1, 4), job.tol);
    ScanSummary ss;
    ss.prefix = scan.prefix;
    ss.radius = scan.radius;
    ss.center = scan.center;
    ss.lo = scan.lo;
    ss.hi = scan.hi;
    ss.passing = scan.passing;
    ss.indeterminate = scan.indeterminate;
    if (rep.weil) {
      ss.known_a5 = rep.weil->p1[5].get_si();
      ss.known_passes = std::binary_search(ss.passing.begin(), ss.passing.end(), *ss.known_a5);
    }
    rep.scan = ss;
  }

  if (job.oracle && counts.complete_through() >= 2) {
    rep.oracle = run_oracle(job, res, counts);
    if (!rep.oracle->agree) rep.diagnostics.push_back("oracle disagreement");
    if (rep.oracle->incidence.residual_contains_l) {
      rep.diagnostics.push_back("some residual conics contain L; naive incidence count adjusted");
    }
  }

  rep.runtime.threads = job.threads;
  for (const auto& row : counts.rows) rep.runtime.seconds.push_back(row.seconds);
  rep.runtime.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace

ZetaReport run(const JobSpec& job, const RunControl& control) { return run_impl(job, control, {}, std::nullopt); }

ZetaReport resume(const std::filesystem::path& checkpoint, const std::optional<JobSpec>& job,
                  RunControl control) {
  Checkpoint cp = read_checkpoint(checkpoint);
  if (job_hash(cp.job) != cp.job_hash) throw InputError("checkpoint is corrupt (job hash mismatch)");
  JobSpec effective = cp.job;
  if (job) {
    if (job_hash(*job) != cp.job_hash) {
      throw InputError("checkpoint was written for a different job (hash " + cp.job_hash + ")");
    }
    effective = *job;
  }
  if (!control.checkpoint) control.checkpoint = checkpoint;
  return run_impl(effective, control, cp.counts, cp);
}

ZetaReport scan_last_trace(JobSpec job, RunControl control) {
  job.max_r = std::max(job.max_r, 4u);
  control.scan_last_trace = true;
  return run(job, control);
}

std::string job_to_json(const JobSpec& job, int indent) { return job_json(job).dump(indent); }

JobSpec job_from_json(const std::string& text) { return job_from(parse(text)); }

std::string report_to_json(const ZetaReport& r, int indent) {
  json j;
  j["job"] = job_json(r.job);
  j["job_hash"] = r.job_hash;
  j["field"] = {{"p", r.p}, {"e", r.base_degree}, {"q", r.q}};
  j["line"] = {{"rows", line_json(r.line)}, {"searched", r.line_searched}};
  j["frame"] = r.frame;
  json rows = json::array();
  for (const auto& row : r.counts.rows) rows.push_back(row_json(row));
  j["counts"] = rows;
  if (r.weil) {
    const auto& w = *r.weil;
    j["weil"] = {{"traces", strings(w.traces)},
                 {"P1", strings(w.p1)},
                 {"P2", strings(w.p2)},
                 {"P3_cubic", strings(w.p3_cubic)},
                 {"P3_fano", strings(w.p3_fano)},
                 {"functional_equation", w.functional_equation},
                 {"P2_sign", w.p2_sign},
                 {"rho", w.rho},
                 {"rho_geom", w.rho_geom ? json(*w.rho_geom) : json(nullptr)},
                 {"artin_tate",
                  {{"value", w.artin_tate.get_str()},
                   {"factored", factorization_string(w.artin_tate)},
                   {"q10_form", w.artin_tate_q10_form}}},
                 {"roots",
                  {{"on_circle", w.roots_on_circle},
                   {"converged", w.roots_converged},
                   {"max_deviation", w.roots_max_deviation}}}};
    WeilPolynomial p1{w.p1, 1, r.q};
    WeilPolynomial p2{w.p2, 2, r.q};
    j["zeta"] = {{"cubic", zeta_string(zeta_cubic(p1))}, {"fano", zeta_string(zeta_fano(p1, p2))}};
  }
  j["points"] = {{"cubic", strings(r.n_cubic)}, {"fano", strings(r.n_fano)}};
  if (r.scan) {
    const auto& s = *r.scan;
    j["scan"] = {{"prefix", strings(s.prefix)},
                 {"radius", s.radius},
                 {"center", s.center},
                 {"lo", s.lo},
                 {"hi", s.hi},
                 {"passing", s.passing},
                 {"indeterminate", s.indeterminate},
                 {"known_a5", s.known_a5 ? json(*s.known_a5) : json(nullptr)},
                 {"known_passes", s.known_passes}};
  }
  if (r.oracle) {
    const auto& o = *r.oracle;
    j["oracle"] = {{"n1_cubic_direct", o.n1_cubic_direct},
                   {"n1_cubic_formula", o.n1_cubic_formula.get_str()},
                   {"lines", o.lines},
                   {"n1_fano_formula", o.n1_fano_formula.get_str()},
                   {"incidence",
                    {{"gamma_points", o.incidence.gamma_points},
                     {"lines_meeting", o.incidence.lines_meeting},
                     {"residual_contains_l", o.incidence.residual_contains_l},
                     {"curve_points", o.incidence.curve_points},
                     {"difference", o.incidence.difference}}},
                   {"d1_pipeline", o.d1_pipeline},
                   {"n2_cubic_direct", o.n2_cubic_direct ? json(*o.n2_cubic_direct) : json(nullptr)},
                   {"n2_cubic_formula", o.n2_cubic_formula ? json(o.n2_cubic_formula->get_str()) : json(nullptr)},
                   {"agree", o.agree}};
  }
  if (r.smoothness) {
    const auto& s = *r.smoothness;
    j["smoothness"] = {{"singular_point_found", s.singular_point_found},
                       {"degree", s.degree},
                       {"witness", s.witness},
                       {"rmax", s.rmax}};
  }
  j["diagnostics"] = r.diagnostics;
  j["runtime"] = {{"threads", r.runtime.threads},
                  {"seconds", r.runtime.seconds},
                  {"total_seconds", r.runtime.total_seconds}};
  return j.dump(indent);
}

ZetaReport report_from_json(const std::string& text) {
  const json j = parse(text);
  ZetaReport r;
  try {
    r.job = job_from(j.at("job"));
    r.job_hash = j.at("job_hash").get<std::string>();
    r.p = j.at("field").at("p").get<std::uint32_t>();
    r.base_degree = j.at("field").at("e").get<unsigned>();
    r.q = j.at("field").at("q").get<std::uint64_t>();
    r.line = line_from_json(j.at("line").at("rows"));
    r.line_searched = j.at("line").at("searched").get<bool>();
    r.frame = j.at("frame").get<std::map<std::string, std::string>>();
    const auto& rt = j.at("runtime");
    r.runtime.threads = rt.at("threads").get<unsigned>();
    r.runtime.seconds = rt.at("seconds").get<std::vector<double>>();
    r.runtime.total_seconds = rt.at("total_seconds").get<double>();
    std::size_t i = 0;
    for (const auto& row : j.at("counts")) {
      CountRow c = row_from_json(row);
      if (i < r.runtime.seconds.size()) c.seconds = r.runtime.seconds[i];
      ++i;
      r.counts.rows.push_back(c);
    }
    if (j.contains("weil")) {
      const auto& w = j["weil"];
      WeilSummary s;
      s.traces = from_strings(w.at("traces"));
      s.p1 = from_strings(w.at("P1"));
      s.p2 = from_strings(w.at("P2"));
      s.p3_cubic = from_strings(w.at("P3_cubic"));
      s.p3_fano = from_strings(w.at("P3_fano"));
      s.functional_equation = w.at("functional_equation").get<bool>();
      s.p2_sign = w.at("P2_sign").get<int>();
      s.rho = w.at("rho").get<unsigned>();
      if (!w.at("rho_geom").is_null()) s.rho_geom = w["rho_geom"].get<unsigned>();
      s.artin_tate = mpq_class(w.at("artin_tate").at("value").get<std::string>());
      s.artin_tate.canonicalize();
      s.artin_tate_q10_form = w["artin_tate"].at("q10_form").get<bool>();
      s.roots_on_circle = w.at("roots").at("on_circle").get<bool>();
      s.roots_converged = w["roots"].at("converged").get<bool>();
      s.roots_max_deviation = w["roots"].at("max_deviation").get<double>();
      r.weil = s;
    }
    r.n_cubic = from_strings(j.at("points").at("cubic"));
    r.n_fano = from_strings(j.at("points").at("fano"));
    if (j.contains("scan")) {
      const auto& s = j["scan"];
      ScanSummary ss;
      ss.prefix = from_strings(s.at("prefix"));
      ss.radius = s.at("radius").get<double>();
      ss.center = s.at("center").get<double>();
      ss.lo = s.at("lo").get<std::int64_t>();
      ss.hi = s.at("hi").get<std::int64_t>();
      ss.passing = s.at("passing").get<std::vector<std::int64_t>>();
      ss.indeterminate = s.at("indeterminate").get<std::vector<std::int64_t>>();
      if (!s.at("known_a5").is_null()) ss.known_a5 = s["known_a5"].get<std::int64_t>();
      ss.known_passes = s.at("known_passes").get<bool>();
      r.scan = ss;
    }
    if (j.contains("oracle")) {
      const auto& o = j["oracle"];
      OracleSummary os;
      os.n1_cubic_direct = o.at("n1_cubic_direct").get<std::uint64_t>();
      os.n1_cubic_formula = mpz_class(o.at("n1_cubic_formula").get<std::string>());
      os.lines = o.at("lines").get<std::uint64_t>();
      os.n1_fano_formula = mpz_class(o.at("n1_fano_formula").get<std::string>());
      const auto& inc = o.at("incidence");
      os.incidence.gamma_points = inc.at("gamma_points").get<std::uint64_t>();
      os.incidence.lines_meeting = inc.at("lines_meeting").get<std::uint64_t>();
      os.incidence.residual_contains_l = inc.at("residual_contains_l").get<std::uint64_t>();
      os.incidence.curve_points = inc.at("curve_points").get<std::uint64_t>();
      os.incidence.difference = inc.at("difference").get<std::int64_t>();
      os.d1_pipeline = o.at("d1_pipeline").get<std::int64_t>();
      if (!o.at("n2_cubic_direct").is_null()) os.n2_cubic_direct = o["n2_cubic_direct"].get<std::uint64_t>();
      if (!o.at("n2_cubic_formula").is_null()) {
        os.n2_cubic_formula = mpz_class(o["n2_cubic_formula"].get<std::string>());
      }
      os.agree = o.at("agree").get<bool>();
      r.oracle = os;
    }
    if (j.contains("smoothness")) {
      const auto& s = j["smoothness"];
      SmoothnessSummary ss;
      ss.singular_point_found = s.at("singular_point_found").get<bool>();
      ss.degree = s.at("degree").get<unsigned>();
      ss.witness = s.at("witness").get<std::vector<std::uint64_t>>();
      ss.rmax = s.at("rmax").get<unsigned>();
      r.smoothness = ss;
    }
    r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string report_summary(const ZetaReport& r) {
  std::ostringstream os;
  os << "job      " << (r.job.name.empty() ? "(file)" : r.job.name) << "  hash " << r.job_hash << "\n";
  os << "field    F_" << r.q << " (p = " << r.p << ", e = " << r.base_degree << ")\n";
  os << "line     " << (r.line_searched ? "found " : "given ");
  for (unsigned i = 0; i < 2; ++i) {
    os << "(";
    for (unsigned k = 0; k < 5; ++k) os << (k ? "," : "") << r.line[i][k];
    os << ")" << (i == 0 ? " " : "\n");
  }
  for (const auto& row : r.counts.rows) {
    os << "r = " << row.r << "    D = " << row.difference << "  Gamma = " << row.gamma_points
       << "  split/nonsplit/singular = " << row.split << "/" << row.nonsplit << "/" << row.singular << "\n";
  }
  if (r.weil) {
    const auto& w = *r.weil;
    os << "P1(S,T)  " << poly_to_string(w.p1) << "\n";
    os << "rho      " << w.rho;
    if (w.rho_geom) os << "   rho_geom " << *w.rho_geom;
    os << "\n";
    os << "A_q      " << w.artin_tate.get_str() << " = " << factorization_string(w.artin_tate) << "\n";
    os << "roots    " << (w.roots_on_circle ? "on" : "OFF") << " |T| = q^(-1/2), max deviation "
       << w.roots_max_deviation << "\n";
  }
  for (std::size_t i = 0; i < r.n_cubic.size(); ++i) os << "N_" << i + 1 << "(F)   " << r.n_cubic[i].get_str() << "\n";
  for (std::size_t i = 0; i < r.n_fano.size(); ++i) os << "N_" << i + 1 << "(S)   " << r.n_fano[i].get_str() << "\n";
  if (r.scan) {
    const auto& s = *r.scan;
    os << "prefix   " << poly_to_string(s.prefix) << "\n";
    os << "radius   " << std::setprecision(10) << s.radius << " around " << s.center << "\n";
    os << "a5 scan  " << s.passing.size() << " of [" << s.lo << ", " << s.hi << "] pass";
    if (!s.passing.empty()) os << " (" << s.passing.front() << " .. " << s.passing.back() << ")";
    os << "\n";
    if (s.known_a5) os << "a5       " << *s.known_a5 << (s.known_passes ? " passes" : " FAILS") << "\n";
  }
  if (r.oracle) {
    const auto& o = *r.oracle;
    os << "oracle   N1(F) " << o.n1_cubic_direct << " vs " << o.n1_cubic_formula.get_str() << ", lines "
       << o.lines << " vs " << o.n1_fano_formula.get_str() << ", D1 " << o.incidence.difference << " vs "
       << o.d1_pipeline;
    if (o.n2_cubic_direct) os << ", N2(F) " << *o.n2_cubic_direct << " vs " << o.n2_cubic_formula->get_str();
    os << (o.agree ? "  [agree]" : "  [DISAGREE]") << "\n";
  }
  for (const auto& d : r.diagnostics) os << "note     " << d << "\n";
  return os.str();
}

}  // namespace fanozeta
