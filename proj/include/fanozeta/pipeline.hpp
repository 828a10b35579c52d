#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fanozeta/counting.hpp"
#include "fanozeta/cubic.hpp"
#include "fanozeta/oracle.hpp"
#include "fanozeta/weil.hpp"

namespace fanozeta {

struct Term {
  Exponents m{};
  std::int64_t c = 0;
  friend bool operator==(const Term&, const Term&) = default;
};

using LineRows = std::array<std::array<std::uint64_t, 5>, 2>;

/// One computation. The cubic lives over F_q, q = p^e; line entries and
/// coefficients of an e > 1 base are element codes, otherwise integers mod p.
struct JobSpec {
  std::string name;
  std::uint32_t p = 0;
  std::uint32_t e = 1;
  std::vector<Term> cubic;
  std::optional<LineRows> line;
  unsigned max_r = 5;
  unsigned threads = 1;
  std::uint64_t chunk_size = std::uint64_t{1} << 16;
  double tol = kDefaultTol;
  bool geometric = false;
  bool oracle = false;
  bool smoothness = false;
  /// Without a line over F_{p^e}, retry over F_{p^{ke}}, k = 2..extend_limit.
  bool auto_extend = false;
  unsigned extend_limit = 4;

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

/// Canonical coefficient list: reduced mod p, merged, sorted, zeros dropped.
/// Throws InputError naming the offending term on a bad monomial.
std::vector<Term> canonical_terms(std::uint32_t p, std::uint32_t e, const std::vector<Term>& terms);

/// Hex digest of the mathematical content of a job (not threads or options
/// that leave the counts unchanged).
std::string job_hash(const JobSpec& job);

std::vector<std::string> preset_names();
/// "paper-5", "paper-7", "paper-11" or "klein:p". Throws InputError otherwise.
JobSpec preset(const std::string& name);

CubicForm build_cubic(const FieldPtr& field, const std::vector<Term>& terms);
std::vector<Term> terms_of(const CubicForm& F);

struct Resolved {
  FieldPtr field;
  unsigned base_degree = 1;  // e actually used
  std::optional<CubicForm> cubic;
  std::optional<Line> line;
  bool line_searched = false;
};

/// Builds the field and cubic and finds or checks the line. Throws
/// NoRationalLineError when no line exists within the allowed extensions.
Resolved resolve(const JobSpec& job);

struct WeilSummary {
  std::vector<mpz_class> traces;
  IntPoly p1, p2, p3_cubic, p3_fano;
  bool functional_equation = false;
  int p2_sign = 0;
  unsigned rho = 0;
  std::optional<unsigned> rho_geom;
  mpq_class artin_tate;
  bool artin_tate_q10_form = false;
  bool roots_on_circle = false;
  bool roots_converged = false;
  double roots_max_deviation = 0.0;

  friend bool operator==(const WeilSummary&, const WeilSummary&) = default;
};

WeilSummary summarize(const WeilData& data);

struct ScanSummary {
  IntPoly prefix;  // a_0..a_4
  double radius = 0.0;
  double center = 0.0;
  std::int64_t lo = 0, hi = 0;
  std::vector<std::int64_t> passing;
  std::vector<std::int64_t> indeterminate;
  std::optional<std::int64_t> known_a5;
  bool known_passes = false;

  friend bool operator==(const ScanSummary&, const ScanSummary&) = default;
};

struct OracleSummary {
  std::uint64_t n1_cubic_direct = 0;
  mpz_class n1_cubic_formula;
  std::uint64_t lines = 0;
  mpz_class n1_fano_formula;
  IncidenceCounts incidence;
  std::int64_t d1_pipeline = 0;
  std::optional<std::uint64_t> n2_cubic_direct;
  std::optional<mpz_class> n2_cubic_formula;
  bool agree = false;

  friend bool operator==(const OracleSummary&, const OracleSummary&) = default;
};

struct SmoothnessSummary {
  bool singular_point_found = false;
  unsigned degree = 0;
  std::vector<std::uint64_t> witness;
  unsigned rmax = 0;
  friend bool operator==(const SmoothnessSummary&, const SmoothnessSummary&) = default;
};

struct Runtime {
  unsigned threads = 1;
  std::vector<double> seconds;  // per r
  double total_seconds = 0.0;
};

struct ZetaReport {
  JobSpec job;
  std::string job_hash;
  std::uint32_t p = 0;
  unsigned base_degree = 1;
  std::uint64_t q = 0;
  LineRows line{};
  bool line_searched = false;
  std::map<std::string, std::string> frame;
  CountReport counts;
  std::optional<WeilSummary> weil;
  std::vector<mpz_class> n_cubic;  // N_r(F), r = 1..min(3, counted)
  std::vector<mpz_class> n_fano;   // N_r(S), r = 1..3 once P1 is known
  std::optional<ScanSummary> scan;
  std::optional<OracleSummary> oracle;
  std::optional<SmoothnessSummary> smoothness;
  std::vector<std::string> diagnostics;
  Runtime runtime;

  /// Equality of everything except the runtime section.
  bool same_content(const ZetaReport& o) const;
};

struct Checkpoint {
  std::string job_hash;
  JobSpec job;
  unsigned base_degree = 1;
  LineRows line{};
  CountReport counts;
};

Checkpoint read_checkpoint(const std::filesystem::path& path);
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);

struct RunControl {
  std::optional<std::filesystem::path> checkpoint;
  ProgressHook progress;
  /// Stop cleanly after this many completed levels (testing resumption).
  std::optional<unsigned> stop_after;
  bool scan_last_trace = false;
};

ZetaReport run(const JobSpec& job, const RunControl& control = {});
/// Continues the job recorded in the checkpoint; `job`, when given, must hash
/// to the same value (threads and output options are taken from it).
ZetaReport resume(const std::filesystem::path& checkpoint, const std::optional<JobSpec>& job,
                  RunControl control = {});
/// Counts r <= 4 (or up to max_r) and scans the undetermined a_5.
ZetaReport scan_last_trace(JobSpec job, RunControl control = {});
/// Oracle comparison at r <= 2 only.
OracleSummary run_oracle(const JobSpec& job, const Resolved& resolved, const CountReport& counts);

std::string report_to_json(const ZetaReport& report, int indent = 2);
ZetaReport report_from_json(const std::string& text);
std::string job_to_json(const JobSpec& job, int indent = 2);
JobSpec job_from_json(const std::string& text);

/// Short human-readable summary.
std::string report_summary(const ZetaReport& report);

}  // namespace fanozeta
