// Command-line driver: run, resume, scan-last-trace, oracle, find-line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <new>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fanozeta/errors.hpp"
#include "fanozeta/pipeline.hpp"

namespace fz = fanozeta;

namespace {

struct Args {
  std::string job_file;
  std::string preset;
  std::optional<unsigned> max_r;
  std::optional<unsigned> threads;
  std::optional<double> tol;
  bool geometric = false;
  bool oracle = false;
  bool smoothness = false;
  bool progress = false;
  bool quiet = false;
  std::string checkpoint;
  std::string json_out;
};

void add_common(CLI::App* cmd, Args& a, bool job_positional = true) {
  if (job_positional) cmd->add_option("job", a.job_file, "job description (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--preset", a.preset, "paper-5, paper-7, paper-11 or klein:<p>");
  cmd->add_option("--max-r", a.max_r, "highest extension degree to count")->check(CLI::Range(1, 8));
  cmd->add_option("--threads", a.threads, "worker threads (0 = all cores)");
  cmd->add_option("--tol", a.tol, "root-modulus tolerance")->check(CLI::PositiveNumber);
  cmd->add_flag("--geometric", a.geometric, "compute the geometric Picard number");
  cmd->add_flag("--oracle", a.oracle, "cross-check r = 1, 2 by brute force");
  cmd->add_flag("--smoothness", a.smoothness, "search for singular points over F_q, F_q^2");
  cmd->add_option("--checkpoint", a.checkpoint, "checkpoint file, rewritten after every level");
  cmd->add_option("--json-out", a.json_out, "write the JSON report here ('-' for stdout)");
  cmd->add_flag("--progress", a.progress, "report counting progress on stderr");
  cmd->add_flag("-q,--quiet", a.quiet, "no summary on stdout");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fz::InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<fz::JobSpec> load_job(const Args& a, bool required) {
  if (!a.job_file.empty() && !a.preset.empty()) throw fz::InputError("give either a job file or --preset, not both");
  std::optional<fz::JobSpec> job;
  if (!a.preset.empty()) job = fz::preset(a.preset);
  if (!a.job_file.empty()) job = fz::job_from_json(slurp(a.job_file));
  if (!job) {
    if (required) throw fz::InputError("no job: pass a job file or --preset");
    return job;
  }
  if (a.max_r) job->max_r = *a.max_r;
  if (a.threads) job->threads = *a.threads;
  if (a.tol) job->tol = *a.tol;
  job->geometric = job->geometric || a.geometric;
  job->oracle = job->oracle || a.oracle;
  job->smoothness = job->smoothness || a.smoothness;
  if (job->threads == 0) job->threads = std::max(1u, std::thread::hardware_concurrency());
  return job;
}

fz::RunControl control_for(const Args& a) {
  fz::RunControl c;
  if (!a.checkpoint.empty()) c.checkpoint = a.checkpoint;
  if (a.progress) {
    c.progress = [](unsigned r, std::uint64_t done, std::uint64_t total) {
      std::fprintf(stderr, "\rr = %u  %llu / %llu", r, static_cast<unsigned long long>(done),
                   static_cast<unsigned long long>(total));
      if (done == total) std::fprintf(stderr, "\n");
    };
  }
  return c;
}

void emit(const Args& a, const fz::ZetaReport& rep) {
  if (!a.quiet && a.json_out != "-") std::cout << fz::report_summary(rep);
  if (a.json_out.empty()) return;
  const std::string text = fz::report_to_json(rep) + "\n";
  if (a.json_out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(a.json_out, std::ios::trunc);
  if (!out || !(out << text)) throw fz::ResourceError("cannot write " + a.json_out);
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Zeta functions of cubic threefolds and their Fano surfaces over finite fields"};
  app.require_subcommand(1);
  Args run_args, resume_args, scan_args, oracle_args, line_args;

  auto* run = app.add_subcommand("run", "count, reconstruct P1 and P2, derive invariants");
  add_common(run, run_args);
  auto* resume = app.add_subcommand("resume", "continue from a checkpoint");
  add_common(resume, resume_args);
  resume->get_option("--checkpoint")->required();
  auto* scan = app.add_subcommand("scan-last-trace", "count r <= 4 and scan the feasible a5");
  add_common(scan, scan_args);
  auto* oracle = app.add_subcommand("oracle", "brute-force cross-check at r = 1, 2");
  add_common(oracle, oracle_args);
  auto* find = app.add_subcommand("find-line", "print the first rational line on the cubic");
  add_common(find, line_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*run) {
    auto job = *load_job(run_args, true);
    emit(run_args, fz::run(job, control_for(run_args)));
  } else if (*resume) {
    auto job = load_job(resume_args, false);
    emit(resume_args, fz::resume(resume_args.checkpoint, job, control_for(resume_args)));
  } else if (*scan) {
    auto job = *load_job(scan_args, true);
    emit(scan_args, fz::scan_last_trace(job, control_for(scan_args)));
  } else if (*oracle) {
    auto job = *load_job(oracle_args, true);
    job.max_r = std::min(job.max_r, 2u);
    if (job.max_r < 2) throw fz::InputError("the oracle needs --max-r of at least 2");
    job.oracle = true;
    auto rep = fz::run(job, control_for(oracle_args));
    emit(oracle_args, rep);
    if (!rep.oracle || !rep.oracle->agree) {
      std::cerr << "oracle disagreement\n";
      return fz::InvariantError("").exit_code();
    }
  } else if (*find) {
    auto job = *load_job(line_args, true);
    job.line.reset();
    const auto res = fz::resolve(job);
    std::cout << "F_" << res.field->order() << "  " << res.line->to_string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const fz::Error& e) {
    std::cerr << "fanozeta: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::bad_alloc&) {
    std::cerr << "fanozeta: out of memory\n";
    return fz::ResourceError("").exit_code();
  } catch (const std::exception& e) {
    std::cerr << "fanozeta: internal error: " << e.what() << "\n";
    return fz::InvariantError("").exit_code();
  }
}
