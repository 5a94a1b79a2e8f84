// Command-line surface: generate instances, run mechanisms, verify suites,
// compute integrality gaps, and merge CSV reports. All randomness flows from
// --seed (default from BFM_SEED); outputs are atomic and byte-deterministic.

#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bfm/instance_io.hpp"
#include "bfm/lp.hpp"
#include "bfm/suites.hpp"

namespace {

int cmd_gen(const std::string& kind, int n, int m, int vmax, std::uint64_t seed,
            const std::string& out) {
  bfm::GenParams p;
  p.n = n;
  p.m = m;
  p.vmax = vmax;
  bfm::Instance inst = bfm::generate_instance(kind, p, seed);
  if (out.empty()) {
    std::cout << bfm::serialize_instance(inst);
  } else {
    bfm::save_instance(inst, out);
    std::cout << "wrote " << out << " (" << inst.id << ")\n";
  }
  return 0;
}

int cmd_run(const std::string& mech_id, const std::string& file, const std::string& mode,
            long trials, std::uint64_t seed, const std::string& out) {
  auto mech = bfm::mech_from_name(mech_id);
  if (!mech) throw bfm::input_error("unknown mechanism '" + mech_id + "'");
  bfm::Instance inst = bfm::load_instance(file);
  bfm::MechContext ctx = bfm::make_context(inst);
  bfm::ExperimentReport rep;
  if (mode == "exact") {
    rep = bfm::approximation_report(*mech, inst, ctx, seed);
  } else if (mode == "mc") {
    if (trials <= 0) throw bfm::input_error("mc mode needs --trials > 0");
    rep.instance_id = inst.id;
    rep.mech = *mech;
    rep.n = inst.n;
    rep.seed = seed;
    rep.opt = bfm::budgeted_opt_exact(inst).value;
    rep.tapes = trials;
    std::mt19937_64 rng(seed);
    bfm::Q sum = 0;
    for (long t = 0; t < trials; ++t) {
      std::uint64_t word = rng();
      bfm::RandomTape tape;
      tape.sample = static_cast<bfm::AgentSet>(word) & bfm::full_set(inst.n);
      tape.top = (word >> inst.n) & 1;
      tape.additive = (word >> (inst.n + 1)) & 1;
      bfm::Outcome o = bfm::run_mechanism(*mech, inst, inst.costs, tape, ctx);
      if (bfm::check_outcome(o, inst.costs, inst.budget, inst.n)) ++rep.invariant_violations;
      sum += ctx.vtab[o.winners];
    }
    rep.expected = sum / trials;
    if (rep.expected > 0)
      rep.ratio = rep.opt / rep.expected;
    else if (rep.opt == 0)
      rep.ratio = bfm::Q(1);
  } else {
    throw bfm::input_error("mode must be 'exact' or 'mc'");
  }
  std::string csv = bfm::report_csv({rep});
  if (out.empty())
    std::cout << csv;
  else
    bfm::write_text_file_atomic(out, csv);
  return rep.invariant_violations > 0 ? 2 : 0;
}

int cmd_verify(const std::string& name) {
  std::vector<bfm::SuiteEntry> entries = bfm::suite(name);
  long violations = 0;
  bfm::ProbeGrid grid = bfm::ProbeGrid::standard();
  for (const auto& e : entries) {
    bfm::MechContext ctx = bfm::make_context(e.inst);
    for (bfm::Mech m : e.mechs) {
      auto found = bfm::truthfulness_probe(m, e.inst, grid, ctx);
      for (const auto& v : found) {
        ++violations;
        std::cout << "VIOLATION " << v.kind << " instance=" << v.instance_id
                  << " mech=" << bfm::mech_name(v.mech) << " agent=" << v.agent
                  << " misreport=" << bfm::to_string(v.misreport)
                  << " tape={sample=" << bfm::set_to_string(v.tape.sample)
                  << ",top=" << v.tape.top << ",additive=" << v.tape.additive << "}"
                  << (v.detail.empty() ? "" : " " + v.detail) << "\n";
      }
      std::cout << (found.empty() ? "ok " : "FAIL ") << e.inst.id << " "
                << bfm::mech_name(m) << "\n";
    }
  }
  std::cout << "suite " << name << ": " << entries.size() << " instances, " << violations
            << " violations\n";
  return violations > 0 ? 2 : 0;
}

int cmd_gap(const std::string& file) {
  bfm::Instance inst = bfm::load_instance(file);
  bfm::GapReport rep = bfm::max_integrality_gap(inst.spec);
  std::cout << "I = " << bfm::to_string(rep.max_gap) << "\n";
  return 0;
}

int cmd_report(const std::string& dir, const std::string& out) {
  std::set<std::string> rows;
  std::string header = bfm::report_csv_header();
  bool any = false;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::string text = bfm::read_text_file(path.string());
    std::size_t pos = text.find('\n');
    if (pos == std::string::npos || text.substr(0, pos + 1) != header)
      throw bfm::input_error(path.string() + ": not a report file (header mismatch)");
    any = true;
    std::size_t start = pos + 1;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string::npos) end = text.size();
      if (end > start) rows.insert(text.substr(start, end - start));
      start = end + 1;
    }
  }
  if (!any) throw bfm::input_error(dir + ": no report files found");
  std::string merged = header;
  for (const auto& r : rows) merged += r + "\n";
  if (out.empty())
    std::cout << merged;
  else
    bfm::write_text_file_atomic(out, merged);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"budget-feasible mechanism toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for all randomness")
      ->envname("BFM_SEED")
      ->capture_default_str();

  auto* gen = app.add_subcommand("gen", "generate an instance file");
  std::string gen_kind, gen_out;
  int gen_n = 4, gen_m = 3, gen_vmax = 4;
  gen->add_option("--kind", gen_kind, "generator id")->required();
  gen->add_option("--n", gen_n, "agents (edges/vertices for graph kinds)");
  gen->add_option("--m", gen_m, "clause count (xos)");
  gen->add_option("--vmax", gen_vmax, "value grid upper end");
  gen->add_option("--out", gen_out, "output file (default: stdout)");

  auto* run = app.add_subcommand("run", "run a mechanism and report");
  std::string run_mech, run_file, run_mode = "exact", run_out;
  long run_trials = 10000;
  run->add_option("--mech", run_mech, "mechanism id")->required();
  run->add_option("--instance", run_file, "instance file")->required();
  run->add_option("--mode", run_mode, "exact | mc");
  run->add_option("--trials", run_trials, "samples for mc mode");
  run->add_option("--out", run_out, "report file (default: stdout)");

  auto* verify = app.add_subcommand("verify", "probe a suite for violations");
  std::string verify_suite;
  verify->add_option("--suite", verify_suite, "suite name")->required();

  auto* gap = app.add_subcommand("gap", "integrality gap of an instance's valuation");
  std::string gap_file;
  gap->add_option("--instance", gap_file, "instance file")->required();

  auto* report = app.add_subcommand("report", "merge report files in a directory");
  std::string report_dir, report_out;
  report->add_option("--dir", report_dir, "directory of .csv reports")->required();
  report->add_option("--out", report_out, "merged output (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_kind, gen_n, gen_m, gen_vmax, seed, gen_out);
    if (run->parsed()) return cmd_run(run_mech, run_file, run_mode, run_trials, seed, run_out);
    if (verify->parsed()) return cmd_verify(verify_suite);
    if (gap->parsed()) return cmd_gap(gap_file);
    if (report->parsed()) return cmd_report(report_dir, report_out);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {  // input_error, capability_error, io
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
