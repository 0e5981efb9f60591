// gaugecount: exact dimension of the gauge-invariant subspace of finite-group
// lattice gauge theories.
//
// Exit codes: 0 success, 2 invalid input (including I/O and budget errors),
// 3 non-integral class sum, 4 formula/oracle mismatch, 1 anything else.

#include "gaugecount/cli_io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace gaugecount;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kInvalid = 2;
constexpr int kNonIntegral = 3;
constexpr int kMismatch = 4;

struct CommonFlags {
  std::string config;
  std::string out;
  std::string format;
  bool force = false;
  bool no_timestamp = false;
  std::size_t threads = 0;
  std::uint64_t budget = 0;
};

void add_output_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--out", f.out, "Write the report here instead of stdout");
  cmd->add_option("--format", f.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_flag("--force", f.force, "Overwrite an existing output file");
  cmd->add_flag("--no-timestamp", f.no_timestamp, "Omit the timestamp field for byte-identical reports");
}

void emit(const nlohmann::json& report, const CommonFlags& f, std::optional<fs::path> config_out, OutputFormat config_format) {
  const OutputFormat format = f.format.empty() ? config_format : parse_output_format(f.format);
  const auto text = render(report, format);
  std::optional<fs::path> path = config_out;
  if (!f.out.empty()) path = fs::path(f.out);
  if (path) {
    write_output(*path, text, f.force);
  } else {
    std::cout << text;
  }
}

Job load(const CommonFlags& f) {
  auto job = load_job_file(f.config);
  if (f.threads > 0) job.threads = f.threads;
  if (f.budget > 0) job.budget = f.budget;
  return job;
}

int cmd_count(const CommonFlags& f, bool corrupt) {
  const auto job = load(f);
  const auto out = run_count(job, corrupt);
  emit(count_report_json(job, out, f.no_timestamp ? "" : utc_timestamp()), f, job.output_path, job.format);
  return kOk;
}

int cmd_verify(const CommonFlags& f, std::int64_t fault) {
  const auto job = load(f);
  const auto out = run_verify(job, fault);
  emit(verify_report_json(job, out, f.no_timestamp ? "" : utc_timestamp()), f, job.output_path, job.format);
  if (!out.match) {
    std::cerr << "mismatch: formula " << out.formula_total << ", oracle " << out.oracle_total << "\n";
    return kMismatch;
  }
  return kOk;
}

int cmd_group_info(const CommonFlags& f, const std::string& family, const std::vector<std::int64_t>& params,
                   const std::string& group_file) {
  GroupRef g;
  if (!group_file.empty()) {
    g = parse_cayley_table(read_text_file(group_file));
  } else if (!family.empty()) {
    g = builtin_group(GroupSpec{parse_group_family(family), params, {}});
  } else if (!f.config.empty()) {
    const auto text = read_text_file(f.config);
    nlohmann::json config;
    try {
      config = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorKind::ParseError, f.config + ": " + e.what());
    }
    const fs::path base = fs::path(f.config).parent_path();
    if (!config.contains("group")) fail(ErrorKind::InvalidConfig, "config: missing 'group'");
    g = load_group(config.at("group"), base.empty() ? fs::path(".") : base);
  } else {
    fail(ErrorKind::InvalidConfig, "group-info needs --group, --group-file or --config");
  }
  const auto report = automorphism_report(g, f.budget > 0 ? f.budget : kDefaultAutBudget);
  emit(group_info_json(g, report, f.no_timestamp ? "" : utc_timestamp()), f, std::nullopt, OutputFormat::json);
  return kOk;
}

int cmd_lattice_make(const CommonFlags& f, const std::vector<std::uint32_t>& dims, std::vector<int> periodic, bool open) {
  if (periodic.empty()) periodic.assign(dims.size(), open ? 0 : 1);
  if (periodic.size() != dims.size()) fail(ErrorKind::BadDims, "--periodic needs one flag per dimension");
  const std::unique_ptr<bool[]> flags(new bool[dims.size() + 1]);
  for (std::size_t k = 0; k < dims.size(); ++k) flags[k] = periodic[k] != 0;
  const auto l = lattice_hypercubic(dims, std::span<const bool>(flags.get(), dims.size()));
  const auto text = emit_edge_list(l);
  if (f.out.empty()) {
    std::cout << text;
  } else {
    write_output(f.out, text, f.force);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counts of gauge-invariant states for finite-group lattice gauge theories"};
  app.require_subcommand(1);

  CommonFlags count_flags;
  auto* count = app.add_subcommand("count", "Evaluate the class-sum formula for a job");
  count->add_option("--config", count_flags.config, "Job config (JSON)")->required();
  count->add_option("--threads", count_flags.threads, "Worker threads");
  count->add_option("--budget", count_flags.budget, "Accepted for symmetry with verify; unused");
  bool corrupt = false;
  count->add_flag("--inject-fault", corrupt, "Test hook: use a corrupted site character")->group("");
  add_output_flags(count, count_flags);

  CommonFlags verify_flags;
  std::int64_t fault = 0;
  auto* verify = app.add_subcommand("verify", "Compare the formula with the brute-force oracle");
  verify->add_option("--config", verify_flags.config, "Job config (JSON)")->required();
  verify->add_option("--threads", verify_flags.threads, "Worker threads");
  verify->add_option("--budget", verify_flags.budget, "Oracle budget: max |G|^V (E + V)");
  verify->add_option("--inject-fault", fault, "Test hook: offset the formula total")->group("");
  add_output_flags(verify, verify_flags);

  CommonFlags info_flags;
  std::string family;
  std::string group_file;
  std::vector<std::int64_t> params;
  auto* info = app.add_subcommand("group-info", "Orders, classes and (quasi-)ambivalence of a group");
  info->add_option("--group", family, "Builtin family, e.g. binary_tetrahedral");
  info->add_option("--params", params, "Family parameters")->delimiter(',');
  info->add_option("--group-file", group_file, "Cayley table file");
  info->add_option("--config", info_flags.config, "Take the group from a job config");
  info->add_option("--budget", info_flags.budget, "Automorphism search budget (nodes)");
  add_output_flags(info, info_flags);

  CommonFlags lattice_flags;
  std::vector<std::uint32_t> dims;
  std::vector<int> periodic;
  bool open = false;
  auto* lattice = app.add_subcommand("lattice-make", "Write a hypercubic lattice as an edge list");
  lattice->add_option("--dims", dims, "Extents, e.g. 2,2")->delimiter(',')->required();
  lattice->add_option("--periodic", periodic, "Per-dimension 0/1 flags (default: all periodic)")->delimiter(',');
  lattice->add_flag("--open", open, "All dimensions open");
  lattice->add_option("--out", lattice_flags.out, "Output path (default stdout)");
  lattice->add_flag("--force", lattice_flags.force, "Overwrite an existing output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*count) return cmd_count(count_flags, corrupt);
    if (*verify) return cmd_verify(verify_flags, fault);
    if (*info) return cmd_group_info(info_flags, family, params, group_file);
    if (*lattice) return cmd_lattice_make(lattice_flags, dims, periodic, open);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::NonIntegralResult ? kNonIntegral : kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
