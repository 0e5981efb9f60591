#pragma once

#include "gaugecount/automorphisms.hpp"
#include "gaugecount/counting.hpp"
#include "gaugecount/group.hpp"
#include "gaugecount/lattice.hpp"
#include "gaugecount/matter.hpp"
#include "gaugecount/oracle.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace gaugecount {

enum class OutputFormat { json, csv, text };

OutputFormat parse_output_format(std::string_view name);

/// A job document resolved into library objects. Relative file paths are
/// taken against the directory of the config file.
struct Job {
  GroupRef group;
  std::optional<GroupSpec> group_spec;  // builtin groups only
  LatticeGraph lattice;
  MatterSpec matter = NoMatter{};
  bool parity_split = false;
  std::optional<TwistSpec> twist;
  std::optional<std::filesystem::path> output_path;
  OutputFormat format = OutputFormat::json;
  std::uint64_t budget = OracleOptions{}.budget;
  std::size_t threads = 1;
  /// FNV-1a of the canonical config dump, stable across runs.
  std::string fingerprint;
};

/// Throws ParseError for malformed JSON and InvalidConfig for bad structure.
Job load_job(const nlohmann::json& config, const std::filesystem::path& base_dir = ".");
Job load_job_file(const std::filesystem::path& path);

GroupRef load_group(const nlohmann::json& spec, const std::filesystem::path& base_dir,
                    std::optional<GroupSpec>* builtin_out = nullptr);

/// Formula result of a job. `parity` is set when the job asks for the split.
struct CountOutcome {
  CountReport report;
  std::optional<ParitySplit> parity;
  BigInt total_dim;
};

/// `corrupt_character` swaps in a deliberately broken site character
/// (negative control for the integrality check).
CountOutcome run_count(const Job& job, bool corrupt_character = false);

struct VerifyOutcome {
  BigInt formula_total;
  BigInt oracle_total;
  bool oracle_exact = true;
  bool match = false;
};

/// `fault_offset` perturbs the formula total before comparison (negative control).
VerifyOutcome run_verify(const Job& job, std::int64_t fault_offset = 0);

/// Report documents; `timestamp` is omitted when empty.
nlohmann::json count_report_json(const Job& job, const CountOutcome& out, const std::string& timestamp);
nlohmann::json verify_report_json(const Job& job, const VerifyOutcome& out, const std::string& timestamp);
nlohmann::json group_info_json(const GroupRef& g, const AutReport& report, const std::string& timestamp);

/// Flattens a report document into the requested format.
std::string render(const nlohmann::json& report, OutputFormat format);

/// Writes text to path, refusing to overwrite unless `force`; throws IoError.
void write_output(const std::filesystem::path& path, const std::string& text, bool force);

std::string read_text_file(const std::filesystem::path& path);

std::string utc_timestamp();

}  // namespace gaugecount
