#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "farofangs/fangs.hpp"
#include "farofangs/matrix.hpp"

namespace farofangs::io {

inline constexpr std::string_view kToolName = "farofangs";
inline constexpr std::string_view kToolVersion = "0.1.0";

// FAZ v1 text format
//
//   # comment lines may appear anywhere
//   n k                  header: rows, columns
//   r_1                  n lines of k space-separated 0/1 tokens
//   ...
//   <blank line(s)>      separate consecutive matrices
//
// A k = 0 matrix is a header with no data lines. Every matrix in a file
// must have the same n.

/// Parses FAZ v1 text. `source` names the input in error messages.
/// Throws ParseError (with line and column) on any malformed input.
SampleSet parse_samples_text(std::string_view text,
                             const std::string& source = "<input>");

/// Reads and parses a FAZ v1 file.
SampleSet parse_samples(const std::filesystem::path& path);

/// One matrix as comma-separated 0/1 rows (blank lines and `#` comments
/// ignored). Used by the `--csv` import path.
FeatureAllocation parse_csv_text(std::string_view text,
                                 const std::string& source = "<input>");
FeatureAllocation parse_csv(const std::filesystem::path& path);

/// FAZ v1 block for one matrix: header line then rows, newline-terminated.
std::string format_faz(const FeatureAllocation& z);
/// Matrices separated by single blank lines.
std::string format_faz(const SampleSet& samples);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Serialized outcome of the estimate, draws and sifa commands.
struct ResultDocument {
  std::string subcommand;
  double a = 1.0;
  // Search settings; absent for commands that do not use them.
  std::optional<std::size_t> n_init;
  std::optional<std::size_t> n_sweet;
  std::optional<std::size_t> n_iter;
  std::optional<std::uint64_t> seed;
  FeatureAllocation estimate;
  double expected_loss = 0.0;
  std::optional<std::size_t> draw_index;
  std::optional<std::vector<double>> baseline_losses;
  std::optional<std::vector<std::vector<TracePoint>>> trace;
  std::optional<std::size_t> n_accepted_flips;
  // Run-dependent values live together under "runtime" so that golden
  // comparisons can drop that single key.
  unsigned threads = 1;
  double wall_seconds = 0.0;
};

ResultDocument make_document(const SearchResult& result,
                             const SearchConfig& cfg, unsigned threads);

/// Canonical JSON (sorted keys, two-space indent, trailing newline).
std::string to_json(const ResultDocument& doc);

/// Extracts the estimate from a document produced by to_json, via its
/// embedded FAZ block, and checks it against the array form.
FeatureAllocation estimate_from_json(std::string_view json_text);

/// Settings for synthetic posterior-like sample sets.
struct SyntheticConfig {
  std::size_t samples = 100;
  double flip_prob = 0.05;  // independent per-entry flip of the truth
  // Each sample gains U{0..max_extra_columns} extra columns whose
  // entries are 1 with probability extra_density.
  std::size_t max_extra_columns = 0;
  double extra_density = 0.1;
  std::uint64_t seed = 0;
};

SampleSet generate_synthetic(const FeatureAllocation& truth,
                             const SyntheticConfig& cfg);

/// Random n x k truth with distinct, non-zero columns (density 1/2).
FeatureAllocation random_truth(std::size_t n, std::size_t k,
                               std::uint64_t seed);

}  // namespace farofangs::io
