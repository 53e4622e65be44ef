#include "farofangs/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "farofangs/error.hpp"
#include "farofangs/rng.hpp"

namespace farofangs::io {

namespace {

using nlohmann::json;

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

bool is_space(char c) { return c == ' ' || c == '\t'; }

std::vector<Token> split_whitespace(std::string_view line) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && is_space(line[pos])) ++pos;
    if (pos >= line.size()) break;
    const std::size_t start = pos;
    while (pos < line.size() && !is_space(line[pos])) ++pos;
    out.push_back({line.substr(start, pos - start), start + 1});
  }
  return out;
}

// Line splitter tracking 1-based line numbers; strips a trailing '\r'.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    const std::size_t end = text_.find('\n', pos_);
    const std::size_t stop = end == std::string_view::npos ? text_.size() : end;
    line = text_.substr(pos_, stop - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = stop + 1;
    ++number_;
    return true;
  }

  std::size_t number() const { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

bool is_blank(std::string_view line) {
  for (char c : line)
    if (!is_space(c)) return false;
  return true;
}

bool is_comment(std::string_view line) {
  for (char c : line) {
    if (is_space(c)) continue;
    return c == '#';
  }
  return false;
}

std::size_t parse_count(const Token& t, const std::string& source,
                        std::size_t line, const char* what) {
  std::size_t value = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(source, line, t.column,
                     std::string("expected a non-negative integer ") + what +
                         ", found '" + std::string(t.text) + "'");
  }
  return value;
}

struct PendingMatrix {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t header_line = 0;
  std::vector<std::vector<int>> rows;
};

FeatureAllocation build(const PendingMatrix& m) {
  if (m.k == 0) return FeatureAllocation(m.n, 0);
  return FeatureAllocation::from_rows(m.rows);
}

json matrix_rows_json(const FeatureAllocation& z) {
  json rows = json::array();
  for (const auto& r : z.to_rows()) rows.push_back(r);
  return rows;
}

}  // namespace

SampleSet parse_samples_text(std::string_view text,
                             const std::string& source) {
  LineReader reader(text);
  std::vector<FeatureAllocation> out;
  std::string_view line;
  std::optional<PendingMatrix> current;
  std::size_t first_n = 0;

  const auto finish = [&](PendingMatrix& m) {
    if (!out.empty() && m.n != first_n) {
      throw ParseError(source, m.header_line, 1,
                       "matrix " + std::to_string(out.size() + 1) + " has n = " +
                           std::to_string(m.n) + " but matrix 1 has n = " +
                           std::to_string(first_n));
    }
    if (out.empty()) first_n = m.n;
    out.push_back(build(m));
  };

  while (reader.next(line)) {
    const std::size_t ln = reader.number();
    if (is_comment(line)) continue;

    if (current && current->rows.size() < current->n && current->k > 0) {
      if (is_blank(line)) {
        throw ParseError(source, ln, 1,
                         "matrix " + std::to_string(out.size() + 1) +
                             " declares " + std::to_string(current->n) +
                             " rows but only " +
                             std::to_string(current->rows.size()) +
                             " precede this blank line");
      }
      const auto tokens = split_whitespace(line);
      std::vector<int> row;
      row.reserve(current->k);
      for (const auto& t : tokens) {
        if (row.size() == current->k) {
          throw ParseError(source, ln, t.column,
                           "row has more than the declared " +
                               std::to_string(current->k) + " entries");
        }
        if (t.text == "0") {
          row.push_back(0);
        } else if (t.text == "1") {
          row.push_back(1);
        } else {
          throw ParseError(source, ln, t.column,
                           "expected 0 or 1, found '" + std::string(t.text) +
                               "'");
        }
      }
      if (row.size() < current->k) {
        throw ParseError(source, ln, line.size() + 1,
                         "row has " + std::to_string(row.size()) +
                             " entries, expected " +
                             std::to_string(current->k));
      }
      current->rows.push_back(std::move(row));
      if (current->rows.size() == current->n) {
        finish(*current);
        current.reset();
      }
      continue;
    }

    if (is_blank(line)) continue;

    // Header line.
    const auto tokens = split_whitespace(line);
    if (tokens.size() != 2) {
      const std::size_t col = tokens.size() > 2 ? tokens[2].column : 1;
      throw ParseError(source, ln, col,
                       "expected a header 'n k', found '" + std::string(line) +
                           "'");
    }
    PendingMatrix m;
    m.header_line = ln;
    m.n = parse_count(tokens[0], source, ln, "row count");
    m.k = parse_count(tokens[1], source, ln, "column count");
    if (m.n == 0) {
      throw ParseError(source, ln, tokens[0].column,
                       "a matrix needs at least one row");
    }
    if (m.k == 0) {
      finish(m);
    } else {
      current = std::move(m);
    }
  }

  if (current) {
    throw ParseError(source, reader.number() + 1, 1,
                     "end of input inside matrix " +
                         std::to_string(out.size() + 1) + ": expected " +
                         std::to_string(current->n) + " rows, found " +
                         std::to_string(current->rows.size()));
  }
  if (out.empty()) {
    throw ParseError(source, reader.number() + 1, 1, "no matrices found");
  }
  return SampleSet(std::move(out));
}

SampleSet parse_samples(const std::filesystem::path& path) {
  return parse_samples_text(read_file(path), path.string());
}

FeatureAllocation parse_csv_text(std::string_view text,
                                 const std::string& source) {
  LineReader reader(text);
  std::string_view line;
  std::vector<std::vector<int>> rows;
  while (reader.next(line)) {
    const std::size_t ln = reader.number();
    if (is_blank(line) || is_comment(line)) continue;
    std::vector<int> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::size_t stop =
          comma == std::string_view::npos ? line.size() : comma;
      std::string_view field = line.substr(start, stop - start);
      std::size_t lead = 0;
      while (lead < field.size() && is_space(field[lead])) ++lead;
      field.remove_prefix(lead);
      while (!field.empty() && is_space(field.back())) field.remove_suffix(1);
      if (field == "0" || field == "1") {
        row.push_back(field == "1" ? 1 : 0);
      } else {
        throw ParseError(source, ln, start + lead + 1,
                         "expected 0 or 1, found '" + std::string(field) + "'");
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(source, ln, 1,
                       "row has " + std::to_string(row.size()) +
                           " fields, expected " +
                           std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw ParseError(source, reader.number() + 1, 1, "no rows found");
  }
  return FeatureAllocation::from_rows(rows);
}

FeatureAllocation parse_csv(const std::filesystem::path& path) {
  return parse_csv_text(read_file(path), path.string());
}

std::string format_faz(const FeatureAllocation& z) {
  std::string out = std::to_string(z.rows()) + " " + std::to_string(z.cols()) +
                    "\n";
  if (z.cols() == 0) return out;
  out.reserve(out.size() + z.rows() * z.cols() * 2);
  for (std::size_t i = 0; i < z.rows(); ++i) {
    for (std::size_t j = 0; j < z.cols(); ++j) {
      if (j > 0) out.push_back(' ');
      out.push_back(z.get(i, j) ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

std::string format_faz(const SampleSet& samples) {
  std::string out;
  for (std::size_t b = 0; b < samples.size(); ++b) {
    if (b > 0) out.push_back('\n');
    out += format_faz(samples[b]);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error("error reading " + path.string());
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("error writing " + path.string());
}

ResultDocument make_document(const SearchResult& result,
                             const SearchConfig& cfg, unsigned threads) {
  ResultDocument doc;
  doc.subcommand = "estimate";
  doc.a = cfg.a;
  doc.n_init = cfg.n_init;
  doc.n_sweet = cfg.n_sweet;
  doc.n_iter = cfg.n_iter;
  doc.seed = cfg.seed;
  doc.estimate = result.estimate;
  doc.expected_loss = result.expected_loss;
  doc.baseline_losses = result.baseline_losses;
  doc.trace = result.traces;
  doc.n_accepted_flips = result.n_accepted_flips;
  doc.threads = threads;
  doc.wall_seconds = result.seconds;
  return doc;
}

std::string to_json(const ResultDocument& doc) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["subcommand"] = doc.subcommand;

  json config;
  config["a"] = doc.a;
  if (doc.n_init) config["n_init"] = *doc.n_init;
  if (doc.n_sweet) config["n_sweet"] = *doc.n_sweet;
  if (doc.n_iter) config["n_iter"] = *doc.n_iter;
  if (doc.seed) config["seed"] = *doc.seed;
  j["config"] = config;

  j["estimate"] = {{"n", doc.estimate.rows()},
                   {"k", doc.estimate.cols()},
                   {"rows", matrix_rows_json(doc.estimate)},
                   {"faz", format_faz(doc.estimate)}};
  j["expected_loss"] = doc.expected_loss;
  if (doc.draw_index) j["draw_index"] = *doc.draw_index;
  if (doc.baseline_losses) j["baseline_losses"] = *doc.baseline_losses;
  if (doc.n_accepted_flips) j["n_accepted_flips"] = *doc.n_accepted_flips;
  if (doc.trace) {
    json chains = json::array();
    for (const auto& chain : *doc.trace) {
      json points = json::array();
      for (const auto& tp : chain)
        points.push_back(
            {{"iteration", tp.iteration}, {"expected_loss", tp.expected_loss}});
      chains.push_back(points);
    }
    j["trace"] = chains;
  }
  j["runtime"] = {{"threads", doc.threads},
                  {"wall_seconds", doc.wall_seconds}};
  return j.dump(2) + "\n";
}

FeatureAllocation estimate_from_json(std::string_view json_text) {
  const json j = json::parse(json_text);
  const auto& est = j.at("estimate");
  const SampleSet parsed =
      parse_samples_text(est.at("faz").get<std::string>(), "<estimate>");
  if (parsed.size() != 1) {
    throw Error("estimate block holds " + std::to_string(parsed.size()) +
                " matrices");
  }
  const FeatureAllocation& z = parsed[0];
  const auto rows = est.at("rows").get<std::vector<std::vector<int>>>();
  if (z.cols() > 0 && FeatureAllocation::from_rows(rows) != z) {
    throw Error("estimate rows disagree with the embedded FAZ block");
  }
  return z;
}

SampleSet generate_synthetic(const FeatureAllocation& truth,
                             const SyntheticConfig& cfg) {
  if (cfg.samples == 0) throw ConfigError("need at least one sample");
  if (!(cfg.flip_prob >= 0.0 && cfg.flip_prob <= 1.0)) {
    throw ConfigError("flip probability must lie in [0, 1]");
  }
  if (!(cfg.extra_density >= 0.0 && cfg.extra_density <= 1.0)) {
    throw ConfigError("extra-column density must lie in [0, 1]");
  }
  std::vector<FeatureAllocation> out;
  out.reserve(cfg.samples);
  for (std::size_t b = 0; b < cfg.samples; ++b) {
    Rng rng = Rng::substream(cfg.seed, Stream::kSynthetic, b);
    const std::size_t extra =
        cfg.max_extra_columns == 0 ? 0 : rng.below(cfg.max_extra_columns + 1);
    FeatureAllocation z = augment(truth, truth.cols() + extra);
    for (std::size_t j = 0; j < truth.cols(); ++j)
      for (std::size_t i = 0; i < z.rows(); ++i)
        if (rng.bernoulli(cfg.flip_prob)) z.flip(i, j);
    for (std::size_t j = truth.cols(); j < z.cols(); ++j)
      for (std::size_t i = 0; i < z.rows(); ++i)
        if (rng.bernoulli(cfg.extra_density)) z.set(i, j, true);
    out.push_back(std::move(z));
  }
  return SampleSet(std::move(out));
}

FeatureAllocation random_truth(std::size_t n, std::size_t k,
                               std::uint64_t seed) {
  if (n < 64 && k >= (std::uint64_t{1} << n)) {
    throw ConfigError("cannot draw " + std::to_string(k) +
                      " distinct non-zero columns of length " +
                      std::to_string(n));
  }
  Rng rng = Rng::substream(seed, Stream::kSynthetic,
                           ~std::uint64_t{0});  // apart from sample streams
  FeatureAllocation z(n, 0);
  while (z.cols() < k) {
    FeatureAllocation col(n, 1);
    for (std::size_t i = 0; i < n; ++i) col.set(i, 0, rng.next() & 1U);
    if (col.column_is_zero(0)) continue;
    bool duplicate = false;
    for (std::size_t j = 0; j < z.cols() && !duplicate; ++j)
      duplicate = std::equal(z.column(j).begin(), z.column(j).end(),
                             col.column(0).begin());
    if (!duplicate) z.append_column(col, 0);
  }
  return z;
}

}  // namespace farofangs::io
