#include "triage/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace triage {

std::string fmt_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_u64_hex(std::uint64_t v) {
  char buf[20];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, 16);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // Trim surrounding whitespace and a possible trailing CR.
    auto b = field.find_first_not_of(" \t\r");
    auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string()
                                         : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string& s, double* out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto res = std::from_chars(first, last, *out);
  return res.ec == std::errc() && res.ptr == last;
}

}  // namespace

std::vector<EventRecord> read_event_csv(const std::string& path,
                                        IngestStats* stats,
                                        std::ostream* warn_stream) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(path + ": empty file, expected a CSV header");
  }
  const auto header = split_csv_line(line);
  auto col = [&header](const std::string& name) -> int {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  };
  const int c_ep = col("episode_id");
  const int c_t = col("t_seconds");
  const int c_score = col("score");
  const int c_label = col("label");
  if (c_ep < 0 || c_t < 0) {
    throw std::runtime_error(path +
                             ": header must contain episode_id,t_seconds");
  }

  IngestStats local;
  local.has_scores = c_score >= 0;
  local.has_labels = c_label >= 0;

  std::vector<EventRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    ++local.rows;

    EventRecord rec;
    bool ok = static_cast<int>(fields.size()) >
              std::max({c_ep, c_t, c_score, c_label});
    if (ok) {
      rec.episode_id = fields[static_cast<std::size_t>(c_ep)];
      ok = parse_double(fields[static_cast<std::size_t>(c_t)], &rec.t) &&
           !rec.episode_id.empty();
    }
    if (ok && c_score >= 0) {
      ok = parse_double(fields[static_cast<std::size_t>(c_score)], &rec.score);
      if (ok && (rec.score < 0.0 || rec.score > 1.0)) {
        rec.score = std::clamp(rec.score, 0.0, 1.0);
        ++local.clamped_scores;
      }
    }
    if (ok && c_label >= 0) {
      double v;
      ok = parse_double(fields[static_cast<std::size_t>(c_label)], &v) &&
           (v == 0.0 || v == 1.0);
      if (ok) rec.label = static_cast<int>(v);
    }

    if (!ok) {
      ++local.malformed;
      if (warn_stream) {
        *warn_stream << path << ":" << line_no << ": malformed row skipped\n";
      }
      continue;
    }
    out.push_back(std::move(rec));
  }
  if (stats) *stats = local;
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace triage
