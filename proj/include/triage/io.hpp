#ifndef TRIAGE_IO_HPP
#define TRIAGE_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace triage {

// Shortest round-trip decimal form of a double (locale-independent), so
// serialized numbers are byte-stable across runs and parse back exactly.
std::string fmt_double(double v);

std::string fmt_u64_hex(std::uint64_t v);

// One row of the ingestion CSV `episode_id,t_seconds[,score[,label]]`.
struct EventRecord {
  std::string episode_id;
  double t = 0.0;
  double score = -1.0;  // negative when the column is absent
  int label = -1;       // -1 when the column is absent
};

struct IngestStats {
  std::size_t rows = 0;
  std::size_t malformed = 0;        // skipped with a warning
  std::size_t clamped_scores = 0;   // scores pulled back into [0, 1]
  bool has_scores = false;
  bool has_labels = false;
};

// Reads an ingestion CSV. Header must contain episode_id and t_seconds;
// score and label columns are picked up when present, other columns are
// ignored. Malformed rows are counted and reported to `warn_stream` (pass
// nullptr to silence). Scores are clamped into [0, 1] and counted.
std::vector<EventRecord> read_event_csv(const std::string& path,
                                        IngestStats* stats,
                                        std::ostream* warn_stream);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace triage

#endif  // TRIAGE_IO_HPP
