#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qtool {

/// 17 significant digits: round-trips any double exactly through text.
std::string fmt17(double v);

/// 4 significant digits for human-facing summaries.
std::string fmt4(double v);

/// Parses "a,b,c" as an explicit list or "logspace:LO:HI:N" as N log-spaced
/// points (inclusive endpoints). Throws std::runtime_error on bad syntax.
std::vector<double> parse_grid(const std::string& spec);

/// Writes the standard artifact preamble: tool version, a canonical
/// re-runnable invocation (output path omitted), and the master seed.
void write_preamble(std::ostream& os, const std::string& invocation,
                    std::uint64_t seed);

/// Returns the seed if given, otherwise draws one from the OS entropy pool.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed);

/// Output sink: file when path nonempty (LF line endings), else stdout.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path);
  ~OutputSink();
  OutputSink(const OutputSink&) = delete;
  OutputSink& operator=(const OutputSink&) = delete;
  std::ostream& stream();

 private:
  struct Impl;
  Impl* impl_;
};

}  // namespace qtool
