// JSON-lines persistence for run traces.
//
// One record per line with the fixed key order
//   t, eta, gamma, c, loss, grad_norm, bound, stepsize_raw
// where the last two are null when absent. Writing is deterministic
// (shortest round-tripping number form), so identical runs produce
// byte-identical files.
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "schedfree/core.hpp"

namespace schedfree {

/// Raised by the reader for a line that is not valid JSON or lacks a
/// required key; `line` is 1-based.
struct trace_parse_error : std::runtime_error {
  std::size_t line;
  trace_parse_error(std::size_t line_no, const std::string& what_arg)
      : std::runtime_error("trace line " + std::to_string(line_no) + ": " +
                           what_arg),
        line(line_no) {}
};

/// Serializes one record to a single JSON line (no trailing newline).
std::string trace_line_json(const TraceRecord& row);

/// Parses one line; line_no is used for error reporting only.
TraceRecord trace_from_json_line(const std::string& line, std::size_t line_no);

/// Writes the whole trace to `path`, one line per record. Throws
/// std::runtime_error when the file cannot be written.
void write_trace_jsonl(const std::string& path,
                       std::span<const TraceRecord> trace);

/// Reads a JSONL trace back; empty lines are not tolerated (every line must
/// be a record). Throws std::runtime_error when the file cannot be opened
/// and trace_parse_error for malformed content.
std::vector<TraceRecord> read_trace_jsonl(const std::string& path);

}  // namespace schedfree
