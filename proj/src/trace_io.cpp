#include "schedfree/trace_io.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

namespace schedfree {

namespace {

using ordered_json = nlohmann::ordered_json;

double require_number(const ordered_json& obj, const char* key,
                      std::size_t line_no) {
  if (!obj.contains(key)) {
    throw trace_parse_error(line_no,
                            std::string("missing key '") + key + "'");
  }
  const auto& v = obj.at(key);
  if (!v.is_number()) {
    throw trace_parse_error(line_no,
                            std::string("key '") + key + "' is not a number");
  }
  return v.get<double>();
}

}  // namespace

std::string trace_line_json(const TraceRecord& row) {
  ordered_json obj;
  obj["t"] = row.t;
  obj["eta"] = row.eta;
  obj["gamma"] = row.gamma;
  obj["c"] = row.c;
  obj["loss"] = row.loss;
  obj["grad_norm"] = row.grad_norm;
  if (row.bound.has_value()) {
    obj["bound"] = *row.bound;
  } else {
    obj["bound"] = nullptr;
  }
  if (row.stepsize_raw.has_value()) {
    obj["stepsize_raw"] = *row.stepsize_raw;
  } else {
    obj["stepsize_raw"] = nullptr;
  }
  return obj.dump();
}

TraceRecord trace_from_json_line(const std::string& line,
                                 std::size_t line_no) {
  ordered_json obj;
  try {
    obj = ordered_json::parse(line);
  } catch (const ordered_json::parse_error& e) {
    throw trace_parse_error(line_no, std::string("not valid JSON: ") +
                                         e.what());
  }
  if (!obj.is_object()) {
    throw trace_parse_error(line_no, "not a JSON object");
  }

  TraceRecord row;
  if (!obj.contains("t")) {
    throw trace_parse_error(line_no, "missing key 't'");
  }
  if (!obj.at("t").is_number_unsigned()) {
    throw trace_parse_error(line_no,
                            "key 't' is not a nonnegative integer");
  }
  row.t = obj.at("t").get<std::uint64_t>();
  row.eta = require_number(obj, "eta", line_no);
  row.gamma = require_number(obj, "gamma", line_no);
  row.c = require_number(obj, "c", line_no);
  row.loss = require_number(obj, "loss", line_no);
  row.grad_norm = require_number(obj, "grad_norm", line_no);
  for (const char* key : {"bound", "stepsize_raw"}) {
    if (!obj.contains(key)) {
      throw trace_parse_error(line_no,
                              std::string("missing key '") + key + "'");
    }
    const auto& v = obj.at(key);
    if (v.is_null()) {
      continue;
    }
    if (!v.is_number()) {
      throw trace_parse_error(
          line_no, std::string("key '") + key + "' is not a number or null");
    }
    if (std::string(key) == "bound") {
      row.bound = v.get<double>();
    } else {
      row.stepsize_raw = v.get<double>();
    }
  }
  return row;
}

void write_trace_jsonl(const std::string& path,
                       std::span<const TraceRecord> trace) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open trace file for writing: " + path);
  }
  for (const TraceRecord& row : trace) {
    out << trace_line_json(row) << '\n';
  }
  if (!out) {
    throw std::runtime_error("failed while writing trace file: " + path);
  }
}

std::vector<TraceRecord> read_trace_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open trace file for reading: " + path);
  }
  std::vector<TraceRecord> trace;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    line_no += 1;
    trace.push_back(trace_from_json_line(line, line_no));
  }
  return trace;
}

}  // namespace schedfree
