#include "schedfree/trace_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"

using namespace schedfree;

namespace {

TraceRecord sample_row(std::uint64_t t, bool with_optionals) {
  TraceRecord r;
  r.t = t;
  r.eta = 0.625;
  r.gamma = 0.1 * static_cast<double>(t + 1);
  r.c = 1.0 / static_cast<double>(t + 2);
  r.loss = 1.0 / (1.0 + static_cast<double>(t));
  r.grad_norm = 0.33;
  if (with_optionals) {
    r.bound = 2.5;
    r.stepsize_raw = 0.77;
  }
  return r;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path((std::filesystem::temp_directory_path() / name).string()) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("single line: fixed key order, nulls for absent optionals") {
  const std::string line = trace_line_json(sample_row(3, false));
  CHECK(line ==
        "{\"t\":3,\"eta\":0.625,\"gamma\":0.4,\"c\":0.2,\"loss\":0.25,"
        "\"grad_norm\":0.33,\"bound\":null,\"stepsize_raw\":null}");

  const std::string full = trace_line_json(sample_row(0, true));
  CHECK(full.find("\"bound\":2.5") != std::string::npos);
  CHECK(full.find("\"stepsize_raw\":0.77") != std::string::npos);
  // Key order is positional, not alphabetical.
  CHECK(full.find("\"t\":") < full.find("\"eta\":"));
  CHECK(full.find("\"eta\":") < full.find("\"gamma\":"));
  CHECK(full.find("\"grad_norm\":") < full.find("\"bound\":"));
}

TEST_CASE("round-trip preserves every field") {
  TempFile tmp("schedfree_trace_roundtrip.jsonl");
  std::vector<TraceRecord> trace;
  for (std::uint64_t t = 0; t < 16; ++t) {
    trace.push_back(sample_row(t, t % 2 == 0));
  }
  write_trace_jsonl(tmp.path, trace);
  auto back = read_trace_jsonl(tmp.path);
  REQUIRE(back.size() == trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    CHECK(back[i].t == trace[i].t);
    CHECK(back[i].eta == trace[i].eta);
    CHECK(back[i].gamma == trace[i].gamma);
    CHECK(back[i].c == trace[i].c);
    CHECK(back[i].loss == trace[i].loss);
    CHECK(back[i].grad_norm == trace[i].grad_norm);
    CHECK(back[i].bound == trace[i].bound);
    CHECK(back[i].stepsize_raw == trace[i].stepsize_raw);
  }
}

TEST_CASE("round-trip survives extreme doubles exactly") {
  TraceRecord r = sample_row(1, true);
  r.loss = 0.1 + 0.2;             // classic non-representable sum
  r.gamma = 1e-300;
  r.grad_norm = 12345.678901234567;
  r.bound = 3.0000000000000004;
  auto back = trace_from_json_line(trace_line_json(r), 1);
  CHECK(back.loss == r.loss);
  CHECK(back.gamma == r.gamma);
  CHECK(back.grad_norm == r.grad_norm);
  CHECK(back.bound == r.bound);
}

TEST_CASE("reader: malformed line reports its 1-based number") {
  TempFile tmp("schedfree_trace_badline.jsonl");
  {
    std::ofstream out(tmp.path);
    out << trace_line_json(sample_row(0, false)) << "\n";
    out << "this is not json\n";
  }
  try {
    read_trace_jsonl(tmp.path);
    FAIL("expected trace_parse_error");
  } catch (const trace_parse_error& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("reader: missing required key is rejected by name") {
  const std::string no_grad =
      "{\"t\":0,\"eta\":1.0,\"gamma\":1.0,\"c\":0.5,\"loss\":0.1,"
      "\"bound\":null,\"stepsize_raw\":null}";
  try {
    trace_from_json_line(no_grad, 7);
    FAIL("expected trace_parse_error");
  } catch (const trace_parse_error& e) {
    CHECK(e.line == 7);
    CHECK(std::string(e.what()).find("grad_norm") != std::string::npos);
  }

  const std::string bad_t =
      "{\"t\":-3,\"eta\":1.0,\"gamma\":1.0,\"c\":0.5,\"loss\":0.1,"
      "\"grad_norm\":1.0,\"bound\":null,\"stepsize_raw\":null}";
  CHECK_THROWS_AS(trace_from_json_line(bad_t, 1), trace_parse_error);

  const std::string not_object = "[1,2,3]";
  CHECK_THROWS_AS(trace_from_json_line(not_object, 1), trace_parse_error);
}

TEST_CASE("reader: missing file raises a plain runtime error") {
  CHECK_THROWS_AS(read_trace_jsonl("/nonexistent/path/trace.jsonl"),
                  std::runtime_error);
}

TEST_CASE("writer: identical traces produce byte-identical files") {
  TempFile a("schedfree_trace_bytes_a.jsonl");
  TempFile b("schedfree_trace_bytes_b.jsonl");
  std::vector<TraceRecord> trace;
  for (std::uint64_t t = 0; t < 32; ++t) {
    trace.push_back(sample_row(t, true));
  }
  write_trace_jsonl(a.path, trace);
  write_trace_jsonl(b.path, trace);
  std::ifstream fa(a.path, std::ios::binary);
  std::ifstream fb(b.path, std::ios::binary);
  std::string ca((std::istreambuf_iterator<char>(fa)),
                 std::istreambuf_iterator<char>());
  std::string cb((std::istreambuf_iterator<char>(fb)),
                 std::istreambuf_iterator<char>());
  CHECK(ca == cb);
  CHECK(!ca.empty());
}
