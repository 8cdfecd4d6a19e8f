#pragma once

#include "drg/json_io.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace drg::cli {

enum class Format { Json, Text, Csv };

struct JobRequest {
  std::string command;
  std::string family;
  std::optional<double> x;
  std::string method = "bochner";
  std::optional<std::size_t> trunc;
  std::optional<std::size_t> radius;
  std::optional<double> tolerance;
  std::size_t grid = 512;
  std::size_t nmax = 200;
  double eps = 0.01;
  std::optional<double> letac;
  std::size_t samples = 200;
  std::string distances_csv;
  Format format = Format::Json;
};

struct JobOutput {
  Json result;
  std::string csv;  // plot data for embed / measure
};

// Batch lines use the JobRequest field names; unknown keys are BadParam.
JobRequest request_from_json(const Json& j);
JobOutput run_job(const JobRequest& req);

// Exit codes: 0 success, 2 invalid parameters, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace drg::cli
