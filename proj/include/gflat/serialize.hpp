#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gflat/affinity.hpp"
#include "gflat/curvature.hpp"
#include "gflat/rigidity.hpp"

namespace gflat {

// All numeric output goes through this: 17 significant digits, so
// serialized results are byte-identical across runs and round-trip
// exactly.  Non-finite values serialize as null.
std::string format_number(double v);

// Minimal ordered JSON writer.  Keys appear exactly in insertion
// order, which keeps outputs reproducible with a plain diff.
class JsonBuilder {
 public:
  JsonBuilder& begin_object();
  JsonBuilder& end_object();
  JsonBuilder& begin_array();
  JsonBuilder& end_array();
  JsonBuilder& key(std::string_view name);
  JsonBuilder& value(double v);
  JsonBuilder& value(std::int64_t v);
  JsonBuilder& value(std::uint64_t v);
  JsonBuilder& value(int v);
  JsonBuilder& value(bool v);
  JsonBuilder& value(std::string_view s);
  JsonBuilder& value(const char* s) { return value(std::string_view(s)); }
  JsonBuilder& null();
  JsonBuilder& vector(const Eigen::VectorXd& v);
  JsonBuilder& matrix_row_major(const Eigen::MatrixXd& m);  // flattened

  const std::string& str() const { return out_; }

 private:
  void separator();
  std::string out_;
  std::vector<bool> need_comma_;
  bool pending_key_ = false;
};

std::string to_json(const CurvatureReport& report);
std::string curvature_csv_header(int dim);
std::string to_csv_row(const CurvatureReport& report);

std::string to_json(const RulingSegment& segment);
std::string to_json(const LemmaResidualReport& report);
// One ruling per line: both endpoints, then the residuals.
std::string polyline_row(const RulingSegment& segment);

std::string to_json(const DecayProfile& profile);
// Two-column CSV (radius, supremum) for plotting.
std::string profile_csv(const DecayProfile& profile);

std::string to_json(const Verdict& verdict);

void append_tolerances(JsonBuilder& json, const Tolerances& tol);

}  // namespace gflat
