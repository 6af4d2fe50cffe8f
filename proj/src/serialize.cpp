#include "gflat/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace gflat {

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

JsonBuilder& JsonBuilder::begin_object() {
  separator();
  out_ += '{';
  need_comma_.push_back(false);
  return *this;
}

JsonBuilder& JsonBuilder::end_object() {
  out_ += '}';
  need_comma_.pop_back();
  return *this;
}

JsonBuilder& JsonBuilder::begin_array() {
  separator();
  out_ += '[';
  need_comma_.push_back(false);
  return *this;
}

JsonBuilder& JsonBuilder::end_array() {
  out_ += ']';
  need_comma_.pop_back();
  return *this;
}

void JsonBuilder::separator() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!need_comma_.empty()) {
    if (need_comma_.back()) out_ += ',';
    need_comma_.back() = true;
  }
}

JsonBuilder& JsonBuilder::key(std::string_view name) {
  separator();
  out_ += '"';
  out_ += name;
  out_ += "\":";
  pending_key_ = true;
  return *this;
}

JsonBuilder& JsonBuilder::value(double v) {
  separator();
  out_ += format_number(v);
  return *this;
}

JsonBuilder& JsonBuilder::value(std::int64_t v) {
  separator();
  out_ += std::to_string(v);
  return *this;
}

JsonBuilder& JsonBuilder::value(std::uint64_t v) {
  separator();
  out_ += std::to_string(v);
  return *this;
}

JsonBuilder& JsonBuilder::value(int v) {
  separator();
  out_ += std::to_string(v);
  return *this;
}

JsonBuilder& JsonBuilder::value(bool v) {
  separator();
  out_ += v ? "true" : "false";
  return *this;
}

JsonBuilder& JsonBuilder::value(std::string_view s) {
  separator();
  out_ += '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out_ += '\\';
    out_ += c;
  }
  out_ += '"';
  return *this;
}

JsonBuilder& JsonBuilder::null() {
  separator();
  out_ += "null";
  return *this;
}

JsonBuilder& JsonBuilder::vector(const Eigen::VectorXd& v) {
  begin_array();
  for (int i = 0; i < v.size(); ++i) value(v[i]);
  return end_array();
}

JsonBuilder& JsonBuilder::matrix_row_major(const Eigen::MatrixXd& m) {
  begin_array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) value(m(i, j));
  return end_array();
}

namespace {

const char* signature_name(Signature s) {
  return s == Signature::euclidean ? "euclidean" : "minkowski";
}

const char* causal_name(CausalKind k) {
  switch (k) {
    case CausalKind::spacelike: return "spacelike";
    case CausalKind::lightlike: return "lightlike";
    case CausalKind::timelike: return "timelike";
  }
  return "?";
}

void append_box(JsonBuilder& json, const Box& box) {
  json.begin_object();
  json.key("lo").vector(box.lo);
  json.key("hi").vector(box.hi);
  json.end_object();
}

void append_witness(JsonBuilder& json, const Witness& w) {
  json.begin_object();
  json.key("point").vector(w.point);
  json.key("direction");
  if (w.direction) json.vector(*w.direction);
  else json.null();
  json.key("value").value(w.value);
  json.key("quantity").value(w.quantity);
  json.end_object();
}

void append_segment(JsonBuilder& json, const RulingSegment& s) {
  json.begin_object();
  json.key("base").vector(s.base);
  json.key("direction").vector(s.direction);
  json.key("t_minus").value(s.t_minus);
  json.key("t_plus").value(s.t_plus);
  json.key("endpoint_minus").vector(s.point_at(s.t_minus));
  json.key("endpoint_plus").vector(s.point_at(s.t_plus));
  json.key("affinity_residual").value(s.affinity_residual);
  json.key("kernel_residual").value(s.kernel_residual);
  json.key("certificate_samples").value(s.certificate_samples);
  json.end_object();
}

void append_profile(JsonBuilder& json, const DecayProfile& p) {
  json.begin_object();
  json.key("quantity").value(quantity_name(p.quantity));
  json.key("center").vector(p.center);
  json.key("radii").begin_array();
  for (double r : p.radii) json.value(r);
  json.end_array();
  json.key("sups").begin_array();
  for (double s : p.sups) json.value(s);
  json.end_array();
  json.key("argmax").begin_array();
  for (const auto& x : p.argmax) json.vector(x);
  json.end_array();
  json.key("evaluated").begin_array();
  for (std::int64_t n : p.evaluated) json.value(n);
  json.end_array();
  json.key("skipped").begin_array();
  for (std::int64_t n : p.skipped) json.value(n);
  json.end_array();
  json.key("samples_per_sphere").value(p.samples_per_sphere);
  json.key("seed").value(p.seed);
  json.key("monotone_nonincreasing").value(p.monotone_nonincreasing);
  json.key("decay_accepted").value(p.decay_accepted);
  json.key("eps_decay").value(p.eps_decay);
  json.end_object();
}

}  // namespace

void append_tolerances(JsonBuilder& json, const Tolerances& tol) {
  json.begin_object();
  json.key("tau_light").value(tol.tau_light);
  json.key("tau_ker").value(tol.tau_ker);
  json.key("tau_aff").value(tol.tau_aff);
  json.key("tau_lem").value(tol.tau_lem);
  json.key("tau_id").value(tol.tau_id);
  json.key("eps_decay").value(tol.eps_decay);
  json.key("eps_conclusion").value(tol.eps_conclusion);
  json.key("eps_developable").value(tol.eps_developable);
  json.key("eps_convex").value(tol.eps_convex);
  json.key("step_fraction").value(tol.step_fraction);
  json.key("endpoint_fraction").value(tol.endpoint_fraction);
  json.end_object();
}

std::string to_json(const CurvatureReport& r) {
  JsonBuilder json;
  json.begin_object();
  json.key("point").vector(r.point);
  json.key("signature").value(signature_name(r.signature));
  json.key("value").value(r.value);
  json.key("gradient").vector(r.gradient);
  json.key("hessian").matrix_row_major(r.hessian);
  json.key("w").value(r.w);
  json.key("metric").matrix_row_major(r.metric);
  json.key("second_fundamental").matrix_row_major(r.second_fundamental);
  json.key("tilde_only").value(r.tilde_only);
  json.key("shape_operator");
  if (r.tilde_only) json.null();
  else json.matrix_row_major(r.shape_operator);
  json.key("principal_curvatures");
  if (r.tilde_only) json.null();
  else json.vector(r.principal_curvatures);
  json.key("mean_curvature");
  if (r.tilde_only) json.null();
  else json.value(r.mean_curvature);
  json.key("gauss_curvature");
  if (r.tilde_only) json.null();
  else json.value(r.gauss_curvature);
  json.key("htilde");
  if (r.htilde) json.value(*r.htilde);
  else json.null();
  json.key("ktilde").value(r.ktilde);
  json.key("causal_type").value(causal_name(r.causal.kind));
  json.key("causal_margin").value(r.causal.margin);
  json.end_object();
  return json.str();
}

namespace {

void csv_matrix_header(std::ostringstream& out, const std::string& stem, int n) {
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) out << "," << stem << "_" << i << j;
}

void csv_matrix_row(std::ostringstream& out, const Eigen::MatrixXd& m, bool suppress) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      out << ",";
      if (!suppress) out << format_number(m(i, j));
    }
}

}  // namespace

std::string curvature_csv_header(int dim) {
  std::ostringstream out;
  for (int i = 1; i <= dim; ++i) out << (i > 1 ? "," : "") << "point_" << i;
  out << ",signature,value";
  for (int i = 1; i <= dim; ++i) out << ",gradient_" << i;
  csv_matrix_header(out, "hessian", dim);
  out << ",w";
  csv_matrix_header(out, "metric", dim);
  csv_matrix_header(out, "second_fundamental", dim);
  out << ",tilde_only";
  csv_matrix_header(out, "shape_operator", dim);
  for (int i = 1; i <= dim; ++i) out << ",principal_curvature_" << i;
  out << ",mean_curvature,gauss_curvature,htilde,ktilde,causal_type,causal_margin";
  return out.str();
}

std::string to_csv_row(const CurvatureReport& r) {
  const int n = static_cast<int>(r.point.size());
  std::ostringstream out;
  for (int i = 0; i < n; ++i) out << (i ? "," : "") << format_number(r.point[i]);
  out << "," << signature_name(r.signature) << "," << format_number(r.value);
  for (int i = 0; i < n; ++i) out << "," << format_number(r.gradient[i]);
  csv_matrix_row(out, r.hessian, false);
  out << "," << format_number(r.w);
  csv_matrix_row(out, r.metric, false);
  csv_matrix_row(out, r.second_fundamental, false);
  out << "," << (r.tilde_only ? "true" : "false");
  if (r.tilde_only) {
    Eigen::MatrixXd empty = Eigen::MatrixXd::Zero(n, n);
    csv_matrix_row(out, empty, true);
    for (int i = 0; i < n; ++i) out << ",";
    out << ",,";  // mean, gauss
  } else {
    csv_matrix_row(out, r.shape_operator, false);
    for (int i = 0; i < n; ++i) out << "," << format_number(r.principal_curvatures[i]);
    out << "," << format_number(r.mean_curvature) << "," << format_number(r.gauss_curvature);
  }
  out << ",";
  if (r.htilde) out << format_number(*r.htilde);
  out << "," << format_number(r.ktilde);
  out << "," << causal_name(r.causal.kind) << "," << format_number(r.causal.margin);
  return out.str();
}

std::string to_json(const RulingSegment& segment) {
  JsonBuilder json;
  append_segment(json, segment);
  return json.str();
}

std::string to_json(const LemmaResidualReport& r) {
  JsonBuilder json;
  json.begin_object();
  json.key("x0").vector(r.x0);
  json.key("gamma").vector(r.gamma);
  json.key("eta").vector(r.eta);
  json.key("r1").value(r.r1);
  json.key("r2").value(r.r2);
  json.key("r3").value(r.r3);
  json.key("r4").value(r.r4);
  json.key("r5").value(r.r5);
  json.key("r6").value(r.r6);
  json.key("convexity_profile").begin_array();
  for (double v : r.convexity_profile) json.value(v);
  json.end_array();
  json.key("certificate");
  append_segment(json, r.certificate);
  json.end_object();
  return json.str();
}

std::string polyline_row(const RulingSegment& s) {
  std::ostringstream out;
  const Eigen::VectorXd a = s.point_at(s.t_minus);
  const Eigen::VectorXd b = s.point_at(s.t_plus);
  for (int i = 0; i < a.size(); ++i) out << (i ? " " : "") << format_number(a[i]);
  for (int i = 0; i < b.size(); ++i) out << " " << format_number(b[i]);
  out << " " << format_number(s.affinity_residual) << " " << format_number(s.kernel_residual);
  return out.str();
}

std::string to_json(const DecayProfile& profile) {
  JsonBuilder json;
  append_profile(json, profile);
  return json.str();
}

std::string profile_csv(const DecayProfile& profile) {
  std::ostringstream out;
  out << "radius,sup\n";
  for (std::size_t i = 0; i < profile.radii.size(); ++i)
    out << format_number(profile.radii[i]) << "," << format_number(profile.sups[i]) << "\n";
  return out.str();
}

std::string to_json(const Verdict& v) {
  JsonBuilder json;
  json.begin_object();
  json.key("outcome").value(outcome_name(v.outcome));
  json.key("quantity").value(quantity_name(v.quantity));
  json.key("witness");
  if (v.witness) append_witness(json, *v.witness);
  else json.null();
  json.key("center").vector(v.center);
  json.key("radii").begin_array();
  for (double r : v.radii) json.value(r);
  json.end_array();
  json.key("region");
  append_box(json, v.region);
  json.key("domain");
  append_box(json, v.domain);
  json.key("sphere_samples").value(v.sphere_samples);
  json.key("region_samples").value(v.region_samples);
  json.key("seed").value(v.seed);
  json.key("tolerances");
  append_tolerances(json, v.tolerances);
  json.key("developability");
  if (v.developability) {
    json.begin_object();
    json.key("max_abs_det").value(v.developability->max_abs_det);
    json.key("det_witness").vector(v.developability->det_witness);
    json.key("min_eigenvalue").value(v.developability->min_eigenvalue);
    json.key("eigenvalue_witness").vector(v.developability->eigenvalue_witness);
    json.key("samples").value(v.developability->samples);
    json.key("evaluated").value(v.developability->evaluated);
    json.key("skipped").value(v.developability->skipped);
    json.end_object();
  } else {
    json.null();
  }
  json.key("causal");
  if (v.causal) {
    json.begin_object();
    json.key("timelike_found").value(v.causal->timelike_found);
    json.key("worst_margin").value(v.causal->worst_margin);
    json.key("witness").vector(v.causal->witness);
    json.key("samples").value(v.causal->samples);
    json.key("evaluated").value(v.causal->evaluated);
    json.key("skipped").value(v.causal->skipped);
    json.end_object();
  } else {
    json.null();
  }
  json.key("profile");
  if (v.profile) append_profile(json, *v.profile);
  else json.null();
  json.key("conclusion_max");
  if (v.conclusion_max) json.value(*v.conclusion_max);
  else json.null();
  json.end_object();
  return json.str();
}

}  // namespace gflat
