#include "symcap/io.hpp"

#include <cmath>
#include <sstream>

#include "symcap/errors.hpp"

namespace symcap {

namespace {

double finite_number(const Json& v, const std::string& what) {
  if (!v.is_number()) fail(ErrorCode::Input, what + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(ErrorCode::Input, what + " must be finite");
  return d;
}

int integer(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) fail(ErrorCode::Input, what + " must be an integer");
  return v.get<int>();
}

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::Input, what + " is missing \"" + key + "\"");
  return j.at(key);
}

PhasePoint center_or_origin(const Json& j, int default_n) {
  if (j.contains("center")) return PhasePoint(vector_from_json(j.at("center"), "center"));
  int n = default_n;
  if (j.contains("n")) n = integer(j.at("n"), "n");
  if (n < 1) fail(ErrorCode::Input, "n must be >= 1");
  return PhasePoint::origin(n);
}

Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace

Json rows_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix rows_from_json(const Json& j, int rows, int cols, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    std::ostringstream os;
    os << what << " must have " << rows << " rows";
    fail(ErrorCode::Input, os.str());
  }
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      std::ostringstream os;
      os << what << " row " << r << " must have " << cols << " entries";
      fail(ErrorCode::Input, os.str());
    }
    for (int c = 0; c < cols; ++c) m(r, c) = finite_number(row[c], what + " entry");
  }
  return m;
}

Json matrix_to_json(const Matrix& m) { return Json{{"n", m.rows() / 2}, {"rows", rows_to_json(m)}}; }

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::Input, "matrix must be an object {\"n\", \"rows\"}");
  const int n = integer(field(j, "n", "matrix"), "matrix n");
  if (n < 1) fail(ErrorCode::Input, "matrix n must be >= 1");
  return rows_from_json(field(j, "rows", "matrix"), 2 * n, 2 * n, "matrix");
}

Vector vector_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) fail(ErrorCode::Input, what + " must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = finite_number(j[i], what + " entry");
  return v;
}

PhaseRegion region_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::Input, "region must be a JSON object");
  const Json& tag = field(j, "variant", "region");
  if (!tag.is_string()) fail(ErrorCode::Input, "region variant must be a string");
  const auto variant = tag.get<std::string>();
  if (variant == "Ball") {
    return make_ball(center_or_origin(j, 1), finite_number(field(j, "R", "Ball"), "R"));
  }
  if (variant == "Ellipsoid") {
    const Matrix m = matrix_from_json(field(j, "hessian", "Ellipsoid"));
    const double level = j.contains("level") ? finite_number(j.at("level"), "level") : 1.0;
    return make_ellipsoid(center_or_origin(j, static_cast<int>(m.rows() / 2)), m, level);
  }
  if (variant == "SolidTorus") {
    const Vector r = vector_from_json(field(j, "radii", "SolidTorus"), "radii");
    return make_solid_torus(std::vector<double>(r.data(), r.data() + r.size()));
  }
  if (variant == "Cylinder") {
    const int idx = integer(field(j, "j", "Cylinder"), "j");
    return make_cylinder(idx, center_or_origin(j, 1), finite_number(field(j, "R", "Cylinder"), "R"));
  }
  if (variant == "AffineImage") {
    const auto s = SymplecticMatrix::from(matrix_from_json(field(j, "S", "AffineImage")));
    PhaseRegion inner = region_from_json(field(j, "inner", "AffineImage"));
    PhasePoint shift = j.contains("shift") ? PhasePoint(vector_from_json(j.at("shift"), "shift"))
                                           : PhasePoint::origin(s.n());
    return make_affine_image(s, shift, std::move(inner));
  }
  fail(ErrorCode::Input, "unknown region variant \"" + variant + "\"");
}

Json region_to_json(const PhaseRegion& region) {
  return std::visit(
      [](const auto& shape) -> Json {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return {{"variant", "Ball"}, {"R", shape.radius}, {"center", vector_to_json(shape.center.coords())}};
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          return {{"variant", "Ellipsoid"},
                  {"hessian", matrix_to_json(shape.hessian)},
                  {"level", shape.level},
                  {"center", vector_to_json(shape.center.coords())}};
        } else if constexpr (std::is_same_v<T, SolidTorus>) {
          return {{"variant", "SolidTorus"}, {"radii", shape.radii}};
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          return {{"variant", "Cylinder"},
                  {"j", shape.j},
                  {"R", shape.radius},
                  {"center", vector_to_json(shape.center.coords())}};
        } else {
          return {{"variant", "AffineImage"},
                  {"S", matrix_to_json(shape.s.matrix())},
                  {"shift", vector_to_json(shape.shift.coords())},
                  {"inner", region_to_json(*shape.inner)}};
        }
      },
      region.shape);
}

Json capacity_to_json(const CapacityValue& c) {
  return {{"value", c.value}, {"exact", c.exact}, {"lower", c.lower}, {"upper", c.upper}};
}

LagrangianLoop loop_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::Input, "loop must be a JSON object");
  const int n = integer(field(j, "n", "loop"), "loop n");
  if (n < 1) fail(ErrorCode::Input, "loop n must be >= 1");
  const Json& frames = field(j, "frames", "loop");
  if (!frames.is_array()) fail(ErrorCode::Input, "loop frames must be an array");
  const bool closed = j.contains("closed") ? j.at("closed").get<bool>() : true;
  std::vector<LagrangianFrame> fs;
  std::vector<double> ts;
  for (const auto& f : frames) {
    fs.emplace_back(rows_from_json(field(f, "X", "frame"), n, n, "X"), rows_from_json(field(f, "P", "frame"), n, n, "P"));
    ts.push_back(finite_number(field(f, "t", "frame"), "t"));
  }
  return LagrangianLoop(std::move(fs), std::move(ts), closed);
}

Json loop_to_json(const LagrangianLoop& loop) {
  Json frames = Json::array();
  for (std::size_t k = 0; k < loop.frames().size(); ++k) {
    const auto& f = loop.frames()[k];
    frames.push_back({{"X", rows_to_json(f.x())}, {"P", rows_to_json(f.p())}, {"t", loop.params()[k]}});
  }
  return {{"n", loop.n()}, {"closed", loop.closed()}, {"frames", std::move(frames)}};
}

Json maslov_to_json(const MaslovResult& r) {
  return {{"index", r.index}, {"raw_winding", r.raw_winding}, {"refinement_depth", r.refinement_depth}};
}

Json nonsqueeze_to_json(const NonsqueezeReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"trial", f.trial},
                        {"j", f.j},
                        {"projection_ratio", f.projection_ratio},
                        {"intersection_ratio", f.intersection_ratio},
                        {"symplectic", f.symplectic}});
  return {{"trials", r.trials},
          {"violations", r.violations},
          {"min_ratio", r.min_projection_ratio},
          {"max_intersection_ratio", r.max_intersection_ratio},
          {"min_intersection_ratio", r.min_intersection_ratio},
          {"intersection_equalities", r.intersection_equalities},
          {"intersection_below_bound", r.intersection_below_bound},
          {"worst_trial", r.worst_trial},
          {"worst_j", r.worst_j},
          {"worst_case_matrix", matrix_to_json(r.worst_case_matrix)},
          {"failures", std::move(failures)}};
}

Json shadow_to_json(const ShadowReport& r) {
  return {{"j", r.j},
          {"projection_area", r.projection_area},
          {"intersection_area", r.intersection_area},
          {"projection_ratio", r.projection_ratio},
          {"intersection_ratio", r.intersection_ratio},
          {"shadow_center", {r.shadow_center(0), r.shadow_center(1)}}};
}

Json spectrum_to_json(const SymplecticSpectrum& s) {
  return {{"n", s.n()}, {"mu", s.mu}, {"radii", s.radii}, {"omega", s.omega}};
}

Json ebk_to_json(const EBKSpectrum& s) {
  Json entries = Json::array();
  for (const auto& e : s.entries) {
    const auto cap = capacity_condition(e, s.hbar);
    entries.push_back({{"N", e.quanta},
                       {"maslov", e.maslov},
                       {"actions", e.actions},
                       {"radii", e.radii},
                       {"energy", e.energy},
                       {"capacity", cap.capacity},
                       {"satisfied", cap.satisfied}});
  }
  return {{"hbar", s.hbar}, {"bound", 0.5 * planck(s.hbar)}, {"warnings", s.warnings}, {"entries", std::move(entries)}};
}

std::string ebk_to_csv(const EBKSpectrum& s) {
  std::ostringstream os;
  os.precision(17);
  const std::size_t n = s.entries.empty() ? 0 : s.entries.front().quanta.size();
  for (std::size_t j = 1; j <= n; ++j) os << 'N' << j << ',';
  for (std::size_t j = 1; j <= n; ++j) os << 'I' << j << ',';
  for (std::size_t j = 1; j <= n; ++j) os << 'R' << j << ',';
  os << "energy,capacity,satisfied\n";
  for (const auto& e : s.entries) {
    const auto cap = capacity_condition(e, s.hbar);
    for (int q : e.quanta) os << q << ',';
    for (double a : e.actions) os << a << ',';
    for (double r : e.radii) os << r << ',';
    os << e.energy << ',' << cap.capacity << ',' << (cap.satisfied ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace symcap
