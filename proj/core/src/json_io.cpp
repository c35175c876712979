#include "entgeo/json_io.hpp"

#include <string>

#include "entgeo/errors.hpp"

namespace entgeo::json_io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t count_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw FormatError(std::string("field \"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

RealVector real_vector(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of numbers");
  RealVector out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw FormatError(std::string(what) + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<RealVector> real_vectors(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of arrays");
  std::vector<RealVector> out;
  for (const auto& v : j) out.push_back(real_vector(v, what));
  return out;
}

json vectors_to_json(const std::vector<RealVector>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(v);
  return arr;
}

}  // namespace

json to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (const auto& v : m.entries()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const std::size_t rows = count_field(j, "rows");
  const std::size_t cols = count_field(j, "cols");
  const RealVector re = real_vector(field(j, "re"), "\"re\"");
  const RealVector im = real_vector(field(j, "im"), "\"im\"");
  if (rows == 0 || cols == 0) throw FormatError("matrix dimensions must be >= 1");
  if (re.size() != rows * cols || im.size() != rows * cols) {
    throw FormatError("matrix payload length does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  std::vector<Complex> entries(rows * cols);
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = {re[i], im[i]};
  return ComplexMatrix(rows, cols, std::move(entries));
}

json to_json(const DensityMatrix& rho) {
  return {{"type", "density"},
          {"dim_a", rho.split().dim_a},
          {"dim_b", rho.split().dim_b},
          {"matrix", to_json(rho.mat())}};
}

json to_json(const PureState& psi) {
  return {{"type", "pure"},
          {"dim_a", psi.split.dim_a},
          {"dim_b", psi.split.dim_b},
          {"amplitudes", to_json(ComplexMatrix::column(psi.amplitudes))}};
}

DensityMatrix state_from_json(const json& j) {
  const json& type = field(j, "type");
  if (!type.is_string()) throw FormatError("state \"type\" must be a string");
  const DimSplit split{count_field(j, "dim_a"), count_field(j, "dim_b")};
  if (split.dim_a == 0 || split.dim_b == 0) throw FormatError("state dimensions must be >= 1");
  const std::string t = type.get<std::string>();
  if (t == "density") {
    ComplexMatrix m = matrix_from_json(field(j, "matrix"));
    if (!m.is_square() || m.rows() != split.total()) {
      throw FormatError("density matrix side does not match dim_a * dim_b");
    }
    return DensityMatrix::from_matrix(std::move(m), split);
  }
  if (t == "pure") {
    const ComplexMatrix amp = matrix_from_json(field(j, "amplitudes"));
    if (amp.cols() != 1 || amp.rows() != split.total()) {
      throw FormatError("amplitudes must be a column of length dim_a * dim_b");
    }
    PureState psi{{amp.entries().begin(), amp.entries().end()}, split};
    return density_from_pure(psi);
  }
  throw FormatError("unknown state type \"" + t + "\"");
}

json to_json(const ComModel& model) {
  return {{"ambient_dim", model.ambient_dim()},
          {"vertices", vectors_to_json(model.vertices())},
          {"effects", vectors_to_json(model.effects())},
          {"unit", model.unit()}};
}

ComModel model_from_json(const json& j) {
  const std::size_t dim = count_field(j, "ambient_dim");
  auto vertices = real_vectors(field(j, "vertices"), "\"vertices\"");
  auto effects = real_vectors(field(j, "effects"), "\"effects\"");
  auto unit = real_vector(field(j, "unit"), "\"unit\"");
  try {
    return ComModel(dim, std::move(vertices), std::move(effects), std::move(unit));
  } catch (const ShapeError& e) {
    throw FormatError(e.what());
  }
}

json to_json(const VPolytope& p) {
  return {{"ambient_dim", p.ambient_dim}, {"vertices", vectors_to_json(p.vertices)}};
}

VPolytope polytope_from_json(const json& j) {
  VPolytope p{count_field(j, "ambient_dim"), real_vectors(field(j, "vertices"), "\"vertices\"")};
  try {
    p.check();
  } catch (const ShapeError& e) {
    throw FormatError(e.what());
  }
  return p;
}

json to_json(const StatePolytope& c) {
  json verts = json::array();
  for (const auto& v : c.vertices) verts.push_back(to_json(v.mat()));
  return {{"dim_a", c.split.dim_a}, {"dim_b", c.split.dim_b}, {"vertices", std::move(verts)}};
}

StatePolytope state_polytope_from_json(const json& j) {
  const DimSplit split{count_field(j, "dim_a"), count_field(j, "dim_b")};
  if (split.dim_a == 0 || split.dim_b == 0) throw FormatError("polytope dimensions must be >= 1");
  const json& verts = field(j, "vertices");
  if (!verts.is_array() || verts.empty()) throw FormatError("\"vertices\" must be a nonempty array");
  StatePolytope c{split, {}};
  for (const auto& v : verts) {
    ComplexMatrix m = matrix_from_json(v);
    if (!m.is_square() || m.rows() != split.total()) {
      throw FormatError("polytope vertex side does not match dim_a * dim_b");
    }
    c.vertices.push_back(DensityMatrix::from_matrix(std::move(m), split));
  }
  return c;
}

json to_json(const Decomposition& d) {
  json terms = json::array();
  for (const auto& t : d.terms) terms.push_back({{"p", t.p}, {"a", to_json(t.a)}, {"b", to_json(t.b)}});
  return {{"terms", std::move(terms)}};
}

Decomposition decomposition_from_json(const json& j) {
  const json& terms = field(j, "terms");
  if (!terms.is_array() || terms.empty()) throw FormatError("\"terms\" must be a nonempty array");
  Decomposition d;
  for (const auto& t : terms) {
    const json& p = field(t, "p");
    if (!p.is_number()) throw FormatError("term weight \"p\" must be a number");
    DensityMatrix a = state_from_json(field(t, "a"));
    DensityMatrix b = state_from_json(field(t, "b"));
    // Factors are single-system states.
    d.terms.push_back({p.get<double>(), DensityMatrix::trusted(a.mat(), {a.dim(), 1}),
                       DensityMatrix::trusted(b.mat(), {b.dim(), 1})});
  }
  d.check();
  return d;
}

json to_json(const BilinearState& phi) {
  return {{"dim_a", phi.dim_a}, {"dim_b", phi.dim_b}, {"coords", phi.coords}};
}

BilinearState bilinear_from_json(const json& j) {
  BilinearState phi{count_field(j, "dim_a"), count_field(j, "dim_b"), real_vector(field(j, "coords"), "\"coords\"")};
  if (phi.coords.size() != phi.dim_a * phi.dim_b) throw FormatError("\"coords\" length must be dim_a * dim_b");
  return phi;
}

}  // namespace entgeo::json_io
