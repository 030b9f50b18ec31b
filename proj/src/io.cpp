#include "blockdec/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace blockdec {

json to_json(const Point& p) { return json(p); }

json to_json(const Cube& c) {
  return {{"lo", c.lo}, {"hi", c.hi}, {"active", c.active()}};
}

json to_json(const Block& b) {
  json pts = json::array();
  for (const Point& p : b.points) pts.push_back(p);
  return {{"kind", to_string(b.kind)}, {"lo", b.lo}, {"hi", b.hi}, {"points", pts}};
}

json to_json(const Witness& w) {
  return {{"cube", to_json(w.cube)}, {"degree", w.degree}, {"homologyDim", w.homology_dim}};
}

json to_json(const std::vector<ExactnessLevel>& profile) {
  json out = json::array();
  for (const auto& l : profile)
    out.push_back({{"k", l.k}, {"allMiddle", l.all_middle}, {"allLeft", l.all_left}, {"allRight", l.all_right}});
  return out;
}

json to_json(const std::vector<BlockCount>& blocks) {
  json out = json::array();
  for (const auto& bc : blocks) out.push_back({{"block", to_json(bc.block)}, {"multiplicity", bc.multiplicity}});
  return out;
}

namespace {

json matrix_json(const Mat& a) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

json to_json(const Violation& v) {
  return {{"point", v.point}, {"axes", {v.axis_i, v.axis_j}}, {"viaFirst", matrix_json(v.via_i)},
          {"viaSecond", matrix_json(v.via_j)}};
}

json module_to_json(const GridModule& m) {
  const GridShape& s = m.shape();
  json dims = json::array(), maps = json::array();
  for (std::size_t idx = 0; idx < s.num_points(); ++idx)
    if (m.dim_at(idx) > 0) dims.push_back({{"point", s.point(idx)}, {"dim", m.dim_at(idx)}});
  for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
    const Point p = s.point(idx);
    for (int i = 0; i < s.ndim(); ++i)
      if (s.has_step(p, i) && !is_zero(m.step_at(idx, i)))
        maps.push_back({{"point", p}, {"axis", i}, {"matrix", matrix_json(m.step_at(idx, i))}});
  }
  return {{"field", m.field().characteristic()}, {"shape", s.sizes()}, {"dims", dims}, {"maps", maps}};
}

namespace {

[[noreturn]] void fail(const std::string& what) { throw SchemaError(what); }

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where + " is missing \"" + key + "\"");
  return *it;
}

long long integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where + " must be an integer");
  return v.get<long long>();
}

Point read_point(const json& v, const GridShape& s, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != s.ndim())
    fail(where + " must be an array of " + std::to_string(s.ndim()) + " coordinates");
  Point p;
  for (const auto& c : v) {
    const long long x = integer(c, where);
    if (x < 0 || x > 1 << 20) fail(where + " has a coordinate out of range");
    p.push_back(static_cast<int>(x));
  }
  if (!s.contains(p)) fail(where + " " + to_string(p) + " lies outside the grid");
  return p;
}

}  // namespace

GridModule module_from_json(const json& doc, std::optional<std::uint32_t> field_override) {
  if (!doc.is_object()) fail("module document must be a JSON object");
  std::uint32_t characteristic = kDefaultCharacteristic;
  if (doc.contains("field")) {
    const long long p = integer(doc["field"], "field");
    if (p < 2 || p >= (1ll << 24) || !is_prime(static_cast<std::uint64_t>(p)))
      fail("field must be a prime below 2^24");
    characteristic = static_cast<std::uint32_t>(p);
  }
  if (field_override) characteristic = *field_override;
  const PrimeField field(characteristic);

  const json& shape_j = member(doc, "shape", "module");
  if (!shape_j.is_array() || shape_j.empty()) fail("shape must be a non-empty array");
  std::vector<int> sizes;
  long long total = 1;
  for (const auto& v : shape_j) {
    const long long x = integer(v, "shape entry");
    if (x < 1) fail("shape entries must be at least 1");
    total *= x;
    if (total > 1'000'000) fail("grid is too large");
    sizes.push_back(static_cast<int>(x));
  }
  const GridShape s(sizes);

  std::vector<int> dims(s.num_points(), 0);
  std::set<std::size_t> seen_dims;
  if (doc.contains("dims")) {
    const json& dj = doc["dims"];
    if (!dj.is_array()) fail("dims must be an array");
    for (const auto& e : dj) {
      const Point p = read_point(member(e, "point", "dims entry"), s, "dims point");
      const long long d = integer(member(e, "dim", "dims entry"), "dim");
      if (d < 0 || d > 100000) fail("dim at " + to_string(p) + " is out of range");
      if (!seen_dims.insert(s.index(p)).second) fail("duplicate dims entry at " + to_string(p));
      dims[s.index(p)] = static_cast<int>(d);
    }
  }
  GridModule m(s, field, dims);

  std::set<std::pair<std::size_t, int>> seen_maps;
  if (doc.contains("maps")) {
    const json& mj = doc["maps"];
    if (!mj.is_array()) fail("maps must be an array");
    for (const auto& e : mj) {
      const Point p = read_point(member(e, "point", "maps entry"), s, "maps point");
      const long long axis = integer(member(e, "axis", "maps entry"), "axis");
      if (axis < 0 || axis >= s.ndim()) fail("axis out of range at " + to_string(p));
      const int a = static_cast<int>(axis);
      if (!s.has_step(p, a)) fail("map at " + to_string(p) + " along axis " + std::to_string(a) + " leaves the grid");
      if (!seen_maps.insert({s.index(p), a}).second)
        fail("duplicate map at " + to_string(p) + " along axis " + std::to_string(a));
      const int rows = m.dim(step_up(p, a)), cols = m.dim(p);
      const std::string where = "matrix at " + to_string(p) + " along axis " + std::to_string(a);
      const json& mat = member(e, "matrix", "maps entry");
      if (!mat.is_array() || static_cast<int>(mat.size()) != rows)
        fail(where + " must have " + std::to_string(rows) + " rows");
      Mat x(rows, cols);
      for (int r = 0; r < rows; ++r) {
        const json& row = mat[r];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
          fail(where + " must have " + std::to_string(cols) + " columns");
        for (int c = 0; c < cols; ++c) x(r, c) = field.reduce(static_cast<Scalar>(integer(row[c], where)));
      }
      m.set_step(p, a, x);
    }
  }
  return m;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("error while writing " + path);
}

GridModule read_module_file(const std::string& path, std::optional<std::uint32_t> field_override) {
  return module_from_json(read_json_file(path), field_override);
}

void write_module_file(const std::string& path, const GridModule& m) { write_text_file(path, dump(module_to_json(m))); }

}  // namespace blockdec
