#include "blockdec/fixtures.hpp"

namespace blockdec {

GridModule fixture_ex37(const PrimeField& field) {
  const GridShape s({2, 2, 2});
  std::vector<int> dims(s.num_points(), 0);
  dims[s.index({0, 0, 0})] = 2;
  dims[s.index({1, 0, 0})] = 1;
  dims[s.index({0, 1, 0})] = 1;
  dims[s.index({0, 0, 1})] = 1;
  GridModule m(s, field, dims);
  Mat a(1, 2), b(1, 2), c(1, 2);
  a << 0, 1;
  b << 1, 0;
  c << 1, 1;
  m.set_step({0, 0, 0}, 0, a);
  m.set_step({0, 0, 0}, 1, b);
  m.set_step({0, 0, 0}, 2, c);
  return m;
}

GridModule fixture_ex38(const PrimeField& field) {
  return interval_module(GridShape({2, 2, 2}), {{0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}}, field);
}

GridModule fixture_claw_demo(const PrimeField& field) {
  const GridShape s({2, 2, 2});
  std::vector<Point> all;
  for (std::size_t idx = 0; idx < s.num_points(); ++idx) all.push_back(s.point(idx));
  return interval_module(s, all, field);
}

std::vector<std::string> fixture_names() { return {"ex37", "ex38", "claw-demo"}; }

std::optional<GridModule> fixture(const std::string& name, const PrimeField& field) {
  if (name == "ex37") return fixture_ex37(field);
  if (name == "ex38") return fixture_ex38(field);
  if (name == "claw-demo") return fixture_claw_demo(field);
  return std::nullopt;
}

}  // namespace blockdec
