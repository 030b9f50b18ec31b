#pragma once

#include "blockdec/blocks.hpp"
#include "blockdec/decomp.hpp"
#include "blockdec/grid_module.hpp"
#include "blockdec/koszul.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockdec {

using json = nlohmann::json;

/// Malformed JSON or a document that does not describe a module.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sparse encoding: zero dimensions and zero matrices are omitted, entries are
/// listed in point order (then axis order).
json module_to_json(const GridModule& m);

/// Entries are reduced modulo the file's field, or modulo `field_override`
/// when given (which then replaces the file's field).
GridModule module_from_json(const json& doc, std::optional<std::uint32_t> field_override = std::nullopt);

/// Canonical text form: two-space indent, sorted keys, trailing newline.
std::string dump(const json& doc);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

GridModule read_module_file(const std::string& path, std::optional<std::uint32_t> field_override = std::nullopt);
void write_module_file(const std::string& path, const GridModule& m);

json to_json(const Point& p);
json to_json(const Cube& c);
json to_json(const Block& b);
json to_json(const Witness& w);
json to_json(const std::vector<ExactnessLevel>& profile);
json to_json(const std::vector<BlockCount>& blocks);
json to_json(const Violation& v);

}  // namespace blockdec
